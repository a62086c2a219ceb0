//! The Clifford embedding `phi`, Spin certification and the covering map to
//! `SO_{2n}`.
//!
//! `phi(a, b) = [[0, alpha_n(a, b)], [alpha_bar_n(a, b), 0]]` realizes
//! `Cl(H(R^n), q)` as `2^n`-square matrices. An even element `g` is a Spin
//! element when `g g* = 1` and conjugation by `g` maps `phi(V)` into itself;
//! the induced linear map on `V = R^n + R^n` is `pi(g)`.

mod lift;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{GramForm, MatrixError, RingMat};
use crate::ring::{RingCtx, RingElem, RingError};
use crate::suslin::{
    e_inverse, e_matrix, power_of_two_level, standard_involution, suslin_alpha, suslin_alpha_bar, LinearPattern,
    SuslinError, UnitVector,
};

pub use lift::lift_hyperbolic_to_spin;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("vectors have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("element is not even")]
    NotEven,
    #[error("element is not odd")]
    NotOdd,
    #[error("matrix is not in the image of V: {0}")]
    NotInV(String),
    #[error("g g* != 1")]
    NotUnitary,
    #[error("conjugate of basis vector {0} leaves V")]
    NotStable(usize),
    #[error("induced matrix does not preserve the hyperbolic form")]
    NotOrthogonal,
    #[error("induced matrix has determinant {0}, not 1")]
    NotSpecial(String),
    #[error("determinant is {0}, not 1")]
    DetNotOne(String),
    #[error("expected level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("no lift exists: the linear system has only the zero solution")]
    NoLift,
    #[error("lift is not unique: solution space of dimension {0}")]
    AmbiguousLift(usize),
    #[error("no rational scaling makes g g* = 1 (g g* = {0} I)")]
    NotNormalizable(String),
    #[error("lifts are only computed over Q")]
    NotRational,
    #[error(transparent)]
    Suslin(#[from] SuslinError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A `2^n`-square matrix viewed in `Cl(H(R^n))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElem {
    n: usize,
    mat: RingMat,
    parity: Parity,
}

impl CliffordElem {
    pub fn new(mat: RingMat) -> Result<Self, CliffordError> {
        if !mat.is_square() {
            return Err(MatrixError::NotSquare(mat.rows(), mat.cols()).into());
        }
        let n = power_of_two_level(mat.rows())?;
        if n == 0 {
            return Err(SuslinError::NotPowerOfTwo(1).into());
        }
        let [a, b, c, d] = mat.quadrants();
        let off_zero = b.is_zero() && c.is_zero();
        let diag_zero = a.is_zero() && d.is_zero();
        // the zero element counts as even
        let parity = if off_zero {
            Parity::Even
        } else if diag_zero {
            Parity::Odd
        } else {
            Parity::Mixed
        };
        Ok(CliffordElem { n, mat, parity })
    }

    pub fn identity(ctx: RingCtx, n: usize) -> Self {
        CliffordElem { n, mat: RingMat::identity(ctx, 1 << n), parity: Parity::Even }
    }

    /// `diag(top, bottom)`.
    pub fn even(top: &RingMat, bottom: &RingMat) -> Result<Self, CliffordError> {
        Self::new(top.block_sum(bottom)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> RingCtx {
        self.mat.ctx()
    }

    pub fn matrix(&self) -> &RingMat {
        &self.mat
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The diagonal blocks of an even element.
    pub fn even_blocks(&self) -> (RingMat, RingMat) {
        let [a, _, _, d] = self.mat.quadrants();
        (a, d)
    }

    /// `M* = J_{n+1} M^t J_{n+1}^t`.
    pub fn star(&self) -> CliffordElem {
        let mat = standard_involution(&self.mat).expect("size is a power of two");
        CliffordElem { n: self.n, mat, parity: self.parity }
    }

    pub fn mul(&self, other: &CliffordElem) -> Result<CliffordElem, CliffordError> {
        CliffordElem::new(self.mat.try_matmul(&other.mat)?)
    }

    pub fn lift_to(&self, ctx: RingCtx) -> Result<CliffordElem, CliffordError> {
        Ok(CliffordElem { n: self.n, mat: self.mat.lift_to(ctx)?, parity: self.parity })
    }
}

/// `phi(a, b)`.
pub fn phi_embed(a: &[RingElem], b: &[RingElem]) -> Result<CliffordElem, CliffordError> {
    if a.len() != b.len() {
        return Err(CliffordError::LengthMismatch(a.len(), b.len()));
    }
    let alpha = suslin_alpha(a, b)?.into_matrix();
    let bar = suslin_alpha_bar(a, b)?.into_matrix();
    let z = RingMat::zeros(alpha.ctx(), alpha.rows(), alpha.cols());
    let mat = RingMat::block2(&z, &alpha, &bar, &z)?;
    Ok(CliffordElem { n: a.len(), mat, parity: Parity::Odd })
}

pub fn phi_of(u: &UnitVector) -> CliffordElem {
    phi_embed(u.a(), u.b()).expect("unit vector halves have equal length")
}

/// The `i`-th basis vector of `V`, in the order `(a_1..a_n, b_1..b_n)`.
pub fn basis_vector(ctx: RingCtx, n: usize, i: usize) -> (Vec<RingElem>, Vec<RingElem>) {
    let mut col = vec![ctx.zero(); 2 * n];
    col[i] = ctx.one();
    let b = col.split_off(n);
    (col, b)
}

/// Coordinates of `alpha_n(a, b)` in the `(a, b)` basis.
pub fn alpha_pattern(n: usize) -> LinearPattern {
    let q = RingCtx::Rational;
    let basis = (0..2 * n)
        .map(|i| {
            let (a, b) = basis_vector(q, n, i);
            suslin_alpha(&a, &b).expect("equal lengths").into_matrix()
        })
        .collect();
    LinearPattern::new(basis)
}

/// Coordinates of `phi(a, b)` in the `(a, b)` basis.
pub fn phi_pattern(n: usize) -> LinearPattern {
    let q = RingCtx::Rational;
    let basis = (0..2 * n)
        .map(|i| {
            let (a, b) = basis_vector(q, n, i);
            phi_embed(&a, &b).expect("equal lengths").mat
        })
        .collect();
    LinearPattern::new(basis)
}

fn split_coords(mut coords: Vec<RingElem>, n: usize) -> (Vec<RingElem>, Vec<RingElem>) {
    let b = coords.split_off(n);
    (coords, b)
}

/// Reads `(a, b)` off a Suslin matrix `alpha_n(a, b)`, `n >= 2` (for `n = 1`
/// the matrix `(a_1)` does not determine `b`).
pub fn alpha_extract(m: &RingMat, n: usize) -> Result<(Vec<RingElem>, Vec<RingElem>), CliffordError> {
    if n < 2 {
        return Err(CliffordError::NotInV("alpha_1 does not determine b".into()));
    }
    let coords = alpha_pattern(n).extract(m).map_err(|e| CliffordError::NotInV(e.to_string()))?;
    Ok(split_coords(coords, n))
}

/// Inverse of [`phi_embed`].
pub fn phi_extract(m: &CliffordElem) -> Result<(Vec<RingElem>, Vec<RingElem>), CliffordError> {
    if m.parity != Parity::Odd {
        return Err(CliffordError::NotOdd);
    }
    let coords = phi_pattern(m.n).extract(&m.mat).map_err(|e| CliffordError::NotInV(e.to_string()))?;
    Ok(split_coords(coords, m.n))
}

/// A `2n`-square matrix with `M^t G' M = G'` and `det M = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SOMatrix {
    n: usize,
    mat: RingMat,
}

impl SOMatrix {
    pub fn new(mat: RingMat) -> Result<Self, CliffordError> {
        if !mat.is_square() || mat.rows() % 2 == 1 {
            return Err(MatrixError::OddSize(mat.rows()).into());
        }
        let n = mat.rows() / 2;
        if !GramForm::new(mat.ctx(), n).preserved_by(&mat)? {
            return Err(CliffordError::NotOrthogonal);
        }
        let det = mat.det()?;
        if !det.is_one() {
            return Err(CliffordError::NotSpecial(det.to_string()));
        }
        Ok(SOMatrix { n, mat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RingMat {
        &self.mat
    }

    /// `M (a, b)^t` as a unit vector.
    pub fn apply(&self, u: &UnitVector) -> Result<UnitVector, CliffordError> {
        let m = self.mat.lift_to(u.ctx())?;
        Ok(UnitVector::from_column(&m.mul_vec(&u.to_column())?)?)
    }
}

/// One conjugated basis vector and its coordinates in `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisImage {
    pub index: usize,
    pub image: RingMat,
    pub coords: Vec<RingElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinCertificate {
    pub unitary: bool,
    pub images: Vec<BasisImage>,
}

/// A certified element of `Spin_{2n}(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinElem {
    g: CliffordElem,
    certificate: SpinCertificate,
    so: SOMatrix,
}

impl SpinElem {
    pub fn n(&self) -> usize {
        self.g.n
    }

    pub fn element(&self) -> &CliffordElem {
        &self.g
    }

    pub fn certificate(&self) -> &SpinCertificate {
        &self.certificate
    }

    pub fn so_matrix(&self) -> &SOMatrix {
        &self.so
    }

    /// `g^{-1} = g*`.
    pub fn inverse(&self) -> Result<SpinElem, CliffordError> {
        spin_certify(&self.g.star())
    }

    pub fn compose(&self, other: &SpinElem) -> Result<SpinElem, CliffordError> {
        spin_certify(&self.g.mul(&other.g)?)
    }
}

/// Checks `g g* = 1`, stability of `V` on all `2n` basis vectors, and that
/// the induced matrix lies in `SO_{2n}`.
pub fn spin_certify(g: &CliffordElem) -> Result<SpinElem, CliffordError> {
    if g.parity != Parity::Even {
        return Err(CliffordError::NotEven);
    }
    let ctx = g.ctx();
    let n = g.n;
    let gs = g.star();
    if !g.mat.try_matmul(&gs.mat)?.is_identity() {
        return Err(CliffordError::NotUnitary);
    }
    let mut images = Vec::with_capacity(2 * n);
    let mut so = RingMat::zeros(ctx, 2 * n, 2 * n);
    for i in 0..2 * n {
        let (a, b) = basis_vector(ctx, n, i);
        let image = g.mat.try_matmul(phi_embed(&a, &b)?.matrix())?.try_matmul(&gs.mat)?;
        let conj = CliffordElem::new(image.clone())?;
        let (ca, cb) = phi_extract(&conj).map_err(|_| CliffordError::NotStable(i))?;
        let coords: Vec<RingElem> = ca.into_iter().chain(cb).collect();
        for (r, c) in coords.iter().enumerate() {
            so.set(r, i, c.clone());
        }
        images.push(BasisImage { index: i, image, coords });
    }
    let so = SOMatrix::new(so)?;
    Ok(SpinElem { g: g.clone(), certificate: SpinCertificate { unitary: true, images }, so })
}

/// The upper block of `g phi(u) g*`: `h alpha h*` for odd `n` with
/// `g = diag(h, k)`, and `phi_1 alpha phi_2*` for even `n` with
/// `g = diag(phi_1, phi_2)`.
pub fn spin_act(g: &SpinElem, u: &UnitVector) -> Result<UnitVector, CliffordError> {
    if g.n() != u.n() {
        return Err(CliffordError::LevelMismatch { expected: g.n(), found: u.n() });
    }
    let elem = g.g.lift_to(u.ctx())?;
    if u.n() == 1 {
        let conj = elem.mul(&phi_of(u))?.mul(&elem.star())?;
        let (a, b) = phi_extract(&conj)?;
        return UnitVector::new(a, b).map_err(|e| CliffordError::NotInV(e.to_string()));
    }
    let (top, bottom) = elem.even_blocks();
    let alpha = suslin_alpha(u.a(), u.b())?.into_matrix();
    let right = if u.n() % 2 == 1 { &top } else { &bottom };
    let upper = top.try_matmul(&alpha)?.try_matmul(&standard_involution(right)?)?;
    let (a, b) = alpha_extract(&upper, u.n())?;
    UnitVector::new(a, b).map_err(|e| CliffordError::NotInV(e.to_string()))
}

/// `g = diag(h, (h*)^{-1})` for odd `n`, the element attached to `h` by the
/// `Spin_6 = SL_4` dictionary when `n = 3`.
pub fn dictionary_element(h: &RingMat) -> Result<CliffordElem, CliffordError> {
    let k = standard_involution(h)?.inverse()?;
    CliffordElem::even(h, &k)
}

/// `g' = E^t h E^{-t}`, the matrix relating `Psi_n` before and after acting
/// by `diag(h, (h*)^{-1})`.
pub fn translation_matrix(h: &RingMat) -> Result<RingMat, CliffordError> {
    let n = power_of_two_level(h.rows())? + 1;
    let ctx = h.ctx();
    let e = e_matrix(ctx, n);
    Ok(e.transpose().try_matmul(h)?.try_matmul(&e_inverse(ctx, n).transpose())?)
}

/// `H(sigma) = diag(sigma, sigma^{-t})` for `sigma` in `SL_n`.
pub fn hyperbolic_embed(sigma: &RingMat) -> Result<SOMatrix, CliffordError> {
    let det = sigma.det()?;
    if !det.is_one() {
        return Err(CliffordError::DetNotOne(det.to_string()));
    }
    let inv_t = sigma.inverse()?.transpose();
    SOMatrix::new(sigma.block_sum(&inv_t)?)
}

pub(crate) fn is_rational_square(c: &crate::ring::Rational) -> Option<crate::ring::Rational> {
    use num_bigint::Sign;
    if c.is_zero() || c.numer().sign() == Sign::Minus {
        return None;
    }
    let rn = c.numer().sqrt();
    let rd = c.denom().sqrt();
    if &(&rn * &rn) == c.numer() && &(&rd * &rd) == c.denom() {
        Some(crate::ring::Rational::new(rn, rd))
    } else {
        None
    }
}
