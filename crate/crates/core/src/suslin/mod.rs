//! Suslin matrices and the structure constants built around them.
//!
//! For `a, b` of length `n`, `alpha_n(a, b)` is the `2^{n-1}`-square matrix
//!
//! ```text
//! alpha_1 = (a1)
//! alpha_n = [[ a1 I,                   alpha_{n-1}(a', b') ],
//!            [ -alpha_{n-1}(b', a')^t, b1 I                ]]
//! ```
//!
//! with `a' = (a2..an)`, `b' = (b2..bn)`. Together with `J_n`, `E_n` and the
//! block forms `sigma`, `psi`, `tau` this yields the degree maps `Psi_n`.

mod consts;
mod pattern;

use thiserror::Error;

use crate::matrix::{FormClass, MatrixError, RingMat};
use crate::ring::{dot, EvalPoint, RingCtx, RingElem, RingError};

pub use consts::{e_inverse, e_matrix, j_matrix, psi, sigma, tau, StructConsts};
pub use pattern::LinearPattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuslinError {
    #[error("vectors have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("vectors must have length at least 1")]
    Empty,
    #[error("q(a, b) = {0}, not 1")]
    NotUnit(String),
    #[error("no section supplied")]
    MissingSection,
    #[error("matrix size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix of size {found} where {expected} was required")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix is not in the span of the pattern (residual {0})")]
    NotInSpan(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `q(a, b) = sum a_i b_i`.
pub fn q_form(a: &[RingElem], b: &[RingElem]) -> Result<RingElem, SuslinError> {
    if a.len() != b.len() {
        return Err(SuslinError::LengthMismatch(a.len(), b.len()));
    }
    Ok(dot(a, b)?)
}

/// A pair `(a, b)` with `q(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitVector {
    a: Vec<RingElem>,
    b: Vec<RingElem>,
}

impl UnitVector {
    pub fn new(a: Vec<RingElem>, b: Vec<RingElem>) -> Result<Self, SuslinError> {
        if a.is_empty() {
            return Err(SuslinError::Empty);
        }
        let q = q_form(&a, &b)?;
        if !q.is_one() {
            return Err(SuslinError::NotUnit(q.to_string()));
        }
        Ok(UnitVector { a, b })
    }

    /// `u_n = (e_n, e_n)` with `e_n = (1, 0, ..., 0)`.
    pub fn standard(ctx: RingCtx, n: usize) -> Self {
        let e: Vec<RingElem> = (0..n).map(|i| if i == 0 { ctx.one() } else { ctx.zero() }).collect();
        UnitVector { a: e.clone(), b: e }
    }

    /// `(x, y)` over the quadric ring `S_{2n-1}`.
    pub fn generic(n: usize) -> Self {
        let (a, b) = RingCtx::Quadric(n).generic_pair();
        UnitVector { a, b }
    }

    /// The rational unit vector given by a quadric point.
    pub fn from_point(p: &EvalPoint) -> Self {
        let c = RingCtx::Rational;
        UnitVector {
            a: p.xs().iter().map(|v| c.rational(v.clone())).collect(),
            b: p.ys().iter().map(|v| c.rational(v.clone())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn ctx(&self) -> RingCtx {
        self.a[0].ctx()
    }

    pub fn a(&self) -> &[RingElem] {
        &self.a
    }

    pub fn b(&self) -> &[RingElem] {
        &self.b
    }

    /// The `2n`-vector `(a1..an, b1..bn)`.
    pub fn to_column(&self) -> Vec<RingElem> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    pub fn from_column(col: &[RingElem]) -> Result<Self, SuslinError> {
        if col.len() % 2 == 1 {
            return Err(SuslinError::LengthMismatch(col.len() / 2 + 1, col.len() / 2));
        }
        let n = col.len() / 2;
        Self::new(col[..n].to_vec(), col[n..].to_vec())
    }
}

/// A vector `a` together with an optional section `b` certifying that the
/// entries of `a` generate the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularVec {
    a: Vec<RingElem>,
    section: Option<Vec<RingElem>>,
}

impl UnimodularVec {
    pub fn new(a: Vec<RingElem>, section: Option<Vec<RingElem>>) -> Result<Self, SuslinError> {
        if a.is_empty() {
            return Err(SuslinError::Empty);
        }
        if let Some(b) = &section {
            let q = q_form(&a, b)?;
            if !q.is_one() {
                return Err(SuslinError::NotUnit(q.to_string()));
            }
        }
        Ok(UnimodularVec { a, section })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[RingElem] {
        &self.a
    }

    pub fn section(&self) -> Option<&[RingElem]> {
        self.section.as_deref()
    }
}

/// `alpha_n(a, b)` (or its dual), remembering the vectors it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuslinMatrix {
    a: Vec<RingElem>,
    b: Vec<RingElem>,
    dual: bool,
    mat: RingMat,
}

impl SuslinMatrix {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn source(&self) -> (&[RingElem], &[RingElem]) {
        (&self.a, &self.b)
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn matrix(&self) -> &RingMat {
        &self.mat
    }

    pub fn into_matrix(self) -> RingMat {
        self.mat
    }
}

fn check_pair(a: &[RingElem], b: &[RingElem]) -> Result<RingCtx, SuslinError> {
    if a.len() != b.len() {
        return Err(SuslinError::LengthMismatch(a.len(), b.len()));
    }
    let first = a.first().ok_or(SuslinError::Empty)?;
    let ctx = first.ctx();
    for e in a.iter().chain(b) {
        if e.ctx() != ctx {
            return Err(RingError::CtxMismatch { left: ctx, right: e.ctx() }.into());
        }
    }
    Ok(ctx)
}

fn alpha_rec(ctx: RingCtx, a: &[RingElem], b: &[RingElem]) -> RingMat {
    if a.len() == 1 {
        return RingMat::scalar(ctx, 1, &a[0]);
    }
    let half = 1 << (a.len() - 2);
    let top_right = alpha_rec(ctx, &a[1..], &b[1..]);
    let bottom_left = -&alpha_rec(ctx, &b[1..], &a[1..]).transpose();
    RingMat::block2(
        &RingMat::scalar(ctx, half, &a[0]),
        &top_right,
        &bottom_left,
        &RingMat::scalar(ctx, half, &b[0]),
    )
    .expect("recursive blocks are conformable")
}

fn alpha_bar_rec(ctx: RingCtx, a: &[RingElem], b: &[RingElem]) -> RingMat {
    if a.len() == 1 {
        return RingMat::scalar(ctx, 1, &b[0]);
    }
    let half = 1 << (a.len() - 2);
    let top_right = -&alpha_rec(ctx, &a[1..], &b[1..]);
    let bottom_left = alpha_rec(ctx, &b[1..], &a[1..]).transpose();
    RingMat::block2(
        &RingMat::scalar(ctx, half, &b[0]),
        &top_right,
        &bottom_left,
        &RingMat::scalar(ctx, half, &a[0]),
    )
    .expect("recursive blocks are conformable")
}

pub fn suslin_alpha(a: &[RingElem], b: &[RingElem]) -> Result<SuslinMatrix, SuslinError> {
    let ctx = check_pair(a, b)?;
    Ok(SuslinMatrix { a: a.to_vec(), b: b.to_vec(), dual: false, mat: alpha_rec(ctx, a, b) })
}

pub fn suslin_alpha_bar(a: &[RingElem], b: &[RingElem]) -> Result<SuslinMatrix, SuslinError> {
    let ctx = check_pair(a, b)?;
    Ok(SuslinMatrix { a: a.to_vec(), b: b.to_vec(), dual: true, mat: alpha_bar_rec(ctx, a, b) })
}

/// `log2(size)` for powers of two.
pub fn power_of_two_level(size: usize) -> Result<usize, SuslinError> {
    if size == 0 || !size.is_power_of_two() {
        return Err(SuslinError::NotPowerOfTwo(size));
    }
    Ok(size.trailing_zeros() as usize)
}

/// `M* = J_{k+1} M^t J_{k+1}^t` for `M` of size `2^k`.
pub fn standard_involution(m: &RingMat) -> Result<RingMat, SuslinError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.rows(), m.cols()).into());
    }
    let k = power_of_two_level(m.rows())?;
    let j = j_matrix(m.ctx(), k + 1);
    Ok(&(&j * &m.transpose()) * &j.transpose())
}

/// Which class `Psi_n` lands in, by `n mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeClass {
    /// orthogonal w.r.t. `sigma_{2^{n-1}}`
    Orthogonal,
    Symmetric,
    /// symplectic w.r.t. `psi_{2^{n-1}}`
    Symplectic,
    Alternating,
}

impl DegreeClass {
    pub fn for_n(n: usize) -> Self {
        match n % 4 {
            0 => DegreeClass::Orthogonal,
            1 => DegreeClass::Symmetric,
            2 => DegreeClass::Symplectic,
            _ => DegreeClass::Alternating,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DegreeClass::Orthogonal => "orthogonal",
            DegreeClass::Symmetric => "symmetric",
            DegreeClass::Symplectic => "symplectic",
            DegreeClass::Alternating => "alternating",
        }
    }

    /// The [`FormClass`] to test membership with, at matrix size `size`.
    pub fn form_class(&self, ctx: RingCtx, size: usize) -> FormClass {
        match self {
            DegreeClass::Orthogonal => FormClass::OrthogonalWrt(sigma(ctx, size)),
            DegreeClass::Symmetric => FormClass::Symmetric,
            DegreeClass::Symplectic => FormClass::SymplecticWrt(psi(ctx, size)),
            DegreeClass::Alternating => FormClass::Alternating,
        }
    }
}

/// `Psi_n(a, b)` without checking `q(a, b) = 1`:
/// `E^{-1} alpha^t E` for even `n`, `E^t alpha J E` for odd `n`.
pub fn psi_degree_map_raw(a: &[RingElem], b: &[RingElem]) -> Result<RingMat, SuslinError> {
    let alpha = suslin_alpha(a, b)?.into_matrix();
    let ctx = alpha.ctx();
    let n = a.len();
    let e = e_matrix(ctx, n);
    Ok(if n.is_multiple_of(2) {
        &(&e_inverse(ctx, n) * &alpha.transpose()) * &e
    } else {
        &(&(&e.transpose() * &alpha) * &j_matrix(ctx, n)) * &e
    })
}

/// The degree map on unit vectors.
pub fn psi_degree_map(u: &UnitVector) -> Result<RingMat, SuslinError> {
    psi_degree_map_raw(u.a(), u.b())
}

/// Whether `Psi_n(u)` lies in the class predicted by `n mod 4`.
pub fn degree_class_holds(n: usize, psi_n: &RingMat) -> Result<bool, SuslinError> {
    let class = DegreeClass::for_n(n);
    if n == 1 {
        return Ok(psi_n.is_symmetric());
    }
    Ok(psi_n.classify_form(&class.form_class(psi_n.ctx(), psi_n.rows()))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(n: usize) -> (RingCtx, Vec<RingElem>, Vec<RingElem>) {
        let c = RingCtx::Poly(n);
        let (a, b) = c.generic_pair();
        (c, a, b)
    }

    #[test]
    fn alpha1_and_bar1() {
        let (_, a, b) = generic(1);
        assert_eq!(suslin_alpha(&a, &b).unwrap().matrix().get(0, 0), &a[0]);
        assert_eq!(suslin_alpha_bar(&a, &b).unwrap().matrix().get(0, 0), &b[0]);
    }

    #[test]
    fn alpha2_layout() {
        let (c, a, b) = generic(2);
        let m = suslin_alpha(&a, &b).unwrap();
        let expected =
            RingMat::from_rows(c, vec![vec![a[0].clone(), a[1].clone()], vec![-&b[1], b[0].clone()]]).unwrap();
        assert_eq!(m.matrix(), &expected);
        let bar = suslin_alpha_bar(&a, &b).unwrap();
        let expected_bar =
            RingMat::from_rows(c, vec![vec![b[0].clone(), -&a[1]], vec![b[1].clone(), a[0].clone()]]).unwrap();
        assert_eq!(bar.matrix(), &expected_bar);
    }

    #[test]
    fn alpha2_is_the_displayed_block_layout() {
        let (c, a, b) = generic(2);
        let inner = |v: &RingElem| RingMat::scalar(c, 1, v);
        let m = RingMat::block2(&inner(&a[0]), &inner(&a[1]), &-&inner(&b[1]).transpose(), &inner(&b[0])).unwrap();
        assert_eq!(&m, suslin_alpha(&a, &b).unwrap().matrix());
    }

    #[test]
    fn alpha3_at_standard_vector() {
        let u = UnitVector::standard(RingCtx::Rational, 3);
        assert!(suslin_alpha(u.a(), u.b()).unwrap().matrix().is_identity());
    }

    #[test]
    fn entries_are_signed_coordinates() {
        let (_, a, b) = generic(4);
        let m = suslin_alpha(&a, &b).unwrap();
        for e in m.matrix().entries() {
            let ok = e.is_zero() || a.iter().chain(&b).any(|v| v == e || &-v == e);
            assert!(ok, "unexpected entry {e}");
        }
    }

    #[test]
    fn length_mismatch() {
        let (_, a, b) = generic(3);
        assert_eq!(suslin_alpha(&a, &b[..2]), Err(SuslinError::LengthMismatch(3, 2)));
        assert_eq!(suslin_alpha_bar(&a[..1], &b), Err(SuslinError::LengthMismatch(1, 3)));
    }

    #[test]
    fn unit_vector_validation() {
        let c = RingCtx::Rational;
        assert!(UnitVector::new(vec![c.int(2)], vec![c.int(1)]).is_err());
        let u = UnitVector::new(vec![c.int(2), c.int(1)], vec![c.int(1), c.int(-1)]).unwrap();
        assert_eq!(UnitVector::from_column(&u.to_column()).unwrap(), u);
        let g = UnitVector::generic(3);
        assert_eq!(g.ctx(), RingCtx::Quadric(3));
    }

    #[test]
    fn involution_of_identity() {
        for size in [1, 2, 4, 8] {
            let i = RingMat::identity(RingCtx::Rational, size);
            assert_eq!(standard_involution(&i).unwrap(), i);
        }
        assert_eq!(
            standard_involution(&RingMat::identity(RingCtx::Rational, 3)),
            Err(SuslinError::NotPowerOfTwo(3))
        );
    }

    #[test]
    fn psi3_and_psi5_at_standard_vector() {
        let c = RingCtx::Rational;
        assert_eq!(psi_degree_map(&UnitVector::standard(c, 3)).unwrap(), psi(c, 4));
        assert_eq!(psi_degree_map(&UnitVector::standard(c, 5)).unwrap(), sigma(c, 16));
    }

    #[test]
    fn pfaffian_of_generic_psi3_is_one() {
        let p = psi_degree_map(&UnitVector::generic(3)).unwrap();
        assert!(p.is_alternating());
        assert!(p.pfaffian().unwrap().is_one());
    }

    #[test]
    fn degree_classes_generic_small() {
        for n in 1..=4 {
            let p = psi_degree_map(&UnitVector::generic(n)).unwrap();
            assert!(degree_class_holds(n, &p).unwrap(), "class fails for n={n}");
        }
    }
}
