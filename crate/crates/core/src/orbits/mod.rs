//! Witness checking for orbit and stable-congruence statements, plus the
//! explicit constructions that produce witnesses: power-row sections, the
//! `U_5 = A~_4` dictionary and symplectic stabilizers.

mod congruence;
mod factor;

use num_integer::binomial;
use num_bigint::BigInt;
use thiserror::Error;

use crate::clifford::CliffordError;
use crate::matrix::{MatrixError, RingMat};
use crate::ring::{RationalSampler, RingCtx, RingElem, RingError};
use crate::suslin::{e_inverse, e_matrix, psi_degree_map, LinearPattern, SuslinError, UnimodularVec, UnitVector};

pub use congruence::{verify_congruence_witness, CongruenceMap, Flavor};
pub use factor::{factorization_check, Decomposition, EpinFactor, EpinKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("unimodular vector carries no section")]
    MissingWitness,
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Pfaffian is {0}, not 1")]
    PfaffianNotOne(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("flavor {flavor} needs {needs}")]
    FlavorMismatch { flavor: &'static str, needs: &'static str },
    #[error("congruence matrix has determinant {0}, not 1")]
    DetNotOne(String),
    #[error("elementary factor ({0}, {1}) is on the diagonal or out of range")]
    BadFactor(usize, usize),
    #[error("stabilizer moves the target vector")]
    StabilizerFails,
    #[error("Epin factor {0} does not act as claimed")]
    EpinMismatch(usize),
    #[error("lifts of SL_n are only available over Q; lambda must be the identity here")]
    UnsupportedLift,
    #[error("composed product differs from the element")]
    ProductMismatch,
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Suslin(#[from] SuslinError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The product `prod_k (I + lambda_k E_{i_k j_k})`, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryWitness {
    ctx: RingCtx,
    size: usize,
    factors: Vec<(usize, usize, RingElem)>,
}

impl ElementaryWitness {
    pub fn new(ctx: RingCtx, size: usize, factors: Vec<(usize, usize, RingElem)>) -> Result<Self, OrbitError> {
        for (i, j, l) in &factors {
            if i == j || *i >= size || *j >= size {
                return Err(OrbitError::BadFactor(*i, *j));
            }
            if l.ctx() != ctx {
                return Err(RingError::CtxMismatch { left: ctx, right: l.ctx() }.into());
            }
        }
        Ok(ElementaryWitness { ctx, size, factors })
    }

    pub fn identity(ctx: RingCtx, size: usize) -> Self {
        ElementaryWitness { ctx, size, factors: Vec::new() }
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[(usize, usize, RingElem)] {
        &self.factors
    }

    pub fn push(&mut self, i: usize, j: usize, l: RingElem) -> Result<(), OrbitError> {
        let f = ElementaryWitness::new(self.ctx, self.size, vec![(i, j, l)])?.factors;
        self.factors.extend(f);
        Ok(())
    }

    /// Applies each factor as a column operation, so no full products are formed.
    pub fn to_matrix(&self) -> RingMat {
        let mut m = RingMat::identity(self.ctx, self.size);
        for (i, j, l) in &self.factors {
            // M (I + l E_ij): column j += l * column i
            for r in 0..self.size {
                let v = m.get(r, *i);
                if !v.is_zero() {
                    let new = m.get(r, *j) + &(v * l);
                    m.set(r, *j, new);
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> ElementaryWitness {
        let factors = self.factors.iter().rev().map(|(i, j, l)| (*i, *j, -l)).collect();
        ElementaryWitness { ctx: self.ctx, size: self.size, factors }
    }

    pub fn then(&self, other: &ElementaryWitness) -> ElementaryWitness {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ElementaryWitness { ctx: self.ctx, size: self.size, factors }
    }
}

/// `count` random factors `(i, j, lambda)` with small nonzero integer
/// `lambda`, deterministic in `seed`.
pub fn random_elementary_witness(ctx: RingCtx, size: usize, count: usize, seed: u64) -> ElementaryWitness {
    let mut s = RationalSampler::new(seed);
    let factors = (0..count)
        .map(|_| {
            let i = s.index(size);
            let j = (i + 1 + s.index(size - 1)) % size;
            let mut l = s.int(-3, 3);
            if l == 0 {
                l = 1;
            }
            (i, j, ctx.int(l))
        })
        .collect();
    ElementaryWitness { ctx, size, factors }
}

/// `(v, w)` for `v` together with its section `w`.
pub fn unit_vector_of(v: &UnimodularVec) -> Result<UnitVector, OrbitError> {
    let w = v.section().ok_or(OrbitError::MissingWitness)?;
    Ok(UnitVector::new(v.a().to_vec(), w.to_vec())?)
}

/// `(x_1^m, x_2, ..., x_n)` over `S_{2n-1}` with the section read off
/// `1 = (x_1 y_1 + s)^m`, `s = sum_{i >= 2} x_i y_i`: the `(x_1 y_1)^m` term
/// gives `y_1^m`, and every other term carries a factor of `s` whose
/// summands are split among `x_2, ..., x_n`.
pub fn power_row_section(n: usize, m: u32) -> UnimodularVec {
    assert!(n >= 2 && m >= 1, "power rows need n >= 2 and m >= 1");
    let c = RingCtx::Quadric(n);
    let t = c.x(0) * c.y(0);
    let s = (1..n).fold(c.zero(), |acc, i| acc + c.x(i) * c.y(i));
    // sum_{k < m} C(m, k) t^k s^{m-k-1}
    let mut common = c.zero();
    for k in 0..m {
        let coeff = binomial(BigInt::from(m), BigInt::from(k));
        common = common + (t.pow(k) * s.pow(m - k - 1)).scale(&coeff.into());
    }
    let a: Vec<RingElem> = std::iter::once(c.x(0).pow(m)).chain((1..n).map(|i| c.x(i))).collect();
    let b: Vec<RingElem> = std::iter::once(c.y(0).pow(m)).chain((1..n).map(|i| c.y(i) * &common)).collect();
    UnimodularVec::new(a, Some(b)).expect("binomial section")
}

/// An alternating matrix with Pfaffian 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltClassRep {
    mat: RingMat,
}

impl AltClassRep {
    pub fn new(mat: RingMat) -> Result<Self, OrbitError> {
        if !mat.is_alternating() {
            return Err(OrbitError::NotAlternating);
        }
        let pf = mat.pfaffian()?;
        if !pf.is_one() {
            return Err(OrbitError::PfaffianNotOne(pf.to_string()));
        }
        Ok(AltClassRep { mat })
    }

    pub fn matrix(&self) -> &RingMat {
        &self.mat
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }
}

fn psi3_pattern() -> LinearPattern {
    let q = RingCtx::Rational;
    let basis = (0..6)
        .map(|i| {
            let (a, b) = crate::clifford::basis_vector(q, 3, i);
            crate::suslin::psi_degree_map_raw(&a, &b).expect("equal lengths")
        })
        .collect();
    LinearPattern::new(basis)
}

/// `(v, w) -> Psi_3(v, w)`.
pub fn unit_vector_to_alt4(u: &UnitVector) -> Result<AltClassRep, OrbitError> {
    if u.n() != 3 {
        return Err(OrbitError::SizeMismatch { expected: 3, found: u.n() });
    }
    AltClassRep::new(psi_degree_map(u)?)
}

/// Reads `(v, w)` off the entries of a 4x4 alternating matrix with
/// Pfaffian 1; the Pfaffian condition is exactly `q(v, w) = 1`.
pub fn alt4_to_unit_vector(a: &RingMat) -> Result<UnitVector, OrbitError> {
    if a.shape() != (4, 4) {
        return Err(OrbitError::SizeMismatch { expected: 4, found: a.rows() });
    }
    let rep = AltClassRep::new(a.clone())?;
    let mut coords = psi3_pattern().extract(rep.matrix())?;
    let b = coords.split_off(3);
    Ok(UnitVector::new(coords, b)?)
}

/// `T = I + lambda u u^t chi`, which satisfies `T^t chi T = chi` for any
/// alternating `chi`.
pub fn symplectic_transvection(chi: &RingMat, u: &[RingElem], lambda: &RingElem) -> Result<RingMat, OrbitError> {
    if !chi.is_alternating() {
        return Err(OrbitError::NotAlternating);
    }
    let n = chi.rows();
    if u.len() != n {
        return Err(OrbitError::SizeMismatch { expected: n, found: u.len() });
    }
    let ctx = chi.ctx();
    let outer = RingMat::from_fn(ctx, n, n, |i, j| &(&u[i] * &u[j]) * lambda);
    Ok(RingMat::identity(ctx, n).try_add(&outer.try_matmul(chi)?)?)
}

/// The `h` with `diag(h, (h*)^{-1})` fixing `u` (n = 3), built from a
/// transvection `T` in `Sp(Psi_3(u))`: `g' = T^t`, `h = E^{-t} g' E^t`.
pub fn stabilizer_block(u: &UnitVector, direction: &[RingElem], lambda: &RingElem) -> Result<RingMat, OrbitError> {
    if u.n() != 3 {
        return Err(OrbitError::SizeMismatch { expected: 3, found: u.n() });
    }
    let chi = psi_degree_map(u)?;
    let t = symplectic_transvection(&chi, direction, lambda)?;
    let ctx = u.ctx();
    let e = e_matrix(ctx, 3);
    Ok(e_inverse(ctx, 3).transpose().try_matmul(&t.transpose())?.try_matmul(&e.transpose())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{dictionary_element, spin_act, spin_certify};
    use crate::suslin::psi;

    #[test]
    fn witness_matrix_and_inverse() {
        let q = RingCtx::Rational;
        let w = ElementaryWitness::new(q, 3, vec![(0, 1, q.int(2)), (2, 0, q.int(-1))]).unwrap();
        let mut e01 = RingMat::identity(q, 3);
        e01.set(0, 1, q.int(2));
        let mut e20 = RingMat::identity(q, 3);
        e20.set(2, 0, q.int(-1));
        assert_eq!(w.to_matrix(), &e01 * &e20);
        assert!((&w.to_matrix() * &w.inverse().to_matrix()).is_identity());
        assert!(w.then(&w.inverse()).to_matrix().is_identity());
        assert_eq!(ElementaryWitness::new(q, 3, vec![(1, 1, q.one())]), Err(OrbitError::BadFactor(1, 1)));
    }

    #[test]
    fn random_witness_is_deterministic() {
        let q = RingCtx::Rational;
        let a = random_elementary_witness(q, 4, 6, 9);
        assert_eq!(a, random_elementary_witness(q, 4, 6, 9));
        assert!(a.factors().iter().all(|(i, j, l)| i != j && !l.is_zero()));
        assert!(a.to_matrix().det().unwrap().is_one());
    }

    #[test]
    fn unit_vector_of_standard() {
        let q = RingCtx::Rational;
        let e = UnitVector::standard(q, 3);
        let v = UnimodularVec::new(e.a().to_vec(), Some(e.b().to_vec())).unwrap();
        assert_eq!(unit_vector_of(&v).unwrap(), e);
        let bare = UnimodularVec::new(e.a().to_vec(), None).unwrap();
        assert_eq!(unit_vector_of(&bare), Err(OrbitError::MissingWitness));
    }

    #[test]
    fn power_row_m1_is_generic() {
        let v = power_row_section(3, 1);
        let c = RingCtx::Quadric(3);
        assert_eq!(v.section().unwrap(), &[c.y(0), c.y(1), c.y(2)]);
    }

    #[test]
    fn power_row_n3_m2() {
        let v = power_row_section(3, 2);
        let c = RingCtx::Quadric(3);
        assert_eq!(v.section().unwrap()[0], c.y(0).pow(2));
        assert!(crate::ring::dot(v.a(), v.section().unwrap()).unwrap().is_one());
    }

    #[test]
    fn psi4_maps_to_standard() {
        let q = RingCtx::Rational;
        assert_eq!(alt4_to_unit_vector(&psi(q, 4)).unwrap(), UnitVector::standard(q, 3));
    }

    #[test]
    fn alt4_round_trip_generic() {
        let u = UnitVector::generic(3);
        let a = unit_vector_to_alt4(&u).unwrap();
        assert_eq!(alt4_to_unit_vector(a.matrix()).unwrap(), u);
    }

    #[test]
    fn alt4_rejects() {
        let q = RingCtx::Rational;
        assert_eq!(alt4_to_unit_vector(&RingMat::identity(q, 4)), Err(OrbitError::NotAlternating));
        let twice = psi(q, 4).scale(&q.int(2));
        assert!(matches!(alt4_to_unit_vector(&twice), Err(OrbitError::PfaffianNotOne(_))));
    }

    #[test]
    fn transvection_preserves_form() {
        let u = UnitVector::generic(3);
        let chi = psi_degree_map(&u).unwrap();
        let c = u.ctx();
        let dir = vec![c.x(1), c.one(), c.zero(), c.y(2)];
        let t = symplectic_transvection(&chi, &dir, &c.int(3)).unwrap();
        assert_eq!(&(&t.transpose() * &chi) * &t, chi);
    }

    #[test]
    fn stabilizer_fixes_target() {
        let q = RingCtx::Rational;
        let u = UnitVector::new(vec![q.int(2), q.int(1), q.int(3)], vec![q.int(1), q.int(2), q.int(-1)]).unwrap();
        let h = stabilizer_block(&u, &[q.int(1), q.int(-2), q.int(0), q.int(5)], &q.int(7)).unwrap();
        let s = spin_certify(&dictionary_element(&h).unwrap()).unwrap();
        assert_eq!(spin_act(&s, &u).unwrap(), u);
    }
}
