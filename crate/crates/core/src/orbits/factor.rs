//! Checking claimed factorizations `phi = lift(lambda) * eps_1 ... eps_k * s`
//! with `s` stabilizing a target unit vector.

use super::{ElementaryWitness, OrbitError};
use crate::clifford::{dictionary_element, lift_hyperbolic_to_spin, spin_act, spin_certify, CliffordElem, SpinElem};
use crate::matrix::RingMat;
use crate::suslin::UnitVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpinKind {
    /// `diag(h, (h*)^{-1})` with `h` the witness product (`n = 3`, `h` in `E_4`)
    Dictionary,
    /// a lift of `H(w)` with `w` the witness product in `E_n`, over Q
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpinFactor {
    pub kind: EpinKind,
    pub witness: ElementaryWitness,
    pub element: CliffordElem,
}

impl EpinFactor {
    pub fn dictionary(witness: ElementaryWitness) -> Result<Self, OrbitError> {
        let element = dictionary_element(&witness.to_matrix())?;
        Ok(EpinFactor { kind: EpinKind::Dictionary, witness, element })
    }

    pub fn hyperbolic(witness: ElementaryWitness) -> Result<Self, OrbitError> {
        let element = lift_hyperbolic_to_spin(&witness.to_matrix())?.element().clone();
        Ok(EpinFactor { kind: EpinKind::Hyperbolic, witness, element })
    }

    /// Certifies the element and checks it is the one its witness describes.
    fn check(&self, n: usize) -> Result<SpinElem, OrbitError> {
        let spin = spin_certify(&self.element)?;
        let w = self.witness.to_matrix().lift_to(self.element.ctx())?;
        let ok = match self.kind {
            EpinKind::Dictionary => {
                n == 3 && w.rows() == 4 && dictionary_element(&w)?.matrix() == self.element.matrix()
            }
            EpinKind::Hyperbolic => {
                w.rows() == n && crate::clifford::hyperbolic_embed(&w)?.matrix() == spin.so_matrix().matrix()
            }
        };
        if ok {
            Ok(spin)
        } else {
            Err(OrbitError::ProductMismatch)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub lambda: RingMat,
    pub epin: Vec<EpinFactor>,
    pub stabilizer: CliffordElem,
}

impl Decomposition {
    /// `lift(lambda) * eps_1 ... eps_k * s`, without any certification.
    pub fn compose(&self) -> Result<CliffordElem, OrbitError> {
        let ctx = self.stabilizer.ctx();
        let mut acc = lambda_lift(&self.lambda)?.lift_to(ctx)?;
        for f in &self.epin {
            acc = acc.mul(&f.element.lift_to(ctx)?)?;
        }
        Ok(acc.mul(&self.stabilizer)?)
    }
}

fn lambda_lift(lambda: &RingMat) -> Result<CliffordElem, OrbitError> {
    if lambda.is_constant() {
        return Ok(lift_hyperbolic_to_spin(lambda)?.element().clone());
    }
    Err(OrbitError::UnsupportedLift)
}

/// Verifies a claimed factorization; it does not search for one. The product
/// is compared with `phi` up to the central sign `-1`, which lies in the
/// kernel of `Spin -> SO` and in the elementary subgroup.
pub fn factorization_check(phi: &SpinElem, d: &Decomposition, target: &UnitVector) -> Result<(), OrbitError> {
    let n = phi.n();
    if target.n() != n || d.lambda.rows() != n {
        let found = if target.n() != n { target.n() } else { d.lambda.rows() };
        return Err(OrbitError::SizeMismatch { expected: n, found });
    }
    let s = spin_certify(&d.stabilizer)?;
    if &spin_act(&s, target)? != target {
        return Err(OrbitError::StabilizerFails);
    }
    for (k, f) in d.epin.iter().enumerate() {
        f.check(n).map_err(|e| match e {
            OrbitError::ProductMismatch => OrbitError::EpinMismatch(k),
            other => other,
        })?;
    }
    let ctx = phi.element().ctx();
    let product = d.compose()?.lift_to(ctx)?;
    let p = phi.element().matrix();
    if product.matrix() == p || product.matrix() == &-p {
        Ok(())
    } else {
        Err(OrbitError::ProductMismatch)
    }
}
