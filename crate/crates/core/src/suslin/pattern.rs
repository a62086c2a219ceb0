//! Reading coordinates back off matrices that depend linearly on them.

use super::SuslinError;
use crate::matrix::RingMat;
use crate::ring::{Rational, RingElem};

/// A family of constant basis matrices with pairwise disjoint supports.
/// [`LinearPattern::extract`] recovers the coefficients of a combination and
/// rejects anything outside the span.
#[derive(Debug, Clone)]
pub struct LinearPattern {
    basis: Vec<RingMat>,
    /// per basis matrix: a witness position and the entry there
    probes: Vec<(usize, usize, Rational)>,
}

impl LinearPattern {
    pub fn new(basis: Vec<RingMat>) -> Self {
        let probes = basis
            .iter()
            .map(|b| {
                let cols = b.cols();
                let (k, v) = b
                    .entries()
                    .iter()
                    .enumerate()
                    .find(|(_, e)| !e.is_zero())
                    .expect("basis matrices are nonzero");
                let v = v.as_rational().expect("basis matrices are constant");
                (k / cols, k % cols, v)
            })
            .collect();
        LinearPattern { basis, probes }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficients `c` with `m = sum c_k B_k`.
    pub fn extract(&self, m: &RingMat) -> Result<Vec<RingElem>, SuslinError> {
        let first = self.basis.first().ok_or(SuslinError::Empty)?;
        if m.shape() != first.shape() {
            return Err(SuslinError::SizeMismatch { expected: first.rows(), found: m.rows() });
        }
        let ctx = m.ctx();
        let coords: Vec<RingElem> = self
            .probes
            .iter()
            .map(|(i, j, v)| m.get(*i, *j).scale(&v.recip()))
            .collect();
        let mut residual = m.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                residual = residual.try_sub(&b.lift_to(ctx)?.scale(c))?;
            }
        }
        if !residual.is_zero() {
            let bad = residual.entries().iter().find(|e| !e.is_zero()).map(|e| e.to_string());
            return Err(SuslinError::NotInSpan(bad.unwrap_or_default()));
        }
        Ok(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingCtx;

    #[test]
    fn recovers_alpha2_coordinates() {
        let q = RingCtx::Rational;
        let e = |i: usize| (0..4).map(|k| q.int((k == i) as i64)).collect::<Vec<_>>();
        let basis: Vec<RingMat> = (0..4)
            .map(|k| {
                let v = e(k);
                super::super::suslin_alpha(&v[..2], &v[2..]).unwrap().into_matrix()
            })
            .collect();
        let pat = LinearPattern::new(basis);
        let c = RingCtx::Poly(2);
        let (a, b) = c.generic_pair();
        let m = super::super::suslin_alpha(&a, &b).unwrap().into_matrix();
        let got = pat.extract(&m).unwrap();
        assert_eq!(got, [a.clone(), b.clone()].concat());
        assert_eq!(pat.extract(&RingMat::identity(q, 4)), Err(SuslinError::SizeMismatch { expected: 2, found: 4 }));
    }

    #[test]
    fn rejects_outside_span() {
        let q = RingCtx::Rational;
        let e = |i: usize| (0..6).map(|k| q.int((k == i) as i64)).collect::<Vec<_>>();
        let basis: Vec<RingMat> = (0..6)
            .map(|k| {
                let v = e(k);
                super::super::suslin_alpha(&v[..3], &v[3..]).unwrap().into_matrix()
            })
            .collect();
        let pat = LinearPattern::new(basis);
        let mut bad = RingMat::identity(q, 4);
        assert_eq!(pat.extract(&bad).unwrap().len(), 6);
        // alpha_3 has a zero at (0, 1)
        bad.set(0, 1, q.int(2));
        assert!(matches!(pat.extract(&bad), Err(SuslinError::NotInSpan(_))));
    }
}
