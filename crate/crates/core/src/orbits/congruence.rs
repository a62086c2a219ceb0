//! Stable congruence `M ⊥ F_{|N|+2i} = E^t (N ⊥ F_{|M|+2i}) E`, with `F = psi`
//! for alternating forms and `F = sigma` for symmetric ones.

use std::fmt;
use std::str::FromStr;

use super::{ElementaryWitness, OrbitError};
use crate::matrix::{MatrixError, RingMat};
use crate::suslin::{psi, sigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// alternating forms, elementary `E`
    WE,
    /// alternating forms, `det E = 1`
    WSL,
    /// symmetric forms, elementary `E`
    SSim,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::WE => "W_E",
            Flavor::WSL => "W_SL",
            Flavor::SSim => "S_sim",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "W_E" => Ok(Flavor::WE),
            "W_SL" => Ok(Flavor::WSL),
            "S_sim" => Ok(Flavor::SSim),
            other => Err(format!("unknown flavor {other:?} (expected W_E, W_SL or S_sim)")),
        }
    }
}

/// The congruence matrix `E`, either as elementary factors or as a plain matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceMap {
    Elementary(ElementaryWitness),
    Matrix(RingMat),
}

impl CongruenceMap {
    pub fn to_matrix(&self) -> RingMat {
        match self {
            CongruenceMap::Elementary(w) => w.to_matrix(),
            CongruenceMap::Matrix(m) => m.clone(),
        }
    }
}

fn require_even(m: &RingMat) -> Result<usize, OrbitError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.rows(), m.cols()).into());
    }
    if m.rows() % 2 == 1 {
        return Err(MatrixError::OddSize(m.rows()).into());
    }
    Ok(m.rows())
}

/// Evaluates both sides exactly. Shape problems are errors; a congruence
/// that simply fails is `Ok(false)`.
pub fn verify_congruence_witness(
    m: &RingMat,
    n: &RingMat,
    i: usize,
    e: &CongruenceMap,
    flavor: Flavor,
) -> Result<bool, OrbitError> {
    let (sm, sn) = (require_even(m)?, require_even(n)?);
    let tail: fn(crate::ring::RingCtx, usize) -> RingMat = match flavor {
        Flavor::WE | Flavor::WSL => {
            if !m.is_alternating() || !n.is_alternating() {
                return Err(OrbitError::NotAlternating);
            }
            psi
        }
        Flavor::SSim => {
            if !m.is_symmetric() || !n.is_symmetric() {
                return Err(OrbitError::NotSymmetric);
            }
            sigma
        }
    };
    let e = match (flavor, e) {
        (Flavor::WE | Flavor::SSim, CongruenceMap::Matrix(_)) => {
            return Err(OrbitError::FlavorMismatch { flavor: flavor.name(), needs: "an elementary witness" })
        }
        (_, map) => map.to_matrix(),
    };
    let total = sm + sn + 2 * i;
    if e.shape() != (total, total) {
        return Err(OrbitError::SizeMismatch { expected: total, found: e.rows() });
    }
    if flavor == Flavor::WSL {
        let det = e.det()?;
        if !det.is_one() {
            return Err(OrbitError::DetNotOne(det.to_string()));
        }
    }
    let ctx = m.ctx();
    let left = m.block_sum(&tail(ctx, sn + 2 * i))?;
    let right = n.block_sum(&tail(n.ctx(), sm + 2 * i))?;
    let rhs = e.transpose().try_matmul(&right)?.try_matmul(&e)?;
    Ok(left == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingCtx;

    fn q() -> RingCtx {
        RingCtx::Rational
    }

    #[test]
    fn identity_witness() {
        let p = psi(q(), 4);
        let e = CongruenceMap::Elementary(ElementaryWitness::identity(q(), 10));
        assert!(verify_congruence_witness(&p, &p, 1, &e, Flavor::WE).unwrap());
    }

    #[test]
    fn identity_in_disguise() {
        let p = psi(q(), 4);
        let w = ElementaryWitness::new(q(), 10, vec![(0, 3, q().int(2)), (7, 1, q().int(-5))]).unwrap();
        let e = CongruenceMap::Elementary(w.then(&w.inverse()));
        assert!(verify_congruence_witness(&p, &p, 1, &e, Flavor::WE).unwrap());
    }

    #[test]
    fn flavor_checks() {
        let p = psi(q(), 4);
        let s = sigma(q(), 4);
        let id = CongruenceMap::Elementary(ElementaryWitness::identity(q(), 10));
        assert_eq!(verify_congruence_witness(&s, &s, 1, &id, Flavor::WE), Err(OrbitError::NotAlternating));
        assert_eq!(verify_congruence_witness(&p, &p, 1, &id, Flavor::SSim), Err(OrbitError::NotSymmetric));
        assert!(verify_congruence_witness(&s, &s, 1, &id, Flavor::SSim).unwrap());
        let mat = CongruenceMap::Matrix(RingMat::identity(q(), 10));
        assert!(matches!(
            verify_congruence_witness(&p, &p, 1, &mat, Flavor::WE),
            Err(OrbitError::FlavorMismatch { .. })
        ));
        assert!(verify_congruence_witness(&p, &p, 1, &mat, Flavor::WSL).unwrap());
        let twice = CongruenceMap::Matrix(RingMat::scalar(q(), 10, &q().int(2)));
        assert!(matches!(verify_congruence_witness(&p, &p, 1, &twice, Flavor::WSL), Err(OrbitError::DetNotOne(_))));
        let small = CongruenceMap::Matrix(RingMat::identity(q(), 8));
        assert_eq!(
            verify_congruence_witness(&p, &p, 1, &small, Flavor::WSL),
            Err(OrbitError::SizeMismatch { expected: 10, found: 8 })
        );
    }

    #[test]
    fn flavor_names_round_trip() {
        for f in [Flavor::WE, Flavor::WSL, Flavor::SSim] {
            assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
        }
        assert!("W".parse::<Flavor>().is_err());
    }
}
