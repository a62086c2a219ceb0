//! The lift `SL_n(Q) -> Spin_{2n}(Q)` of the hyperbolic embedding.

use num_traits::{Signed, Zero};

use super::{basis_vector, hyperbolic_embed, is_rational_square, phi_embed, spin_certify, CliffordElem, CliffordError, SpinElem};
use crate::matrix::{rational_nullspace, RingMat};
use crate::ring::{Rational, RingCtx};

/// Solves `g phi(v_i) = phi(H(sigma) v_i) g` for even `g = diag(g1, g2)`
/// over all basis vectors, rescales the (one-dimensional) solution so that
/// `g g* = 1`, and picks the sign making the first nonzero entry positive.
pub fn lift_hyperbolic_to_spin(sigma: &RingMat) -> Result<SpinElem, CliffordError> {
    if !sigma.is_constant() {
        return Err(CliffordError::NotRational);
    }
    let q = RingCtx::Rational;
    let sigma = sigma.lift_to(q)?;
    let h = hyperbolic_embed(&sigma)?;
    let n = sigma.rows();
    let m = 1usize << (n - 1);
    let unknowns = 2 * m * m;
    // g1[r][k] is unknown r*m+k, g2[r][k] is m*m + r*m+k
    let g1 = |r: usize, k: usize| r * m + k;
    let g2 = |r: usize, k: usize| m * m + r * m + k;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..2 * n {
        let (a, b) = basis_vector(q, n, i);
        let col: Vec<_> = (0..2 * n).map(|r| h.matrix().get(r, i).clone()).collect();
        let (wa, wb) = col.split_at(n);
        let src = phi_embed(&a, &b)?;
        let dst = phi_embed(wa, wb)?;
        let [_, alpha_v, bar_v, _] = src.matrix().quadrants();
        let [_, alpha_w, bar_w, _] = dst.matrix().quadrants();
        let (alpha_v, bar_v) = (alpha_v.to_rationals()?, bar_v.to_rationals()?);
        let (alpha_w, bar_w) = (alpha_w.to_rationals()?, bar_w.to_rationals()?);
        // g1 alpha_v - alpha_w g2 = 0 and g2 bar_v - bar_w g1 = 0
        for (left, right, gl, gr) in [
            (&alpha_v, &alpha_w, &g1 as &dyn Fn(usize, usize) -> usize, &g2 as &dyn Fn(usize, usize) -> usize),
            (&bar_v, &bar_w, &g2, &g1),
        ] {
            for r in 0..m {
                for c in 0..m {
                    let mut row = vec![Rational::zero(); unknowns];
                    for k in 0..m {
                        if !left[k][c].is_zero() {
                            row[gl(r, k)] += &left[k][c];
                        }
                        if !right[r][k].is_zero() {
                            row[gr(k, c)] -= &right[r][k];
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }

    let basis = rational_nullspace(&rows, unknowns);
    let v = match basis.len() {
        0 => return Err(CliffordError::NoLift),
        1 => &basis[0],
        d => return Err(CliffordError::AmbiguousLift(d)),
    };
    let top = RingMat::from_fn(q, m, m, |r, k| q.rational(v[g1(r, k)].clone()));
    let bottom = RingMat::from_fn(q, m, m, |r, k| q.rational(v[g2(r, k)].clone()));
    let g = CliffordElem::even(&top, &bottom)?;

    let norm = g.mul(&g.star())?;
    let c = norm.matrix().get(0, 0).as_rational().expect("rational entries");
    if norm.matrix() != &RingMat::scalar(q, 2 * m, &q.rational(c.clone())) {
        return Err(CliffordError::NotNormalizable(format!("non-scalar g g*, leading entry {c}")));
    }
    let root = is_rational_square(&c).ok_or_else(|| CliffordError::NotNormalizable(c.to_string()))?;
    let mut scale = root.recip();
    let lead = v.iter().find(|x| !x.is_zero()).expect("nullspace vectors are nonzero");
    if lead.is_negative() {
        scale = -scale;
    }
    let g = CliffordElem::new(g.matrix().scale(&q.rational(scale)))?;
    let spin = spin_certify(&g)?;
    debug_assert_eq!(spin.so_matrix(), &h);
    Ok(spin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elementary(size: usize, i: usize, j: usize, l: i64) -> RingMat {
        let q = RingCtx::Rational;
        let mut m = RingMat::identity(q, size);
        m.set(i, j, q.int(l));
        m
    }

    #[test]
    fn identity_lifts_to_plus_one() {
        for n in 1..=4 {
            let s = lift_hyperbolic_to_spin(&RingMat::identity(RingCtx::Rational, n)).unwrap();
            assert!(s.element().matrix().is_identity());
        }
    }

    #[test]
    fn elementary_lift_covers_h() {
        let sigma = elementary(3, 0, 2, 2);
        let s = lift_hyperbolic_to_spin(&sigma).unwrap();
        assert_eq!(s.so_matrix(), &hyperbolic_embed(&sigma).unwrap());
    }

    #[test]
    fn lift_is_multiplicative_up_to_sign() {
        let s1 = elementary(3, 1, 0, -3);
        let s2 = elementary(3, 2, 1, 5);
        let l12 = lift_hyperbolic_to_spin(&(&s1 * &s2)).unwrap();
        let prod = lift_hyperbolic_to_spin(&s1)
            .unwrap()
            .element()
            .mul(lift_hyperbolic_to_spin(&s2).unwrap().element())
            .unwrap();
        let a = l12.element().matrix();
        assert!(a == prod.matrix() || a == &-prod.matrix());
    }

    #[test]
    fn rejects_symbolic_and_det_not_one() {
        let c = RingCtx::Poly(1);
        let mut s = RingMat::identity(c, 2);
        s.set(0, 1, c.x(0));
        assert_eq!(lift_hyperbolic_to_spin(&s), Err(CliffordError::NotRational));
        let q = RingCtx::Rational;
        assert!(matches!(
            lift_hyperbolic_to_spin(&RingMat::scalar(q, 2, &q.int(3))),
            Err(CliffordError::DetNotOne(_))
        ));
    }

    #[test]
    fn diagonal_torus_lift() {
        let q = RingCtx::Rational;
        let mut d = RingMat::identity(q, 2);
        d.set(0, 0, q.int(4));
        d.set(1, 1, q.rational(crate::ring::rational(1, 4)));
        let s = lift_hyperbolic_to_spin(&d).unwrap();
        assert_eq!(s.so_matrix(), &hyperbolic_embed(&d).unwrap());
    }

    #[test]
    fn even_blocks_are_sigma_orthogonal_n4() {
        use crate::matrix::FormClass;
        use crate::suslin::{e_inverse, e_matrix, sigma};
        let q = RingCtx::Rational;
        let s = lift_hyperbolic_to_spin(&(&elementary(4, 0, 3, 2) * &elementary(4, 2, 1, -1))).unwrap();
        let (p1, p2) = s.element().even_blocks();
        for p in [p1, p2] {
            let t = &(&e_inverse(q, 4) * &p) * &e_matrix(q, 4);
            assert!(t.classify_form(&FormClass::OrthogonalWrt(sigma(q, 8))).unwrap());
        }
    }
}
