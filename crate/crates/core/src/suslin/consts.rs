//! `J_n`, `E_n` and the block forms `sigma_{2m}`, `psi_{2m}`, `tau_{2m}`.

use crate::matrix::RingMat;
use crate::ring::RingCtx;

fn repeat_block(ctx: RingCtx, m: usize, block: [[i64; 2]; 2]) -> RingMat {
    assert!(m >= 2 && m.is_multiple_of(2), "block forms need an even size >= 2, got {m}");
    let mut out = RingMat::zeros(ctx, m, m);
    for k in (0..m).step_by(2) {
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.set(k + i, k + j, ctx.int(v));
                }
            }
        }
    }
    out
}

/// `sigma_2 = [[0, 1], [1, 0]]`, `sigma_{2m} = sigma_{2m-2} ⊥ sigma_2`.
pub fn sigma(ctx: RingCtx, m: usize) -> RingMat {
    repeat_block(ctx, m, [[0, 1], [1, 0]])
}

/// `psi_2 = [[0, 1], [-1, 0]]`, `psi_{2m} = psi_{2m-2} ⊥ psi_2`.
pub fn psi(ctx: RingCtx, m: usize) -> RingMat {
    repeat_block(ctx, m, [[0, 1], [-1, 0]])
}

/// `tau_2 = [[0, 1], [0, 0]]`, `tau_{2m} = tau_{2m-2} ⊥ tau_2`.
pub fn tau(ctx: RingCtx, m: usize) -> RingMat {
    repeat_block(ctx, m, [[0, 1], [0, 0]])
}

/// `J_1 = (1)`; `J_n = [[0, J], [-J, 0]]` for even `n` and
/// `[[J, 0], [0, -J]]` for odd `n`, with `J = J_{n-1}`.
pub fn j_matrix(ctx: RingCtx, n: usize) -> RingMat {
    assert!(n >= 1, "J_n needs n >= 1");
    if n == 1 {
        return RingMat::identity(ctx, 1);
    }
    let prev = j_matrix(ctx, n - 1);
    let z = RingMat::zeros(ctx, prev.rows(), prev.cols());
    let neg = -&prev;
    let m = if n.is_multiple_of(2) {
        RingMat::block2(&z, &prev, &neg, &z)
    } else {
        RingMat::block2(&prev, &z, &z, &neg)
    };
    m.expect("conformable")
}

fn diag2(a: &RingMat, b: &RingMat) -> RingMat {
    a.block_sum(b).expect("same ctx")
}

fn unipotent(ctx: RingCtx, k: usize, upper: Option<&RingMat>, lower: Option<&RingMat>) -> RingMat {
    let i = RingMat::identity(ctx, k);
    let z = RingMat::zeros(ctx, k, k);
    RingMat::block2(&i, upper.unwrap_or(&z), lower.unwrap_or(&z), &i).expect("conformable")
}

/// The four-case recursion keyed on `n mod 4`; `E_1`, `E_2` are identities.
/// Bare `1` blocks are identities of size `2^{n-2}`.
pub fn e_matrix(ctx: RingCtx, n: usize) -> RingMat {
    assert!(n >= 1, "E_n needs n >= 1");
    if n <= 2 {
        return RingMat::identity(ctx, 1 << (n - 1));
    }
    let k = 1 << (n - 2);
    let id = RingMat::identity(ctx, k);
    match n % 4 {
        0 => {
            let d1 = diag2(&id, &j_matrix(ctx, n - 1).transpose());
            let l = unipotent(ctx, k, None, Some(&tau(ctx, k)));
            let u = unipotent(ctx, k, Some(&-&sigma(ctx, k)), None);
            let d2 = diag2(&id, &psi(ctx, k));
            &(&(&d1 * &l) * &u) * &d2
        }
        1 => {
            let prev = e_matrix(ctx, n - 1);
            &diag2(&prev, &prev) * &diag2(&id, &psi(ctx, k))
        }
        2 => {
            let d1 = diag2(&id, &j_matrix(ctx, n - 1).transpose());
            let l = unipotent(ctx, k, None, Some(&tau(ctx, k)));
            let u = unipotent(ctx, k, Some(&psi(ctx, k)), None);
            let d2 = diag2(&id, &sigma(ctx, k));
            &(&(&d1 * &l) * &u) * &d2
        }
        _ => {
            let prev = e_matrix(ctx, n - 1);
            &diag2(&prev, &prev) * &diag2(&id, &sigma(ctx, k))
        }
    }
}

/// `E_n^{-1}`, assembled from the inverses of the factors of [`e_matrix`]:
/// `psi^{-1} = -psi`, `sigma^{-1} = sigma`, `(J^t)^{-1} = J`, and unipotent
/// blocks invert by negating their off-diagonal part.
pub fn e_inverse(ctx: RingCtx, n: usize) -> RingMat {
    assert!(n >= 1, "E_n needs n >= 1");
    if n <= 2 {
        return RingMat::identity(ctx, 1 << (n - 1));
    }
    let k = 1 << (n - 2);
    let id = RingMat::identity(ctx, k);
    match n % 4 {
        0 => {
            let d2 = diag2(&id, &-&psi(ctx, k));
            let u = unipotent(ctx, k, Some(&sigma(ctx, k)), None);
            let l = unipotent(ctx, k, None, Some(&-&tau(ctx, k)));
            let d1 = diag2(&id, &j_matrix(ctx, n - 1));
            &(&(&d2 * &u) * &l) * &d1
        }
        1 => {
            let prev = e_inverse(ctx, n - 1);
            &diag2(&id, &-&psi(ctx, k)) * &diag2(&prev, &prev)
        }
        2 => {
            let d2 = diag2(&id, &sigma(ctx, k));
            let u = unipotent(ctx, k, Some(&-&psi(ctx, k)), None);
            let l = unipotent(ctx, k, None, Some(&-&tau(ctx, k)));
            let d1 = diag2(&id, &j_matrix(ctx, n - 1));
            &(&(&d2 * &u) * &l) * &d1
        }
        _ => {
            let prev = e_inverse(ctx, n - 1);
            &diag2(&id, &sigma(ctx, k)) * &diag2(&prev, &prev)
        }
    }
}

/// The structure constants at level `n >= 2`, all of size `2^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructConsts {
    pub n: usize,
    pub j: RingMat,
    pub e: RingMat,
    pub e_inv: RingMat,
    pub sigma: RingMat,
    pub psi: RingMat,
    pub tau: RingMat,
}

impl StructConsts {
    pub fn new(ctx: RingCtx, n: usize) -> Self {
        assert!(n >= 2, "structure constants need n >= 2");
        let m = 1 << (n - 1);
        StructConsts {
            n,
            j: j_matrix(ctx, n),
            e: e_matrix(ctx, n),
            e_inv: e_inverse(ctx, n),
            sigma: sigma(ctx, m),
            psi: psi(ctx, m),
            tau: tau(ctx, m),
        }
    }

    /// `J_n^{-1} = (-1)^{n(n-1)/2} J_n`.
    pub fn j_inverse_sign(&self) -> i64 {
        if (self.n * (self.n - 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingCtx {
        RingCtx::Rational
    }

    #[test]
    fn j2_and_j3() {
        let j2 = RingMat::from_ints(q(), &[vec![0, 1], vec![-1, 0]]);
        assert_eq!(j_matrix(q(), 2), j2);
        let z = RingMat::zeros(q(), 2, 2);
        assert_eq!(j_matrix(q(), 3), RingMat::block2(&j2, &z, &z, &-&j2).unwrap());
    }

    #[test]
    fn e3_layout() {
        let i2 = RingMat::identity(q(), 2);
        let z = RingMat::zeros(q(), 2, 2);
        assert_eq!(e_matrix(q(), 3), RingMat::block2(&i2, &z, &z, &sigma(q(), 2)).unwrap());
    }

    #[test]
    fn block_sums_build_the_forms() {
        let p2 = psi(q(), 2);
        let s2 = sigma(q(), 2);
        assert_eq!(p2.block_sum(&p2).unwrap(), psi(q(), 4));
        assert_eq!(s2.block_sum(&s2).unwrap(), sigma(q(), 4));
        assert_eq!(tau(q(), 2).block_sum(&tau(q(), 2)).unwrap(), tau(q(), 4));
    }

    #[test]
    fn e_inverse_is_inverse() {
        for n in 1..=8 {
            let p = &e_matrix(q(), n) * &e_inverse(q(), n);
            assert!(p.is_identity(), "E_{n} E_{n}^-1 != I");
        }
    }

    #[test]
    fn j_laws() {
        for n in 1..=8 {
            let c = StructConsts::new(q(), n.max(2));
            let jt = c.j.transpose();
            assert!((&c.j * &jt).is_identity());
            assert!((&jt * &c.j).is_identity());
            let inv = c.j.scale(&q().int(c.j_inverse_sign()));
            assert!((&c.j * &inv).is_identity());
        }
    }
}
