//! Determinants, adjugates and inverses.
//!
//! Over symbolic rings everything goes through Berkowitz's characteristic
//! polynomial, which needs only ring additions and multiplications. Matrices
//! whose entries are all constants are handled by Gaussian elimination over Q.

use num_traits::{One, Zero};

use super::{MatrixError, RingMat};
use crate::ring::{Rational, RingCtx, RingElem};

impl RingMat {
    /// Coefficients `[1, c_1, ..., c_n]` of `det(t I - A)`, highest degree first.
    pub fn charpoly(&self) -> Result<Vec<RingElem>, MatrixError> {
        let n = self.require_square()?;
        let ctx = self.ctx;
        if n == 0 {
            return Ok(vec![ctx.one()]);
        }
        let mut p = vec![ctx.one(), -self.get(n - 1, n - 1)];
        for k in (0..n - 1).rev() {
            let m = n - k;
            // A[k.., k..] = [[a, r], [c, sub]] with sub = A[k+1.., k+1..]
            let r: Vec<&RingElem> = (k + 1..n).map(|j| self.get(k, j)).collect();
            let mut w: Vec<RingElem> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();
            let mut v = Vec::with_capacity(m + 1);
            v.push(ctx.one());
            v.push(-self.get(k, k));
            for j in 0..m - 1 {
                let rw = dot_ref(ctx, &r, &w);
                v.push(-rw);
                if j + 1 < m - 1 {
                    w = (k + 1..n)
                        .map(|i| {
                            let row: Vec<&RingElem> = (k + 1..n).map(|l| self.get(i, l)).collect();
                            dot_ref(ctx, &row, &w)
                        })
                        .collect();
                }
            }
            // Toeplitz product: new_p[i] = sum_j v[i - j] * p[j]
            let mut next = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let mut acc = crate::ring::Poly::zero(ctx.nvars());
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    let vij = &v[i - j];
                    if vij.is_zero() || pj.is_zero() {
                        continue;
                    }
                    acc = acc.add(&vij.poly().mul(pj.poly()));
                }
                next.push(ctx.normal_form(acc));
            }
            p = next;
        }
        Ok(p)
    }

    /// Determinant via the characteristic polynomial; valid over any
    /// commutative ring.
    pub fn det_division_free(&self) -> Result<RingElem, MatrixError> {
        let n = self.require_square()?;
        let p = self.charpoly()?;
        let c = p[n].clone();
        Ok(if n % 2 == 0 { c } else { -c })
    }

    /// Determinant of a matrix of constants by Gaussian elimination over Q.
    pub fn det_gaussian(&self) -> Result<RingElem, MatrixError> {
        let n = self.require_square()?;
        let mut a = self.to_rationals()?;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(self.ctx.zero());
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] / &p;
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(self.ctx.rational(det))
    }

    /// Elimination for constant matrices, the division-free route otherwise.
    pub fn det(&self) -> Result<RingElem, MatrixError> {
        if self.is_constant() {
            self.det_gaussian()
        } else {
            self.det_division_free()
        }
    }

    /// `adj(A)` from Cayley-Hamilton: `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> Result<RingMat, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(self.clone());
        }
        let p = self.charpoly()?;
        // q = A^{n-1} + p_1 A^{n-2} + ... + p_{n-1} I
        let mut q = RingMat::identity(self.ctx, n);
        for coeff in p.iter().take(n).skip(1) {
            q = self.try_matmul(&q)?.try_add(&RingMat::scalar(self.ctx, n, coeff))?;
        }
        Ok(if n % 2 == 1 { q } else { -&q })
    }

    /// Exact inverse; the determinant must be a nonzero constant.
    pub fn inverse(&self) -> Result<RingMat, MatrixError> {
        let n = self.require_square()?;
        if self.is_constant() {
            return self.inverse_gauss_jordan(n);
        }
        let det = self.det_division_free()?;
        let inv = det.try_inverse().map_err(|_| MatrixError::NotInvertible(det.to_string()))?;
        Ok(self.adjugate()?.scale(&inv))
    }

    fn inverse_gauss_jordan(&self, n: usize) -> Result<RingMat, MatrixError> {
        let a = self.to_rationals()?;
        let mut aug: Vec<Vec<Rational>> = a
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| MatrixError::NotInvertible("0".into()))?;
            aug.swap(piv, col);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x /= &p;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let inv: Vec<Vec<Rational>> = aug.into_iter().map(|row| row[n..].to_vec()).collect();
        Ok(RingMat::from_rationals(self.ctx, &inv))
    }
}

fn dot_ref(ctx: RingCtx, a: &[&RingElem], b: &[RingElem]) -> RingElem {
    let mut acc = crate::ring::Poly::zero(ctx.nvars());
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.poly().mul(y.poly()));
    }
    ctx.normal_form(acc)
}

/// A basis of `{v : A v = 0}` for a rational matrix given by rows, read off
/// the reduced row echelon form. Basis vectors have a 1 in their free column.
pub fn rational_nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let p = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, RationalSampler};

    fn q() -> RingCtx {
        RingCtx::Rational
    }

    #[test]
    fn det_identity_is_one() {
        assert!(RingMat::identity(q(), 4).det_division_free().unwrap().is_one());
        assert!(RingMat::identity(RingCtx::Quadric(2), 4).det().unwrap().is_one());
    }

    #[test]
    fn det_two_by_two_symbolic() {
        let c = RingCtx::Poly(2);
        let m = RingMat::from_rows(c, vec![vec![c.x(0), c.y(0)], vec![c.x(1), c.y(1)]]).unwrap();
        assert_eq!(m.det_division_free().unwrap(), c.x(0) * c.y(1) - c.y(0) * c.x(1));
    }

    #[test]
    fn non_square_rejected() {
        let m = RingMat::zeros(q(), 2, 3);
        assert!(matches!(m.det_division_free(), Err(MatrixError::NotSquare(2, 3))));
        assert!(matches!(m.pfaffian(), Err(MatrixError::NotSquare(2, 3))));
    }

    #[test]
    fn elimination_agrees_with_berkowitz() {
        let mut s = RationalSampler::new(3);
        for size in 1..7 {
            for _ in 0..5 {
                let m = RingMat::from_fn(q(), size, size, |_, _| q().rational(s.rational()));
                assert_eq!(m.det_gaussian().unwrap(), m.det_division_free().unwrap());
            }
        }
    }

    #[test]
    fn singular_has_zero_det() {
        let m = RingMat::from_ints(q(), &[vec![1, 2], vec![2, 4]]);
        assert!(m.det().unwrap().is_zero());
        assert!(m.inverse().is_err());
    }

    #[test]
    fn adjugate_identity() {
        let c = RingCtx::Poly(2);
        let m = RingMat::from_fn(c, 3, 3, |i, j| c.x((i + j) % 2) * c.int(i as i64 + 1) + c.y(j % 2));
        let det = m.det_division_free().unwrap();
        let adj = m.adjugate().unwrap();
        assert_eq!(&m * &adj, RingMat::scalar(c, 3, &det));
        assert_eq!(&adj * &m, RingMat::scalar(c, 3, &det));
    }

    #[test]
    fn unipotent_inverse_over_quadric() {
        let c = RingCtx::Quadric(2);
        let mut m = RingMat::identity(c, 3);
        m.set(0, 2, c.x(0) * c.y(1));
        m.set(1, 0, c.y(0));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn non_unit_det_not_invertible() {
        let c = RingCtx::Poly(1);
        let m = RingMat::scalar(c, 2, &c.x(0));
        assert!(matches!(m.inverse(), Err(MatrixError::NotInvertible(_))));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![vec![rat_int(1), rat_int(2), rat_int(3)], vec![rat_int(2), rat_int(4), rat_int(6)]];
        let ns = rational_nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in &rows {
                let s: Rational = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }
}
