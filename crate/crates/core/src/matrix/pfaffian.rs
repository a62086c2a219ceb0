//! Pfaffians of alternating matrices, normalized so that `Pf([[0, 1], [-1, 0]]) = 1`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{MatrixError, RingMat};
use crate::ring::{Rational, RingElem};

impl RingMat {
    fn require_alternating(&self) -> Result<usize, MatrixError> {
        let n = self.require_square()?;
        if n % 2 == 1 {
            return Err(MatrixError::OddSize(n));
        }
        if !self.is_alternating() {
            return Err(MatrixError::NotAlternating);
        }
        Ok(n)
    }

    /// Pfaffian. Constant matrices use congruence elimination over Q;
    /// symbolic ones the first-row expansion.
    pub fn pfaffian(&self) -> Result<RingElem, MatrixError> {
        self.require_alternating()?;
        if self.is_constant() {
            let a = self.to_rationals()?;
            return Ok(self.ctx.rational(pfaffian_elimination(a)));
        }
        pfaffian_expansion(self)
    }
}

/// `Pf(A) = sum_{j >= 2} (-1)^j a_{1j} Pf(A without rows/cols 1, j)`, with
/// sub-Pfaffians shared between branches. Sizes up to 64.
pub fn pfaffian_expansion(a: &RingMat) -> Result<RingElem, MatrixError> {
    let n = a.require_alternating()?;
    assert!(n <= 64, "expansion supports at most 64 rows");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, RingElem> = HashMap::new();
    Ok(expand(a, full, &mut memo))
}

fn expand(a: &RingMat, mask: u64, memo: &mut HashMap<u64, RingElem>) -> RingElem {
    if mask == 0 {
        return a.ctx().one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = a.ctx().zero();
    // position of j within the current index set, 1-based; the first index is position 1
    let mut pos = 1;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        pos += 1;
        let e = a.get(first, j);
        if e.is_zero() {
            continue;
        }
        let sub = expand(a, rest & !(1u64 << j), memo);
        let term = e * &sub;
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Pfaffian over Q by pivoting on `a[k][k+1]` and clearing the rest of rows
/// `k, k+1` with unipotent congruences, which leave the Pfaffian unchanged.
fn pfaffian_elimination(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut pf = Rational::one();
    let mut k = 0;
    while k < n {
        let Some(piv) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Rational::zero();
        };
        if piv != k + 1 {
            // simultaneous row/column swap flips the sign
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
            pf = -pf;
        }
        let p = a[k][k + 1].clone();
        pf *= &p;
        for i in k + 2..n {
            // row/col i += c * row/col (k+1) clears a[k][i]
            let c = -(&a[k][i] / &p);
            if !c.is_zero() {
                add_congruence(&mut a, i, k + 1, &c);
            }
            // row/col i += d * row/col k clears a[k+1][i], since a[k+1][k] = -p
            let d = &a[k + 1][i] / &p;
            if !d.is_zero() {
                add_congruence(&mut a, i, k, &d);
            }
        }
        k += 2;
    }
    pf
}

/// Row `dst += c * row src`, then column `dst += c * column src`.
fn add_congruence(a: &mut [Vec<Rational>], dst: usize, src: usize, c: &Rational) {
    let src_row = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&src_row) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
    for row in a.iter_mut() {
        let y = row[src].clone();
        if !y.is_zero() {
            row[dst] += c * y;
        }
    }
}
