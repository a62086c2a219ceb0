//! Dense matrices over a [`RingCtx`].

mod det;
mod pfaffian;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{EvalPoint, Rational, RingCtx, RingElem, RingError};

pub use det::rational_nullspace;
pub use pfaffian::pfaffian_expansion;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix has odd size {0}")]
    OddSize(usize),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("matrix is not invertible over its ring: determinant {0}")]
    NotInvertible(String),
    #[error("matrix entries are not all constants")]
    NotConstant,
    #[error("ragged rows in matrix literal")]
    Ragged,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMat {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl RingMat {
    pub fn zeros(ctx: RingCtx, rows: usize, cols: usize) -> Self {
        RingMat { ctx, rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: RingCtx, n: usize) -> Self {
        Self::scalar(ctx, n, &ctx.one())
    }

    /// `c * I_n`.
    pub fn scalar(ctx: RingCtx, n: usize, c: &RingElem) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn<F>(ctx: RingCtx, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> RingElem,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.ctx(), ctx);
                data.push(e);
            }
        }
        RingMat { ctx, rows, cols, data }
    }

    pub fn from_rows(ctx: RingCtx, rows: Vec<Vec<RingElem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Ragged);
            }
            for e in row {
                if e.ctx() != ctx {
                    return Err(RingError::CtxMismatch { left: ctx, right: e.ctx() }.into());
                }
                data.push(e);
            }
        }
        Ok(RingMat { ctx, rows: r, cols: c, data })
    }

    pub fn from_ints(ctx: RingCtx, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(ctx, r, c, |i, j| ctx.int(rows[i][j]))
    }

    pub fn from_rationals(ctx: RingCtx, rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(ctx, r, c, |i, j| ctx.rational(rows[i][j].clone()))
    }

    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElem) {
        assert_eq!(e.ctx(), self.ctx, "entry ctx differs from matrix ctx");
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// True when every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.data.iter().all(|e| e.as_rational().is_some())
    }

    pub fn transpose(&self) -> RingMat {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F>(&self, f: F) -> RingMat
    where
        F: FnMut(&RingElem) -> RingElem,
    {
        RingMat { ctx: self.ctx, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn same_ctx(&self, other: &RingMat) -> Result<(), MatrixError> {
        if self.ctx != other.ctx {
            return Err(RingError::CtxMismatch { left: self.ctx, right: other.ctx }.into());
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingMat) -> Result<RingMat, MatrixError> {
        self.same_ctx(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::Shape { op: "add", left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(RingMat { ctx: self.ctx, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &RingMat) -> Result<RingMat, MatrixError> {
        self.same_ctx(other)?;
        if self.shape() != other.shape() {
            return Err(MatrixError::Shape { op: "sub", left: self.shape(), right: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(RingMat { ctx: self.ctx, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_matmul(&self, other: &RingMat) -> Result<RingMat, MatrixError> {
        self.same_ctx(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape { op: "mul", left: self.shape(), right: other.shape() });
        }
        let nv = self.ctx.nvars();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        if nv == 0 {
            // constants: accumulate coefficients directly
            let a = self.to_rationals().expect("constant ring");
            let bt = other.transpose().to_rationals().expect("constant ring");
            for row in &a {
                for col in &bt {
                    let mut acc = Rational::zero();
                    for (x, y) in row.iter().zip(col) {
                        if !x.is_zero() && !y.is_zero() {
                            acc += x * y;
                        }
                    }
                    data.push(self.ctx.rational(acc));
                }
            }
            return Ok(RingMat { ctx: self.ctx, rows: self.rows, cols: other.cols, data });
        }
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                // sum raw products, reduce once
                let mut acc = crate::ring::Poly::zero(nv);
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.poly().mul(b.poly()));
                }
                data.push(self.ctx.normal_form(acc));
            }
        }
        Ok(RingMat { ctx: self.ctx, rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[RingElem]) -> Result<Vec<RingElem>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Shape { op: "mul_vec", left: self.shape(), right: (v.len(), 1) });
        }
        (0..self.rows)
            .map(|i| crate::ring::dot(self.row(i), v).map_err(MatrixError::from))
            .collect()
    }

    pub fn scale(&self, c: &RingElem) -> RingMat {
        self.map(|e| e * c)
    }

    /// Assembles a matrix from a grid of blocks. Blocks in a block-row must
    /// share a height, blocks in a block-column must share a width.
    pub fn block(blocks: &[Vec<RingMat>]) -> Result<RingMat, MatrixError> {
        let first = blocks.first().and_then(|r| r.first()).ok_or(MatrixError::Ragged)?;
        let ctx = first.ctx;
        let ncols_blocks = blocks[0].len();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let heights: Vec<usize> = blocks.iter().map(|r| r[0].rows).collect();
        for (bi, brow) in blocks.iter().enumerate() {
            if brow.len() != ncols_blocks {
                return Err(MatrixError::Ragged);
            }
            for (bj, b) in brow.iter().enumerate() {
                b.same_ctx(first)?;
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(MatrixError::Shape {
                        op: "block",
                        left: (heights[bi], widths[bj]),
                        right: b.shape(),
                    });
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = RingMat::zeros(ctx, rows, cols);
        let mut r0 = 0;
        for (bi, brow) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in brow.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &RingMat, b: &RingMat, c: &RingMat, d: &RingMat) -> Result<RingMat, MatrixError> {
        Self::block(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
    }

    /// The `nr x nc` submatrix starting at `(r0, c0)`.
    pub fn slice(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> RingMat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "slice out of bounds");
        Self::from_fn(self.ctx, nr, nc, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// The four equal quadrants of an even-sized square matrix.
    pub fn quadrants(&self) -> [RingMat; 4] {
        let h = self.rows / 2;
        let w = self.cols / 2;
        [self.slice(0, 0, h, w), self.slice(0, w, h, w), self.slice(h, 0, h, w), self.slice(h, w, h, w)]
    }

    /// `diag(self, other)`.
    pub fn block_sum(&self, other: &RingMat) -> Result<RingMat, MatrixError> {
        self.same_ctx(other)?;
        let mut out = RingMat::zeros(self.ctx, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Entrywise image under evaluation at a quadric point.
    pub fn eval_at(&self, point: &EvalPoint) -> Result<RingMat, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|e| e.eval_at(point).map(|v| RingCtx::Rational.rational(v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingMat { ctx: RingCtx::Rational, rows: self.rows, cols: self.cols, data })
    }

    /// Moves every entry to `ctx` (constants go anywhere).
    pub fn lift_to(&self, ctx: RingCtx) -> Result<RingMat, MatrixError> {
        let data = self.data.iter().map(|e| e.lift_to(ctx)).collect::<Result<Vec<_>, _>>()?;
        Ok(RingMat { ctx, rows: self.rows, cols: self.cols, data })
    }

    /// Constant entries as rationals.
    pub fn to_rationals(&self) -> Result<Vec<Vec<Rational>>, MatrixError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| e.as_rational().ok_or(MatrixError::NotConstant)).collect())
            .collect()
    }

    pub(crate) fn require_square(&self) -> Result<usize, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        Ok(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `A^t = -A` with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (i + 1..self.cols).all(|j| self.get(i, j) == &-self.get(j, i))
            })
    }

    pub fn classify_form(&self, class: &FormClass) -> Result<bool, MatrixError> {
        let n = self.require_square()?;
        match class {
            FormClass::Symmetric => Ok(self.is_symmetric()),
            FormClass::Alternating => Ok(self.is_alternating()),
            FormClass::OrthogonalWrt(f) | FormClass::SymplecticWrt(f) => {
                if f.shape() != (n, n) {
                    return Err(MatrixError::Shape { op: "classify_form", left: self.shape(), right: f.shape() });
                }
                if matches!(class, FormClass::SymplecticWrt(_)) && !f.is_alternating() {
                    return Ok(false);
                }
                let t = self.transpose().try_matmul(f)?.try_matmul(self)?;
                Ok(&t == f)
            }
        }
    }
}

/// Target of [`RingMat::classify_form`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormClass {
    Symmetric,
    Alternating,
    /// `A^t F A = F`.
    OrthogonalWrt(RingMat),
    /// `A^t F A = F` for an alternating `F`.
    SymplecticWrt(RingMat),
}

/// The polarized hyperbolic form `[[0, I_n], [I_n, 0]]` on `R^n + R^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    n: usize,
    matrix: RingMat,
}

impl GramForm {
    pub fn new(ctx: RingCtx, n: usize) -> Self {
        let i = RingMat::identity(ctx, n);
        let z = RingMat::zeros(ctx, n, n);
        let matrix = RingMat::block2(&z, &i, &i, &z).expect("conformable blocks");
        GramForm { n, matrix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RingMat {
        &self.matrix
    }

    /// `M^t G' M = G'`.
    pub fn preserved_by(&self, m: &RingMat) -> Result<bool, MatrixError> {
        m.classify_form(&FormClass::OrthogonalWrt(self.matrix.clone()))
    }
}

impl Add<&RingMat> for &RingMat {
    type Output = RingMat;
    fn add(self, rhs: &RingMat) -> RingMat {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&RingMat> for &RingMat {
    type Output = RingMat;
    fn sub(self, rhs: &RingMat) -> RingMat {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&RingMat> for &RingMat {
    type Output = RingMat;
    fn mul(self, rhs: &RingMat) -> RingMat {
        self.try_matmul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RingMat {
    type Output = RingMat;
    fn neg(self) -> RingMat {
        self.map(|e| -e)
    }
}

impl fmt::Display for RingMat {
    /// Aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                let cell = &cells[i * self.cols + j];
                write!(f, " {cell:>w$}", w = widths[j])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingCtx {
        RingCtx::Rational
    }

    #[test]
    fn identity_is_neutral() {
        let a = RingMat::from_ints(q(), &[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(&RingMat::identity(q(), 3) * &a, a);
        assert_eq!(&a * &RingMat::identity(q(), 3), a);
    }

    #[test]
    fn transpose_twice() {
        let c = RingCtx::Poly(2);
        let a = RingMat::from_fn(c, 2, 3, |i, j| c.x(i) * c.int(j as i64 + 1) + c.y(1));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn shape_errors() {
        let a = RingMat::zeros(q(), 2, 3);
        assert!(matches!(a.try_matmul(&a), Err(MatrixError::Shape { .. })));
        let b = RingMat::zeros(RingCtx::Poly(1), 3, 2);
        assert!(matches!(a.try_matmul(&b), Err(MatrixError::Ring(_))));
        assert!(matches!(
            RingMat::block2(&a, &a, &RingMat::zeros(q(), 3, 3), &a),
            Err(MatrixError::Shape { .. })
        ));
    }

    #[test]
    fn block_and_slice_round_trip() {
        let c = RingCtx::Quadric(2);
        let a = RingMat::from_fn(c, 2, 2, |i, j| c.x(i) + c.int(j as i64));
        let b = RingMat::from_fn(c, 2, 3, |i, j| c.y(i) * c.int((i + j) as i64));
        let d = RingMat::from_fn(c, 1, 2, |_, j| c.int(j as i64 - 4));
        let e = RingMat::from_fn(c, 1, 3, |_, _| c.x(1));
        let m = RingMat::block(&[vec![a.clone(), b.clone()], vec![d.clone(), e.clone()]]).unwrap();
        assert_eq!(m.shape(), (3, 5));
        assert_eq!(m.slice(0, 0, 2, 2), a);
        assert_eq!(m.slice(0, 2, 2, 3), b);
        assert_eq!(m.slice(2, 0, 1, 2), d);
        assert_eq!(m.slice(2, 2, 1, 3), e);
    }

    #[test]
    fn block_sum_is_associative() {
        let a = RingMat::from_ints(q(), &[vec![1, 2], vec![3, 4]]);
        let b = RingMat::from_ints(q(), &[vec![5]]);
        let c = RingMat::from_ints(q(), &[vec![0, -1], vec![1, 0]]);
        let left = a.block_sum(&b.block_sum(&c).unwrap()).unwrap();
        let right = a.block_sum(&b).unwrap().block_sum(&c).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn quadric_products_are_reduced() {
        let c = RingCtx::Quadric(2);
        let row = RingMat::from_rows(c, vec![vec![c.x(0), c.x(1)]]).unwrap();
        let col = RingMat::from_rows(c, vec![vec![c.y(0)], vec![c.y(1)]]).unwrap();
        assert!((&row * &col).get(0, 0).is_one());
    }

    #[test]
    fn classify_examples() {
        let sym = RingMat::from_ints(q(), &[vec![0, 1], vec![1, 0]]);
        let alt = RingMat::from_ints(q(), &[vec![0, 1], vec![-1, 0]]);
        assert!(sym.classify_form(&FormClass::Symmetric).unwrap());
        assert!(!sym.classify_form(&FormClass::Alternating).unwrap());
        assert!(alt.classify_form(&FormClass::Alternating).unwrap());
        let shear = RingMat::from_ints(q(), &[vec![1, 3], vec![0, 1]]);
        assert!(shear.classify_form(&FormClass::SymplecticWrt(alt.clone())).unwrap());
        assert!(!shear.classify_form(&FormClass::OrthogonalWrt(sym.clone())).unwrap());
        // F must be alternating for the symplectic class
        assert!(!shear.classify_form(&FormClass::SymplecticWrt(sym.clone())).unwrap());
        let big = RingMat::identity(q(), 3);
        assert!(big.classify_form(&FormClass::OrthogonalWrt(sym)).is_err());
    }

    #[test]
    fn gram_form_involutive() {
        let g = GramForm::new(q(), 3);
        assert!(g.matrix().is_symmetric());
        assert!((g.matrix() * g.matrix()).is_identity());
    }

    #[test]
    fn pretty_print_aligns() {
        let a = RingMat::from_ints(q(), &[vec![1, -10], vec![100, 0]]);
        assert_eq!(a.to_string(), "[   1 -10 ]\n[ 100   0 ]\n");
    }
}
