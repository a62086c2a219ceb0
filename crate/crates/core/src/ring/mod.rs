//! Coefficient rings: the rationals, free polynomial rings over the rationals
//! in variable pairs `(x_i, y_i)`, and the quadric quotients
//! `S_{2n-1} = Q[x, y] / (x1*y1 + ... + xn*yn - 1)`.
//!
//! Every [`RingElem`] is stored in canonical form, so `==` is ring equality.

mod poly;
mod sample;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::{rat_int, rational, x_index, y_index, Monomial, Poly, Rational};
pub use sample::{sample_quadric_point, RationalSampler, SAMPLE_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring context mismatch: {left} vs {right}")]
    CtxMismatch { left: RingCtx, right: RingCtx },
    #[error("polynomial has {found} variables, ring {ctx} expects {expected}")]
    VarCount { ctx: RingCtx, expected: usize, found: usize },
    #[error("evaluation point has {found} variable pairs, ring {ctx} expects {expected}")]
    DimensionMismatch { ctx: RingCtx, expected: usize, found: usize },
    #[error("point does not lie on the quadric: sum x_i*y_i = {0}")]
    NotOnQuadric(Rational),
    #[error("{0} is not a unit in {1}")]
    NotAUnit(String, RingCtx),
}

/// Which ring the elements live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum RingCtx {
    Rational,
    /// `Q[x1, y1, ..., xn, yn]`.
    Poly(usize),
    /// `Q[x1, y1, ..., xn, yn] / (sum x_i y_i - 1)`.
    Quadric(usize),
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingCtx::Rational => write!(f, "Q"),
            RingCtx::Poly(n) => write!(f, "Q[x1..x{n},y1..y{n}]"),
            RingCtx::Quadric(n) => write!(f, "S_{}", 2 * n - 1),
        }
    }
}

impl RingCtx {
    /// Number of variable pairs.
    pub fn pairs(&self) -> usize {
        match *self {
            RingCtx::Rational => 0,
            RingCtx::Poly(n) | RingCtx::Quadric(n) => n,
        }
    }

    pub fn nvars(&self) -> usize {
        2 * self.pairs()
    }

    pub fn zero(&self) -> RingElem {
        RingElem { ctx: *self, poly: Poly::zero(self.nvars()) }
    }

    pub fn one(&self) -> RingElem {
        RingElem { ctx: *self, poly: Poly::one(self.nvars()) }
    }

    pub fn int(&self, v: i64) -> RingElem {
        self.rational(rat_int(v))
    }

    pub fn rational(&self, v: Rational) -> RingElem {
        RingElem { ctx: *self, poly: Poly::constant(self.nvars(), v) }
    }

    /// `x_{i+1}`.
    pub fn x(&self, i: usize) -> RingElem {
        assert!(i < self.pairs(), "x{} does not exist in {self}", i + 1);
        self.normal_form(Poly::var(self.nvars(), x_index(i)))
    }

    /// `y_{i+1}`.
    pub fn y(&self, i: usize) -> RingElem {
        assert!(i < self.pairs(), "y{} does not exist in {self}", i + 1);
        self.normal_form(Poly::var(self.nvars(), y_index(i)))
    }

    /// The generic vectors `(x1..xn)` and `(y1..yn)`.
    pub fn generic_pair(&self) -> (Vec<RingElem>, Vec<RingElem>) {
        let n = self.pairs();
        ((0..n).map(|i| self.x(i)).collect(), (0..n).map(|i| self.y(i)).collect())
    }

    /// Canonical representative of `p` in this ring.
    pub fn normal_form(&self, p: Poly) -> RingElem {
        assert_eq!(p.nvars(), self.nvars(), "polynomial variable count does not match {self}");
        let poly = match self {
            RingCtx::Quadric(_) => p.quadric_normal_form(),
            _ => p,
        };
        RingElem { ctx: *self, poly }
    }

    /// Like [`RingCtx::normal_form`] but reports a variable-count mismatch.
    pub fn elem(&self, p: Poly) -> Result<RingElem, RingError> {
        if p.nvars() != self.nvars() {
            return Err(RingError::VarCount { ctx: *self, expected: self.nvars(), found: p.nvars() });
        }
        Ok(self.normal_form(p))
    }

    /// Relation `x1*y1 + ... + xn*yn - 1` as a raw polynomial.
    pub fn relation(&self) -> Option<Poly> {
        match *self {
            RingCtx::Quadric(n) => {
                let nv = 2 * n;
                let mut r = Poly::constant(nv, rat_int(-1));
                for i in 0..n {
                    r = r.add(&Poly::var(nv, x_index(i)).mul(&Poly::var(nv, y_index(i))));
                }
                Some(r)
            }
            _ => None,
        }
    }
}

/// Free-standing form of [`RingCtx::normal_form`].
pub fn normal_form(p: Poly, ctx: RingCtx) -> RingElem {
    ctx.normal_form(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ctx: RingCtx,
    poly: Poly,
}

impl RingElem {
    pub fn ctx(&self) -> RingCtx {
        self.ctx
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.constant_value().is_some_and(|c| c.is_one())
    }

    /// The rational value of a constant element.
    pub fn as_rational(&self) -> Option<Rational> {
        self.poly.constant_value()
    }

    fn check(&self, other: &RingElem) -> Result<(), RingError> {
        if self.ctx != other.ctx {
            return Err(RingError::CtxMismatch { left: self.ctx, right: other.ctx });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check(other)?;
        Ok(RingElem { ctx: self.ctx, poly: self.poly.add(&other.poly) })
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check(other)?;
        Ok(RingElem { ctx: self.ctx, poly: self.poly.sub(&other.poly) })
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.check(other)?;
        let prod = self.poly.mul(&other.poly);
        Ok(match self.ctx {
            RingCtx::Quadric(_) => RingElem { ctx: self.ctx, poly: prod.quadric_normal_form() },
            _ => RingElem { ctx: self.ctx, poly: prod },
        })
    }

    pub fn scale(&self, k: &Rational) -> RingElem {
        RingElem { ctx: self.ctx, poly: self.poly.scale(k) }
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut result = self.ctx.one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Multiplicative inverse, available only for nonzero constants.
    pub fn try_inverse(&self) -> Result<RingElem, RingError> {
        match self.as_rational() {
            Some(c) if !c.is_zero() => Ok(self.ctx.rational(c.recip())),
            _ => Err(RingError::NotAUnit(self.to_string(), self.ctx)),
        }
    }

    /// Image under the evaluation homomorphism at `point`.
    pub fn eval_at(&self, point: &EvalPoint) -> Result<Rational, RingError> {
        match self.ctx {
            RingCtx::Rational => Ok(self.poly.constant_value().expect("rational ctx holds constants")),
            RingCtx::Poly(n) | RingCtx::Quadric(n) => {
                if point.n() != n {
                    return Err(RingError::DimensionMismatch { ctx: self.ctx, expected: n, found: point.n() });
                }
                Ok(self.poly.eval(&point.interleaved()))
            }
        }
    }

    /// Same element viewed in another ring with the same variables (or a
    /// constant moved anywhere).
    pub fn lift_to(&self, ctx: RingCtx) -> Result<RingElem, RingError> {
        if let Some(c) = self.as_rational() {
            return Ok(ctx.rational(c));
        }
        if self.ctx.nvars() != ctx.nvars() {
            return Err(RingError::CtxMismatch { left: self.ctx, right: ctx });
        }
        Ok(ctx.normal_form(self.poly.clone()))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.write_with_names(f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { ctx: self.ctx, poly: self.poly.neg() }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// `op(a, b)`; `b` is ignored for negation.
pub fn ring_arith(op: ArithOp, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Neg => Ok(-a),
    }
}

/// `sum a_i * b_i`.
pub fn dot(a: &[RingElem], b: &[RingElem]) -> Result<RingElem, RingError> {
    let ctx = a.first().or(b.first()).map(|e| e.ctx()).unwrap_or(RingCtx::Rational);
    let mut acc = ctx.zero();
    for (ai, bi) in a.iter().zip(b) {
        acc = acc.try_add(&ai.try_mul(bi)?)?;
    }
    Ok(acc)
}

/// A rational point `(x1..xn, y1..yn)` on the quadric `sum x_i*y_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl EvalPoint {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, RingError> {
        if xs.len() != ys.len() {
            return Err(RingError::DimensionMismatch {
                ctx: RingCtx::Quadric(xs.len()),
                expected: xs.len(),
                found: ys.len(),
            });
        }
        let q: Rational = xs.iter().zip(&ys).map(|(a, b)| a * b).sum();
        if !q.is_one() {
            return Err(RingError::NotOnQuadric(q));
        }
        Ok(EvalPoint { xs, ys })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    /// Values in the variable order `x1, y1, x2, y2, ...`.
    pub fn interleaved(&self) -> Vec<Rational> {
        self.xs.iter().zip(&self.ys).flat_map(|(x, y)| [x.clone(), y.clone()]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> RingCtx {
        RingCtx::Quadric(2)
    }

    #[test]
    fn x1y1_reduces_by_relation() {
        let c = q2();
        let p = c.x(0) * c.y(0);
        assert_eq!(p, c.one() - c.x(1) * c.y(1));
        assert!(p.poly().terms().iter().all(|(m, _)| m[0] == 0 || m[1] == 0));
    }

    #[test]
    fn defining_relation_is_one() {
        let c = RingCtx::Quadric(3);
        let s = (0..3).fold(c.zero(), |acc, i| acc + c.x(i) * c.y(i));
        assert!(s.is_one());
    }

    #[test]
    fn square_of_x1y1() {
        // (1 - x2 y2)^2, as obtained from y1 := (1 - x2 y2)/x1 over the fraction field
        let c = q2();
        let nv = 4;
        let mut m = vec![0; nv];
        m[0] = 2;
        m[1] = 2;
        let reduced = c.normal_form(Poly::monomial(rat_int(1), m));
        let x2y2 = c.x(1) * c.y(1);
        let expected = c.one() - x2y2.scale(&rat_int(2)) + &x2y2 * &x2y2;
        assert_eq!(reduced, expected);
    }

    #[test]
    fn relation_normalizes_to_zero() {
        for n in 1..5 {
            let c = RingCtx::Quadric(n);
            assert!(c.normal_form(c.relation().unwrap()).is_zero());
        }
    }

    #[test]
    fn arith_examples() {
        let c = RingCtx::Quadric(3);
        let x = c.x(0);
        assert!(ring_arith(ArithOp::Add, &x, &-&x).unwrap().is_zero());
        let prod = ring_arith(ArithOp::Mul, &c.x(0), &c.y(0)).unwrap();
        assert_eq!(prod, c.one() - c.x(1) * c.y(1) - c.x(2) * c.y(2));
        let r = RingCtx::Rational;
        let half = r.rational(rational(1, 2));
        assert!(ring_arith(ArithOp::Mul, &r.int(2), &half).unwrap().is_one());
    }

    #[test]
    fn ctx_mismatch_is_an_error() {
        let a = RingCtx::Quadric(2).x(0);
        let b = RingCtx::Poly(2).x(0);
        assert!(matches!(a.try_add(&b), Err(RingError::CtxMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(RingError::CtxMismatch { .. })));
    }

    #[test]
    fn eval_examples() {
        let c = RingCtx::Quadric(2);
        let pt = EvalPoint::new(vec![rat_int(3), rat_int(1)], vec![rational(1, 3), rat_int(0)]).unwrap();
        assert_eq!(c.x(0).eval_at(&pt).unwrap(), rat_int(3));
        let s = c.x(0) * c.y(0) + c.x(1) * c.y(1);
        assert_eq!(s.eval_at(&pt).unwrap(), rat_int(1));
        let bad = EvalPoint::new(vec![rat_int(1)], vec![rat_int(1)]).unwrap();
        assert!(matches!(c.x(0).eval_at(&bad), Err(RingError::DimensionMismatch { .. })));
    }

    #[test]
    fn off_quadric_point_rejected() {
        assert!(matches!(
            EvalPoint::new(vec![rat_int(2)], vec![rat_int(1)]),
            Err(RingError::NotOnQuadric(_))
        ));
    }

    #[test]
    fn only_nonzero_constants_invert() {
        let c = RingCtx::Quadric(2);
        assert_eq!(c.int(4).try_inverse().unwrap(), c.rational(rational(1, 4)));
        assert!(c.zero().try_inverse().is_err());
        assert!(c.x(0).try_inverse().is_err());
    }
}
