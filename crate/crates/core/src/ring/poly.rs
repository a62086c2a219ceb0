//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are interleaved as `x1, y1, x2, y2, ...` and monomials are
//! compared lexicographically on their exponent vectors, which makes
//! `x1 > y1 > x2 > y2 > ...` under pure lex. Terms are kept sorted from the
//! leading monomial down with no zero coefficients, so structural equality is
//! polynomial equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type Monomial = Vec<u32>;

/// Index of `x_{i+1}` in the interleaved variable order.
pub fn x_index(i: usize) -> usize {
    2 * i
}

/// Index of `y_{i+1}` in the interleaved variable order.
pub fn y_index(i: usize) -> usize {
    2 * i + 1
}

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut m = vec![0; nvars];
        m[index] = 1;
        Poly { nvars, terms: vec![(m, Rational::one())] }
    }

    pub fn monomial(coeff: Rational, exps: Monomial) -> Self {
        let nvars = exps.len();
        if coeff.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, coeff)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial length does not match variable count");
            accumulate(&mut acc, m, c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [(m, _)] => m.iter().all(|&e| e == 0),
            _ => false,
        }
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.iter().all(|&e| e == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            // descending order
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                accumulate(&mut acc, m, ca * cb);
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Multiplies by `c * X^exps`.
    pub fn mul_term(&self, exps: &[u32], c: &Rational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.iter().zip(exps).map(|(x, y)| x + y).collect(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Evaluates at a point given in interleaved variable order.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars, "point dimension mismatch");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Remainder under division by `x1*y1 + ... + xn*yn - 1`.
    ///
    /// The leading monomial of the relation is `x1*y1`, so every occurrence
    /// of `(x1*y1)^k` is replaced by `(1 - x2*y2 - ... - xn*yn)^k`. The result
    /// has no monomial divisible by `x1*y1`.
    pub fn quadric_normal_form(&self) -> Poly {
        assert!(self.nvars >= 2 && self.nvars.is_multiple_of(2), "quadric reduction needs variable pairs");
        if self.terms.iter().all(|(m, _)| m[0] == 0 || m[1] == 0) {
            return self.clone();
        }
        let n = self.nvars / 2;
        let mut one_minus_s = Poly::one(self.nvars);
        for i in 1..n {
            let mut m = vec![0; self.nvars];
            m[x_index(i)] = 1;
            m[y_index(i)] = 1;
            one_minus_s = one_minus_s.sub(&Poly::monomial(Rational::one(), m));
        }
        let mut powers = vec![Poly::one(self.nvars)];
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m[0].min(m[1]);
            if k == 0 {
                accumulate(&mut acc, m.clone(), c.clone());
                continue;
            }
            while powers.len() <= k as usize {
                let next = powers.last().unwrap().mul(&one_minus_s);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[0] -= k;
            rest[1] -= k;
            for (pm, pc) in powers[k as usize].terms() {
                let mono = rest.iter().zip(pm).map(|(x, y)| x + y).collect();
                accumulate(&mut acc, mono, c * pc);
            }
        }
        Self::from_map(self.nvars, acc)
    }

    pub(crate) fn write_with_names(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = if v % 2 == 0 { "x" } else { "y" };
                    if e == 1 {
                        format!("{name}{}", v / 2 + 1)
                    } else {
                        format!("{name}{}^{e}", v / 2 + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with_names(f)
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
        }
    }
}
