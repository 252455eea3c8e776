use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, is_unit_magnitude, rat};
use super::{AlgebraError, Monomial, Rational};
use crate::groebner::MonomialOrder;

/// Sparse polynomial in `Q[t, x1, ..., xm]`.
///
/// Terms are kept sorted descending in the default monomial order
/// (graded reverse lex, `x1 > ... > xm > t`) with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    var_count: usize,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring arithmetic with a structural check on the ambient ring.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, AlgebraError> {
    a.check_ring(b)?;
    Ok(match op {
        ArithOp::Add => a.merge(b, false),
        ArithOp::Sub => a.merge(b, true),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

fn default_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::GradedReverseLex.compare(a, b)
}

impl Polynomial {
    pub fn zero(var_count: usize) -> Self {
        Polynomial { var_count, terms: Vec::new() }
    }

    pub fn one(var_count: usize) -> Self {
        Self::constant(var_count, Rational::one())
    }

    pub fn constant(var_count: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(var_count), c)
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let var_count = mono.var_count();
        if c.is_zero() {
            return Self::zero(var_count);
        }
        Polynomial { var_count, terms: vec![(mono, c)] }
    }

    /// The variable `t`.
    pub fn t(var_count: usize) -> Self {
        Self::monomial(Monomial::t_power(var_count, 1), Rational::one())
    }

    /// The variable `x_i`, `i` in `1..=var_count`.
    pub fn var(var_count: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(var_count, i), Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms<I>(var_count: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.var_count(), var_count, "monomial from a different ring");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| default_cmp(&b.0, &a.0));
        Polynomial { var_count, terms }
    }

    /// Terms sorted descending in the default order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total algebraic degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// True when only `t` occurs.
    pub fn is_univariate_in_t(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.exponents()[1..].iter().all(|&e| e == 0))
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0)).map(|(m, c)| (m, c))
    }

    /// Terms sorted descending in `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v = self.terms.clone();
        if order != MonomialOrder::GradedReverseLex {
            v.sort_by(|a, b| order.compare(&b.0, &a.0));
        }
        v
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.iter().find(|(m, _)| m == mono).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var_count);
        }
        Polynomial { var_count: self.var_count, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Scales so the leading coefficient (default order) is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var_count);
        }
        // monomial orders are multiplicative, so sortedness is preserved
        Polynomial { var_count: self.var_count, terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var_count);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        poly_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        poly_arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        poly_arith(self, other, ArithOp::Mul)
    }

    fn check_ring(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var_count != other.var_count {
            return Err(AlgebraError::VarCountMismatch { left: self.var_count, right: other.var_count });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if subtract { -c } else { c.clone() }));
                }
                (Some((ma, _)), Some((mb, _))) => match default_cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), if subtract { -c } else { c.clone() }));
                    }
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if subtract { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        Polynomial { var_count: self.var_count, terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var_count);
        }
        let products =
            self.terms.iter().flat_map(|(ma, ca)| other.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb)));
        Self::from_terms(self.var_count, products)
    }

    /// Substitutes `x_i -> point[i-1] * t`; the result involves only `t`.
    pub fn evaluate_at_point(&self, point: &[Rational]) -> Result<Polynomial, AlgebraError> {
        if point.len() != self.var_count {
            return Err(AlgebraError::PointLengthMismatch { expected: self.var_count, found: point.len() });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponents();
            let mut coeff = c.clone();
            for (i, &k) in e[1..].iter().enumerate() {
                if k > 0 {
                    coeff *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            (Monomial::t_power(self.var_count, m.degree()), coeff)
        });
        Ok(Self::from_terms(self.var_count, terms))
    }

    /// Substitutes `x_i -> scales[i-1] * x_i`.
    pub fn scale_variables(&self, scales: &[Rational]) -> Polynomial {
        assert_eq!(scales.len(), self.var_count);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            for (i, &k) in m.exponents()[1..].iter().enumerate() {
                if k > 0 {
                    coeff *= num_traits::pow(scales[i].clone(), k as usize);
                }
            }
            (m.clone(), coeff)
        });
        Self::from_terms(self.var_count, terms)
    }

    /// Same polynomial viewed in a ring with `extra` more trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            var_count: self.var_count + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Drops trailing variables; panics if any of them occurs.
    pub(crate) fn restrict_vars(&self, var_count: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            assert!(m.exponents()[var_count + 1..].iter().all(|&e| e == 0), "cannot drop a variable that occurs");
            (m.truncate(var_count), c.clone())
        });
        Self::from_terms(var_count, terms)
    }

    pub(crate) fn from_sorted_unchecked(var_count: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut p = Polynomial { var_count, terms };
        p.terms.sort_by(|a, b| default_cmp(&b.0, &a.0));
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else if is_unit_magnitude(&mag) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings; see [`poly_arith`].
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                poly_arith(self, rhs, $op).expect("polynomials from different rings")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, ArithOp::Add);
forward_binop!(Sub, sub, ArithOp::Sub);
forward_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
