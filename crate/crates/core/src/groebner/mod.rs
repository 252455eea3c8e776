//! Gröbner bases over `Q` and the ideal operations built on them:
//! membership, intersection, equality, Hilbert functions and vanishing
//! ideals of finite point sets.

mod buchberger;
mod hilbert;
mod order;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{LinearForm, Polynomial, Rational};

pub use buchberger::s_polynomials_reduce_to_zero;
pub use order::MonomialOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generator is not homogeneous: {generator}")]
    NotHomogeneous { generator: String },
    #[error("vanishing ideal of an empty point set requested")]
    EmptyPointSet,
    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointLength { index: usize, expected: usize, found: usize },
}

/// Ideal of `Q[t, x1, ..., xm]` given by generators, with a write-once
/// cache of its reduced Gröbner basis in the default order.
#[derive(Clone, Debug)]
pub struct Ideal {
    var_count: usize,
    generators: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(var_count: usize, generators: Vec<Polynomial>) -> Self {
        for g in &generators {
            assert_eq!(g.var_count(), var_count, "generator from a different ring");
        }
        Ideal { var_count, generators, basis: OnceLock::new() }
    }

    pub fn zero(var_count: usize) -> Self {
        Self::new(var_count, Vec::new())
    }

    pub fn unit(var_count: usize) -> Self {
        Self::new(var_count, vec![Polynomial::one(var_count)])
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis in the default order (graded reverse lex),
    /// sorted by leading monomial descending. Cached after the first call.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.basis.get_or_init(|| self.compute_basis(MonomialOrder::default()))
    }

    /// Reduced Gröbner basis in an arbitrary order, sorted by leading
    /// monomial descending in that order.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Vec<Polynomial> {
        if order == MonomialOrder::default() {
            return self.groebner_basis().to_vec();
        }
        self.compute_basis(order)
    }

    fn compute_basis(&self, order: MonomialOrder) -> Vec<Polynomial> {
        buchberger::groebner(&self.generators, order)
            .into_iter()
            .map(|terms| Polynomial::from_sorted_unchecked(self.var_count, terms))
            .collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.var_count(), self.var_count, "polynomial from a different ring");
        let order = MonomialOrder::default();
        let basis: Vec<_> = self.groebner_basis().iter().map(|g| buchberger::sorted(g, order)).collect();
        let rem = buchberger::reduce(buchberger::sorted(p, order), &basis, order);
        Polynomial::from_sorted_unchecked(self.var_count, rem)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&Polynomial::one(self.var_count))
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    /// First generator of `other` outside `self`, if any.
    pub fn first_non_member<'a>(&self, other: &'a Ideal) -> Option<&'a Polynomial> {
        other.generators.iter().find(|g| !self.contains(g))
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        ideal_intersect(self, other)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.var_count, other.var_count);
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.var_count, gens)
    }

    /// Dimensions of the graded pieces of the quotient ring in algebraic
    /// degrees `0..=max_degree`. Requires homogeneous generators.
    pub fn hilbert_function(&self, max_degree: u32) -> Result<Vec<u64>, GroebnerError> {
        hilbert_function_in(self, max_degree, MonomialOrder::default())
    }
}

impl fmt::Display for Ideal {
    /// Bracketed list of generators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Vec<Polynomial> {
    ideal.groebner_basis_in(order)
}

pub fn normal_form(p: &Polynomial, ideal: &Ideal) -> Polynomial {
    ideal.normal_form(p)
}

/// Mutual containment of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> bool {
    assert_eq!(a.var_count, b.var_count, "ideals from different rings");
    a.contains_ideal(b) && b.contains_ideal(a)
}

/// `I ∩ J` by eliminating an auxiliary variable `w` from `w I + (1 - w) J`.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Ideal {
    assert_eq!(a.var_count, b.var_count, "ideals from different rings");
    let n = a.var_count;
    let w = Polynomial::var(n + 1, n + 1);
    let one_minus_w = &Polynomial::one(n + 1) - &w;
    let mut gens: Vec<Polynomial> = a.generators.iter().map(|g| &g.extend_vars(1) * &w).collect();
    gens.extend(b.generators.iter().map(|g| &g.extend_vars(1) * &one_minus_w));
    let order = MonomialOrder::EliminationBlock { block_size: 1 };
    let lifted = Ideal::new(n + 1, gens);
    let kept: Vec<Polynomial> = lifted
        .groebner_basis_in(order)
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(n + 1) == 0))
        .map(|g| g.restrict_vars(n).monic())
        .collect();
    Ideal::new(n, kept)
}

pub fn hilbert_function(ideal: &Ideal, max_degree: u32) -> Result<Vec<u64>, GroebnerError> {
    ideal.hilbert_function(max_degree)
}

/// Hilbert function computed from the leading terms of the basis in `order`.
pub fn hilbert_function_in(ideal: &Ideal, max_degree: u32, order: MonomialOrder) -> Result<Vec<u64>, GroebnerError> {
    if let Some(g) = ideal.generators.iter().find(|g| !g.is_homogeneous()) {
        return Err(GroebnerError::NotHomogeneous { generator: g.to_string() });
    }
    let leading: Vec<_> =
        ideal.groebner_basis_in(order).iter().filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone())).collect();
    Ok(hilbert::standard_monomial_counts(&leading, ideal.var_count + 1, max_degree))
}

/// Ideal of the point `x_i = point[i-1] * t`.
pub fn point_ideal(point: &[Rational]) -> Ideal {
    let n = point.len();
    let gens = point.iter().enumerate().map(|(i, v)| LinearForm::new(i + 1, v.clone()).to_polynomial(n)).collect();
    Ideal::new(n, gens)
}

/// Intersection of the point ideals, accumulated pairwise in the given order.
pub fn vanishing_ideal(points: &[Vec<Rational>]) -> Result<Ideal, GroebnerError> {
    let first = points.first().ok_or(GroebnerError::EmptyPointSet)?;
    let n = first.len();
    if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.len() != n) {
        return Err(GroebnerError::PointLength { index, expected: n, found: p.len() });
    }
    let mut acc = point_ideal(first);
    for p in &points[1..] {
        acc = ideal_intersect(&acc, &point_ideal(p));
    }
    Ok(acc)
}
