//! Fixed-point moment data for a product `M1 x ... x Mm` with the
//! diagonal circle action.
//!
//! Each factor contributes a strictly decreasing list of moment values.
//! A fixed point of the product is an index tuple `J = (j1, ..., jm)`
//! (1-based), its moment value is the sum of the chosen values, and it is
//! long or short according to the sign of that sum minus the threshold.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("factor {factor} has no fixed-point values")]
    EmptyFactor { factor: usize },
    #[error("values of factor {factor} are not strictly decreasing")]
    NonDecreasingValues { factor: usize },
    #[error("threshold is attained at fixed point {index}: moment value {value}")]
    SingularValue { index: FixedPointIndex, value: String },
    #[error("sphere radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("duplicate weight {0}")]
    DuplicateWeight(String),
    #[error("a system needs at least one factor")]
    NoFactors,
    #[error("index {index} out of range for this system")]
    IndexOutOfRange { index: FixedPointIndex },
}

/// One factor `M_i`: a name and its moment values, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    name: String,
    values: Vec<Rational>,
}

impl Factor {
    pub fn new(name: impl Into<String>, values: Vec<Rational>) -> Result<Self, ModelError> {
        Self::validated(name.into(), values, 1)
    }

    fn validated(name: String, values: Vec<Rational>, position: usize) -> Result<Self, ModelError> {
        if values.is_empty() {
            return Err(ModelError::EmptyFactor { factor: position });
        }
        if values.windows(2).any(|w| w[0] <= w[1]) {
            return Err(ModelError::NonDecreasingValues { factor: position });
        }
        Ok(Factor { name, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The radius, when the factor has the two values `(r, -r)`.
    pub fn sphere_radius(&self) -> Option<&Rational> {
        match self.values.as_slice() {
            [a, b] if a.is_positive() && *b == -a.clone() => Some(a),
            _ => None,
        }
    }
}

/// A 2-sphere of the given radius, rotated about its axis: values `(r, -r)`.
pub fn preset_sphere(radius: Rational) -> Result<Factor, ModelError> {
    if !radius.is_positive() {
        return Err(ModelError::NonPositiveRadius(format_rational(&radius)));
    }
    let neg = -radius.clone();
    Ok(Factor { name: format!("S2({})", format_rational(&radius)), values: vec![radius, neg] })
}

/// Projective space with a linear circle action; the fixed-point values are
/// the weights, stored in decreasing order.
pub fn preset_projective(weights: Vec<Rational>) -> Result<Factor, ModelError> {
    if weights.is_empty() {
        return Err(ModelError::EmptyFactor { factor: 1 });
    }
    let mut values = weights;
    values.sort_by(|a, b| b.cmp(a));
    if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
        return Err(ModelError::DuplicateWeight(format_rational(&w[0])));
    }
    let name = format!("CP{}", values.len() - 1);
    Ok(Factor { name, values })
}

/// 1-based index tuple `(j1, ..., jm)` naming a fixed point of the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedPointIndex(pub Vec<usize>);

impl FixedPointIndex {
    pub fn new(indices: Vec<usize>) -> Self {
        FixedPointIndex(indices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for FixedPointIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str(")")
    }
}

/// Long/short partition of all fixed points. Both lists are sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub long: Vec<FixedPointIndex>,
    pub short: Vec<FixedPointIndex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Fixed points with moment value above the threshold.
    Plus,
    /// Fixed points with moment value below the threshold.
    Minus,
}

impl Side {
    pub fn label(&self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }

    pub fn sign(&self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }

    pub fn opposite(&self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

impl Classification {
    pub fn side(&self, side: Side) -> &[FixedPointIndex] {
        match side {
            Side::Plus => &self.long,
            Side::Minus => &self.short,
        }
    }
}

/// Validated product system with threshold `c` a regular value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSystem {
    factors: Vec<Factor>,
    threshold: Rational,
}

/// Validates factors and checks that no fixed point has moment value `c`.
pub fn build_system(factors: Vec<Factor>, threshold: Rational) -> Result<MomentSystem, ModelError> {
    if factors.is_empty() {
        return Err(ModelError::NoFactors);
    }
    let factors = factors
        .into_iter()
        .enumerate()
        .map(|(i, f)| Factor::validated(f.name, f.values, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    let sys = MomentSystem { factors, threshold };
    for index in sys.fixed_points() {
        let value = sys.mu_unchecked(&index);
        if value == sys.threshold {
            return Err(ModelError::SingularValue { index, value: format_rational(&value) });
        }
    }
    Ok(sys)
}

impl MomentSystem {
    pub fn new(factors: Vec<Factor>, threshold: Rational) -> Result<Self, ModelError> {
        build_system(factors, threshold)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Number of factors `m`, which is also the number of x-variables.
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    /// `theta_{ij}` with both indices 1-based.
    pub fn value(&self, factor: usize, index: usize) -> &Rational {
        &self.factors[factor - 1].values[index - 1]
    }

    pub fn fixed_point_count(&self) -> usize {
        self.factors.iter().map(|f| f.len()).product()
    }

    /// All index tuples in lexicographic order.
    pub fn fixed_points(&self) -> impl Iterator<Item = FixedPointIndex> + '_ {
        let sizes: Vec<usize> = self.factors.iter().map(|f| f.len()).collect();
        let total = self.fixed_point_count();
        (0..total).map(move |mut k| {
            let mut idx = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                idx[i] = k % sizes[i] + 1;
                k /= sizes[i];
            }
            FixedPointIndex(idx)
        })
    }

    fn in_range(&self, index: &FixedPointIndex) -> bool {
        index.0.len() == self.factors.len() && index.0.iter().zip(&self.factors).all(|(&j, f)| j >= 1 && j <= f.len())
    }

    fn mu_unchecked(&self, index: &FixedPointIndex) -> Rational {
        index.0.iter().zip(&self.factors).fold(Rational::zero(), |acc, (&j, f)| acc + &f.values[j - 1])
    }

    /// Moment value `sum_i theta_{i, J_i}` of the fixed point `J`.
    pub fn mu_value(&self, index: &FixedPointIndex) -> Result<Rational, ModelError> {
        if !self.in_range(index) {
            return Err(ModelError::IndexOutOfRange { index: index.clone() });
        }
        Ok(self.mu_unchecked(index))
    }

    /// Restriction point `(theta_{1 J_1}, ..., theta_{m J_m})`: the values
    /// substituted for `x_i / t` at the fixed point.
    pub fn restriction_point(&self, index: &FixedPointIndex) -> Vec<Rational> {
        index.0.iter().zip(&self.factors).map(|(&j, f)| f.values[j - 1].clone()).collect()
    }

    pub fn is_long(&self, index: &FixedPointIndex) -> bool {
        self.mu_unchecked(index) > self.threshold
    }

    pub fn classify(&self) -> Classification {
        let (long, short) = self.fixed_points().partition(|j| self.is_long(j));
        Classification { long, short }
    }

    pub fn side_points(&self, side: Side) -> Vec<FixedPointIndex> {
        let want_long = side == Side::Plus;
        self.fixed_points().filter(|j| self.is_long(j) == want_long).collect()
    }

    /// True when every factor is a sphere `(r, -r)`.
    pub fn is_sphere_system(&self) -> bool {
        self.factors.iter().all(|f| f.sphere_radius().is_some())
    }

    pub fn sphere_radii(&self) -> Option<Vec<Rational>> {
        self.factors.iter().map(|f| f.sphere_radius().cloned()).collect()
    }
}

pub fn classify(sys: &MomentSystem) -> Classification {
    sys.classify()
}

pub fn mu_value(sys: &MomentSystem, index: &FixedPointIndex) -> Result<Rational, ModelError> {
    sys.mu_value(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn spheres(radii: &[i64]) -> Vec<Factor> {
        radii.iter().map(|&r| preset_sphere(rat(r)).unwrap()).collect()
    }

    fn idx(v: &[usize]) -> FixedPointIndex {
        FixedPointIndex(v.to_vec())
    }

    #[test]
    fn builds_regular_system() {
        let sys = build_system(spheres(&[1, 2]), rat(0)).unwrap();
        let mut mus: Vec<Rational> = sys.fixed_points().map(|j| sys.mu_value(&j).unwrap()).collect();
        mus.sort();
        assert_eq!(mus, vec![rat(-3), rat(-1), rat(1), rat(3)]);
    }

    #[test]
    fn rejects_singular_threshold() {
        let err = build_system(spheres(&[1, 1]), rat(0)).unwrap_err();
        assert_eq!(err, ModelError::SingularValue { index: idx(&[1, 2]), value: "0".into() });
    }

    #[test]
    fn rejects_increasing_values() {
        let err = Factor::new("bad", vec![rat(3), rat(5)]).unwrap_err();
        assert_eq!(err, ModelError::NonDecreasingValues { factor: 1 });
        let ok = Factor::new("ok", vec![rat(1)]).unwrap();
        let err =
            build_system(vec![ok, Factor { name: "b".into(), values: vec![rat(1), rat(1)] }], rat(5)).unwrap_err();
        assert_eq!(err, ModelError::NonDecreasingValues { factor: 2 });
        assert_eq!(build_system(vec![], rat(0)).unwrap_err(), ModelError::NoFactors);
    }

    #[test]
    fn mu_values() {
        let sys = build_system(spheres(&[2, 3, 4]), rat(0)).unwrap();
        assert_eq!(sys.mu_value(&idx(&[1, 1, 2])).unwrap(), rat(1));
        assert_eq!(sys.mu_value(&idx(&[2, 2, 2])).unwrap(), rat(-9));
        assert!(sys.mu_value(&idx(&[3, 1, 1])).is_err());
        assert!(sys.mu_value(&idx(&[1, 1])).is_err());
        let single = build_system(spheres(&[1]), rat(0)).unwrap();
        assert_eq!(single.mu_value(&idx(&[1])).unwrap(), rat(1));
    }

    #[test]
    fn classify_two_spheres() {
        let sys = build_system(spheres(&[1, 2]), rat(0)).unwrap();
        let c = sys.classify();
        assert_eq!(c.long, vec![idx(&[1, 1]), idx(&[2, 1])]);
        assert_eq!(c.short, vec![idx(&[1, 2]), idx(&[2, 2])]);
    }

    #[test]
    fn classify_three_spheres_by_plus_count() {
        let sys = build_system(spheres(&[2, 3, 4]), rat(0)).unwrap();
        let c = sys.classify();
        for j in &c.long {
            assert!(j.0.iter().filter(|&&k| k == 1).count() >= 2, "{j}");
        }
        assert_eq!(c.long.len(), 4);
        assert_eq!(c.short.len(), 4);
    }

    #[test]
    fn presets() {
        assert_eq!(preset_sphere(rat(2)).unwrap().values(), &[rat(2), rat(-2)]);
        assert_eq!(preset_sphere(ratio(1, 2)).unwrap().values(), &[ratio(1, 2), ratio(-1, 2)]);
        assert!(preset_sphere(rat(0)).is_err());
        let p = preset_projective(vec![rat(-2), rat(3), rat(1)]).unwrap();
        assert_eq!(p.values(), &[rat(3), rat(1), rat(-2)]);
        assert_eq!(preset_projective(vec![rat(1), rat(-1)]).unwrap().values(), &[rat(1), rat(-1)]);
        assert_eq!(preset_projective(vec![rat(1), rat(1)]).unwrap_err(), ModelError::DuplicateWeight("1".into()));
    }

    #[test]
    fn single_projective_line() {
        let sys = build_system(vec![preset_projective(vec![rat(1), rat(-1)]).unwrap()], rat(0)).unwrap();
        let c = sys.classify();
        assert_eq!(c.long, vec![idx(&[1])]);
        assert_eq!(c.short, vec![idx(&[2])]);
    }
}
