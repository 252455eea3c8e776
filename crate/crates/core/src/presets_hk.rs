//! Closed-form generator families for products of 2-spheres and for
//! abelian polygon spaces.
//!
//! For radii `r_1..r_m` the fixed point `F_J` of `prod S^2_{r_j}` is indexed
//! by the subset `J` of factors sitting at their north pole, with moment
//! value `sum_{J} r_j - sum_{not J} r_j`. With `P_J = prod_{j in J}(x_j - r_j t)`
//! and `Q_J = prod_{j in J}(x_j + r_j t)`, the families
//!
//! * (i)   `(x_j - r_j t)(x_j + r_j t)` for every `j`,
//! * (ii)  `P_J` for every `J` meeting all long subsets,
//! * (iii) `Q_J` for every long `J`,
//!
//! generate the plus kernel ((i) with (ii)) and the minus kernel ((i) with
//! (iii)). A subset meets every subset that is long at `c` exactly when it
//! is long at `-c`, so at `c = 0` both (ii) and (iii) run over the long
//! subsets. The rescaled variables `u_j = x_j / r_j` turn these into the
//! polygon-space presentation.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, product_of_linear_forms, rat, LinearForm, Polynomial, Rational};
use crate::groebner::Ideal;
use crate::moment_model::{build_system, preset_sphere, ModelError, MomentSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("at least {needed} radii are required, got {found}")]
    TooFewRadii { needed: usize, found: usize },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("threshold {threshold} is attained by subset {subset}")]
    SingularThreshold { subset: String, threshold: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Subset of `{1..m}`.
pub type Subset = BTreeSet<usize>;

pub fn format_subset(s: &Subset) -> String {
    let inner: Vec<String> = s.iter().map(|j| j.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A family of subsets of `{1..ambient}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetFamily {
    pub ambient: usize,
    pub members: BTreeSet<Subset>,
}

impl SubsetFamily {
    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when every two members share an element.
    pub fn pairwise_intersecting(&self) -> bool {
        let v: Vec<&Subset> = self.members.iter().collect();
        v.iter().enumerate().all(|(a, s)| v[a..].iter().all(|t| !s.is_disjoint(t)))
    }
}

fn all_subsets(m: usize) -> impl Iterator<Item = Subset> {
    (0u64..1 << m).map(move |mask| (1..=m).filter(|j| mask >> (j - 1) & 1 == 1).collect())
}

fn subsets_of(set: &Subset) -> Vec<Subset> {
    let items: Vec<usize> = set.iter().copied().collect();
    (0u64..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &j)| j).collect())
        .collect()
}

/// `sum_{j in J} r_j - sum_{j not in J} r_j`
pub fn signed_sum(radii: &[Rational], subset: &Subset) -> Rational {
    radii
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (k, r)| if subset.contains(&(k + 1)) { acc + r } else { acc - r })
}

fn check_radii(radii: &[Rational], needed: usize) -> Result<(), PresetError> {
    if radii.len() < needed {
        return Err(PresetError::TooFewRadii { needed, found: radii.len() });
    }
    if let Some(r) = radii.iter().find(|r| !r.is_positive()) {
        return Err(PresetError::NonPositiveRadius(format_rational(r)));
    }
    Ok(())
}

/// Long and short subsets at the given threshold.
pub fn sphere_subsets(radii: &[Rational], threshold: &Rational) -> Result<(SubsetFamily, SubsetFamily), PresetError> {
    check_radii(radii, 1)?;
    let m = radii.len();
    let mut long = BTreeSet::new();
    let mut short = BTreeSet::new();
    for s in all_subsets(m) {
        let v = signed_sum(radii, &s);
        if &v == threshold {
            return Err(PresetError::SingularThreshold {
                subset: format_subset(&s),
                threshold: format_rational(threshold),
            });
        }
        if &v > threshold {
            long.insert(s);
        } else {
            short.insert(s);
        }
    }
    Ok((SubsetFamily { ambient: m, members: long }, SubsetFamily { ambient: m, members: short }))
}

/// A polynomial with a subset label, optionally kept as a product of factors
/// for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolynomial {
    pub label: String,
    pub subset: Subset,
    pub polynomial: Polynomial,
    pub factors: Option<Vec<Polynomial>>,
    /// Variable letter used when rendering: `x` or `u`.
    pub variable: char,
}

impl LabeledPolynomial {
    fn product(label: String, subset: Subset, factors: Vec<Polynomial>, var_count: usize, variable: char) -> Self {
        let polynomial = factors.iter().fold(Polynomial::one(var_count), |acc, f| &acc * f);
        LabeledPolynomial { label, subset, polynomial, factors: Some(factors), variable }
    }

    fn expanded(label: String, subset: Subset, polynomial: Polynomial, variable: char) -> Self {
        LabeledPolynomial { label, subset, polynomial, factors: None, variable }
    }

    fn rename(&self, text: String) -> String {
        if self.variable == 'x' {
            text
        } else {
            text.replace('x', &self.variable.to_string())
        }
    }

    /// Right-hand side only: factored when available.
    pub fn body(&self) -> String {
        let text = match &self.factors {
            Some(fs) if fs.is_empty() => "1".to_string(),
            Some(fs) if fs.len() == 1 => fs[0].to_string(),
            Some(fs) => fs
                .iter()
                .map(|f| if f.len() > 1 { format!("({f})") } else { f.to_string() })
                .collect::<Vec<_>>()
                .join("*"),
            None => self.polynomial.to_string(),
        };
        self.rename(text)
    }

    pub fn expanded_text(&self) -> String {
        self.rename(self.polynomial.to_string())
    }
}

impl fmt::Display for LabeledPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.body())
    }
}

fn ideal_of(var_count: usize, families: &[&[LabeledPolynomial]]) -> Ideal {
    let gens = families.iter().flat_map(|f| f.iter().map(|lp| lp.polynomial.clone())).collect();
    Ideal::new(var_count, gens)
}

/// Families (i), (ii), (iii) for a sphere product at a threshold.
#[derive(Clone, Debug)]
pub struct SphereFamilies {
    pub radii: Vec<Rational>,
    pub threshold: Rational,
    pub long: SubsetFamily,
    pub short: SubsetFamily,
    /// Subsets long at `-threshold`: the index set of (ii).
    pub plus_index: SubsetFamily,
    /// (i): `(x_j - r_j t)(x_j + r_j t)`
    pub squares: Vec<LabeledPolynomial>,
    /// (ii): `P_J`, `J` in `plus_index`
    pub p_family: Vec<LabeledPolynomial>,
    /// (iii): `Q_J`, `J` long
    pub q_family: Vec<LabeledPolynomial>,
}

impl SphereFamilies {
    pub fn var_count(&self) -> usize {
        self.radii.len()
    }

    /// Ideal of (i) and (ii).
    pub fn plus_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_family])
    }

    /// Ideal of (i) and (iii).
    pub fn minus_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.q_family])
    }

    pub fn full_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_family, &self.q_family])
    }

    /// The corresponding moment system, one sphere per radius.
    pub fn system(&self) -> Result<MomentSystem, PresetError> {
        let factors = self.radii.iter().map(|r| preset_sphere(r.clone())).collect::<Result<Vec<_>, _>>()?;
        Ok(build_system(factors, self.threshold.clone())?)
    }
}

fn signed_form(j: usize, r: &Rational, sign: i64, n: usize) -> Polynomial {
    // x_j - sign * r t
    LinearForm::new(j, r * rat(sign)).to_polynomial(n)
}

fn squares_family(radii: &[Rational], scaled: bool, label: &str, variable: char) -> Vec<LabeledPolynomial> {
    let n = radii.len();
    (1..=n)
        .map(|j| {
            let r = if scaled { Rational::one() } else { radii[j - 1].clone() };
            LabeledPolynomial::product(
                format!("{label}{{{j}}}"),
                Subset::from([j]),
                vec![signed_form(j, &r, 1, n), signed_form(j, &r, -1, n)],
                n,
                variable,
            )
        })
        .collect()
}

fn product_family(
    radii: &[Rational],
    members: &BTreeSet<Subset>,
    sign: i64,
    scaled: bool,
    label: &str,
    variable: char,
) -> Vec<LabeledPolynomial> {
    let n = radii.len();
    members
        .iter()
        .map(|s| {
            let forms = s
                .iter()
                .map(|&j| {
                    let r = if scaled { Rational::one() } else { radii[j - 1].clone() };
                    signed_form(j, &r, sign, n)
                })
                .collect();
            LabeledPolynomial::product(format!("{label}{}", format_subset(s)), s.clone(), forms, n, variable)
        })
        .collect()
}

/// `sum_{S ⊆ L, S in keep} prod_{j in S}(u_j - t) (2t)^{|L - S|}`
fn expanded_q(n: usize, l: &Subset, keep: impl Fn(&Subset) -> bool) -> Polynomial {
    let two_t = Polynomial::t(n).scale(&rat(2));
    subsets_of(l).into_iter().filter(|s| keep(s)).fold(Polynomial::zero(n), |acc, s| {
        let forms: Vec<LinearForm> = s.iter().map(|&j| LinearForm::new(j, Rational::one())).collect();
        let term = &product_of_linear_forms(n, &forms) * &two_t.pow((l.len() - s.len()) as u32);
        &acc + &term
    })
}

fn q_sum_family(
    n: usize,
    index: &BTreeSet<Subset>,
    keep: impl Fn(&Subset) -> bool,
    label: &str,
) -> Vec<LabeledPolynomial> {
    index
        .iter()
        .map(|l| {
            LabeledPolynomial::expanded(format!("{label}{}", format_subset(l)), l.clone(), expanded_q(n, l, &keep), 'u')
        })
        .collect()
}

/// Subsets of `{1..family.ambient}` meeting every member of `family`.
pub fn blocker(family: &SubsetFamily) -> SubsetFamily {
    SubsetFamily {
        ambient: family.ambient,
        members: all_subsets(family.ambient).filter(|j| family.members.iter().all(|l| !j.is_disjoint(l))).collect(),
    }
}

/// Families (i), (ii), (iii) for spheres of the given radii.
pub fn sphere_families(radii: &[Rational], threshold: &Rational) -> Result<SphereFamilies, PresetError> {
    let (long, short) = sphere_subsets(radii, threshold)?;
    let (plus_index, _) = sphere_subsets(radii, &-threshold)?;
    Ok(SphereFamilies {
        radii: radii.to_vec(),
        threshold: threshold.clone(),
        squares: squares_family(radii, false, "Sq", 'x'),
        p_family: product_family(radii, &plus_index.members, 1, false, "P", 'x'),
        q_family: product_family(radii, &long.members, -1, false, "Q", 'x'),
        long,
        short,
        plus_index,
    })
}

/// Substitutes `x_j = r_j u_j`; the result is read in the `u` variables.
pub fn to_u_variables(p: &Polynomial, radii: &[Rational]) -> Polynomial {
    p.scale_variables(radii)
}

/// Substitutes `u_j = x_j / r_j`.
pub fn to_x_variables(p: &Polynomial, radii: &[Rational]) -> Polynomial {
    let inv: Vec<Rational> = radii.iter().map(|r| r.recip()).collect();
    p.scale_variables(&inv)
}

/// Rewrites in `u_j = x_j / r_j` and drops the overall scalar factor.
pub fn normalize_polynomial(p: &Polynomial, radii: &[Rational]) -> Polynomial {
    to_u_variables(p, radii).monic()
}

/// The three sphere families rewritten in `u_j = x_j / r_j`:
///
/// * (i)   `(u_j - t)(u_j + t)`,
/// * (ii)  `prod_{j in L}(u_j - t)`,
/// * (iii) `sum_{S ⊆ L, S not in (ii)} prod_{j in S}(u_j - t) (2t)^{|L - S|}`.
///
/// Scalars `r_j^2` and `prod_{j in L} r_j` are dropped; in (iii) the terms
/// indexed by `S` from the index set of (ii) are multiples of (ii) and are
/// dropped too, so only the ideal of all three families together is
/// preserved. At threshold 0 the kept `S` are the short subsets.
#[derive(Clone, Debug)]
pub struct NormalizedFamilies {
    pub squares: Vec<LabeledPolynomial>,
    pub p_family: Vec<LabeledPolynomial>,
    pub q_family: Vec<LabeledPolynomial>,
    var_count: usize,
}

impl NormalizedFamilies {
    pub fn full_ideal(&self) -> Ideal {
        ideal_of(self.var_count, &[&self.squares, &self.p_family, &self.q_family])
    }
}

pub fn hk_normalize(families: &SphereFamilies) -> NormalizedFamilies {
    let n = families.var_count();
    let radii = &families.radii;
    let relabel = |lp: &LabeledPolynomial| {
        let factors = lp.factors.as_ref().map(|fs| fs.iter().map(|f| normalize_polynomial(f, radii)).collect());
        LabeledPolynomial {
            label: lp.label.clone(),
            subset: lp.subset.clone(),
            polynomial: normalize_polynomial(&lp.polynomial, radii),
            factors,
            variable: 'u',
        }
    };
    let plus = &families.plus_index;
    NormalizedFamilies {
        squares: families.squares.iter().map(relabel).collect(),
        p_family: families.p_family.iter().map(relabel).collect(),
        q_family: q_sum_family(n, &families.long.members, |s| !plus.contains(s), "Q"),
        var_count: n,
    }
}

/// Families for the abelian polygon space `prod_{j<m} S^2_{r_j} //_{r_m} S^1`,
/// all in the variables `u_1..u_{m-1}`.
#[derive(Clone, Debug)]
pub struct PolygonFamilies {
    pub radii: Vec<Rational>,
    /// Subsets `L` of `{1..m-1}` with `sum_L r - sum_rest r > r_m`.
    pub long_rm: SubsetFamily,
    pub short_rm: SubsetFamily,
    /// Subsets of `{1..m-1}` that are long for all `m` spheres at level 0.
    pub long_restricted: SubsetFamily,
    /// `L` with `L ∪ {m}` long for all `m` spheres at level 0.
    pub long_m: SubsetFamily,
    pub short_m: SubsetFamily,
    pub squares: Vec<LabeledPolynomial>,
    /// (ii)': `prod_{j in L}(u_j - t)`, `L` in `long_rm`
    pub p_primed: Vec<LabeledPolynomial>,
    /// (ii)' indexed by the subsets meeting every member of `long_rm`
    pub p_primed_completed: Vec<LabeledPolynomial>,
    /// (iii)': `prod_{j in L}(u_j + t)`, `L` in `long_rm`
    pub q_primed: Vec<LabeledPolynomial>,
    /// (iii)''': (iii)' expanded, keeping terms with `S` in `short_rm`;
    /// pairs with `p_primed_completed`
    pub q_triple_primed: Vec<LabeledPolynomial>,
    /// (ii)'': `prod_{j in L}(u_j - t)`, `L` in `long_m`
    pub p_double_primed: Vec<LabeledPolynomial>,
    /// (iii)'': expanded sums over `S` in `short_m`, `L` in `long_restricted`
    pub q_double_primed: Vec<LabeledPolynomial>,
}

impl PolygonFamilies {
    pub fn var_count(&self) -> usize {
        self.radii.len() - 1
    }

    /// (i)', (ii)', (iii)' with (ii)' indexed by `long_rm`.
    pub fn primed_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_primed, &self.q_primed])
    }

    /// (i)', (ii)', (iii)' with (ii)' indexed by the blocker of `long_rm`.
    pub fn completed_primed_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_primed_completed, &self.q_primed])
    }

    pub fn completed_plus_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_primed_completed])
    }

    pub fn primed_minus_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.q_primed])
    }

    pub fn triple_primed_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_primed_completed, &self.q_triple_primed])
    }

    pub fn double_primed_ideal(&self) -> Ideal {
        ideal_of(self.var_count(), &[&self.squares, &self.p_double_primed, &self.q_double_primed])
    }

    /// `L(r_m) ⊆ L ∩ P(A_{m-1}) ⊆ L_m`
    pub fn inclusion_chain_holds(&self) -> bool {
        self.long_rm.is_subfamily_of(&self.long_restricted) && self.long_restricted.is_subfamily_of(&self.long_m)
    }

    /// The first `m - 1` spheres at threshold `r_m`.
    pub fn base_system(&self) -> Result<MomentSystem, PresetError> {
        let (rm, base) = self.radii.split_last().expect("at least two radii");
        let factors = base.iter().map(|r| preset_sphere(r.clone())).collect::<Result<Vec<_>, _>>()?;
        Ok(build_system(factors, rm.clone())?)
    }

    /// An x-variable ideal of the base system rewritten in the `u` variables.
    pub fn to_u_ideal(&self, ideal: &Ideal) -> Ideal {
        let base = &self.radii[..self.radii.len() - 1];
        Ideal::new(self.var_count(), ideal.generators().iter().map(|g| to_u_variables(g, base)).collect())
    }
}

pub fn abelian_polygon_families(radii: &[Rational]) -> Result<PolygonFamilies, PresetError> {
    check_radii(radii, 2)?;
    let (rm, base) = radii.split_last().unwrap();
    let n = base.len();
    let (long_rm, short_rm) = sphere_subsets(base, rm)?;
    // regular at r_m for the base means regular at 0 for all m spheres
    let (long_all, _) = sphere_subsets(radii, &Rational::zero())?;
    let m = radii.len();
    let within = |s: &Subset| !s.contains(&m);
    let long_restricted =
        SubsetFamily { ambient: n, members: long_all.members.iter().filter(|s| within(s)).cloned().collect() };
    let mut long_m = BTreeSet::new();
    let mut short_m = BTreeSet::new();
    for s in all_subsets(n) {
        let mut with_m = s.clone();
        with_m.insert(m);
        if long_all.contains(&with_m) {
            long_m.insert(s);
        } else {
            short_m.insert(s);
        }
    }
    let long_m = SubsetFamily { ambient: n, members: long_m };
    let short_m = SubsetFamily { ambient: n, members: short_m };

    let ones = vec![Rational::one(); n];
    let completed = blocker(&long_rm);
    Ok(PolygonFamilies {
        radii: radii.to_vec(),
        squares: squares_family(&ones, true, "Sq", 'u'),
        p_primed: product_family(&ones, &long_rm.members, 1, true, "P'", 'u'),
        p_primed_completed: product_family(&ones, &completed.members, 1, true, "P'", 'u'),
        q_primed: product_family(&ones, &long_rm.members, -1, true, "Q'", 'u'),
        q_triple_primed: q_sum_family(n, &long_rm.members, |s| short_rm.contains(s), "Q'''"),
        p_double_primed: product_family(&ones, &long_m.members, 1, true, "P''", 'u'),
        q_double_primed: q_sum_family(n, &long_restricted.members, |s| short_m.contains(s), "Q''"),
        long_rm,
        short_rm,
        long_restricted,
        long_m,
        short_m,
    })
}
