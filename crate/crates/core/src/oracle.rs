//! Brute-force certification: kernels recomputed as vanishing ideals of the
//! fixed-point restrictions, and evaluation checks at those points.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, Polynomial, Rational};
use crate::groebner::{vanishing_ideal, Ideal};
use crate::kernel::{kernel_full, kernel_generators, staircase_generators_2};
use crate::moment_model::{MomentSystem, Side};
use crate::presets_hk::{hk_normalize, sphere_families, to_u_variables};

pub const DEFAULT_ORACLE_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{side} side has {count} fixed points, above the oracle limit {limit}")]
    TooManyPoints { side: &'static str, count: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Evaluation,
    GroebnerEquality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A generator that does not vanish at a point.
    Point { generator: String, point: Vec<String>, value: String },
    /// A generator of one ideal outside the other.
    NonMember { polynomial: String, ideal: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Point { generator, point, value } => {
                write!(f, "{generator} at ({}) gives {value}", point.join(", "))
            }
            Witness::NonMember { polynomial, ideal } => write!(f, "{polynomial} not in {ideal}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub subject: String,
    pub method: Method,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }

    fn new(subject: String, method: Method, witness: Option<Witness>) -> Self {
        let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
        Certificate { subject, method, verdict, witness }
    }
}

/// Passes when every generator vanishes under `x_i -> point[i-1] * t` for
/// every point.
pub fn check_vanishing(gens: &[Polynomial], points: &[Vec<Rational>]) -> Certificate {
    let witness = points.iter().find_map(|pt| {
        gens.iter().find_map(|g| {
            let value = g.evaluate_at_point(pt).expect("point length matches ring");
            (!value.is_zero()).then(|| Witness::Point {
                generator: g.to_string(),
                point: pt.iter().map(format_rational).collect(),
                value: value.to_string(),
            })
        })
    });
    Certificate::new("vanishing".into(), Method::Evaluation, witness)
}

/// Passes when the two ideals are equal.
pub fn certify_equality(subject: impl Into<String>, a: &Ideal, b: &Ideal) -> Certificate {
    let witness =
        b.first_non_member(a).map(|p| Witness::NonMember { polynomial: p.to_string(), ideal: "right".into() }).or_else(
            || a.first_non_member(b).map(|p| Witness::NonMember { polynomial: p.to_string(), ideal: "left".into() }),
        );
    Certificate::new(subject.into(), Method::GroebnerEquality, witness)
}

pub fn side_restriction_points(sys: &MomentSystem, side: Side) -> Vec<Vec<Rational>> {
    sys.side_points(side).iter().map(|p| sys.restriction_point(p)).collect()
}

/// The kernel of one side as the intersection of its point ideals; the
/// unit ideal when the side is empty.
pub fn oracle_kernel(sys: &MomentSystem, side: Side) -> Result<Ideal, OracleError> {
    oracle_kernel_with_limit(sys, side, DEFAULT_ORACLE_LIMIT)
}

pub fn oracle_kernel_with_limit(sys: &MomentSystem, side: Side, limit: usize) -> Result<Ideal, OracleError> {
    let points = side_restriction_points(sys, side);
    if points.len() > limit {
        return Err(OracleError::TooManyPoints { side: side.label(), count: points.len(), limit });
    }
    if points.is_empty() {
        return Ok(Ideal::unit(sys.factor_count()));
    }
    Ok(vanishing_ideal(&points).expect("restriction points share one length"))
}

/// Evaluation on the side's points and, within the limit, equality with the
/// oracle kernel.
pub fn certify_generators(
    subject: &str,
    gens: &[Polynomial],
    sys: &MomentSystem,
    side: Side,
    limit: usize,
) -> (Vec<Certificate>, Option<String>) {
    let mut out = vec![check_vanishing(gens, &side_restriction_points(sys, side))
        .with_subject(format!("{subject} vanish on {} points", side.label()))];
    let skipped = match oracle_kernel_with_limit(sys, side, limit) {
        Ok(oracle) => {
            let ideal = Ideal::new(sys.factor_count(), gens.to_vec());
            out.push(certify_equality(format!("{subject} = oracle kernel ({})", side.label()), &ideal, &oracle));
            None
        }
        Err(e) => Some(format!("{subject} = oracle kernel ({}): {e}", side.label())),
    };
    (out, skipped)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub max_oracle_points: usize,
    pub hk_families: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_oracle_points: DEFAULT_ORACLE_LIMIT, hk_families: true }
    }
}

/// Certificates from one run, plus the oracle checks skipped by the size
/// guard.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationRun {
    pub certificates: Vec<Certificate>,
    pub skipped: Vec<String>,
}

impl CertificationRun {
    pub fn all_passed(&self) -> bool {
        self.certificates.iter().all(Certificate::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.passed())
    }

    fn extend(&mut self, (certs, skipped): (Vec<Certificate>, Option<String>)) {
        self.certificates.extend(certs);
        self.skipped.extend(skipped);
    }
}

pub fn certify_system(sys: &MomentSystem) -> CertificationRun {
    certify_system_with(sys, CertifyOptions::default())
}

pub fn certify_system_with(sys: &MomentSystem, options: CertifyOptions) -> CertificationRun {
    let limit = options.max_oracle_points;
    let n = sys.factor_count();
    let mut run = CertificationRun::default();
    let mut kernels = Vec::new();
    for side in [Side::Plus, Side::Minus] {
        let kg = kernel_generators(sys, side);
        run.extend(certify_generators(&format!("K{} generators", side.sign()), &kg.generators, sys, side, limit));
        kernels.push((side, kg.ideal(n)));
    }

    if n == 2 {
        for (side, kernel) in &kernels {
            let stair = staircase_generators_2(sys, *side).expect("two factors");
            let subject = format!("staircase ({}) = K{}", side.label(), side.sign());
            run.certificates.push(certify_equality(subject, &Ideal::new(n, stair), kernel));
        }
    }

    if let Some(radii) = sys.sphere_radii() {
        if let Ok(fam) = sphere_families(&radii, sys.threshold()) {
            run.certificates.push(certify_equality("families (i)+(ii) = K+", &fam.plus_ideal(), &kernels[0].1));
            run.certificates.push(certify_equality("families (i)+(iii) = K-", &fam.minus_ideal(), &kernels[1].1));
            if options.hk_families {
                let pushed =
                    Ideal::new(n, kernel_full(sys).generators().iter().map(|g| to_u_variables(g, &radii)).collect());
                let normalized = hk_normalize(&fam).full_ideal();
                run.certificates.push(certify_equality("normalized families = K (u variables)", &normalized, &pushed));
            }
        }
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::groebner::ideal_equal;
    use crate::moment_model::{build_system, preset_projective, preset_sphere, Factor};

    fn spheres(radii: &[i64]) -> MomentSystem {
        build_system(radii.iter().map(|&r| preset_sphere(rat(r)).unwrap()).collect(), rat(0)).unwrap()
    }

    fn cp1() -> MomentSystem {
        build_system(vec![preset_projective(vec![rat(1), rat(-1)]).unwrap()], rat(0)).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> Ideal {
        Ideal::new(n, gens.iter().map(|s| Polynomial::parse(s, n).unwrap()).collect())
    }

    #[test]
    fn vanishing_examples() {
        let sys = cp1();
        let kp = crate::kernel::kernel_plus(&sys);
        assert!(check_vanishing(kp.generators(), &side_restriction_points(&sys, Side::Plus)).passed());
        let c = check_vanishing(&[Polynomial::parse("x1 - t", 1).unwrap()], &[vec![rat(-1)]]);
        assert_eq!(c.verdict, Verdict::Fail);
        match c.witness {
            Some(Witness::Point { value, .. }) => assert_eq!(value, "-2*t"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(check_vanishing(&[], &[vec![rat(3)]]).passed());
    }

    #[test]
    fn oracle_examples() {
        assert!(ideal_equal(&oracle_kernel(&cp1(), Side::Plus).unwrap(), &ideal(&["x1 - t"], 1)));
        let k = oracle_kernel(&spheres(&[1, 2]), Side::Plus).unwrap();
        assert!(ideal_equal(&k, &ideal(&["x2 - 2*t", "x1^2 - t^2"], 2)));
        let f = Factor::new("w", vec![rat(3), rat(1), rat(-2)]).unwrap();
        let sys = build_system(vec![f], rat(0)).unwrap();
        let k = oracle_kernel(&sys, Side::Plus).unwrap();
        assert!(ideal_equal(&k, &ideal(&["(x1 - 3*t)*(x1 - t)"], 1)));
    }

    #[test]
    fn empty_side_is_unit() {
        let sys = build_system(vec![preset_sphere(rat(1)).unwrap()], rat(5)).unwrap();
        assert!(oracle_kernel(&sys, Side::Plus).unwrap().is_unit());
        assert!(crate::kernel::kernel_plus(&sys).is_unit());
    }

    #[test]
    fn size_guard() {
        let sys = spheres(&[1, 2, 4]);
        assert_eq!(
            oracle_kernel_with_limit(&sys, Side::Plus, 2).unwrap_err(),
            OracleError::TooManyPoints { side: "plus", count: 4, limit: 2 }
        );
        let run = certify_system_with(&sys, CertifyOptions { max_oracle_points: 2, hk_families: false });
        assert_eq!(run.skipped.len(), 2);
        assert!(run.all_passed());
    }

    #[test]
    fn certify_small_systems() {
        let run = certify_system(&cp1());
        assert!(run.all_passed() && run.skipped.is_empty());
        let run = certify_system(&spheres(&[1, 2]));
        assert!(run.all_passed(), "{:?}", run.failures().collect::<Vec<_>>());
        assert!(run.certificates.iter().any(|c| c.subject.starts_with("staircase (plus)")));
        assert!(run.certificates.iter().any(|c| c.subject.starts_with("families (i)+(iii)")));
    }

    #[test]
    fn unequal_ideals_carry_witness() {
        let c = certify_equality("x", &ideal(&["x1 - t"], 1), &ideal(&["x1^2 - t^2"], 1));
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.witness, Some(Witness::NonMember { polynomial: "x1 - t".into(), ideal: "right".into() }));
    }
}
