//! Problem documents, the commands run on them, and their reports.
//!
//! A document is TOML:
//!
//! ```toml
//! threshold = "0"          # optional, default 0
//! max_degree = 3           # optional, default sum of (n_i - 1)
//!
//! [options]                # all optional
//! certify = false
//! hk_families = false
//! debug_families = false
//! max_oracle_points = 64
//!
//! [[factor]]
//! kind = "sphere"
//! radius = "3/2"
//!
//! [[factor]]
//! kind = "projective"
//! weights = [2, "1/2", -1]
//!
//! [[factor]]
//! kind = "values"
//! values = [4, 0, -3]
//! ```
//!
//! Rationals are integers or strings `"p/q"`; floats are rejected.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{format_rational, parse_rational, Rational};
use crate::kernel::{default_max_degree, kernel_full, kernel_generators, reduced_cohomology};
use crate::moment_model::{build_system, preset_projective, preset_sphere, Factor, ModelError, MomentSystem, Side};
use crate::oracle::{certify_equality, certify_system_with, Certificate, CertificationRun, CertifyOptions};
use crate::presets_hk::{
    abelian_polygon_families, format_subset, hk_normalize, sphere_families, LabeledPolynomial, PolygonFamilies,
    SubsetFamily,
};

pub const SCHEMA: &str = "kirwan-report/1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Syntax(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("invalid system: {0}")]
    Model(#[from] ModelError),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
    Float(f64),
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawFactor {
    Sphere { radius: RawRational },
    Projective { weights: Vec<RawRational> },
    Values { values: Vec<RawRational> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    threshold: Option<RawRational>,
    max_degree: Option<u32>,
    #[serde(default)]
    options: Options,
    #[serde(default)]
    factor: Vec<RawFactor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Attach oracle certificates to every command.
    pub certify: bool,
    /// Add normalized and polygon-space families.
    pub hk_families: bool,
    /// Also show the intermediate (iii)''' family.
    pub debug_families: bool,
    pub max_oracle_points: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { certify: false, hk_families: false, debug_families: false, max_oracle_points: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    Sphere { radius: Rational },
    Projective { weights: Vec<Rational> },
    Values { values: Vec<Rational> },
}

impl FactorSpec {
    pub fn build(&self) -> Result<Factor, ModelError> {
        match self {
            FactorSpec::Sphere { radius } => preset_sphere(radius.clone()),
            FactorSpec::Projective { weights } => preset_projective(weights.clone()),
            FactorSpec::Values { values } => Factor::new("values", values.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemDocument {
    pub factors: Vec<FactorSpec>,
    pub threshold: Rational,
    pub max_degree: Option<u32>,
    pub options: Options,
}

fn field_rational(raw: &RawRational, field: impl Fn() -> String) -> Result<Rational, DocumentError> {
    match raw {
        RawRational::Int(i) => Ok(Rational::from_integer((*i).into())),
        RawRational::Text(s) => {
            parse_rational(s).map_err(|e| DocumentError::Field { field: field(), message: e.to_string() })
        }
        RawRational::Float(x) => Err(DocumentError::Field {
            field: field(),
            message: format!("floating-point value {x} not accepted; write an integer or a \"p/q\" string"),
        }),
    }
}

fn field_list(raw: &[RawRational], name: &str) -> Result<Vec<Rational>, DocumentError> {
    raw.iter().enumerate().map(|(k, r)| field_rational(r, || format!("{name}[{k}]"))).collect()
}

impl ProblemDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))?;
        if raw.factor.is_empty() {
            return Err(DocumentError::Field {
                field: "factor".into(),
                message: "at least one factor is required".into(),
            });
        }
        let threshold = match &raw.threshold {
            Some(r) => field_rational(r, || "threshold".into())?,
            None => Rational::from_integer(0.into()),
        };
        let factors = raw
            .factor
            .iter()
            .enumerate()
            .map(|(k, f)| {
                Ok(match f {
                    RawFactor::Sphere { radius } => {
                        FactorSpec::Sphere { radius: field_rational(radius, || format!("factor[{k}].radius"))? }
                    }
                    RawFactor::Projective { weights } => {
                        FactorSpec::Projective { weights: field_list(weights, &format!("factor[{k}].weights"))? }
                    }
                    RawFactor::Values { values } => {
                        FactorSpec::Values { values: field_list(values, &format!("factor[{k}].values"))? }
                    }
                })
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(ProblemDocument { factors, threshold, max_degree: raw.max_degree, options: raw.options })
    }

    pub fn system(&self) -> Result<MomentSystem, DocumentError> {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| {
                f.build().map_err(|e| DocumentError::Field { field: format!("factor[{k}]"), message: e.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(build_system(factors, self.threshold.clone())?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Generators,
    Betti,
    Families,
    Certify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub threshold: String,
    /// Moment values of each factor.
    pub factors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub index: Vec<usize>,
    pub mu: String,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub fixed_points: Vec<PointRow>,
    pub long_count: usize,
    pub short_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideGenerators {
    pub coverings: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub plus: SideGenerators,
    pub minus: SideGenerators,
    pub groebner_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub betti: Vec<u64>,
    pub max_degree: u32,
    pub total_dimension: Option<u64>,
    pub truncated: bool,
    pub zero_ring: bool,
    pub relations: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub label: String,
    pub subset: Vec<usize>,
    pub form: String,
    pub expanded: String,
}

impl From<&LabeledPolynomial> for FamilyEntry {
    fn from(lp: &LabeledPolynomial) -> Self {
        FamilyEntry {
            label: lp.label.clone(),
            subset: lp.subset.iter().copied().collect(),
            form: lp.body(),
            expanded: lp.expanded_text(),
        }
    }
}

fn entries(f: &[LabeledPolynomial]) -> Vec<FamilyEntry> {
    f.iter().map(FamilyEntry::from).collect()
}

fn subsets(f: &SubsetFamily) -> Vec<String> {
    f.members.iter().map(format_subset).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedFamily {
    pub name: String,
    pub members: Vec<FamilyEntry>,
}

fn named(name: &str, f: &[LabeledPolynomial]) -> NamedFamily {
    NamedFamily { name: name.into(), members: entries(f) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub side_lengths: Vec<String>,
    pub long_rm: Vec<String>,
    pub long_restricted: Vec<String>,
    pub long_m: Vec<String>,
    pub inclusion_chain: bool,
    pub families: Vec<NamedFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamiliesReport {
    pub long: Vec<String>,
    pub short: Vec<String>,
    pub families: Vec<NamedFamily>,
    pub normalized: Option<Vec<NamedFamily>>,
    pub polygon: Option<PolygonReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportBody {
    Classify(ClassifyReport),
    Generators(GeneratorsReport),
    Betti(BettiReport),
    Families(FamiliesReport),
    Certify(CertificationRun),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Command,
    pub input: InputSummary,
    pub result: ReportBody,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certification: Option<CertificationRun>,
}

impl Report {
    pub fn certification_failed(&self) -> bool {
        let failed = |run: &CertificationRun| !run.all_passed();
        self.certification.as_ref().is_some_and(failed)
            || matches!(&self.result, ReportBody::Certify(run) if failed(run))
    }
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn error(message: String) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), exit_code: 1 }
    }
}

fn classify_report(sys: &MomentSystem) -> ClassifyReport {
    let fixed_points: Vec<PointRow> = sys
        .fixed_points()
        .map(|p| PointRow {
            mu: format_rational(&sys.mu_value(&p).expect("index from the system")),
            side: if sys.is_long(&p) { Side::Plus } else { Side::Minus },
            index: p.0,
        })
        .collect();
    let long_count = fixed_points.iter().filter(|r| r.side == Side::Plus).count();
    ClassifyReport { short_count: fixed_points.len() - long_count, long_count, fixed_points }
}

fn generators_report(sys: &MomentSystem) -> GeneratorsReport {
    let side = |s: Side| {
        let kg = kernel_generators(sys, s);
        SideGenerators {
            coverings: kg.coverings.iter().map(|c| c.to_string()).collect(),
            generators: kg.generators.iter().map(|g| g.to_string()).collect(),
        }
    };
    GeneratorsReport {
        plus: side(Side::Plus),
        minus: side(Side::Minus),
        groebner_basis: kernel_full(sys).groebner_basis().iter().map(|g| g.to_string()).collect(),
    }
}

fn betti_report(sys: &MomentSystem, max_degree: u32) -> Result<BettiReport, String> {
    let pres = reduced_cohomology(sys, max_degree).map_err(|e| e.to_string())?;
    Ok(BettiReport {
        betti: pres.betti,
        max_degree: pres.max_degree,
        total_dimension: pres.total_dimension,
        truncated: pres.truncated,
        zero_ring: pres.zero_ring,
        relations: pres.basis.iter().map(|g| g.to_string()).collect(),
        warnings: pres.warnings,
    })
}

fn polygon_report(pf: &PolygonFamilies, debug: bool) -> PolygonReport {
    let mut families = vec![
        named("(i)'", &pf.squares),
        named("(ii)'", &pf.p_primed),
        named("(ii)' completed", &pf.p_primed_completed),
        named("(iii)'", &pf.q_primed),
    ];
    if debug {
        families.push(named("(iii)'''", &pf.q_triple_primed));
    }
    families.push(named("(ii)''", &pf.p_double_primed));
    families.push(named("(iii)''", &pf.q_double_primed));
    PolygonReport {
        side_lengths: pf.radii.iter().map(format_rational).collect(),
        long_rm: subsets(&pf.long_rm),
        long_restricted: subsets(&pf.long_restricted),
        long_m: subsets(&pf.long_m),
        inclusion_chain: pf.inclusion_chain_holds(),
        families,
    }
}

fn families_report(sys: &MomentSystem, options: &Options) -> Result<FamiliesReport, String> {
    let radii = sys
        .sphere_radii()
        .ok_or_else(|| "unsupported preset: families need every factor to be a sphere".to_string())?;
    let fam = sphere_families(&radii, sys.threshold()).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    let (normalized, polygon) = if options.hk_families {
        let n = hk_normalize(&fam);
        let normalized = vec![named("(i)", &n.squares), named("(ii)", &n.p_family), named("(iii)", &n.q_family)];
        let polygon = match abelian_polygon_families(&radii) {
            Ok(pf) => Some(polygon_report(&pf, options.debug_families)),
            Err(e) => {
                notes.push(format!("polygon families unavailable: {e}"));
                None
            }
        };
        (Some(normalized), polygon)
    } else {
        (None, None)
    };
    Ok(FamiliesReport {
        long: subsets(&fam.long),
        short: subsets(&fam.short),
        families: vec![named("(i)", &fam.squares), named("(ii)", &fam.p_family), named("(iii)", &fam.q_family)],
        normalized,
        polygon,
        notes,
    })
}

/// Ideal equalities for the polygon-space families built from the radii.
pub fn polygon_certificates(pf: &PolygonFamilies) -> Result<Vec<Certificate>, String> {
    let base = pf.base_system().map_err(|e| e.to_string())?;
    let pushed = pf.to_u_ideal(&kernel_full(&base));
    Ok(vec![
        certify_equality("polygon (i)'+(ii)' completed+(iii)' = K(r_m)", &pf.completed_primed_ideal(), &pushed),
        certify_equality("polygon (i)'+(ii)' completed+(iii)''' = K(r_m)", &pf.triple_primed_ideal(), &pushed),
        certify_equality("polygon (i)''+(ii)''+(iii)'' = K(r_m)", &pf.double_primed_ideal(), &pushed),
    ])
}

fn certification(sys: &MomentSystem, options: &Options) -> CertificationRun {
    let mut run = certify_system_with(
        sys,
        CertifyOptions { max_oracle_points: options.max_oracle_points, hk_families: options.hk_families },
    );
    if options.hk_families {
        if let Some(Ok(pf)) = sys.sphere_radii().map(|r| abelian_polygon_families(&r)) {
            match polygon_certificates(&pf) {
                Ok(certs) => run.certificates.extend(certs),
                Err(e) => run.skipped.push(format!("polygon families: {e}")),
            }
        }
    }
    run
}

fn build_report(command: Command, doc: &ProblemDocument) -> Result<Report, String> {
    let sys = doc.system().map_err(|e| e.to_string())?;
    let result = match command {
        Command::Classify => ReportBody::Classify(classify_report(&sys)),
        Command::Generators => ReportBody::Generators(generators_report(&sys)),
        Command::Betti => {
            ReportBody::Betti(betti_report(&sys, doc.max_degree.unwrap_or_else(|| default_max_degree(&sys)))?)
        }
        Command::Families => ReportBody::Families(families_report(&sys, &doc.options)?),
        Command::Certify => ReportBody::Certify(certification(&sys, &doc.options)),
    };
    let certification = (doc.options.certify && command != Command::Certify).then(|| certification(&sys, &doc.options));
    Ok(Report {
        schema: SCHEMA.into(),
        command,
        input: InputSummary {
            threshold: format_rational(sys.threshold()),
            factors: sys.factors().iter().map(|f| f.values().iter().map(format_rational).collect()).collect(),
        },
        result,
        certification,
    })
}

/// Runs a command on a parsed document. Exit code 0 on success, 1 on
/// validation errors, 2 when a certificate fails.
pub fn run(command: Command, doc: &ProblemDocument, format: Format) -> Outcome {
    match build_report(command, doc) {
        Ok(report) => Outcome {
            stdout: render(&report, format),
            stderr: String::new(),
            exit_code: if report.certification_failed() { 2 } else { 0 },
        },
        Err(e) => Outcome::error(e),
    }
}

/// Parses the document text, then runs the command.
pub fn run_text(command: Command, text: &str, format: Format) -> Outcome {
    match ProblemDocument::parse(text) {
        Ok(doc) => run(command, &doc, format),
        Err(e) => Outcome::error(e.to_string()),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_family(out: &mut String, f: &NamedFamily) {
    let _ = writeln!(out, "{}:", f.name);
    for e in &f.members {
        let _ = writeln!(out, "  {} = {}", e.label, e.form);
    }
}

fn render_certificates(out: &mut String, run: &CertificationRun) {
    for c in &run.certificates {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        let method = match c.method {
            crate::oracle::Method::Evaluation => "evaluation",
            crate::oracle::Method::GroebnerEquality => "groebner",
        };
        let _ = writeln!(out, "  {verdict}  {method:<10}  {}", c.subject);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "        witness: {w}");
        }
    }
    for s in &run.skipped {
        let _ = writeln!(out, "  SKIP  {s}");
    }
    let failed = run.failures().count();
    let _ = writeln!(out, "{} certificates, {} failed, {} skipped", run.certificates.len(), failed, run.skipped.len());
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let factors: Vec<String> = report.input.factors.iter().map(|f| format!("[{}]", f.join(", "))).collect();
    let _ = writeln!(out, "factors: {}", factors.join(" x "));
    let _ = writeln!(out, "threshold: {}", report.input.threshold);
    match &report.result {
        ReportBody::Classify(c) => {
            let _ = writeln!(
                out,
                "fixed points: {} (long {}, short {})",
                c.fixed_points.len(),
                c.long_count,
                c.short_count
            );
            for row in &c.fixed_points {
                let idx: Vec<String> = row.index.iter().map(|i| i.to_string()).collect();
                let kind = if row.side == Side::Plus { "long" } else { "short" };
                let _ = writeln!(out, "  ({})  mu = {}  {kind}", idx.join(","), row.mu);
            }
        }
        ReportBody::Generators(g) => {
            for (name, side) in [("K+", &g.plus), ("K-", &g.minus)] {
                let _ = writeln!(out, "{name} generators:");
                for (c, p) in side.coverings.iter().zip(&side.generators) {
                    let _ = writeln!(out, "  {p}    from {c}");
                }
            }
            let _ = writeln!(out, "groebner basis of K:");
            for p in &g.groebner_basis {
                let _ = writeln!(out, "  {p}");
            }
        }
        ReportBody::Betti(b) => {
            let betti: Vec<String> = b.betti.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "betti (b0, b2, ...): [{}] up to degree {}", betti.join(", "), b.max_degree);
            if let Some(d) = b.total_dimension {
                let _ = writeln!(out, "total dimension: {d}");
            }
            let _ = writeln!(out, "relations:");
            for r in &b.relations {
                let _ = writeln!(out, "  {r}");
            }
            for w in &b.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
        ReportBody::Families(f) => {
            let _ = writeln!(out, "long subsets: {}", f.long.join(" "));
            let _ = writeln!(out, "short subsets: {}", f.short.join(" "));
            for fam in &f.families {
                render_family(&mut out, fam);
            }
            if let Some(norm) = &f.normalized {
                let _ = writeln!(out, "normalized (u_j = x_j / r_j):");
                for fam in norm {
                    render_family(&mut out, fam);
                }
            }
            if let Some(p) = &f.polygon {
                let _ = writeln!(out, "polygon space, side lengths {}:", p.side_lengths.join(", "));
                let _ = writeln!(out, "L(r_m): {}", p.long_rm.join(" "));
                let _ = writeln!(out, "L restricted: {}", p.long_restricted.join(" "));
                let _ = writeln!(out, "L_m: {}", p.long_m.join(" "));
                let _ = writeln!(out, "inclusion chain holds: {}", p.inclusion_chain);
                for fam in &p.families {
                    render_family(&mut out, fam);
                }
            }
            for n in &f.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        ReportBody::Certify(run) => {
            let _ = writeln!(out, "certificates:");
            render_certificates(&mut out, run);
        }
    }
    if let Some(run) = &report.certification {
        let _ = writeln!(out, "certification:");
        render_certificates(&mut out, run);
    }
    out
}
