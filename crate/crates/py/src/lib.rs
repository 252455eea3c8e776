//! Python bindings: `import kirwan`.

use std::collections::BTreeMap;

use kirwan_core::algebra::{self, parse_rational, Polynomial, Rational};
use kirwan_core::cli::{self, Command, Format};
use kirwan_core::groebner::{self, Ideal};
use kirwan_core::kernel;
use kirwan_core::moment_model::{build_system, preset_sphere, Factor, FixedPointIndex, MomentSystem, Side};
use kirwan_core::oracle::{self, CertifyOptions};
use kirwan_core::presets_hk::{self, format_subset, LabeledPolynomial};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyFloat};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Ints, `"p/q"` strings and `fractions.Fraction`; floats are refused.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() || obj.is_instance_of::<PyBool>() {
        return Err(PyTypeError::new_err("expected an int, a \"p/q\" string or a Fraction"));
    }
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(i.into()));
    }
    let text = obj.str()?;
    parse_rational(text.to_str()?).map_err(value_err)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn side(name: &str) -> PyResult<Side> {
    match name {
        "plus" | "+" => Ok(Side::Plus),
        "minus" | "-" => Ok(Side::Minus),
        _ => Err(PyValueError::new_err(format!("side must be 'plus' or 'minus', got {name:?}"))),
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[pyclass(name = "Polynomial", module = "kirwan", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial {
    inner: Polynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str, var_count: usize) -> PyResult<Self> {
        Ok(PyPolynomial { inner: Polynomial::parse(text, var_count).map_err(value_err)? })
    }

    #[getter]
    fn var_count(&self) -> usize {
        self.inner.var_count()
    }

    fn total_degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    /// `(exponents, coefficient)` pairs; exponent slot 0 is `t`.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.inner.terms().iter().map(|(m, c)| (m.exponents().to_vec(), algebra::format_rational(c))).collect()
    }

    /// Substitutes `x_i -> point[i-1] * t`.
    fn evaluate(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let inner = self.inner.evaluate_at_point(&rationals(&point)?).map_err(value_err)?;
        Ok(PyPolynomial { inner })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.try_add(&other.inner).map_err(value_err)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.try_sub(&other.inner).map_err(value_err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPolynomial { inner: self.inner.try_mul(&other.inner).map_err(value_err)? })
    }

    fn __neg__(&self) -> Self {
        PyPolynomial { inner: -self.inner.clone() }
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        PyPolynomial { inner: self.inner.pow(k) }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', {})", self.inner, self.inner.var_count())
    }
}

fn polynomial_arg(obj: &Bound<'_, PyAny>, var_count: usize) -> PyResult<Polynomial> {
    if let Ok(p) = obj.cast::<PyPolynomial>() {
        return Ok(p.get().inner.clone());
    }
    Polynomial::parse(obj.extract::<&str>()?, var_count).map_err(value_err)
}

#[pyclass(name = "Ideal", module = "kirwan", frozen)]
struct PyIdeal {
    inner: Ideal,
}

#[pymethods]
impl PyIdeal {
    /// Generators are `Polynomial`s or strings.
    #[new]
    fn new(generators: Vec<Bound<'_, PyAny>>, var_count: usize) -> PyResult<Self> {
        let gens = generators.iter().map(|g| polynomial_arg(g, var_count)).collect::<PyResult<_>>()?;
        Ok(PyIdeal { inner: Ideal::new(var_count, gens) })
    }

    #[getter]
    fn var_count(&self) -> usize {
        self.inner.var_count()
    }

    fn generators(&self) -> Vec<String> {
        strings(self.inner.generators())
    }

    fn groebner_basis(&self) -> Vec<String> {
        strings(self.inner.groebner_basis())
    }

    fn normal_form(&self, p: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(self.inner.normal_form(&polynomial_arg(p, self.inner.var_count())?).to_string())
    }

    fn contains(&self, p: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.inner.contains(&polynomial_arg(p, self.inner.var_count())?))
    }

    fn hilbert_function(&self, max_degree: u32) -> PyResult<Vec<u64>> {
        self.inner.hilbert_function(max_degree).map_err(value_err)
    }

    fn intersect(&self, other: &Self) -> Self {
        PyIdeal { inner: self.inner.intersect(&other.inner) }
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn __add__(&self, other: &Self) -> Self {
        PyIdeal { inner: self.inner.sum(&other.inner) }
    }

    fn __eq__(&self, other: &Self) -> bool {
        groebner::ideal_equal(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner)
    }
}

#[pyclass(name = "Cohomology", module = "kirwan", frozen, get_all)]
struct PyCohomology {
    betti: Vec<u64>,
    max_degree: u32,
    total_dimension: Option<u64>,
    truncated: bool,
    zero_ring: bool,
    relations: Vec<String>,
    warnings: Vec<String>,
}

#[pyclass(name = "Certificate", module = "kirwan", frozen, get_all)]
struct PyCertificate {
    subject: String,
    method: String,
    verdict: String,
    witness: Option<String>,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    fn __repr__(&self) -> String {
        format!("Certificate({:?}, {})", self.subject, self.verdict)
    }
}

impl From<&oracle::Certificate> for PyCertificate {
    fn from(c: &oracle::Certificate) -> Self {
        PyCertificate {
            subject: c.subject.clone(),
            method: match c.method {
                oracle::Method::Evaluation => "evaluation".into(),
                oracle::Method::GroebnerEquality => "groebner_equality".into(),
            },
            verdict: if c.passed() { "pass".into() } else { "fail".into() },
            witness: c.witness.as_ref().map(|w| w.to_string()),
        }
    }
}

#[pyclass(name = "MomentSystem", module = "kirwan", frozen)]
struct PySystem {
    inner: MomentSystem,
}

#[pymethods]
impl PySystem {
    /// One list of strictly decreasing moment values per factor.
    #[new]
    #[pyo3(signature = (factors, threshold = None))]
    fn new(factors: Vec<Vec<Bound<'_, PyAny>>>, threshold: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        let threshold = threshold.as_ref().map(rational).transpose()?.unwrap_or_default();
        let factors = factors
            .iter()
            .enumerate()
            .map(|(k, vals)| Factor::new(format!("factor {}", k + 1), rationals(vals)?).map_err(value_err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySystem { inner: build_system(factors, threshold).map_err(value_err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (radii, threshold = None))]
    fn spheres(radii: Vec<Bound<'_, PyAny>>, threshold: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        let threshold = threshold.as_ref().map(rational).transpose()?.unwrap_or_default();
        let factors = rationals(&radii)?
            .into_iter()
            .map(|r| preset_sphere(r).map_err(value_err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PySystem { inner: build_system(factors, threshold).map_err(value_err)? })
    }

    /// Builds the system described by a problem document.
    #[staticmethod]
    fn from_document(text: &str) -> PyResult<Self> {
        let doc = cli::ProblemDocument::parse(text).map_err(value_err)?;
        Ok(PySystem { inner: doc.system().map_err(value_err)? })
    }

    #[getter]
    fn factor_count(&self) -> usize {
        self.inner.factor_count()
    }

    #[getter]
    fn threshold(&self) -> String {
        algebra::format_rational(self.inner.threshold())
    }

    /// `(index, moment value, side)` for every fixed point.
    fn fixed_points(&self) -> Vec<(Vec<usize>, String, &'static str)> {
        self.inner
            .fixed_points()
            .map(|p| {
                let mu = algebra::format_rational(&self.inner.mu_value(&p).expect("index from the system"));
                let side = if self.inner.is_long(&p) { "plus" } else { "minus" };
                (p.0, mu, side)
            })
            .collect()
    }

    fn mu_value(&self, index: Vec<usize>) -> PyResult<String> {
        let v = self.inner.mu_value(&FixedPointIndex::new(index)).map_err(value_err)?;
        Ok(algebra::format_rational(&v))
    }

    fn minimal_coverings(&self, side_name: &str) -> PyResult<Vec<String>> {
        let kg = kernel::kernel_generators(&self.inner, side(side_name)?);
        Ok(kg.coverings.iter().map(|c| c.to_string()).collect())
    }

    fn kernel_generators(&self, side_name: &str) -> PyResult<Vec<String>> {
        Ok(strings(&kernel::kernel_generators(&self.inner, side(side_name)?).generators))
    }

    fn kernel(&self, side_name: &str) -> PyResult<PyIdeal> {
        Ok(PyIdeal { inner: kernel::kernel_side(&self.inner, side(side_name)?) })
    }

    fn kernel_full(&self) -> PyIdeal {
        PyIdeal { inner: kernel::kernel_full(&self.inner) }
    }

    #[pyo3(signature = (side_name, max_points = oracle::DEFAULT_ORACLE_LIMIT))]
    fn oracle_kernel(&self, side_name: &str, max_points: usize) -> PyResult<PyIdeal> {
        let inner = oracle::oracle_kernel_with_limit(&self.inner, side(side_name)?, max_points).map_err(value_err)?;
        Ok(PyIdeal { inner })
    }

    fn staircase_generators(&self, side_name: &str) -> PyResult<Vec<String>> {
        let gens = kernel::staircase_generators_2(&self.inner, side(side_name)?).map_err(value_err)?;
        Ok(strings(&gens))
    }

    #[pyo3(signature = (max_degree = None))]
    fn reduced_cohomology(&self, max_degree: Option<u32>) -> PyResult<PyCohomology> {
        let d = max_degree.unwrap_or_else(|| kernel::default_max_degree(&self.inner));
        let p = kernel::reduced_cohomology(&self.inner, d).map_err(value_err)?;
        Ok(PyCohomology {
            betti: p.betti,
            max_degree: p.max_degree,
            total_dimension: p.total_dimension,
            truncated: p.truncated,
            zero_ring: p.zero_ring,
            relations: strings(&p.basis),
            warnings: p.warnings,
        })
    }

    #[pyo3(signature = (max_oracle_points = oracle::DEFAULT_ORACLE_LIMIT, hk_families = true))]
    fn certify(&self, max_oracle_points: usize, hk_families: bool) -> Vec<PyCertificate> {
        let run = oracle::certify_system_with(&self.inner, CertifyOptions { max_oracle_points, hk_families });
        run.certificates.iter().map(PyCertificate::from).collect()
    }

    fn __repr__(&self) -> String {
        let factors: Vec<String> = self
            .inner
            .factors()
            .iter()
            .map(|f| format!("[{}]", f.values().iter().map(algebra::format_rational).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("MomentSystem({}, threshold={})", factors.join(" x "), self.inner.threshold())
    }
}

type Families = BTreeMap<String, Vec<String>>;

fn labeled(f: &[LabeledPolynomial]) -> Vec<String> {
    f.iter().map(|lp| lp.to_string()).collect()
}

fn subsets(f: &presets_hk::SubsetFamily) -> Vec<String> {
    f.members.iter().map(format_subset).collect()
}

/// Families (i), (ii), (iii) and the long/short subsets.
#[pyfunction]
#[pyo3(signature = (radii, threshold = None))]
fn sphere_families(radii: Vec<Bound<'_, PyAny>>, threshold: Option<Bound<'_, PyAny>>) -> PyResult<Families> {
    let threshold = threshold.as_ref().map(rational).transpose()?.unwrap_or_default();
    let fam = presets_hk::sphere_families(&rationals(&radii)?, &threshold).map_err(value_err)?;
    let norm = presets_hk::hk_normalize(&fam);
    Ok(BTreeMap::from([
        ("long".into(), subsets(&fam.long)),
        ("short".into(), subsets(&fam.short)),
        ("(i)".into(), labeled(&fam.squares)),
        ("(ii)".into(), labeled(&fam.p_family)),
        ("(iii)".into(), labeled(&fam.q_family)),
        ("normalized (ii)".into(), labeled(&norm.p_family)),
        ("normalized (iii)".into(), labeled(&norm.q_family)),
    ]))
}

/// Polygon-space families for side lengths `r_1..r_m`.
#[pyfunction]
fn polygon_families(radii: Vec<Bound<'_, PyAny>>) -> PyResult<Families> {
    let pf = presets_hk::abelian_polygon_families(&rationals(&radii)?).map_err(value_err)?;
    Ok(BTreeMap::from([
        ("L(r_m)".into(), subsets(&pf.long_rm)),
        ("L_m".into(), subsets(&pf.long_m)),
        ("(i)'".into(), labeled(&pf.squares)),
        ("(ii)'".into(), labeled(&pf.p_primed)),
        ("(ii)' completed".into(), labeled(&pf.p_primed_completed)),
        ("(iii)'".into(), labeled(&pf.q_primed)),
        ("(iii)'''".into(), labeled(&pf.q_triple_primed)),
        ("(ii)''".into(), labeled(&pf.p_double_primed)),
        ("(iii)''".into(), labeled(&pf.q_double_primed)),
    ]))
}

/// Writes `p = sum_i (x_i - a_i t) Q_i` and returns the `Q_i`.
#[pyfunction]
fn linear_decompose(p: &PyPolynomial, point: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<PyPolynomial>> {
    let qs = algebra::linear_decompose(&p.inner, &rationals(&point)?).map_err(value_err)?;
    Ok(qs.into_iter().map(|inner| PyPolynomial { inner }).collect())
}

#[pyfunction]
fn vanishing_ideal(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<PyIdeal> {
    let pts = points.iter().map(|p| rationals(p)).collect::<PyResult<Vec<_>>>()?;
    Ok(PyIdeal { inner: groebner::vanishing_ideal(&pts).map_err(value_err)? })
}

/// Runs a CLI command on document text: `(stdout, stderr, exit_code)`.
#[pyfunction]
#[pyo3(signature = (command, document, format = "text"))]
fn run(command: &str, document: &str, format: &str) -> PyResult<(String, String, i32)> {
    let command = match command {
        "classify" => Command::Classify,
        "generators" => Command::Generators,
        "betti" => Command::Betti,
        "families" => Command::Families,
        "certify" => Command::Certify,
        other => return Err(PyValueError::new_err(format!("unknown command {other:?}"))),
    };
    let format = match format {
        "text" => Format::Text,
        "json" => Format::Json,
        other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
    };
    let out = cli::run_text(command, document, format);
    Ok((out.stdout, out.stderr, out.exit_code))
}

#[pymodule]
fn kirwan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyCohomology>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(sphere_families, m)?)?;
    m.add_function(wrap_pyfunction!(polygon_families, m)?)?;
    m.add_function(wrap_pyfunction!(linear_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
