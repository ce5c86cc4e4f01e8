//! Python bindings: fields, Cartan matrices, finite groups, the lattice
//! constructions with their certificates, and the report-producing runner.

use std::sync::Arc;

use kmlattice::algebra::{self, AiCase, FieldCtx, FiniteActionGroup, DEFAULT_ORDER_CAP};
use kmlattice::cli::{execute, Command, Report, RunConfig};
use kmlattice::cog::{presentation_over_cone, CoveringCertificate, Scwol};
use kmlattice::constructions::{self as cons, DEFAULT_BUDGET};
use kmlattice::coxeter::{self, format_gcm, parse_gcm, subset_elements, subset_from, FreeProduct, Gcm, Subset};
use kmlattice::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(pykmlattice, KmError, PyException);
create_exception!(pykmlattice, HypothesisRejected, KmError);
create_exception!(pykmlattice, BudgetExhausted, KmError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Hypothesis(m) => HypothesisRejected::new_err(m),
        e @ (Error::BudgetExhausted(_) | Error::CapExceeded { .. }) => BudgetExhausted::new_err(e.to_string()),
        e => KmError::new_err(e.to_string()),
    }
}

fn make_field(p: u64, h: u32) -> PyResult<Arc<FieldCtx>> {
    FieldCtx::new(p, h).map(Arc::new).map_err(err)
}

fn one_based(s: Subset) -> Vec<usize> {
    subset_elements(s).into_iter().map(|i| i + 1).collect()
}

fn from_one_based(v: &[usize]) -> PyResult<Subset> {
    if v.iter().any(|&i| i == 0 || i > 32) {
        return Err(PyValueError::new_err("generators are numbered from 1"));
    }
    Ok(subset_from(&v.iter().map(|i| i - 1).collect::<Vec<_>>()))
}

/// The finite field with `p^h` elements; elements are integers `0..q`.
#[pyclass(name = "Field", frozen)]
struct PyField(Arc<FieldCtx>);

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, h = 1))]
    fn new(p: u64, h: u32) -> PyResult<Self> {
        make_field(p, h).map(PyField)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn h(&self) -> u32 {
        self.0.h()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    fn check(&self, x: u32) -> PyResult<u32> {
        if x < self.0.q() {
            Ok(x)
        } else {
            Err(PyValueError::new_err(format!("{x} is not an element of F_{}", self.0.q())))
        }
    }

    fn add(&self, x: u32, y: u32) -> PyResult<u32> {
        Ok(self.0.add(self.check(x)?, self.check(y)?))
    }

    fn mul(&self, x: u32, y: u32) -> PyResult<u32> {
        Ok(self.0.mul(self.check(x)?, self.check(y)?))
    }

    fn neg(&self, x: u32) -> PyResult<u32> {
        Ok(self.0.neg(self.check(x)?))
    }

    fn inv(&self, x: u32) -> PyResult<u32> {
        self.0.inv(self.check(x)?).ok_or_else(|| PyValueError::new_err("zero has no inverse"))
    }

    fn pow(&self, x: u32, e: i64) -> PyResult<u32> {
        Ok(self.0.pow(self.check(x)?, e))
    }

    fn generator(&self) -> u32 {
        self.0.generator()
    }

    fn modulus(&self) -> Vec<u32> {
        self.0.modulus().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.0.q())
    }
}

/// A generalised Cartan matrix, given as `"2 -2; -2 2"` or a list of rows.
#[pyclass(name = "CartanMatrix", frozen)]
struct PyCartan(Gcm);

#[pymethods]
impl PyCartan {
    #[new]
    fn new(rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        let gcm = if let Ok(text) = rows.extract::<String>() {
            parse_gcm(&text).map_err(err)?
        } else {
            let rows: Vec<Vec<i64>> = rows.extract()?;
            Gcm::new(rows).map_err(|e| PyValueError::new_err(e.to_string()))?
        };
        Ok(PyCartan(gcm))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows()
    }

    /// Coxeter matrix with `None` for infinite entries.
    fn coxeter_matrix(&self) -> Vec<Vec<Option<u32>>> {
        let m = self.0.coxeter_matrix();
        (0..m.n()).map(|i| (0..m.n()).map(|j| (!m.is_infinite(i, j)).then(|| m.m(i, j))).collect()).collect()
    }

    fn is_right_angled(&self) -> bool {
        self.0.coxeter_matrix().is_right_angled()
    }

    fn is_weyl_infinite(&self) -> bool {
        self.0.coxeter_matrix().is_weyl_infinite()
    }

    fn km_condition(&self) -> bool {
        self.0.km_condition().holds
    }

    fn spherical_subsets(&self) -> Vec<Vec<usize>> {
        coxeter::spherical_subsets(&self.0.coxeter_matrix()).subsets().iter().map(|&s| one_based(s)).collect()
    }

    fn nerve_edges(&self) -> Vec<(usize, usize)> {
        coxeter::nerve_edges(&self.0.coxeter_matrix()).into_iter().map(|(i, j)| (i + 1, j + 1)).collect()
    }

    /// Components of a free-product decomposition, or `None` if there is none.
    fn free_product(&self) -> Option<Vec<Vec<usize>>> {
        match coxeter::free_product_decomposition(&self.0.coxeter_matrix()) {
            FreeProduct::Decomposition(f) => Some(f.into_iter().map(one_based).collect()),
            _ => None,
        }
    }

    /// Coefficients of the Poincare polynomial of a spherical subset.
    fn poincare(&self, subset: Vec<usize>) -> PyResult<Vec<u64>> {
        let p = coxeter::poincare_polynomial(&self.0.coxeter_matrix(), from_one_based(&subset)?).map_err(err)?;
        Ok(p.0)
    }

    /// Number of `small`-residues in a `big`-residue over `F_q`.
    fn index(&self, big: Vec<usize>, small: Vec<usize>, q: u64) -> PyResult<u128> {
        let m = self.0.coxeter_matrix();
        coxeter::index_ratio(&m, from_one_based(&big)?, from_one_based(&small)?, q).map_err(err)
    }

    fn __str__(&self) -> String {
        format_gcm(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("CartanMatrix(\"{}\")", format_gcm(&self.0))
    }
}

/// A finite permutation group; points `0..points` are the geometric ones.
#[pyclass(name = "Group", frozen)]
struct PyGroup(FiniteActionGroup);

#[pymethods]
impl PyGroup {
    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn points(&self) -> usize {
        self.0.points()
    }

    fn element(&self, i: usize) -> PyResult<Vec<u32>> {
        if i >= self.0.order() {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.0.element(i).images().to_vec())
    }

    fn contains(&self, images: Vec<u32>) -> bool {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        let is_perm = sorted.iter().enumerate().all(|(i, &x)| x as usize == i);
        is_perm && images.len() == self.0.degree() && self.0.contains(&algebra::Perm::new(images))
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn is_cyclic(&self) -> bool {
        self.0.is_cyclic()
    }

    /// Orbits on the geometric points.
    fn orbits(&self) -> Vec<Vec<usize>> {
        self.0.orbits_on(&(0..self.0.points()).collect::<Vec<_>>())
    }

    fn point_stabilizer(&self, x: usize) -> PyResult<PyGroup> {
        if x >= self.0.degree() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(PyGroup(self.0.point_stabilizer(x)))
    }

    fn index_of_subgroup(&self, sub: &PyGroup) -> PyResult<usize> {
        self.0.index_of_subgroup(&sub.0).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, points={})", self.0.order(), self.0.points())
    }
}

#[pyfunction]
#[pyo3(signature = (p, h = 1))]
fn nonsplit_torus(p: u64, h: u32) -> PyResult<PyGroup> {
    algebra::nonsplit_torus(make_field(p, h)?).map(PyGroup).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, h = 1))]
fn torus_normalizer(p: u64, h: u32) -> PyResult<PyGroup> {
    algebra::torus_normalizer(make_field(p, h)?).map(PyGroup).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, h = 1))]
fn sl2_group(p: u64, h: u32) -> PyResult<PyGroup> {
    algebra::sl2_group(make_field(p, h)?).map(PyGroup).map_err(err)
}

/// `"p2"`, `"q3mod4"` or `"q1mod4"`.
#[pyfunction]
#[pyo3(signature = (p, h = 1))]
fn ai_case(p: u64, h: u32) -> PyResult<&'static str> {
    Ok(AiCase::for_field(&*make_field(p, h)?).name())
}

/// The group `A_i` for generator `i` (numbered from 1).
#[pyfunction]
#[pyo3(signature = (cartan, i, p, h = 1))]
fn build_ai(cartan: &PyCartan, i: usize, p: u64, h: u32) -> PyResult<PyGroup> {
    if i == 0 || i > cartan.0.n() {
        return Err(PyValueError::new_err("generator out of range"));
    }
    let f = make_field(p, h)?;
    let case = AiCase::for_field(&f);
    algebra::build_ai(case, f, &cartan.0, i - 1).map(PyGroup).map_err(err)
}

#[pyclass(name = "Certificate", frozen, get_all)]
struct PyCertificate {
    passed: bool,
    /// `(sigma, b, fibres, domain, image, target_index, bijective)` per check.
    tallies: Vec<(usize, usize, usize, usize, usize, usize, bool)>,
    witnesses: Vec<String>,
}

impl PyCertificate {
    fn new(c: &CoveringCertificate, src: &Scwol, dst: &Scwol) -> Self {
        PyCertificate {
            passed: c.passed(),
            tallies: c
                .tallies
                .iter()
                .map(|t| (t.sigma, t.b, t.fibres, t.domain, t.image, t.target_index, t.bijective))
                .collect(),
            witnesses: c.witnesses.iter().map(|w| w.describe(src, dst)).collect(),
        }
    }
}

#[pymethods]
impl PyCertificate {
    fn __repr__(&self) -> String {
        format!("Certificate(passed={}, checks={})", self.passed, self.tallies.len())
    }
}

/// Summary of a constructed lattice.
#[pyclass(name = "Lattice", frozen, get_all)]
struct PyLattice {
    kind: String,
    /// Sum of `1/|G_sigma|` over chamber vertices, as a fraction string.
    covolume: Option<String>,
    certificate: Option<Py<PyCertificate>>,
    presentation: Option<String>,
    free_rank: Option<i128>,
    genus: Option<u64>,
}

#[pymethods]
impl PyLattice {
    fn __repr__(&self) -> String {
        format!("Lattice(kind={}, covolume={:?}, free_rank={:?})", self.kind, self.covolume, self.free_rank)
    }
}

fn lattice(py: Python<'_>, kind: &str, cert: Option<PyCertificate>) -> PyResult<PyLattice> {
    Ok(PyLattice {
        kind: kind.to_string(),
        covolume: None,
        certificate: cert.map(|c| Py::new(py, c)).transpose()?,
        presentation: None,
        free_rank: None,
        genus: None,
    })
}

#[pyfunction]
#[pyo3(signature = (cartan, p, h = 1, cap = DEFAULT_ORDER_CAP))]
fn ra_chamber_transitive(py: Python<'_>, cartan: &PyCartan, p: u64, h: u32, cap: usize) -> PyResult<PyLattice> {
    let r = cons::build_ra_chamber_transitive(&cartan.0, make_field(p, h)?, cap).map_err(err)?;
    let cert = PyCertificate::new(&r.certificate, r.complex.scwol(), kmlattice::cog::TargetComplex::scwol(&r.target));
    let mut l = lattice(py, "ra_chamber_transitive", Some(cert))?;
    l.covolume = Some(r.complex.covolume().to_string());
    l.presentation = Some(presentation_over_cone(&r.complex).map_err(err)?.to_string());
    Ok(l)
}

#[pyfunction]
#[pyo3(signature = (cartan, p, h = 1, cap = DEFAULT_ORDER_CAP))]
fn ra_two_orbit(py: Python<'_>, cartan: &PyCartan, p: u64, h: u32, cap: usize) -> PyResult<PyLattice> {
    let r = cons::build_ra_two_orbit(&cartan.0, make_field(p, h)?, cap).map_err(err)?;
    let cert = PyCertificate::new(&r.certificate, r.complex.scwol(), kmlattice::cog::TargetComplex::scwol(&r.target));
    let mut l = lattice(py, "ra_two_orbit", Some(cert))?;
    l.covolume = Some(r.complex.covolume().to_string());
    Ok(l)
}

#[pyfunction]
#[pyo3(signature = (cartan, p, h = 1, faces = None, genus = None, budget = DEFAULT_BUDGET, cap = DEFAULT_ORDER_CAP))]
#[allow(clippy::too_many_arguments)]
fn bourdon_surface(
    py: Python<'_>,
    cartan: &PyCartan,
    p: u64,
    h: u32,
    faces: Option<usize>,
    genus: Option<u64>,
    budget: u64,
    cap: usize,
) -> PyResult<PyLattice> {
    let b = cons::build_bourdon_surface(&cartan.0, make_field(p, h)?, faces, genus, budget, cap).map_err(err)?;
    let cert = PyCertificate::new(&b.certificate, b.complex.scwol(), kmlattice::cog::TargetComplex::scwol(&b.target));
    let mut l = lattice(py, "bourdon_surface", Some(cert))?;
    l.covolume = Some(b.complex.covolume().to_string());
    l.genus = Some(b.genus);
    Ok(l)
}

/// Free-product lattice; without a residue geometry for some factor only the
/// counts are produced and `certificate` is `None`.
#[pyfunction]
#[pyo3(signature = (cartan, p, h = 1, partition = None, cap = DEFAULT_ORDER_CAP))]
fn free_product(
    py: Python<'_>,
    cartan: &PyCartan,
    p: u64,
    h: u32,
    partition: Option<Vec<Vec<usize>>>,
    cap: usize,
) -> PyResult<PyLattice> {
    let partition = partition.map(|v| v.iter().map(|s| from_one_based(s)).collect::<PyResult<Vec<_>>>()).transpose()?;
    let o = cons::build_fp(&cartan.0, make_field(p, h)?, partition.as_deref(), cap).map_err(err)?;
    let cert = o.geometry.as_ref().map(|g| PyCertificate::new(&g.certificate, &g.scwol, &g.target));
    let mut l = lattice(py, "fp_free", cert)?;
    l.free_rank = Some(o.geometry.as_ref().map_or(o.formula_rank, |g| g.free_rank as i128));
    Ok(l)
}

/// Report produced by [`run`]; `str()` gives the text written to `report.txt`.
#[pyclass(name = "RunResult", frozen)]
struct PyRunResult {
    report: Report,
    #[pyo3(get)]
    status: &'static str,
    #[pyo3(get)]
    exit_code: i32,
}

#[pymethods]
impl PyRunResult {
    fn get(&self, section: &str, key: &str) -> Option<String> {
        self.report.get(section, key).map(str::to_string)
    }

    fn sections(&self) -> Vec<(String, Vec<(String, String)>)> {
        self.report.sections().to_vec()
    }

    fn __str__(&self) -> String {
        self.report.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RunResult(status={}, exit_code={})", self.status, self.exit_code)
    }
}

/// Runs `check`, `build`, `verify` or `print-presentation` on a configuration text.
#[pyfunction]
fn run(command: &str, config: &str) -> PyResult<PyRunResult> {
    let cmd = match command {
        "check" => Command::Check,
        "build" => Command::Build,
        "verify" => Command::Verify,
        "print-presentation" => Command::PrintPresentation,
        _ => return Err(PyValueError::new_err(format!("unknown command `{command}`"))),
    };
    let cfg = RunConfig::parse(config).map_err(err)?;
    let o = execute(cmd, &cfg);
    Ok(PyRunResult { report: o.report, status: o.status.name(), exit_code: o.status.exit_code() })
}

#[pymodule]
fn pykmlattice(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("KmError", py.get_type::<KmError>())?;
    m.add("HypothesisRejected", py.get_type::<HypothesisRejected>())?;
    m.add("BudgetExhausted", py.get_type::<BudgetExhausted>())?;
    m.add_class::<PyField>()?;
    m.add_class::<PyCartan>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyLattice>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(nonsplit_torus, m)?)?;
    m.add_function(wrap_pyfunction!(torus_normalizer, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_group, m)?)?;
    m.add_function(wrap_pyfunction!(ai_case, m)?)?;
    m.add_function(wrap_pyfunction!(build_ai, m)?)?;
    m.add_function(wrap_pyfunction!(ra_chamber_transitive, m)?)?;
    m.add_function(wrap_pyfunction!(ra_two_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(bourdon_surface, m)?)?;
    m.add_function(wrap_pyfunction!(free_product, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
