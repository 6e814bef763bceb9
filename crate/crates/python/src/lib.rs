//! Python bindings. Reports come back as plain dicts (the same structure as
//! the CLI's JSON output, at full precision).

use ambarzumian::classify::{self, SystemChoice};
use ambarzumian::matrix;
use ambarzumian::system::{self, CaseSpec};
use ambarzumian::{Error, SolverConfig as CoreConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn system_choice(name: &str) -> PyResult<SystemChoice> {
    match name {
        "subst" => Ok(SystemChoice::Subst),
        "coeff" => Ok(SystemChoice::Coeff),
        "both" => Ok(SystemChoice::Both),
        other => Err(PyValueError::new_err(format!(
            "system must be 'subst', 'coeff' or 'both', got {other:?}"
        ))),
    }
}

/// Solver settings for sweeps and single cases.
#[pyclass(name = "SolverConfig", from_py_object)]
#[derive(Clone)]
struct PySolverConfig {
    inner: CoreConfig,
}

#[pymethods]
impl PySolverConfig {
    #[new]
    #[pyo3(signature = (*, bounds=None, starts=None, max_iter=None, step_tol=None, residual_tol=None, dedup_radius=None, seed=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        bounds: Option<Vec<(f64, f64)>>,
        starts: Option<usize>,
        max_iter: Option<usize>,
        step_tol: Option<f64>,
        residual_tol: Option<f64>,
        dedup_radius: Option<f64>,
        seed: Option<u64>,
    ) -> PyResult<Self> {
        let mut c = CoreConfig::default();
        if let Some(b) = bounds {
            c.bounds = b.into_iter().map(|(lo, hi)| [lo, hi]).collect();
        }
        c.starts = starts.unwrap_or(c.starts);
        c.max_iter = max_iter.unwrap_or(c.max_iter);
        c.step_tol = step_tol.unwrap_or(c.step_tol);
        c.residual_tol = residual_tol.unwrap_or(c.residual_tol);
        c.dedup_radius = dedup_radius.unwrap_or(c.dedup_radius);
        c.seed = seed.unwrap_or(c.seed);
        c.validate().map_err(err)?;
        Ok(Self { inner: c })
    }

    /// Parse `key=value` lines on top of the defaults.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = CoreConfig::parse_key_values(text, CoreConfig::default()).map_err(err)?;
        inner.validate().map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn bounds(&self) -> Vec<(f64, f64)> {
        self.inner.bounds.iter().map(|b| (b[0], b[1])).collect()
    }

    #[getter]
    fn starts(&self) -> usize {
        self.inner.starts
    }

    #[getter]
    fn max_iter(&self) -> usize {
        self.inner.max_iter
    }

    #[getter]
    fn step_tol(&self) -> f64 {
        self.inner.step_tol
    }

    #[getter]
    fn residual_tol(&self) -> f64 {
        self.inner.residual_tol
    }

    #[getter]
    fn dedup_radius(&self) -> f64 {
        self.inner.dedup_radius
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    fn to_key_values(&self) -> String {
        self.inner.to_key_values()
    }

    fn __repr__(&self) -> String {
        format!(
            "SolverConfig(starts={}, seed={}, max_iter={}, residual_tol={:e})",
            self.inner.starts, self.inner.seed, self.inner.max_iter, self.inner.residual_tol
        )
    }
}

/// A choice of fixed ordered eigenvalue positions of `F_n`.
#[pyclass(name = "Case", frozen, from_py_object)]
#[derive(Clone)]
struct PyCase {
    inner: CaseSpec,
}

#[pymethods]
impl PyCase {
    #[new]
    fn new(n: usize, m: usize, positions: Vec<usize>) -> PyResult<Self> {
        CaseSpec::new(n, m, &positions).map(|inner| Self { inner }).map_err(err)
    }

    /// Parse the text form, e.g. `"n=5 m=3 fix 1,3,4"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn positions(&self) -> Vec<usize> {
        self.inner.positions().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn mirror(&self) -> Self {
        Self {
            inner: self.inner.mirror(),
        }
    }

    fn is_consecutive(&self) -> bool {
        self.inner.is_consecutive()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Case({:?})", self.inner.to_string())
    }
}

/// Real symmetric tridiagonal matrix with positive off-diagonal.
#[pyclass(name = "JacobiMatrix", frozen)]
struct PyJacobiMatrix {
    inner: matrix::JacobiMatrix,
}

#[pymethods]
impl PyJacobiMatrix {
    #[new]
    fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> PyResult<Self> {
        matrix::JacobiMatrix::new(diag, offdiag)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    /// The free matrix `F_n`.
    #[staticmethod]
    fn free(n: usize) -> PyResult<Self> {
        matrix::free_matrix(n).map(|inner| Self { inner }).map_err(err)
    }

    /// `F_n` with its first `len(b)` diagonal entries replaced by `b`.
    #[staticmethod]
    fn schrodinger(n: usize, b: Vec<f64>) -> PyResult<Self> {
        matrix::schrodinger_matrix(n, &b)
            .map(|inner| Self { inner })
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn diag(&self) -> Vec<f64> {
        self.inner.diag().to_vec()
    }

    #[getter]
    fn offdiag(&self) -> Vec<f64> {
        self.inner.offdiag().to_vec()
    }

    fn trace(&self) -> f64 {
        self.inner.trace()
    }

    fn to_dense(&self) -> Vec<Vec<f64>> {
        self.inner.to_dense()
    }

    /// Ascending eigenvalues.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        matrix::eigenvalues(&self.inner)
            .map(|s| s.into_vec())
            .map_err(err)
    }

    /// `det(J - x I)`.
    fn charpoly(&self, x: f64) -> f64 {
        matrix::charpoly_eval(&self.inner, x)
    }

    /// Number of eigenvalues strictly below `x`.
    fn sturm_count(&self, x: f64) -> usize {
        matrix::sturm_count(&self.inner, x)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "JacobiMatrix(diag={:?}, offdiag={:?})",
            self.inner.diag(),
            self.inner.offdiag()
        )
    }
}

fn config_or_default(config: Option<PySolverConfig>) -> CoreConfig {
    config.map(|c| c.inner).unwrap_or_default()
}

/// Closed-form ascending spectrum of `F_n`.
#[pyfunction]
fn free_spectrum(n: usize) -> PyResult<Vec<f64>> {
    matrix::free_spectrum(n).map(|s| s.into_vec()).map_err(err)
}

/// Canonical text of `det(S_{n,m} - L I)`.
#[pyfunction]
fn symbolic_charpoly(n: usize, m: usize) -> PyResult<String> {
    system::symbolic_charpoly::<ambarzumian::QuadExtRational>(n, m)
        .map(|p| p.to_string())
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (case, config=None, system="subst"))]
fn classify_case<'py>(
    py: Python<'py>,
    case: PyCase,
    config: Option<PySolverConfig>,
    system: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let choice = system_choice(system)?;
    let cfg = config_or_default(config);
    let report = py
        .detach(|| classify::classify_case(&case.inner, &cfg, choice))
        .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(signature = (n, m, config=None, system="subst"))]
fn sweep<'py>(
    py: Python<'py>,
    n: usize,
    m: usize,
    config: Option<PySolverConfig>,
    system: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let choice = system_choice(system)?;
    let cfg = config_or_default(config);
    let report = py.detach(|| classify::sweep(n, m, &cfg, choice)).map_err(err)?;
    to_py(py, &report)
}

/// Rebuild `S_{n,m}` from `b` and check each fixed ordered eigenvalue.
#[pyfunction]
#[pyo3(signature = (b, case, tol=1e-9))]
fn verify_candidate<'py>(py: Python<'py>, b: Vec<f64>, case: PyCase, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let rec = classify::verify_candidate(&b, &case.inner, tol).map_err(err)?;
    to_py(py, &rec)
}

/// Polish the (5,3) counterexample and run every certificate.
#[pyfunction]
fn certificate_checks(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let rep = py.detach(classify::certificate_checks).map_err(err)?;
    to_py(py, &rep)
}

/// Isolated real roots, coefficients highest degree first.
#[pyfunction]
fn real_roots(coeffs: Vec<f64>) -> PyResult<Vec<f64>> {
    ambarzumian::real_roots_univariate(&coeffs).map_err(err)
}

#[pymodule]
fn ambarzumian_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolverConfig>()?;
    m.add_class::<PyCase>()?;
    m.add_class::<PyJacobiMatrix>()?;
    m.add_function(wrap_pyfunction!(free_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(symbolic_charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(classify_case, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_checks, m)?)?;
    m.add_function(wrap_pyfunction!(real_roots, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
