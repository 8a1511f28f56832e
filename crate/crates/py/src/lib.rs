//! Python bindings: grids, sampled fields, spectral operators, weighted
//! norms, kernels, inequality ratios and config runs.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use fracleib::harness::{self, BaseProfile, FamilyKind, Regime};
use fracleib::norms::{self, ExponentTuple, Weight};
use fracleib::spectral::{self, Fractional, GridFunction, Projection};
use fracleib::{cli, kernels, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Precondition(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serialises through the `json` module so reports arrive as plain dicts.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Uniform periodic grid on `[-side/2, side/2)^dim`.
#[pyclass(name = "Grid", frozen)]
struct PyGrid(spectral::Grid);

#[pymethods]
impl PyGrid {
    #[new]
    fn new(dim: usize, side: f64, points: usize) -> PyResult<Self> {
        spectral::Grid::new(dim, side, points).map(PyGrid).map_err(py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn side(&self) -> f64 {
        self.0.side()
    }

    #[getter]
    fn points(&self) -> usize {
        self.0.points()
    }

    #[getter]
    fn spacing(&self) -> f64 {
        self.0.spacing()
    }

    #[getter]
    fn nyquist(&self) -> f64 {
        self.0.nyquist()
    }

    /// Coordinates along one axis.
    fn coordinates(&self) -> Vec<f64> {
        (0..self.0.points()).map(|i| self.0.coordinate(i)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Grid(dim={}, side={}, points={})", self.0.dim(), self.0.side(), self.0.points())
    }
}

/// Complex samples on a grid, row-major with the last axis fastest.
#[pyclass(name = "Field", frozen)]
struct PyField(GridFunction);

#[pymethods]
impl PyField {
    #[new]
    fn new(grid: PyRef<'_, PyGrid>, values: Vec<Complex64>) -> PyResult<Self> {
        GridFunction::from_values(grid.0, values).map(PyField).map_err(py_err)
    }

    #[staticmethod]
    fn random(grid: PyRef<'_, PyGrid>, band: f64, seed: u64) -> Self {
        PyField(spectral::random_band_limited(grid.0, band, seed))
    }

    #[getter]
    fn grid(&self) -> PyGrid {
        PyGrid(*self.0.grid())
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn real(&self) -> Vec<f64> {
        self.0.real_parts()
    }

    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    fn relative_distance(&self, other: PyRef<'_, PyField>) -> f64 {
        self.0.relative_distance(&other.0)
    }

    fn __mul__(&self, other: PyRef<'_, PyField>) -> PyField {
        PyField(self.0.mul(&other.0))
    }

    fn __add__(&self, other: PyRef<'_, PyField>) -> PyField {
        PyField(self.0.add(&other.0))
    }

    fn __sub__(&self, other: PyRef<'_, PyField>) -> PyField {
        PyField(self.0.sub(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.values().len()
    }
}

/// `kind` is one of `bessel`, `riesz`, `bessel_delta` (needs `delta`).
#[pyfunction]
#[pyo3(signature = (field, kind, s, delta=None))]
fn fractional_op(field: PyRef<'_, PyField>, kind: &str, s: f64, delta: Option<f64>) -> PyResult<PyField> {
    let op = match (kind, delta) {
        ("bessel", None) => Fractional::Bessel { s },
        ("riesz", None) => Fractional::Riesz { s },
        ("bessel_delta", Some(delta)) => Fractional::BesselDelta { s, delta },
        _ => return Err(PyValueError::new_err(format!("unknown operator {kind:?} or misplaced delta"))),
    };
    spectral::fractional_op(&field.0, op).map(PyField).map_err(py_err)
}

/// `kind` is one of `band`, `low`, `widened`.
#[pyfunction]
fn lp_project(field: PyRef<'_, PyField>, kind: &str, j: i32) -> PyResult<PyField> {
    let projection = match kind {
        "band" => Projection::Band(j),
        "low" => Projection::Low(j),
        "widened" => Projection::Widened(j),
        _ => return Err(PyValueError::new_err(format!("unknown projection {kind:?}"))),
    };
    spectral::lp_project(&field.0, projection).map(PyField).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (field, p, a, homogeneous=false))]
fn weighted_norm(field: PyRef<'_, PyField>, p: f64, a: f64, homogeneous: bool) -> PyResult<f64> {
    let weight = if homogeneous { Weight::Homogeneous(a) } else { Weight::Japanese(a) };
    norms::weighted_norm_with(&field.0, p, weight).map_err(py_err)
}

/// Returns `(p, a)`.
#[pyfunction]
fn holder_exponents(p1: f64, p2: f64, a1: f64, a2: f64) -> PyResult<(f64, f64)> {
    norms::holder_exponents(p1, p2, a1, a2).map(|t| (t.p, t.a)).map_err(py_err)
}

#[pyfunction]
fn kernel_ks_delta(y: f64, s: f64, delta: f64, n: usize) -> PyResult<f64> {
    kernels::kernel_ks_delta(y, s, delta, n).map(|k| k.value).map_err(py_err)
}

/// `(exponent, intercept, residual)` of a log-log power-law fit.
#[pyfunction]
fn tail_exponent_fit(radii: Vec<f64>, values: Vec<f64>) -> PyResult<(f64, f64, f64)> {
    kernels::tail_exponent_fit(&radii, &values)
        .map(|f| (f.exponent, f.intercept, f.residual))
        .map_err(py_err)
}

/// Weighted Kato-Ponce instance; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (f, g, s, p1, p2, p, a1=0.0, a2=0.0, a=0.0))]
#[allow(clippy::too_many_arguments)]
fn kp_ratio<'py>(
    py: Python<'py>,
    f: PyRef<'py, PyField>,
    g: PyRef<'py, PyField>,
    s: f64,
    p1: f64,
    p2: f64,
    p: f64,
    a1: f64,
    a2: f64,
    a: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let e = ExponentTuple::new(p1, p2, p, a1, a2, a).map_err(py_err)?;
    let report = harness::kp_ratio(&f.0, &g.0, s, &e).map_err(py_err)?;
    to_py(py, &report)
}

/// `kind` is `modulated`, `dilated` (with `base` `low_pass` or `annular`)
/// or `psi_squared`.
#[pyfunction]
#[pyo3(signature = (grid, kind, param, base="low_pass"))]
fn family_generate(grid: PyRef<'_, PyGrid>, kind: &str, param: f64, base: &str) -> PyResult<(PyField, PyField)> {
    let base = match base {
        "low_pass" => BaseProfile::LowPass,
        "annular" => BaseProfile::Annular,
        _ => return Err(PyValueError::new_err(format!("unknown base profile {base:?}"))),
    };
    let kind = match kind {
        "modulated" => FamilyKind::Modulated,
        "dilated" => FamilyKind::Dilated { base },
        "psi_squared" => FamilyKind::PsiSquared,
        _ => return Err(PyValueError::new_err(format!("unknown family {kind:?}"))),
    };
    let (f, g) = harness::family_generate(grid.0, kind, param).map_err(py_err)?;
    Ok((PyField(f), PyField(g)))
}

#[pyfunction]
fn sharpness_classify(s: f64, p: f64, n: usize) -> PyResult<&'static str> {
    Ok(match harness::sharpness_classify(s, p, n).map_err(py_err)? {
        Regime::EvenIntegerException => "even_integer_exception",
        Regime::BoundedExpected => "bounded_expected",
        Regime::DivergentExpected => "divergent_expected",
    })
}

/// Runs a JSON config (the same format as the command-line tool) without
/// writing files and returns the report as a dict.
#[pyfunction]
fn run_config<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let config = cli::RunConfig::parse(text).map_err(py_err)?;
    let report = py.detach(|| cli::execute(&config)).map_err(py_err)?;
    to_py(py, &report)
}

#[pyfunction]
fn run_criterion<'py>(py: Python<'py>, id: u8) -> PyResult<Bound<'py, PyAny>> {
    let outcome = py.detach(|| harness::suite::run_criterion(id)).map_err(py_err)?;
    to_py(py, &outcome)
}

#[pymodule]
fn pyfracleib(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(fractional_op, m)?)?;
    m.add_function(wrap_pyfunction!(lp_project, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_norm, m)?)?;
    m.add_function(wrap_pyfunction!(holder_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_ks_delta, m)?)?;
    m.add_function(wrap_pyfunction!(tail_exponent_fit, m)?)?;
    m.add_function(wrap_pyfunction!(kp_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(family_generate, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_classify, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    m.add_function(wrap_pyfunction!(run_criterion, m)?)?;
    Ok(())
}
