//! Python bindings: `import momlat`.

use momlat_core::algebra::{normal_form_str, verify_symbolic_suite};
use momlat_core::eigen::{self, EigenResult};
use momlat_core::operators::{self, OperatorName};
use momlat_core::{Complex64, GridFunction, MomentumLattice};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: momlat_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Uniform momentum grid `p_j = p0 + j*a`, `j = 0 .. n-1`.
#[pyclass(name = "Lattice", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct PyLattice(MomentumLattice);

#[pymethods]
impl PyLattice {
    #[new]
    fn new(p0: f64, a: f64, n: usize) -> PyResult<Self> {
        MomentumLattice::new(p0, a, n).map(Self).map_err(py_err)
    }

    /// Lattice of an infinite well of width `length`: `p0 = a = hbar*pi/length`.
    #[staticmethod]
    #[pyo3(signature = (length, levels, hbar = 1.0))]
    fn square_well(length: f64, levels: usize, hbar: f64) -> PyResult<Self> {
        MomentumLattice::square_well(length, levels, hbar).map(Self).map_err(py_err)
    }

    #[getter]
    fn p0(&self) -> f64 {
        self.0.p0()
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.spacing()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n_points()
    }

    fn momenta(&self) -> Vec<f64> {
        self.0.momenta().collect()
    }

    fn __len__(&self) -> usize {
        self.0.n_points()
    }

    fn __repr__(&self) -> String {
        format!("Lattice(p0={}, a={}, n={})", self.0.p0(), self.0.spacing(), self.0.n_points())
    }
}

fn grid(lattice: MomentumLattice, values: Vec<Complex64>) -> PyResult<GridFunction> {
    GridFunction::new(lattice, values).map_err(py_err)
}

/// Dense matrix of a named operator (`A`, `Abar`, `D`, `Dbar`, `P`, `X`, `Q`, `H`, `I`) or expression.
#[pyfunction]
fn operator(lattice: &PyLattice, expr: &str) -> PyResult<Vec<Vec<Complex64>>> {
    let m = match expr.parse::<OperatorName>() {
        Ok(name) => operators::build_operator(lattice.0, name),
        Err(_) => operators::evaluate_str(expr, lattice.0).map_err(py_err)?,
    };
    let e = m.entries();
    Ok((0..m.dim()).map(|j| (0..m.dim()).map(|k| e[(j, k)]).collect()).collect())
}

/// Applies an operator expression to grid values.
#[pyfunction]
fn apply(lattice: &PyLattice, expr: &str, values: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
    let m = operators::evaluate_str(expr, lattice.0).map_err(py_err)?;
    let out = operators::apply(&m, &grid(lattice.0, values)?).map_err(py_err)?;
    Ok(out.into_values())
}

/// `a * sum f_j`.
#[pyfunction]
fn a_integral(lattice: &PyLattice, values: Vec<Complex64>) -> PyResult<Complex64> {
    Ok(momlat_core::lattice::a_integral(&grid(lattice.0, values)?))
}

/// `a * sum conj(f_j) g_j`.
#[pyfunction]
fn inner_product(lattice: &PyLattice, f: Vec<Complex64>, g: Vec<Complex64>) -> PyResult<Complex64> {
    momlat_core::lattice::inner_product(&grid(lattice.0, f)?, &grid(lattice.0, g)?).map_err(py_err)
}

/// Normal form of an expression as text, and whether it is zero.
#[pyfunction]
fn check(expr: &str) -> PyResult<(String, bool)> {
    let nf = normal_form_str(expr).map_err(py_err)?;
    Ok((nf.to_string(), nf.is_zero()))
}

/// `(identity, zero, normal_form_term_count)` for every built-in identity.
#[pyfunction]
fn verify_symbolic() -> Vec<(String, bool, usize)> {
    verify_symbolic_suite().into_iter().map(|c| (c.identity, c.zero, c.normal_form_term_count)).collect()
}

/// `(identity, margin, max_interior_residual)` on `lattice`.
#[pyfunction]
fn verify_numeric(lattice: &PyLattice) -> PyResult<Vec<(String, usize, f64)>> {
    Ok(operators::verify_identity_suite(lattice.0)
        .map_err(py_err)?
        .into_iter()
        .map(|r| (r.identity_name, r.margin_rows, r.max_interior_residual))
        .collect())
}

#[pyfunction]
fn alpha(x: f64, a: f64) -> PyResult<Complex64> {
    eigen::alpha(x, a).map(|v| v.alpha).map_err(py_err)
}

fn solve(lattice: &PyLattice, x: f64, phi0: Complex64, method: &str) -> PyResult<EigenResult> {
    match method {
        "closed_form" => eigen::eigenvector_closed_form(lattice.0, x, phi0),
        "recurrence" => eigen::eigenvector_recurrence(lattice.0, x, phi0),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
    .map_err(py_err)
}

/// Unnormalized eigenvector of `X` with eigenvalue `x`.
#[pyfunction]
#[pyo3(signature = (lattice, x, phi0 = Complex64::new(1.0, 0.0), method = "closed_form"))]
fn eigenvector(lattice: &PyLattice, x: f64, phi0: Complex64, method: &str) -> PyResult<Vec<Complex64>> {
    Ok(solve(lattice, x, phi0, method)?.phi.into_values())
}

/// Scale `s > 0` making `s * phi` unit norm, from the explicit sum.
#[pyfunction]
#[pyo3(signature = (lattice, x, phi0 = Complex64::new(1.0, 0.0), method = "closed_form"))]
fn normalization_direct(lattice: &PyLattice, x: f64, phi0: Complex64, method: &str) -> PyResult<f64> {
    eigen::normalization_direct(&solve(lattice, x, phi0, method)?).map_err(py_err)
}

/// `|phi(p0)|` of the unit eigenvector on `n` points, from the closed-form sum.
#[pyfunction]
fn normalization_closed_form(x: f64, a: f64, n: usize) -> PyResult<f64> {
    eigen::normalization_closed_form(x, a, n).map_err(py_err)
}

/// Ascending eigenvalues of the truncated `X`.
#[pyfunction]
fn spectrum(lattice: &PyLattice) -> Vec<f64> {
    eigen::truncated_spectrum(lattice.0)
}

/// `([(a, r), ...], slope)` for the Gaussian on `window`.
#[pyfunction]
#[pyo3(signature = (spacings, window = (-8.0, 8.0)))]
fn continuum_scan(spacings: Vec<f64>, window: (f64, f64)) -> PyResult<(Vec<(f64, f64)>, f64)> {
    let table = operators::continuum_scan(&spacings, operators::gaussian, window).map_err(py_err)?;
    Ok((table.rows.iter().map(|r| (r.a, r.r)).collect(), table.slope))
}

#[pymodule]
fn momlat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(operator, m)?)?;
    m.add_function(wrap_pyfunction!(apply, m)?)?;
    m.add_function(wrap_pyfunction!(a_integral, m)?)?;
    m.add_function(wrap_pyfunction!(inner_product, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_symbolic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvector, m)?)?;
    m.add_function(wrap_pyfunction!(normalization_direct, m)?)?;
    m.add_function(wrap_pyfunction!(normalization_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(continuum_scan, m)?)?;
    Ok(())
}
