//! Python bindings: `import nlcs`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nlcs::analysis::{self, GridSpec, LobeSettings};
use nlcs::states::{self, truncation_for, AUTO_EPS};
use nlcs::{specfun, verify, waveguide};

fn to_py(e: nlcs::Error) -> PyErr {
    match e {
        nlcs::Error::Domain(_) => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

/// Amplitudes c_0..c_N in the Fock basis, with how they were built.
#[pyclass(name = "FockState", module = "nlcs", frozen)]
struct PyFockState {
    inner: states::FockState,
}

#[pymethods]
impl PyFockState {
    #[new]
    fn new(coeffs: Vec<Complex64>) -> PyResult<Self> {
        states::FockState::from_coeffs(coeffs)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn number(n: usize, truncation: usize) -> PyResult<Self> {
        states::FockState::number(n, truncation)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn recipe(&self) -> &'static str {
        self.inner.recipe().as_str()
    }

    #[getter]
    fn param(&self) -> f64 {
        self.inner.param()
    }

    #[getter]
    fn initial_m(&self) -> Option<usize> {
        self.inner.initial_m()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    #[getter]
    fn tail_bound(&self) -> f64 {
        self.inner.tail_bound()
    }

    fn norm_sqr(&self) -> f64 {
        self.inner.norm_sqr()
    }

    /// ⟨self|other⟩ over the common part of the two bases.
    fn inner(&self, other: &PyFockState) -> Complex64 {
        self.inner.inner(&other.inner)
    }

    fn with_global_phase(&self, phi: f64) -> Self {
        Self {
            inner: self.inner.with_global_phase(phi),
        }
    }

    fn apply_v(&self) -> Self {
        Self {
            inner: states::apply_v(&self.inner),
        }
    }

    fn apply_vdag(&self) -> Self {
        Self {
            inner: states::apply_vdag(&self.inner),
        }
    }

    /// P(n) = |c_n|².
    fn probabilities(&self) -> Vec<f64> {
        analysis::photon_distribution(&self.inner).probs
    }

    fn mandel_q(&self) -> PyResult<f64> {
        analysis::mandel_q(&self.inner).map_err(to_py)
    }

    fn husimi(&self, alpha: Complex64) -> f64 {
        analysis::husimi_q(&self.inner, alpha)
    }

    /// Number of angular lobes of the Husimi function on its ring of largest mass.
    fn lobes(&self) -> usize {
        analysis::angular_lobes(&self.inner, &LobeSettings::default()).count()
    }

    fn __len__(&self) -> usize {
        self.inner.coeffs().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FockState(recipe='{}', param={}, truncation={}, tail_bound={:.3e})",
            self.inner.recipe(),
            self.inner.param(),
            self.inner.truncation(),
            self.inner.tail_bound()
        )
    }
}

fn wrap(r: nlcs::Result<states::FockState>) -> PyResult<PyFockState> {
    r.map(|inner| PyFockState { inner }).map_err(to_py)
}

/// c_n = c_0 J_n(2x).
#[pyfunction]
#[pyo3(signature = (x, truncation=None))]
fn sg_displaced_approx(x: f64, truncation: Option<usize>) -> PyResult<PyFockState> {
    wrap(states::sg_displaced_approx(x, truncation))
}

/// c_n = (n+1) J_{n+1}(2x) / x.
#[pyfunction]
#[pyo3(signature = (x, truncation=None))]
fn sg_vacuum_displaced(x: f64, truncation: Option<usize>) -> PyResult<PyFockState> {
    wrap(states::sg_vacuum_displaced(x, truncation))
}

/// c_n = i^{n−m} J_{n−m}(2τ) + i^{n+m} J_{n+m+2}(2τ).
#[pyfunction]
#[pyo3(signature = (m, tau, truncation=None))]
fn sg_evolved(m: usize, tau: f64, truncation: Option<usize>) -> PyResult<PyFockState> {
    wrap(states::sg_evolved(m, tau, truncation))
}

/// Direct propagation of |m⟩ under H = η(V + V†).
#[pyfunction]
#[pyo3(signature = (m, t, eta=1.0, truncation=None))]
fn evolve_exact_oracle(
    py: Python<'_>,
    m: usize,
    t: f64,
    eta: f64,
    truncation: Option<usize>,
) -> PyResult<PyFockState> {
    let n = truncation.unwrap_or_else(|| truncation_for((eta * t).abs() + m as f64, AUTO_EPS) + 32);
    wrap(py.detach(|| states::evolve_exact_oracle(m, t, eta, n)))
}

#[pyfunction]
#[pyo3(name = "truncation_for", signature = (x, eps=AUTO_EPS))]
fn py_truncation_for(x: f64, eps: f64) -> PyResult<usize> {
    if !(eps > 0.0) {
        return Err(PyValueError::new_err("eps must be positive"));
    }
    Ok(truncation_for(x, eps))
}

#[pyfunction]
fn bessel_j(n: i64, x: f64) -> PyResult<f64> {
    specfun::bessel_j(n, x).map_err(to_py)
}

/// Σ_{k≥1} k^{2ν} J_k²(x) for ν ∈ {1, 2, 3}.
#[pyfunction]
fn bessel_even_moment(nu: u32, x: f64) -> PyResult<f64> {
    specfun::bessel_even_moment(nu, x).map_err(to_py)
}

#[pyfunction]
fn bell_complete(n: usize, xs: Vec<Complex64>) -> PyResult<Complex64> {
    specfun::bell_complete(n, &xs).map_err(to_py)
}

#[pyfunction]
fn mandel_q_closed(x: f64) -> PyResult<f64> {
    analysis::mandel_q_closed(x).map_err(to_py)
}

/// Scan of Q(τ); returns a dict with `tau`, `q`, `tau_star`, `q_star`, `zero_crossing`.
#[pyfunction]
#[pyo3(signature = (tau_min, tau_max, steps=400, m=0))]
fn mandel_scan<'py>(
    py: Python<'py>,
    tau_min: f64,
    tau_max: f64,
    steps: usize,
    m: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let scan = py
        .detach(|| analysis::mandel_scan(tau_min, tau_max, steps, m))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    let (taus, qs): (Vec<f64>, Vec<f64>) = scan.samples.iter().copied().unzip();
    d.set_item("tau", taus)?;
    d.set_item("q", qs)?;
    d.set_item("tau_star", scan.minimum.0)?;
    d.set_item("q_star", scan.minimum.1)?;
    d.set_item("zero_crossing", scan.zero_crossing)?;
    Ok(d)
}

/// Husimi Q on a grid, as rows indexed by the real part.
#[pyfunction]
#[pyo3(signature = (state, re_range=(-8.0, 8.0), im_range=None, resolution=257))]
fn husimi_grid(
    py: Python<'_>,
    state: &PyFockState,
    re_range: (f64, f64),
    im_range: Option<(f64, f64)>,
    resolution: usize,
) -> PyResult<Vec<Vec<f64>>> {
    let spec = GridSpec {
        re_range,
        im_range: im_range.unwrap_or(re_range),
        resolution,
    };
    let grid = py
        .detach(|| analysis::husimi_grid(&state.inner, &spec))
        .map_err(to_py)?;
    Ok(grid.values.chunks(resolution).map(<[f64]>::to_vec).collect())
}

#[pyfunction]
#[pyo3(signature = (n, m, z, a0=1.0))]
fn modal_amplitude(n: usize, m: usize, z: f64, a0: f64) -> PyResult<Complex64> {
    waveguide::modal_amplitude(n, m, z, a0).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (m, z, sites=None))]
fn intensity_profile(m: usize, z: f64, sites: Option<usize>) -> PyResult<Vec<f64>> {
    waveguide::intensity_profile(m, z, sites).map_err(to_py)
}

/// Integrates the coupled-mode equations; returns the amplitudes on sites 0..=sites.
#[pyfunction]
#[pyo3(signature = (m, z, sites, tol=waveguide::DEFAULT_ODE_TOL))]
fn propagate_ode(py: Python<'_>, m: usize, z: f64, sites: usize, tol: f64) -> PyResult<Vec<Complex64>> {
    py.detach(|| waveguide::propagate_ode(m, z, sites, tol))
        .map(|f| f.amplitudes)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (m, x, sites=None))]
fn analogy_report(m: usize, x: f64, sites: Option<usize>) -> PyResult<f64> {
    waveguide::analogy_report(m, x, sites).map_err(to_py)
}

/// Runs the invariant suite; returns `(name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(name = "verify")]
fn run_verify(py: Python<'_>) -> Vec<(&'static str, bool, String)> {
    py.detach(verify::run_all)
        .into_iter()
        .map(|o| (o.name, o.passed, o.detail))
        .collect()
}

#[pymodule(name = "nlcs")]
fn nlcs_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyFockState>()?;
    m.add_function(wrap_pyfunction!(sg_displaced_approx, m)?)?;
    m.add_function(wrap_pyfunction!(sg_vacuum_displaced, m)?)?;
    m.add_function(wrap_pyfunction!(sg_evolved, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_exact_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_truncation_for, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_even_moment, m)?)?;
    m.add_function(wrap_pyfunction!(bell_complete, m)?)?;
    m.add_function(wrap_pyfunction!(mandel_q_closed, m)?)?;
    m.add_function(wrap_pyfunction!(mandel_scan, m)?)?;
    m.add_function(wrap_pyfunction!(husimi_grid, m)?)?;
    m.add_function(wrap_pyfunction!(modal_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(intensity_profile, m)?)?;
    m.add_function(wrap_pyfunction!(propagate_ode, m)?)?;
    m.add_function(wrap_pyfunction!(analogy_report, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
