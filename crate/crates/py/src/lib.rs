//! Python bindings for `thzprop`.
//!
//! Angles are radians, frequencies hertz and lengths metres, as in the Rust
//! library. Complex results are returned as Python `complex`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyKeyError, PyOSError, PyValueError};
use pyo3::prelude::*;

use thzprop::interface::{self, InterfaceProblem};
use thzprop::propagation::{self, ConstitutiveParams, OperatingPoint};
use thzprop::scatter::{self, RoughSurfaceStats, ScatterGeometry, SeriesOptions};
use thzprop::Error;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Io(msg) => PyOSError::new_err(msg),
        Error::UnknownMaterial(name) => PyKeyError::new_err(format!("unknown material `{name}`")),
        e @ Error::Convergence { .. } => PyArithmeticError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn op(freq_hz: f64) -> PyResult<OperatingPoint> {
    OperatingPoint::from_hz(freq_hz).map_err(to_py)
}

/// Constitutive parameters μ (H/m), ε (F/m), σ (S/m) of a medium.
#[pyclass(frozen, skip_from_py_object, name = "Medium")]
#[derive(Clone, Copy)]
struct PyMedium(ConstitutiveParams);

#[pymethods]
impl PyMedium {
    #[new]
    fn new(mu: f64, eps: f64, sigma: f64) -> PyResult<Self> {
        ConstitutiveParams::new(mu, eps, sigma).map(Self).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (eps_r, sigma=0.0, mu_r=1.0))]
    fn from_relative(eps_r: f64, sigma: f64, mu_r: f64) -> PyResult<Self> {
        ConstitutiveParams::from_relative(mu_r, eps_r, sigma)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn vacuum() -> Self {
        Self(ConstitutiveParams::vacuum())
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.0.mu()
    }

    #[getter]
    fn eps(&self) -> f64 {
        self.0.eps()
    }

    #[getter]
    fn sigma(&self) -> f64 {
        self.0.sigma()
    }

    #[getter]
    fn eps_r(&self) -> f64 {
        self.0.eps_r()
    }

    #[getter]
    fn mu_r(&self) -> f64 {
        self.0.mu_r()
    }

    fn __repr__(&self) -> String {
        format!(
            "Medium(mu_r={}, eps_r={}, sigma={})",
            self.0.mu_r(),
            self.0.eps_r(),
            self.0.sigma()
        )
    }
}

#[pyclass(frozen, skip_from_py_object, get_all, name = "PropagationState")]
#[derive(Clone)]
struct PyPropagationState {
    alpha: f64,
    beta: f64,
    gamma: Complex64,
    eta: Complex64,
    wavelength: f64,
    admittance: Complex64,
}

#[pyclass(frozen, skip_from_py_object, get_all, name = "FresnelCoefficients")]
#[derive(Clone)]
struct PyFresnel {
    t_perp: Complex64,
    gamma_perp: Complex64,
    t_par: Complex64,
    gamma_par: Complex64,
}

#[pyclass(frozen, skip_from_py_object, get_all, name = "RefractionSolution")]
#[derive(Clone)]
struct PyRefraction {
    sin_theta_t: Complex64,
    cos_theta_t: Complex64,
    psi_t: f64,
    n_t: (f64, f64, f64),
}

#[pyclass(frozen, skip_from_py_object, get_all, name = "ScatterKernel")]
#[derive(Clone)]
struct PyScatterKernel {
    g: f64,
    rho0: f64,
    f_factor: f64,
    v_x: f64,
    v_y: f64,
    mean_rho_sq: f64,
    terms_used: usize,
    steep_slope: bool,
    deep_rough: bool,
}

#[pyfunction]
fn attenuation_constant(medium: &PyMedium, freq_hz: f64) -> PyResult<f64> {
    propagation::attenuation_constant(&medium.0, op(freq_hz)?).map_err(to_py)
}

#[pyfunction]
fn phase_constant(medium: &PyMedium, freq_hz: f64) -> PyResult<f64> {
    propagation::phase_constant(&medium.0, op(freq_hz)?).map_err(to_py)
}

#[pyfunction]
fn intrinsic_impedance(medium: &PyMedium, freq_hz: f64) -> PyResult<Complex64> {
    propagation::intrinsic_impedance(&medium.0, op(freq_hz)?).map_err(to_py)
}

#[pyfunction]
fn wavelength(beta: f64) -> PyResult<f64> {
    propagation::wavelength(beta).map_err(to_py)
}

#[pyfunction]
fn propagation_state(medium: &PyMedium, freq_hz: f64) -> PyResult<PyPropagationState> {
    let s = propagation::PropagationState::compute(&medium.0, op(freq_hz)?).map_err(to_py)?;
    Ok(PyPropagationState {
        alpha: s.alpha,
        beta: s.beta,
        gamma: s.gamma,
        eta: s.eta,
        wavelength: s.lambda,
        admittance: s.admittance,
    })
}

fn problem(m1: &PyMedium, m2: &PyMedium, freq_hz: f64, theta_i: f64) -> PyResult<InterfaceProblem> {
    InterfaceProblem::new(m1.0, m2.0, op(freq_hz)?, theta_i).map_err(to_py)
}

/// Fresnel coefficients for incidence from `medium1` onto `medium2`.
#[pyfunction]
fn fresnel(medium1: &PyMedium, medium2: &PyMedium, freq_hz: f64, theta_i: f64) -> PyResult<PyFresnel> {
    let c = interface::fresnel(&problem(medium1, medium2, freq_hz, theta_i)?).map_err(to_py)?;
    Ok(PyFresnel {
        t_perp: c.t_perp,
        gamma_perp: c.gamma_perp,
        t_par: c.t_par,
        gamma_par: c.gamma_par,
    })
}

#[pyfunction]
fn true_refraction(medium1: &PyMedium, medium2: &PyMedium, freq_hz: f64, theta_i: f64) -> PyResult<PyRefraction> {
    let r = interface::true_refraction(&problem(medium1, medium2, freq_hz, theta_i)?).map_err(to_py)?;
    Ok(PyRefraction {
        sin_theta_t: r.sin_theta_t,
        cos_theta_t: r.cos_theta_t,
        psi_t: r.psi_t,
        n_t: (r.n_t[0], r.n_t[1], r.n_t[2]),
    })
}

/// Rayleigh roughness parameter; `theta_r` defaults to the specular angle.
#[pyfunction]
#[pyo3(signature = (sigma_h, wavelength, theta_i, theta_r=None, theta_s=0.0))]
fn rayleigh_g(sigma_h: f64, wavelength: f64, theta_i: f64, theta_r: Option<f64>, theta_s: f64) -> PyResult<f64> {
    let stats = RoughSurfaceStats::new(sigma_h, 1.0, 1.0, 1.0).map_err(to_py)?;
    let geo = ScatterGeometry::new(theta_i, theta_r.unwrap_or(theta_i), theta_s).map_err(to_py)?;
    scatter::rayleigh_g(&stats, &geo, wavelength).map_err(to_py)
}

#[pyfunction]
fn kirchhoff_factor(theta_i: f64, theta_r: f64, theta_s: f64) -> PyResult<f64> {
    let geo = ScatterGeometry::new(theta_i, theta_r, theta_s).map_err(to_py)?;
    scatter::kirchhoff_factor(&geo).map_err(to_py)
}

/// g, ρ₀, F, v and ⟨ρρ̄⟩ for a rough patch and scattering direction.
#[pyfunction]
#[pyo3(signature = (sigma_h, corr_dist, dim_x, dim_y, theta_i, theta_r, theta_s, wavelength, tol=scatter::DEFAULT_TOL, max_terms=scatter::DEFAULT_MAX_TERMS))]
#[allow(clippy::too_many_arguments)]
fn scatter_kernel(
    sigma_h: f64,
    corr_dist: f64,
    dim_x: f64,
    dim_y: f64,
    theta_i: f64,
    theta_r: f64,
    theta_s: f64,
    wavelength: f64,
    tol: f64,
    max_terms: usize,
) -> PyResult<PyScatterKernel> {
    let stats = RoughSurfaceStats::new(sigma_h, corr_dist, dim_x, dim_y).map_err(to_py)?;
    let geo = ScatterGeometry::new(theta_i, theta_r, theta_s).map_err(to_py)?;
    let k = scatter::scatter_kernel(&stats, &geo, wavelength, SeriesOptions { tol, max_terms }).map_err(to_py)?;
    Ok(PyScatterKernel {
        g: k.g,
        rho0: k.rho0,
        f_factor: k.f_factor,
        v_x: k.v_x,
        v_y: k.v_y,
        mean_rho_sq: k.mean_rho_sq,
        terms_used: k.terms_used,
        steep_slope: k.steep_slope,
        deep_rough: k.deep_rough,
    })
}

#[pyfunction]
fn mean_scattered_power(admittance_y1: f64, e_r_magnitude: f64, mean_rho_sq: f64) -> f64 {
    scatter::mean_scattered_power(admittance_y1, e_r_magnitude, mean_rho_sq)
}

/// Material database: built-ins plus an optional JSON document.
#[pyclass(frozen, skip_from_py_object, name = "MaterialDb")]
struct PyMaterialDb(thzprop::MaterialDb);

#[pymethods]
impl PyMaterialDb {
    #[new]
    #[pyo3(signature = (json=None))]
    fn new(json: Option<&str>) -> PyResult<Self> {
        thzprop::MaterialDb::from_json_str(json.unwrap_or(""))
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        thzprop::MaterialDb::load(path).map(Self).map_err(to_py)
    }

    fn names(&self) -> Vec<String> {
        self.0.iter().map(|r| r.name.clone()).collect()
    }

    fn params_at(&self, name: &str, freq_hz: f64) -> PyResult<PyMedium> {
        self.0.params_at(name, freq_hz).map(PyMedium).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pymodule]
#[pyo3(name = "thzprop")]
fn thzprop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMedium>()?;
    m.add_class::<PyPropagationState>()?;
    m.add_class::<PyFresnel>()?;
    m.add_class::<PyRefraction>()?;
    m.add_class::<PyScatterKernel>()?;
    m.add_class::<PyMaterialDb>()?;
    m.add_function(wrap_pyfunction!(attenuation_constant, m)?)?;
    m.add_function(wrap_pyfunction!(phase_constant, m)?)?;
    m.add_function(wrap_pyfunction!(intrinsic_impedance, m)?)?;
    m.add_function(wrap_pyfunction!(wavelength, m)?)?;
    m.add_function(wrap_pyfunction!(propagation_state, m)?)?;
    m.add_function(wrap_pyfunction!(fresnel, m)?)?;
    m.add_function(wrap_pyfunction!(true_refraction, m)?)?;
    m.add_function(wrap_pyfunction!(rayleigh_g, m)?)?;
    m.add_function(wrap_pyfunction!(kirchhoff_factor, m)?)?;
    m.add_function(wrap_pyfunction!(scatter_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(mean_scattered_power, m)?)?;
    m.add("SPEED_OF_LIGHT", thzprop::constants::SPEED_OF_LIGHT)?;
    Ok(())
}
