//! Python bindings for the cavity vacuum kernels.

use ::cavity_vacuum::{config, density, hamiltonian, observables, oracle, Error, PhysicalParams};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(err: Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// Physical parameters in SI units.
#[pyclass(name = "PhysicalParams", module = "cavity_vacuum", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyParams {
    inner: PhysicalParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (l0, mass, omega_osc, omega_cut, hbar=None, c=None))]
    fn new(
        l0: f64,
        mass: f64,
        omega_osc: f64,
        omega_cut: f64,
        hbar: Option<f64>,
        c: Option<f64>,
    ) -> PyResult<Self> {
        let inner = PhysicalParams::with_constants(
            l0,
            mass,
            omega_osc,
            omega_cut,
            hbar.unwrap_or(::cavity_vacuum::params::HBAR_SI),
            c.unwrap_or(::cavity_vacuum::params::C_SI),
        )
        .map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Parameters used for the reference figures.
    #[staticmethod]
    fn figure_defaults() -> Self {
        Self { inner: PhysicalParams::figure_defaults() }
    }

    /// hbar = c = L0 = 1 with the cutoff exactly on mode `n_modes`.
    #[staticmethod]
    fn natural(mass: f64, omega_osc: f64, n_modes: usize) -> PyResult<Self> {
        PhysicalParams::natural(mass, omega_osc, n_modes)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    /// Parse `key = value` text; all four physical keys are required.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        config::parse_params(text).map(|inner| Self { inner }).map_err(to_py)
    }

    #[pyo3(signature = (l0=None, mass=None, omega_osc=None, omega_cut=None))]
    fn replace(
        &self,
        l0: Option<f64>,
        mass: Option<f64>,
        omega_osc: Option<f64>,
        omega_cut: Option<f64>,
    ) -> PyResult<Self> {
        let mut p = self.inner;
        p.l0 = l0.unwrap_or(p.l0);
        p.mass = mass.unwrap_or(p.mass);
        p.omega_osc = omega_osc.unwrap_or(p.omega_osc);
        p.omega_cut = omega_cut.unwrap_or(p.omega_cut);
        p.validate().map_err(to_py)?;
        Ok(Self { inner: p })
    }

    #[getter]
    fn l0(&self) -> f64 {
        self.inner.l0
    }
    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass
    }
    #[getter]
    fn omega_osc(&self) -> f64 {
        self.inner.omega_osc
    }
    #[getter]
    fn omega_cut(&self) -> f64 {
        self.inner.omega_cut
    }
    #[getter]
    fn hbar(&self) -> f64 {
        self.inner.hbar
    }
    #[getter]
    fn c(&self) -> f64 {
        self.inner.c
    }

    fn mode_spacing(&self) -> f64 {
        self.inner.mode_spacing()
    }

    fn n_max(&self) -> PyResult<usize> {
        ::cavity_vacuum::max_mode_index(&self.inner).map_err(to_py)
    }

    fn echo(&self) -> String {
        config::echo_lines(&self.inner).join("\n")
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "PhysicalParams(l0={:e}, mass={:e}, omega_osc={:e}, omega_cut={:e})",
            p.l0, p.mass, p.omega_osc, p.omega_cut
        )
    }
}

#[pyfunction]
fn mode_frequency(k: i64, params: &PyParams) -> PyResult<f64> {
    ::cavity_vacuum::mode_frequency(k, &params.inner).map_err(to_py)
}

#[pyfunction]
fn max_mode_index(params: &PyParams) -> PyResult<usize> {
    ::cavity_vacuum::max_mode_index(&params.inner).map_err(to_py)
}

#[pyfunction]
fn coupling_c(k: usize, j: usize, params: &PyParams) -> PyResult<f64> {
    hamiltonian::coupling_c(k, j, &params.inner).map_err(to_py)
}

#[pyfunction]
fn amplitude_d(k: usize, j: usize, params: &PyParams) -> PyResult<f64> {
    hamiltonian::amplitude_d(k, j, &params.inner).map_err(to_py)
}

/// `(omegas, photon_numbers, n_osc)` over the retained modes.
#[pyfunction]
fn photon_spectrum(py: Python<'_>, params: &PyParams) -> PyResult<(Vec<f64>, Vec<f64>, f64)> {
    let p = params.inner;
    let s = py.detach(|| observables::photon_spectrum(&p)).map_err(to_py)?;
    Ok((s.basis.omegas().to_vec(), s.numbers, s.n_osc))
}

#[pyfunction]
fn photon_number(m: usize, params: &PyParams) -> PyResult<f64> {
    observables::photon_number(m, &params.inner).map_err(to_py)
}

#[pyfunction]
fn mirror_excitation(py: Python<'_>, params: &PyParams) -> PyResult<f64> {
    let p = params.inner;
    py.detach(|| observables::mirror_excitation(&p)).map_err(to_py)
}

/// Dict with `e2`, `h0`, `hint` (joules) and `n_osc`.
#[pyfunction]
fn energy_shift<'py>(py: Python<'py>, params: &PyParams) -> PyResult<Bound<'py, PyDict>> {
    let p = params.inner;
    let b = py.detach(|| observables::energy_shift(&p)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("e2", b.e2)?;
    d.set_item("h0", b.h0)?;
    d.set_item("hint", b.hint)?;
    d.set_item("n_osc", b.n_osc)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (params, step=observables::DEFAULT_FD_STEP))]
fn casimir_energy_correction<'py>(
    py: Python<'py>,
    params: &PyParams,
    step: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params.inner;
    let f = py
        .detach(|| observables::casimir_energy_correction(&p, step))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("e2", f.e2)?;
    d.set_item("de2_dl0", f.de2_dl0)?;
    d.set_item("force", f.force)?;
    d.set_item("fixed_wall_force", f.fixed_wall_force)?;
    d.set_item("cutoff_crossed", f.cutoff_crossed)?;
    Ok(d)
}

#[pyfunction]
fn baseline_density(params: &PyParams) -> f64 {
    density::baseline_density(&params.inner)
}

/// `(value, relative_change)` from the damped-sum extrapolation.
#[pyfunction]
fn time_split_baseline(py: Python<'_>, params: &PyParams) -> PyResult<(f64, f64)> {
    let p = params.inner;
    let r = py.detach(|| density::time_split_baseline(&p)).map_err(to_py)?;
    Ok((r.value, r.change))
}

#[pyfunction]
fn delta_density(py: Python<'_>, x: f64, params: &PyParams) -> PyResult<f64> {
    let p = params.inner;
    py.detach(|| density::delta_density(x, &p)).map_err(to_py)
}

/// `(grid, delta, total)` on a uniform grid including both walls.
#[pyfunction]
#[pyo3(signature = (params, grid_size=density::DEFAULT_GRID))]
fn density_profile(
    py: Python<'_>,
    params: &PyParams,
    grid_size: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let p = params.inner;
    let prof = py
        .detach(|| density::density_profile(grid_size, &p))
        .map_err(to_py)?;
    Ok((prof.grid, prof.delta, prof.total))
}

/// Rows of `(lambda, e_ground, e2_prediction, ratio, truncation_estimate)`.
#[pyfunction]
#[pyo3(signature = (params, lambdas, n_modes=2, max_photons=4, max_mirror=2))]
fn oracle_report(
    py: Python<'_>,
    params: &PyParams,
    lambdas: Vec<f64>,
    n_modes: usize,
    max_photons: u32,
    max_mirror: u32,
) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
    let p = params.inner;
    let cfg = oracle::FockConfig::new(n_modes, max_photons, max_mirror);
    let rows = py
        .detach(|| oracle::oracle_report(&p, cfg, &lambdas))
        .map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.lambda, r.e_ground, r.e2_prediction, r.ratio, r.truncation_estimate))
        .collect())
}

#[pymodule]
#[pyo3(name = "cavity_vacuum")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(mode_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(max_mode_index, m)?)?;
    m.add_function(wrap_pyfunction!(coupling_c, m)?)?;
    m.add_function(wrap_pyfunction!(amplitude_d, m)?)?;
    m.add_function(wrap_pyfunction!(photon_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(photon_number, m)?)?;
    m.add_function(wrap_pyfunction!(mirror_excitation, m)?)?;
    m.add_function(wrap_pyfunction!(energy_shift, m)?)?;
    m.add_function(wrap_pyfunction!(casimir_energy_correction, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_density, m)?)?;
    m.add_function(wrap_pyfunction!(time_split_baseline, m)?)?;
    m.add_function(wrap_pyfunction!(delta_density, m)?)?;
    m.add_function(wrap_pyfunction!(density_profile, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_report, m)?)?;
    Ok(())
}
