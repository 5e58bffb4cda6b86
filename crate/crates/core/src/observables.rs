//! Perturbative vacuum observables of the dressed ground state: photon
//! spectrum, mirror excitation, the second-order energy shift with its
//! energy budget, and the resulting Casimir energy and force corrections.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{CouplingMatrix, PerturbationAmplitudes};
use crate::params::{max_mode_index, ModeBasis, PhysicalParams};
use crate::summation::{compensated, reduce_ordered, CompensatedSum};

/// Default relative step for the finite-difference force.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Photon number per retained mode together with the mirror excitation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub basis: ModeBasis,
    /// `numbers[m - 1] = <g|a_m^dag a_m|g>`.
    pub numbers: Vec<f64>,
    pub n_osc: f64,
}

impl SpectrumResult {
    pub fn photon_number(&self, m: usize) -> Result<f64> {
        self.basis.check_index(m)?;
        Ok(self.numbers[m - 1])
    }

    pub fn total_photons(&self) -> f64 {
        compensated(self.numbers.iter().copied())
    }
}

/// Second-order energy shift and its split into free and interaction parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    /// Second-order ground-state energy shift, J.
    pub e2: f64,
    /// `<g|H0|g>` above the bare vacuum, J.
    pub h0: f64,
    /// `<g|H_int|g>`, J.
    pub hint: f64,
    pub n_osc: f64,
}

/// Energy correction and its derivative with respect to the cavity length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirCorrection {
    pub e2: f64,
    /// Central-difference `dE2/dL0`, N.
    pub de2_dl0: f64,
    /// Correction to the force on the mobile wall, `-dE2/dL0`, N.
    pub force: f64,
    /// Static-wall Casimir force `-hbar c pi / (24 L0^2)`, N.
    pub fixed_wall_force: f64,
    /// The retained mode count differs between `L0 (1 - step)` and `L0 (1 + step)`.
    pub cutoff_crossed: bool,
}

/// `omega_m omega_j / (omega_osc (omega_osc + omega_m + omega_j)^2)`, the
/// shape shared by the photon-number and mirror-excitation sums (units of 1/omega).
pub fn pair_summand(omega_m: f64, omega_j: f64, omega_osc: f64) -> f64 {
    let denom = omega_osc + omega_m + omega_j;
    omega_m * omega_j / (omega_osc * denom * denom)
}

fn photon_number_in(basis: &ModeBasis, m: usize) -> Result<f64> {
    let wm = basis.omega(m)?;
    let p = basis.params();
    let pref = p.hbar / (2.0 * p.l0 * p.l0 * p.mass);
    let sum = compensated(
        basis
            .omegas()
            .iter()
            .map(|&wj| pair_summand(wm, wj, p.omega_osc)),
    );
    Ok(pref * sum)
}

/// `<g|N_m|g> = sum_j hbar/(2 L0^2 M) omega_m omega_j / (omega_osc (omega_osc + omega_m + omega_j)^2)`.
pub fn photon_number(m: usize, params: &PhysicalParams) -> Result<f64> {
    photon_number_in(&ModeBasis::new(params)?, m)
}

fn mirror_excitation_in(basis: &ModeBasis) -> f64 {
    let p = basis.params();
    let pref = p.hbar / (4.0 * p.l0 * p.l0 * p.mass);
    let omegas = basis.omegas();
    let partials: Vec<CompensatedSum> = omegas
        .par_iter()
        .map(|&wj| {
            omegas
                .iter()
                .map(|&wk| pair_summand(wk, wj, p.omega_osc))
                .collect()
        })
        .collect();
    pref * reduce_ordered(&partials)
}

/// `<g|b^dag b|g> = sum_{j,k} hbar/(4 L0^2 M) omega_k omega_j / (omega_osc (omega_osc + omega_k + omega_j)^2)`.
pub fn mirror_excitation(params: &PhysicalParams) -> Result<f64> {
    Ok(mirror_excitation_in(&ModeBasis::new(params)?))
}

pub fn photon_spectrum(params: &PhysicalParams) -> Result<SpectrumResult> {
    let basis = ModeBasis::new(params)?;
    let numbers = (1..=basis.n_max())
        .into_par_iter()
        .map(|m| photon_number_in(&basis, m))
        .collect::<Result<Vec<_>>>()?;
    let n_osc = mirror_excitation_in(&basis);
    Ok(SpectrumResult {
        basis,
        numbers,
        n_osc,
    })
}

/// Continuous-frequency maximizer of the single-partner spectrum term
/// `omega_m / (omega_osc + omega_m + omega_j)^2`, which is `omega_osc + omega_j`.
pub fn spectrum_peak_check(j: usize, params: &PhysicalParams) -> Result<f64> {
    let wj = ModeBasis::new(params)?.omega(j)?;
    Ok(params.omega_osc + wj)
}

fn second_order_shift_in(basis: &ModeBasis) -> f64 {
    let p = basis.params();
    let pref = -p.hbar * p.hbar / (4.0 * p.l0 * p.l0 * p.mass * p.omega_osc);
    let omegas = basis.omegas();
    let partials: Vec<CompensatedSum> = omegas
        .par_iter()
        .map(|&wj| {
            omegas
                .iter()
                .map(|&wk| wk * wj / (p.omega_osc + wk + wj))
                .collect()
        })
        .collect();
    pref * reduce_ordered(&partials)
}

/// Second-order shift of the ground-state energy,
/// `E2 = -sum_{k,j} hbar^2/(4 L0^2 M) omega_k omega_j / (omega_osc (omega_osc + omega_k + omega_j))`.
pub fn second_order_shift(params: &PhysicalParams) -> Result<f64> {
    Ok(second_order_shift_in(&ModeBasis::new(params)?))
}

/// Energy budget of the dressed ground state. The three entries are
/// computed along separate routes: `e2` from the closed double sum, `h0`
/// from the occupation numbers, `hint` from the coupling and amplitude
/// matrices as `-4 sum_{k,j} D_kj C_kj`.
pub fn energy_shift(params: &PhysicalParams) -> Result<EnergyBudget> {
    let spectrum = photon_spectrum(params)?;
    let basis = &spectrum.basis;
    let p = basis.params();

    let e2 = second_order_shift_in(basis);

    let mut h0 = CompensatedSum::new();
    h0.add(p.hbar * p.omega_osc * spectrum.n_osc);
    for (wk, nk) in basis.omegas().iter().zip(&spectrum.numbers) {
        h0.add(p.hbar * wk * nk);
    }

    let c = CouplingMatrix::new(basis);
    let d = PerturbationAmplitudes::new(basis);
    let partials: Vec<CompensatedSum> = (1..=basis.n_max())
        .into_par_iter()
        .map(|j| d.0.row(j).iter().zip(c.0.row(j)).map(|(d, c)| d * c).collect())
        .collect();
    let hint = -4.0 * reduce_ordered(&partials);

    Ok(EnergyBudget {
        e2,
        h0: h0.value(),
        hint,
        n_osc: spectrum.n_osc,
    })
}

/// Static two-wall Casimir energy `-hbar c pi / (24 L0)`, J.
pub fn fixed_wall_energy(params: &PhysicalParams) -> f64 {
    -params.hbar * params.c * PI / (24.0 * params.l0)
}

/// Static two-wall Casimir force on the mobile wall, `-hbar c pi / (24 L0^2)`, N.
pub fn fixed_wall_force(params: &PhysicalParams) -> f64 {
    -params.hbar * params.c * PI / (24.0 * params.l0 * params.l0)
}

/// `E2(L0)` and `-dE2/dL0` by central difference at relative step `step`.
/// The mode basis is rebuilt at each displaced length with the cutoff held
/// fixed in frequency.
pub fn casimir_energy_correction(params: &PhysicalParams, step: f64) -> Result<CasimirCorrection> {
    if !(step > 0.0 && step < 1.0) {
        return Err(Error::Step(step));
    }
    let e2 = second_order_shift(params)?;
    let lo = params.with_l0(params.l0 * (1.0 - step))?;
    let hi = params.with_l0(params.l0 * (1.0 + step))?;
    let de2_dl0 = (second_order_shift(&hi)? - second_order_shift(&lo)?) / (hi.l0 - lo.l0);
    let cutoff_crossed = max_mode_index(&lo)? != max_mode_index(&hi)?;
    Ok(CasimirCorrection {
        e2,
        de2_dl0,
        force: -de2_dl0,
        fixed_wall_force: fixed_wall_force(params),
        cutoff_crossed,
    })
}
