//! Exact-diagonalization cross-check.
//!
//! The wall-field Hamiltonian `H0 + lambda * H_int` is written out as a dense
//! matrix on a truncated occupation-number basis (a few field modes plus the
//! wall oscillator), diagonalized, and the observables are evaluated on the
//! exact ground state. The dial `lambda` scales the coupling so that the
//! perturbative regime can be reached in natural units, where couplings are
//! of order one.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{coupling_c, fock_multiplicity, PerturbationAmplitudes};
use crate::observables::{energy_shift, photon_spectrum};
use crate::params::{mode_frequency, PhysicalParams};

/// Largest basis the oracle will build.
pub const MAX_DIMENSION: usize = 20_000;
/// Largest number of field modes the oracle handles.
pub const MAX_MODES: usize = 4;

/// Occupation numbers of the field modes and of the wall oscillator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub photons: Vec<u32>,
    pub mirror: u32,
}

impl FockState {
    pub fn total_photons(&self) -> u32 {
        self.photons.iter().sum()
    }
}

/// Truncation caps for the oracle basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub n_modes: usize,
    pub max_total_photons: u32,
    pub max_mirror_quanta: u32,
}

impl FockConfig {
    pub fn new(n_modes: usize, max_total_photons: u32, max_mirror_quanta: u32) -> Self {
        Self {
            n_modes,
            max_total_photons,
            max_mirror_quanta,
        }
    }

    /// Both caps raised by one.
    pub fn enlarged(self) -> Self {
        Self {
            max_total_photons: self.max_total_photons + 1,
            max_mirror_quanta: self.max_mirror_quanta + 1,
            ..self
        }
    }

    /// `binom(cap + n, n) * (mirror_cap + 1)`.
    pub fn dimension(&self) -> usize {
        let n = self.n_modes as u128;
        let cap = self.max_total_photons as u128;
        let mut binom: u128 = 1;
        for i in 1..=n {
            binom = binom * (cap + i) / i;
        }
        (binom * (self.max_mirror_quanta as u128 + 1)).min(usize::MAX as u128) as usize
    }
}

/// Complete, lexicographically ordered enumeration of the states allowed by
/// a [`FockConfig`]. The bare vacuum is state 0.
#[derive(Debug, Clone)]
pub struct FockBasis {
    config: FockConfig,
    states: Vec<FockState>,
    index: HashMap<FockState, usize>,
}

fn push_photon_tuples(prefix: &mut Vec<u32>, remaining: u32, modes_left: usize, out: &mut Vec<Vec<u32>>) {
    if modes_left == 0 {
        out.push(prefix.clone());
        return;
    }
    for n in 0..=remaining {
        prefix.push(n);
        push_photon_tuples(prefix, remaining - n, modes_left - 1, out);
        prefix.pop();
    }
}

pub fn enumerate_basis(config: FockConfig) -> Result<FockBasis> {
    if config.n_modes == 0 || config.n_modes > MAX_MODES {
        return Err(Error::Basis(format!(
            "n_modes must lie in 1..={MAX_MODES}, got {}",
            config.n_modes
        )));
    }
    if config.max_total_photons == 0 || config.max_mirror_quanta == 0 {
        return Err(Error::Basis("occupancy caps must be at least 1".into()));
    }
    let dim = config.dimension();
    if dim > MAX_DIMENSION {
        return Err(Error::BasisTooLarge {
            dim,
            limit: MAX_DIMENSION,
        });
    }
    let mut tuples = Vec::new();
    push_photon_tuples(&mut Vec::new(), config.max_total_photons, config.n_modes, &mut tuples);
    let mut states = Vec::with_capacity(dim);
    for photons in tuples {
        for mirror in 0..=config.max_mirror_quanta {
            states.push(FockState {
                photons: photons.clone(),
                mirror,
            });
        }
    }
    let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(FockBasis {
        config,
        states,
        index,
    })
}

impl FockBasis {
    pub fn config(&self) -> FockConfig {
        self.config
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Index of the normalized pair state `|1_k 1_j; 1>` (or `|2_k; 1>` when
    /// `k == j`); mode labels are 1-based.
    pub fn pair_state(&self, k: usize, j: usize) -> Option<usize> {
        let mut photons = vec![0; self.config.n_modes];
        *photons.get_mut(k.checked_sub(1)?)? += 1;
        *photons.get_mut(j.checked_sub(1)?)? += 1;
        self.index_of(&FockState { photons, mirror: 1 })
    }
}

/// A single ladder operator. Field modes are 0-based here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
    CreateMirror,
    AnnihilateMirror,
}

/// Apply a product of ladder operators, written left to right as in the
/// operator expression (the rightmost acts first). Intermediate occupations
/// are unrestricted; the caller decides whether the image is in the basis.
pub fn apply_string(ops: &[Ladder], state: &FockState) -> Option<(FockState, f64)> {
    let mut s = state.clone();
    let mut amp = 1.0;
    for op in ops.iter().rev() {
        match *op {
            Ladder::Create(m) => {
                s.photons[m] += 1;
                amp *= (s.photons[m] as f64).sqrt();
            }
            Ladder::Annihilate(m) => {
                if s.photons[m] == 0 {
                    return None;
                }
                amp *= (s.photons[m] as f64).sqrt();
                s.photons[m] -= 1;
            }
            Ladder::CreateMirror => {
                s.mirror += 1;
                amp *= (s.mirror as f64).sqrt();
            }
            Ladder::AnnihilateMirror => {
                if s.mirror == 0 {
                    return None;
                }
                amp *= (s.mirror as f64).sqrt();
                s.mirror -= 1;
            }
        }
    }
    Some((s, amp))
}

/// Operator as a list of `(coefficient, ladder string)` terms.
type Terms = Vec<(f64, Vec<Ladder>)>;

/// The eight operator strings of the interaction for every ordered mode pair,
/// each weighted by `-C_kj`.
fn interaction_terms(n_modes: usize, params: &PhysicalParams) -> Result<Terms> {
    use Ladder::*;
    let mut terms = Vec::with_capacity(8 * n_modes * n_modes);
    for k in 0..n_modes {
        for j in 0..n_modes {
            let c = coupling_unbounded(k + 1, j + 1, params)?;
            for wall in [CreateMirror, AnnihilateMirror] {
                terms.push((-c, vec![wall, Annihilate(k), Annihilate(j)]));
                terms.push((-c, vec![wall, Create(k), Create(j)]));
                terms.push((-c, vec![wall, Create(k), Annihilate(j)]));
                terms.push((-c, vec![wall, Create(j), Annihilate(k)]));
            }
        }
    }
    Ok(terms)
}

/// `C_kj` without tying the mode range to the cutoff.
fn coupling_unbounded(k: usize, j: usize, params: &PhysicalParams) -> Result<f64> {
    let wide = params.with_omega_cut(params.omega_cut.max(
        mode_frequency(k.max(j) as i64, params)?,
    ))?;
    coupling_c(k, j, &wide)
}

/// `<psi| O |psi>` for a term list acting within `basis`.
fn expectation(basis: &FockBasis, terms: &Terms, psi: &DVector<f64>) -> f64 {
    let mut acc = 0.0;
    for (col, state) in basis.states.iter().enumerate() {
        if psi[col] == 0.0 {
            continue;
        }
        for (coef, ops) in terms {
            if let Some((img, amp)) = apply_string(ops, state) {
                if let Some(row) = basis.index_of(&img) {
                    acc += psi[row] * coef * amp * psi[col];
                }
            }
        }
    }
    acc
}

/// Dense matrix of `H0 + lambda H_int` on a truncated basis.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub basis: FockBasis,
    pub params: PhysicalParams,
    /// `<s|H0|s>`, J, normal-ordered so the bare vacuum sits at 0.
    pub h0_diag: Vec<f64>,
    /// `H_int` without the dial, J.
    pub hint: DMatrix<f64>,
    pub lambda: f64,
    /// Largest `|H_int - H_int^T|` before symmetrization.
    pub assembly_asymmetry: f64,
}

pub fn assemble_hamiltonian(
    basis: &FockBasis,
    params: &PhysicalParams,
    lambda: f64,
) -> Result<HamiltonianMatrix> {
    let n_modes = basis.config.n_modes;
    let omegas = (1..=n_modes as i64)
        .map(|k| mode_frequency(k, params))
        .collect::<Result<Vec<_>>>()?;
    let h0_diag = basis
        .states
        .iter()
        .map(|s| {
            let field: f64 = s.photons.iter().zip(&omegas).map(|(&n, w)| n as f64 * w).sum();
            params.hbar * (params.omega_osc * s.mirror as f64 + field)
        })
        .collect();

    let terms = interaction_terms(n_modes, params)?;
    let columns: Vec<Vec<(usize, f64)>> = basis
        .states
        .par_iter()
        .map(|state| {
            let mut col: Vec<(usize, f64)> = Vec::new();
            for (coef, ops) in &terms {
                if let Some((img, amp)) = apply_string(ops, state) {
                    if let Some(row) = basis.index_of(&img) {
                        col.push((row, coef * amp));
                    }
                }
            }
            col
        })
        .collect();
    let dim = basis.dim();
    let mut hint: DMatrix<f64> = DMatrix::zeros(dim, dim);
    for (col, entries) in columns.into_iter().enumerate() {
        for (row, v) in entries {
            hint[(row, col)] += v;
        }
    }
    let mut asymmetry = 0.0f64;
    for i in 0..dim {
        for j in 0..i {
            asymmetry = asymmetry.max((hint[(i, j)] - hint[(j, i)]).abs());
            hint[(i, j)] = hint[(j, i)];
        }
    }
    Ok(HamiltonianMatrix {
        basis: basis.clone(),
        params: *params,
        h0_diag,
        hint,
        lambda,
        assembly_asymmetry: asymmetry,
    })
}

impl HamiltonianMatrix {
    pub fn full(&self) -> DMatrix<f64> {
        let mut h = &self.hint * self.lambda;
        for (i, e) in self.h0_diag.iter().enumerate() {
            h[(i, i)] += e;
        }
        h
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Lowest eigenpair with the bare-vacuum amplitude made non-negative.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub vector: DVector<f64>,
    /// Gap to the first excited level, J.
    pub gap: f64,
}

pub fn ground_state(h: &HamiltonianMatrix) -> Result<GroundState> {
    let full = h.full();
    let eig = SymmetricEigen::try_new(full, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Eigen(format!("no convergence for dimension {}", h.dim())))?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lowest = order[0];
    let gap = order
        .get(1)
        .map(|&i| eig.eigenvalues[i] - eig.eigenvalues[lowest])
        .unwrap_or(f64::INFINITY);
    let mut vector: DVector<f64> = eig.eigenvectors.column(lowest).into_owned();
    vector /= vector.norm();
    if vector[0] < 0.0 {
        vector.neg_mut();
    }
    Ok(GroundState {
        energy: eig.eigenvalues[lowest],
        vector,
        gap,
    })
}

/// Expectation values on an oracle state.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleObservables {
    /// `<a_m^dag a_m>` for `m = 1..=n_modes`.
    pub photon_numbers: Vec<f64>,
    pub n_osc: f64,
    /// `<H0>`, J.
    pub h0: f64,
    /// `<lambda H_int>`, J.
    pub hint: f64,
}

pub fn oracle_observables(h: &HamiltonianMatrix, state: &DVector<f64>) -> OracleObservables {
    let weights: Vec<f64> = state.iter().map(|c| c * c).collect();
    let photon_numbers = (0..h.basis.config.n_modes)
        .map(|m| {
            h.basis
                .states
                .iter()
                .zip(&weights)
                .map(|(s, w)| w * s.photons[m] as f64)
                .sum()
        })
        .collect();
    let n_osc = h.basis.states.iter().zip(&weights).map(|(s, w)| w * s.mirror as f64).sum();
    let h0 = h.h0_diag.iter().zip(&weights).map(|(e, w)| e * w).sum();
    let hint = h.lambda * state.dot(&(&h.hint * state));
    OracleObservables {
        photon_numbers,
        n_osc,
        h0,
        hint,
    }
}

/// Amplitude of a normalized pair state in `state`.
pub fn pair_projection(basis: &FockBasis, state: &DVector<f64>, k: usize, j: usize) -> Option<f64> {
    basis.pair_state(k, j).map(|i| state[i])
}

/// One row of the oracle report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReportRow {
    pub lambda: f64,
    /// Exact ground-state energy (bare vacuum at 0), J.
    pub e_ground: f64,
    /// `lambda^2 E2` from the perturbative formula on the same modes, J.
    pub e2_prediction: f64,
    pub ratio: f64,
    /// Relative change of `e_ground` when both caps grow by one.
    pub truncation_estimate: f64,
}

fn check_params_match(params: &PhysicalParams, config: &FockConfig) -> Result<()> {
    let n_max = crate::params::max_mode_index(params)?;
    if n_max != config.n_modes {
        return Err(Error::Basis(format!(
            "parameters retain {n_max} modes but the oracle basis has {}",
            config.n_modes
        )));
    }
    Ok(())
}

/// Compare exact ground-state energies against `lambda^2 E2` along a ladder of dials.
/// The parameters must retain exactly `config.n_modes` modes.
pub fn oracle_report(
    params: &PhysicalParams,
    config: FockConfig,
    lambdas: &[f64],
) -> Result<Vec<OracleReportRow>> {
    check_params_match(params, &config)?;
    let e2 = energy_shift(params)?.e2;
    let basis = enumerate_basis(config)?;
    let bigger = enumerate_basis(config.enlarged())?;
    lambdas
        .iter()
        .map(|&lambda| {
            let e = ground_state(&assemble_hamiltonian(&basis, params, lambda)?)?.energy;
            let e_big = ground_state(&assemble_hamiltonian(&bigger, params, lambda)?)?.energy;
            let prediction = lambda * lambda * e2;
            Ok(OracleReportRow {
                lambda,
                e_ground: e,
                e2_prediction: prediction,
                ratio: e / prediction,
                truncation_estimate: ((e_big - e) / e).abs(),
            })
        })
        .collect()
}

/// Relative deviations between perturbative and exact quantities at one dial value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviations {
    pub lambda: f64,
    pub energy: f64,
    /// Largest over modes.
    pub photon_number: f64,
    pub n_osc: f64,
    /// Largest over pair states `k <= j`.
    pub amplitude: f64,
}

impl Deviations {
    pub fn max(&self) -> f64 {
        self.energy.max(self.photon_number).max(self.n_osc).max(self.amplitude)
    }
}

fn rel(exact: f64, approx: f64) -> f64 {
    ((exact - approx) / exact).abs()
}

/// Deviations of `lambda^2 E2`, `lambda^2 <N_m>`, `lambda^2 <N_osc>` and the
/// first-order pair amplitudes from their exact counterparts.
pub fn perturbative_deviations(
    params: &PhysicalParams,
    config: FockConfig,
    lambdas: &[f64],
) -> Result<Vec<Deviations>> {
    check_params_match(params, &config)?;
    let budget = energy_shift(params)?;
    let spectrum = photon_spectrum(params)?;
    let amps = PerturbationAmplitudes::from_params(params)?;
    let basis = enumerate_basis(config)?;
    let n = config.n_modes;
    lambdas
        .iter()
        .map(|&lambda| {
            let h = assemble_hamiltonian(&basis, params, lambda)?;
            let gs = ground_state(&h)?;
            let obs = oracle_observables(&h, &gs.vector);
            let l2 = lambda * lambda;
            let photon_number = (0..n)
                .map(|m| rel(obs.photon_numbers[m], l2 * spectrum.numbers[m]))
                .fold(0.0, f64::max);
            let mut amplitude = 0.0f64;
            for k in 1..=n {
                for j in k..=n {
                    let exact = pair_projection(&basis, &gs.vector, k, j).expect("pair state in basis");
                    let predicted = lambda * fock_multiplicity(k, j) * amps.0.get(k, j)?;
                    amplitude = amplitude.max(rel(exact, predicted));
                }
            }
            Ok(Deviations {
                lambda,
                energy: rel(gs.energy, l2 * budget.e2),
                photon_number,
                n_osc: rel(obs.n_osc, l2 * spectrum.n_osc),
                amplitude,
            })
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), (x, y)| {
        let dx = x.ln() - mx;
        (num + dx * (y.ln() - my), den + dx * dx)
    });
    num / den
}

/// First-order dressed state built from the assembled matrix: `c_0 = 1` and
/// `c_n = -<n|H_int|0> / (E_n - E_0)` for every state reached from the vacuum.
pub fn first_order_state(h: &HamiltonianMatrix) -> DVector<f64> {
    let mut psi = DVector::zeros(h.dim());
    psi[0] = 1.0;
    for n in 1..h.dim() {
        let v = h.lambda * h.hint[(n, 0)];
        if v != 0.0 {
            psi[n] = -v / (h.h0_diag[n] - h.h0_diag[0]);
        }
    }
    psi
}

/// Normal-ordered field energy density operator at `x`, built from the mode
/// functions `f_k(x) = sqrt(hbar c^2 / (L0 omega_k)) sin(k pi x / L0)` of
/// `phi(x) = sum_k f_k(x) (a_k + a_k^dag)`:
///
/// `:H(x): = 1/2 sum_{k,p} [ -(omega_k omega_p / c^2) f_k f_p :(a_k - a_k^dag)(a_p - a_p^dag):
///                          + f_k' f_p' :(a_k + a_k^dag)(a_p + a_p^dag): ]`.
pub fn density_operator(n_modes: usize, params: &PhysicalParams, x: f64) -> Result<Terms> {
    use Ladder::*;
    let p = params;
    let mut f = Vec::with_capacity(n_modes);
    let mut df = Vec::with_capacity(n_modes);
    let mut w = Vec::with_capacity(n_modes);
    for k in 1..=n_modes {
        let omega = mode_frequency(k as i64, p)?;
        let amp = (p.hbar * p.c * p.c / (p.l0 * omega)).sqrt();
        let wavenumber = k as f64 * std::f64::consts::PI / p.l0;
        f.push(amp * (wavenumber * x).sin());
        df.push(amp * wavenumber * (wavenumber * x).cos());
        w.push(omega);
    }
    let mut terms = Vec::with_capacity(8 * n_modes * n_modes);
    for k in 0..n_modes {
        for q in 0..n_modes {
            let kinetic = -0.5 * w[k] * w[q] / (p.c * p.c) * f[k] * f[q];
            let gradient = 0.5 * df[k] * df[q];
            // :(a_k - a_k^dag)(a_q - a_q^dag): = a a + a^dag a^dag - a_k^dag a_q - a_q^dag a_k
            terms.push((kinetic + gradient, vec![Annihilate(k), Annihilate(q)]));
            terms.push((kinetic + gradient, vec![Create(k), Create(q)]));
            terms.push((gradient - kinetic, vec![Create(k), Annihilate(q)]));
            terms.push((gradient - kinetic, vec![Create(q), Annihilate(k)]));
        }
    }
    Ok(terms)
}

/// `<psi| :H(x): |psi>` on an oracle basis, J/m.
pub fn density_expectation(
    basis: &FockBasis,
    params: &PhysicalParams,
    psi: &DVector<f64>,
    x: f64,
) -> Result<f64> {
    let terms = density_operator(basis.config.n_modes, params, x)?;
    Ok(expectation(basis, &terms, psi))
}

/// Mobile-wall density correction at `x` from the first-order dressed state
/// and explicit mode functions. Parameters must retain at most
/// [`MAX_MODES`] modes; the basis holds pairs of photons and one wall quantum.
pub fn density_oracle(params: &PhysicalParams, x: f64) -> Result<f64> {
    let n = crate::params::max_mode_index(params)?;
    let basis = enumerate_basis(FockConfig::new(n, 2, 1))?;
    let h = assemble_hamiltonian(&basis, params, 1.0)?;
    density_expectation(&basis, params, &first_order_state(&h), x)
}

/// `<G| :H(x): |G> / lambda^2` on the exact ground state, which also
/// contains the second-order admixtures left out of the first-order state.
pub fn exact_density_correction(
    params: &PhysicalParams,
    config: FockConfig,
    lambda: f64,
    x: f64,
) -> Result<f64> {
    check_params_match(params, &config)?;
    let basis = enumerate_basis(config)?;
    let h = assemble_hamiltonian(&basis, params, lambda)?;
    let gs = ground_state(&h)?;
    Ok(density_expectation(&basis, params, &gs.vector, x)? / (lambda * lambda))
}
