//! Mirror-field coupling constants and first-order ground-state amplitudes.
//!
//! The interaction is `H_int = -(b + b^dag) sum_{k,j} C_kj (a_k + a_k^dag)(a_j + a_j^dag)`
//! restricted to its normal-ordered two-photon part, with
//!
//! ```text
//! C_kj = (-1)^(k+j) (hbar/2)^(3/2) / (L0 sqrt(M)) * sqrt(omega_k omega_j / omega_osc)
//! ```
//!
//! First-order perturbation theory dresses the bare vacuum with one mirror
//! quantum and a photon pair. Writing the dressed state as a sum over
//! *ordered* pairs, `|g> = |0,0> + sum_{k,j} D_kj b^dag a_k^dag a_j^dag |0,0>`,
//! gives
//!
//! ```text
//! D_kj = C_kj / (hbar (omega_osc + omega_k + omega_j))
//!      = (-1)^(k+j) / L0 * sqrt(hbar omega_k omega_j / (8 M omega_osc)) / (omega_osc + omega_k + omega_j)
//! ```
//!
//! Against normalized Fock states the amplitude of `|1_k 1_j; 1>` (k != j)
//! is `2 D_kj`, and that of `|2_k; 1>` is `sqrt(2) D_kk`; see
//! [`fock_multiplicity`].

use rayon::prelude::*;

use crate::error::Result;
use crate::params::{parity_sign, ModeBasis, PhysicalParams};

/// Amplitudes above this magnitude mean first-order theory is not trustworthy.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

fn coupling_unchecked(omega_k: f64, omega_j: f64, sign: f64, p: &PhysicalParams) -> f64 {
    // operand order fixed so that C_kj and C_jk agree bit for bit
    let (omega_k, omega_j) = (omega_k.min(omega_j), omega_k.max(omega_j));
    sign * (p.hbar / 2.0).powf(1.5) / (p.l0 * p.mass.sqrt())
        * (omega_k * omega_j / p.omega_osc).sqrt()
}

fn amplitude_unchecked(omega_k: f64, omega_j: f64, sign: f64, p: &PhysicalParams) -> f64 {
    let (omega_k, omega_j) = (omega_k.min(omega_j), omega_k.max(omega_j));
    coupling_unchecked(omega_k, omega_j, sign, p) / (p.hbar * (p.omega_osc + omega_k + omega_j))
}

/// Coupling constant `C_kj` in joules.
pub fn coupling_c(k: usize, j: usize, params: &PhysicalParams) -> Result<f64> {
    let basis = ModeBasis::new(params)?;
    let (wk, wj) = (basis.omega(k)?, basis.omega(j)?);
    Ok(coupling_unchecked(wk, wj, parity_sign(k, j), params))
}

/// Ordered-pair amplitude `D_kj` of the dressed ground state (dimensionless).
pub fn amplitude_d(k: usize, j: usize, params: &PhysicalParams) -> Result<f64> {
    let basis = ModeBasis::new(params)?;
    let (wk, wj) = (basis.omega(k)?, basis.omega(j)?);
    Ok(amplitude_unchecked(wk, wj, parity_sign(k, j), params))
}

/// Factor between the ordered-pair amplitude `D_kj` and the amplitude of the
/// corresponding normalized Fock state: 2 off the diagonal, sqrt(2) on it.
pub fn fock_multiplicity(k: usize, j: usize) -> f64 {
    if k == j {
        std::f64::consts::SQRT_2
    } else {
        2.0
    }
}

/// `<1_k 1_j; 1| H_int |0; 0>` for the normalized Fock state, in joules.
/// Both orderings `(k, j)` and `(j, k)` of the creation term contribute.
pub fn vacuum_pair_matrix_element(k: usize, j: usize, params: &PhysicalParams) -> Result<f64> {
    Ok(-fock_multiplicity(k, j) * coupling_c(k, j, params)?)
}

/// Dense symmetric `n_max x n_max` matrix, row-major, indexed by mode labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    basis: ModeBasis,
    entries: Vec<f64>,
}

impl ModeMatrix {
    fn build(basis: &ModeBasis, entry: impl Fn(f64, f64, f64) -> f64 + Sync) -> Self {
        let n = basis.n_max();
        let omegas = basis.omegas();
        let mut entries = vec![0.0; n * n];
        entries
            .par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(row, out)| {
                for (col, slot) in out.iter_mut().enumerate() {
                    *slot = entry(omegas[row], omegas[col], parity_sign(row + 1, col + 1));
                }
            });
        Self {
            basis: basis.clone(),
            entries,
        }
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn n_max(&self) -> usize {
        self.basis.n_max()
    }

    /// Entry for mode labels `k, j` (1-based).
    pub fn get(&self, k: usize, j: usize) -> Result<f64> {
        self.basis.check_index(k)?;
        self.basis.check_index(j)?;
        Ok(self.entries[(k - 1) * self.n_max() + (j - 1)])
    }

    /// Row of mode `k` as a slice over `j = 1..=n_max`.
    pub fn row(&self, k: usize) -> &[f64] {
        let n = self.n_max();
        &self.entries[(k - 1) * n..k * n]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Coupling constants `C_kj` over the retained modes.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix(pub ModeMatrix);

impl CouplingMatrix {
    pub fn new(basis: &ModeBasis) -> Self {
        let p = *basis.params();
        Self(ModeMatrix::build(basis, move |wk, wj, s| {
            coupling_unchecked(wk, wj, s, &p)
        }))
    }
}

/// Ordered-pair amplitudes `D_kj` over the retained modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationAmplitudes(pub ModeMatrix);

impl PerturbationAmplitudes {
    pub fn new(basis: &ModeBasis) -> Self {
        let p = *basis.params();
        Self(ModeMatrix::build(basis, move |wk, wj, s| {
            amplitude_unchecked(wk, wj, s, &p)
        }))
    }

    pub fn from_params(params: &PhysicalParams) -> Result<Self> {
        Ok(Self::new(&ModeBasis::new(params)?))
    }

    /// Largest normalized-Fock amplitude in the dressed state.
    pub fn max_fock_amplitude(&self) -> f64 {
        2.0 * self.0.max_abs()
    }

    /// True when every dressed-state amplitude is small against the vacuum.
    pub fn is_perturbative(&self) -> bool {
        self.max_fock_amplitude() < PERTURBATIVE_LIMIT
    }

    /// `<N_m>` assembled from the amplitudes: `4 sum_j D_mj^2`.
    pub fn photon_number(&self, m: usize) -> Result<f64> {
        self.0.basis().check_index(m)?;
        Ok(4.0 * crate::summation::compensated(self.0.row(m).iter().map(|d| d * d)))
    }

    /// `<b^dag b>` assembled from the amplitudes: `2 sum_{j,k} D_kj^2`.
    pub fn mirror_excitation(&self) -> f64 {
        2.0 * crate::summation::compensated(self.0.entries.iter().map(|d| d * d))
    }
}
