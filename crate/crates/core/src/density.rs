//! Renormalized field energy density inside the cavity.
//!
//! With static walls the renormalized vacuum density is the uniform value
//! `-pi c hbar / (24 L0^2)`. Position fluctuations of the mobile wall add
//!
//! ```text
//! dH(x) = hbar^2 / (2 L0^3 M omega_osc) sum_j omega_j
//!         sum_{k,p} (-1)^(k+p) omega_k omega_p cos((k - p) pi x / L0)
//!                   / ((omega_osc + omega_k + omega_j)(omega_osc + omega_p + omega_j))
//! ```
//!
//! For each partner `j` the inner double sum is the quadratic form
//! `|sum_k u_jk e^{i k pi x / L0}|^2` with `u_jk = (-1)^k omega_k / (omega_osc + omega_k + omega_j)`,
//! which is how it is evaluated: `O(n_max)` per `(j, x)` and manifestly non-negative.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{ModeBasis, PhysicalParams};
use crate::summation::{two_sum, CompensatedSum};

/// Default number of grid points for profiles.
pub const DEFAULT_GRID: usize = 1000;
/// Number of halvings of the damping time after the initial `1 / (10 omega_cut)`.
pub const TIME_SPLIT_HALVINGS: usize = 6;
/// Largest relative change between consecutive extrapolants accepted as converged.
pub const TIME_SPLIT_TOLERANCE: f64 = 1e-8;

/// Static-wall renormalized vacuum energy density `-pi c hbar / (24 L0^2)`, J/m.
pub fn baseline_density(params: &PhysicalParams) -> f64 {
    -PI * params.c * params.hbar / (24.0 * params.l0 * params.l0)
}

/// Outcome of the time-splitting evaluation of the static-wall density.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSplitResult {
    /// Extrapolated `tau -> 0` density, J/m.
    pub value: f64,
    /// `(tau, renormalized density)` for each damping time, largest first.
    pub ladder: Vec<(f64, f64)>,
    /// Relative change between the accepted extrapolant and its predecessor.
    pub change: f64,
}

/// `1/a^2` as an unevaluated double-double `(hi, lo)`.
fn inverse_square_dd(a: f64) -> (f64, f64) {
    let r = 1.0 / a;
    let resid = (-a).mul_add(r, 1.0);
    let (hi, lo) = two_sum(r, r * resid);
    let sq = hi * hi;
    (sq, hi.mul_add(hi, -sq) + 2.0 * hi * lo)
}

/// `sum_{k >= 1} k e^{-k a} - 1/a^2`: the damped mode sum minus its
/// continuum counterpart, in units of the mode spacing.
fn renormalized_damped_sum(a: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let last = (60.0 / a).ceil() as u64;
    for k in 1..=last {
        let k = k as f64;
        acc.add(k * (-k * a).exp());
    }
    let (s_hi, s_lo) = acc.parts();
    let (c_hi, c_lo) = inverse_square_dd(a);
    let (d, e) = two_sum(s_hi, -c_hi);
    d + (e + s_lo - c_lo)
}

/// Static-wall density from the exponentially damped mode sum
/// `(hbar / 2 L0) sum_k omega_k e^{-omega_k tau}` minus its free-space
/// counterpart, Richardson-extrapolated in `tau^2` along
/// `tau = 1/(10 omega_cut), ..., 2^-6 / (10 omega_cut)`.
///
/// The sine and cosine mode profiles add to one at every point, so the
/// damped density carries no position dependence.
pub fn time_split_baseline(params: &PhysicalParams) -> Result<TimeSplitResult> {
    params.validate()?;
    let spacing = params.mode_spacing();
    let scale = params.hbar * spacing / (2.0 * params.l0);
    let tau0 = 1.0 / (10.0 * params.omega_cut);

    let ladder: Vec<(f64, f64)> = (0..=TIME_SPLIT_HALVINGS)
        .into_par_iter()
        .map(|i| {
            let tau = tau0 / f64::powi(2.0, i as i32);
            (tau, scale * renormalized_damped_sum(spacing * tau))
        })
        .collect();

    // Richardson table in tau^2, halving tau each row.
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(ladder.len());
    for (i, &(_, v)) in ladder.iter().enumerate() {
        let mut row = vec![v];
        for m in 1..=i {
            let factor = f64::powi(4.0, m as i32);
            let prev = row[m - 1];
            row.push(prev + (prev - table[i - 1][m - 1]) / (factor - 1.0));
        }
        table.push(row);
    }
    let diagonal: Vec<f64> = table.iter().map(|row| *row.last().unwrap()).collect();

    let (best, change) = diagonal
        .windows(2)
        .map(|w| (w[1], ((w[1] - w[0]) / w[1]).abs()))
        .fold((diagonal[0], f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
    if change > TIME_SPLIT_TOLERANCE {
        return Err(Error::Extrapolation { change });
    }
    Ok(TimeSplitResult {
        value: best,
        ladder,
        change,
    })
}

/// Precomputed per-partner weights for evaluating the mobile-wall correction.
#[derive(Debug, Clone)]
pub struct DeltaDensity {
    basis: ModeBasis,
    prefactor: f64,
    /// `weights[j - 1][k - 1] = (-1)^k omega_k / (omega_osc + omega_k + omega_j)`.
    weights: Vec<Vec<f64>>,
}

impl DeltaDensity {
    pub fn new(params: &PhysicalParams) -> Result<Self> {
        let basis = ModeBasis::new(params)?;
        let p = *params;
        let prefactor = p.hbar * p.hbar / (2.0 * p.l0.powi(3) * p.mass * p.omega_osc);
        let omegas = basis.omegas();
        let weights = omegas
            .iter()
            .map(|&wj| {
                omegas
                    .iter()
                    .enumerate()
                    .map(|(i, &wk)| {
                        let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
                        sign * wk / (p.omega_osc + wk + wj)
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            basis,
            prefactor,
            weights,
        })
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    /// Mobile-wall correction at `x` (m), J/m.
    pub fn at(&self, x: f64) -> Result<f64> {
        let l0 = self.basis.params().l0;
        if !(0.0..=l0).contains(&x) {
            return Err(Error::Position { x, length: l0 });
        }
        let theta = PI * x / l0;
        let (cos, sin): (Vec<f64>, Vec<f64>) = (1..=self.basis.n_max())
            .map(|k| {
                let (s, c) = (k as f64 * theta).sin_cos();
                (c, s)
            })
            .unzip();
        let mut total = CompensatedSum::new();
        for (wj, u) in self.basis.omegas().iter().zip(&self.weights) {
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for ((w, c), s) in u.iter().zip(&cos).zip(&sin) {
                re.add(w * c);
                im.add(w * s);
            }
            let (re, im) = (re.value(), im.value());
            total.add(wj * (re * re + im * im));
        }
        Ok(self.prefactor * total.value())
    }
}

/// Change of the renormalized energy density at `x` caused by the mirror's
/// zero-point motion, J/m.
pub fn delta_density(x: f64, params: &PhysicalParams) -> Result<f64> {
    DeltaDensity::new(params)?.at(x)
}

/// Uniform-grid density profile over `[0, L0]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDensityProfile {
    pub grid: Vec<f64>,
    pub baseline: f64,
    pub delta: Vec<f64>,
    pub total: Vec<f64>,
}

impl EnergyDensityProfile {
    /// Correction at the mobile wall (last grid point).
    pub fn delta_at_wall(&self) -> f64 {
        *self.delta.last().expect("grid has at least two points")
    }
}

pub fn density_profile(grid_size: usize, params: &PhysicalParams) -> Result<EnergyDensityProfile> {
    if grid_size < 2 {
        return Err(Error::GridSize(grid_size));
    }
    let kernel = DeltaDensity::new(params)?;
    let last = (grid_size - 1) as f64;
    let grid: Vec<f64> = (0..grid_size)
        .map(|i| params.l0 * (i as f64 / last))
        .collect();
    let delta = grid
        .par_iter()
        .map(|&x| kernel.at(x))
        .collect::<Result<Vec<_>>>()?;
    let baseline = baseline_density(params);
    let total = delta.iter().map(|d| baseline + d).collect();
    Ok(EnergyDensityProfile {
        grid,
        baseline,
        delta,
        total,
    })
}
