//! Physical parameters and the Dirichlet mode basis.
//!
//! Everything is stored in SI units. The field modes are those of a string
//! of length `L0` clamped at both ends, so `omega_k = k * pi * c / L0` for
//! `k >= 1`, and a sharp cutoff keeps every mode with `omega_k <= omega_cut`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Reduced Planck constant (CODATA 2018), J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const C_SI: f64 = 299_792_458.0;

/// Cavity geometry, mirror mechanics, cutoff and the two fundamental constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Equilibrium cavity length, m.
    pub l0: f64,
    /// Mobile mirror mass, kg.
    pub mass: f64,
    /// Angular frequency of the harmonic binding of the mirror, rad/s.
    pub omega_osc: f64,
    /// Sharp cutoff angular frequency, rad/s.
    pub omega_cut: f64,
    pub hbar: f64,
    pub c: f64,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

impl PhysicalParams {
    /// Parameters in SI units with CODATA values of hbar and c.
    pub fn new(l0: f64, mass: f64, omega_osc: f64, omega_cut: f64) -> Result<Self> {
        Self::with_constants(l0, mass, omega_osc, omega_cut, HBAR_SI, C_SI)
    }

    pub fn with_constants(
        l0: f64,
        mass: f64,
        omega_osc: f64,
        omega_cut: f64,
        hbar: f64,
        c: f64,
    ) -> Result<Self> {
        let params = Self {
            l0,
            mass,
            omega_osc,
            omega_cut,
            hbar,
            c,
        };
        params.validate()?;
        Ok(params)
    }

    /// Natural units (hbar = c = L0 = 1) with the cutoff placed exactly on
    /// mode `n_modes`, so the basis holds modes `1..=n_modes`.
    pub fn natural(mass: f64, omega_osc: f64, n_modes: usize) -> Result<Self> {
        let params = Self::with_constants(1.0, mass, omega_osc, PI, 1.0, 1.0)?;
        params.with_omega_cut(n_modes as f64 * params.mode_spacing())
    }

    /// The regime used for the spectrum and density figures: `L0 = 10 um`,
    /// `M = 1e-11 kg`, `omega_osc = 1e5 rad/s`, `omega_cut = 1e16 rad/s`.
    pub fn figure_defaults() -> Self {
        Self::new(10e-6, 1e-11, 1e5, 1e16).expect("default parameters are valid")
    }

    pub fn validate(&self) -> Result<()> {
        positive("L0_m", self.l0)?;
        positive("M_kg", self.mass)?;
        positive("omega_osc", self.omega_osc)?;
        positive("omega_cut", self.omega_cut)?;
        positive("hbar", self.hbar)?;
        positive("c", self.c)?;
        let fundamental = self.mode_spacing();
        if self.omega_cut < fundamental {
            return Err(Error::CutoffBelowFundamental {
                omega_cut: self.omega_cut,
                fundamental,
            });
        }
        Ok(())
    }

    /// Frequency spacing `pi c / L0` of the equally spaced modes.
    pub fn mode_spacing(&self) -> f64 {
        PI * self.c / self.l0
    }

    pub fn with_l0(self, l0: f64) -> Result<Self> {
        Self { l0, ..self }.checked()
    }

    pub fn with_mass(self, mass: f64) -> Result<Self> {
        Self { mass, ..self }.checked()
    }

    pub fn with_omega_osc(self, omega_osc: f64) -> Result<Self> {
        Self { omega_osc, ..self }.checked()
    }

    pub fn with_omega_cut(self, omega_cut: f64) -> Result<Self> {
        Self { omega_cut, ..self }.checked()
    }

    fn checked(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }
}

/// Angular frequency of Dirichlet mode `k`, `k * pi * c / L0`.
pub fn mode_frequency(k: i64, params: &PhysicalParams) -> Result<f64> {
    if k < 1 {
        return Err(Error::ModeIndex { index: k, n_max: 0 });
    }
    Ok(k as f64 * params.mode_spacing())
}

/// Largest mode index whose frequency does not exceed the cutoff. The
/// boundary is inclusive: a mode sitting exactly on `omega_cut` is kept.
pub fn max_mode_index(params: &PhysicalParams) -> Result<usize> {
    params.validate()?;
    let spacing = params.mode_spacing();
    let mut n = (params.omega_cut / spacing).floor() as usize;
    // Correct the floor against the same product used by `mode_frequency`.
    while (n + 1) as f64 * spacing <= params.omega_cut {
        n += 1;
    }
    while n > 0 && n as f64 * spacing > params.omega_cut {
        n -= 1;
    }
    if n == 0 {
        return Err(Error::CutoffBelowFundamental {
            omega_cut: params.omega_cut,
            fundamental: spacing,
        });
    }
    Ok(n)
}

/// The retained Dirichlet modes `1..=n_max` and their frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    params: PhysicalParams,
    omegas: Vec<f64>,
}

impl ModeBasis {
    pub fn new(params: &PhysicalParams) -> Result<Self> {
        let n_max = max_mode_index(params)?;
        let spacing = params.mode_spacing();
        let omegas = (1..=n_max).map(|k| k as f64 * spacing).collect();
        Ok(Self {
            params: *params,
            omegas,
        })
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.omegas.len()
    }

    /// Frequencies of modes `1..=n_max`; slice position `i` holds mode `i + 1`.
    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn omega(&self, k: usize) -> Result<f64> {
        self.check_index(k)?;
        Ok(self.omegas[k - 1])
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if (1..=self.n_max()).contains(&k) {
            Ok(())
        } else {
            Err(Error::ModeIndex {
                index: k as i64,
                n_max: self.n_max(),
            })
        }
    }
}

/// `(-1)^(k + j)` for mode labels.
pub(crate) fn parity_sign(k: usize, j: usize) -> f64 {
    if (k + j) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn test_units() -> PhysicalParams {
        PhysicalParams::with_constants(1.0, 1.0, 1.0, 10.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn frequency_in_test_units() {
        assert_eq!(mode_frequency(2, &test_units()).unwrap(), 2.0 * PI);
    }

    #[test]
    fn fundamental_at_ten_microns() {
        let p = PhysicalParams::figure_defaults();
        let w1 = mode_frequency(1, &p).unwrap();
        assert_relative_eq!(w1, 9.4181e13, max_relative = 1e-4);
        assert_relative_eq!(w1, PI * C_SI / 10e-6, max_relative = 1e-15);
    }

    #[test]
    fn rejects_non_positive_index() {
        let p = test_units();
        assert!(mode_frequency(0, &p).is_err());
        assert!(mode_frequency(-3, &p).is_err());
    }

    #[test]
    fn cutoff_counts_for_figure_regimes() {
        let p = PhysicalParams::figure_defaults();
        assert_eq!(max_mode_index(&p).unwrap(), 106);
        assert_eq!(max_mode_index(&p.with_omega_cut(5e15).unwrap()).unwrap(), 53);
    }

    #[test]
    fn cutoff_boundary_is_inclusive() {
        let p = PhysicalParams::new(10e-6, 1e-11, 1e5, PI * C_SI / 10e-6).unwrap();
        assert_eq!(max_mode_index(&p).unwrap(), 1);
        let n = PhysicalParams::natural(1.0, 1.0, 7).unwrap();
        assert_eq!(max_mode_index(&n).unwrap(), 7);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 1e16).is_err());
        assert!(PhysicalParams::new(1e-5, -1.0, 1.0, 1e16).is_err());
        assert!(PhysicalParams::new(1e-5, 1.0, f64::NAN, 1e16).is_err());
        // cutoff below the first mode
        assert!(matches!(
            PhysicalParams::new(1e-5, 1.0, 1.0, 1e13),
            Err(Error::CutoffBelowFundamental { .. })
        ));
    }

    #[test]
    fn basis_index_checks() {
        let b = ModeBasis::new(&PhysicalParams::natural(1.0, 1.0, 3).unwrap()).unwrap();
        assert_eq!(b.n_max(), 3);
        assert!(b.omega(0).is_err());
        assert!(b.omega(4).is_err());
        assert_eq!(b.omega(3).unwrap(), 3.0 * PI);
    }

    proptest! {
        #[test]
        fn doubling_index_doubles_frequency(k in 1i64..100_000, l0 in 1e-7f64..1e-2) {
            let p = PhysicalParams::new(l0, 1.0, 1.0, 1e20).unwrap();
            prop_assert_eq!(
                mode_frequency(2 * k, &p).unwrap(),
                2.0 * mode_frequency(k, &p).unwrap()
            );
        }

        #[test]
        fn basis_is_equally_spaced_and_brackets_cutoff(
            l0 in 1e-6f64..1e-4,
            cut in 1e14f64..3e16,
        ) {
            let p = match PhysicalParams::new(l0, 1.0, 1.0, cut) {
                Ok(p) => p,
                Err(_) => return Ok(()),
            };
            let basis = ModeBasis::new(&p).unwrap();
            let n = basis.n_max();
            let spacing = p.mode_spacing();
            for w in basis.omegas().windows(2) {
                prop_assert!((w[1] - w[0] - spacing).abs() <= 1e-9 * spacing);
                prop_assert!(w[1] > w[0]);
            }
            prop_assert!(mode_frequency(n as i64, &p).unwrap() <= cut);
            prop_assert!(mode_frequency(n as i64 + 1, &p).unwrap() > cut);
        }

        #[test]
        fn max_index_monotone(
            l0 in 1e-6f64..1e-4,
            cut in 1e15f64..3e16,
            grow in 1.0f64..3.0,
        ) {
            let p = PhysicalParams::new(l0, 1.0, 1.0, cut).unwrap();
            let n = max_mode_index(&p).unwrap();
            prop_assert!(max_mode_index(&p.with_omega_cut(cut * grow).unwrap()).unwrap() >= n);
            prop_assert!(max_mode_index(&p.with_l0(l0 * grow).unwrap()).unwrap() >= n);
        }
    }
}
