//! CSV renderings of the computed quantities.
//!
//! Every document starts with `#` comment lines echoing the resolved
//! parameters, followed by one header row and the data rows. Floats use the
//! shortest representation that round-trips, so identical inputs give
//! byte-identical files.

use std::fmt::Write;

use crate::config::echo_lines;
use crate::density::EnergyDensityProfile;
use crate::hamiltonian::ModeMatrix;
use crate::observables::{CasimirCorrection, EnergyBudget, SpectrumResult};
use crate::oracle::OracleReportRow;
use crate::params::PhysicalParams;

pub const SPECTRUM_HEADER: &str = "mode_index,omega_rad_s,photon_number";
pub const BUDGET_HEADER: &str = "E2_J,H0_J,Hint_J,N_osc";
pub const FORCE_HEADER: &str = "E2_J,dE2_dL0_N,fixed_wall_force_N";
pub const DENSITY_HEADER: &str = "x_m,baseline_J_per_m,delta_J_per_m,total_J_per_m";
pub const ORACLE_HEADER: &str = "lambda,E_ground,E2_pert_prediction,ratio,truncation_estimate";

/// Comment preamble: the parameter echo plus any extra `key = value` pairs.
pub fn preamble(params: &PhysicalParams, extra: &[(&str, String)]) -> String {
    let mut out = String::new();
    for line in echo_lines(params) {
        writeln!(out, "# {line}").unwrap();
    }
    for (k, v) in extra {
        writeln!(out, "# {k} = {v}").unwrap();
    }
    out
}

pub fn spectrum_rows(spectrum: &SpectrumResult, out: &mut String, lead: Option<f64>) {
    for (i, (w, n)) in spectrum.basis.omegas().iter().zip(&spectrum.numbers).enumerate() {
        if let Some(v) = lead {
            write!(out, "{v:e},").unwrap();
        }
        writeln!(out, "{},{w:e},{n:e}", i + 1).unwrap();
    }
}

pub fn spectrum_csv(spectrum: &SpectrumResult) -> String {
    let mut out = preamble(spectrum.basis.params(), &[]);
    writeln!(out, "{SPECTRUM_HEADER}").unwrap();
    spectrum_rows(spectrum, &mut out, None);
    out
}

pub fn budget_csv(params: &PhysicalParams, b: &EnergyBudget) -> String {
    let mut out = preamble(params, &[]);
    writeln!(out, "{BUDGET_HEADER}").unwrap();
    writeln!(out, "{:e},{:e},{:e},{:e}", b.e2, b.h0, b.hint, b.n_osc).unwrap();
    out
}

pub fn force_csv(params: &PhysicalParams, step: f64, f: &CasimirCorrection) -> String {
    let mut out = preamble(params, &[("fd_step", format!("{step:e}"))]);
    writeln!(out, "{FORCE_HEADER}").unwrap();
    writeln!(out, "{:e},{:e},{:e}", f.e2, f.de2_dl0, f.fixed_wall_force).unwrap();
    out
}

pub fn density_rows(profile: &EnergyDensityProfile, out: &mut String, lead: Option<f64>) {
    for ((x, d), t) in profile.grid.iter().zip(&profile.delta).zip(&profile.total) {
        if let Some(v) = lead {
            write!(out, "{v:e},").unwrap();
        }
        writeln!(out, "{x:e},{:e},{d:e},{t:e}", profile.baseline).unwrap();
    }
}

pub fn density_csv(params: &PhysicalParams, profile: &EnergyDensityProfile) -> String {
    let mut out = preamble(params, &[("grid", profile.grid.len().to_string())]);
    writeln!(out, "{DENSITY_HEADER}").unwrap();
    density_rows(profile, &mut out, None);
    out
}

pub fn oracle_csv(params: &PhysicalParams, extra: &[(&str, String)], rows: &[OracleReportRow]) -> String {
    let mut out = preamble(params, extra);
    writeln!(out, "{ORACLE_HEADER}").unwrap();
    for r in rows {
        writeln!(
            out,
            "{:e},{:e},{:e},{:e},{:e}",
            r.lambda, r.e_ground, r.e2_prediction, r.ratio, r.truncation_estimate
        )
        .unwrap();
    }
    out
}

/// Debug dump of a mode matrix with mode labels on both axes.
pub fn matrix_csv(matrix: &ModeMatrix) -> String {
    let n = matrix.n_max();
    let mut out = String::from("mode");
    for j in 1..=n {
        write!(out, ",{j}").unwrap();
    }
    out.push('\n');
    for k in 1..=n {
        write!(out, "{k}").unwrap();
        for v in matrix.row(k) {
            write!(out, ",{v:e}").unwrap();
        }
        out.push('\n');
    }
    out
}
