use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cavity_vacuum::config::ParamOverrides;
use cavity_vacuum::density::{density_profile, DEFAULT_GRID};
use cavity_vacuum::hamiltonian::PerturbationAmplitudes;
use cavity_vacuum::observables::{casimir_energy_correction, energy_shift, photon_spectrum, DEFAULT_FD_STEP};
use cavity_vacuum::oracle::{oracle_report, FockConfig};
use cavity_vacuum::output;
use cavity_vacuum::PhysicalParams;

/// Vacuum observables of a 1D cavity with a quantum, harmonically bound mirror.
#[derive(Debug, Parser)]
#[command(name = "cavity-vacuum", version)]
struct Cli {
    /// Parameter file (`key = value` lines: L0_m, M_kg, omega_osc, omega_cut, hbar, c).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output CSV path; CSV goes to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Treat warnings (cutoff crossing, non-perturbative amplitudes) as errors.
    #[arg(long, global = true)]
    strict: bool,

    #[command(flatten)]
    params: ParamFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamFlags {
    /// Equilibrium cavity length, m.
    #[arg(long = "L0-m", global = true)]
    l0: Option<f64>,
    /// Mirror mass, kg.
    #[arg(long = "M-kg", global = true)]
    mass: Option<f64>,
    /// Mirror binding frequency, rad/s.
    #[arg(long = "omega-osc", global = true)]
    omega_osc: Option<f64>,
    /// Sharp cutoff frequency, rad/s.
    #[arg(long = "omega-cut", global = true)]
    omega_cut: Option<f64>,
    #[arg(long, global = true)]
    hbar: Option<f64>,
    #[arg(long, global = true)]
    c: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Photon number per cavity mode.
    Spectrum,
    /// Renormalized energy density profile over [0, L0].
    Density {
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Second-order energy shift and its free/interaction split.
    Budget,
    /// Casimir energy and force corrections.
    Force {
        /// Relative finite-difference step in L0.
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        step: f64,
    },
    /// Spectra or density profiles along one parameter axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated, strictly increasing positive values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Observable::Spectrum)]
        observable: Observable,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Exact-diagonalization check of the perturbative energy shift
    /// (natural units, hbar = c = L0 = 1).
    OracleCheck {
        /// Comma-separated coupling dial values.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025")]
        lambda_ladder: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        modes: usize,
        #[arg(long, default_value_t = 4)]
        max_photons: u32,
        #[arg(long, default_value_t = 2)]
        max_mirror: u32,
        /// Mirror mass in natural units.
        #[arg(long, default_value_t = 10.0)]
        oracle_mass: f64,
        /// Mirror frequency in natural units.
        #[arg(long, default_value_t = std::f64::consts::PI)]
        oracle_omega_osc: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Axis {
    #[value(name = "omega_osc")]
    OmegaOsc,
    #[value(name = "omega_cut")]
    OmegaCut,
    #[value(name = "M")]
    Mass,
    #[value(name = "L0")]
    L0,
}

impl Axis {
    fn column(self) -> &'static str {
        match self {
            Axis::OmegaOsc => "omega_osc",
            Axis::OmegaCut => "omega_cut",
            Axis::Mass => "M_kg",
            Axis::L0 => "L0_m",
        }
    }

    fn apply(self, params: PhysicalParams, value: f64) -> cavity_vacuum::Result<PhysicalParams> {
        match self {
            Axis::OmegaOsc => params.with_omega_osc(value),
            Axis::OmegaCut => params.with_omega_cut(value),
            Axis::Mass => params.with_mass(value),
            Axis::L0 => params.with_l0(value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Observable {
    Spectrum,
    Density,
}

impl ParamFlags {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            l0: self.l0,
            mass: self.mass,
            omega_osc: self.omega_osc,
            omega_cut: self.omega_cut,
            hbar: self.hbar,
            c: self.c,
        }
    }
}

fn resolve_params(cli: &Cli) -> Result<PhysicalParams> {
    let flags = cli.params.overrides();
    let params = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            ParamOverrides::parse(&text)?.merged(flags).resolve()?
        }
        None => flags.resolve_with(&PhysicalParams::figure_defaults())?,
    };
    Ok(params)
}

struct Warnings {
    strict: bool,
}

impl Warnings {
    fn raise(&self, message: String) -> Result<()> {
        if self.strict {
            bail!("{message}");
        }
        eprintln!("warning: {message}");
        Ok(())
    }

    fn check_perturbative(&self, params: &PhysicalParams) -> Result<()> {
        let amps = PerturbationAmplitudes::from_params(params)?;
        if !amps.is_perturbative() {
            self.raise(format!(
                "largest dressed-state amplitude {:e} is not small; first-order results are unreliable",
                amps.max_fock_amplitude()
            ))?;
        }
        Ok(())
    }
}

/// Runs the command and returns the CSV document and the summary line.
fn execute(cli: &Cli) -> Result<(String, String)> {
    let warn = Warnings { strict: cli.strict };
    if let Command::OracleCheck {
        lambda_ladder,
        modes,
        max_photons,
        max_mirror,
        oracle_mass,
        oracle_omega_osc,
    } = &cli.command
    {
        let params = PhysicalParams::natural(*oracle_mass, *oracle_omega_osc, *modes)?;
        let config = FockConfig::new(*modes, *max_photons, *max_mirror);
        let rows = oracle_report(&params, config, lambda_ladder)?;
        let extra = [
            ("modes", modes.to_string()),
            ("max_photons", max_photons.to_string()),
            ("max_mirror", max_mirror.to_string()),
        ];
        let csv = output::oracle_csv(&params, &extra, &rows);
        let last = rows.last().context("empty lambda ladder")?;
        let summary = format!(
            "oracle-check: {} rows, ratio {:.9} at lambda {:e}",
            rows.len(),
            last.ratio,
            last.lambda
        );
        return Ok((csv, summary));
    }

    let params = resolve_params(cli)?;
    warn.check_perturbative(&params)?;
    match &cli.command {
        Command::Spectrum => {
            let spectrum = photon_spectrum(&params)?;
            let summary = format!(
                "spectrum: {} modes, N_osc = {:e}",
                spectrum.numbers.len(),
                spectrum.n_osc
            );
            Ok((output::spectrum_csv(&spectrum), summary))
        }
        Command::Density { grid } => {
            let profile = density_profile(*grid, &params)?;
            let summary = format!("density: {grid} points, delta(L0) = {:e} J/m", profile.delta_at_wall());
            Ok((output::density_csv(&params, &profile), summary))
        }
        Command::Budget => {
            let budget = energy_shift(&params)?;
            let summary = format!("budget: E2 = {:e} J, N_osc = {:e}", budget.e2, budget.n_osc);
            Ok((output::budget_csv(&params, &budget), summary))
        }
        Command::Force { step } => {
            let force = casimir_energy_correction(&params, *step)?;
            if force.cutoff_crossed {
                warn.raise(format!(
                    "mode count changes between L0*(1-{step}) and L0*(1+{step}); shrink --step"
                ))?;
            }
            let summary = format!("force: E2 = {:e} J, dE2/dL0 = {:e} N", force.e2, force.de2_dl0);
            Ok((output::force_csv(&params, *step, &force), summary))
        }
        Command::Sweep {
            axis,
            values,
            observable,
            grid,
        } => sweep(&params, &warn, *axis, values, *observable, *grid),
        Command::OracleCheck { .. } => unreachable!("handled above"),
    }
}

fn sweep(
    params: &PhysicalParams,
    warn: &Warnings,
    axis: Axis,
    values: &[f64],
    observable: Observable,
    grid: usize,
) -> Result<(String, String)> {
    if values.len() < 2 {
        bail!("sweep needs at least two values");
    }
    if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        bail!("sweep values must be strictly positive");
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        bail!("sweep values must be strictly increasing");
    }
    let extra = [
        ("sweep_axis", axis.column().to_string()),
        ("sweep_observable", format!("{observable:?}").to_lowercase()),
    ];
    let mut csv = output::preamble(params, &extra);
    let mut rows = 0;
    let header = match observable {
        Observable::Spectrum => output::SPECTRUM_HEADER,
        Observable::Density => output::DENSITY_HEADER,
    };
    writeln!(csv, "{},{header}", axis.column())?;
    for &value in values {
        let point = axis.apply(*params, value)?;
        warn.check_perturbative(&point)?;
        match observable {
            Observable::Spectrum => {
                let spectrum = photon_spectrum(&point)?;
                rows += spectrum.numbers.len();
                output::spectrum_rows(&spectrum, &mut csv, Some(value));
            }
            Observable::Density => {
                let profile = density_profile(grid, &point)?;
                rows += profile.grid.len();
                output::density_rows(&profile, &mut csv, Some(value));
            }
        }
    }
    Ok((csv, format!("sweep: {rows} rows over {} values", values.len())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((csv, summary)) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, csv) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::FAILURE;
                    }
                    println!("{summary}");
                }
                None => {
                    print!("{csv}");
                    eprintln!("{summary}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
