//! Key-value parameter files.
//!
//! Grammar, one entry per line:
//!
//! ```text
//! line    := blank | comment | entry
//! comment := '#' any*
//! entry   := key ws* '=' ws* number ws* comment?
//! key     := L0_m | M_kg | omega_osc | omega_cut | hbar | c
//! ```
//!
//! `L0_m`, `M_kg`, `omega_osc` and `omega_cut` are required; `hbar` and `c`
//! default to their SI values. Unknown or repeated keys are errors.

use crate::error::{Error, Result};
use crate::params::{PhysicalParams, C_SI, HBAR_SI};

pub const KEYS: [&str; 6] = ["L0_m", "M_kg", "omega_osc", "omega_cut", "hbar", "c"];

/// Parameter values read from a file; any of them may be absent so that
/// command-line flags can fill or override them before validation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamOverrides {
    pub l0: Option<f64>,
    pub mass: Option<f64>,
    pub omega_osc: Option<f64>,
    pub omega_cut: Option<f64>,
    pub hbar: Option<f64>,
    pub c: Option<f64>,
}

impl ParamOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            let value = value.trim();
            let number: f64 = value
                .parse()
                .map_err(|_| err(format!("`{value}` is not a number")))?;
            let slot = out
                .slot_mut(key)
                .ok_or_else(|| err(format!("unknown key `{key}` (expected one of {KEYS:?})")))?;
            if slot.is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
            *slot = Some(number);
        }
        Ok(out)
    }

    fn slot_mut(&mut self, key: &str) -> Option<&mut Option<f64>> {
        match key {
            "L0_m" => Some(&mut self.l0),
            "M_kg" => Some(&mut self.mass),
            "omega_osc" => Some(&mut self.omega_osc),
            "omega_cut" => Some(&mut self.omega_cut),
            "hbar" => Some(&mut self.hbar),
            "c" => Some(&mut self.c),
            _ => None,
        }
    }

    /// Entries of `other` take precedence over those of `self`.
    pub fn merged(self, other: Self) -> Self {
        Self {
            l0: other.l0.or(self.l0),
            mass: other.mass.or(self.mass),
            omega_osc: other.omega_osc.or(self.omega_osc),
            omega_cut: other.omega_cut.or(self.omega_cut),
            hbar: other.hbar.or(self.hbar),
            c: other.c.or(self.c),
        }
    }

    /// Fill gaps from `fallback` and validate.
    pub fn resolve_with(self, fallback: &PhysicalParams) -> Result<PhysicalParams> {
        PhysicalParams::with_constants(
            self.l0.unwrap_or(fallback.l0),
            self.mass.unwrap_or(fallback.mass),
            self.omega_osc.unwrap_or(fallback.omega_osc),
            self.omega_cut.unwrap_or(fallback.omega_cut),
            self.hbar.unwrap_or(fallback.hbar),
            self.c.unwrap_or(fallback.c),
        )
    }

    /// Strict resolution: the four physical keys must all be present.
    pub fn resolve(self) -> Result<PhysicalParams> {
        let missing = |key: &str| Error::Config {
            line: 0,
            message: format!("missing required key `{key}`"),
        };
        PhysicalParams::with_constants(
            self.l0.ok_or_else(|| missing("L0_m"))?,
            self.mass.ok_or_else(|| missing("M_kg"))?,
            self.omega_osc.ok_or_else(|| missing("omega_osc"))?,
            self.omega_cut.ok_or_else(|| missing("omega_cut"))?,
            self.hbar.unwrap_or(HBAR_SI),
            self.c.unwrap_or(C_SI),
        )
    }
}

/// Parse a complete parameter file.
pub fn parse_params(text: &str) -> Result<PhysicalParams> {
    ParamOverrides::parse(text)?.resolve()
}

/// Render parameters in the same grammar, one `# key = value` line each,
/// for echoing at the top of output files.
pub fn echo_lines(params: &PhysicalParams) -> Vec<String> {
    let values = [
        params.l0,
        params.mass,
        params.omega_osc,
        params.omega_cut,
        params.hbar,
        params.c,
    ];
    KEYS.iter()
        .zip(values)
        .map(|(k, v)| format!("{k} = {v:e}"))
        .collect()
}
