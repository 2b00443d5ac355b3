//! Fidelity sweeps over a grid of noise probabilities, written as CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::amplitude::state_label;
use crate::analytic::{fidelity_closed, fidelity_linear};
use crate::channels::NoiseKind;
use crate::error::{Error, Result};
use crate::teleport::{teleport_fidelity, InputState, TeleportConfig};

/// Which fidelity columns a sweep computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Columns {
    pub numeric: bool,
    pub analytic: bool,
    pub linear: bool,
}

impl Default for Columns {
    fn default() -> Self {
        Self {
            numeric: true,
            analytic: true,
            linear: true,
        }
    }
}

impl FromStr for Columns {
    type Err = Error;

    /// Comma-separated subset of `numeric,analytic,linear`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cols = Columns {
            numeric: false,
            analytic: false,
            linear: false,
        };
        for name in s.split(',').map(str::trim) {
            match name {
                "numeric" => cols.numeric = true,
                "analytic" => cols.analytic = true,
                "linear" => cols.linear = true,
                other => return Err(Error::InvalidSweep(format!("unknown column `{other}`"))),
            }
        }
        Ok(cols)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub kind: NoiseKind,
    pub states: Vec<InputState<Complex64>>,
    pub p_start: f64,
    pub p_end: f64,
    pub steps: usize,
    pub columns: Columns,
}

impl SweepConfig {
    pub const DEFAULT_STEPS: usize = 101;

    pub fn new(
        kind: NoiseKind,
        states: Vec<InputState<Complex64>>,
        p_start: f64,
        p_end: f64,
        steps: usize,
        columns: Columns,
    ) -> Result<Self> {
        let config = Self {
            kind,
            states,
            p_start,
            p_end,
            steps,
            columns,
        };
        config.validate()?;
        Ok(config)
    }

    /// 101 points on `[0, 1]` for the basis state, the equal superposition
    /// and `(0.6, 0.8)`.
    pub fn with_defaults(kind: NoiseKind) -> Self {
        Self {
            kind,
            states: default_states(),
            p_start: 0.0,
            p_end: 1.0,
            steps: Self::DEFAULT_STEPS,
            columns: Columns::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSweep(msg));
        if !(0.0..=1.0).contains(&self.p_start) || !(0.0..=1.0).contains(&self.p_end) {
            return bad(format!(
                "p range [{}, {}] must lie in [0, 1]",
                self.p_start, self.p_end
            ));
        }
        if self.p_start > self.p_end {
            return bad(format!(
                "p_start {} exceeds p_end {}",
                self.p_start, self.p_end
            ));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if self.states.is_empty() {
            return bad("no input states".into());
        }
        let Columns {
            numeric,
            analytic,
            linear,
        } = self.columns;
        if !(numeric || analytic || linear) {
            return bad("no fidelity columns selected".into());
        }
        Ok(())
    }

    /// Evenly spaced grid whose endpoints are exactly `p_start` and `p_end`.
    pub fn grid(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.p_end
                } else {
                    self.p_start + (self.p_end - self.p_start) * k as f64 / last as f64
                }
            })
            .collect()
    }
}

pub fn default_states() -> Vec<InputState<Complex64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [(1.0, 0.0), (h, h), (0.6, 0.8)]
        .into_iter()
        .map(|(a, b)| InputState::real(a, b).expect("default states are normalized"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub state_label: String,
    pub f_numeric: Option<f64>,
    pub f_analytic: Option<f64>,
    pub f_linear: Option<f64>,
}

impl SweepRow {
    pub fn abs_diff(&self) -> Option<f64> {
        Some((self.f_numeric? - self.f_analytic?).abs())
    }

    /// The simulated value when present, else the closed form, else the
    /// linear approximation.
    pub fn primary(&self) -> f64 {
        self.f_numeric
            .or(self.f_analytic)
            .or(self.f_linear)
            .unwrap_or(f64::NAN)
    }
}

/// Rows ordered by state, then by `p`.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let grid = config.grid();
    let cols = config.columns;
    let mut rows = Vec::with_capacity(grid.len() * config.states.len());
    for state in &config.states {
        let label = state_label(state);
        for &p in &grid {
            let f_numeric = if cols.numeric {
                Some(teleport_fidelity(&TeleportConfig::float(
                    state.clone(),
                    config.kind,
                    p,
                )?)?)
            } else {
                None
            };
            let f_analytic = if cols.analytic {
                Some(fidelity_closed(config.kind, state, p)?)
            } else {
                None
            };
            let f_linear = cols.linear.then(|| fidelity_linear(config.kind, state, p));
            rows.push(SweepRow {
                p,
                state_label: label.clone(),
                f_numeric,
                f_analytic,
                f_linear,
            });
        }
    }
    Ok(rows)
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with LF line endings and 17 significant digits per float.
pub fn to_csv(columns: Columns, rows: &[SweepRow]) -> String {
    let mut header = vec!["p", "state_label"];
    if columns.numeric {
        header.push("f_numeric");
    }
    if columns.analytic {
        header.push("f_analytic");
    }
    if columns.linear {
        header.push("f_linear");
    }
    let with_diff = columns.numeric && columns.analytic;
    if with_diff {
        header.push("abs_diff");
    }
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut fields = vec![float(row.p), row.state_label.clone()];
        fields.extend(
            [row.f_numeric, row.f_analytic, row.f_linear]
                .into_iter()
                .flatten()
                .map(float),
        );
        if with_diff {
            fields.extend(row.abs_diff().map(float));
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

pub fn sweep_csv(config: &SweepConfig) -> Result<String> {
    Ok(to_csv(config.columns, &run_sweep(config)?))
}
