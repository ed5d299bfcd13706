//! Optimal-ergotropy sweeps over the input energy.

use std::io::Write;
use std::str::FromStr;

use qel_core::channel::GaussianChannel;
use qel_core::optimize::maximize;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "E,value,ratio,z_star,theta_star,clamped";

/// Denominator of the `ratio` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Input energy `E`.
    Input,
    /// Output energy of the optimal input.
    Output,
}

/// Energies given as `lo:hi:n:log` or `lo:hi:n:lin`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub log: bool,
}

impl FromStr for EnergyRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n, scale] = parts[..] else {
            return Err(format!("expected lo:hi:n:log|lin, got {s:?}"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        let (lo, hi) = (num(lo)?, num(hi)?);
        let n: usize = n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?;
        let log = match scale.trim() {
            "log" => true,
            "lin" => false,
            other => return Err(format!("scale must be log or lin, got {other:?}")),
        };
        if n == 0 {
            return Err("the grid needs at least one point".into());
        }
        if !(lo >= 0.0 && hi >= lo) || !hi.is_finite() {
            return Err(format!("need 0 <= lo <= hi, got {lo}, {hi}"));
        }
        if log && lo <= 0.0 {
            return Err("a log grid needs lo > 0".into());
        }
        Ok(Self { lo, hi, n, log })
    }
}

impl EnergyRange {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                let s = i as f64 / last;
                if i + 1 == self.n {
                    self.hi
                } else if self.log {
                    (self.lo.ln() + s * (self.hi.ln() - self.lo.ln())).exp()
                } else {
                    self.lo + s * (self.hi - self.lo)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub channel: GaussianChannel,
    pub energies: Vec<f64>,
    pub nu: f64,
    pub normalization: Normalization,
}

impl SweepSpec {
    pub fn new(channel: GaussianChannel, energies: Vec<f64>, nu: f64, normalization: Normalization) -> Result<Self> {
        if energies.is_empty() {
            return Err(CliError::Usage("energy grid is empty".into()));
        }
        if let Some(e) = energies.iter().find(|e| !(**e >= 0.0) || !e.is_finite()) {
            return Err(CliError::Usage(format!("energies must be finite and >= 0, got {e}")));
        }
        Ok(Self { channel, energies, nu, normalization })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub energy: f64,
    pub value: f64,
    /// `value` over the chosen energy; NaN when that energy is zero.
    pub ratio: f64,
    pub z_star: f64,
    pub theta_star: f64,
    pub clamped: bool,
}

/// Rows in grid order. Points are evaluated in parallel.
pub fn run(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.energies
        .par_iter()
        .map(|&e| {
            let r = maximize(&spec.channel, e, spec.nu)?;
            let denom = match spec.normalization {
                Normalization::Input => e,
                Normalization::Output => spec.channel.apply(&r.input_state)?.mean_energy(),
            };
            let ratio = if denom > 0.0 { r.value / denom } else { f64::NAN };
            Ok(SweepRow {
                energy: e,
                value: r.value,
                ratio,
                z_star: r.z_star,
                theta_star: r.theta_star,
                clamped: r.clamped,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.energy, r.value, r.ratio, r.z_star, r.theta_star, r.clamped
        )?;
    }
    out.flush()
}
