//! JSON inputs given either inline or as a file path.

use nalgebra::DVector;
use qel_core::channel::{ChannelSpec, GaussianChannel};
use qel_core::state::{GaussianState, OneModeParams};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Inline JSON if the argument starts with `{` or `[`, otherwise a path.
pub fn read_json_arg(arg: &str) -> Result<serde_json::Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed JSON in {arg}: {e}")))
}

pub fn parse_channel(value: serde_json::Value) -> Result<GaussianChannel> {
    let spec: ChannelSpec =
        serde_json::from_value(value).map_err(|e| CliError::Usage(format!("bad channel spec: {e}")))?;
    Ok(spec.build()?)
}

pub fn channel_arg(arg: &str) -> Result<GaussianChannel> {
    parse_channel(read_json_arg(arg)?)
}

/// State constructors accepted next to the raw `{"n", "mean", "cov"}` form.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Vacuum {
        #[serde(default = "one")]
        modes: usize,
    },
    /// Either `energy` (mean along `q`) or an explicit `mean`.
    Coherent {
        energy: Option<f64>,
        mean: Option<Vec<f64>>,
    },
    Thermal {
        #[serde(rename = "N")]
        n_photons: f64,
    },
    /// Displaced squeezed thermal state.
    Squeezed {
        z: f64,
        #[serde(default)]
        theta: f64,
        #[serde(default = "unit")]
        nu: f64,
        #[serde(default)]
        mean: [f64; 2],
    },
}

fn one() -> usize {
    1
}

fn unit() -> f64 {
    1.0
}

impl StateSpec {
    pub fn build(&self) -> Result<GaussianState> {
        Ok(match self {
            StateSpec::Vacuum { modes } => GaussianState::vacuum(*modes)?,
            StateSpec::Coherent { energy, mean } => match (energy, mean) {
                (Some(e), None) => {
                    if !(*e >= 0.0) {
                        return Err(CliError::Usage(format!("coherent energy must be >= 0, got {e}")));
                    }
                    GaussianState::coherent(DVector::from_vec(vec![(2.0 * e).sqrt(), 0.0]))?
                }
                (None, Some(m)) => GaussianState::coherent(DVector::from_vec(m.clone()))?,
                _ => return Err(CliError::Usage("coherent state needs exactly one of energy, mean".into())),
            },
            StateSpec::Thermal { n_photons } => GaussianState::thermal(*n_photons)?,
            StateSpec::Squeezed { z, theta, nu, mean } => {
                let norm = mean[0].hypot(mean[1]);
                let dir = if norm > 0.0 { *mean } else { [1.0, 0.0] };
                GaussianState::from_params(&OneModeParams { z: *z, theta: *theta, nu: *nu, mean_norm: norm, mean_dir: dir })?
            }
        })
    }
}

pub fn parse_state(value: serde_json::Value) -> Result<GaussianState> {
    let bad = |e: serde_json::Error| CliError::Usage(format!("bad state spec: {e}"));
    if value.get("kind").is_some() {
        let spec: StateSpec = serde_json::from_value(value).map_err(bad)?;
        spec.build()
    } else {
        // raw states are validated on deserialization; keep the core error's message
        serde_json::from_value(value).map_err(bad)
    }
}

pub fn state_arg(arg: &str) -> Result<GaussianState> {
    parse_state(read_json_arg(arg)?)
}
