//! Experiment configuration, read from JSON. Every field has a default, so
//! `{}` is a valid config; unknown fields are rejected.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Operators,
    Coherent,
    UncertaintyGlobal,
    UncertaintySlice,
    Uncertainty,
    Resolution,
    Quantize,
    Liealg,
    Displacement,
    All,
}

impl Suite {
    /// The leaf suites this name stands for, in report order.
    pub fn expand(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            Uncertainty => vec![Coherent, UncertaintyGlobal, UncertaintySlice],
            All => vec![
                Operators,
                Coherent,
                UncertaintyGlobal,
                UncertaintySlice,
                Resolution,
                Quantize,
                Liealg,
                Displacement,
            ],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        use Suite::*;
        match self {
            Operators => "operators",
            Coherent => "coherent",
            UncertaintyGlobal => "uncertainty_global",
            UncertaintySlice => "uncertainty_slice",
            Uncertainty => "uncertainty",
            Resolution => "resolution",
            Quantize => "quantize",
            Liealg => "liealg",
            Displacement => "displacement",
            All => "all",
        }
    }
}

/// Node counts of a product grid with the coherent-state radial measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_r: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_psi: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    pub axes: usize,
    pub states: usize,
    pub global_pairs: usize,
    pub decreasing_steps: usize,
    pub slice_states: usize,
    pub c_series: usize,
    pub lie_tuples: usize,
    pub displacement_states: usize,
    pub phase_pairs: usize,
    pub derivative_points: usize,
    pub admissibility_vectors: usize,
    pub rank_samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            axes: 100,
            states: 200,
            global_pairs: 1000,
            decreasing_steps: 9,
            slice_states: 200,
            c_series: 1000,
            lie_tuples: 10_000,
            displacement_states: 20,
            phase_pairs: 10,
            derivative_points: 50,
            admissibility_vectors: 20,
            rank_samples: 200,
        }
    }
}

/// Radii of the balls that random quaternions are drawn from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RangeConfig {
    pub state_max: f64,
    pub global_max: f64,
    pub c_series_max: f64,
    pub displacement_max: f64,
    pub unitarity_max: f64,
    pub shift_max: f64,
    pub pair_max: f64,
    pub derivative_max: f64,
    pub admissibility_max: f64,
    pub rank_max: f64,
}

impl Default for RangeConfig {
    fn default() -> Self {
        Self {
            state_max: 1.0,
            global_max: 0.4,
            c_series_max: 1.5,
            displacement_max: 1.0,
            unitarity_max: 2.0,
            shift_max: 0.5,
            pair_max: 0.5,
            derivative_max: 1.0,
            admissibility_max: 0.5,
            rank_max: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: Suite,
    /// Fock truncation for operator, coherent-state and displacement checks.
    pub dim: usize,
    /// Leading block for quantization and resolution checks.
    pub block: usize,
    /// Largest coherent-state mass allowed beyond the truncation.
    pub tail_eps: f64,
    pub seed: u64,
    /// Not written to reports: results do not depend on it.
    #[serde(skip_serializing)]
    pub parallel: bool,
    /// Not written to reports: results do not depend on it.
    #[serde(skip_serializing)]
    pub out: PathBuf,
    /// Finite-difference step for the slice derivative identities.
    pub fd_step: f64,
    pub quadrature: GridConfig,
    pub admissibility_quadrature: GridConfig,
    pub samples: SampleConfig,
    pub ranges: RangeConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            dim: 64,
            block: 12,
            tail_eps: 1e-14,
            seed: 20240917,
            parallel: false,
            out: PathBuf::from("qwh-report"),
            fd_step: 1e-3,
            quadrature: GridConfig { n_r: 64, n_theta: 32, n_phi: 2, n_psi: 3 },
            admissibility_quadrature: GridConfig { n_r: 16, n_theta: 24, n_phi: 12, n_psi: 24 },
            samples: SampleConfig::default(),
            ranges: RangeConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.dim < 2 {
            return bad(format!("dim must be at least 2, got {}", self.dim));
        }
        if self.block == 0 {
            return bad("block must be positive".into());
        }
        if !(self.tail_eps > 0.0 && self.tail_eps < 1.0) {
            return bad(format!("tail_eps must lie in (0, 1), got {}", self.tail_eps));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return bad(format!("fd_step must be positive, got {}", self.fd_step));
        }
        for (name, g) in
            [("quadrature", &self.quadrature), ("admissibility_quadrature", &self.admissibility_quadrature)]
        {
            if g.n_r == 0 || g.n_theta == 0 || g.n_phi == 0 || g.n_psi == 0 {
                return bad(format!("{name}: node counts must be positive"));
            }
        }
        let s = &self.samples;
        let counts = [
            ("axes", s.axes),
            ("states", s.states),
            ("global_pairs", s.global_pairs),
            ("decreasing_steps", s.decreasing_steps),
            ("slice_states", s.slice_states),
            ("c_series", s.c_series),
            ("lie_tuples", s.lie_tuples),
            ("displacement_states", s.displacement_states),
            ("phase_pairs", s.phase_pairs),
            ("derivative_points", s.derivative_points),
            ("admissibility_vectors", s.admissibility_vectors),
            ("rank_samples", s.rank_samples),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, c)| *c == 0) {
            return bad(format!("samples.{name} must be positive"));
        }
        let r = &self.ranges;
        let radii = [
            ("state_max", r.state_max),
            ("global_max", r.global_max),
            ("c_series_max", r.c_series_max),
            ("displacement_max", r.displacement_max),
            ("unitarity_max", r.unitarity_max),
            ("shift_max", r.shift_max),
            ("pair_max", r.pair_max),
            ("derivative_max", r.derivative_max),
            ("admissibility_max", r.admissibility_max),
            ("rank_max", r.rank_max),
        ];
        if let Some((name, v)) = radii.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
            return bad(format!("ranges.{name} must be positive and finite, got {v}"));
        }
        Ok(())
    }
}
