//! Parameter-grid runs mirroring the stability tables.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::potential::hf_from_index;
use crate::scheme::time_loop;

use super::io::full_precision;
use super::RunSummary;

/// A scalar configuration entry swept by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HarnessParam {
    Beta,
    Eps,
    /// The stabilization coefficient itself.
    Hf,
    /// Index `M` of the stability tables: `hf = hf_from_index(M)`, so
    /// `M = 0` is unstabilized and `M = 2` gives the 2D bound.
    Index,
}

impl HarnessParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::Beta => "beta",
            Self::Eps => "eps",
            Self::Hf => "hf",
            Self::Index => "M",
        }
    }

    pub fn apply(self, cfg: &mut SimConfig, value: f64) -> Result<()> {
        match self {
            Self::Beta => cfg.beta = value,
            Self::Eps => cfg.eps = value,
            Self::Hf => cfg.hf = value,
            Self::Index => {
                if !(value >= 0.0 && value.is_finite()) {
                    return Err(Error::config("M", format!("must be non-negative, got {value}")));
                }
                cfg.hf = hf_from_index(value)
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessAxis {
    pub param: HarnessParam,
    pub values: Vec<f64>,
}

impl HarnessAxis {
    pub fn new(param: HarnessParam, values: impl Into<Vec<f64>>) -> Self {
        Self {
            param,
            values: values.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessCell {
    pub axis1: f64,
    pub axis2: f64,
    /// `None` when the run failed with an error.
    pub summary: Option<RunSummary>,
    pub error: Option<String>,
}

impl HarnessCell {
    pub fn stable(&self) -> bool {
        self.summary.as_ref().is_some_and(|s| s.stable)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessTable {
    pub axis1: HarnessAxis,
    pub axis2: HarnessAxis,
    /// Row-major: `cells[i * axis2.len() + j]`.
    pub cells: Vec<HarnessCell>,
}

fn run_cell(base: &SimConfig, a1: &HarnessAxis, v1: f64, a2: &HarnessAxis, v2: f64) -> HarnessCell {
    let outcome = (|| {
        let mut cfg = base.clone();
        a1.param.apply(&mut cfg, v1)?;
        a2.param.apply(&mut cfg, v2)?;
        cfg.validate()?;
        Ok::<_, Error>(time_loop(&cfg)?.summary())
    })();
    match outcome {
        Ok(summary) => HarnessCell {
            axis1: v1,
            axis2: v2,
            summary: Some(summary),
            error: None,
        },
        Err(e) => {
            log::warn!("{}={v1}, {}={v2}: {e}", a1.param.name(), a2.param.name());
            HarnessCell {
                axis1: v1,
                axis2: v2,
                summary: None,
                error: Some(e.to_string()),
            }
        }
    }
}

/// One run per grid cell, in parallel. Failed cells are recorded and the
/// remaining cells still run.
pub fn run_table_harness(axis1: &HarnessAxis, axis2: &HarnessAxis, base: &SimConfig) -> HarnessTable {
    let pairs: Vec<(f64, f64)> = axis1
        .values
        .iter()
        .flat_map(|&a| axis2.values.iter().map(move |&b| (a, b)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|&(a, b)| run_cell(base, axis1, a, axis2, b))
        .collect();
    HarnessTable {
        axis1: axis1.clone(),
        axis2: axis2.clone(),
        cells,
    }
}

impl HarnessTable {
    pub fn cell(&self, i: usize, j: usize) -> &HarnessCell {
        &self.cells[i * self.axis2.values.len() + j]
    }

    /// Columns `axis1, axis2, stable, T_A, E_kin_max, annihilated`; the
    /// last three are empty where undefined.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["axis1", "axis2", "stable", "T_A", "E_kin_max", "annihilated"])?;
        let opt = |v: Option<f64>| v.map(full_precision).unwrap_or_default();
        for c in &self.cells {
            let s = c.summary.as_ref();
            w.write_record([
                full_precision(c.axis1),
                full_precision(c.axis2),
                c.stable().to_string(),
                opt(s.and_then(|s| s.t_a)),
                opt(s.and_then(|s| s.e_kin_max)),
                s.and_then(|s| s.annihilated()).map(|a| a.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush().map_err(|e| Error::io(path, e))?;
        Ok(())
    }

    /// Plain-text grid: `T_A / E_kin_max` per cell, `x` for unstable
    /// runs and `no annihil.` when the defects survive.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:>8} |", format!("{}\\{}", self.axis1.param.name(), self.axis2.param.name()));
        for v in &self.axis2.values {
            let _ = write!(out, " {v:>20} |");
        }
        out.push('\n');
        for (i, a) in self.axis1.values.iter().enumerate() {
            let _ = write!(out, "{a:>8} |");
            for j in 0..self.axis2.values.len() {
                let c = self.cell(i, j);
                let text = match &c.summary {
                    None => "error".to_string(),
                    Some(s) if !s.stable => "x".to_string(),
                    Some(s) => {
                        let base = format!("{:.3} / {:.4}", s.t_a.unwrap_or(f64::NAN), s.e_kin_max.unwrap_or(f64::NAN));
                        if s.annihilated() == Some(false) {
                            format!("no annihil. {:.4}", s.e_kin_max.unwrap_or(f64::NAN))
                        } else {
                            base
                        }
                    }
                };
                let _ = write!(out, " {text:>20} |");
            }
            out.push('\n');
        }
        out
    }
}
