//! Sweeps of X, Y and C_lp^2 over equal-magnitude off-diagonal patterns:
//! either the number of non-zero pairs at fixed magnitude, or the magnitude
//! at a fixed number of pairs.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{make_family, pair_count, StateFamilySpec};
use crate::manifest::RowValidity;
use crate::measures::{c_lp, quantity_y, x_unchecked};
use crate::numeric::fmt_sig17;
use crate::state::{HermitianState, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Vary the number of non-zero pairs `n` at fixed magnitude.
    CountSweep,
    /// Vary the magnitude `m` at a fixed number of pairs.
    MagnitudeSweep,
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepKind::CountSweep => "count_sweep",
            SweepKind::MagnitudeSweep => "magnitude_sweep",
        })
    }
}

impl FromStr for SweepKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "count" | "count_sweep" => Ok(SweepKind::CountSweep),
            "magnitude" | "magnitude_sweep" => Ok(SweepKind::MagnitudeSweep),
            other => Err(format!("unknown sweep kind '{other}' (expected count|magnitude)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub d: usize,
    pub p_values: Vec<f64>,
    pub sweep_kind: SweepKind,
    /// Magnitude for a count sweep, pair count for a magnitude sweep.
    pub fixed_value: f64,
    pub grid: Vec<f64>,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
    pub mode: Mode,
}

impl SweepConfig {
    /// `d = 3`, `m = 1/3`, `n = 1, 2, 3` at `p = 1`.
    pub fn count_panel() -> Self {
        SweepConfig {
            d: 3,
            p_values: vec![1.0],
            sweep_kind: SweepKind::CountSweep,
            fixed_value: 1.0 / 3.0,
            grid: vec![1.0, 2.0, 3.0],
            seed: 0,
            output_path: None,
            mode: Mode::Formal,
        }
    }

    /// `d = 3`, `n = 2`, `m` from 0 to 1/3 in steps of 1/30, at `p = 1`.
    pub fn magnitude_panel() -> Self {
        SweepConfig {
            d: 3,
            p_values: vec![1.0],
            sweep_kind: SweepKind::MagnitudeSweep,
            fixed_value: 2.0,
            grid: (0..=10).map(|k| k as f64 / 30.0).collect(),
            seed: 0,
            output_path: None,
            mode: Mode::Formal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::DimensionTooSmall { dim: self.d, min: 2 });
        }
        if self.grid.is_empty() {
            return Err(Error::InvalidFamilyParams("sweep grid is empty".into()));
        }
        if self.p_values.is_empty() {
            return Err(Error::InvalidConfig("no p values given".into()));
        }
        if let Some(&p) = self.p_values.iter().find(|&&p| !(1.0..=2.0).contains(&p)) {
            return Err(Error::InvalidP {
                p,
                reason: "requires 1 <= p <= 2",
            });
        }
        let max = pair_count(self.d);
        let is_count = |v: f64| v.fract() == 0.0 && v >= 1.0 && v <= max as f64;
        match self.sweep_kind {
            SweepKind::CountSweep => {
                if let Some(&g) = self.grid.iter().find(|&&g| !is_count(g)) {
                    return Err(Error::InvalidFamilyParams(format!(
                        "count grid value {g} outside 1..={max}"
                    )));
                }
                if !(self.fixed_value >= 0.0 && self.fixed_value.is_finite()) {
                    return Err(Error::InvalidFamilyParams(format!(
                        "magnitude {} must be >= 0",
                        self.fixed_value
                    )));
                }
            }
            SweepKind::MagnitudeSweep => {
                if !is_count(self.fixed_value) {
                    return Err(Error::InvalidFamilyParams(format!(
                        "pair count {} outside 1..={max}",
                        self.fixed_value
                    )));
                }
                if let Some(&g) = self.grid.iter().find(|&&g| !(g >= 0.0 && g.is_finite())) {
                    return Err(Error::InvalidFamilyParams(format!("magnitude {g} must be >= 0")));
                }
            }
        }
        Ok(())
    }

    fn state_at(&self, grid_value: f64) -> Result<HermitianState> {
        let spec = match self.sweep_kind {
            SweepKind::CountSweep => StateFamilySpec::UniformOffDiag {
                count: grid_value as usize,
                magnitude: self.fixed_value,
            },
            SweepKind::MagnitudeSweep => StateFamilySpec::UniformOffDiag {
                count: self.fixed_value as usize,
                magnitude: grid_value,
            },
        };
        make_family(&spec, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerP {
    pub p: f64,
    pub x: f64,
    pub y: f64,
    pub c_lp_sq: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub grid_value: f64,
    pub per_p: Vec<PerP>,
    /// `C_l1^2 / d`.
    pub c_l1_sq_over_d: f64,
    pub strict_psd: bool,
}

/// Evaluate every grid point. In strict mode a non-PSD grid point is an
/// error; in formal mode it is kept and flagged.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    cfg.grid
        .iter()
        .map(|&g| {
            let rho = cfg.state_at(g)?;
            let strict_psd = rho.mode() == Mode::Strict;
            if cfg.mode == Mode::Strict && !strict_psd {
                return Err(Error::InvalidFamilyParams(format!(
                    "grid value {g}: table is not positive semidefinite (min eigenvalue {:e}); \
                     use formal mode to evaluate it",
                    rho.min_eigenvalue()
                )));
            }
            let per_p = cfg
                .p_values
                .iter()
                .map(|&p| {
                    let cp = c_lp(&rho, p)?;
                    Ok(PerP {
                        p,
                        x: x_unchecked(&rho, p)?,
                        y: quantity_y(&rho, p)?,
                        c_lp_sq: cp * cp,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let c1 = c_lp(&rho, 1.0)?;
            Ok(SweepRow {
                grid_value: g,
                per_p,
                c_l1_sq_over_d: c1 * c1 / cfg.d as f64,
                strict_psd,
            })
        })
        .collect()
}

pub fn csv_header(cfg: &SweepConfig) -> Vec<String> {
    let mut h = vec!["grid_value".to_owned()];
    for p in &cfg.p_values {
        h.push(format!("x_p{p}"));
        h.push(format!("y_p{p}"));
        h.push(format!("c_lp_sq_p{p}"));
    }
    h.push("c_l1_sq_over_d".to_owned());
    h.push("strict_psd".to_owned());
    h
}

/// Comma-delimited, header row, 17 significant digits per value.
pub fn write_csv<W: Write>(cfg: &SweepConfig, rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(cfg))?;
    for r in rows {
        let mut rec = vec![fmt_sig17(r.grid_value)];
        for v in &r.per_p {
            rec.extend([fmt_sig17(v.x), fmt_sig17(v.y), fmt_sig17(v.c_lp_sq)]);
        }
        rec.push(fmt_sig17(r.c_l1_sq_over_d));
        rec.push(r.strict_psd.to_string());
        w.write_record(rec)?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

pub fn row_validity(rows: &[SweepRow]) -> Vec<RowValidity> {
    rows.iter()
        .map(|r| RowValidity {
            grid_value: r.grid_value,
            strict_psd: r.strict_psd,
        })
        .collect()
}
