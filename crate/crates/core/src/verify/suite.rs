//! Drives every residual, slack and axiom check over random ensembles and
//! named families, streaming records and aggregating a summary.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{
    make_family, pair_count, sample_haar_pure, sample_hs_mixed, sample_incoherent, seeded_rng,
    StateFamilySpec,
};
use crate::state::HermitianState;

use super::axioms::{axiom_suite_particle, axiom_suite_wave, AxiomSuiteResult};
use super::identities::*;
use super::{IdentityId, IdentityResult, Kind, Tolerances};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub p_values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidTrials);
        }
        if self.dims.is_empty() {
            return Err(Error::InvalidConfig("no dimensions given".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2) {
            return Err(Error::DimensionTooSmall { dim: d, min: 2 });
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
        Ok(())
    }
}

/// One JSON line of suite output.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Record {
    Identity(IdentityResult),
    Axiom(AxiomSuiteResult),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SummaryStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub id: String,
    pub evaluated: usize,
    pub skipped: usize,
    pub failures: usize,
    /// Largest `|residual|` (equalities).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_residual: Option<f64>,
    /// Smallest slack or margin (inequalities and axioms).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<f64>,
}

impl SummaryRow {
    pub fn status(&self) -> SummaryStatus {
        if self.failures > 0 {
            SummaryStatus::Fail
        } else if self.evaluated == 0 {
            SummaryStatus::Skipped
        } else {
            SummaryStatus::Pass
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub rows: Vec<SummaryRow>,
}

impl SuiteSummary {
    fn row(&mut self, id: &str) -> &mut SummaryRow {
        let idx = match self.rows.iter().position(|r| r.id == id) {
            Some(i) => i,
            None => {
                self.rows.push(SummaryRow {
                    id: id.to_owned(),
                    evaluated: 0,
                    skipped: 0,
                    failures: 0,
                    max_abs_residual: None,
                    min_slack: None,
                });
                self.rows.len() - 1
            }
        };
        &mut self.rows[idx]
    }

    fn add_identity(&mut self, r: &IdentityResult) {
        let row = self.row(&r.identity_id.name());
        row.evaluated += 1;
        row.failures += usize::from(!r.passed);
        match r.kind {
            Kind::Equality => {
                let m = row.max_abs_residual.unwrap_or(0.0);
                row.max_abs_residual = Some(if r.value.is_nan() {
                    f64::NAN
                } else {
                    m.max(r.value.abs())
                });
            }
            Kind::Inequality => {
                let m = row.min_slack.unwrap_or(f64::INFINITY);
                row.min_slack = Some(m.min(r.value));
            }
        }
    }

    fn add_axiom(&mut self, r: &AxiomSuiteResult) {
        let name = format!(
            "axiom_{}",
            serde_json::to_value(r.axiom_id).unwrap().as_str().unwrap()
        );
        let row = self.row(&name);
        row.evaluated += 1;
        row.failures += usize::from(!r.passed());
        let m = row.min_slack.unwrap_or(f64::INFINITY);
        row.min_slack = Some(m.min(r.worst_margin));
    }

    fn skip(&mut self, id: IdentityId) {
        self.row(&id.name()).skipped += 1;
    }

    pub fn get(&self, id: &str) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.status() != SummaryStatus::Fail)
    }

    pub fn first_failure(&self) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.status() == SummaryStatus::Fail)
    }

    /// Plain-text table: id, evaluated, skipped, max |residual|, min slack, status.
    pub fn table(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| format!("{:.3e}", x + 0.0));
        let mut out = format!(
            "{:<28} {:>9} {:>8} {:>14} {:>14}  {}\n",
            "identity_id", "evaluated", "skipped", "max|residual|", "min slack", "status"
        );
        for r in &self.rows {
            let status = match r.status() {
                SummaryStatus::Pass => "pass",
                SummaryStatus::Fail => "FAIL",
                SummaryStatus::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{:<28} {:>9} {:>8} {:>14} {:>14}  {}",
                r.id,
                r.evaluated,
                r.skipped,
                fmt(r.max_abs_residual),
                fmt(r.min_slack),
                status
            );
        }
        out
    }
}

#[derive(Clone, Copy, Default)]
struct Faces {
    equal_offdiag: bool,
    single_pair: bool,
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    summary: SuiteSummary,
    sink: &'a mut dyn FnMut(&Record) -> Result<()>,
}

impl Runner<'_> {
    fn emit(&mut self, r: IdentityResult) -> Result<()> {
        self.summary.add_identity(&r);
        (self.sink)(&Record::Identity(r))
    }

    fn check_state(&mut self, rho: &HermitianState, faces: Faces) -> Result<()> {
        let tol = self.cfg.tolerances;
        self.emit(residual_l2_triality(rho, &tol)?)?;
        self.emit(residual_max_relation(rho, &tol)?)?;
        self.emit(residual_durr(rho, &tol)?)?;
        self.emit(residual_jb(rho, &tol)?)?;
        self.emit(residual_fuluo(rho, &tol)?)?;
        self.emit(residual_visibility_consistency(rho, &tol))?;
        if rho.dim() >= 3 {
            self.emit(residual_machado(rho, &tol)?)?;
            self.emit(residual_machado_equivalence(rho, &tol)?)?;
        } else {
            self.summary.skip(IdentityId::MachadoRelation);
            self.summary.skip(IdentityId::MachadoYEquivalence);
        }
        for &p in &self.cfg.p_values {
            if p < 2.0 {
                self.emit(residual_x_tradeoff(rho, p, &tol)?)?;
            } else {
                self.summary.skip(IdentityId::XTradeoff);
            }
            self.emit(residual_y_tradeoff(rho, p, &tol)?)?;
            self.emit(residual_xy_sum(rho, p, &tol)?)?;
            for r in slack_inequalities(rho, p, &tol)? {
                self.emit(r)?;
            }
            if faces.equal_offdiag {
                self.emit(residual_equal_offdiag_face(rho, p, &tol)?)?;
            }
            if faces.single_pair && p == 1.0 {
                self.emit(residual_single_pair_face(rho, p, &tol)?)?;
            }
        }
        Ok(())
    }

    fn named_states(d: usize) -> Result<Vec<(HermitianState, Faces)>> {
        let eq = Faces {
            equal_offdiag: true,
            single_pair: false,
        };
        let mut out = vec![
            (make_family(&StateFamilySpec::MaxCoherentPure, d)?, eq),
            (
                make_family(&StateFamilySpec::CompletelyMixed, d)?,
                Faces::default(),
            ),
        ];
        for k in 1..=9 {
            let a = k as f64 / 10.0;
            out.push((make_family(&StateFamilySpec::Mcms { a }, d)?, eq));
        }
        let m = 0.5 / d as f64;
        out.push((
            make_family(
                &StateFamilySpec::UniformOffDiag {
                    count: pair_count(d),
                    magnitude: m,
                },
                d,
            )?,
            eq,
        ));
        for (i, j) in [(0, 1), (0, d - 1)] {
            out.push((
                make_family(&StateFamilySpec::SinglePair { i, j, magnitude: m }, d)?,
                Faces {
                    equal_offdiag: false,
                    single_pair: true,
                },
            ));
        }
        Ok(out)
    }

    fn run(&mut self) -> Result<()> {
        let cfg = self.cfg;
        for &d in &cfg.dims {
            let base = cfg.seed ^ (d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let mut rng = seeded_rng(base);
            for _ in 0..cfg.trials {
                let rho = sample_hs_mixed(d, d, &mut rng);
                self.check_state(&rho, Faces::default())?;
            }
            for _ in 0..cfg.trials.div_ceil(10) {
                let pure = sample_haar_pure(d, &mut rng);
                self.check_state(&pure, Faces::default())?;
                let diag = sample_incoherent(d, &mut rng);
                self.check_state(&diag, Faces::default())?;
            }
            for (rho, faces) in Self::named_states(d)? {
                self.check_state(&rho, faces)?;
            }
            for (k, &p) in cfg.p_values.iter().enumerate() {
                for r in axiom_suite_wave(d, p, cfg.trials, base.wrapping_add(1 + k as u64))? {
                    self.summary.add_axiom(&r);
                    (self.sink)(&Record::Axiom(r))?;
                }
            }
            for r in axiom_suite_particle(d, cfg.trials, base.wrapping_sub(1))? {
                self.summary.add_axiom(&r);
                (self.sink)(&Record::Axiom(r))?;
            }
        }
        Ok(())
    }
}

/// Run every check over `cfg`, passing each record to `sink` as it is produced.
pub fn run_suite(cfg: &SuiteConfig, sink: &mut dyn FnMut(&Record) -> Result<()>) -> Result<SuiteSummary> {
    cfg.validate()?;
    let mut runner = Runner {
        cfg,
        summary: SuiteSummary::default(),
        sink,
    };
    runner.run()?;
    Ok(runner.summary)
}
