//! Sampled checks of the four wave-measure conditions (a1-a4) for `C_lp` and
//! the four particle-measure conditions (b1-b4) for `P`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{make_family, sample_hs_mixed, sample_incoherent, seeded_rng, StateFamilySpec};
use crate::measures::{c_lp, c_lp_upper, particle_p, particle_p_squared};
use crate::state::{HermitianState, Mode};

use super::INEQUALITY_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomId {
    /// Minimum on diagonal states.
    A1,
    /// Maximum on the uniform superposition.
    A2,
    /// Invariance under basis permutations.
    A3,
    /// Convexity.
    A4,
    /// Maximum when some `|rho_ii| = 1`.
    B1,
    /// Minimum when every `|rho_ii| = 1/d`.
    B2,
    /// Invariance under basis permutations.
    B3,
    /// Convexity.
    B4,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomSuiteResult {
    pub axiom_id: AxiomId,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    pub trials: usize,
    pub violations: usize,
    /// Smallest margin seen; `>= 0` means every check held exactly.
    pub worst_margin: f64,
}

impl AxiomSuiteResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

struct Tally {
    violations: usize,
    worst: f64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            violations: 0,
            worst: f64::INFINITY,
        }
    }

    /// Record a margin that must be `>= -INEQUALITY_TOL`.
    fn at_least(&mut self, margin: f64) {
        // + 0.0 folds -0.0 into +0.0
        self.worst = self.worst.min(margin + 0.0);
        if margin.is_nan() || margin < -INEQUALITY_TOL {
            self.violations += 1;
        }
    }

    /// Record a margin that must be strictly positive.
    fn positive(&mut self, margin: f64) {
        self.worst = self.worst.min(margin);
        if margin.is_nan() || margin <= 0.0 {
            self.violations += 1;
        }
    }

    fn finish(self, axiom_id: AxiomId, d: usize, p: Option<f64>, trials: usize) -> AxiomSuiteResult {
        AxiomSuiteResult {
            axiom_id,
            d,
            p,
            trials,
            violations: self.violations,
            worst_margin: self.worst,
        }
    }
}

/// Random state whose rank is uniform in `1..=d`; rank 1 gives Haar-random pure states.
fn sample_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianState {
    let rank = rng.random_range(1..=d);
    sample_hs_mixed(d, rank, rng)
}

fn sample_permutation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    perm
}

fn sample_weight<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let lambda: f64 = rng.random();
        if lambda > 0.0 {
            return lambda;
        }
    }
}

/// Average over cyclic basis shifts; the result has a uniform diagonal.
fn cyclic_twirl(rho: &HermitianState) -> Result<HermitianState> {
    let d = rho.dim();
    let mut acc = vec![num_complex::Complex64::new(0.0, 0.0); d * d];
    for shift in 0..d {
        let perm: Vec<usize> = (0..d).map(|i| (i + shift) % d).collect();
        let shifted = rho.permuted(&perm)?;
        for (a, z) in acc.iter_mut().zip(shifted.entries()) {
            *a += z;
        }
    }
    for a in &mut acc {
        *a /= d as f64;
    }
    HermitianState::new(d, acc, Mode::Strict)
}

fn check_args(d: usize, trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    Ok(())
}

/// Sampled check of conditions a1-a4 for `C_lp`.
pub fn axiom_suite_wave(d: usize, p: f64, trials: usize, seed: u64) -> Result<Vec<AxiomSuiteResult>> {
    check_args(d, trials)?;
    let c_max = c_lp_upper(d, p)?;
    let mut rng = seeded_rng(seed);
    let (mut a1, mut a2, mut a3, mut a4) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());

    let uniform = make_family(&StateFamilySpec::MaxCoherentPure, d)?;
    a2.at_least(-(c_lp(&uniform, p)? - c_max).abs());

    for _ in 0..trials {
        let diag = sample_incoherent(d, &mut rng);
        a1.at_least(-c_lp(&diag, p)?);
        let rho = sample_state(d, &mut rng);
        let c = c_lp(&rho, p)?;
        a1.positive(c);

        a2.at_least(c_max - c);

        let perm = sample_permutation(d, &mut rng);
        a3.at_least(-(c_lp(&rho.permuted(&perm)?, p)? - c).abs());

        let other = sample_state(d, &mut rng);
        let lambda = sample_weight(&mut rng);
        let mix = rho.mix(&other, lambda, Mode::Strict)?;
        a4.at_least(lambda * c + (1.0 - lambda) * c_lp(&other, p)? - c_lp(&mix, p)?);
    }

    Ok(vec![
        a1.finish(AxiomId::A1, d, Some(p), trials),
        a2.finish(AxiomId::A2, d, Some(p), trials),
        a3.finish(AxiomId::A3, d, Some(p), trials),
        a4.finish(AxiomId::A4, d, Some(p), trials),
    ])
}

/// Sampled check of conditions b1-b4 for the particle measure `P`.
pub fn axiom_suite_particle(d: usize, trials: usize, seed: u64) -> Result<Vec<AxiomSuiteResult>> {
    check_args(d, trials)?;
    let mut rng = seeded_rng(seed);
    let (mut b1, mut b2, mut b3, mut b4) = (Tally::new(), Tally::new(), Tally::new(), Tally::new());

    let mixed = make_family(&StateFamilySpec::CompletelyMixed, d)?;
    b2.at_least(-particle_p(&mixed)?);

    for _ in 0..trials {
        let k = rng.random_range(0..d);
        let mut q = vec![0.0; d];
        q[k] = 1.0;
        let deterministic = make_family(&StateFamilySpec::IncoherentDiagonal { probabilities: q }, d)?;
        b1.at_least(-(particle_p(&deterministic)? - 1.0).abs());

        let rho = sample_state(d, &mut rng);
        let pr = particle_p(&rho)?;
        b1.at_least(1.0 - pr);

        // P^2 avoids the square root amplifying rounding near zero
        let twirled = cyclic_twirl(&rho)?;
        let p2_uniform = particle_p_squared(&twirled);
        b2.at_least(-p2_uniform.abs());
        b2.at_least(particle_p_squared(&rho) - p2_uniform);

        let perm = sample_permutation(d, &mut rng);
        b3.at_least(-(particle_p(&rho.permuted(&perm)?)? - pr).abs());

        let other = sample_state(d, &mut rng);
        let lambda = sample_weight(&mut rng);
        let mix = rho.mix(&other, lambda, Mode::Strict)?;
        b4.at_least(lambda * pr + (1.0 - lambda) * particle_p(&other)? - particle_p(&mix)?);
    }

    Ok(vec![
        b1.finish(AxiomId::B1, d, None, trials),
        b2.finish(AxiomId::B2, d, None, trials),
        b3.finish(AxiomId::B3, d, None, trials),
        b4.finish(AxiomId::B4, d, None, trials),
    ])
}
