//! Named state families and seeded random ensembles.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::state::{HermitianState, Mode};

/// The generator behind every seeded operation in this crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symbolic description of a state family. Basis indices are zero-based.
#[derive(Clone, Debug, PartialEq)]
pub enum StateFamilySpec {
    /// `|phi><phi|` with `|phi> = d^{-1/2} sum_i |i>`; every entry is `1/d`.
    MaxCoherentPure,
    /// `I / d`.
    CompletelyMixed,
    /// Maximally coherent mixed state `a |phi><phi| + (1 - a) I / d`, `a` in (0, 1).
    Mcms { a: f64 },
    /// Uniform diagonal with only `rho_ij = rho_ji = magnitude` off the diagonal.
    SinglePair { i: usize, j: usize, magnitude: f64 },
    /// Uniform diagonal with the first `count` upper-triangular pairs (row-major)
    /// set to `magnitude`.
    UniformOffDiag { count: usize, magnitude: f64 },
    /// Diagonal state with the given probabilities.
    IncoherentDiagonal { probabilities: Vec<f64> },
    /// Projector onto a Haar-random unit vector.
    RandomPureHaar { seed: u64 },
    /// Hilbert-Schmidt-induced mixed state `G G^dag / tr(G G^dag)`, `G` is `d x rank`.
    RandomMixedHs { rank: usize, seed: u64 },
}

/// Number of unordered off-diagonal pairs `i < j`.
pub fn pair_count(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Upper-triangular pairs in row-major order: (0,1), (0,2), ..., (1,2), ...
pub fn upper_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| ((i + 1)..d).map(move |j| (i, j)))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParams(msg.into())
}

impl StateFamilySpec {
    pub fn check(&self, d: usize) -> Result<()> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { dim: d, min: 2 });
        }
        match *self {
            StateFamilySpec::Mcms { a } if !(a > 0.0 && a < 1.0) => {
                Err(bad(format!("MCMS parameter a = {a} must lie in (0, 1)")))
            }
            StateFamilySpec::SinglePair { i, j, magnitude } => {
                if i == j || i >= d || j >= d {
                    Err(bad(format!("pair ({i}, {j}) invalid for d = {d}")))
                } else if !(magnitude >= 0.0 && magnitude.is_finite()) {
                    Err(bad(format!("magnitude {magnitude} must be >= 0")))
                } else {
                    Ok(())
                }
            }
            StateFamilySpec::UniformOffDiag { count, magnitude } => {
                let max = pair_count(d);
                if count == 0 || count > max {
                    Err(bad(format!("pair count {count} outside 1..={max} for d = {d}")))
                } else if !(magnitude >= 0.0 && magnitude.is_finite()) {
                    Err(bad(format!("magnitude {magnitude} must be >= 0")))
                } else {
                    Ok(())
                }
            }
            StateFamilySpec::IncoherentDiagonal { ref probabilities } => {
                if probabilities.len() != d {
                    return Err(bad(format!(
                        "{} probabilities given for d = {d}",
                        probabilities.len()
                    )));
                }
                if probabilities.iter().any(|&q| !(q >= 0.0 && q.is_finite())) {
                    return Err(bad("probabilities must be finite and non-negative"));
                }
                let total: f64 = probabilities.iter().sum();
                if (total - 1.0).abs() > crate::state::TRACE_TOL {
                    return Err(bad(format!("probabilities sum to {total}, not 1")));
                }
                Ok(())
            }
            StateFamilySpec::RandomMixedHs { rank: 0, .. } => Err(bad("rank must be at least 1")),
            _ => Ok(()),
        }
    }
}

/// Build a member of a named family in dimension `d`.
///
/// Off-diagonal patterns (`SinglePair`, `UniformOffDiag`) come back in
/// [`Mode::Formal`] when they are not positive semidefinite; every other
/// family is always strict.
pub fn make_family(spec: &StateFamilySpec, d: usize) -> Result<HermitianState> {
    spec.check(d)?;
    let uniform = 1.0 / d as f64;
    match *spec {
        StateFamilySpec::MaxCoherentPure => {
            // exact 1/d entries rather than sqrt(1/d)^2
            let entries = vec![Complex64::new(uniform, 0.0); d * d];
            Ok(HermitianState::from_parts_unchecked(d, entries, Mode::Strict))
        }
        StateFamilySpec::CompletelyMixed => Ok(diagonal_state(&vec![uniform; d])),
        StateFamilySpec::Mcms { a } => {
            let off = a * uniform;
            let diag = a * uniform + (1.0 - a) * uniform;
            let entries = (0..d * d)
                .map(|k| Complex64::new(if k / d == k % d { diag } else { off }, 0.0))
                .collect();
            HermitianState::new(d, entries, Mode::Strict)
        }
        StateFamilySpec::SinglePair { i, j, magnitude } => {
            pattern_state(d, std::iter::once((i, j)), magnitude)
        }
        StateFamilySpec::UniformOffDiag { count, magnitude } => {
            pattern_state(d, upper_pairs(d).take(count), magnitude)
        }
        StateFamilySpec::IncoherentDiagonal { ref probabilities } => Ok(diagonal_state(probabilities)),
        StateFamilySpec::RandomPureHaar { seed } => Ok(sample_haar_pure(d, &mut seeded_rng(seed))),
        StateFamilySpec::RandomMixedHs { rank, seed } => Ok(sample_hs_mixed(d, rank, &mut seeded_rng(seed))),
    }
}

fn diagonal_state(probabilities: &[f64]) -> HermitianState {
    let d = probabilities.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for (i, &q) in probabilities.iter().enumerate() {
        entries[i * d + i] = Complex64::new(q, 0.0);
    }
    HermitianState::from_parts_unchecked(d, entries, Mode::Strict)
}

fn pattern_state(
    d: usize,
    pairs: impl Iterator<Item = (usize, usize)>,
    magnitude: f64,
) -> Result<HermitianState> {
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        entries[i * d + i] = Complex64::new(1.0 / d as f64, 0.0);
    }
    for (i, j) in pairs {
        entries[i * d + j] = Complex64::new(magnitude, 0.0);
        entries[j * d + i] = Complex64::new(magnitude, 0.0);
    }
    let formal = HermitianState::new(d, entries, Mode::Formal)?;
    let mode = if formal.is_psd() {
        Mode::Strict
    } else {
        Mode::Formal
    };
    Ok(HermitianState::from_parts_unchecked(
        d,
        formal.entries().to_vec(),
        mode,
    ))
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `rows x cols` matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` pushed back into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let qr = ginibre(d, d, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Projector onto the first column of a Haar unitary.
pub fn sample_haar_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianState {
    let u = haar_unitary(d, rng);
    let psi: Vec<Complex64> = u.column(0).iter().copied().collect();
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<Complex64> = psi.iter().map(|a| a / norm).collect();
    HermitianState::outer_unchecked(&psi)
}

/// Hilbert-Schmidt-induced random density matrix of the given rank.
pub fn sample_hs_mixed<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> HermitianState {
    let g = ginibre(d, rank, rng);
    let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for j in i..d {
            let v: Complex64 = (0..rank).map(|k| g[(i, k)] * g[(j, k)].conj()).sum();
            entries[i * d + j] = v;
            entries[j * d + i] = v.conj();
        }
        entries[i * d + i].im = 0.0;
    }
    let trace: f64 = (0..d).map(|i| entries[i * d + i].re).sum();
    for z in &mut entries {
        *z /= trace;
    }
    HermitianState::from_parts_unchecked(d, entries, Mode::Strict)
}

/// Uniformly random point of the probability simplex, as a diagonal state.
pub fn sample_incoherent<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianState {
    let w: Vec<f64> = (0..d)
        .map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln())
        .collect();
    let total: f64 = w.iter().sum();
    let mut q: Vec<f64> = w.iter().map(|x| x / total).collect();
    // put the rounding residue on the largest entry
    let residue = 1.0 - q.iter().sum::<f64>();
    let imax = (0..d).max_by(|&a, &b| q[a].total_cmp(&q[b])).unwrap_or(0);
    q[imax] += residue;
    diagonal_state(&q)
}
