//! Density matrices and formal Hermitian tables in a fixed computational basis.
//!
//! A [`HermitianState`] is a `d x d` complex matrix that is Hermitian and has
//! unit trace. In [`Mode::Strict`] it must additionally be positive
//! semidefinite, i.e. a genuine density matrix. [`Mode::Formal`] drops the
//! positivity requirement so that the measure formulas can be evaluated on
//! arbitrary off-diagonal patterns.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Maximum allowed `|rho_ij - conj(rho_ji)|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum allowed `|tr(rho) - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalue floor for strict states.
pub const PSD_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Physical density matrix: Hermitian, unit trace, positive semidefinite.
    Strict,
    /// Hermitian unit-trace table, positivity not required.
    Formal,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Formal => "formal",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "formal" => Ok(Mode::Formal),
            other => Err(format!("unknown mode '{other}' (expected strict|formal)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianState {
    dim: usize,
    /// Row-major `dim * dim` entries.
    entries: Vec<Complex64>,
    mode: Mode,
}

/// Validate a full matrix given as rows. Nothing is symmetrized: any
/// asymmetry beyond [`HERMITIAN_TOL`] is an error.
pub fn validate(rows: &[Vec<Complex64>], mode: Mode) -> Result<HermitianState> {
    HermitianState::from_rows(rows, mode)
}

impl HermitianState {
    pub fn new(dim: usize, entries: Vec<Complex64>, mode: Mode) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                dim,
                row: entries.len() / dim,
                len: entries.len() % dim,
            });
        }
        let state = HermitianState { dim, entries, mode };
        state.check()?;
        Ok(state)
    }

    pub fn from_rows(rows: &[Vec<Complex64>], mode: Mode) -> Result<Self> {
        let dim = rows.len();
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    dim,
                    row,
                    len: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::new(dim, entries, mode)
    }

    pub fn from_real_rows(rows: &[Vec<f64>], mode: Mode) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows, mode)
    }

    /// `|psi><psi|` for the normalized version of `amplitudes`.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let dim = amplitudes.len();
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidFamilyParams(
                "pure state amplitudes must have finite non-zero norm".into(),
            ));
        }
        let psi: Vec<Complex64> = amplitudes.iter().map(|a| a / norm).collect();
        Ok(Self::outer_unchecked(&psi))
    }

    /// Outer product of an already-normalized vector, mirrored so that the
    /// result is exactly Hermitian with a real diagonal.
    pub(crate) fn outer_unchecked(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(psi[i].norm_sqr(), 0.0);
            for j in (i + 1)..dim {
                let v = psi[i] * psi[j].conj();
                entries[i * dim + j] = v;
                entries[j * dim + i] = v.conj();
            }
        }
        HermitianState {
            dim,
            entries,
            mode: Mode::Strict,
        }
    }

    /// Build without validation. Callers guarantee the invariants for `mode`.
    pub(crate) fn from_parts_unchecked(dim: usize, entries: Vec<Complex64>, mode: Mode) -> Self {
        HermitianState { dim, entries, mode }
    }

    fn check(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let z = self.entry(i, j);
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        for i in 0..d {
            for j in i..d {
                let deviation = (self.entry(i, j) - self.entry(j, i).conj()).norm();
                if deviation > HERMITIAN_TOL {
                    return Err(Error::NotHermitian { i, j, deviation });
                }
            }
        }
        let trace: Complex64 = (0..d).map(|i| self.entry(i, i)).sum();
        if (trace - 1.0).norm() > TRACE_TOL {
            return Err(Error::TraceNotOne {
                re: trace.re,
                im: trace.im,
            });
        }
        if self.mode == Mode::Strict {
            let min_eigenvalue = self.min_eigenvalue();
            if min_eigenvalue < -PSD_TOL {
                return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    /// Real parts of the diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.entry(i, i).re).collect()
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    /// Eigenvalues in ascending order, from a full Hermitian eigendecomposition.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_matrix())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= -PSD_TOL
    }

    /// `sum_ij |rho_ij|^2`, equal to `tr(rho^2)` for Hermitian matrices.
    pub fn purity(&self) -> f64 {
        crate::numeric::compensated_sum(self.entries.iter().map(|z| z.norm_sqr()))
    }

    /// Diagonal part of the state. Strict whenever the diagonal is a
    /// probability vector.
    pub fn dephase(&self) -> HermitianState {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        let mut nonnegative = true;
        for i in 0..d {
            let z = self.entry(i, i);
            nonnegative &= z.re >= -PSD_TOL;
            entries[i * d + i] = z;
        }
        let mode = if nonnegative { Mode::Strict } else { Mode::Formal };
        HermitianState::from_parts_unchecked(d, entries, mode)
    }

    /// `P rho P^T` for the permutation matrix sending basis index `i` to
    /// `perm[i]`, so that the result satisfies `out[i][j] = rho[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<HermitianState> {
        let d = self.dim;
        if perm.len() != d {
            return Err(Error::DimensionMismatch(perm.len(), d));
        }
        let mut seen = vec![false; d];
        for &k in perm {
            if k >= d || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidFamilyParams(format!(
                    "{perm:?} is not a permutation of 0..{d}"
                )));
            }
        }
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.entry(perm[i], perm[j]));
            }
        }
        Ok(HermitianState::from_parts_unchecked(d, entries, self.mode))
    }

    /// Convex combination `lambda * self + (1 - lambda) * other`, validated in `mode`.
    pub fn mix(&self, other: &HermitianState, lambda: f64, mode: Mode) -> Result<HermitianState> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidFamilyParams(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * lambda + b * (1.0 - lambda))
            .collect();
        HermitianState::new(self.dim, entries, mode)
    }

    /// Short stable hash of dimension, mode and entry bits.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim as u64).to_le_bytes());
        h.update([matches!(self.mode, Mode::Strict) as u8]);
        for z in &self.entries {
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_file(&self) -> StateFile {
        StateFile {
            dim: self.dim,
            mode: self.mode,
            re: self
                .entries
                .chunks(self.dim)
                .map(|r| r.iter().map(|z| z.re).collect())
                .collect(),
            im: self
                .entries
                .chunks(self.dim)
                .map(|r| r.iter().map(|z| z.im).collect())
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<HermitianState> {
        serde_json::from_str::<StateFile>(s)?.into_state()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("state file serializes")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<HermitianState> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json_string() + "\n").map_err(|e| Error::io(path, e))
    }
}

/// On-disk state format: row-major full matrix split into real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub mode: Mode,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn into_state(self) -> Result<HermitianState> {
        let d = self.dim;
        if d < 2 {
            return Err(Error::DimensionTooSmall { dim: d, min: 2 });
        }
        if self.re.len() != d {
            return Err(Error::DimensionMismatch(self.re.len(), d));
        }
        if self.im.len() != d {
            return Err(Error::DimensionMismatch(self.im.len(), d));
        }
        let mut entries = Vec::with_capacity(d * d);
        for (row, (re, im)) in self.re.iter().zip(&self.im).enumerate() {
            if re.len() != d || im.len() != d {
                return Err(Error::NotSquare {
                    dim: d,
                    row,
                    len: if re.len() != d { re.len() } else { im.len() },
                });
            }
            entries.extend(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)));
        }
        HermitianState::new(d, entries, self.mode)
    }
}
