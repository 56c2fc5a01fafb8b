//! Special cases of the X trade-off
//! `(d^{p-1}/(d-1))^{2/p} C_lp^2 + M_l + P^2 + d/(d-1) X = 1`,
//! organised as the vertices, edges and faces of a tetrahedron whose corners
//! are the four terms. Each region fixes which terms vanish; the remaining
//! terms must still sum to one.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{make_family, pair_count, StateFamilySpec};
use crate::measures::{c_lp, mixedness_linear, particle_p_squared, x_unchecked};
use crate::numeric::fmt_sig17;
use crate::state::{HermitianState, Mode};
use crate::verify::{x_tradeoff_coefficient, EQUALITY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Completely mixed state: only `M_l` survives.
    VertexM,
    /// Incoherent pure state: only `P^2` survives.
    VertexP,
    /// Maximally coherent pure state: only the coherence term survives.
    VertexC,
    /// Incoherent states: `M_l + P^2 = 1`.
    SegmentMp,
    /// Maximally coherent mixed states: coherence term plus `M_l`.
    SegmentCm,
    /// Equal off-diagonal magnitudes (`X = 0`).
    FaceCpm,
    /// Pure states (`M_l = 0`).
    FaceCpx,
    /// Uniform diagonal (`P = 0`).
    FaceCmx,
}

impl Region {
    /// Which of (coherence, mixedness, particle, X) terms the region keeps.
    fn kept(self) -> [bool; 4] {
        match self {
            Region::VertexM => [false, true, false, false],
            Region::VertexP => [false, false, true, false],
            Region::VertexC => [true, false, false, false],
            Region::SegmentMp => [false, true, true, false],
            Region::SegmentCm => [true, true, false, false],
            Region::FaceCpm => [true, true, true, false],
            Region::FaceCpx => [true, false, true, true],
            Region::FaceCmx => [true, true, false, true],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::VertexM => "vertex_m",
            Region::VertexP => "vertex_p",
            Region::VertexC => "vertex_c",
            Region::SegmentMp => "segment_mp",
            Region::SegmentCm => "segment_cm",
            Region::FaceCpm => "face_cpm",
            Region::FaceCpx => "face_cpx",
            Region::FaceCmx => "face_cmx",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TetraRow {
    pub region: Region,
    pub state: String,
    pub d: usize,
    pub p: f64,
    /// `(d^{p-1}/(d-1))^{2/p} C_lp^2`
    pub wave_term: f64,
    pub m_l: f64,
    pub p_sq: f64,
    /// `d/(d-1) X`
    pub x_term: f64,
    /// Full trade-off residual, all four terms.
    pub residual: f64,
    /// Sum of the terms the region keeps, minus one.
    pub reduced_residual: f64,
    /// Largest magnitude among the terms the region says vanish.
    pub vanishing_max: f64,
    pub passed: bool,
}

fn row(region: Region, label: String, rho: &HermitianState, p: f64) -> Result<TetraRow> {
    let d = rho.dim();
    let cp = c_lp(rho, p)?;
    let terms = [
        x_tradeoff_coefficient(d, p) * cp * cp,
        mixedness_linear(rho),
        particle_p_squared(rho),
        d as f64 / (d as f64 - 1.0) * x_unchecked(rho, p)?,
    ];
    let kept = region.kept();
    let reduced_residual = terms
        .iter()
        .zip(kept)
        .filter(|(_, k)| *k)
        .map(|(t, _)| t)
        .sum::<f64>()
        - 1.0;
    let vanishing_max = terms
        .iter()
        .zip(kept)
        .filter(|(_, k)| !*k)
        .map(|(t, _)| t.abs())
        .fold(0.0, f64::max);
    Ok(TetraRow {
        region,
        state: label,
        d,
        p,
        wave_term: terms[0],
        m_l: terms[1],
        p_sq: terms[2],
        x_term: terms[3],
        residual: terms.iter().sum::<f64>() - 1.0,
        reduced_residual,
        vanishing_max,
        passed: reduced_residual.abs() <= EQUALITY_TOL && vanishing_max <= EQUALITY_TOL,
    })
}

fn strict(d: usize, entries: Vec<Complex64>) -> Result<HermitianState> {
    HermitianState::new(d, entries, Mode::Strict)
}

fn basis_state(k: usize, d: usize) -> Result<HermitianState> {
    let mut q = vec![0.0; d];
    q[k] = 1.0;
    make_family(&StateFamilySpec::IncoherentDiagonal { probabilities: q }, d)
}

/// Evaluate the trade-off terms on representative states of every region.
pub fn tetra_table(d: usize, p: f64) -> Result<Vec<TetraRow>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    if !(p.is_finite() && (1.0..2.0).contains(&p)) {
        return Err(Error::InvalidP {
            p,
            reason: "requires 1 <= p < 2",
        });
    }
    let df = d as f64;
    let mut rows = vec![
        row(
            Region::VertexM,
            "completely_mixed".into(),
            &make_family(&StateFamilySpec::CompletelyMixed, d)?,
            p,
        )?,
        row(Region::VertexP, "basis_0".into(), &basis_state(0, d)?, p)?,
        row(
            Region::VertexC,
            "max_coherent_pure".into(),
            &make_family(&StateFamilySpec::MaxCoherentPure, d)?,
            p,
        )?,
    ];

    for lambda in [0.25, 0.5, 0.75] {
        let mut q = vec![(1.0 - lambda) / df; d];
        q[0] += lambda;
        let rho = make_family(&StateFamilySpec::IncoherentDiagonal { probabilities: q }, d)?;
        rows.push(row(
            Region::SegmentMp,
            format!("incoherent_mixture(lambda={lambda})"),
            &rho,
            p,
        )?);
    }

    for a in [0.25, 0.5, 0.75] {
        let rho = make_family(&StateFamilySpec::Mcms { a }, d)?;
        rows.push(row(Region::SegmentCm, format!("mcms(a={a})"), &rho, p)?);
    }

    // non-uniform diagonal q_i proportional to i+1, equal off-diagonals kept
    // below the Gershgorin bound min(q)/(d-1)
    let q: Vec<f64> = (0..d)
        .map(|i| 2.0 * (i as f64 + 1.0) / (df * (df + 1.0)))
        .collect();
    for frac in [0.25, 0.5] {
        let m = frac * q[0] / (df - 1.0);
        let entries = (0..d * d)
            .map(|k| Complex64::new(if k / d == k % d { q[k / d] } else { m }, 0.0))
            .collect();
        rows.push(row(
            Region::FaceCpm,
            format!("equal_offdiag(m={m:.6})"),
            &strict(d, entries)?,
            p,
        )?);
    }

    let ramp: Vec<Complex64> = (0..d).map(|k| Complex64::new(k as f64 + 1.0, 0.0)).collect();
    rows.push(row(
        Region::FaceCpx,
        "pure_ramp".into(),
        &HermitianState::from_pure(&ramp)?,
        p,
    )?);
    let phased: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(k as f64 + 1.0, k as f64))
        .collect();
    rows.push(row(
        Region::FaceCpx,
        "pure_ramp_phased".into(),
        &HermitianState::from_pure(&phased)?,
        p,
    )?);

    let m = 0.5 / df;
    let single = make_family(
        &StateFamilySpec::SinglePair {
            i: 0,
            j: 1,
            magnitude: m,
        },
        d,
    )?;
    rows.push(row(
        Region::FaceCmx,
        format!("single_pair(m={m:.6})"),
        &single,
        p,
    )?);
    if pair_count(d) >= 2 {
        let count = pair_count(d) - 1;
        let m = 0.5 / (df * (df - 1.0));
        let rho = make_family(&StateFamilySpec::UniformOffDiag { count, magnitude: m }, d)?;
        rows.push(row(
            Region::FaceCmx,
            format!("uniform_offdiag(n={count},m={m:.6})"),
            &rho,
            p,
        )?);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[TetraRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "region",
        "state",
        "d",
        "p",
        "wave_term",
        "m_l",
        "p_sq",
        "x_term",
        "residual",
        "reduced_residual",
        "vanishing_max",
        "passed",
    ])?;
    for r in rows {
        w.write_record([
            r.region.name().to_owned(),
            r.state.clone(),
            r.d.to_string(),
            fmt_sig17(r.p),
            fmt_sig17(r.wave_term),
            fmt_sig17(r.m_l),
            fmt_sig17(r.p_sq),
            fmt_sig17(r.x_term),
            fmt_sig17(r.residual),
            fmt_sig17(r.reduced_residual),
            fmt_sig17(r.vanishing_max),
            r.passed.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}
