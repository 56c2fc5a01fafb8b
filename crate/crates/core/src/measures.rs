//! Wave, particle and mixedness quantifiers as pure functions of a state.
//!
//! `|rho_ij|` is the complex modulus everywhere, including on the diagonal,
//! so formal tables with negative diagonal entries are handled uniformly.
//! Sums over `i != j` run over both triangles as stored.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::upper_pairs;
use crate::numeric::compensated_sum;
use crate::state::HermitianState;

/// Radicands this far below zero are treated as rounding and clamped.
const RADICAND_TOL: f64 = 1e-12;

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidP {
            p,
            reason: "requires p >= 1",
        })
    }
}

fn check_p_below_two(p: f64) -> Result<()> {
    check_p(p)?;
    if p < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidP {
            p,
            reason: "requires 1 <= p < 2",
        })
    }
}

fn check_p_unit_interval(p: f64) -> Result<()> {
    check_p(p)?;
    if p <= 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidP {
            p,
            reason: "requires 1 <= p <= 2",
        })
    }
}

fn sqrt_nonneg(quantity: &'static str, value: f64) -> Result<f64> {
    if value < -RADICAND_TOL {
        Err(Error::NegativeRadicand { quantity, value })
    } else {
        Ok(value.max(0.0).sqrt())
    }
}

fn off_diagonal(rho: &HermitianState) -> impl Iterator<Item = f64> + '_ {
    let d = rho.dim();
    (0..d).flat_map(move |i| {
        (0..d)
            .filter(move |&j| j != i)
            .map(move |j| rho.entry(i, j).norm())
    })
}

fn off_diagonal_sq(rho: &HermitianState) -> impl Iterator<Item = f64> + '_ {
    let d = rho.dim();
    (0..d).flat_map(move |i| {
        (0..d)
            .filter(move |&j| j != i)
            .map(move |j| rho.entry(i, j).norm_sqr())
    })
}

fn dim_f(rho: &HermitianState) -> f64 {
    rho.dim() as f64
}

/// `sum_{i != j} |rho_ij|^p`.
pub fn c_lp_pow(rho: &HermitianState, p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(if p == 1.0 {
        compensated_sum(off_diagonal(rho))
    } else if p == 2.0 {
        compensated_sum(off_diagonal_sq(rho))
    } else {
        compensated_sum(off_diagonal(rho).map(|m| m.powf(p)))
    })
}

/// l_p-norm coherence `(sum_{i != j} |rho_ij|^p)^{1/p}`.
pub fn c_lp(rho: &HermitianState, p: f64) -> Result<f64> {
    let s = c_lp_pow(rho, p)?;
    Ok(if p == 1.0 {
        s
    } else if p == 2.0 {
        s.sqrt()
    } else {
        s.powf(1.0 / p)
    })
}

/// `C_l2(rho)^2 = sum_{i != j} |rho_ij|^2`.
pub fn c_l2_squared(rho: &HermitianState) -> f64 {
    compensated_sum(off_diagonal_sq(rho))
}

/// Closed-form maximum of l_2 coherence over reference bases, `sqrt(tr rho^2 - 1/d)`.
pub fn c_l2_max(rho: &HermitianState) -> Result<f64> {
    sqrt_nonneg("c_l2_max", c_l2_squared(rho) + diag_spread(rho))
}

/// Largest value `c_lp` takes on any state of dimension `d`: `((d-1)/d^{p-1})^{1/p}`,
/// attained at the uniform superposition.
pub fn c_lp_upper(d: usize, p: f64) -> Result<f64> {
    check_p(p)?;
    let d = d as f64;
    Ok(((d - 1.0) / d.powf(p - 1.0)).powf(1.0 / p))
}

/// Normalized linear entropy `d/(d-1) (1 - tr rho^2)`.
pub fn mixedness_linear(rho: &HermitianState) -> f64 {
    let d = dim_f(rho);
    d / (d - 1.0) * (1.0 - rho.purity())
}

/// `sum_i |rho_ii|^2`.
fn diag_sq(rho: &HermitianState) -> f64 {
    compensated_sum((0..rho.dim()).map(|i| rho.entry(i, i).norm_sqr()))
}

/// `sum_i (rho_ii - 1/d)^2`: equals `sum_i |rho_ii|^2 - 1/d` at unit trace,
/// is never negative, and is exactly zero on a uniform diagonal.
fn diag_spread(rho: &HermitianState) -> f64 {
    let u = 1.0 / dim_f(rho);
    compensated_sum(rho.diagonal().into_iter().map(|q| (q - u) * (q - u)))
}

/// `P^2 = d/(d-1) (sum_i |rho_ii|^2 - 1/d)`.
pub fn particle_p_squared(rho: &HermitianState) -> f64 {
    let d = dim_f(rho);
    d / (d - 1.0) * diag_spread(rho)
}

/// Particle measure `sqrt(d/(d-1) (sum_i |rho_ii|^2 - 1/d))`; depends only on the diagonal.
pub fn particle_p(rho: &HermitianState) -> Result<f64> {
    sqrt_nonneg("particle_p", particle_p_squared(rho))
}

/// Visibility and predictability of the d-slit interferometer framework.
pub fn durr_quantities(rho: &HermitianState) -> (f64, f64) {
    let d = dim_f(rho);
    let k = d / (d - 1.0);
    let v = (k * c_l2_squared(rho)).sqrt();
    let dev = compensated_sum((0..rho.dim()).map(|i| (rho.entry(i, i).norm() - 1.0 / d).powi(2)));
    (v, (k * dev).sqrt())
}

/// Jakob-Bergou visibility and predictability.
pub fn jb_quantities(rho: &HermitianState) -> (f64, f64) {
    let v = (2.0 * c_l2_squared(rho)).sqrt();
    (v, (2.0 * diag_spread(rho)).sqrt())
}

/// Fu-Luo wave and particle quantities `(sum_{i!=j} |rho_ij|^2, sum_i |rho_ii|^2)`.
pub fn fuluo_quantities(rho: &HermitianState) -> (f64, f64) {
    (c_l2_squared(rho), diag_sq(rho))
}

/// `[d(d-1)]^{(p-2)/p}`, the coefficient in the lower bound of `C_l2^2` by `C_lp^2`.
pub fn lower_bound_coefficient(d: usize, p: f64) -> f64 {
    let n = (d * (d - 1)) as f64;
    n.powf((p - 2.0) / p)
}

/// `[d(d-1)]^{2(p-1)/p} / 2`, the coefficient in the upper bound of `C_l2^2` by `C_lp^2`.
pub fn upper_bound_coefficient(d: usize, p: f64) -> f64 {
    let n = (d * (d - 1)) as f64;
    0.5 * n.powf(2.0 * (p - 1.0) / p)
}

pub(crate) fn x_unchecked(rho: &HermitianState, p: f64) -> Result<f64> {
    let cp = c_lp(rho, p)?;
    Ok(c_l2_squared(rho) - lower_bound_coefficient(rho.dim(), p) * cp * cp)
}

/// Gap `C_l2^2 - [d(d-1)]^{(p-2)/p} C_lp^2` between l_2 coherence and its
/// l_p lower bound. Non-negative for `1 <= p < 2`, zero exactly when all
/// off-diagonal magnitudes coincide.
pub fn quantity_x(rho: &HermitianState, p: f64) -> Result<f64> {
    check_p_below_two(p)?;
    x_unchecked(rho, p)
}

/// Gap `[d(d-1)]^{2(p-1)/p} C_lp^2 / 2 - C_l2^2` between the l_p upper bound
/// and l_2 coherence.
pub fn quantity_y(rho: &HermitianState, p: f64) -> Result<f64> {
    check_p(p)?;
    let cp = c_lp(rho, p)?;
    Ok(upper_bound_coefficient(rho.dim(), p) * cp * cp - c_l2_squared(rho))
}

/// Sum over unordered pairs `i<j` and distinct unordered pairs `k<l` of
/// `|rho_ij| |rho_kl|`. Every unordered pair-of-pairs is counted twice.
pub fn distinct_pair_products(rho: &HermitianState) -> f64 {
    let mags: Vec<f64> = upper_pairs(rho.dim())
        .map(|(i, j)| rho.entry(i, j).norm())
        .collect();
    compensated_sum(mags.iter().enumerate().flat_map(|(a, &ma)| {
        mags.iter()
            .enumerate()
            .filter(move |&(b, _)| b != a)
            .map(move |(_, &mb)| ma * mb)
    }))
}

/// Machado's cross-term quantity
/// `T = 4d / ((d-2)(d^2-1)) * sum_{i<j} sum_{k<l, (k,l) != (i,j)} |rho_ij| |rho_kl|`.
///
/// With this inner-sum convention `(d-2)(d+1)/2 * T` equals `d/(d-1) * Y(p=1)`.
pub fn machado_t(rho: &HermitianState) -> Result<f64> {
    let d = rho.dim();
    if d < 3 {
        return Err(Error::DimensionTooSmall { dim: d, min: 3 });
    }
    let df = d as f64;
    Ok(4.0 * df / ((df - 2.0) * (df * df - 1.0)) * distinct_pair_products(rho))
}

/// Every quantifier for one state at one `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub d: usize,
    pub p: f64,
    pub c_lp: f64,
    pub c_l2: f64,
    pub c_l2_max: f64,
    pub m_l: f64,
    pub particle_p: f64,
    pub v_d: f64,
    pub p_d: f64,
    pub v_jb: f64,
    pub p_jb: f64,
    pub v_l: f64,
    pub p_l: f64,
    pub x: f64,
    pub y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl MeasureReport {
    fn values(&self) -> impl Iterator<Item = f64> {
        [
            self.c_lp,
            self.c_l2,
            self.c_l2_max,
            self.m_l,
            self.particle_p,
            self.v_d,
            self.p_d,
            self.v_jb,
            self.p_jb,
            self.v_l,
            self.p_l,
            self.x,
            self.y,
        ]
        .into_iter()
        .chain(self.t)
    }

    /// Largest absolute field-wise difference to another report of the same shape.
    pub fn max_abs_diff(&self, other: &MeasureReport) -> f64 {
        let t_mismatch = if self.t.is_some() != other.t.is_some() {
            f64::INFINITY
        } else {
            0.0
        };
        self.values()
            .zip(other.values())
            .map(|(a, b)| (a - b).abs())
            .fold(t_mismatch, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.values().all(f64::is_finite)
    }
}

/// Evaluate every quantifier. `T` is omitted when `d = 2`.
pub fn full_report(rho: &HermitianState, p: f64) -> Result<MeasureReport> {
    check_p_unit_interval(p)?;
    let (v_d, p_d) = durr_quantities(rho);
    let (v_jb, p_jb) = jb_quantities(rho);
    let (v_l, p_l) = fuluo_quantities(rho);
    let t = if rho.dim() >= 3 {
        Some(machado_t(rho)?)
    } else {
        None
    };
    Ok(MeasureReport {
        d: rho.dim(),
        p,
        c_lp: c_lp(rho, p)?,
        c_l2: c_l2_squared(rho).sqrt(),
        c_l2_max: c_l2_max(rho)?,
        m_l: mixedness_linear(rho),
        particle_p: particle_p(rho)?,
        v_d,
        p_d,
        v_jb,
        p_jb,
        v_l,
        p_l,
        x: x_unchecked(rho, p)?,
        y: quantity_y(rho, p)?,
        t,
    })
}
