use crate::error::{Error, Result};
use crate::measures::{
    c_l2_max, c_l2_squared, c_lp, durr_quantities, fuluo_quantities, jb_quantities, machado_t,
    mixedness_linear, particle_p_squared, quantity_y, x_unchecked,
};
use crate::state::{HermitianState, Mode};

use super::{IdentityId, IdentityResult, Tolerances};

fn require_strict(rho: &HermitianState, operation: &'static str) -> Result<()> {
    match rho.mode() {
        Mode::Strict => Ok(()),
        Mode::Formal => Err(Error::RequiresStrict { operation }),
    }
}

fn check_p(p: f64, upper: f64, inclusive: bool) -> Result<()> {
    let ok = p.is_finite() && p >= 1.0 && if inclusive { p <= upper } else { p < upper };
    if ok {
        Ok(())
    } else if inclusive {
        Err(Error::InvalidP {
            p,
            reason: "requires 1 <= p <= 2",
        })
    } else {
        Err(Error::InvalidP {
            p,
            reason: "requires 1 <= p < 2",
        })
    }
}

fn result(
    id: IdentityId,
    rho: &HermitianState,
    p: Option<f64>,
    value: f64,
    tol: &Tolerances,
) -> IdentityResult {
    IdentityResult::new(id, value, id.tolerance(tol), rho.fingerprint(), rho.dim(), p)
}

fn ratio(rho: &HermitianState) -> f64 {
    let d = rho.dim() as f64;
    d / (d - 1.0)
}

/// Coefficient of `C_lp^2` in the X trade-off, `(d^{p-1}/(d-1))^{2/p}`.
pub fn x_tradeoff_coefficient(d: usize, p: f64) -> f64 {
    let d = d as f64;
    (d.powf(p - 1.0) / (d - 1.0)).powf(2.0 / p)
}

/// Coefficient of `C_lp^2` in the Y trade-off, `d^{(3p-2)/p} (d-1)^{(p-2)/p} / 2`.
pub fn y_tradeoff_coefficient(d: usize, p: f64) -> f64 {
    let d = d as f64;
    0.5 * d.powf((3.0 * p - 2.0) / p) * (d - 1.0).powf((p - 2.0) / p)
}

/// `d/(d-1) C_l2^2 + M_l + P^2 - 1`.
pub fn residual_l2_triality(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "l2 triality")?;
    let v = ratio(rho) * c_l2_squared(rho) + mixedness_linear(rho) + particle_p_squared(rho) - 1.0;
    Ok(result(IdentityId::L2Triality, rho, None, v, tol))
}

/// `d/(d-1) (C_l2^max)^2 + M_l - 1`.
pub fn residual_max_relation(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "max-coherence relation")?;
    let cmax = c_l2_max(rho)?;
    let v = ratio(rho) * cmax * cmax + mixedness_linear(rho) - 1.0;
    Ok(result(IdentityId::MaxCoherenceMixedness, rho, None, v, tol))
}

/// `tr rho^2 - 1/d - (d-1)/d (P_D^2 + V_D^2)`.
pub fn residual_durr(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "Durr triality")?;
    let d = rho.dim() as f64;
    let (v_d, p_d) = durr_quantities(rho);
    let v = rho.purity() - 1.0 / d - (d - 1.0) / d * (p_d * p_d + v_d * v_d);
    Ok(result(IdentityId::DurrTriality, rho, None, v, tol))
}

/// `P_JB^2 + V_JB^2 - 2 (tr rho^2 - 1/d)`.
pub fn residual_jb(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "Jakob-Bergou triality")?;
    let d = rho.dim() as f64;
    let (v_jb, p_jb) = jb_quantities(rho);
    let v = p_jb * p_jb + v_jb * v_jb - 2.0 * (rho.purity() - 1.0 / d);
    Ok(result(IdentityId::JakobBergouTriality, rho, None, v, tol))
}

/// `P_L + V_L + (d-1)/d M_l - 1`.
pub fn residual_fuluo(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "Fu-Luo triality")?;
    let d = rho.dim() as f64;
    let (v_l, p_l) = fuluo_quantities(rho);
    let v = p_l + v_l + (d - 1.0) / d * mixedness_linear(rho) - 1.0;
    Ok(result(IdentityId::FuLuoTriality, rho, None, v, tol))
}

/// `C_l2 - sqrt((d-1)/d) V_D`.
pub fn residual_visibility_consistency(rho: &HermitianState, tol: &Tolerances) -> IdentityResult {
    let (v_d, _) = durr_quantities(rho);
    let v = c_l2_squared(rho).sqrt() - (1.0 / ratio(rho)).sqrt() * v_d;
    result(IdentityId::VisibilityConsistency, rho, None, v, tol)
}

/// `(d^{p-1}/(d-1))^{2/p} C_lp^2 + M_l + P^2 + d/(d-1) X - 1`, for `1 <= p < 2`.
pub fn residual_x_tradeoff(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<IdentityResult> {
    check_p(p, 2.0, false)?;
    require_strict(rho, "X trade-off")?;
    let cp = c_lp(rho, p)?;
    let v = x_tradeoff_coefficient(rho.dim(), p) * cp * cp
        + mixedness_linear(rho)
        + particle_p_squared(rho)
        + ratio(rho) * x_unchecked(rho, p)?
        - 1.0;
    Ok(result(IdentityId::XTradeoff, rho, Some(p), v, tol))
}

/// `d^{(3p-2)/p} (d-1)^{(p-2)/p} / 2 C_lp^2 + M_l + P^2 - 1 - d/(d-1) Y`, for `1 <= p <= 2`.
pub fn residual_y_tradeoff(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<IdentityResult> {
    check_p(p, 2.0, true)?;
    require_strict(rho, "Y trade-off")?;
    let cp = c_lp(rho, p)?;
    let v = y_tradeoff_coefficient(rho.dim(), p) * cp * cp + mixedness_linear(rho) + particle_p_squared(rho)
        - 1.0
        - ratio(rho) * quantity_y(rho, p)?;
    Ok(result(IdentityId::YTradeoff, rho, Some(p), v, tol))
}

/// `d/(2(d-1)) C_l1^2 + M_l + P^2 - 1 - (d-2)(d+1)/2 T`, for `d >= 3`.
pub fn residual_machado(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    require_strict(rho, "Machado relation")?;
    let t = machado_t(rho)?;
    let d = rho.dim() as f64;
    let c1 = c_lp(rho, 1.0)?;
    let v = d / (2.0 * (d - 1.0)) * c1 * c1 + mixedness_linear(rho) + particle_p_squared(rho)
        - 1.0
        - (d - 2.0) * (d + 1.0) / 2.0 * t;
    Ok(result(IdentityId::MachadoRelation, rho, None, v, tol))
}

/// `(d-2)(d+1)/2 T - d/(d-1) Y(p = 1)`, for `d >= 3`. Any mode.
pub fn residual_machado_equivalence(rho: &HermitianState, tol: &Tolerances) -> Result<IdentityResult> {
    let t = machado_t(rho)?;
    let d = rho.dim() as f64;
    let v = (d - 2.0) * (d + 1.0) / 2.0 * t - ratio(rho) * quantity_y(rho, 1.0)?;
    Ok(result(IdentityId::MachadoYEquivalence, rho, None, v, tol))
}

/// `X + Y - ([d(d-1)]^{(2p-2)/p} / 2 - [d(d-1)]^{(p-2)/p}) C_lp^2`, for `1 <= p <= 2`. Any mode.
pub fn residual_xy_sum(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<IdentityResult> {
    check_p(p, 2.0, true)?;
    let n = (rho.dim() * (rho.dim() - 1)) as f64;
    let cp = c_lp(rho, p)?;
    let coeff = 0.5 * n.powf((2.0 * p - 2.0) / p) - n.powf((p - 2.0) / p);
    let v = x_unchecked(rho, p)? + quantity_y(rho, p)? - coeff * cp * cp;
    Ok(result(IdentityId::XySum, rho, Some(p), v, tol))
}

/// X trade-off with the X term dropped: `(d^{p-1}/(d-1))^{2/p} C_lp^2 + M_l + P^2 - 1`.
/// Vanishes for states whose off-diagonal magnitudes are all equal.
pub fn residual_equal_offdiag_face(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<IdentityResult> {
    check_p(p, 2.0, true)?;
    require_strict(rho, "equal off-diagonal face")?;
    let cp = c_lp(rho, p)?;
    let v = x_tradeoff_coefficient(rho.dim(), p) * cp * cp + mixedness_linear(rho) + particle_p_squared(rho)
        - 1.0;
    Ok(result(IdentityId::EqualOffDiagonalFace, rho, Some(p), v, tol))
}

/// Y trade-off with the Y term dropped:
/// `d^{(3p-2)/p} (d-1)^{(p-2)/p} / 2 C_lp^2 + M_l + P^2 - 1`.
/// Vanishes at `p = 1` for states with at most one coherent pair.
pub fn residual_single_pair_face(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<IdentityResult> {
    check_p(p, 2.0, true)?;
    require_strict(rho, "single pair face")?;
    let cp = c_lp(rho, p)?;
    let v = y_tradeoff_coefficient(rho.dim(), p) * cp * cp + mixedness_linear(rho) + particle_p_squared(rho)
        - 1.0;
    Ok(result(IdentityId::SinglePairFace, rho, Some(p), v, tol))
}

/// Slacks of the coherence inequalities at `1 <= p <= 2`.
///
/// The l_2-mixedness bound presupposes a physical state and is only included
/// for strict states; the rest are properties of the entries alone.
pub fn slack_inequalities(rho: &HermitianState, p: f64, tol: &Tolerances) -> Result<Vec<IdentityResult>> {
    check_p(p, 2.0, true)?;
    let d = rho.dim();
    let n = (d * (d - 1)) as f64;
    let c2sq = c_l2_squared(rho);
    let cp = c_lp(rho, p)?;
    let cpsq = cp * cp;
    let c1 = c_lp(rho, 1.0)?;
    let upper = 0.5 * n.powf(2.0 * (p - 1.0) / p) * cpsq;
    let y = upper - c2sq;
    let df = d as f64;
    let y_cap = (df - 2.0) * (df + 1.0) / (2.0 * n) * n.powf(2.0 * (p - 1.0) / p) * cpsq;

    let mut out = Vec::with_capacity(5);
    if rho.mode() == Mode::Strict {
        let v = 1.0 - ratio(rho) * c2sq - mixedness_linear(rho);
        out.push(result(IdentityId::L2MixednessBound, rho, None, v, tol));
    }
    let lower = n.powf((p - 2.0) / p) * cpsq;
    out.push(result(IdentityId::LpLowerBound, rho, Some(p), c2sq - lower, tol));
    out.push(result(IdentityId::LpUpperBound, rho, Some(p), y, tol));
    out.push(result(IdentityId::YUpperBound, rho, Some(p), y_cap - y, tol));
    out.push(result(
        IdentityId::L1L2Bound,
        rho,
        None,
        c1 * c1 - 2.0 * c2sq,
        tol,
    ));
    Ok(out)
}
