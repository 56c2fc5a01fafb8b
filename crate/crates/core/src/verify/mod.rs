//! Residuals and slacks for the trade-off identities and inequalities, plus
//! sampled checks of the wave and particle measure axioms.
//!
//! Sign conventions: an equality carries its residual (`LHS - RHS`), an
//! inequality carries its slack (`bound side - bounded side`), so a slack
//! `>= 0` means the inequality holds.

mod axioms;
mod identities;
mod suite;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use axioms::{axiom_suite_particle, axiom_suite_wave, AxiomId, AxiomSuiteResult};
pub use identities::*;
pub use suite::{run_suite, Record, SuiteConfig, SuiteSummary, SummaryRow, SummaryStatus};

/// Default tolerance for exact identities.
pub const EQUALITY_TOL: f64 = 1e-10;
/// Tolerance for identities that involve no powers or square roots.
pub const TIGHT_EQUALITY_TOL: f64 = 1e-12;
/// Allowed negative slack for inequalities.
pub const INEQUALITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub equality: f64,
    pub tight_equality: f64,
    pub inequality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            equality: EQUALITY_TOL,
            tight_equality: TIGHT_EQUALITY_TOL,
            inequality: INEQUALITY_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Equality,
    Inequality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    /// `d/(d-1) C_l2^2 + M_l + P^2 = 1`
    L2Triality,
    /// `d/(d-1) (C_l2^max)^2 + M_l = 1`
    MaxCoherenceMixedness,
    /// `tr rho^2 = 1/d + (d-1)/d (P_D^2 + V_D^2)`
    DurrTriality,
    /// `P_JB^2 + V_JB^2 = 2 (tr rho^2 - 1/d)`
    JakobBergouTriality,
    /// `P_L + V_L + (d-1)/d M_l = 1`
    FuLuoTriality,
    /// `C_l2 = sqrt((d-1)/d) V_D`
    VisibilityConsistency,
    /// `(d^{p-1}/(d-1))^{2/p} C_lp^2 + M_l + P^2 + d/(d-1) X = 1`
    XTradeoff,
    /// `d^{(3p-2)/p} (d-1)^{(p-2)/p} / 2 C_lp^2 + M_l + P^2 = 1 + d/(d-1) Y`
    YTradeoff,
    /// `d/(2(d-1)) C_l1^2 + M_l + P^2 = 1 + (d-2)(d+1)/2 T`
    MachadoRelation,
    /// `(d-2)(d+1)/2 T = d/(d-1) Y(p = 1)`
    MachadoYEquivalence,
    /// `X + Y = ([d(d-1)]^{(2p-2)/p} / 2 - [d(d-1)]^{(p-2)/p}) C_lp^2`
    XySum,
    /// X-tradeoff with `X = 0`, for states whose off-diagonal magnitudes are all equal.
    EqualOffDiagonalFace,
    /// Y-tradeoff with `Y = 0`, for states with a single coherent pair (p = 1).
    SinglePairFace,
    /// `d/(d-1) C_l2^2 + M_l <= 1`
    L2MixednessBound,
    /// `C_l2^2 >= [d(d-1)]^{(p-2)/p} C_lp^2`
    LpLowerBound,
    /// `[d(d-1)]^{2(p-1)/p} C_lp^2 / 2 >= C_l2^2`
    LpUpperBound,
    /// `Y <= (d-2)(d+1) / (2d(d-1)) [d(d-1)]^{2(p-1)/p} C_lp^2`
    YUpperBound,
    /// `C_l1^2 >= 2 C_l2^2`
    L1L2Bound,
}

impl IdentityId {
    pub fn kind(self) -> Kind {
        use IdentityId::*;
        match self {
            L2MixednessBound | LpLowerBound | LpUpperBound | YUpperBound | L1L2Bound => Kind::Inequality,
            _ => Kind::Equality,
        }
    }

    pub fn tolerance(self, tol: &Tolerances) -> f64 {
        use IdentityId::*;
        match self {
            MaxCoherenceMixedness | VisibilityConsistency | MachadoYEquivalence | XySum => tol.tight_equality,
            id if id.kind() == Kind::Inequality => tol.inequality,
            _ => tol.equality,
        }
    }

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub identity_id: IdentityId,
    pub kind: Kind,
    /// Residual for equalities, slack for inequalities.
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub state_fingerprint: String,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
}

impl IdentityResult {
    pub fn new(
        identity_id: IdentityId,
        value: f64,
        tolerance: f64,
        state_fingerprint: String,
        d: usize,
        p: Option<f64>,
    ) -> Self {
        let kind = identity_id.kind();
        let passed = match kind {
            Kind::Equality => value.abs() <= tolerance,
            Kind::Inequality => value >= -tolerance,
        };
        IdentityResult {
            identity_id,
            kind,
            value,
            tolerance,
            passed,
            state_fingerprint,
            d,
            p,
        }
    }
}
