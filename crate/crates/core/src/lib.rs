//! Numerics for l_p-norm coherence and wave-particle-mixedness trade-offs.
//!
//! - [`state`]: density matrices and formal Hermitian tables, validation, JSON I/O.
//! - [`family`]: named state families and seeded random ensembles.
//! - [`measures`]: coherence, particle, mixedness and visibility quantifiers.
//! - [`verify`]: residuals of the exact trade-off identities, slacks of the
//!   bounds, and sampled checks of the wave/particle measure axioms.
//! - [`sweep`], [`tetra`]: off-diagonal pattern sweeps and the special-case
//!   table of the X trade-off.
//! - [`cli`]: the `coherence` command-line front end.
//!
//! ```
//! use coherence::{full_report, make_family, StateFamilySpec};
//! use coherence::verify::{residual_x_tradeoff, Tolerances};
//!
//! let rho = make_family(&StateFamilySpec::Mcms { a: 0.5 }, 3)?;
//! let report = full_report(&rho, 1.5)?;
//! assert!(report.x.abs() < 1e-15); // equal off-diagonal magnitudes
//! assert!(residual_x_tradeoff(&rho, 1.5, &Tolerances::default())?.passed);
//! # Ok::<(), coherence::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod family;
pub mod manifest;
pub mod measures;
pub mod numeric;
pub mod state;
pub mod sweep;
pub mod tetra;
pub mod verify;

pub use error::{Error, Result};
pub use family::{make_family, StateFamilySpec};
pub use measures::{full_report, MeasureReport};
pub use state::{HermitianState, Mode};
