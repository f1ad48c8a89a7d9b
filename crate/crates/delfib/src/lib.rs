//! Exact generation and analysis of delayed Fibonacci-type sequences.
//!
//! The crate generates the undelayed Fibonacci numbers `F` (F_0 = F_1 = 1,
//! F_n = F_{n-1} + F_{n-2}) together with their delayed relatives: the
//! Padovan-type family `G` (G_n = G_{n-2} + G_{n-3}), the higher families
//! F^(l) (F_n = F_{n-1} + F_{n-l-1}) and the doubly delayed `H`
//! (H_n = H_{n-3} + H_{n-4}).  On top of the exact big-integer sequences it
//! provides
//!
//! * arbitrary-precision characteristic roots and Binet-style coefficients
//!   for the quadratic, cubic and quartic characteristic equations
//!   ([`characteristic`]),
//! * the 7j+k / 12J+K bracketing scan of F values inside the G sequence,
//!   including breakpoint detection ([`intertwine`]),
//! * binomial-sum and chain-enumeration identities for the higher families
//!   ([`combinatorics`]),
//! * the asymptotic growth ratio ln(rho_A)/ln(eta_a), its rapid decimal
//!   expansion and related numerical constants ([`asymptotics`]).
//!
//! All sequence arithmetic is exact; real and complex values are computed in
//! fixed-point decimal arithmetic with a caller-chosen number of digits
//! ([`ap`]).

pub mod ap;
pub mod asymptotics;
pub mod characteristic;
pub mod combinatorics;
mod error;
pub mod intertwine;
pub mod report;
pub mod sequences;

pub use error::{Error, Result};
pub use report::VerificationReport;

/// Version string stamped into machine-readable output envelopes.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
