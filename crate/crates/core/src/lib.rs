//! braidforge: extraspecial 2-group representations from almost-complex
//! structures, their lifts to unitary braid-group representations solving
//! generalized Yang-Baxter equations, GHZ-state generation from the product
//! basis, and Yang-Baxterized unitary evolution — with every identity
//! machine-verified.
//!
//! The crate is organized around exact structured operators: group-generator
//! images are signed-permutation-with-phase (monomial) matrices, braid
//! generators are two-band operators `(1/√2)(1 ± M)`, and every verifier
//! compares operator products column by column without dense arithmetic.
//! Dense matrices exist as oracles below a configurable dimension cap.

pub mod braid;
pub mod decomp;
pub mod error;
pub mod espgroup;
pub mod ghz;
pub mod linalg;
pub mod report;
pub mod reps;
pub mod ybx;

pub use error::{Error, Result};
pub use report::{CheckResult, VerificationReport, Witness};

/// Default comparison tolerance: generator entries are 0, ±1/√2 or
/// unimodular/√2, so errors stay near machine epsilon.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
