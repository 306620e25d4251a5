//! High-precision engine for type II discrete Angelesco multiple orthogonal
//! polynomials on an r-star (Charlier, Meixner first kind, Meixner second
//! kind).
//!
//! The polynomials live in the variable `w = z^r` and satisfy orthogonality
//! conditions distributed over the rays of the star. The crate builds them
//! by five independent routes and cross-validates everything:
//!
//! - a brute-force moment-matrix solve ([`oracle`]),
//! - raising-operator cascades realizing the backward-difference product
//!   formula ([`constructors::raising_cascade`]),
//! - an explicit multi-sum series for the second-kind Meixner family
//!   ([`constructors::explicit_series`]),
//! - lattice grid values of the difference product, interpolated back to
//!   coefficients ([`constructors::rodrigues_polynomial`]),
//! - the nearest-neighbor recurrence with closed-form or oracle-derived
//!   coefficients ([`recurrence`]).
//!
//! [`analysis::full_verify`] runs the whole cross-check battery (route
//! equivalence, orthogonality residuals, recurrence-coefficient agreement,
//! path independence, operator identities, classical `r = 1` reductions,
//! zero location, moment tail certification) and reports per-check
//! verdicts.
//!
//! Precision is explicit: every operation threads a
//! [`precision::PrecisionContext`] (default 50 significant digits).

// index loops here usually couple several parallel arrays (rays, rows,
// coefficient tables); the indexed form is the clearer one
#![allow(clippy::needless_range_loop)]

// re-exported so downstream crates can name the arbitrary-precision types
// without pinning their own copy
pub use rug;

pub mod analysis;
pub mod constructors;
pub mod error;
pub mod gamma;
pub mod measures;
pub mod multi_index;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod precision;
pub mod recurrence;
pub mod report;

pub use analysis::{full_verify, find_roots, zero_location_check, Tolerances, ZeroSet};
pub use error::{Error, Result};
pub use measures::{compute_moment_table, moment_table_for, MomentTable};
pub use multi_index::MultiIndex;
pub use params::{Family, FamilyParams, MassPoint, ModelParams};
pub use poly::{newton_interpolate, PolyW};
pub use precision::PrecisionContext;
pub use report::{CheckResult, VerificationReport, Verdict};
