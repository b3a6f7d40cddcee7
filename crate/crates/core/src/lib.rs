//! Exact certification of prime-power and primorial inequalities.
//!
//! This crate decides inequalities of the shape
//!
//! ```text
//! n^(n - pi(n))        > c^(p_{n+k})          (power form)
//! p_1 * p_2 * ... * p_n > c^(p_{n+k})          (primorial form)
//! ```
//!
//! together with several classical explicit bounds (Zhang's inequality,
//! Panaitopol's inequality, the Rosser–Schoenfeld estimates), with no
//! floating-point guesswork anywhere on the decision path:
//!
//! * comparisons against a **rational** `c = p/q` reduce to big-integer
//!   cross-multiplication and are always exact — boundary cases like the
//!   first index where an inequality flips are decided unconditionally;
//! * quantities involving logarithms are evaluated as **directed-rounded
//!   enclosures** that are widened outward at every rounding step, so a
//!   `Holds`/`Fails` verdict from the enclosure path is a certificate, and
//!   `Undecided` is returned instead of a guess when the precision cap is
//!   reached.
//!
//! The crate also locates the unique zero of the threshold functions that
//! govern where the power inequality starts to hold (bracketed bisection
//! with certified signs), scans ranges exhaustively for the true minimal
//! threshold, and audits the literal decimal constants (`1.25506`,
//! `1.71678`) used by the explicit bounds.
//!
//! Modules:
//!
//! * [`prime`] — sieve-backed prime table: primes, `pi(x)`, `p_n`, primorials.
//! * [`interval`] — exact rational intervals and certified `log`/`exp`.
//! * [`exact`] — exact constants, verdicts, and the two core comparators.
//! * [`bounds`] — threshold functions, certified root finding, constants audit.
//! * [`verify`] — the inequality catalogue, range scans, minimal thresholds.
//!
//! The crate is `no_std` (with `alloc`); anything involving IO lives in the
//! companion CLI crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod exact;
pub mod interval;
pub mod prime;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{CheckVerdict, ExactConstant, Verdict};
pub use interval::{Interval, PrecisionCfg};
pub use prime::PrimeTable;
pub use verify::{InequalityId, InequalityParams, ThresholdReport};

// The public API speaks in these types; re-export the crates so callers can
// name them without pinning their own copies.
pub use num_bigint;
pub use num_rational;
pub use num_traits;
