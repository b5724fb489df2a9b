//! Greedy B_h sets: construction, verification, and closed-form
//! cross-checks.
//!
//! A set of nonnegative integers is B_h when every integer has at most one
//! representation as a sum of h elements (repetition allowed, order
//! ignored). Growing such a set greedily from {0} yields a sequence whose
//! first terms have exact closed forms; this crate computes the sequence,
//! verifies the B_h property by independent routes, and machine-checks the
//! closed form of the fourth term three different ways:
//!
//! * [`greedy`] runs the construction itself over incremental sum-support
//!   tables, with a slow enumeration twin for cross-checking;
//! * [`formulas`] evaluates the closed forms and the geometric scan bound;
//! * [`witness`] pins the fourth term without running the engine, by
//!   showing every smaller candidate is blocked by an explicit collision
//!   and the closed-form value is not.
//!
//! [`cli`] and the `bhseq` binary expose the same operations as
//! subcommands with stable file formats.

pub mod bfile;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod greedy;
pub mod interval;
pub mod set;
pub mod table;
pub mod witness;

pub use error::{Error, Result};
