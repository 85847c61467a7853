//! Exact machinery for radius-2 identifying codes on the infinite square grid.
//!
//! A vertex set `C` of the square grid *identifies* a vertex `u` when the set
//! of codewords within distance `r` of `u` (the *I-set* of `u`) is nonempty
//! and distinct from the I-set of every other vertex. This crate provides the
//! pieces needed to reason about such codes exactly:
//!
//! * [`lattice`] — grid points, Manhattan/Chebyshev balls, finite vertex sets
//!   backed by bit matrices, and the dihedral symmetries of the grid;
//! * [`codeset`] — code windows, periodic codes, identifying-code verdicts
//!   with deterministic witnesses, densities, and the pattern file format;
//! * [`share`] — the exact share of a codeword and the grouped upper estimate
//!   obtained from a subcode;
//! * [`discharging`] — the ten share-shifting rules, their firing records,
//!   and a discharging simulator for periodic codes;
//! * [`verifier`] — the exhaustive two-stage search establishing that no
//!   admissible constellation pushes a modified share above 35/6.
//!
//! Every quantity that feeds a verdict is an exact [`Rational`]; floating
//! point appears only in wall-clock fields of reports.

#![forbid(unsafe_code)]

pub mod codeset;
pub mod discharging;
mod error;
pub mod lattice;
pub mod share;
pub mod verifier;

pub use error::{Error, Result};
pub use lattice::{ball, GridPoint, Metric, Region, Rotation, SymmetryOp, MAX_RADIUS};

/// Exact rational number; all verdict arithmetic in this crate uses it.
///
/// Values are kept in lowest terms with a positive denominator, and display
/// as `p/q` (or bare `p` when the denominator is 1).
pub type Rational = num_rational::Ratio<i128>;

/// Shorthand constructor; reduces to lowest terms.
///
/// # Panics
///
/// Panics if `denom` is zero.
pub fn rat(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}
