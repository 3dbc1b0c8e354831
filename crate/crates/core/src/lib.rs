//! Counting, bounding and asymptotic analysis of permutations that avoid a
//! generalized (dashed) pattern.
//!
//! * [`pattern`]: dash notation, reduction, occurrences.
//! * [`enumerate`]: exact `α_n(σ)` by pruned backtracking and, for
//!   consecutive patterns, by a transfer DP.
//! * [`series`]: truncated exponential generating functions with exact
//!   rational (and balanced floating) coefficients.
//! * [`expoly`]: exponential polynomials `Σ p_i(z) e^{iz}`.
//! * [`formulas`]: named EGFs and coefficient sandwiches.
//! * [`asympt`]: growth constants and estimators.
//! * [`cli`]: the command-line front end, cache and CSV/figure output.

pub mod asympt;
pub mod cli;
pub mod enumerate;
pub mod expoly;
pub mod formulas;
pub mod series;
pub mod pattern;

pub use enumerate::{count_avoiders, count_sequence, CountSequence, Method};
pub use pattern::{GeneralizedPattern, Permutation};
