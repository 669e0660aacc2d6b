//! Exact arithmetic backends: rational linear programming with certificates,
//! Hermite normal forms, and the span queries built from them.
//!
//! Everything here computes over `num_rational::BigRational` and
//! `num_bigint::BigInt`; answers are exact and carry enough data to be
//! re-checked by substitution.

mod hnf;
mod lp;
mod span;

pub use hnf::{determinant, hnf, integer_span_full, is_hnf_shape, solve_integer_system, verify_hnf, HnfResult};
pub use lp::{lp_feasible, verify_farkas, verify_feasible, LpError, LpOutcome, LpProblem};
pub use span::{
    pos_span_is_full, pos_span_is_full_with_mode, zero_in_pos_span, AxisSolution, FailedAxis,
    PosSpanReport, ZeroInPosSpan,
};
pub(crate) use span::row_combination_problem;

/// Arbitrary-precision rational; always held in canonical form (reduced,
/// positive denominator) by construction.
pub type Rational = num_rational::BigRational;
