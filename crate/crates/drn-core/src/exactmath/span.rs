//! Span queries over the rows of an integer matrix, answered by exact LP
//! feasibility with retained witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{lp_feasible, LpOutcome, LpProblem, Rational};
use crate::{map_maybe_par, vecutil, ExecMode};

/// Is the zero vector a strictly positive combination of the rows of `m`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroInPosSpan {
    /// Integer coefficients `λ ⪰ 1` with `λ · m = 0`.
    Feasible(Vec<BigInt>),
    /// Farkas certificate for the system `λ · m = 0, λ ⪰ 1`.
    Infeasible(Vec<Rational>),
}

impl ZeroInPosSpan {
    pub fn is_feasible(&self) -> bool {
        matches!(self, ZeroInPosSpan::Feasible(_))
    }
}

/// Decides `0 ∈ span_{R>0}(rows of m)` for an `n x d` matrix.
///
/// Any strictly positive real combination can be scaled so every coefficient
/// is at least 1, so the query is the LP `λ · m = 0, λ ⪰ 1`; a rational
/// solution is cleared to an integer one by the least common denominator.
/// With no rows the empty combination works vacuously.
pub fn zero_in_pos_span(m: &[Vec<BigInt>], d: usize) -> ZeroInPosSpan {
    let n = m.len();
    if n == 0 {
        return ZeroInPosSpan::Feasible(vec![]);
    }
    let problem = row_combination_problem(m, d, &vecutil::zeros(d), true);
    match lp_feasible(&problem) {
        LpOutcome::Feasible(x) => ZeroInPosSpan::Feasible(clear_denominators(&x)),
        LpOutcome::Infeasible(y) => ZeroInPosSpan::Infeasible(y),
    }
}

/// LP for `λ · m = target` with `λ ⪰ 1` (strict) or `λ ⪰ 0`.
pub(crate) fn row_combination_problem(
    m: &[Vec<BigInt>],
    d: usize,
    target: &[BigInt],
    strict: bool,
) -> LpProblem {
    let n = m.len();
    let constraints: Vec<Vec<Rational>> = (0..d)
        .map(|c| (0..n).map(|j| Rational::from_integer(m[j][c].clone())).collect())
        .collect();
    let rhs: Vec<Rational> = target.iter().map(|t| Rational::from_integer(t.clone())).collect();
    let bound = if strict { Rational::one() } else { Rational::from_integer(BigInt::from(0)) };
    let lower_bounds = vec![bound; n];
    LpProblem::new(constraints, rhs, lower_bounds).expect("shapes are consistent by construction")
}

/// Scales a rational vector by the least common denominator.
fn clear_denominators(x: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        lcm = lcm.lcm(v.denom());
    }
    x.iter()
        .map(|v| {
            let scaled = v * Rational::from_integer(lcm.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

/// Nonnegative coefficients over the rows of `m` reaching `±e_axis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSolution {
    pub axis: usize,
    pub positive: bool,
    pub coefficients: Vec<Rational>,
}

/// Farkas certificate for the first axis direction that is unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedAxis {
    pub axis: usize,
    pub positive: bool,
    pub certificate: Vec<Rational>,
}

/// Outcome of [`pos_span_is_full`] with all witnesses retained.
///
/// When the span is full this holds the strictly positive kernel combination
/// plus one nonnegative combination per signed axis direction, `2d + 1`
/// witnesses in total. When it is not, `kernel` or `failing_axis` carries the
/// certificate of the first failing subproblem; axis solutions found before
/// the failure are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosSpanReport {
    pub kernel: ZeroInPosSpan,
    pub axis_solutions: Vec<AxisSolution>,
    pub failing_axis: Option<FailedAxis>,
}

impl PosSpanReport {
    pub fn is_full(&self) -> bool {
        self.kernel.is_feasible() && self.failing_axis.is_none()
    }
}

/// Decides `span_{R>0}(rows of m) = R^d`.
///
/// Full exactly when `0 ∈ span_{R>0}` and every signed unit vector `±e_i`
/// lies in `span_{R⪰0}`: the strictly positive kernel absorbs any defect of
/// nonnegative coefficients, and the signed units generate everything else.
/// Axis subproblems are ordered by axis then sign; reported solutions and the
/// failing axis are those of the first failure in that order regardless of
/// execution mode.
pub fn pos_span_is_full(m: &[Vec<BigInt>], d: usize) -> PosSpanReport {
    pos_span_is_full_with_mode(m, d, ExecMode::default())
}

pub fn pos_span_is_full_with_mode(m: &[Vec<BigInt>], d: usize, mode: ExecMode) -> PosSpanReport {
    let kernel = zero_in_pos_span(m, d);
    if !kernel.is_feasible() {
        return PosSpanReport { kernel, axis_solutions: vec![], failing_axis: None };
    }

    let directions: Vec<(usize, bool)> =
        (0..d).flat_map(|axis| [(axis, true), (axis, false)]).collect();
    let outcomes = map_maybe_par(mode, &directions, |&(axis, positive)| {
        let target = vecutil::signed_unit(d, axis, positive);
        lp_feasible(&row_combination_problem(m, d, &target, false))
    });

    let mut axis_solutions = Vec::new();
    let mut failing_axis = None;
    for ((axis, positive), outcome) in directions.into_iter().zip(outcomes) {
        match outcome {
            LpOutcome::Feasible(coefficients) => {
                axis_solutions.push(AxisSolution { axis, positive, coefficients });
            }
            LpOutcome::Infeasible(certificate) => {
                failing_axis = Some(FailedAxis { axis, positive, certificate });
                break;
            }
        }
    }
    PosSpanReport { kernel, axis_solutions, failing_axis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::verify_farkas;
    use num_traits::Signed;

    fn rows(vs: &[&[i64]]) -> Vec<Vec<BigInt>> {
        vs.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    /// Enumeration reference: some integer λ with 1 ⪯ λ ⪯ hi and λ·m = 0?
    fn kernel_by_enumeration(m: &[Vec<BigInt>], d: usize, hi: i64) -> Option<Vec<i64>> {
        let n = m.len();
        let mut lambda = vec![1i64; n];
        loop {
            let combo: Vec<BigInt> = (0..d)
                .map(|c| (0..n).map(|j| BigInt::from(lambda[j]) * &m[j][c]).sum())
                .collect();
            if combo.iter().all(|e| e == &BigInt::from(0)) {
                return Some(lambda);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return None;
                }
                lambda[k] += 1;
                if lambda[k] <= hi {
                    break;
                }
                lambda[k] = 1;
                k += 1;
            }
        }
    }

    #[test]
    fn kernel_matches_enumeration_positive_case() {
        let m = rows(&[&[2, 0], &[-1, -1], &[-1, 3]]);
        assert_eq!(kernel_by_enumeration(&m, 2, 5), Some(vec![2, 3, 1]));
        match zero_in_pos_span(&m, 2) {
            ZeroInPosSpan::Feasible(lambda) => {
                assert!(lambda.iter().all(|l| l >= &BigInt::from(1)));
                let combo: Vec<BigInt> =
                    (0..2).map(|c| (0..3).map(|j| &lambda[j] * &m[j][c]).sum()).collect();
                assert!(combo.iter().all(|e| e == &BigInt::from(0)));
            }
            ZeroInPosSpan::Infeasible(_) => panic!("expected feasible"),
        }
    }

    #[test]
    fn kernel_matches_enumeration_negative_case() {
        // All drifts push the first component up; no positive combination
        // can cancel, and enumeration up to 6 agrees.
        let m = rows(&[&[1, 0], &[2, -1], &[1, 1]]);
        assert_eq!(kernel_by_enumeration(&m, 2, 6), None);
        match zero_in_pos_span(&m, 2) {
            ZeroInPosSpan::Feasible(_) => panic!("expected infeasible"),
            ZeroInPosSpan::Infeasible(_) => {}
        }
    }

    #[test]
    fn empty_matrix_is_vacuously_feasible() {
        assert_eq!(zero_in_pos_span(&[], 3), ZeroInPosSpan::Feasible(vec![]));
    }

    #[test]
    fn full_positive_span_retains_all_witnesses() {
        let m = rows(&[&[2, 0], &[-1, -1], &[-1, 2]]);
        let report = pos_span_is_full(&m, 2);
        assert!(report.is_full());
        assert_eq!(report.axis_solutions.len(), 4);
        for sol in &report.axis_solutions {
            assert!(sol.coefficients.iter().all(|c| !c.is_negative()));
            let target = vecutil::signed_unit(2, sol.axis, sol.positive);
            let combo: Vec<Rational> = (0..2)
                .map(|c| {
                    (0..3)
                        .map(|j| &sol.coefficients[j] * Rational::from_integer(m[j][c].clone()))
                        .sum()
                })
                .collect();
            let expected: Vec<Rational> =
                target.iter().map(|t| Rational::from_integer(t.clone())).collect();
            assert_eq!(combo, expected);
        }
    }

    #[test]
    fn missing_axis_reports_first_failure_with_certificate() {
        // Rows only span the first axis: the kernel exists, both signs of e1
        // are reachable, and +e2 is the first failing direction.
        let m = rows(&[&[1, 0], &[-1, 0]]);
        let report = pos_span_is_full(&m, 2);
        assert!(!report.is_full());
        assert!(report.kernel.is_feasible());
        let failed = report.failing_axis.expect("an axis must fail");
        assert_eq!((failed.axis, failed.positive), (1, true));
        // The solutions for +e1 and -e1 come first and are retained.
        assert_eq!(report.axis_solutions.len(), 2);
        let target = vecutil::signed_unit(2, failed.axis, failed.positive);
        let problem = row_combination_problem(&m, 2, &target, false);
        assert!(verify_farkas(&problem, &failed.certificate));
    }

    #[test]
    fn infeasible_kernel_short_circuits() {
        let m = rows(&[&[1, 0], &[0, 1]]);
        let report = pos_span_is_full(&m, 2);
        assert!(!report.is_full());
        assert!(!report.kernel.is_feasible());
        assert!(report.axis_solutions.is_empty());
        assert!(report.failing_axis.is_none());
    }

    #[test]
    fn modes_agree() {
        for m in [
            rows(&[&[2, 0], &[-1, -1], &[-1, 2]]),
            rows(&[&[1, 0], &[-1, 0], &[0, 1], &[-1, 1]]),
            rows(&[&[1, 1], &[-1, -1]]),
        ] {
            let seq = pos_span_is_full_with_mode(&m, 2, ExecMode::Sequential);
            let par = pos_span_is_full_with_mode(&m, 2, ExecMode::Parallel);
            assert_eq!(seq, par);
        }
    }
}
