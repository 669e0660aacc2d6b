//! Exact rational linear-programming feasibility with certificates.
//!
//! A problem is a system `A x = b`, `x ⪰ ℓ` with rational data. The solver
//! is a dense phase-1 simplex over `BigRational` using Bland's pivot rule, so
//! it cannot cycle; the number of visited bases is bounded by C(n+m, m) and
//! that bound is asserted. Every answer carries evidence: a feasible point,
//! or a Farkas vector `y` with `yᵀA ⪯ 0` and `yᵀ(b − Aℓ) > 0` proving that
//! no `x ⪰ ℓ` can satisfy `A x = b`. Both re-verify by exact substitution
//! via [`verify_feasible`] and [`verify_farkas`].

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint row {row} has {found} coefficients, expected {expected}")]
    BadRowWidth { row: usize, expected: usize, found: usize },
    #[error("rhs has {found} entries but there are {expected} constraint rows")]
    BadRhsLength { expected: usize, found: usize },
    #[error("lower bounds have {found} entries but there are {expected} variables")]
    BadBoundsLength { expected: usize, found: usize },
}

/// Feasibility problem `constraints · x = rhs`, `x ⪰ lower_bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    constraints: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    lower_bounds: Vec<Rational>,
}

impl LpProblem {
    pub fn new(
        constraints: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        lower_bounds: Vec<Rational>,
    ) -> Result<Self, LpError> {
        let n = lower_bounds.len();
        for (i, row) in constraints.iter().enumerate() {
            if row.len() != n {
                return Err(LpError::BadRowWidth { row: i, expected: n, found: row.len() });
            }
        }
        if rhs.len() != constraints.len() {
            return Err(LpError::BadRhsLength { expected: constraints.len(), found: rhs.len() });
        }
        Ok(LpProblem { constraints, rhs, lower_bounds })
    }

    pub fn num_vars(&self) -> usize {
        self.lower_bounds.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Vec<Rational>] {
        &self.constraints
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn lower_bounds(&self) -> &[Rational] {
        &self.lower_bounds
    }

    /// Shifted right-hand side `b − A·ℓ` of the equivalent system over
    /// `y = x − ℓ ⪰ 0`.
    fn shifted_rhs(&self) -> Vec<Rational> {
        (0..self.num_constraints())
            .map(|i| &self.rhs[i] - dot(&self.constraints[i], &self.lower_bounds))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// A point `x` with `A x = b` and `x ⪰ ℓ`.
    Feasible(Vec<Rational>),
    /// A Farkas vector `y` with `yᵀA ⪯ 0` componentwise and
    /// `yᵀ(b − Aℓ) > 0`.
    Infeasible(Vec<Rational>),
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact check that `x` solves the problem.
pub fn verify_feasible(problem: &LpProblem, x: &[Rational]) -> bool {
    if x.len() != problem.num_vars() {
        return false;
    }
    if x.iter().zip(problem.lower_bounds()).any(|(v, l)| v < l) {
        return false;
    }
    problem
        .constraints()
        .iter()
        .zip(problem.rhs())
        .all(|(row, b)| &dot(row, x) == b)
}

/// Exact check that `y` is a Farkas certificate of infeasibility:
/// `yᵀA ⪯ 0` and `yᵀ(b − Aℓ) > 0`. Any `x ⪰ ℓ` would give
/// `yᵀA(x − ℓ) ≤ 0 < yᵀ(b − Aℓ)`, contradicting `Ax = b`.
pub fn verify_farkas(problem: &LpProblem, y: &[Rational]) -> bool {
    let m = problem.num_constraints();
    if y.len() != m {
        return false;
    }
    for j in 0..problem.num_vars() {
        let col: Rational = (0..m).map(|i| &y[i] * &problem.constraints()[i][j]).sum();
        if col.is_positive() {
            return false;
        }
    }
    let shifted = problem.shifted_rhs();
    let value: Rational = (0..m).map(|i| &y[i] * &shifted[i]).sum();
    value.is_positive()
}

/// Decides feasibility of `A x = b`, `x ⪰ ℓ`.
pub fn lp_feasible(problem: &LpProblem) -> LpOutcome {
    let m = problem.num_constraints();
    let n = problem.num_vars();

    // Work on the shifted system A y = b', y ⪰ 0, flipping rows so the
    // right-hand side is nonnegative; `flipped` remembers the row signs for
    // the certificate.
    let mut rows: Vec<Vec<Rational>> = problem.constraints.clone();
    let mut rhs = problem.shifted_rhs();
    let mut flipped = vec![false; m];
    for i in 0..m {
        if rhs[i].is_negative() {
            for entry in rows[i].iter_mut() {
                *entry = -entry.clone();
            }
            rhs[i] = -rhs[i].clone();
            flipped[i] = true;
        }
    }

    // Phase-1 tableau: columns 0..n original variables, n..n+m artificials,
    // plus the right-hand side. Minimizes the sum of artificials.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        row[..n].clone_from_slice(&rows[i]);
        row[n + i] = Rational::one();
        row[width - 1] = rhs[i].clone();
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs r_j = c_j − Σ_i c_{basis(i)} t[i][j] with c = 0 on the
    // original variables and 1 on the artificials.
    let mut reduced: Vec<Rational> = (0..n + m)
        .map(|j| {
            let cost = if j < n { Rational::zero() } else { Rational::one() };
            let through: Rational = (0..m).map(|i| t[i][j].clone()).sum();
            cost - through
        })
        .collect();

    let pivot_bound = binomial_capped(n + m, m);
    let mut pivots: u64 = 0;

    loop {
        // Bland's rule: the entering column is the smallest with a negative
        // reduced cost.
        let entering = match (0..n + m).find(|&j| reduced[j].is_negative()) {
            Some(j) => j,
            None => break,
        };

        // Ratio test; ties broken by the smallest basic variable index,
        // again Bland.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][entering].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][entering];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (leave_row, _) = leave.expect("phase-1 objective is bounded, a pivot row must exist");

        // Pivot.
        let pivot = t[leave_row][entering].clone();
        for entry in t[leave_row].iter_mut() {
            *entry = &*entry / &pivot;
        }
        for i in 0..m {
            if i != leave_row && !t[i][entering].is_zero() {
                let factor = t[i][entering].clone();
                for j in 0..width {
                    let delta = &factor * &t[leave_row][j];
                    t[i][j] = &t[i][j] - &delta;
                }
            }
        }
        let factor = reduced[entering].clone();
        for (j, r) in reduced.iter_mut().enumerate() {
            let delta = &factor * &t[leave_row][j];
            *r = &*r - &delta;
        }
        basis[leave_row] = entering;

        pivots += 1;
        assert!(
            pivots <= pivot_bound,
            "simplex exceeded its basis bound; Bland's rule should make this impossible"
        );
    }

    // Optimal value of the phase-1 objective: total artificial mass left.
    let objective: Rational =
        (0..m).filter(|&i| basis[i] >= n).map(|i| t[i][width - 1].clone()).sum();

    if objective.is_positive() {
        // Dual prices off the final tableau: the artificial block holds the
        // basis inverse, so π_k = 1 − r_{n+k}; unflip rows to certify the
        // original orientation.
        let y: Vec<Rational> = (0..m)
            .map(|k| {
                let pi = Rational::one() - reduced[n + k].clone();
                if flipped[k] {
                    -pi
                } else {
                    pi
                }
            })
            .collect();
        debug_assert!(verify_farkas(problem, &y));
        return LpOutcome::Infeasible(y);
    }

    let mut x = problem.lower_bounds.clone();
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = &x[basis[i]] + &t[i][width - 1];
        }
    }
    debug_assert!(verify_feasible(problem, &x));
    LpOutcome::Feasible(x)
}

/// C(n, k) saturated to u64, used only as a sanity bound on pivot counts.
fn binomial_capped(n: usize, k: usize) -> u64 {
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
        .to_u64()
        .unwrap_or(u64::MAX)
}
