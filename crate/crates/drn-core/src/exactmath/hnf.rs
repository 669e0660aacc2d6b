//! Row-style Hermite normal form over the integers, with the unimodular
//! transform tracked so results can be re-verified and integer linear systems
//! solved by back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `h = u · m` where `u` is unimodular, `h` is in row Hermite normal form:
/// nonzero rows first with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub rank: usize,
}

impl HnfResult {
    /// Column of the pivot in each nonzero row.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|r| self.h[r].iter().position(|e| !e.is_zero()).expect("nonzero row"))
            .collect()
    }

    /// The pivot values, one per nonzero row.
    pub fn pivots(&self) -> Vec<BigInt> {
        self.pivot_columns().iter().zip(&self.h).map(|(&c, row)| row[c].clone()).collect()
    }
}

/// Computes the row Hermite normal form of `m` (rows spanning a lattice).
pub fn hnf(m: &[Vec<BigInt>]) -> HnfResult {
    let n = m.len();
    let d = m.first().map_or(0, Vec::len);
    debug_assert!(m.iter().all(|row| row.len() == d), "ragged matrix");

    let mut h: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    let mut row = 0;
    for col in 0..d {
        if row == n {
            break;
        }
        // Euclidean reduction within the column until at most one nonzero
        // entry remains at or below `row`.
        loop {
            let mut best: Option<usize> = None;
            for r in row..n {
                if !h[r][col].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if h[r][col].abs() < h[b][col].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap(row, b);
            u.swap(row, b);
            if h[row][col].is_negative() {
                negate_row(&mut h[row]);
                negate_row(&mut u[row]);
            }
            let mut finished = true;
            for r in row + 1..n {
                let q = h[r][col].div_floor(&h[row][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut h, r, row, &q);
                    row_sub_mul(&mut u, r, row, &q);
                }
                if !h[r][col].is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if !h[row][col].is_zero() {
            // Reduce the entries above the new pivot into [0, pivot).
            for r in 0..row {
                let q = h[r][col].div_floor(&h[row][col]);
                if !q.is_zero() {
                    row_sub_mul(&mut h, r, row, &q);
                    row_sub_mul(&mut u, r, row, &q);
                }
            }
            row += 1;
        }
    }

    let result = HnfResult { h, u, rank: row };
    debug_assert!(verify_hnf(m, &result));
    result
}

fn negate_row(row: &mut [BigInt]) {
    for e in row.iter_mut() {
        *e = -e.clone();
    }
}

/// `rows[dst] -= q * rows[src]`.
fn row_sub_mul(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let src_row = rows[src].clone();
    for (e, s) in rows[dst].iter_mut().zip(&src_row) {
        *e -= q * s;
    }
}

/// Structural check of the normal form alone.
pub fn is_hnf_shape(h: &[Vec<BigInt>]) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for (r, row) in h.iter().enumerate() {
        match row.iter().position(|e| !e.is_zero()) {
            None => seen_zero_row = true,
            Some(col) => {
                if seen_zero_row {
                    return false;
                }
                if let Some(prev) = last_pivot {
                    if col <= prev {
                        return false;
                    }
                }
                last_pivot = Some(col);
                let pivot = &row[col];
                if !pivot.is_positive() {
                    return false;
                }
                for above in h.iter().take(r) {
                    if above[col].is_negative() || above[col] >= *pivot {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Full verification: `u · m = h`, `|det u| = 1`, `h` is in normal form and
/// its nonzero rows match `rank`.
pub fn verify_hnf(m: &[Vec<BigInt>], result: &HnfResult) -> bool {
    let n = m.len();
    let d = m.first().map_or(0, Vec::len);
    if result.h.len() != n || result.u.len() != n {
        return false;
    }
    for i in 0..n {
        for j in 0..d {
            let prod: BigInt = (0..n).map(|k| &result.u[i][k] * &m[k][j]).sum();
            if prod != result.h[i][j] {
                return false;
            }
        }
    }
    if !determinant(&result.u).abs().is_one() {
        return false;
    }
    if !is_hnf_shape(&result.h) {
        return false;
    }
    let nonzero = result.h.iter().filter(|row| row.iter().any(|e| !e.is_zero())).count();
    nonzero == result.rank
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Do the rows of `m` span all of `Z^d`? Equivalent to the normal form
/// having `d` pivots, all equal to 1.
pub fn integer_span_full(m: &[Vec<BigInt>], d: usize) -> bool {
    if d == 0 {
        return true;
    }
    let result = hnf(m);
    result.rank == d && result.pivots().iter().all(One::is_one)
}

/// Finds an integer row vector `λ` with `λ · m = target`, if one exists:
/// back-substitution of `target` through the normal form, then `λ = μ · u`.
pub fn solve_integer_system(m: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = m.len();
    let d = m.first().map_or(target.len(), Vec::len);
    assert_eq!(target.len(), d, "target has wrong dimension");
    let result = hnf(m);
    let pivot_cols = result.pivot_columns();

    let mut residue = target.to_vec();
    let mut mu = vec![BigInt::zero(); n];
    for r in 0..result.rank {
        let col = pivot_cols[r];
        let (q, rem) = residue[col].div_rem(&result.h[r][col]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for j in 0..d {
                residue[j] -= &q * &result.h[r][j];
            }
        }
        mu[r] = q;
    }
    if residue.iter().any(|e| !e.is_zero()) {
        return None;
    }

    let lambda: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|r| &mu[r] * &result.u[r][j]).sum())
        .collect();
    debug_assert!({
        let check: Vec<BigInt> =
            (0..d).map(|c| (0..n).map(|j| &lambda[j] * &m[j][c]).sum()).collect();
        check == target
    });
    Some(lambda)
}
