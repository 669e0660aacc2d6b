//! Small helpers for integer population vectors.

use num_bigint::BigInt;
use num_traits::Zero;

/// `a ⪰ b` componentwise.
pub(crate) fn dominates(a: &[BigInt], b: &[BigInt]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).all(|(x, y)| x >= y)
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn add_assign(a: &mut [BigInt], b: &[BigInt]) {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

pub(crate) fn sub_assign(a: &mut [BigInt], b: &[BigInt]) {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

pub(crate) fn is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub(crate) fn zeros(d: usize) -> Vec<BigInt> {
    vec![BigInt::zero(); d]
}

/// Unit vector `±e_axis` of dimension `d`.
pub(crate) fn signed_unit(d: usize, axis: usize, positive: bool) -> Vec<BigInt> {
    let mut v = zeros(d);
    v[axis] = if positive { BigInt::from(1) } else { BigInt::from(-1) };
    v
}

/// Renders `(4, 0, 7)` as `4,0,7`; used for states in graph dumps and
/// messages.
pub(crate) fn display(a: &[BigInt]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}
