//! Elementary symmetric polynomials.
//!
//! `sigma_l(y_1..y_k)` is the sum over all `l`-subsets of the product of
//! their elements, with `sigma_0 = 1` (also for an empty argument list) and
//! `sigma_l = 0` for `l < 0` or `l > k`.

use crate::scalar::Scalar;

/// `sigma_l(ys)` for any integer `l`.
pub fn elem_sym<S: Scalar>(l: i64, ys: &[S]) -> S {
    if l < 0 || l as usize > ys.len() {
        return S::zero();
    }
    elem_sym_all(ys).swap_remove(l as usize)
}

/// `[sigma_0, .., sigma_k]`, built by multiplying in one factor
/// `(1 + y t)` at a time.
pub fn elem_sym_all<S: Scalar>(ys: &[S]) -> Vec<S> {
    let mut e = Vec::with_capacity(ys.len() + 1);
    e.push(S::one());
    for y in ys {
        e.push(S::zero());
        for j in (1..e.len()).rev() {
            let inc = y.clone() * e[j - 1].clone();
            e[j] = e[j].clone() + inc;
        }
    }
    e
}

/// Table lookup with the out-of-range convention applied.
pub(crate) fn sigma_at<S: Scalar>(table: &[S], l: i64) -> S {
    if l < 0 || l as usize >= table.len() {
        S::zero()
    } else {
        table[l as usize].clone()
    }
}
