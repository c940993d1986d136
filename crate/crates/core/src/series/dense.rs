//! Truncated dense-array kernels shared by [`super::QSeries`] and
//! [`super::PowerSeries`]. Index `k` is the k-th grid point; every routine
//! returns exactly `n` coefficients.

use crate::ring::{int, Invertible, QAlgebra, Ring};

pub(crate) fn mul_trunc<R: Ring>(a: &[R], b: &[R], n: usize, zero: &R) -> Vec<R> {
    let mut out = vec![zero.clone(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].plus(&ai.times(bj));
        }
    }
    out
}

/// Inverse of a series whose constant term is invertible.
pub(crate) fn inv_trunc<R: Invertible>(a: &[R], n: usize) -> Option<Vec<R>> {
    let inv0 = a.first()?.try_inv()?;
    let mut out = Vec::with_capacity(n);
    out.push(inv0.clone());
    for k in 1..n {
        let mut acc = inv0.zero_like();
        for i in 1..=k.min(a.len() - 1) {
            if a[i].is_zero() {
                continue;
            }
            acc = acc.plus(&a[i].times(&out[k - i]));
        }
        out.push(acc.times(&inv0).negated());
    }
    Some(out)
}

/// `exp` of a series with zero constant term, via `k b_k = sum_i i a_i b_{k-i}`.
pub(crate) fn exp_trunc<R: QAlgebra>(a: &[R], n: usize) -> Vec<R> {
    let one = a[0].one_like();
    let mut out = Vec::with_capacity(n);
    out.push(one);
    for k in 1..n {
        let mut acc = a[0].zero_like();
        for i in 1..=k.min(a.len() - 1) {
            if a[i].is_zero() {
                continue;
            }
            acc = acc.plus(&a[i].times(&out[k - i]).scale(&int(i as i64)));
        }
        out.push(acc.scale(&int(k as i64).recip()));
    }
    out
}

/// `log` of a series with constant term one.
pub(crate) fn log_trunc<R: QAlgebra>(a: &[R], n: usize) -> Vec<R> {
    let zero = a[0].zero_like();
    let mut out = vec![zero.clone(); n];
    for k in 1..n {
        let mut acc = if k < a.len() {
            a[k].scale(&int(k as i64))
        } else {
            zero.clone()
        };
        for i in 1..k {
            if out[i].is_zero() || k - i >= a.len() {
                continue;
            }
            acc = acc.minus(&out[i].times(&a[k - i]).scale(&int(i as i64)));
        }
        out[k] = acc.scale(&int(k as i64).recip());
    }
    out
}
