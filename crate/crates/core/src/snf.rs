//! Exact Smith normal form over the integers, with transform matrices.
//!
//! `smith` computes `U * A * V = D` for a rectangular integer matrix `A`,
//! with `U`, `V` unimodular and `D` diagonal with a divisibility chain
//! `d_1 | d_2 | ...`. The inverse of `V` is accumulated alongside, since
//! quotient-group computations need both the coordinate change and
//! representatives for the new coordinates.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A rectangular integer matrix as rows.
pub type Mat = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Mat {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    assert!(b.len() == inner, "shape mismatch");
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    let v = &a[i][k] * &b[k][j];
                    out[i][j] += v;
                }
            }
        }
    }
    out
}

/// The Smith decomposition `U * A * V = D`.
pub struct Smith {
    /// Diagonal entries `d_1, ..., d_min(r,c)`, nonnegative, with
    /// `d_i | d_{i+1}`; trailing entries may be zero.
    pub diag: Vec<BigInt>,
    pub u: Mat,
    pub v: Mat,
    /// The exact inverse of `v`, maintained through the column operations.
    pub v_inv: Mat,
}

pub fn smith(a: &Mat) -> Smith {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut b = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    let n = rows.min(cols);
    for k in 0..n {
        'stage: loop {
            // smallest nonzero entry of the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if b[i][j].is_zero() {
                        continue;
                    }
                    match &pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if b[i][j].abs() < b[*pi][*pj].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'stage };
            if pi != k {
                b.swap(pi, k);
                u.swap(pi, k);
            }
            if pj != k {
                col_swap(&mut b, pj, k);
                col_swap(&mut v, pj, k);
                v_inv.swap(pj, k);
            }

            let mut clean = true;
            for i in 0..rows {
                if i == k || b[i][k].is_zero() {
                    continue;
                }
                let q = div_round(&b[i][k], &b[k][k]);
                if !q.is_zero() {
                    row_sub(&mut b, i, k, &q);
                    row_sub(&mut u, i, k, &q);
                }
                if !b[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in 0..cols {
                if j == k || b[k][j].is_zero() {
                    continue;
                }
                let q = div_round(&b[k][j], &b[k][k]);
                if !q.is_zero() {
                    col_sub(&mut b, j, k, &q);
                    col_sub(&mut v, j, k, &q);
                    // (E_q)^{-1} acts on v_inv as a row operation
                    row_add(&mut v_inv, k, j, &q);
                }
                if !b[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'stage;
            }

            // divisibility sweep: every remaining entry must be a multiple
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&b[i][j] % &b[k][k]).is_zero() {
                        let neg_one = -BigInt::one();
                        row_sub(&mut b, k, i, &neg_one);
                        row_sub(&mut u, k, i, &neg_one);
                        continue 'stage;
                    }
                }
            }
            if b[k][k].is_negative() {
                for row in b.iter_mut() {
                    row[k] = -core::mem::take(&mut row[k]);
                }
                for row in v.iter_mut() {
                    row[k] = -core::mem::take(&mut row[k]);
                }
                for x in v_inv[k].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            break 'stage;
        }
    }

    let diag = (0..n).map(|k| b[k][k].clone()).collect();
    Smith { diag, u, v, v_inv }
}

/// Rounded division minimizing the remainder, keeping entries small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if BigInt::from(2) * r.abs() > b.abs() {
        // truncated remainder has the sign of a
        if a.sign() == b.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn row_sub(m: &mut Mat, i: usize, k: usize, q: &BigInt) {
    let row_k = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(row_k.iter()) {
        *x -= q * y;
    }
}

fn row_add(m: &mut Mat, i: usize, k: usize, q: &BigInt) {
    let row_k = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(row_k.iter()) {
        *x += q * y;
    }
}

fn col_swap(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn col_sub(m: &mut Mat, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[k] * q;
        row[j] -= v;
    }
}
