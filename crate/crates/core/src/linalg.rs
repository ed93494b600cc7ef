//! Exact matrix rank over ℚ by integer row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank of an integer matrix given as rows.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match rank_i128(m) {
        Some(r) => r,
        None => rank_big(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()),
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `None` on overflow.
fn rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = a[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pv = pivot_row[col];
        for row in a.iter_mut().skip(r + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let mut g = 0i128;
            for j in col..cols {
                let v = pv.checked_mul(row[j])?.checked_sub(f.checked_mul(pivot_row[j])?)?;
                row[j] = v;
                g = gcd_i128(g, v);
            }
            if g > 1 {
                for x in row.iter_mut().skip(col) {
                    *x /= g;
                }
            }
        }
        r += 1;
    }
    Some(r)
}

fn rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pv = pivot_row[col].clone();
        for row in a.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            let mut g = BigInt::zero();
            for j in col..cols {
                row[j] = &pv * &row[j] - &f * &pivot_row[j];
                g = g.gcd(&row[j]);
            }
            if g.abs() > BigInt::from(1) {
                for x in row.iter_mut().skip(col) {
                    *x = &*x / &g;
                }
            }
        }
        r += 1;
    }
    r
}
