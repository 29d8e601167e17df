//! Small exact linear algebra over the integers and rationals.

use crate::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

type Q128 = Ratio<i128>;

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflows i64")
}

/// Inverse of a square integer matrix over the rationals, or `None` if singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q128>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q128> = r.iter().map(|&x| Q128::from_integer(x as i128)).collect();
            row.extend((0..n).map(|j| if i == j { Q128::one() } else { Q128::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let factor = a[i][c];
                for j in 0..2 * n {
                    let v = a[c][j] * factor;
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(
        a.into_iter()
            .map(|r| {
                r[n..]
                    .iter()
                    .map(|x| {
                        Q::new(
                            x.numer().to_i64().expect("entry overflow"),
                            x.denom().to_i64().expect("entry overflow"),
                        )
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Diagonal of the Smith normal form of an integer matrix.
///
/// Returns the nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility against the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t into the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for r in a.iter_mut() {
                r.swap(t, best.1);
            }
        }
        diag.push(i64::try_from(a[t][t].abs()).expect("invariant factor overflow"));
        t += 1;
    }
    diag
}

/// Characteristic polynomial `det(tI - A)` of an integer matrix, ascending
/// coefficients, computed by the Faddeev-LeVerrier recursion over big integers.
pub fn charpoly(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let big: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    // coeffs[k] is the coefficient of t^k.
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul_big(&big, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = matmul_big(&big, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    coeffs
        .into_iter()
        .map(|c| c.to_i64().expect("charpoly coefficient overflow"))
        .collect()
}

fn matmul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = if n == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] += &a[i][k] * &bk[j];
                }
            }
        }
    }
    out
}

/// Integer matrix product.
pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = aik
                    .checked_mul(bk[j])
                    .and_then(|v| out[i][j].checked_add(v))
                    .expect("matrix entry overflow");
            }
        }
    }
    out
}

/// Identity matrix of size `n`.
pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Transpose of a rectangular matrix.
pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form in place over big rationals; returns pivot columns.
pub(crate) fn row_reduce(rows: &mut Vec<Vec<num_rational::BigRational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (head, tail) = rows.split_at_mut(i.max(r));
                let (src, dst) = if i < r {
                    (&tail[0], &mut head[i])
                } else {
                    (&head[r], &mut tail[0])
                };
                for j in c..cols {
                    if !src[j].is_zero() {
                        dst[j] -= &src[j] * &factor;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}
