//! Integer matrices: Smith normal form with transforms, integer kernels,
//! saturation indices. Textbook algorithm; the matrices are tiny.

use crate::qnum::Z;
use num_traits::{Signed, Zero};

pub type ZMat = Vec<Vec<Z>>;

pub fn zmat_from_i64(rows: &[Vec<i64>]) -> ZMat {
    rows.iter()
        .map(|r| r.iter().map(|&x| Z::from(x)).collect())
        .collect()
}

pub struct Snf {
    /// Diagonal entries (non-negative, each dividing the next), length min(rows, cols).
    pub diag: Vec<Z>,
    /// Unimodular U with U * A * V = S.
    pub u: ZMat,
    pub v: ZMat,
}

fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| Z::from((i == j) as i64)).collect())
        .collect()
}

fn swap_rows(m: &mut ZMat, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut ZMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn add_row(m: &mut ZMat, src: usize, dst: usize, f: &Z) {
    let srow = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(&srow) {
        *x += f * s;
    }
}

fn add_col(m: &mut ZMat, src: usize, dst: usize, f: &Z) {
    for row in m.iter_mut() {
        let add = f * &row[src];
        row[dst] += add;
    }
}

pub fn smith_normal_form(a: &ZMat) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        loop {
            // Find a nonzero pivot in the remaining block.
            let mut piv = None;
            'outer: for i in t..rows {
                for j in t..cols {
                    if !s[i][j].is_zero() {
                        piv = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let Some((pi, pj)) = piv else {
                return finish(s, u, v, n);
            };
            swap_rows(&mut s, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);

            // Clear column t below and row t to the right.
            let mut clean = true;
            for i in t + 1..rows {
                if !s[i][t].is_zero() {
                    let f = -(&s[i][t] / &s[t][t]);
                    add_row(&mut s, t, i, &f);
                    add_row(&mut u, t, i, &f);
                    if !s[i][t].is_zero() {
                        // Remainder left; swap up and restart.
                        swap_rows(&mut s, t, i);
                        swap_rows(&mut u, t, i);
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                if !s[t][j].is_zero() {
                    let f = -(&s[t][j] / &s[t][t]);
                    add_col(&mut s, t, j, &f);
                    add_col(&mut v, t, j, &f);
                    if !s[t][j].is_zero() {
                        swap_cols(&mut s, t, j);
                        swap_cols(&mut v, t, j);
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: pivot must divide every remaining entry.
            let mut fixed = true;
            'div: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&s[i][j] % &s[t][t]).is_zero() {
                        add_row(&mut s, i, t, &Z::from(1));
                        add_row(&mut u, i, t, &Z::from(1));
                        fixed = false;
                        break 'div;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(s, u, v, n)
}

fn finish(mut s: ZMat, mut u: ZMat, v: ZMat, n: usize) -> Snf {
    // Normalize signs on the diagonal.
    for t in 0..n {
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..n).map(|t| s[t][t].clone()).collect();
    Snf { diag, u, v }
}

pub fn mat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &ZMat) -> ZMat {
    use crate::linalg;
    use crate::qnum::Q;
    let n = m.len();
    let qm: linalg::QMat = m
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let mut inv = Vec::new();
    for j in 0..n {
        let mut e = vec![crate::qnum::qz(); n];
        e[j] = crate::qnum::qone();
        let col = linalg::solve(&qm, &e).expect("unimodular matrix is invertible");
        inv.push(col);
    }
    // inv currently holds columns; transpose and cast to integers.
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let q = &inv[j][i];
                    assert!(
                        num_traits::One::is_one(q.denom()),
                        "inverse of unimodular matrix must be integral"
                    );
                    q.numer().clone()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        // Difference matrix of {(1,0),(0,1),(2,3)}: rows (0,1)-(1,0), (2,3)-(1,0).
        let a = zmat_from_i64(&[vec![-1, 1], vec![1, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diag, vec![Z::from(1), Z::from(4)]);
        let s = mat_mul(&mat_mul(&snf.u, &a), &snf.v);
        assert_eq!(s[0][0], Z::from(1));
        assert_eq!(s[1][1], Z::from(4));
        assert!(s[0][1].is_zero() && s[1][0].is_zero());
    }

    #[test]
    fn snf_two_two() {
        let a = zmat_from_i64(&[vec![2, 0], vec![0, 2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diag, vec![Z::from(2), Z::from(2)]);
    }
}
