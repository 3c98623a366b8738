//! Dense exact linear algebra over the rationals. Desk scale: matrices here
//! come from inequality systems and chain complexes in ambient dimension <= 8
//! or from sparse boundary matrices that have been collapsed first.

use crate::qnum::{qz, Q};
use num_traits::Zero;

pub type QVec = Vec<Q>;
pub type QMat = Vec<QVec>;

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    let mut s = qz();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Reduced row echelon form in place; returns pivot column per row.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// One solution x of A x = b, if any.
pub fn solve(a: &QMat, b: &[Q]) -> Option<QVec> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent if a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![qz(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel of A.
pub fn kernel(a: &QMat) -> Vec<QVec> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        // Identity basis.
        return (0..cols)
            .map(|i| {
                let mut v = vec![qz(); cols];
                v[i] = crate::qnum::qone();
                v
            })
            .collect();
    }
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let piv_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if piv_set.contains(&free) {
            continue;
        }
        let mut v = vec![qz(); cols];
        v[free] = crate::qnum::qone();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::qi;

    #[test]
    fn solve_and_kernel() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let x = solve(&a, &[qi(3), qi(1)]).unwrap();
        assert_eq!(x, vec![qi(2), qi(1)]);
        assert!(solve(&vec![vec![qi(0), qi(0)]], &[qi(1)]).is_none());

        let k = kernel(&vec![vec![qi(1), qi(2), qi(3)]]);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(dot(&v, &[qi(1), qi(2), qi(3)]).is_zero());
        }
    }
}
