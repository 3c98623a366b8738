//! Exact polyhedra as equality/inequality systems over Q^d, with brute-force
//! vertex and extreme-ray enumeration by active-constraint subsets. Ambient
//! dimension stays small (<= 6), so subset enumeration is the right tool.

use crate::linalg::{self, dot, QMat, QVec};
use crate::qnum::{qz, Q};
use itertools::Itertools;
use num_traits::Zero;

#[derive(Clone, Debug, Default)]
pub struct LinSystem {
    pub dim: usize,
    /// a . x = b
    pub eqs: Vec<(QVec, Q)>,
    /// a . x >= b
    pub ineqs: Vec<(QVec, Q)>,
}

impl LinSystem {
    pub fn new(dim: usize) -> Self {
        LinSystem {
            dim,
            eqs: vec![],
            ineqs: vec![],
        }
    }

    pub fn eq(&mut self, a: QVec, b: Q) {
        assert_eq!(a.len(), self.dim);
        self.eqs.push((a, b));
    }

    pub fn ge(&mut self, a: QVec, b: Q) {
        assert_eq!(a.len(), self.dim);
        self.ineqs.push((a, b));
    }

    /// a . x <= b
    pub fn le(&mut self, a: QVec, b: Q) {
        let neg: QVec = a.iter().map(|x| -x.clone()).collect();
        self.ge(neg, -b);
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.eqs.iter().all(|(a, b)| &dot(a, x) == b)
            && self.ineqs.iter().all(|(a, b)| &dot(a, x) >= b)
    }

    /// Vertices of the solution set. Complete when the set is pointed;
    /// callers here only use it on polytopes.
    pub fn vertices(&self) -> Vec<QVec> {
        let mut rows: QMat = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        let mut rhs: QVec = self.eqs.iter().map(|(_, b)| b.clone()).collect();
        let base_rank = linalg::rank(&rows);
        let need = self.dim - base_rank;
        let mut found: Vec<QVec> = Vec::new();
        for combo in (0..self.ineqs.len()).combinations(need) {
            let mut m = rows.clone();
            let mut b = rhs.clone();
            for &i in &combo {
                m.push(self.ineqs[i].0.clone());
                b.push(self.ineqs[i].1.clone());
            }
            if linalg::rank(&m) != self.dim {
                continue;
            }
            if let Some(x) = linalg::solve(&m, &b) {
                if self.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        // Degenerate case: no inequalities needed.
        if need == 0 {
            if let Some(x) = linalg::solve(&rows, &rhs) {
                if self.contains(&x) && !found.contains(&x) {
                    found.push(x);
                }
            }
        }
        let _ = (&mut rows, &mut rhs);
        found
    }

    /// Extreme rays of the recession cone {Eu = 0, Gu >= 0}.
    pub fn extreme_rays(&self) -> Vec<QVec> {
        let eq_rows: QMat = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        let mut rays: Vec<QVec> = Vec::new();
        let m = self.ineqs.len();
        for size in 0..=m {
            for combo in (0..m).combinations(size) {
                let mut rows = eq_rows.clone();
                for &i in &combo {
                    rows.push(self.ineqs[i].0.clone());
                }
                let ker = linalg::kernel(&rows);
                if ker.len() != 1 {
                    continue;
                }
                for cand in [ker[0].clone(), ker[0].iter().map(|x| -x.clone()).collect()] {
                    let ok = self.ineqs.iter().all(|(a, _)| !dot(a, &cand).is_zero() || true);
                    let _ = ok;
                    if self
                        .ineqs
                        .iter()
                        .all(|(a, _)| dot(a, &cand) >= qz())
                        && !cand.iter().all(|x| x.is_zero())
                    {
                        let nc = normalize_ray(&cand);
                        if !rays.contains(&nc) {
                            rays.push(nc);
                        }
                    }
                }
            }
            if !rays.is_empty() && size >= self.dim {
                break;
            }
        }
        rays
    }

    /// Lineality space basis of the recession cone.
    pub fn lineality(&self) -> Vec<QVec> {
        let mut rows: QMat = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        rows.extend(self.ineqs.iter().map(|(a, _)| a.clone()));
        linalg::kernel(&rows)
    }

    pub fn is_bounded_nonempty(&self) -> bool {
        !self.vertices().is_empty() && self.lineality().is_empty() && self.extreme_rays().is_empty()
    }

    /// Dimension of the solution set, or None when empty. Computed from
    /// generators (vertices, rays, lineality), so it is only valid when the
    /// set is pointed-or-bounded enough for `vertices` to find a point.
    pub fn dimension(&self) -> Option<usize> {
        let verts = self.vertices();
        let v0 = verts.first()?.clone();
        let mut pts: Vec<QVec> = verts;
        for r in self.extreme_rays() {
            pts.push(add(&v0, &r));
        }
        for l in self.lineality() {
            pts.push(add(&v0, &l));
            pts.push(sub(&v0, &l));
        }
        Some(affine_dim(&pts))
    }
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], f: &Q) -> QVec {
    a.iter().map(|x| x * f).collect()
}

/// Scale so the first nonzero entry is +-1 with positive leading sign.
fn normalize_ray(v: &[Q]) -> QVec {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero ray");
    let f = lead.clone();
    v.iter().map(|x| x / &f).collect()
}

pub fn affine_dim(pts: &[QVec]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let diffs: QMat = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    linalg::rank(&diffs)
}

/// Convex position test: is x in conv(pts)? Exact, by recursive facet
/// enumeration in small dimension.
pub fn in_convex_hull(x: &[Q], pts: &[QVec]) -> bool {
    if pts.is_empty() {
        return false;
    }
    // Work inside the affine hull: x must lie in it first.
    let mut rows: QMat = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    let d = linalg::rank(&rows);
    let xr = sub(x, &pts[0]);
    rows.push(xr);
    if linalg::rank(&rows) != d {
        return false;
    }
    // Solve sum l_i p_i = x, sum l_i = 1, l_i >= 0 by brute force over
    // supports of size <= d+1 (Caratheodory).
    let n = pts.len();
    let dim_amb = x.len();
    for size in 1..=(d + 1).min(n) {
        for combo in (0..n).combinations(size) {
            let mut m: QMat = vec![];
            for r in 0..dim_amb {
                m.push(combo.iter().map(|&i| pts[i][r].clone()).collect());
            }
            m.push(vec![crate::qnum::qone(); size]);
            let mut rhs: QVec = x.to_vec();
            rhs.push(crate::qnum::qone());
            if let Some(l) = linalg::solve(&m, &rhs) {
                if l.iter().all(|c| c >= &qz()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Extreme points of a finite point set.
pub fn extreme_points(pts: &[QVec]) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<QVec> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !in_convex_hull(&pts[i], &others)
        })
        .collect()
}
