//! Simplicial homology of order complexes over Q (exact elimination) or F2.
//! Free-face collapsing runs first to shrink the complex where possible.

use crate::poset::FacePoset;
use crate::qnum::Q;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Rational,
    F2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplexSummary {
    /// Betti numbers per dimension, trailing zeros trimmed.
    pub betti: Vec<usize>,
    pub euler: i64,
    /// Simplex counts per dimension of the complex the betti came from.
    pub cells: Vec<usize>,
}

impl ChainComplexSummary {
    pub fn empty() -> Self {
        ChainComplexSummary {
            betti: vec![],
            euler: 0,
            cells: vec![],
        }
    }

    pub fn is_point(&self) -> bool {
        self.betti == vec![1]
    }

    pub fn is_sphere(&self, dim: i64) -> bool {
        if dim < 0 {
            return self.betti.is_empty();
        }
        if dim == 0 {
            return self.betti == vec![2];
        }
        let mut expect = vec![0usize; dim as usize + 1];
        expect[0] = 1;
        expect[dim as usize] = 1;
        self.betti == expect
    }
}

/// Simplices by dimension; each simplex is a sorted vertex list.
pub struct SimplicialComplex {
    pub by_dim: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Order complex: vertices are poset elements, simplices are chains.
    pub fn order_complex(p: &FacePoset) -> SimplicialComplex {
        let n = p.len();
        let mut above: Vec<Vec<u32>> = vec![vec![]; n];
        for x in p.elements() {
            let mut ups = p.upper_set(x);
            ups.retain(|&y| y != x);
            above[x as usize] = ups;
        }
        let mut by_dim: Vec<Vec<Vec<u32>>> = vec![];
        let mut stack: Vec<u32> = vec![];
        fn dfs(
            v: u32,
            above: &Vec<Vec<u32>>,
            stack: &mut Vec<u32>,
            by_dim: &mut Vec<Vec<Vec<u32>>>,
        ) {
            stack.push(v);
            let d = stack.len() - 1;
            if by_dim.len() <= d {
                by_dim.push(vec![]);
            }
            by_dim[d].push(stack.clone());
            for &w in &above[v as usize] {
                dfs(w, above, stack, by_dim);
            }
            stack.pop();
        }
        for v in 0..n as u32 {
            dfs(v, &above, &mut stack, &mut by_dim);
        }
        SimplicialComplex { by_dim }
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|v| v.len()).collect()
    }

    pub fn euler(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, v)| {
                let c = v.len() as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    pub fn betti(&self, field: Field) -> Vec<usize> {
        let reduced = self.collapse_copy();
        reduced.betti_direct(field)
    }

    /// Elementary collapses of free simplices; homotopy type is preserved.
    fn collapse_copy(&self) -> SimplicialComplex {
        let dmax = self.by_dim.len();
        if dmax == 0 {
            return SimplicialComplex { by_dim: vec![] };
        }
        let ids: Vec<HashMap<&[u32], u32>> = self
            .by_dim
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_slice(), i as u32))
                    .collect()
            })
            .collect();
        // faces[d][i] = ids of the (d-1)-faces of simplex i of dim d.
        let mut faces: Vec<Vec<Vec<u32>>> = vec![vec![]];
        // cofaces[d][i] = ids of the (d+1)-cofaces.
        let mut cofaces: Vec<Vec<Vec<u32>>> =
            self.by_dim.iter().map(|v| vec![vec![]; v.len()]).collect();
        for d in 1..dmax {
            let mut fd: Vec<Vec<u32>> = Vec::with_capacity(self.by_dim[d].len());
            for (i, s) in self.by_dim[d].iter().enumerate() {
                let mut fl = Vec::with_capacity(s.len());
                for k in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(k);
                    let fi = ids[d - 1][f.as_slice()];
                    fl.push(fi);
                    cofaces[d - 1][fi as usize].push(i as u32);
                }
                fd.push(fl);
            }
            faces.push(fd);
        }
        let mut alive: Vec<Vec<bool>> = self.by_dim.iter().map(|v| vec![true; v.len()]).collect();
        let mut cof_count: Vec<Vec<u32>> = cofaces
            .iter()
            .map(|v| v.iter().map(|c| c.len() as u32).collect())
            .collect();
        let mut queue: Vec<(usize, u32)> = vec![];
        for d in 0..dmax {
            for i in 0..self.by_dim[d].len() {
                if cof_count[d][i] == 1 {
                    queue.push((d, i as u32));
                }
            }
        }
        while let Some((d, i)) = queue.pop() {
            if !alive[d][i as usize] || cof_count[d][i as usize] != 1 {
                continue;
            }
            let t = *cofaces[d][i as usize]
                .iter()
                .find(|&&t| alive[d + 1][t as usize])
                .expect("count says one coface lives");
            alive[d][i as usize] = false;
            alive[d + 1][t as usize] = false;
            for &fi in &faces[d + 1][t as usize] {
                if fi != i {
                    cof_count[d][fi as usize] -= 1;
                    if alive[d][fi as usize] && cof_count[d][fi as usize] == 1 {
                        queue.push((d, fi));
                    }
                }
            }
            if d >= 1 {
                for &fi in &faces[d][i as usize] {
                    cof_count[d - 1][fi as usize] -= 1;
                    if alive[d - 1][fi as usize] && cof_count[d - 1][fi as usize] == 1 {
                        queue.push((d - 1, fi));
                    }
                }
            }
        }
        let by_dim: Vec<Vec<Vec<u32>>> = (0..dmax)
            .map(|d| {
                self.by_dim[d]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| alive[d][*i])
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        SimplicialComplex { by_dim }
    }

    fn betti_direct(&self, field: Field) -> Vec<usize> {
        let dmax = self.by_dim.len();
        if dmax == 0 {
            return vec![];
        }
        let ids: Vec<HashMap<&[u32], u32>> = self
            .by_dim
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_slice(), i as u32))
                    .collect()
            })
            .collect();
        let mut ranks = vec![0usize; dmax + 1];
        for d in 1..dmax {
            if self.by_dim[d].is_empty() {
                continue;
            }
            let cols: Vec<Vec<(u32, i64)>> = self.by_dim[d]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .map(|k| {
                            let mut f = s.clone();
                            f.remove(k);
                            let row = ids[d - 1][f.as_slice()];
                            let sgn = if k % 2 == 0 { 1i64 } else { -1i64 };
                            (row, sgn)
                        })
                        .collect()
                })
                .collect();
            ranks[d] = match field {
                Field::Rational => sparse_rank_q(cols),
                Field::F2 => sparse_rank_f2(cols),
            };
        }
        let mut betti: Vec<usize> = (0..dmax)
            .map(|d| self.by_dim[d].len() - ranks[d] - ranks[d + 1])
            .collect();
        while betti.last() == Some(&0) {
            betti.pop();
        }
        betti
    }
}

fn sparse_rank_q(cols: Vec<Vec<(u32, i64)>>) -> usize {
    let mut pivot_of_row: HashMap<u32, usize> = HashMap::new();
    let mut reduced: Vec<Vec<(u32, Q)>> = Vec::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<(u32, Q)> = col
            .into_iter()
            .map(|(r, v)| (r, crate::qnum::qi(v)))
            .collect();
        c.sort_by_key(|&(r, _)| r);
        loop {
            let Some(&(low, _)) = c.last() else { break };
            match pivot_of_row.get(&low) {
                None => {
                    pivot_of_row.insert(low, reduced.len());
                    reduced.push(c);
                    rank += 1;
                    break;
                }
                Some(&pi) => {
                    let f = {
                        let cl = &c.last().unwrap().1;
                        let pl = &reduced[pi].last().unwrap().1;
                        cl / pl
                    };
                    c = sub_scaled(&c, &reduced[pi], &f);
                }
            }
        }
    }
    rank
}

/// a - f*b, both sorted by row index.
fn sub_scaled(a: &[(u32, Q)], b: &[(u32, Q)], f: &Q) -> Vec<(u32, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = -(f * &b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_rank_f2(cols: Vec<Vec<(u32, i64)>>) -> usize {
    let mut pivot_of_row: HashMap<u32, usize> = HashMap::new();
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    let mut rank = 0;
    for col in cols {
        let mut c: Vec<u32> = col
            .into_iter()
            .filter(|&(_, v)| v % 2 != 0)
            .map(|(r, _)| r)
            .collect();
        c.sort_unstable();
        loop {
            let Some(&low) = c.last() else { break };
            match pivot_of_row.get(&low) {
                None => {
                    pivot_of_row.insert(low, reduced.len());
                    reduced.push(c);
                    rank += 1;
                    break;
                }
                Some(&pi) => {
                    c = xor_merge(&c, &reduced[pi]);
                }
            }
        }
    }
    rank
}

fn xor_merge(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn order_complex_homology(p: &FacePoset, field: Field) -> ChainComplexSummary {
    if p.is_empty() {
        return ChainComplexSummary::empty();
    }
    let oc = SimplicialComplex::order_complex(p);
    let betti = oc.betti(field);
    ChainComplexSummary {
        betti,
        euler: oc.euler(),
        cells: oc.counts(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FacePoset;

    /// Boundary poset of a hexagon: 6 vertices, 6 edges in a cycle.
    fn hexagon_boundary() -> FacePoset {
        let mut p = FacePoset::new();
        let vs: Vec<u32> = (0..6)
            .map(|i| p.add_element(&format!("v{i}"), 0).unwrap())
            .collect();
        let es: Vec<u32> = (0..6)
            .map(|i| p.add_element(&format!("e{i}"), 1).unwrap())
            .collect();
        for i in 0..6 {
            p.add_cover(vs[i], es[i]);
            p.add_cover(vs[(i + 1) % 6], es[i]);
        }
        p
    }

    #[test]
    fn empty_poset_homology() {
        let p = FacePoset::new();
        let s = order_complex_homology(&p, Field::Rational);
        assert_eq!(s.betti, Vec::<usize>::new());
        assert_eq!(s.euler, 0);
    }

    #[test]
    fn hexagon_boundary_is_circle() {
        let p = hexagon_boundary();
        for field in [Field::Rational, Field::F2] {
            let s = order_complex_homology(&p, field);
            assert_eq!(s.betti, vec![1, 1]);
            assert_eq!(s.euler, 0);
        }
    }

    #[test]
    fn chain_is_contractible() {
        let mut p = FacePoset::new();
        for i in 0..4 {
            p.add_element(&format!("c{i}"), i).unwrap();
        }
        for i in 1..4u32 {
            p.add_cover(i - 1, i);
        }
        let s = order_complex_homology(&p, Field::Rational);
        assert!(s.is_point());
        assert_eq!(s.euler, 1);
    }

    #[test]
    fn two_points() {
        let mut p = FacePoset::new();
        p.add_element("a", 0).unwrap();
        p.add_element("b", 0).unwrap();
        let s = order_complex_homology(&p, Field::Rational);
        assert!(s.is_sphere(0));
    }
}
