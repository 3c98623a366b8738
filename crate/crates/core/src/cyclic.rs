//! Cyclic partitions of {0,..,n}, the divides relation, and the graded poset
//! of pairs (sigma, J) that indexes the cells of both CW models.
//!
//! A cyclic partition splits the ground set into disjoint non-empty blocks
//! carrying a cyclic order. Refinement: sigma' <= sigma iff sigma is obtained
//! from sigma' by splitting blocks into cyclically consecutive runs;
//! operationally, each block of sigma' must be a union of cyclically
//! consecutive blocks of sigma, with run order matching the cyclic order.

use crate::poset::FacePoset;
use crate::subset::{self, Mask};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicError {
    BadBlocks(String),
    GroundMismatch,
    EmptySubset,
    NotInW(String),
}

impl fmt::Display for CyclicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicError::BadBlocks(s) => write!(f, "bad blocks: {s}"),
            CyclicError::GroundMismatch => write!(f, "ground sets differ"),
            CyclicError::EmptySubset => write!(f, "subset must be non-empty"),
            CyclicError::NotInW(s) => write!(f, "label not in W: {s}"),
        }
    }
}

impl std::error::Error for CyclicError {}

/// Blocks in cyclic order, canonically rotated so the block containing the
/// minimum ground element comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPartition {
    blocks: Vec<Mask>,
}

impl CyclicPartition {
    pub fn new(blocks: Vec<Mask>) -> Result<Self, CyclicError> {
        if blocks.is_empty() {
            return Err(CyclicError::BadBlocks("no blocks".into()));
        }
        let mut seen: Mask = 0;
        for &b in &blocks {
            if b == 0 {
                return Err(CyclicError::BadBlocks("empty block".into()));
            }
            if seen & b != 0 {
                return Err(CyclicError::BadBlocks("blocks overlap".into()));
            }
            seen |= b;
        }
        let mut p = CyclicPartition { blocks };
        p.canonicalize();
        Ok(p)
    }

    pub fn singletons(elems: &[usize]) -> Self {
        CyclicPartition::new(elems.iter().map(|&i| subset::bit(i)).collect())
            .expect("distinct singletons")
    }

    fn canonicalize(&mut self) {
        let ground = self.ground();
        let min_bit = ground & ground.wrapping_neg();
        let pos = self
            .blocks
            .iter()
            .position(|&b| b & min_bit != 0)
            .expect("some block holds the minimum");
        self.blocks.rotate_left(pos);
    }

    pub fn ground(&self) -> Mask {
        self.blocks.iter().fold(0, |a, &b| a | b)
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Mask] {
        &self.blocks
    }

    pub fn block_index_of(&self, elem: usize) -> Option<usize> {
        self.blocks.iter().position(|&b| subset::contains(b, elem))
    }

    /// Does J meet at least two blocks? ("sigma divides J")
    pub fn divides(&self, j: Mask) -> bool {
        self.blocks.iter().filter(|&&b| b & j != 0).count() >= 2
    }

    /// Number of blocks meeting J.
    pub fn blocks_meeting(&self, j: Mask) -> usize {
        self.blocks.iter().filter(|&&b| b & j != 0).count()
    }

    /// Induced cyclic partition of J: intersect blocks with J, drop empties.
    pub fn induced(&self, j: Mask) -> Result<CyclicPartition, CyclicError> {
        if j == 0 {
            return Err(CyclicError::EmptySubset);
        }
        if j & !self.ground() != 0 {
            return Err(CyclicError::GroundMismatch);
        }
        let blocks: Vec<Mask> = self.blocks.iter().map(|&b| b & j).filter(|&b| b != 0).collect();
        CyclicPartition::new(blocks)
    }

    /// Positions (in self) of blocks meeting J, in cyclic order.
    pub fn induced_positions(&self, j: Mask) -> Vec<usize> {
        (0..self.k()).filter(|&s| self.blocks[s] & j != 0).collect()
    }

    /// All coarsenings obtained by merging cyclically consecutive blocks,
    /// keeping at least `min_blocks` blocks.
    pub fn coarsenings(&self, min_blocks: usize) -> Vec<CyclicPartition> {
        let k = self.k();
        let mut out = Vec::new();
        // A coarsening keeps a subset of the k cut points (cut s separates
        // block s-1 from block s); kept cuts must number >= min_blocks.
        for cuts in subset::submasks(subset::full_mask(k)) {
            let kept = subset::card(cuts);
            if kept < min_blocks.max(1) {
                continue;
            }
            let pos = subset::elems(cuts);
            let mut blocks = Vec::with_capacity(kept);
            for t in 0..kept {
                let from = pos[t];
                let to = pos[(t + 1) % kept];
                let mut b: Mask = 0;
                let mut s = from;
                loop {
                    b |= self.blocks[s];
                    s = (s + 1) % k;
                    if s == to {
                        break;
                    }
                }
                blocks.push(b);
            }
            out.push(CyclicPartition::new(blocks).expect("merge of valid blocks"));
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn text(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|&b| subset::mask_str(b)).collect();
        format!("<{}>", parts.join("|"))
    }
}

impl fmt::Display for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// refines(a, b): is b a refinement of a, i.e. a <= b in the strata order?
pub fn refines(coarse: &CyclicPartition, fine: &CyclicPartition) -> Result<bool, CyclicError> {
    if coarse.ground() != fine.ground() {
        return Err(CyclicError::GroundMismatch);
    }
    let m = fine.k();
    let p = coarse.k();
    if p > m {
        return Ok(false);
    }
    // Each fine block must land inside a coarse block.
    let mut owner = Vec::with_capacity(m);
    for &fb in fine.blocks() {
        match coarse.blocks.iter().position(|&cb| fb & !cb == 0) {
            Some(i) => owner.push(i),
            None => return Ok(false),
        }
    }
    if p == 1 {
        return Ok(true);
    }
    // Owners must form p cyclically contiguous runs, in coarse's cyclic order.
    let start = match (0..m).find(|&i| owner[i] != owner[(i + m - 1) % m]) {
        Some(s) => s,
        None => return Ok(p == 1),
    };
    let mut runs = Vec::new();
    let mut i = 0;
    while i < m {
        let v = owner[(start + i) % m];
        runs.push(v);
        let mut j = i + 1;
        while j < m && owner[(start + j) % m] == v {
            j += 1;
        }
        i = j;
    }
    if runs.len() != p {
        return Ok(false);
    }
    for t in 0..p {
        if runs[(t + 1) % p] != (runs[t] + 1) % p {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn enumerate_cyclic_partitions(n: usize) -> Vec<CyclicPartition> {
    let m = n + 1;
    let mut result = Vec::new();
    // Set partitions via restricted growth strings.
    let mut rgs = vec![0usize; m];
    fn rec(rgs: &mut Vec<usize>, i: usize, maxv: usize, out: &mut Vec<Vec<usize>>) {
        if i == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for v in 0..=maxv + 1 {
            rgs[i] = v;
            rec(rgs, i + 1, maxv.max(v), out);
        }
    }
    let mut all = Vec::new();
    if m > 0 {
        rec(&mut rgs, 1, 0, &mut all);
    }
    for r in all {
        let k = r.iter().copied().max().unwrap() + 1;
        let mut blocks = vec![0 as Mask; k];
        for (i, &v) in r.iter().enumerate() {
            blocks[v] |= subset::bit(i);
        }
        // Block 0 contains element 0; arrange the rest in every order.
        let rest: Vec<Mask> = blocks[1..].to_vec();
        for perm in permutations(&rest) {
            let mut arranged = vec![blocks[0]];
            arranged.extend(perm);
            result.push(CyclicPartition::new(arranged).expect("valid partition"));
        }
    }
    result.sort();
    result.dedup();
    result
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The poset W

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumLabel {
    pub sigma: CyclicPartition,
    pub j: Mask,
}

impl StratumLabel {
    pub fn new(sigma: CyclicPartition, j: Mask) -> Result<Self, CyclicError> {
        let label = StratumLabel { sigma, j };
        if !label.in_w() {
            return Err(CyclicError::NotInW(label.text()));
        }
        Ok(label)
    }

    pub fn in_w(&self) -> bool {
        self.j & !self.sigma.ground() == 0 && self.sigma.divides(self.j)
    }

    /// rk = k + |J| - 4.
    pub fn rank(&self) -> u32 {
        (self.sigma.k() + subset::card(self.j)) as u32 - 4
    }

    pub fn text(&self) -> String {
        format!("({}, {})", self.sigma.text(), subset::mask_str(self.j))
    }

    /// (sigma', J') <= (sigma, J) iff sigma refines sigma' and J' <= J.
    pub fn leq(&self, other: &StratumLabel) -> Result<bool, CyclicError> {
        Ok(self.j & !other.j == 0 && refines(&self.sigma, &other.sigma)?)
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// All of W for ground set {0,..,n}, as a graded poset plus aligned labels.
pub struct WPoset {
    pub poset: FacePoset,
    pub labels: Vec<StratumLabel>,
}

pub fn build_w(n: usize) -> WPoset {
    let m = n + 1;
    let ground = subset::full_mask(m);
    let sigmas = enumerate_cyclic_partitions(n);
    let mut poset = FacePoset::new();
    let mut labels: Vec<StratumLabel> = Vec::new();
    let mut index = std::collections::HashMap::new();

    for sigma in &sigmas {
        if sigma.k() < 2 {
            continue;
        }
        for j in subset::submasks(ground) {
            if subset::card(j) < 2 || !sigma.divides(j) {
                continue;
            }
            let label = StratumLabel {
                sigma: sigma.clone(),
                j,
            };
            let id = poset
                .add_element(&label.text(), label.rank())
                .expect("unique labels");
            index.insert(label.clone(), id);
            labels.push(label);
        }
    }

    // Covers: add one element to J, or split one block into an adjacent pair.
    for (id, label) in labels.iter().enumerate() {
        let id = id as u32;
        for x in subset::elems(ground & !label.j) {
            let upper = StratumLabel {
                sigma: label.sigma.clone(),
                j: label.j | subset::bit(x),
            };
            poset.add_cover(id, index[&upper]);
        }
        for s in 0..label.sigma.k() {
            let block = label.sigma.blocks()[s];
            if subset::card(block) < 2 {
                continue;
            }
            for b1 in subset::submasks(block) {
                let b2 = block & !b1;
                if b1 == 0 || b2 == 0 {
                    continue;
                }
                let mut blocks = label.sigma.blocks().to_vec();
                blocks[s] = b1;
                blocks.insert(s + 1, b2);
                let sigma2 = CyclicPartition::new(blocks).expect("valid split");
                let upper = StratumLabel {
                    sigma: sigma2,
                    j: label.j,
                };
                poset.add_cover(id, index[&upper]);
            }
        }
    }
    WPoset { poset, labels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::mask_of;

    fn cp(blocks: &[&[usize]]) -> CyclicPartition {
        CyclicPartition::new(blocks.iter().map(|b| mask_of(b)).collect()).unwrap()
    }

    #[test]
    fn canonical_rotation_is_idempotent() {
        let a = cp(&[&[2], &[0, 1], &[3]]);
        let b = cp(&[&[0, 1], &[3], &[2]]);
        assert_eq!(a, b);
        assert_eq!(a.blocks()[0], mask_of(&[0, 1]));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_cyclic_partitions(0).len(), 1);
        assert_eq!(enumerate_cyclic_partitions(1).len(), 2);
        assert_eq!(enumerate_cyclic_partitions(2).len(), 6);
        // sum_k S(n+1,k) (k-1)!
        assert_eq!(enumerate_cyclic_partitions(3).len(), 1 + 7 + 6 * 2 + 1 * 6);
    }

    #[test]
    fn refines_basics() {
        let full = cp(&[&[0], &[1], &[2]]);
        let merged01 = cp(&[&[0, 1], &[2]]);
        let merged02 = cp(&[&[0, 2], &[1]]);
        assert!(refines(&merged01, &full).unwrap());
        assert!(refines(&full, &full).unwrap());
        // Wrap-around merge: {0,2} arises from the cyclically adjacent pair
        // (block of 2, block of 0) in <0,1,2>, so the refinement holds. The
        // geometric oracle in the integration tests pins this down.
        assert!(refines(&merged02, &full).unwrap());
        assert!(!refines(&full, &merged01).unwrap());
        let one = cp(&[&[0, 1, 2]]);
        assert!(refines(&one, &full).unwrap());
        assert!(refines(&one, &merged01).unwrap());
    }

    #[test]
    fn refines_needs_contiguous_runs() {
        // {0,2} vs <0,1,2,3>: blocks {0} and {2} are separated on both sides.
        let full4 = cp(&[&[0], &[1], &[2], &[3]]);
        let alt = cp(&[&[0, 2], &[1], &[3]]);
        assert!(!refines(&alt, &full4).unwrap());
        let alt2 = cp(&[&[0, 2], &[1, 3]]);
        assert!(!refines(&alt2, &full4).unwrap());
        // But {3,0} | {1,2} is fine (two arcs of the circle).
        let arcs = cp(&[&[0, 3], &[1, 2]]);
        assert!(refines(&arcs, &full4).unwrap());
    }

    #[test]
    fn refines_ground_mismatch() {
        let a = cp(&[&[0], &[1]]);
        let b = cp(&[&[0], &[1], &[2]]);
        assert!(refines(&a, &b).is_err());
    }

    #[test]
    fn induced_partitions() {
        let full = cp(&[&[0], &[1], &[2]]);
        assert_eq!(full.induced(mask_of(&[0, 1, 2])).unwrap(), full);
        let sing4 = cp(&[&[0], &[1], &[2], &[3]]);
        assert_eq!(
            sing4.induced(mask_of(&[1, 3])).unwrap(),
            cp(&[&[1], &[3]])
        );
        let mixed = cp(&[&[0, 1], &[2], &[3, 4]]);
        assert_eq!(
            mixed.induced(mask_of(&[0, 2, 3])).unwrap(),
            cp(&[&[0], &[2], &[3]])
        );
        assert!(mixed.induced(0).is_err());
    }

    #[test]
    fn w_n1_is_a_point() {
        let w = build_w(1);
        assert_eq!(w.poset.len(), 1);
        assert_eq!(w.labels[0].rank(), 0);
        assert_eq!(w.labels[0].sigma, cp(&[&[0], &[1]]));
    }

    #[test]
    fn w_n2_f_vector_and_euler() {
        let w = build_w(2);
        assert_eq!(w.poset.f_vector(), vec![6, 9, 2]);
        assert_eq!(w.poset.euler_characteristic(), -1);
        w.poset.validate_graded().unwrap();
    }

    #[test]
    fn w_n2_maximal_interval_is_hexagon() {
        let w = build_w(2);
        let maxes = w.poset.maximal_elements();
        assert_eq!(maxes.len(), 2);
        for m in maxes {
            let li = w.poset.lower_interval(m);
            assert_eq!(li.f_vector(), vec![6, 6, 1]);
        }
    }

    #[test]
    fn w_n3_maximal_interval_counts() {
        let w = build_w(3);
        let maxes = w.poset.maximal_elements();
        assert_eq!(maxes.len(), 6);
        for m in maxes {
            assert_eq!(w.poset.rank_of(m), 4);
            let li = w.poset.lower_interval(m);
            let f = li.f_vector();
            assert_eq!(f[0], 20, "20 vertices");
            assert_eq!(f[3], 8, "8 facets");
        }
    }

    #[test]
    fn coarsenings_of_triangle() {
        // Itself, the three adjacent merges, and the one-block collapse.
        let full = cp(&[&[0], &[1], &[2]]);
        let cs = full.coarsenings(2);
        assert_eq!(cs.len(), 4);
        assert!(cs.contains(&full));
        let all = full.coarsenings(1);
        assert_eq!(all.len(), 5);
        for c in &all {
            assert!(refines(c, &full).unwrap());
        }
    }
}
