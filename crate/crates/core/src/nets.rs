//! Nets: pairwise-crossing chord collections on a disk with cyclically
//! labeled boundary arcs. A net knows its base cyclic partition sigma(tau),
//! its Mobius-band cell decomposition, and the shuffle read along the
//! midcircle. Shuffles are computed by cutting the band along the first
//! chord and walking the resulting strip; the geometric antipodal oracle in
//! the tests keeps that walk honest.

use crate::cyclic::CyclicPartition;
use crate::subset::Mask;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetError {
    EmptyChords,
    BadVertex(usize),
    NonCrossing((usize, usize), (usize, usize)),
    DegenerateChord(usize),
    BadCellStructure(String),
}

impl fmt::Display for NetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetError::EmptyChords => write!(f, "a net needs at least one chord"),
            NetError::BadVertex(v) => write!(f, "chord endpoint {v} out of range"),
            NetError::NonCrossing(a, b) => {
                write!(f, "chords {a:?} and {b:?} do not intersect")
            }
            NetError::DegenerateChord(v) => write!(f, "chord with equal endpoints {v}"),
            NetError::BadCellStructure(s) => write!(f, "Mobius cell structure broken: {s}"),
        }
    }
}

impl std::error::Error for NetError {}

/// How a pair of ground elements sits relative to the chords of a net.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCase {
    /// Same block of sigma(tau): equal angles.
    Same,
    /// Divided by every chord (opposite sides of a trapezoid): angles differ by pi.
    Opposite,
    /// Divided by some but not all chords; the payload is the counterclockwise
    /// order (i, j) meaning theta_j - theta_i lies in [0, pi].
    Ordered(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Net {
    /// sigma(tau): every vertex is used by some chord.
    base: CyclicPartition,
    /// Chords as sorted pairs of vertex indices 0..k-1; vertex v separates
    /// arc v-1 from arc v, and arc a lies between vertices a and a+1,
    /// carrying base block a.
    chords: Vec<(usize, usize)>,
    /// Arc indices per Mobius-band cell, in cyclic midcircle order.
    cells: Vec<Vec<usize>>,
    /// The shuffle: block t is the union of base blocks of cells[t].
    shuffle: CyclicPartition,
}

fn in_open_arc(x: usize, a: usize, b: usize, k: usize) -> bool {
    // Is x strictly inside the ccw arc from a to b?
    let span = (b + k - a) % k;
    let off = (x + k - a) % k;
    off > 0 && off < span
}

/// Weak crossing: sharing an endpoint counts.
pub fn chords_cross(c1: (usize, usize), c2: (usize, usize), k: usize) -> bool {
    let (a, b) = c1;
    let (c, d) = c2;
    if a == c || a == d || b == c || b == d {
        return true;
    }
    in_open_arc(c, a, b, k) != in_open_arc(d, a, b, k)
}

impl Net {
    /// Validates the chord set, merges arcs across unused vertices, and
    /// computes the Mobius cell structure and the shuffle.
    pub fn new(base: &CyclicPartition, chords: &[(usize, usize)]) -> Result<Net, NetError> {
        if chords.is_empty() {
            return Err(NetError::EmptyChords);
        }
        let k0 = base.k();
        let mut cs: Vec<(usize, usize)> = vec![];
        for &(a, b) in chords {
            if a >= k0 {
                return Err(NetError::BadVertex(a));
            }
            if b >= k0 {
                return Err(NetError::BadVertex(b));
            }
            if a == b {
                return Err(NetError::DegenerateChord(a));
            }
            let p = (a.min(b), a.max(b));
            if !cs.contains(&p) {
                cs.push(p);
            }
        }
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if !chords_cross(cs[i], cs[j], k0) {
                    return Err(NetError::NonCrossing(cs[i], cs[j]));
                }
            }
        }
        // Merge arcs across unused vertices: the arc run from one used
        // vertex to the next becomes a single block.
        let used: Vec<usize> = (0..k0)
            .filter(|&v| cs.iter().any(|&(a, b)| a == v || b == v))
            .collect();
        let (base, cs) = if used.len() == k0 {
            (base.clone(), cs)
        } else {
            let mut blocks: Vec<Mask> = Vec::with_capacity(used.len());
            for (t, &v) in used.iter().enumerate() {
                let next = used[(t + 1) % used.len()];
                let mut b: Mask = 0;
                let mut a = v;
                loop {
                    b |= base.blocks()[a];
                    a = (a + 1) % k0;
                    if a == next {
                        break;
                    }
                }
                blocks.push(b);
            }
            let renum: std::collections::HashMap<usize, usize> =
                used.iter().enumerate().map(|(t, &v)| (v, t)).collect();
            let cs2: Vec<(usize, usize)> = cs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (renum[&a], renum[&b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            (
                CyclicPartition::new(blocks).expect("merged blocks partition the ground set"),
                cs2,
            )
        };
        let mut cs = cs;
        cs.sort_unstable();
        let (cells, shuffle) = strip_walk(&base, &cs)?;

        let net = Net {
            base,
            chords: cs,
            cells,
            shuffle,
        };
        net.check_cells()?;
        Ok(net)
    }

    /// Cells must be the divided-by-all-chords classes, sized 1 or 2.
    fn check_cells(&self) -> Result<(), NetError> {
        let k = self.base.k();
        if self.cells.len() != self.chords.len() {
            return Err(NetError::BadCellStructure(format!(
                "{} cells for {} chords",
                self.cells.len(),
                self.chords.len()
            )));
        }
        let mut seen = vec![false; k];
        for cell in &self.cells {
            if cell.is_empty() || cell.len() > 2 {
                return Err(NetError::BadCellStructure(format!(
                    "cell with {} arcs",
                    cell.len()
                )));
            }
            for &a in cell {
                if seen[a] {
                    return Err(NetError::BadCellStructure(format!("arc {a} in two cells")));
                }
                seen[a] = true;
            }
            if cell.len() == 2 && !self.all_chords_divide_arcs(cell[0], cell[1]) {
                return Err(NetError::BadCellStructure(format!(
                    "arcs {} and {} share a cell but are not opposite",
                    cell[0], cell[1]
                )));
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(NetError::BadCellStructure("arc in no cell".into()));
        }
        for (i, ci) in self.cells.iter().enumerate() {
            for cj in self.cells.iter().skip(i + 1) {
                if ci.len() == 1 && cj.len() == 1 && self.all_chords_divide_arcs(ci[0], cj[0]) {
                    return Err(NetError::BadCellStructure(format!(
                        "arcs {} and {} are opposite but in different cells",
                        ci[0], cj[0]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &CyclicPartition {
        &self.base
    }

    pub fn sigma_of_tau(&self) -> &CyclicPartition {
        &self.base
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn shuffle(&self) -> &CyclicPartition {
        &self.shuffle
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    /// rk tau = l - 1.
    pub fn rank(&self) -> usize {
        self.chords.len() - 1
    }

    /// Does the chord separate arcs x and y?
    fn chord_divides_arcs(&self, chord: (usize, usize), x: usize, y: usize) -> bool {
        let k = self.base.k();
        let (a, b) = chord;
        // Arc t sits between vertices t and t+1; it is on the (a->b) side
        // iff t lies in the half-open ccw vertex range [a, b).
        let side = |t: usize| -> bool {
            let span = (b + k - a) % k;
            let off = (t + k - a) % k;
            off < span
        };
        side(x) != side(y)
    }

    fn all_chords_divide_arcs(&self, x: usize, y: usize) -> bool {
        self.chords.iter().all(|&c| self.chord_divides_arcs(c, x, y))
    }

    /// tau | J: every chord has elements of J strictly on both sides.
    pub fn divides(&self, j: Mask) -> bool {
        let k = self.base.k();
        self.chords.iter().all(|&(a, b)| {
            let mut side1: Mask = 0;
            let mut side2: Mask = 0;
            for t in 0..k {
                let span = (b + k - a) % k;
                let off = (t + k - a) % k;
                if off < span {
                    side1 |= self.base.blocks()[t];
                } else {
                    side2 |= self.base.blocks()[t];
                }
            }
            side1 & j != 0 && side2 & j != 0
        })
    }

    /// Case analysis for a pair of ground elements (the circle system).
    pub fn pair_case(&self, i: usize, j: usize) -> PairCase {
        let bi = self.base.block_index_of(i).expect("element in ground set");
        let bj = self.base.block_index_of(j).expect("element in ground set");
        if bi == bj {
            return PairCase::Same;
        }
        let dividing: Vec<bool> = self
            .chords
            .iter()
            .map(|&c| self.chord_divides_arcs(c, bi, bj))
            .collect();
        if dividing.iter().all(|&d| d) {
            return PairCase::Opposite;
        }
        let k = self.base.k();
        let mut result: Option<PairCase> = None;
        for (t, &d) in dividing.iter().enumerate() {
            if d {
                continue;
            }
            let (a, b) = self.chords[t];
            for &(aa, bb) in [(a, b), (b, a)].iter() {
                let span = (bb + k - aa) % k;
                let off_i = (bi + k - aa) % k;
                let off_j = (bj + k - aa) % k;
                if off_i < span && off_j < span {
                    let r = if off_i < off_j {
                        PairCase::Ordered(i, j)
                    } else {
                        PairCase::Ordered(j, i)
                    };
                    match &result {
                        None => result = Some(r),
                        // All non-dividing chords must agree.
                        Some(prev) => assert_eq!(*prev, r, "chord order disagreement"),
                    }
                }
            }
        }
        result.expect("a non-dividing chord has both arcs on one side")
    }

    /// Trapezoid pairs as (lower block index, higher block index).
    pub fn trapezoid_pairs(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter(|c| c.len() == 2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect()
    }

    pub fn text(&self) -> String {
        let ch: Vec<String> = self
            .chords
            .iter()
            .map(|&(a, b)| format!("({a},{b})"))
            .collect();
        format!("net({}; chords=[{}])", self.base.text(), ch.join(","))
    }
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Cut the Mobius band along the first chord and read the cells left to
/// right. Top side: vertices a..=b ccw; bottom side: vertices b..=a ccw.
/// Each remaining chord becomes a cut from a top position to a bottom
/// position; chords through the cut corners attach per the exterior fan at
/// the corner vertex.
fn strip_walk(
    base: &CyclicPartition,
    chords: &[(usize, usize)],
) -> Result<(Vec<Vec<usize>>, CyclicPartition), NetError> {
    let k = base.k();
    let (a, b) = chords[0];
    let top_len = (b + k - a) % k; // number of top arcs
    let bot_len = k - top_len;
    let pos_top = |v: usize| (v + k - a) % k;
    let pos_bot = |v: usize| (v + k - b) % k;

    let mut cuts: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in &chords[1..] {
        let (t, s) = if u == a || v == a {
            let w = if u == a { v } else { u };
            if in_open_arc(w, a, b, k) {
                // target before b in the fan: bottom-right corner copy of a
                (pos_top(w), bot_len)
            } else {
                // target after b: top-left corner copy of a
                (0, pos_bot(w))
            }
        } else if u == b || v == b {
            let w = if u == b { v } else { u };
            if in_open_arc(w, b, a, k) {
                // target before a in the fan: top-right corner copy of b
                (top_len, pos_bot(w))
            } else {
                // target after a: bottom-left corner copy of b
                (pos_top(w), 0)
            }
        } else if in_open_arc(u, a, b, k) {
            (pos_top(u), pos_bot(v))
        } else {
            (pos_top(v), pos_bot(u))
        };
        cuts.push((t, s));
    }
    cuts.sort_unstable();
    for w in cuts.windows(2) {
        if w[1].1 < w[0].1 {
            return Err(NetError::BadCellStructure(format!(
                "cuts out of staircase order: {:?} then {:?}",
                w[0], w[1]
            )));
        }
    }
    let mut bounds = vec![(0usize, 0usize)];
    bounds.extend(cuts.iter().copied());
    bounds.push((top_len, bot_len));

    let mut cells: Vec<Vec<usize>> = Vec::new();
    for w in bounds.windows(2) {
        let ((t0, s0), (t1, s1)) = (w[0], w[1]);
        let mut cell = Vec::new();
        for t in t0..t1 {
            cell.push((a + t) % k);
        }
        for s in s0..s1 {
            cell.push((b + s) % k);
        }
        if cell.is_empty() {
            return Err(NetError::BadCellStructure("empty strip cell".into()));
        }
        cells.push(cell);
    }

    let blocks: Vec<Mask> = cells
        .iter()
        .map(|cell| cell.iter().fold(0 as Mask, |m, &arc| m | base.blocks()[arc]))
        .collect();
    let shuffle = CyclicPartition::new(blocks)
        .map_err(|e| NetError::BadCellStructure(format!("shuffle blocks invalid: {e}")))?;
    Ok((cells, shuffle))
}

/// All nets on the ground set {0,..,n}, canonical (every vertex used), with
/// base running over all cyclic partitions with >= 2 blocks.
pub fn enumerate_nets(n: usize) -> Vec<Net> {
    let mut out = Vec::new();
    for sigma in crate::cyclic::enumerate_cyclic_partitions(n) {
        if sigma.k() < 2 {
            continue;
        }
        out.extend(enumerate_nets_on(&sigma));
    }
    out
}

/// All nets with sigma(tau) exactly the given base.
pub fn enumerate_nets_on(sigma: &CyclicPartition) -> Vec<Net> {
    let k = sigma.k();
    let all_chords: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    fn rec(
        sigma: &CyclicPartition,
        k: usize,
        all: &[(usize, usize)],
        from: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Net>,
    ) {
        if !chosen.is_empty() {
            let used = (0..k).all(|v| chosen.iter().any(|&(a, b)| a == v || b == v));
            if used {
                let net = Net::new(sigma, chosen).expect("crossing family is a net");
                out.push(net);
            }
        }
        for i in from..all.len() {
            let c = all[i];
            if chosen.iter().all(|&d| chords_cross(c, d, k)) {
                chosen.push(c);
                rec(sigma, k, all, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(sigma, k, &all_chords, 0, &mut chosen, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::mask_of;

    fn cp(blocks: &[&[usize]]) -> CyclicPartition {
        CyclicPartition::new(blocks.iter().map(|b| mask_of(b)).collect()).unwrap()
    }

    fn singletons(k: usize) -> CyclicPartition {
        CyclicPartition::singletons(&(0..k).collect::<Vec<_>>())
    }

    #[test]
    fn crossing_predicate() {
        assert!(chords_cross((0, 2), (1, 3), 4));
        assert!(!chords_cross((0, 1), (2, 3), 4));
        assert!(chords_cross((0, 1), (1, 2), 4)); // shared endpoint
        assert!(chords_cross((0, 2), (1, 4), 5));
    }

    #[test]
    fn two_gon_diameter() {
        let base = cp(&[&[0], &[1]]);
        let net = Net::new(&base, &[(0, 1)]).unwrap();
        assert_eq!(net.chord_count(), 1);
        assert_eq!(net.rank(), 0);
        assert_eq!(net.shuffle(), &cp(&[&[0, 1]]));
        assert_eq!(net.trapezoid_pairs(), vec![(0, 1)]);
        assert_eq!(net.pair_case(0, 1), PairCase::Opposite);
    }

    #[test]
    fn triangle_medians() {
        let base = singletons(3);
        let net = Net::new(&base, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(net.chord_count(), 3);
        // Antipodal projection reverses the triangle: shuffle <0, 2, 1>.
        assert_eq!(net.shuffle(), &cp(&[&[0], &[2], &[1]]));
        assert_eq!(net.pair_case(0, 1), PairCase::Ordered(0, 1));
        assert_eq!(net.pair_case(1, 2), PairCase::Ordered(1, 2));
        assert_eq!(net.pair_case(2, 0), PairCase::Ordered(2, 0));
    }

    /// The 4-chord net of the five-gon example: chords reconstructed so the
    /// alcove reproduces the five stated relations; the shuffle must come
    /// out <i0, i3, {i1,i4}, i2>.
    #[test]
    fn five_gon_example_shuffle() {
        let base = singletons(5);
        let net = Net::new(&base, &[(0, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        assert_eq!(net.chord_count(), 4);
        assert_eq!(net.rank(), 3);
        assert_eq!(
            net.shuffle(),
            &cp(&[&[0], &[3], &[1, 4], &[2]]),
            "midcircle order must match the worked example"
        );
        assert_eq!(net.trapezoid_pairs(), vec![(1, 4)]);
        for i in 0..5usize {
            for j in i + 1..5 {
                let m = mask_of(&[i, j]);
                let expect = (i, j) == (1, 4);
                assert_eq!(net.divides(m), expect, "J = {{{i},{j}}}");
            }
        }
        // Three-element sets: divided unless they fill one side of a chord.
        // (The four chord sides of size three are exactly the undivided ones;
        // the incidence suite cross-checks this against the geometric oracle.)
        let undivided: Vec<Mask> = [[2, 3, 4], [0, 1, 2], [0, 3, 4], [1, 2, 3]]
            .iter()
            .map(|s| mask_of(s))
            .collect();
        for j in crate::subset::submasks(mask_of(&[0, 1, 2, 3, 4])) {
            match crate::subset::card(j) {
                3 => assert_eq!(net.divides(j), !undivided.contains(&j)),
                4 | 5 => assert!(net.divides(j)),
                _ => {}
            }
        }
    }

    #[test]
    fn unused_vertices_merge() {
        let base = singletons(4);
        let net = Net::new(&base, &[(0, 2)]).unwrap();
        assert_eq!(net.base().k(), 2);
        assert_eq!(net.base(), &cp(&[&[0, 1], &[2, 3]]));
        assert_eq!(net.rank(), 0);
    }

    #[test]
    fn rejects_non_crossing() {
        let base = singletons(4);
        assert!(matches!(
            Net::new(&base, &[(0, 1), (2, 3)]),
            Err(NetError::NonCrossing(_, _))
        ));
        assert!(matches!(Net::new(&base, &[]), Err(NetError::EmptyChords)));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_nets(1).len(), 1);
        let nets2 = enumerate_nets(2);
        let max2: Vec<&Net> = nets2.iter().filter(|t| t.rank() == 2).collect();
        assert_eq!(max2.len(), 2);
        for t in &nets2 {
            let k = t.base().k();
            let l = t.chord_count();
            assert!(l * 2 >= k && l <= k);
            assert_eq!(t.shuffle().k(), l);
        }
    }

    #[test]
    fn maximal_net_count_matches_alcove_count() {
        // n! (2^n - n - 1) maximal nets for n = 2, 3.
        for (n, expect) in [(2usize, 2usize), (3, 24)] {
            let nets = enumerate_nets(n);
            let maximal = nets.iter().filter(|t| t.rank() == n).count();
            let fact: usize = (1..=n).product();
            assert_eq!(maximal, fact * ((1 << n) - n - 1), "n={n}");
            assert_eq!(expect, maximal);
        }
    }

    #[test]
    fn per_octahedron_alcove_count_n3() {
        // Each maximal octahedron at n=3 holds 4 maximal alcoves.
        let base = singletons(4);
        let nets = enumerate_nets_on(&base);
        let max: Vec<&Net> = nets.iter().filter(|t| t.chord_count() == 4).collect();
        assert_eq!(max.len(), 4);
    }
}
