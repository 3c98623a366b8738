//! Finite graded posets presented by covering relations: intervals, Boolean
//! interval tests, isomorphism search, Euler characteristics, order-complex
//! homology, and elementary-collapse search for abstract polyhedral complexes.

use crate::simplicial::{self, ChainComplexSummary, Field};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    UnknownElement(String),
    DuplicateElement(String),
    BadCover(String),
    Incomparable(String, String),
    NotGraded(String),
    BadComplex(String),
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::UnknownElement(s) => write!(f, "unknown element: {s}"),
            PosetError::DuplicateElement(s) => write!(f, "duplicate element: {s}"),
            PosetError::BadCover(s) => write!(f, "bad cover: {s}"),
            PosetError::Incomparable(a, b) => write!(f, "incomparable: {a} vs {b}"),
            PosetError::NotGraded(s) => write!(f, "not graded: {s}"),
            PosetError::BadComplex(s) => write!(f, "bad complex: {s}"),
        }
    }
}

impl std::error::Error for PosetError {}

/// Graded poset on interned string labels, stored by covering relations.
/// The order is the reflexive-transitive closure of the covers.
#[derive(Debug, Clone, Default)]
pub struct FacePoset {
    labels: Vec<String>,
    rank: Vec<u32>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    index: HashMap<String, u32>,
}

impl FacePoset {
    pub fn new() -> Self {
        Default::default()
    }

    pub fn add_element(&mut self, label: &str, rank: u32) -> Result<u32, PosetError> {
        if self.index.contains_key(label) {
            return Err(PosetError::DuplicateElement(label.to_string()));
        }
        let id = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.rank.push(rank);
        self.up.push(vec![]);
        self.down.push(vec![]);
        self.index.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn add_cover(&mut self, lower: u32, upper: u32) {
        if !self.up[lower as usize].contains(&upper) {
            self.up[lower as usize].push(upper);
            self.down[upper as usize].push(lower);
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id_of(&self, label: &str) -> Result<u32, PosetError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(label.to_string()))
    }

    pub fn label(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    pub fn rank_of(&self, id: u32) -> u32 {
        self.rank[id as usize]
    }

    pub fn covers_above(&self, id: u32) -> &[u32] {
        &self.up[id as usize]
    }

    pub fn covers_below(&self, id: u32) -> &[u32] {
        &self.down[id as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.labels.len() as u32
    }

    /// Every cover must raise rank by exactly one.
    pub fn validate_graded(&self) -> Result<(), PosetError> {
        for x in self.elements() {
            for &y in self.covers_above(x) {
                if self.rank[y as usize] != self.rank[x as usize] + 1 {
                    return Err(PosetError::NotGraded(format!(
                        "{} (rk {}) covered by {} (rk {})",
                        self.label(x),
                        self.rank[x as usize],
                        self.label(y),
                        self.rank[y as usize]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn le(&self, a: u32, b: u32) -> bool {
        if a == b {
            return true;
        }
        if self.rank[a as usize] >= self.rank[b as usize] {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        seen[a as usize] = true;
        while let Some(x) = stack.pop() {
            for &y in self.covers_above(x) {
                if y == b {
                    return true;
                }
                if !seen[y as usize] && self.rank[y as usize] < self.rank[b as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    pub fn lower_set(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![x];
        seen[x as usize] = true;
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            i += 1;
            for &w in self.covers_below(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn upper_set(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![x];
        seen[x as usize] = true;
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            i += 1;
            for &w in self.covers_above(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Induced sub-poset on the given elements (covers recomputed as the
    /// Hasse diagram of the restricted order).
    pub fn induced(&self, elems: &[u32]) -> FacePoset {
        let set: BTreeSet<u32> = elems.iter().copied().collect();
        let mut p = FacePoset::new();
        let mut map = HashMap::new();
        let mut ordered: Vec<u32> = set.iter().copied().collect();
        ordered.sort_by_key(|&e| (self.rank[e as usize], e));
        for &e in &ordered {
            let id = p
                .add_element(&self.labels[e as usize], self.rank[e as usize])
                .expect("no duplicates in induced poset");
            map.insert(e, id);
        }
        // Covers inside the subset: reachability through elements outside the
        // subset can create new covers, so take the transitive reduction of
        // the restricted order. Elements here always form a down-set or an
        // interval of a graded poset, where restricted covers stay covers,
        // but do it properly anyway.
        for &e in &ordered {
            for &f in &ordered {
                if self.rank[f as usize] <= self.rank[e as usize] {
                    continue;
                }
                if !self.le(e, f) {
                    continue;
                }
                // cover iff no strictly intermediate element in the subset
                let intermediate = ordered.iter().any(|&g| {
                    g != e && g != f && self.le(e, g) && self.le(g, f)
                });
                if !intermediate {
                    p.add_cover(map[&e], map[&f]);
                }
            }
        }
        p
    }

    /// Fast induced sub-poset for down-closed subsets: covers restrict as-is.
    pub fn induced_down_closed(&self, elems: &[u32]) -> FacePoset {
        let set: BTreeSet<u32> = elems.iter().copied().collect();
        let mut p = FacePoset::new();
        let mut map = HashMap::new();
        let mut ordered: Vec<u32> = set.iter().copied().collect();
        ordered.sort_by_key(|&e| (self.rank[e as usize], e));
        for &e in &ordered {
            let id = p
                .add_element(&self.labels[e as usize], self.rank[e as usize])
                .expect("no duplicates");
            map.insert(e, id);
        }
        for &e in &ordered {
            for &u in self.covers_above(e) {
                if set.contains(&u) {
                    p.add_cover(map[&e], map[&u]);
                }
            }
        }
        p
    }

    /// {y : y <= x} with induced order and ranks.
    pub fn lower_interval(&self, x: u32) -> FacePoset {
        self.induced_down_closed(&self.lower_set(x))
    }

    pub fn interval(&self, x: u32, y: u32) -> Vec<u32> {
        // elements z with x <= z <= y
        let upper: BTreeSet<u32> = self
            .upper_set(x)
            .into_iter()
            .filter(|&z| self.rank[z as usize] <= self.rank[y as usize])
            .collect();
        let lower: BTreeSet<u32> = self
            .lower_set(y)
            .into_iter()
            .filter(|&z| self.rank[z as usize] >= self.rank[x as usize])
            .collect();
        upper.intersection(&lower).copied().collect()
    }

    /// Is [x, y] isomorphic to the Boolean lattice of rank rk(y) - rk(x)?
    pub fn is_boolean_interval(&self, x: u32, y: u32) -> Result<bool, PosetError> {
        if !self.le(x, y) {
            return Err(PosetError::Incomparable(
                self.label(x).to_string(),
                self.label(y).to_string(),
            ));
        }
        let d = (self.rank[y as usize] - self.rank[x as usize]) as usize;
        if d == 0 {
            return Ok(true);
        }
        let interval = self.interval(x, y);
        if interval.len() != 1usize << d {
            return Ok(false);
        }
        let inset: BTreeSet<u32> = interval.iter().copied().collect();
        // Atoms: covers of x inside the interval.
        let atoms: Vec<u32> = self
            .covers_above(x)
            .iter()
            .copied()
            .filter(|a| inset.contains(a))
            .collect();
        if atoms.len() != d {
            return Ok(false);
        }
        // Support map z -> set of atoms below z must be a rank-preserving
        // bijection onto subsets.
        let mut supports = BTreeSet::new();
        for &z in &interval {
            let mut sup = 0u64;
            for (i, &a) in atoms.iter().enumerate() {
                if self.le(a, z) {
                    sup |= 1 << i;
                }
            }
            if sup.count_ones() != self.rank[z as usize] - self.rank[x as usize] {
                return Ok(false);
            }
            if !supports.insert(sup) {
                return Ok(false);
            }
        }
        Ok(supports.len() == 1usize << d)
    }

    pub fn maximal_elements(&self) -> Vec<u32> {
        self.elements()
            .filter(|&x| self.up[x as usize].is_empty())
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        self.elements()
            .filter(|&x| self.down[x as usize].is_empty())
            .collect()
    }

    /// Sum of (-1)^rank over all elements.
    pub fn euler_characteristic(&self) -> i64 {
        self.rank
            .iter()
            .map(|&r| if r % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Cell counts per rank.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.rank.iter().copied().max().map_or(0, |r| r as usize + 1);
        let mut f = vec![0usize; top];
        for &r in &self.rank {
            f[r as usize] += 1;
        }
        f
    }

    /// Homology of the order complex (nerve of chains) over the given field.
    pub fn order_complex_homology(&self, field: Field) -> ChainComplexSummary {
        simplicial::order_complex_homology(self, field)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut elements: Vec<serde_json::Value> = self
            .elements()
            .map(|e| {
                serde_json::json!({"id": self.label(e), "rank": self.rank_of(e)})
            })
            .collect();
        elements.sort_by_key(|v| v["id"].as_str().unwrap().to_string());
        let mut covers: Vec<(String, String)> = vec![];
        for e in self.elements() {
            for &u in self.covers_above(e) {
                covers.push((self.label(e).to_string(), self.label(u).to_string()));
            }
        }
        covers.sort();
        serde_json::json!({
            "elements": elements,
            "covers": covers,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FacePoset, PosetError> {
        let mut p = FacePoset::new();
        let elements = v["elements"]
            .as_array()
            .ok_or_else(|| PosetError::BadComplex("missing elements".into()))?;
        for e in elements {
            let id = e["id"]
                .as_str()
                .ok_or_else(|| PosetError::BadComplex("bad id".into()))?;
            let rank = e["rank"]
                .as_u64()
                .ok_or_else(|| PosetError::BadComplex("bad rank".into()))?;
            p.add_element(id, rank as u32)?;
        }
        let covers = v["covers"]
            .as_array()
            .ok_or_else(|| PosetError::BadComplex("missing covers".into()))?;
        for c in covers {
            let a = c[0].as_str().ok_or_else(|| PosetError::BadComplex("bad cover".into()))?;
            let b = c[1].as_str().ok_or_else(|| PosetError::BadComplex("bad cover".into()))?;
            let (ia, ib) = (p.id_of(a)?, p.id_of(b)?);
            p.add_cover(ia, ib);
        }
        Ok(p)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for e in self.elements() {
            s.push_str(&format!(
                "  n{} [label=\"{}\"];\n",
                e,
                self.label(e).replace('"', "'")
            ));
        }
        let mut edges: Vec<(u32, u32)> = vec![];
        for e in self.elements() {
            for &u in self.covers_above(e) {
                edges.push((e, u));
            }
        }
        edges.sort_unstable();
        for (a, b) in edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

// ---------------------------------------------------------------------------
// Isomorphism

fn refine_colors(p: &FacePoset) -> Vec<u64> {
    fn h(acc: u64, x: u64) -> u64 {
        // FNV-1a style mixing; stability across runs is what matters.
        (acc ^ x).wrapping_mul(0x100000001b3)
    }
    let n = p.len();
    let mut color: Vec<u64> = (0..n)
        .map(|i| {
            let mut a = 0xcbf29ce484222325u64;
            a = h(a, p.rank[i] as u64 + 1);
            a = h(a, p.up[i].len() as u64 + 1);
            a = h(a, p.down[i].len() as u64 + 1);
            a
        })
        .collect();
    for _ in 0..(n.min(64) + 2) {
        let mut next = vec![0u64; n];
        for i in 0..n {
            let mut ups: Vec<u64> = p.up[i].iter().map(|&j| color[j as usize]).collect();
            let mut downs: Vec<u64> = p.down[i].iter().map(|&j| color[j as usize]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut a = h(0xcbf29ce484222325, color[i]);
            for u in ups {
                a = h(a, u);
            }
            a = h(a, 0xdeadbeef);
            for d in downs {
                a = h(a, d);
            }
            next[i] = a;
        }
        if next == color {
            break;
        }
        color = next;
    }
    color
}

/// Rank-preserving order isomorphism, if one exists. Deterministic given
/// input ordering; returns the image in `b` of each element of `a`.
pub fn poset_isomorphic(a: &FacePoset, b: &FacePoset) -> Option<Vec<u32>> {
    if a.len() != b.len() {
        return None;
    }
    let ca = refine_colors(a);
    let cb = refine_colors(b);
    let mut count_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut count_b: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *count_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *count_b.entry(c).or_insert(0) += 1;
    }
    if count_a != count_b {
        return None;
    }
    // Order a's elements: rarest color class first, then by id.
    let mut order: Vec<u32> = (0..a.len() as u32).collect();
    order.sort_by_key(|&i| (count_a[&ca[i as usize]], ca[i as usize], i));
    let mut cands: HashMap<u64, Vec<u32>> = HashMap::new();
    for i in 0..b.len() as u32 {
        cands.entry(cb[i as usize]).or_default().push(i);
    }

    let mut img: Vec<Option<u32>> = vec![None; a.len()];
    let mut used: Vec<bool> = vec![false; b.len()];

    fn consistent(a: &FacePoset, b: &FacePoset, img: &[Option<u32>], x: u32, y: u32) -> bool {
        if a.rank_of(x) != b.rank_of(y) {
            return false;
        }
        for &ux in a.covers_above(x) {
            if let Some(uy) = img[ux as usize] {
                if !b.covers_above(y).contains(&uy) {
                    return false;
                }
            }
        }
        for &dx in a.covers_below(x) {
            if let Some(dy) = img[dx as usize] {
                if !b.covers_below(y).contains(&dy) {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        a: &FacePoset,
        b: &FacePoset,
        order: &[u32],
        pos: usize,
        ca: &[u64],
        cands: &HashMap<u64, Vec<u32>>,
        img: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let x = order[pos];
        for &y in &cands[&ca[x as usize]] {
            if used[y as usize] || !consistent(a, b, img, x, y) {
                continue;
            }
            img[x as usize] = Some(y);
            used[y as usize] = true;
            if search(a, b, order, pos + 1, ca, cands, img, used) {
                return true;
            }
            img[x as usize] = None;
            used[y as usize] = false;
        }
        false
    }

    if search(a, b, &order, 0, &ca, &cands, &mut img, &mut used) {
        Some(img.into_iter().map(|o| o.unwrap()).collect())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Abstract polyhedral complexes and collapsing

#[derive(Debug, Clone)]
pub struct PolyhedralComplexAbstract {
    pub cells: FacePoset,
    pub dim: u32,
    pub pure: bool,
}

impl PolyhedralComplexAbstract {
    pub fn new(cells: FacePoset, pure: bool) -> Result<Self, PosetError> {
        cells.validate_graded()?;
        let dim = cells.elements().map(|e| cells.rank_of(e)).max().unwrap_or(0);
        if pure {
            for m in cells.maximal_elements() {
                if cells.rank_of(m) != dim {
                    return Err(PosetError::BadComplex(format!(
                        "declared pure but {} is maximal of rank {} < {}",
                        cells.label(m),
                        cells.rank_of(m),
                        dim
                    )));
                }
            }
        }
        // Faces must be present: every positive-rank cell has a facet.
        for e in cells.elements() {
            if cells.rank_of(e) > 0 && cells.covers_below(e).is_empty() {
                return Err(PosetError::BadComplex(format!(
                    "cell {} of rank {} has no facets",
                    cells.label(e),
                    cells.rank_of(e)
                )));
            }
        }
        Ok(PolyhedralComplexAbstract { cells, dim, pure })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum CollapseOutcome {
    /// Pairs (free face, coface) in removal order; ends at a single vertex.
    Collapsed { steps: Vec<(String, String)> },
    /// Budget exhausted or stuck; remaining cell labels for diagnosis.
    Inconclusive {
        explored: u64,
        remaining: Vec<String>,
    },
}

impl CollapseOutcome {
    pub fn succeeded(&self) -> bool {
        matches!(self, CollapseOutcome::Collapsed { .. })
    }
}

/// Greedy elementary-collapse search with lexicographic tie-breaking and
/// backtracking bounded by a node budget.
pub fn greedy_collapse(
    complex: &PolyhedralComplexAbstract,
    budget: u64,
) -> Result<CollapseOutcome, PosetError> {
    let p = &complex.cells;
    let n = p.len();
    if n == 0 {
        return Err(PosetError::BadComplex("empty complex".into()));
    }
    if n == 1 {
        return Ok(CollapseOutcome::Collapsed { steps: vec![] });
    }

    // Lexicographic order on labels for tie-breaking.
    let mut lex: Vec<u32> = (0..n as u32).collect();
    lex.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    let mut lexpos = vec![0u32; n];
    for (i, &e) in lex.iter().enumerate() {
        lexpos[e as usize] = i as u32;
    }

    let mut alive = vec![true; n];
    let mut up_count: Vec<u32> = (0..n).map(|i| p.up[i].len() as u32).collect();
    let mut alive_count = n;

    // A free pair is (g, f): g's only living coface is f, and f is maximal.
    let free_pairs = |alive: &Vec<bool>, up_count: &Vec<u32>| -> Vec<(u32, u32)> {
        let mut out = vec![];
        for g in 0..n as u32 {
            if !alive[g as usize] || up_count[g as usize] != 1 {
                continue;
            }
            let f = *p.up[g as usize]
                .iter()
                .find(|&&f| alive[f as usize])
                .expect("up_count says one cover is alive");
            if up_count[f as usize] == 0 {
                out.push((g, f));
            }
        }
        out.sort_by_key(|&(g, f)| (lexpos[g as usize], lexpos[f as usize]));
        out
    };

    struct Frame {
        cands: Vec<(u32, u32)>,
        next: usize,
        chosen: Option<(u32, u32)>,
    }

    let mut explored: u64 = 0;
    let mut stack: Vec<Frame> = vec![Frame {
        cands: free_pairs(&alive, &up_count),
        next: 0,
        chosen: None,
    }];
    let mut steps: Vec<(u32, u32)> = vec![];

    loop {
        if alive_count == 1 {
            let last = (0..n).find(|&i| alive[i]).unwrap() as u32;
            if p.rank_of(last) == 0 {
                let out = steps
                    .iter()
                    .map(|&(g, f)| (p.label(g).to_string(), p.label(f).to_string()))
                    .collect();
                return Ok(CollapseOutcome::Collapsed { steps: out });
            }
        }
        let frame = stack.last_mut().expect("stack never empty in loop");
        if frame.next >= frame.cands.len() || explored >= budget {
            // Undo and backtrack.
            if let Some((g, f)) = frame.chosen.take() {
                // Should not happen: chosen is consumed when frame was pushed.
                alive[g as usize] = true;
                alive[f as usize] = true;
            }
            stack.pop();
            match steps.pop() {
                None => {
                    let remaining: Vec<String> = (0..n)
                        .filter(|&i| alive[i])
                        .map(|i| p.label(i as u32).to_string())
                        .collect();
                    return Ok(CollapseOutcome::Inconclusive {
                        explored,
                        remaining,
                    });
                }
                Some((g, f)) => {
                    alive[g as usize] = true;
                    alive[f as usize] = true;
                    alive_count += 2;
                    for &x in &p.down[g as usize] {
                        up_count[x as usize] += 1;
                    }
                    for &x in &p.down[f as usize] {
                        up_count[x as usize] += 1;
                    }
                    if explored >= budget {
                        let remaining: Vec<String> = (0..n)
                            .filter(|&i| alive[i])
                            .map(|i| p.label(i as u32).to_string())
                            .collect();
                        return Ok(CollapseOutcome::Inconclusive {
                            explored,
                            remaining,
                        });
                    }
                    continue;
                }
            }
        }
        let (g, f) = frame.cands[frame.next];
        frame.next += 1;
        explored += 1;
        // Apply the collapse.
        alive[g as usize] = false;
        alive[f as usize] = false;
        alive_count -= 2;
        for &x in &p.down[g as usize] {
            up_count[x as usize] -= 1;
        }
        for &x in &p.down[f as usize] {
            up_count[x as usize] -= 1;
        }
        steps.push((g, f));
        stack.push(Frame {
            cands: free_pairs(&alive, &up_count),
            next: 0,
            chosen: None,
        });
    }
}

/// Replays a collapse certificate, confirming each step legal.
pub fn verify_collapse(
    complex: &PolyhedralComplexAbstract,
    steps: &[(String, String)],
) -> Result<(), PosetError> {
    let p = &complex.cells;
    let n = p.len();
    let mut alive = vec![true; n];
    let mut up_count: Vec<u32> = (0..n).map(|i| p.up[i].len() as u32).collect();
    for (gl, fl) in steps {
        let g = p.id_of(gl)?;
        let f = p.id_of(fl)?;
        if !alive[g as usize] || !alive[f as usize] {
            return Err(PosetError::BadComplex(format!("dead cell in step {gl},{fl}")));
        }
        if up_count[g as usize] != 1 || !p.up[g as usize].iter().any(|&x| x == f && alive[x as usize]) {
            return Err(PosetError::BadComplex(format!("{gl} is not free under {fl}")));
        }
        if up_count[f as usize] != 0 {
            return Err(PosetError::BadComplex(format!("{fl} is not maximal")));
        }
        alive[g as usize] = false;
        alive[f as usize] = false;
        for &x in &p.down[g as usize] {
            up_count[x as usize] -= 1;
        }
        for &x in &p.down[f as usize] {
            up_count[x as usize] -= 1;
        }
    }
    let remaining: Vec<u32> = (0..n as u32).filter(|&i| alive[i as usize]).collect();
    if remaining.len() != 1 || p.rank_of(remaining[0]) != 0 {
        return Err(PosetError::BadComplex("certificate does not end at a vertex".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_poset(n: usize) -> FacePoset {
        let mut p = FacePoset::new();
        for i in 0..n {
            p.add_element(&format!("c{i}"), i as u32).unwrap();
        }
        for i in 1..n {
            p.add_cover((i - 1) as u32, i as u32);
        }
        p
    }

    /// Face poset of a closed triangle: 3 vertices, 3 edges, 1 face.
    fn triangle() -> FacePoset {
        let mut p = FacePoset::new();
        let v: Vec<u32> = (0..3)
            .map(|i| p.add_element(&format!("v{i}"), 0).unwrap())
            .collect();
        let e: Vec<u32> = (0..3)
            .map(|i| p.add_element(&format!("e{i}"), 1).unwrap())
            .collect();
        let f = p.add_element("f", 2).unwrap();
        let ends = [(0, 1), (1, 2), (2, 0)];
        for (i, &(a, b)) in ends.iter().enumerate() {
            p.add_cover(v[a], e[i]);
            p.add_cover(v[b], e[i]);
            p.add_cover(e[i], f);
        }
        p
    }

    #[test]
    fn lower_interval_of_chain() {
        let p = chain_poset(3);
        let li = p.lower_interval(1);
        assert_eq!(li.len(), 2);
        assert!(li.id_of("c0").is_ok() && li.id_of("c1").is_ok());
    }

    #[test]
    fn boolean_intervals() {
        // Boolean lattice B_2 as a poset.
        let mut p = FacePoset::new();
        let bot = p.add_element("{}", 0).unwrap();
        let a = p.add_element("{a}", 1).unwrap();
        let b = p.add_element("{b}", 1).unwrap();
        let top = p.add_element("{a,b}", 2).unwrap();
        p.add_cover(bot, a);
        p.add_cover(bot, b);
        p.add_cover(a, top);
        p.add_cover(b, top);
        assert!(p.is_boolean_interval(bot, top).unwrap());
        assert!(p.is_boolean_interval(a, a).unwrap());
        assert!(p.is_boolean_interval(a, b).is_err());

        // Pentagon face lattice interval bottom..top is not Boolean.
        let mut pent = FacePoset::new();
        let bot = pent.add_element("0", 0).unwrap();
        let vs: Vec<u32> = (0..5)
            .map(|i| pent.add_element(&format!("v{i}"), 1).unwrap())
            .collect();
        let es: Vec<u32> = (0..5)
            .map(|i| pent.add_element(&format!("e{i}"), 2).unwrap())
            .collect();
        let top = pent.add_element("P", 3).unwrap();
        for i in 0..5 {
            pent.add_cover(bot, vs[i]);
            pent.add_cover(vs[i], es[i]);
            pent.add_cover(vs[(i + 1) % 5], es[i]);
            pent.add_cover(es[i], top);
        }
        assert!(!pent.is_boolean_interval(bot, top).unwrap());
    }

    #[test]
    fn isomorphism_identity_and_negative() {
        let t = triangle();
        let m = poset_isomorphic(&t, &t).unwrap();
        assert_eq!(m.len(), t.len());
        let c = chain_poset(7);
        assert!(poset_isomorphic(&t, &c).is_none());
    }

    #[test]
    fn collapse_triangle() {
        let complex = PolyhedralComplexAbstract::new(triangle(), true).unwrap();
        let out = greedy_collapse(&complex, 1_000_000).unwrap();
        match &out {
            CollapseOutcome::Collapsed { steps } => {
                assert_eq!(steps.len(), 3);
                verify_collapse(&complex, steps).unwrap();
            }
            _ => panic!("triangle must collapse"),
        }
    }

    #[test]
    fn collapse_single_vertex() {
        let mut p = FacePoset::new();
        p.add_element("v", 0).unwrap();
        let complex = PolyhedralComplexAbstract::new(p, true).unwrap();
        let out = greedy_collapse(&complex, 100).unwrap();
        assert!(matches!(out, CollapseOutcome::Collapsed { steps } if steps.is_empty()));
    }

    #[test]
    fn json_round_trip() {
        let t = triangle();
        let js = t.to_json();
        let back = FacePoset::from_json(&js).unwrap();
        assert!(poset_isomorphic(&t, &back).is_some());
    }
}
