//! The complex-side model: points of the compactified pair-of-pants as
//! closed circuits of rational plane vectors, classification into strata,
//! witness synthesis for every label, and the closure order. Directions are
//! exact rational rays; circular order, equality and antipodality are
//! decided by sign predicates, never by evaluating arguments.

use crate::cyclic::{refines, CyclicPartition, StratumLabel};
use crate::qnum::{q, qi, qz, Q};
use crate::subset::{self, Mask};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PantsError {
    NotClosed,
    TooFewEdges,
    ZeroEdgeWithoutDirection(usize),
    NonZeroEdgeWithDirection(usize),
    ZeroDirection(usize),
    NotInW(String),
    NoPositiveLengths(String),
    TooManyDirectionClasses(usize),
}

impl fmt::Display for PantsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PantsError::NotClosed => write!(f, "edges do not sum to zero"),
            PantsError::TooFewEdges => write!(f, "a closed circuit needs two non-zero edges"),
            PantsError::ZeroEdgeWithoutDirection(i) => {
                write!(f, "zero edge {i} carries no direction")
            }
            PantsError::NonZeroEdgeWithDirection(i) => {
                write!(f, "non-zero edge {i} must not carry a separate direction")
            }
            PantsError::ZeroDirection(i) => write!(f, "edge {i} has a zero direction"),
            PantsError::NotInW(s) => write!(f, "label not in W: {s}"),
            PantsError::NoPositiveLengths(s) => {
                write!(f, "no strictly positive closing lengths: {s}")
            }
            PantsError::TooManyDirectionClasses(r) => {
                write!(f, "no ray table for {r} direction classes")
            }
        }
    }
}

impl std::error::Error for PantsError {}

pub type Vec2 = (Q, Q);

pub fn v2(x: i64, y: i64) -> Vec2 {
    (qi(x), qi(y))
}

pub fn cross(a: &Vec2, b: &Vec2) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

pub fn dot2(a: &Vec2, b: &Vec2) -> Q {
    &a.0 * &b.0 + &a.1 * &b.1
}

pub fn is_zero_vec(a: &Vec2) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

pub fn add2(a: &Vec2, b: &Vec2) -> Vec2 {
    (&a.0 + &b.0, &a.1 + &b.1)
}

pub fn scale2(a: &Vec2, f: &Q) -> Vec2 {
    (&a.0 * f, &a.1 * f)
}

pub fn rot90(a: &Vec2) -> Vec2 {
    (-a.1.clone(), a.0.clone())
}

/// Same open ray from the origin.
pub fn same_ray(a: &Vec2, b: &Vec2) -> bool {
    cross(a, b).is_zero() && dot2(a, b).is_positive()
}

pub fn antipodal_ray(a: &Vec2, b: &Vec2) -> bool {
    cross(a, b).is_zero() && dot2(a, b).is_negative()
}

/// 0 for the upper half (y > 0, or y = 0 and x > 0), 1 for the lower.
fn half(a: &Vec2) -> u8 {
    if a.1.is_positive() || (a.1.is_zero() && a.0.is_positive()) {
        0
    } else {
        1
    }
}

/// Strict counterclockwise order on rays, starting just above direction 0.
pub fn ray_cmp(a: &Vec2, b: &Vec2) -> std::cmp::Ordering {
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = cross(a, b);
    if c.is_positive() {
        std::cmp::Ordering::Less
    } else if c.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

/// A point of the compactified pair-of-pants: a closed circuit of edges,
/// with directions recorded for edges of zero length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPoint {
    edges: Vec<Vec2>,
    dirs: Vec<Option<Vec2>>,
}

impl PolygonPoint {
    pub fn new(edges: Vec<Vec2>, dirs: Vec<Option<Vec2>>) -> Result<PolygonPoint, PantsError> {
        assert_eq!(edges.len(), dirs.len());
        let mut sum = (qz(), qz());
        let mut nonzero = 0;
        for (i, e) in edges.iter().enumerate() {
            sum = add2(&sum, e);
            if is_zero_vec(e) {
                match &dirs[i] {
                    None => return Err(PantsError::ZeroEdgeWithoutDirection(i)),
                    Some(d) if is_zero_vec(d) => return Err(PantsError::ZeroDirection(i)),
                    _ => {}
                }
            } else {
                nonzero += 1;
                if dirs[i].is_some() {
                    return Err(PantsError::NonZeroEdgeWithDirection(i));
                }
            }
        }
        if !is_zero_vec(&sum) {
            return Err(PantsError::NotClosed);
        }
        if nonzero < 2 {
            return Err(PantsError::TooFewEdges);
        }
        Ok(PolygonPoint { edges, dirs })
    }

    /// Shorthand for circuits of non-zero edges only.
    pub fn from_edges(edges: Vec<Vec2>) -> Result<PolygonPoint, PantsError> {
        let dirs = vec![None; edges.len()];
        PolygonPoint::new(edges, dirs)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, i: usize) -> &Vec2 {
        &self.edges[i]
    }

    pub fn edges(&self) -> &[Vec2] {
        &self.edges
    }

    /// The exact direction ray of edge i.
    pub fn ray(&self, i: usize) -> Vec2 {
        match &self.dirs[i] {
            Some(d) => d.clone(),
            None => self.edges[i].clone(),
        }
    }

    /// Indices of edges with non-zero length.
    pub fn support(&self) -> Mask {
        let mut j: Mask = 0;
        for (i, e) in self.edges.iter().enumerate() {
            if !is_zero_vec(e) {
                j |= subset::bit(i);
            }
        }
        j
    }

    /// Exact direction tuple (the argument map composed with the circular
    /// order predicates).
    pub fn arg_map(&self) -> Vec<Vec2> {
        (0..self.len()).map(|i| self.ray(i)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|(x, y)| {
                serde_json::json!([
                    x.numer().to_string(),
                    x.denom().to_string(),
                    y.numer().to_string(),
                    y.denom().to_string()
                ])
            })
            .collect();
        let mut dirs = serde_json::Map::new();
        for (i, d) in self.dirs.iter().enumerate() {
            if let Some((x, y)) = d {
                dirs.insert(
                    i.to_string(),
                    serde_json::json!([
                        x.numer().to_string(),
                        x.denom().to_string(),
                        y.numer().to_string(),
                        y.denom().to_string()
                    ]),
                );
            }
        }
        serde_json::json!({"edges": edges, "dirs": dirs})
    }
}

/// Group equal rays in counterclockwise circular order and read off the
/// stratum label.
pub fn classify(p: &PolygonPoint) -> Result<StratumLabel, PantsError> {
    let n = p.len();
    let rays: Vec<Vec2> = (0..n).map(|i| p.ray(i)).collect();
    let mut groups: Vec<(Vec2, Mask)> = Vec::new();
    for (i, r) in rays.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| same_ray(g, r)) {
            Some((_, m)) => *m |= subset::bit(i),
            None => groups.push((r.clone(), subset::bit(i))),
        }
    }
    groups.sort_by(|(a, _), (b, _)| ray_cmp(a, b));
    let sigma = CyclicPartition::new(groups.iter().map(|(_, m)| *m).collect())
        .expect("groups partition the edge set");
    let j = p.support();
    StratumLabel::new(sigma, j).map_err(|e| PantsError::NotInW(e.to_string()))
}

/// Spread ray tables: r rays in counterclockwise order with every
/// consecutive gap strictly less than pi (r = 2 is the antipodal pair).
fn ray_table(r: usize) -> Result<Vec<Vec2>, PantsError> {
    let t: Vec<Vec<(i64, i64)>> = vec![
        vec![(1, 0), (-1, 0)],
        vec![(1, 0), (-1, 2), (-1, -2)],
        vec![(1, 0), (0, 1), (-1, 0), (0, -1)],
        vec![(1, 0), (1, 2), (-1, 1), (-1, -1), (1, -2)],
        vec![(1, 0), (1, 2), (-1, 2), (-1, 0), (-1, -2), (1, -2)],
        vec![(1, 0), (1, 1), (-1, 2), (-2, -1), (-1, -2), (0, -1), (1, -1)],
        vec![
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ],
    ];
    if r < 2 || r > t.len() + 1 {
        return Err(PantsError::TooManyDirectionClasses(r));
    }
    Ok(t[r - 2].iter().map(|&(x, y)| v2(x, y)).collect())
}

/// Strictly positive lengths closing a circuit of rays, with L = 1 + a
/// correction found by conic Caratheodory over ray pairs.
fn positive_closing_lengths(rays: &[Vec2]) -> Option<Vec<Q>> {
    let m = rays.len();
    let mut lens = vec![qi(1); m];
    let mut r_sum = (qz(), qz());
    for d in rays {
        r_sum = add2(&r_sum, d);
    }
    let target = (-r_sum.0.clone(), -r_sum.1.clone());
    if is_zero_vec(&target) {
        return Some(lens);
    }
    // Single ray parallel to the target.
    for (i, d) in rays.iter().enumerate() {
        if same_ray(d, &target) {
            let f = if !d.0.is_zero() {
                &target.0 / &d.0
            } else {
                &target.1 / &d.1
            };
            lens[i] += f;
            return Some(lens);
        }
    }
    // Pair spanning the target with non-negative coefficients.
    for i in 0..m {
        for j in i + 1..m {
            let den = cross(&rays[i], &rays[j]);
            if den.is_zero() {
                continue;
            }
            let mu_i = &cross(&target, &rays[j]) / &den;
            let mu_j = &cross(&rays[i], &target) / &den;
            if !mu_i.is_negative() && !mu_j.is_negative() {
                lens[i] += mu_i;
                lens[j] += mu_j;
                return Some(lens);
            }
        }
    }
    None
}

/// A polygon point classifying to the given label, built with the stated
/// block rays; pass None for the canonical table.
fn witness_with_rays(
    label: &StratumLabel,
    block_rays: Option<Vec<Vec2>>,
) -> Result<PolygonPoint, PantsError> {
    let sigma = &label.sigma;
    let j = label.j;
    let k = sigma.k();
    let jpos: Vec<usize> = sigma.induced_positions(j);
    let r = jpos.len();

    let rays: Vec<Vec2> = match block_rays {
        Some(v) => v,
        None => {
            let jrays = ray_table(r)?;
            let mut rays: Vec<Vec2> = vec![(qz(), qz()); k];
            for (t, &s) in jpos.iter().enumerate() {
                rays[s] = jrays[t].clone();
            }
            // Interpolate the non-J runs strictly inside each cyclic gap.
            for t in 0..r {
                let s0 = jpos[t];
                let s1 = jpos[(t + 1) % r];
                let u = jrays[t].clone();
                let run: Vec<usize> = {
                    let mut v = vec![];
                    let mut s = (s0 + 1) % k;
                    while s != s1 {
                        v.push(s);
                        s = (s + 1) % k;
                    }
                    v
                };
                let m = run.len() as i64;
                if m == 0 {
                    continue;
                }
                if r == 2 {
                    // Blend with the perpendicular: u and -u span no cone.
                    let perp = rot90(&u);
                    for (qq, &s) in run.iter().enumerate() {
                        let a = qi(m - 1 - 2 * (qq as i64));
                        rays[s] = add2(&scale2(&u, &a), &scale2(&perp, &qi(m)));
                    }
                } else {
                    let w = jrays[(t + 1) % r].clone();
                    for (qq, &s) in run.iter().enumerate() {
                        let a = qi(m - qq as i64);
                        let b = qi(qq as i64 + 1);
                        rays[s] = add2(&scale2(&u, &a), &scale2(&w, &b));
                    }
                }
            }
            rays
        }
    };

    // Lengths on the J-edges close the circuit; everything else is zero.
    let jelems = subset::elems(j);
    let jdirs: Vec<Vec2> = jelems
        .iter()
        .map(|&e| rays[sigma.block_index_of(e).expect("ground element")].clone())
        .collect();
    let lens = positive_closing_lengths(&jdirs)
        .ok_or_else(|| PantsError::NoPositiveLengths(label.text()))?;

    let n = sigma.ground().count_ones() as usize;
    let mut edges = vec![(qz(), qz()); n];
    let mut dirs: Vec<Option<Vec2>> = vec![None; n];
    for (t, &e) in jelems.iter().enumerate() {
        edges[e] = scale2(&jdirs[t], &lens[t]);
    }
    for e in 0..n {
        if !subset::contains(j, e) {
            dirs[e] = Some(rays[sigma.block_index_of(e).expect("ground element")].clone());
        }
    }
    PolygonPoint::new(edges, dirs)
}

/// Constructive content of the interior-cell lemma: a polygon point in the
/// stratum of the given label.
pub fn witness(label: &StratumLabel) -> Result<PolygonPoint, PantsError> {
    let p = witness_with_rays(label, None)?;
    debug_assert_eq!(&classify(&p).expect("witness classifies"), label);
    Ok(p)
}

/// Closure order: the stratum of `inner` lies in the closure of the stratum
/// of `outer` iff inner <= outer in W.
pub fn closure_contains(outer: &StratumLabel, inner: &StratumLabel) -> Result<bool, PantsError> {
    inner.leq(outer).map_err(|e| PantsError::NotInW(e.to_string()))
}

/// Geometric deformation mode: for inner <= outer, exhibit a point of the
/// outer stratum close to a witness of the inner stratum by bending its
/// edges and introducing small lengths. The path blends the inner witness
/// rays toward canonical outer rays at parameter t and re-closes the
/// circuit with corrections of order t; both endpoints are verified by
/// exact classification.
pub fn closure_deformation_certificate(
    outer: &StratumLabel,
    inner: &StratumLabel,
    m: u32,
) -> Result<Option<(PolygonPoint, PolygonPoint)>, PantsError> {
    if !closure_contains(outer, inner)? {
        return Ok(None);
    }
    let q_in = witness(inner)?;
    let n = outer.sigma.ground().count_ones() as usize;
    let k = outer.sigma.k();
    // Each inner block's outer sub-blocks form one cyclically consecutive
    // run; fan them counterclockwise off the inner ray.
    let owner_of: Vec<usize> = outer
        .sigma
        .blocks()
        .iter()
        .map(|&ob| {
            inner
                .sigma
                .blocks()
                .iter()
                .position(|&ib| ob & !ib == 0)
                .expect("outer refines inner")
        })
        .collect();
    let fan_pos: Vec<usize> = (0..k)
        .map(|s| {
            if owner_of[(s + k - 1) % k] != owner_of[s] {
                return 0; // run start
            }
            let mut pos = 0;
            let mut t = s;
            while owner_of[(t + k - 1) % k] == owner_of[s] {
                t = (t + k - 1) % k;
                pos += 1;
                if pos > k {
                    break; // single owner: whole circle is one run
                }
            }
            pos
        })
        .collect();
    let inner_ray =
        |c: usize| -> Vec2 { q_in.ray(subset::elems(inner.sigma.blocks()[c])[0]) };

    let mut t = q(1, 1i64 << m.min(40));
    for _ in 0..24 {
        let rays: Vec<Vec2> = (0..k)
            .map(|s| {
                let base = inner_ray(owner_of[s]);
                let fan = scale2(&rot90(&base), &(qi(fan_pos[s] as i64) * &t));
                add2(&base, &fan)
            })
            .collect();
        let jelems = subset::elems(outer.j);
        let ray_of = |e: usize| rays[outer.sigma.block_index_of(e).expect("ground")].clone();
        // Base lengths: inner witness lengths on J', t on the new edges.
        let base_len: Vec<Q> = jelems
            .iter()
            .map(|&e| {
                if subset::contains(inner.j, e) {
                    let edge = q_in.edge(e);
                    let r = q_in.ray(e);
                    if !r.0.is_zero() {
                        &edge.0 / &r.0
                    } else {
                        &edge.1 / &r.1
                    }
                } else {
                    t.clone()
                }
            })
            .collect();
        let mut resid = (qz(), qz());
        for (idx, &e) in jelems.iter().enumerate() {
            resid = add2(&resid, &scale2(&ray_of(e), &base_len[idx]));
        }
        // Close the circuit: absorb the residual into one pivot block,
        // rotating its direction slightly; all edges of the pivot block
        // stay parallel. Try every J-meeting block as pivot.
        for pivot in 0..k {
            if outer.sigma.blocks()[pivot] & outer.j == 0 {
                continue;
            }
            let pmask = outer.sigma.blocks()[pivot] & outer.j;
            let pivot_idx: Vec<usize> = jelems
                .iter()
                .enumerate()
                .filter(|(_, &e)| subset::contains(pmask, e))
                .map(|(i, _)| i)
                .collect();
            let mut psum = (qz(), qz());
            for &i in &pivot_idx {
                psum = add2(&psum, &scale2(&ray_of(jelems[i]), &base_len[i]));
            }
            let corrected = add2(&psum, &(-resid.0.clone(), -resid.1.clone()));
            if is_zero_vec(&corrected) {
                continue;
            }
            // Distribute the corrected pivot vector over the pivot edges in
            // their original proportions.
            let total: Q = pivot_idx.iter().map(|&i| base_len[i].clone()).sum();
            let mut edges = vec![(qz(), qz()); n];
            let mut dirs: Vec<Option<Vec2>> = vec![None; n];
            for (idx, &e) in jelems.iter().enumerate() {
                if subset::contains(pmask, e) {
                    let f = &base_len[idx] / &total;
                    edges[e] = scale2(&corrected, &f);
                } else {
                    edges[e] = scale2(&ray_of(e), &base_len[idx]);
                }
            }
            for e in 0..n {
                if !subset::contains(outer.j, e) {
                    dirs[e] = Some(ray_of(e));
                }
            }
            let Ok(pt) = PolygonPoint::new(edges, dirs) else {
                continue;
            };
            let Ok(lab) = classify(&pt) else { continue };
            if &lab == outer {
                return Ok(Some((pt, q_in)));
            }
        }
        t = &t / qi(4);
    }
    Ok(None)
}

/// Convexity of a full-support witness: all exterior turns counterclockwise.
pub fn is_convex_circuit(p: &PolygonPoint) -> bool {
    let n = p.len();
    if p.support() != subset::full_mask(n) {
        return false;
    }
    // Sort edges in circular order of direction and require each
    // consecutive cross (in circuit order) to be positive is wrong for a
    // general circuit; for a convex one, edges in index order after
    // classification rotation must turn left at every corner.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| ray_cmp(&p.ray(a), &p.ray(b)));
    (0..n).all(|t| {
        let a = p.ray(idx[t]);
        let b = p.ray(idx[(t + 1) % n]);
        let c = cross(&a, &b);
        c.is_positive() || (c.is_zero() && dot2(&a, &b).is_positive())
    })
}

/// Geometric oracle for cyclic refinement: coarse <= fine iff an angle
/// configuration of pattern `fine` degenerates onto one of pattern
/// `coarse`. Tries every rotation alignment, builds the perturbed
/// configuration, and checks both patterns through the exact circular
/// grouping of coamoeba::AngleVector.
pub fn refines_geometric_oracle(coarse: &CyclicPartition, fine: &CyclicPartition) -> bool {
    use crate::coamoeba::AngleVector;
    if coarse.ground() != fine.ground() {
        return false;
    }
    let p = coarse.k();
    let m = fine.k();
    if p > m {
        return false;
    }
    let n = coarse.ground().count_ones() as usize;
    for rot in 0..m {
        // Walk fine blocks from `rot`; they must fill coarse blocks in
        // cyclic coarse order starting at some coarse block.
        let first_owner = coarse
            .blocks()
            .iter()
            .position(|&cb| fine.blocks()[rot] & !cb == 0);
        let Some(first_owner) = first_owner else {
            return false; // some fine block crosses coarse blocks
        };
        let mut assignment: Vec<(usize, usize)> = Vec::with_capacity(m); // (coarse pos, run pos)
        let mut ok = true;
        let mut owner = first_owner;
        let mut covered: Mask = 0;
        let mut run = 0usize;
        for t in 0..m {
            let fb = fine.blocks()[(rot + t) % m];
            if fb & !coarse.blocks()[owner] != 0 {
                // move to the next coarse block
                if covered != coarse.blocks()[owner] {
                    ok = false;
                    break;
                }
                owner = (owner + 1) % p;
                covered = 0;
                run = 0;
                if fb & !coarse.blocks()[owner] != 0 {
                    ok = false;
                    break;
                }
            }
            covered |= fb;
            assignment.push((owner, run));
            run += 1;
        }
        if ok && covered != coarse.blocks()[owner] {
            ok = false;
        }
        if ok && (owner + 1) % p != first_owner && p > 1 {
            ok = false;
        }
        if !ok {
            continue;
        }
        // Realize: coarse block t at angle 2t/p, fine block at +run*eps.
        let eps = q(1, (10 * m * p) as i64);
        let mut coords = vec![qz(); n];
        let mut limit = vec![qz(); n];
        for (t, &(cpos, rpos)) in assignment.iter().enumerate() {
            let base = q(2 * cpos as i64, p as i64);
            let val = &base + qi(rpos as i64) * &eps;
            for e in subset::elems(fine.blocks()[(rot + t) % m]) {
                coords[e] = val.clone();
                limit[e] = base.clone();
            }
        }
        let fine_pattern = AngleVector::from_q(&coords).cyclic_pattern();
        let coarse_pattern = AngleVector::from_q(&limit).cyclic_pattern();
        if &fine_pattern == fine && &coarse_pattern == coarse {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::build_w;
    use crate::subset::mask_of;

    fn cp(blocks: &[&[usize]]) -> CyclicPartition {
        CyclicPartition::new(blocks.iter().map(|b| mask_of(b)).collect()).unwrap()
    }

    fn label(blocks: &[&[usize]], j: &[usize]) -> StratumLabel {
        StratumLabel::new(cp(blocks), mask_of(j)).unwrap()
    }

    #[test]
    fn classify_triangle() {
        let p = PolygonPoint::from_edges(vec![
            (qi(1), qz()),
            (q(-1, 2), qi(1)),
            (q(-1, 2), qi(-1)),
        ])
        .unwrap();
        let lab = classify(&p).unwrap();
        assert_eq!(lab, label(&[&[0], &[1], &[2]], &[0, 1, 2]));
    }

    #[test]
    fn classify_degenerate_two_gon() {
        let p = PolygonPoint::new(
            vec![(qi(1), qz()), (qi(-1), qz()), (qz(), qz())],
            vec![None, None, Some((qi(-1), qz()))],
        )
        .unwrap();
        let lab = classify(&p).unwrap();
        assert_eq!(lab, label(&[&[0], &[1, 2]], &[0, 1]));
    }

    #[test]
    fn classify_right_triangle_convex() {
        let p = PolygonPoint::from_edges(vec![
            (qi(1), qz()),
            (qz(), qi(1)),
            (qi(-1), qi(-1)),
        ])
        .unwrap();
        let lab = classify(&p).unwrap();
        assert_eq!(lab, label(&[&[0], &[1], &[2]], &[0, 1, 2]));
        assert!(is_convex_circuit(&p));
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(matches!(
            PolygonPoint::from_edges(vec![(qi(1), qz()), (qi(1), qz())]),
            Err(PantsError::NotClosed)
        ));
        assert!(matches!(
            PolygonPoint::new(
                vec![(qi(1), qz()), (qi(-1), qz()), (qz(), qz())],
                vec![None, None, None]
            ),
            Err(PantsError::ZeroEdgeWithoutDirection(2))
        ));
    }

    #[test]
    fn witness_two_gon() {
        let lab = label(&[&[0], &[1]], &[0, 1]);
        let w = witness(&lab).unwrap();
        assert_eq!(classify(&w).unwrap(), lab);
        assert!(antipodal_ray(&w.ray(0), &w.ray(1)));
    }

    #[test]
    fn witness_round_trip_all_w_n_le_3() {
        for n in 1..=3usize {
            let w = build_w(n);
            for lab in &w.labels {
                let p = witness(lab).unwrap_or_else(|e| panic!("witness {lab}: {e}"));
                assert_eq!(&classify(&p).unwrap(), lab, "round trip at {lab}");
            }
        }
    }

    #[test]
    fn witness_maximal_is_convex() {
        for n in 2..=4usize {
            let ground: Vec<usize> = (0..=n).collect();
            let sigma = CyclicPartition::singletons(&ground);
            let lab = StratumLabel::new(sigma, subset::full_mask(n + 1)).unwrap();
            let p = witness(&lab).unwrap();
            assert!(is_convex_circuit(&p), "n={n}");
        }
    }

    #[test]
    fn closure_order_hexagon() {
        let w = build_w(2);
        let top = label(&[&[0], &[1], &[2]], &[0, 1, 2]);
        let mut below = 0;
        for lab in &w.labels {
            if lab.rank() == 0 && closure_contains(&top, lab).unwrap() {
                below += 1;
            }
        }
        assert_eq!(below, 6, "hexagon has six vertices");
        // A rank-0 label under the other cyclic order but not this one.
        let other = label(&[&[0], &[2], &[1]], &[0, 1, 2]);
        assert!(closure_contains(&other, &other).unwrap());
        assert_ne!(top, other);
    }

    #[test]
    fn deformation_certificates_n2() {
        let w = build_w(2);
        for a in &w.labels {
            for b in &w.labels {
                if closure_contains(a, b).unwrap() {
                    let cert = closure_deformation_certificate(a, b, 6).unwrap();
                    assert!(cert.is_some(), "no certificate for {b} <= {a}");
                    let (p, q) = cert.unwrap();
                    assert_eq!(&classify(&p).unwrap(), a);
                    assert_eq!(&classify(&q).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn geometric_refines_oracle_agrees_n_le_3() {
        for n in 1..=3usize {
            let parts = crate::cyclic::enumerate_cyclic_partitions(n);
            for a in &parts {
                for b in &parts {
                    assert_eq!(
                        refines(a, b).unwrap(),
                        refines_geometric_oracle(a, b),
                        "{a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn arg_map_directions() {
        let p = PolygonPoint::new(
            vec![(qi(1), qz()), (qi(-1), qz()), (qz(), qz())],
            vec![None, None, Some((qi(-1), qz()))],
        )
        .unwrap();
        let rays = p.arg_map();
        assert!(same_ray(&rays[1], &rays[2]));
        assert!(antipodal_ray(&rays[0], &rays[1]));
    }
}
