//! Marked polytopes, coherent subdivisions from rational liftings, tropical
//! polynomials with their dual hypersurfaces, the tropical hyperplane fan,
//! moment maps over explicit rational weights, and lattice kernels.

use crate::intmat::{self, ZMat};
use crate::linalg::{self, QMat, QVec};
use crate::polyhedra::{self, LinSystem};
use crate::qnum::{qi, qz, Q, Z};
use crate::subset::{self, Mask};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropError {
    EmptyPointSet,
    BadLifting(String),
    Degenerate(String),
    BadSubset(String),
}

impl fmt::Display for TropError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropError::EmptyPointSet => write!(f, "empty point set"),
            TropError::BadLifting(s) => write!(f, "bad lifting: {s}"),
            TropError::Degenerate(s) => write!(f, "degenerate input: {s}"),
            TropError::BadSubset(s) => write!(f, "bad subset: {s}"),
        }
    }
}

impl std::error::Error for TropError {}

pub type LatticePoint = Vec<i64>;

/// A finite lattice point set with its convex hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPolytope {
    points: Vec<LatticePoint>,
    hull_vertices: Vec<usize>,
    dim: usize,
}

fn to_q(p: &[i64]) -> QVec {
    p.iter().map(|&x| qi(x)).collect()
}

impl MarkedPolytope {
    pub fn new(points: Vec<LatticePoint>) -> Result<MarkedPolytope, TropError> {
        if points.is_empty() {
            return Err(TropError::EmptyPointSet);
        }
        let d = points[0].len();
        if points.iter().any(|p| p.len() != d) {
            return Err(TropError::Degenerate("mixed dimensions".into()));
        }
        let mut dedup = points.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != points.len() {
            return Err(TropError::Degenerate("repeated points".into()));
        }
        let qpts: Vec<QVec> = points.iter().map(|p| to_q(p)).collect();
        let hull_vertices = polyhedra::extreme_points(&qpts);
        let dim = polyhedra::affine_dim(&qpts);
        Ok(MarkedPolytope {
            points,
            hull_vertices,
            dim,
        })
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hull_vertices(&self) -> &[usize] {
        &self.hull_vertices
    }

    /// Normalized volume n! vol for full-dimensional polytopes, via a
    /// triangulation from the zero lifting perturbed lexicographically --
    /// here simply the sum of |det| over the cells of any triangulation; we
    /// use the pulling triangulation at the lexicographically least point.
    pub fn normalized_volume(&self) -> Z {
        let d = self.ambient_dim();
        assert_eq!(self.dim, d, "normalized volume needs full dimension");
        // Pulling triangulation: recurse on facets not containing the apex.
        // Desk scale: sum |det| over all d-subsets of hull vertices that
        // triangulate via a placing order is error prone; instead use the
        // lifted subdivision with a generic lifting, which is a coherent
        // triangulation almost surely; retry with another lifting on a
        // non-simplex cell.
        let mut salt: i64 = 1;
        loop {
            let lift: Vec<Q> = self
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut h = qz();
                    for (t, &x) in p.iter().enumerate() {
                        h += qi(x * x * (t as i64 + salt) + x * salt);
                    }
                    h + qi((i as i64 * salt) % 7)
                })
                .collect();
            let lifting = Lifting { eta: lift };
            let sub = regular_subdivision(self, &lifting).expect("valid lifting");
            if sub.is_triangulation {
                let mut vol = Z::zero();
                for cell in &sub.maximal_cells {
                    let pts: Vec<&LatticePoint> =
                        cell.marked.iter().map(|&i| &self.points[i]).collect();
                    let rows: ZMat = (1..pts.len())
                        .map(|i| {
                            (0..d)
                                .map(|t| Z::from(pts[i][t] - pts[0][t]))
                                .collect()
                        })
                        .collect();
                    vol += det_z(&rows).abs();
                }
                return vol;
            }
            salt += 1;
        }
    }
}

fn det_z(m: &ZMat) -> Z {
    // Fraction-free Gaussian elimination (Bareiss) on a small matrix.
    let n = m.len();
    if n == 0 {
        return Z::from(1);
    }
    let mut a = m.clone();
    let mut sign = Z::from(1);
    let mut prev = Z::from(1);
    for t in 0..n {
        if a[t][t].is_zero() {
            let Some(p) = (t + 1..n).find(|&i| !a[i][t].is_zero()) else {
                return Z::zero();
            };
            a.swap(t, p);
            sign = -sign;
        }
        for i in t + 1..n {
            for j in t + 1..n {
                let v = (&a[t][t] * &a[i][j] - &a[i][t] * &a[t][j]) / &prev;
                a[i][j] = v;
            }
            a[i][t] = Z::zero();
        }
        prev = a[t][t].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// A rational height function on the marked points.
#[derive(Debug, Clone)]
pub struct Lifting {
    pub eta: Vec<Q>,
}

impl Lifting {
    pub fn zero(mp: &MarkedPolytope) -> Lifting {
        Lifting {
            eta: vec![qz(); mp.points().len()],
        }
    }

    pub fn from_ints(vals: &[i64]) -> Lifting {
        Lifting {
            eta: vals.iter().map(|&v| qi(v)).collect(),
        }
    }
}

/// A cell of a subdivision: the marked subset (indices into the parent
/// point set that lift onto vertices of the lower face) and its dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubCell {
    pub marked: Vec<usize>,
    pub dim: usize,
}

/// The regular subdivision induced by a lifting: maximal cells are the
/// projections of the bounded lower facets, the face lattice collects all
/// their faces.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub maximal_cells: Vec<SubCell>,
    /// All cells including faces, deduplicated, ordered by (dim, marked).
    pub cells: Vec<SubCell>,
    pub is_triangulation: bool,
}

/// Lower-hull computation by facet pivoting with exact arithmetic: find one
/// lower facet by rotating a supporting hyperplane, then walk across ridges.
pub fn regular_subdivision(
    mp: &MarkedPolytope,
    lifting: &Lifting,
) -> Result<Subdivision, TropError> {
    if lifting.eta.len() != mp.points().len() {
        return Err(TropError::BadLifting(format!(
            "{} heights for {} points",
            lifting.eta.len(),
            mp.points().len()
        )));
    }
    let d_amb = mp.ambient_dim();
    let pts: Vec<QVec> = mp.points().iter().map(|p| to_q(p)).collect();
    let n = pts.len();
    let eta = &lifting.eta;

    // Work inside the affine hull: pick affine coordinates.
    let basis = affine_basis(&pts);
    let coords: Vec<QVec> = pts.iter().map(|p| affine_coords(p, &pts[0], &basis)).collect();
    let d = basis.len();

    // A lower face is the tight set of an affine functional l with
    // eta_i >= l(coords_i) for all i. Find the first one by lifting a
    // horizontal plane and rotating it onto points.
    let mut lin = vec![qz(); d];
    let mut c = eta.iter().min().expect("nonempty").clone();
    let mut tight: Vec<usize> = (0..n).filter(|&i| eta[i] == c).collect();
    loop {
        let tdim = polyhedra::affine_dim(
            &tight.iter().map(|&i| coords[i].clone()).collect::<Vec<_>>(),
        );
        if tdim == d {
            break;
        }
        // Rotate around the affine span of the tight set.
        let diffs: QMat = tight[1..]
            .iter()
            .map(|&i| polyhedra::sub(&coords[i], &coords[tight[0]]))
            .collect();
        let ker = kernel_dim_aware(&diffs, d);
        let u = ker
            .into_iter()
            .find(|u| {
                (0..n).any(|i| !linalg::dot(u, &polyhedra::sub(&coords[i], &coords[tight[0]])).is_zero())
            })
            .expect("tight set not full-dimensional");
        // slack_i >= t * u(p_i - p0) constrains t on both sides.
        let mut best_t: Option<Q> = None;
        let mut flip = false;
        for pass in 0..2 {
            let uu: QVec = if pass == 0 {
                u.clone()
            } else {
                u.iter().map(|x| -x.clone()).collect()
            };
            let mut bound: Option<Q> = None;
            for i in 0..n {
                let g = linalg::dot(&uu, &polyhedra::sub(&coords[i], &coords[tight[0]]));
                if g.is_positive() {
                    let slack = &eta[i] - (linalg::dot(&lin, &coords[i]) + &c);
                    let t = &slack / &g;
                    if bound.as_ref().map_or(true, |b| &t < b) {
                        bound = Some(t);
                    }
                }
            }
            if let Some(b) = bound {
                best_t = Some(b);
                flip = pass == 1;
                break;
            }
        }
        let t = best_t.expect("points on some side");
        let uu: QVec = if flip {
            u.iter().map(|x| -x.clone()).collect()
        } else {
            u
        };
        // New functional: l'(x) = l(x) + t * u(x - p0)
        let shift = linalg::dot(&uu, &coords[tight[0]]);
        for idx in 0..d {
            lin[idx] += &t * &uu[idx];
        }
        c -= &t * &shift;
        tight = (0..n)
            .filter(|&i| eta[i] == linalg::dot(&lin, &coords[i]) + &c)
            .collect();
        debug_assert!((0..n).all(|i| eta[i] >= linalg::dot(&lin, &coords[i]) + &c));
    }

    // Breadth-first walk over lower facets via ridge pivots.
    let mut facets: BTreeMap<Vec<usize>, (QVec, Q)> = BTreeMap::new();
    let mut queue = vec![(tight.clone(), (lin.clone(), c.clone()))];
    facets.insert(tight, (lin, c));
    while let Some((t_set, (flin, fc))) = queue.pop() {
        let tpts: Vec<QVec> = t_set.iter().map(|&i| coords[i].clone()).collect();
        // Ridges: facets of the d-polytope conv(tpts) inside its hyperplane.
        for ridge in polytope_facets(&tpts) {
            let ridge_set: Vec<usize> = ridge.iter().map(|&r| t_set[r]).collect();
            // Pivot: l' = l + s*w with w vanishing on the ridge, positive on
            // the rest of the facet; increase s until a new point is tight.
            let rpts: QMat = ridge_set[1..]
                .iter()
                .map(|&i| polyhedra::sub(&coords[i], &coords[ridge_set[0]]))
                .collect();
            let ker = kernel_dim_aware(&rpts, d);
            // w in the kernel, normalized positive on facet points off ridge.
            let off = t_set
                .iter()
                .find(|i| !ridge_set.contains(i))
                .copied()
                .expect("facet has points off each ridge");
            let mut w = ker
                .into_iter()
                .find(|w| {
                    !linalg::dot(w, &polyhedra::sub(&coords[off], &coords[ridge_set[0]])).is_zero()
                })
                .expect("ridge has codimension one in the facet");
            if linalg::dot(&w, &polyhedra::sub(&coords[off], &coords[ridge_set[0]])).is_negative()
            {
                w = w.iter().map(|x| -x.clone()).collect();
            }
            let mut bound: Option<(Q, Vec<usize>)> = None;
            for i in 0..n {
                if t_set.contains(&i) {
                    continue;
                }
                let g = linalg::dot(&w, &polyhedra::sub(&coords[i], &coords[ridge_set[0]]));
                if g.is_negative() {
                    let slack = &eta[i] - (linalg::dot(&flin, &coords[i]) + &fc);
                    let s = &slack / &(-g.clone());
                    match &mut bound {
                        None => bound = Some((s, vec![i])),
                        Some((bs, list)) => {
                            if &s < bs {
                                *bs = s;
                                *list = vec![i];
                            } else if &s == bs {
                                list.push(i);
                            }
                        }
                    }
                }
            }
            let Some((s, _)) = bound else {
                continue; // unbounded pivot: boundary ridge of the lower hull
            };
            // New supporting functional.
            let shift = linalg::dot(&w, &coords[ridge_set[0]]);
            let nlin: QVec = (0..d).map(|idx| &flin[idx] - &s * &w[idx]).collect();
            let nc = &fc + &s * &shift;
            let ntight: Vec<usize> = (0..n)
                .filter(|&i| eta[i] == linalg::dot(&nlin, &coords[i]) + &nc)
                .collect();
            debug_assert!((0..n).all(|i| eta[i] >= linalg::dot(&nlin, &coords[i]) + &nc));
            if !facets.contains_key(&ntight) {
                facets.insert(ntight.clone(), (nlin.clone(), nc.clone()));
                queue.push((ntight, (nlin, nc)));
            }
        }
    }

    let mut maximal_cells: Vec<SubCell> = facets
        .keys()
        .map(|tset| {
            let marked = lifted_vertices(tset, &coords, eta);
            SubCell {
                dim: polyhedra::affine_dim(
                    &marked.iter().map(|&i| coords[i].clone()).collect::<Vec<_>>(),
                ),
                marked,
            }
        })
        .collect();
    maximal_cells.sort();
    maximal_cells.dedup();

    // Full face lattice: faces of cells, recursively.
    let mut all: BTreeSet<SubCell> = BTreeSet::new();
    let mut stack: Vec<SubCell> = maximal_cells.clone();
    while let Some(cell) = stack.pop() {
        if !all.insert(cell.clone()) {
            continue;
        }
        let cpts: Vec<QVec> = cell.marked.iter().map(|&i| coords[i].clone()).collect();
        if cell.dim == 0 {
            continue;
        }
        for face in polytope_facets(&cpts) {
            let marked: Vec<usize> = face.iter().map(|&r| cell.marked[r]).collect();
            let fdim = polyhedra::affine_dim(
                &marked.iter().map(|&i| coords[i].clone()).collect::<Vec<_>>(),
            );
            stack.push(SubCell { marked, dim: fdim });
        }
    }
    let cells: Vec<SubCell> = all.into_iter().collect();
    let is_triangulation = maximal_cells
        .iter()
        .all(|cellm| cellm.marked.len() == cellm.dim + 1);
    let _ = d_amb;
    Ok(Subdivision {
        maximal_cells,
        cells,
        is_triangulation,
    })
}

/// Vertices of the lifted lower face with the given tight set: the points
/// that are extreme among the lifted tight points.
fn lifted_vertices(tset: &[usize], coords: &[QVec], eta: &[Q]) -> Vec<usize> {
    let lifted: Vec<QVec> = tset
        .iter()
        .map(|&i| {
            let mut v = coords[i].clone();
            v.push(eta[i].clone());
            v
        })
        .collect();
    let ex = polyhedra::extreme_points(&lifted);
    let mut out: Vec<usize> = ex.iter().map(|&r| tset[r]).collect();
    out.sort_unstable();
    out
}

/// Right kernel with the column count supplied, so empty systems work.
fn kernel_dim_aware(rows: &QMat, cols: usize) -> Vec<QVec> {
    if rows.is_empty() {
        return (0..cols)
            .map(|i| {
                let mut v = vec![qz(); cols];
                v[i] = qi(1);
                v
            })
            .collect();
    }
    linalg::kernel(rows)
}

/// Facets of conv(points) as index sets, by exhaustive supporting-subset
/// scan inside the affine hull. Desk scale only.
fn polytope_facets(points: &[QVec]) -> Vec<Vec<usize>> {
    let n = points.len();
    let basis = affine_basis(points);
    let d = basis.len();
    if d == 0 {
        return vec![];
    }
    let coords: Vec<QVec> = points
        .iter()
        .map(|p| affine_coords(p, &points[0], &basis))
        .collect();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for combo in (0..n).combinations(d) {
        let diffs: QMat = combo[1..]
            .iter()
            .map(|&i| polyhedra::sub(&coords[i], &coords[combo[0]]))
            .collect();
        if linalg::rank(&diffs) != d - 1 {
            continue;
        }
        let ker = kernel_dim_aware(&diffs, d);
        let normal = ker
            .iter()
            .find(|u| u.iter().any(|x| !x.is_zero()))
            .expect("kernel has a nonzero vector")
            .clone();
        let vals: Vec<Q> = coords
            .iter()
            .map(|p| linalg::dot(&normal, &polyhedra::sub(p, &coords[combo[0]])))
            .collect();
        let pos = vals.iter().any(|v| v.is_positive());
        let neg = vals.iter().any(|v| v.is_negative());
        if pos && neg {
            continue;
        }
        let tight: Vec<usize> = (0..n).filter(|&i| vals[i].is_zero()).collect();
        if tight.len() >= d {
            out.insert(tight);
        }
    }
    out.into_iter().collect()
}

fn affine_basis(points: &[QVec]) -> Vec<QVec> {
    let mut basis: Vec<QVec> = vec![];
    for p in &points[1..] {
        let v = polyhedra::sub(p, &points[0]);
        let mut m: QMat = basis.clone();
        m.push(v.clone());
        if linalg::rank(&m) > basis.len() {
            basis.push(v);
        }
    }
    basis
}

fn affine_coords(p: &QVec, origin: &QVec, basis: &[QVec]) -> QVec {
    if basis.is_empty() {
        return vec![];
    }
    let diff = polyhedra::sub(p, origin);
    // Solve basis^T coeffs = diff in the least-norm sense; the system is
    // consistent because p lies in the affine hull.
    let cols = basis.len();
    let rows = diff.len();
    let mut m: QMat = vec![vec![qz(); cols]; rows];
    for (j, b) in basis.iter().enumerate() {
        for i in 0..rows {
            m[i][j] = b[i].clone();
        }
    }
    linalg::solve(&m, &diff).expect("point lies in the affine hull")
}

// ---------------------------------------------------------------------------
// Tropical polynomial and hypersurface

/// F(x) = max(a(x) - eta(a)); one polyhedron per positive-dimensional cell
/// of the subdivision, cut out by the tie and domination constraints.
#[derive(Debug, Clone)]
pub struct TropicalFace {
    pub cell: SubCell,
    pub system: LinSystem,
    pub dim: usize,
    pub bounded: bool,
}

#[derive(Debug, Clone)]
pub struct TropicalHypersurfaceModel {
    pub faces: Vec<TropicalFace>,
    pub n: usize,
}

pub fn tropical_hypersurface(
    mp: &MarkedPolytope,
    lifting: &Lifting,
) -> Result<TropicalHypersurfaceModel, TropError> {
    let sub = regular_subdivision(mp, lifting)?;
    let n = mp.ambient_dim();
    let mut faces = vec![];
    for cell in &sub.cells {
        if cell.dim == 0 {
            continue;
        }
        let sys = dual_face_system(mp, lifting, &cell.marked);
        let dim = sys.dimension();
        let bounded = sys.is_bounded_nonempty();
        if let Some(dim) = dim {
            faces.push(TropicalFace {
                cell: cell.clone(),
                system: sys,
                dim,
                bounded,
            });
        }
    }
    Ok(TropicalHypersurfaceModel { faces, n })
}

/// The dual polyhedron of a marked cell: points where exactly the cell's
/// monomials attain the maximum.
pub fn dual_face_system(mp: &MarkedPolytope, lifting: &Lifting, marked: &[usize]) -> LinSystem {
    let n = mp.ambient_dim();
    let mut sys = LinSystem::new(n);
    let a0 = marked[0];
    for &a in &marked[1..] {
        let coeffs: QVec = (0..n)
            .map(|t| qi(mp.points()[a][t] - mp.points()[a0][t]))
            .collect();
        sys.eq(coeffs, &lifting.eta[a] - &lifting.eta[a0]);
    }
    for b in 0..mp.points().len() {
        if marked.contains(&b) {
            continue;
        }
        // a0(x) - eta(a0) >= b(x) - eta(b)
        let coeffs: QVec = (0..n)
            .map(|t| qi(mp.points()[a0][t] - mp.points()[b][t]))
            .collect();
        sys.ge(coeffs, &lifting.eta[a0] - &lifting.eta[b]);
    }
    sys
}

/// Evaluate the tropical polynomial at a rational point.
pub fn tropical_eval(mp: &MarkedPolytope, lifting: &Lifting, x: &[Q]) -> Q {
    mp.points()
        .iter()
        .zip(&lifting.eta)
        .map(|(a, h)| linalg::dot(&to_q(a), x) - h)
        .max()
        .expect("nonempty")
}

// ---------------------------------------------------------------------------
// The tropical hyperplane fan

/// The cone P_I (|I| >= 2) of the fan: x_i = x_j >= x_k for i,j in I,
/// k outside, in homogeneous coordinates gauged at x_0 = 0.
pub fn fan_cone_system(n: usize, i_set: Mask) -> Result<LinSystem, TropError> {
    if subset::card(i_set) < 2 {
        return Err(TropError::BadSubset("|I| >= 2 required".into()));
    }
    let m = n + 1;
    let mut sys = LinSystem::new(m);
    let ivec = subset::elems(i_set);
    for &i in &ivec[1..] {
        let mut a = vec![qz(); m];
        a[i] = qi(1);
        a[ivec[0]] = a[ivec[0]].clone() - qi(1);
        sys.eq(a, qz());
    }
    for k in 0..m {
        if subset::contains(i_set, k) {
            continue;
        }
        let mut a = vec![qz(); m];
        a[ivec[0]] = qi(1);
        a[k] = qi(-1);
        sys.ge(a, qz());
    }
    let mut g = vec![qz(); m];
    g[0] = qi(1);
    sys.eq(g, qz());
    Ok(sys)
}

/// The compactified face P_{I,I'} inside the moment simplex: barycentric
/// coordinates supported on I', equal and maximal on I.
pub fn fan_face_system(n: usize, i_set: Mask, i_prime: Mask) -> Result<LinSystem, TropError> {
    if subset::card(i_set) < 2 {
        return Err(TropError::BadSubset("|I| >= 2 required".into()));
    }
    if i_set & !i_prime != 0 {
        return Err(TropError::BadSubset("I must lie in I'".into()));
    }
    let m = n + 1;
    let mut sys = LinSystem::new(m);
    let ivec = subset::elems(i_set);
    let mut ones = vec![qz(); m];
    for t in 0..m {
        ones[t] = qi(1);
    }
    sys.eq(ones, qi(1));
    for t in 0..m {
        if !subset::contains(i_prime, t) {
            let mut a = vec![qz(); m];
            a[t] = qi(1);
            sys.eq(a, qz());
        } else {
            let mut a = vec![qz(); m];
            a[t] = qi(1);
            sys.ge(a, qz());
        }
    }
    for &i in &ivec[1..] {
        let mut a = vec![qz(); m];
        a[i] = qi(1);
        a[ivec[0]] = a[ivec[0]].clone() - qi(1);
        sys.eq(a, qz());
    }
    for k in subset::elems(i_prime & !i_set) {
        let mut a = vec![qz(); m];
        a[ivec[0]] = qi(1);
        a[k] = qi(-1);
        sys.ge(a, qz());
    }
    Ok(sys)
}

/// dim P_{I,I'} = |I'| - |I|.
pub fn fan_face_dim(n: usize, i_set: Mask, i_prime: Mask) -> Result<usize, TropError> {
    let sys = fan_face_system(n, i_set, i_prime)?;
    sys.dimension()
        .ok_or_else(|| TropError::Degenerate("empty face".into()))
}

/// Closure incidence: P_{I,I'} is a face of the closed P_{K,K'} iff K <= I
/// and I' <= K'.
pub fn fan_face_incident(i_set: Mask, i_prime: Mask, k_set: Mask, k_prime: Mask) -> bool {
    k_set & !i_set == 0 && i_prime & !k_prime == 0
}

// ---------------------------------------------------------------------------
// Moment maps with explicit rational weights

/// Weights w_i standing for e^{x_i}: the interior point of the simplex.
pub fn moment_simplex(weights: &[Q]) -> Result<QVec, TropError> {
    if weights.is_empty() || weights.iter().any(|w| !w.is_positive()) {
        return Err(TropError::Degenerate("weights must be positive".into()));
    }
    let total: Q = weights.iter().cloned().sum();
    Ok(weights.iter().map(|w| w / &total).collect())
}

/// mu(z) = sum |z^a| a / sum |z^a| with |z^a| given as positive weights.
pub fn moment_mu(mp: &MarkedPolytope, weights: &[Q]) -> Result<QVec, TropError> {
    if weights.len() != mp.points().len() {
        return Err(TropError::Degenerate("one weight per marked point".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(TropError::Degenerate("weights must be positive".into()));
    }
    let total: Q = weights.iter().cloned().sum();
    let n = mp.ambient_dim();
    let mut out = vec![qz(); n];
    for (a, w) in mp.points().iter().zip(weights) {
        for t in 0..n {
            out[t] += qi(a[t]) * w;
        }
    }
    Ok(out.into_iter().map(|x| x / &total).collect())
}

// ---------------------------------------------------------------------------
// Lattice kernels and saturation

#[derive(Debug, Clone)]
pub struct LatticeData {
    /// Basis of N(A) = vectors killed by all differences of A.
    pub kernel_basis: Vec<Vec<Z>>,
    /// Invariant factors of the difference lattice inside its saturation.
    pub saturation_factors: Vec<Z>,
    /// Index of the difference lattice in its saturation.
    pub saturation_index: Z,
}

pub fn lattice_n_of_a(mp: &MarkedPolytope) -> LatticeData {
    let pts = mp.points();
    let n = mp.ambient_dim();
    let rows: ZMat = pts[1..]
        .iter()
        .map(|p| (0..n).map(|t| Z::from(p[t] - pts[0][t])).collect())
        .collect();
    if rows.is_empty() {
        return LatticeData {
            kernel_basis: (0..n)
                .map(|i| (0..n).map(|j| Z::from((i == j) as i64)).collect())
                .collect(),
            saturation_factors: vec![],
            saturation_index: Z::from(1),
        };
    }
    let snf = intmat::smith_normal_form(&rows);
    let rank = snf.diag.iter().filter(|d| !d.is_zero()).count();
    // Kernel: columns of V past the rank.
    let vcols = snf.v.len();
    let kernel_basis: Vec<Vec<Z>> = (rank..vcols)
        .map(|j| (0..vcols).map(|i| snf.v[i][j].clone()).collect())
        .collect();
    let saturation_factors: Vec<Z> = snf.diag[..rank]
        .iter()
        .filter(|d| **d != Z::from(1))
        .cloned()
        .collect();
    let saturation_index = snf.diag[..rank]
        .iter()
        .fold(Z::from(1), |acc, d| acc * d);
    LatticeData {
        kernel_basis,
        saturation_factors,
        saturation_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::q;

    fn mp(pts: &[&[i64]]) -> MarkedPolytope {
        MarkedPolytope::new(pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    /// Oracle: all supporting hyperplanes from lifted point subsets.
    fn lower_cells_oracle(m: &MarkedPolytope, lift: &Lifting) -> Vec<Vec<usize>> {
        let n = m.points().len();
        let pts: Vec<QVec> = m
            .points()
            .iter()
            .map(|p| {
                let mut v = to_q(p);
                v.push(qz());
                v
            })
            .collect();
        let lifted: Vec<QVec> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut v = p.clone();
                let last = v.len() - 1;
                v[last] = lift.eta[i].clone();
                v
            })
            .collect();
        let d = m.dim();
        let mut best: Vec<Vec<usize>> = vec![];
        for size in 1..=(d + 1) {
            for combo in (0..n).combinations(size) {
                // affine span of the lifted combo must be non-vertical and
                // supporting from below
                let diffs: QMat = combo[1..]
                    .iter()
                    .map(|&i| polyhedra::sub(&lifted[i], &lifted[combo[0]]))
                    .collect();
                if linalg::rank(&diffs) + 1 != combo.len() {
                    continue;
                }
                // Solve for l: eta_i = l(x_i) + c on the combo.
                let amb = m.ambient_dim();
                let mut mrows: QMat = vec![];
                let mut rhs: QVec = vec![];
                for &i in &combo {
                    let mut row = to_q(&m.points()[i]);
                    row.push(qi(1));
                    mrows.push(row);
                    rhs.push(lift.eta[i].clone());
                }
                let Some(sol) = linalg::solve(&mrows, &rhs) else {
                    continue;
                };
                let supports = (0..n).all(|i| {
                    let val = linalg::dot(&sol[..amb], &to_q(&m.points()[i])) + &sol[amb];
                    lift.eta[i] >= val
                });
                if supports {
                    let tight: Vec<usize> = (0..n)
                        .filter(|&i| {
                            let val =
                                linalg::dot(&sol[..amb], &to_q(&m.points()[i])) + &sol[amb];
                            lift.eta[i] == val
                        })
                        .collect();
                    let tq: Vec<QVec> = tight.iter().map(|&i| to_q(&m.points()[i])).collect();
                    if polyhedra::affine_dim(&tq) == d {
                        let marked = lifted_vertices(
                            &tight,
                            &m.points().iter().map(|p| to_q(p)).collect::<Vec<_>>(),
                            &lift.eta,
                        );
                        if !best.contains(&marked) {
                            best.push(marked);
                        }
                    }
                }
            }
        }
        best.sort();
        best
    }

    #[test]
    fn square_no_lift_single_cell() {
        let m = mp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let sub = regular_subdivision(&m, &Lifting::zero(&m)).unwrap();
        assert_eq!(sub.maximal_cells.len(), 1);
        assert_eq!(sub.maximal_cells[0].marked, vec![0, 1, 2, 3]);
        assert!(!sub.is_triangulation);
    }

    #[test]
    fn square_one_lifted_corner() {
        let m = mp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let sub = regular_subdivision(&m, &Lifting::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(sub.maximal_cells.len(), 2);
        assert!(sub.is_triangulation);
    }

    /// Points {(0,0),(1,0),(0,1),(2,3)} with height 1 at (2,3): the two
    /// triangles of the worked example.
    #[test]
    fn worked_example_triangulation() {
        let m = mp(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        let lift = Lifting::from_ints(&[0, 0, 0, 1]);
        let sub = regular_subdivision(&m, &lift).unwrap();
        assert!(sub.is_triangulation);
        let cells: Vec<Vec<usize>> = sub.maximal_cells.iter().map(|c| c.marked.clone()).collect();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        // Exhaustive lower-hull oracle agrees.
        assert_eq!(lower_cells_oracle(&m, &lift), cells);
    }

    #[test]
    fn oracle_cross_check_battery() {
        let cases: Vec<(MarkedPolytope, Lifting)> = vec![
            (
                mp(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
                Lifting::from_ints(&[0, 0, 0, 1]),
            ),
            (
                mp(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]]),
                Lifting::from_ints(&[0, 0, 0, -1]),
            ),
            (
                mp(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]),
                Lifting::from_ints(&[0, 1, 0, 0]),
            ),
            (
                mp(&[&[0], &[1], &[2], &[3]]),
                Lifting::from_ints(&[0, -1, -1, 0]),
            ),
            (
                mp(&[&[0, 0], &[1, 0], &[0, 1]]),
                Lifting::from_ints(&[3, 3, 3]),
            ),
        ];
        for (m, lift) in &cases {
            let sub = regular_subdivision(m, lift).unwrap();
            let cells: Vec<Vec<usize>> =
                sub.maximal_cells.iter().map(|c| c.marked.clone()).collect();
            assert_eq!(&lower_cells_oracle(m, lift), &cells);
        }
    }

    #[test]
    fn interior_point_dropped_from_marking() {
        // Collinear points with a flat lift: the middle point lies on the
        // lower face but is not a vertex of it.
        let m = mp(&[&[0], &[1], &[2]]);
        let sub = regular_subdivision(&m, &Lifting::zero(&m)).unwrap();
        assert_eq!(sub.maximal_cells.len(), 1);
        assert_eq!(sub.maximal_cells[0].marked, vec![0, 2]);
    }

    #[test]
    fn worked_example_tropical_curve() {
        let m = mp(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        let lift = Lifting::from_ints(&[0, 0, 0, 1]);
        let model = tropical_hypersurface(&m, &lift).unwrap();
        let verts: Vec<&TropicalFace> = model.faces.iter().filter(|f| f.dim == 0).collect();
        let edges: Vec<&TropicalFace> = model.faces.iter().filter(|f| f.dim == 1).collect();
        assert_eq!(verts.len(), 2);
        assert_eq!(edges.len(), 5);
        assert_eq!(edges.iter().filter(|f| f.bounded).count(), 1);
        assert_eq!(edges.iter().filter(|f| !f.bounded).count(), 4);
        // The two vertices: duals of the maximal simplices.
        let mut vcoords: Vec<QVec> = verts
            .iter()
            .map(|f| f.system.vertices().pop().unwrap())
            .collect();
        vcoords.sort();
        assert_eq!(vcoords[0], vec![qz(), qz()]);
        assert_eq!(vcoords[1], vec![q(1, 4), q(1, 4)]);
    }

    #[test]
    fn simplex_zero_lift_is_hyperplane_fan() {
        // A = {0, e1, .., en}, eta = 0: one vertex at the origin and
        // 2^(n+1) - n - 2 positive-dimensional dual faces (one per subset
        // of size >= 2 of the monomials).
        for n in 2..=4usize {
            let mut pts: Vec<Vec<i64>> = vec![vec![0; n]];
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = 1;
                pts.push(e);
            }
            let m = MarkedPolytope::new(pts).unwrap();
            let model = tropical_hypersurface(&m, &Lifting::zero(&m)).unwrap();
            assert_eq!(model.faces.iter().filter(|f| f.dim == 0).count(), 1);
            let expected = (1usize << (n + 1)) - (n + 1) - 1;
            assert_eq!(model.faces.len(), expected);
            // The vertex sits at the origin.
            let v = model
                .faces
                .iter()
                .find(|f| f.dim == 0)
                .unwrap()
                .system
                .vertices()
                .pop()
                .unwrap();
            assert!(v.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn single_point_has_empty_hypersurface() {
        let m = mp(&[&[3, 5]]);
        let model = tropical_hypersurface(&m, &Lifting::zero(&m)).unwrap();
        assert!(model.faces.is_empty());
    }

    #[test]
    fn fan_cones() {
        // n=2, I={0,1}: a ray in the gauged coordinates.
        let sys = fan_cone_system(2, subset::mask_of(&[0, 1])).unwrap();
        assert_eq!(sys.dimension(), Some(1));
        assert!(!sys.is_bounded_nonempty());
        // The vertex cone P_{012} is the origin.
        let v = fan_cone_system(2, subset::mask_of(&[0, 1, 2])).unwrap();
        assert_eq!(v.dimension(), Some(0));
        assert!(fan_cone_system(2, subset::mask_of(&[0])).is_err());
    }

    #[test]
    fn fan_face_dims() {
        for n in 2..=4usize {
            let ground = subset::full_mask(n + 1);
            for i_set in subset::submasks(ground) {
                if subset::card(i_set) < 2 {
                    continue;
                }
                for i_prime in crate::subset::supermasks_within(i_set, ground) {
                    let d = fan_face_dim(n, i_set, i_prime).unwrap();
                    assert_eq!(
                        d,
                        subset::card(i_prime) - subset::card(i_set),
                        "n={n} I={i_set:b} I'={i_prime:b}"
                    );
                }
            }
        }
    }

    #[test]
    fn moment_maps() {
        let b = moment_simplex(&[qi(1), qi(1), qi(1)]).unwrap();
        assert_eq!(b, vec![q(1, 3), q(1, 3), q(1, 3)]);
        let w = moment_simplex(&[qi(3), qi(1), qi(1)]).unwrap();
        assert_eq!(w, vec![q(3, 5), q(1, 5), q(1, 5)]);
        assert!(moment_simplex(&[qi(1), qi(0)]).is_err());
        // mu of the worked example with unit weights: the mean of A.
        let m = mp(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        let mu = moment_mu(&m, &vec![qi(1); 4]).unwrap();
        assert_eq!(mu, vec![q(3, 4), qi(1)]);
    }

    #[test]
    fn lattice_kernels() {
        let full = mp(&[&[0, 0], &[1, 0], &[0, 1]]);
        let l = lattice_n_of_a(&full);
        assert!(l.kernel_basis.is_empty());
        assert_eq!(l.saturation_index, Z::from(1));

        let seg = mp(&[&[0, 0], &[1, 0]]);
        let l = lattice_n_of_a(&seg);
        assert_eq!(l.kernel_basis.len(), 1);
        let k = &l.kernel_basis[0];
        assert!(k[0].is_zero() && !k[1].is_zero());

        let doubled = mp(&[&[0, 0], &[2, 2]]);
        let l = lattice_n_of_a(&doubled);
        assert_eq!(l.kernel_basis.len(), 1);
        // kernel = Z (1,-1)
        let k = &l.kernel_basis[0];
        assert_eq!(&k[0] + &k[1], Z::zero());
        assert_eq!(l.saturation_index, Z::from(2));
    }

    #[test]
    fn normalized_volumes() {
        let unit = mp(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(unit.normalized_volume(), Z::from(1));
        let big = mp(&[&[1, 0], &[0, 1], &[2, 3]]);
        assert_eq!(big.normalized_volume(), Z::from(4));
        let worked = mp(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        assert_eq!(worked.normalized_volume(), Z::from(5));
    }
}
