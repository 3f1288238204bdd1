//! Dual-representation polytopes.
//!
//! A `Polytope` always carries both an irredundant vertex list and an
//! irredundant facet list (plus affine-hull equations when it is not
//! full-dimensional), together with the exact facet-vertex incidence. V<->H
//! conversion is the double description method with lexicographic insertion
//! order, so identical inputs produce identical outputs.

use crate::dd::{dual_description, reduce_mod, rref};
use crate::lp::{lp_solve, LpProblem, LpResult, Sense};
use crate::matrix::{dot, is_zero_vec, lex_cmp, primitive_scale, vec_sub, Mat};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty input")]
    Empty,
    #[error("dimension mismatch: point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("vertex {index} is redundant (in the convex hull of the others)")]
    RedundantVertex { index: usize },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    Infeasible,
    #[error("origin is not strictly interior (facet {facet} has slack {slack} at 0)")]
    OriginNotInterior { facet: usize, slack: String },
    #[error("internal LP error: {0}")]
    Lp(#[from] crate::lp::LpError),
}

/// Irredundant vertex list, lexicographically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
}

impl VRep {
    /// Build a VRep, checking irredundancy of every point via exact LP.
    pub fn new(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    index: i,
                    got: p.len(),
                    expected: dim,
                });
            }
        }
        let mut pts = points;
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts.dedup();
        for i in 0..pts.len() {
            if point_in_hull_of_others(&pts, i)? {
                return Err(PolytopeError::RedundantVertex { index: i });
            }
        }
        Ok(VRep {
            dim,
            vertices: pts,
        })
    }

    fn new_unchecked(dim: usize, mut vertices: Vec<Vec<Rat>>) -> Self {
        vertices.sort_by(|a, b| lex_cmp(a, b));
        vertices.dedup();
        VRep { dim, vertices }
    }
}

/// Inequalities `a·x <= b` (one per facet) plus affine-hull equations
/// `e·x = f`. Facets are normalized to `b = 1` when the origin is strictly
/// interior, and to primitive integer data otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub dim: usize,
    pub ineqs: Vec<(Vec<Rat>, Rat)>,
    pub eqs: Vec<(Vec<Rat>, Rat)>,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    vrep: VRep,
    hrep: HRep,
    incidence: Vec<Vec<bool>>, // facet x vertex
    dim: usize,
}

/// Does `pts[skip]` lie in the convex hull of the other points?
fn point_in_hull_of_others(pts: &[Vec<Rat>], skip: usize) -> Result<bool, PolytopeError> {
    if pts.len() <= 1 {
        return Ok(false);
    }
    let n = pts[0].len();
    let others: Vec<&Vec<Rat>> = (0..pts.len()).filter(|&j| j != skip).map(|j| &pts[j]).collect();
    let mut lp = LpProblem::new(others.len());
    for j in 0..others.len() {
        lp.set_bounds(j, Some(Rat::zero()), None);
    }
    for c in 0..n {
        let row: Vec<Rat> = others.iter().map(|p| p[c].clone()).collect();
        lp.add_row(row, Sense::Eq, pts[skip][c].clone());
    }
    lp.add_row(vec![Rat::one(); others.len()], Sense::Eq, Rat::one());
    Ok(matches!(lp_solve(&lp)?, LpResult::Optimal(_)))
}

impl Polytope {
    /// Convex hull of arbitrary points: redundant points are dropped first.
    pub fn from_points(dim: usize, points: Vec<Vec<Rat>>) -> Result<Self, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let mut pts = points;
        pts.sort_by(|a, b| lex_cmp(a, b));
        pts.dedup();
        let mut keep = Vec::new();
        for i in 0..pts.len() {
            if !point_in_hull_of_others(&pts, i)? {
                keep.push(pts[i].clone());
            }
        }
        v_to_h(&VRep::new_unchecked(dim, keep))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.vrep.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vrep.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vrep.vertices.len()
    }

    pub fn facets(&self) -> &[(Vec<Rat>, Rat)] {
        &self.hrep.ineqs
    }

    pub fn num_facets(&self) -> usize {
        self.hrep.ineqs.len()
    }

    pub fn equalities(&self) -> &[(Vec<Rat>, Rat)] {
        &self.hrep.eqs
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// True iff vertex `j` lies on facet `i`.
    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    /// Exact membership test against the H-representation.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.hrep.ineqs.iter().all(|(a, b)| dot(a, x) <= *b)
            && self.hrep.eqs.iter().all(|(e, f)| dot(e, x) == *f)
    }

    /// Slack `b_i - a_i·x` of a point in facet `i`.
    pub fn facet_slack(&self, i: usize, x: &[Rat]) -> Rat {
        let (a, b) = &self.hrep.ineqs[i];
        b - dot(a, x)
    }

    /// True iff the origin is strictly interior.
    pub fn origin_interior(&self) -> bool {
        self.hrep.eqs.is_empty() && self.hrep.ineqs.iter().all(|(_, b)| b.is_positive())
    }
}

fn incidence_of(vrep: &VRep, hrep: &HRep) -> Vec<Vec<bool>> {
    hrep.ineqs
        .iter()
        .map(|(a, b)| vrep.vertices.iter().map(|v| dot(a, v) == *b).collect())
        .collect()
}

fn affine_rank(vertices: &[Vec<Rat>]) -> usize {
    if vertices.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rat>> = vertices[1..]
        .iter()
        .map(|v| vec_sub(v, &vertices[0]))
        .collect();
    Mat::from_rows(rows).rank()
}

/// Facet enumeration: vertices to full dual-representation polytope.
///
/// The dual cone `{(a0, a) : a0 + a·v >= 0 for every vertex v}` is computed
/// by double description; its extreme rays are the facets and its lineality
/// space gives the affine hull.
pub fn v_to_h(v: &VRep) -> Result<Polytope, PolytopeError> {
    if v.vertices.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let n = v.dim;
    let halfspaces: Vec<Vec<Rat>> = v
        .vertices
        .iter()
        .map(|p| {
            let mut h = Vec::with_capacity(n + 1);
            h.push(Rat::one());
            h.extend(p.iter().cloned());
            h
        })
        .collect();
    let out = dual_description(n + 1, &halfspaces);
    // lineality (g0, g): g·x = -g0 holds on the polytope
    let mut eqs: Vec<(Vec<Rat>, Rat)> = out
        .lineality
        .iter()
        .map(|l| {
            let w = primitive_scale(l);
            // sign convention: first nonzero coefficient positive
            let sign = w[1..]
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .unwrap_or_else(Rat::one);
            let w: Vec<Rat> = if sign.is_negative() {
                w.into_iter().map(|x| -x).collect()
            } else {
                w
            };
            (w[1..].to_vec(), -w[0].clone())
        })
        .collect();
    eqs.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    // rays (a0, a): facet inequality (-a)·x <= a0, unless a == 0 (trivial)
    let interior_candidate = out
        .rays
        .iter()
        .filter(|r| !is_zero_vec(&r[1..]))
        .all(|r| r[0].is_positive());
    let full_dim = eqs.is_empty();
    let mut ineqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for r in &out.rays {
        if is_zero_vec(&r[1..]) {
            continue;
        }
        let a: Vec<Rat> = r[1..].iter().map(|x| -x.clone()).collect();
        let b = r[0].clone();
        if full_dim && interior_candidate {
            // origin strictly interior: scale every facet to  a·x <= 1
            let inv = b.recip();
            ineqs.push((a.iter().map(|x| x * &inv).collect(), Rat::one()));
        } else {
            let mut w = a;
            w.push(b);
            let w = primitive_scale(&w);
            let b = w.last().unwrap().clone();
            ineqs.push((w[..w.len() - 1].to_vec(), b));
        }
    }
    ineqs.sort_by(|x, y| lex_cmp(&x.0, &y.0).then_with(|| x.1.cmp(&y.1)));
    let hrep = HRep {
        dim: n,
        ineqs,
        eqs,
    };
    let dim = affine_rank(&v.vertices);
    debug_assert_eq!(dim + hrep.eqs.len(), n, "affine hull dimension mismatch");
    let incidence = incidence_of(v, &hrep);
    for (p_i, p) in v.vertices.iter().enumerate() {
        debug_assert!(
            hrep.ineqs.iter().all(|(a, b)| dot(a, p) <= *b),
            "vertex {p_i} violates a computed facet"
        );
    }
    Ok(Polytope {
        vrep: v.clone(),
        hrep,
        incidence,
        dim,
    })
}

/// Vertex enumeration: inequality description to full dual-representation
/// polytope. Unbounded or empty input is reported as an error. The input may
/// be redundant; the result is canonical.
pub fn h_to_v(h: &HRep) -> Result<Polytope, PolytopeError> {
    let n = h.dim;
    if h.ineqs.is_empty() && h.eqs.is_empty() {
        return Err(PolytopeError::Unbounded);
    }
    // homogenize: cone {(t, x) : t >= 0, b_i t - a_i·x >= 0, f t - e·x = 0}
    let mut halfspaces: Vec<Vec<Rat>> = Vec::new();
    let mut e0 = vec![Rat::zero(); n + 1];
    e0[0] = Rat::one();
    halfspaces.push(e0);
    for (a, b) in &h.ineqs {
        let mut hs = Vec::with_capacity(n + 1);
        hs.push(b.clone());
        hs.extend(a.iter().map(|x| -x.clone()));
        halfspaces.push(hs);
    }
    for (e, f) in &h.eqs {
        let mut hs = Vec::with_capacity(n + 1);
        hs.push(f.clone());
        hs.extend(e.iter().map(|x| -x.clone()));
        let neg: Vec<Rat> = hs.iter().map(|x| -x.clone()).collect();
        halfspaces.push(hs);
        halfspaces.push(neg);
    }
    let out = dual_description(n + 1, &halfspaces);
    if !out.lineality.is_empty() {
        return Err(PolytopeError::Unbounded);
    }
    let mut vertices = Vec::new();
    for r in &out.rays {
        if r[0].is_positive() {
            let inv = r[0].recip();
            vertices.push(r[1..].iter().map(|x| x * &inv).collect::<Vec<Rat>>());
        } else {
            return Err(PolytopeError::Unbounded);
        }
    }
    if vertices.is_empty() {
        return Err(PolytopeError::Infeasible);
    }
    v_to_h(&VRep::new_unchecked(n, vertices))
}

/// Polar dual `P° = {y : <x,y> <= 1 for all x in P}`.
///
/// Requires the origin strictly interior. Vertex `i` of the polar is the
/// normal of facet `i` of `P` (rows and columns stay aligned with `P`'s
/// canonical facet and vertex orders, so `polar(polar(P)) == P` on the nose).
pub fn polar(p: &Polytope) -> Result<Polytope, PolytopeError> {
    if let Some(facet) = p
        .hrep
        .ineqs
        .iter()
        .position(|(_, b)| !b.is_positive())
    {
        return Err(PolytopeError::OriginNotInterior {
            facet,
            slack: crate::rational::fmt_rat(&p.hrep.ineqs[facet].1),
        });
    }
    if !p.hrep.eqs.is_empty() {
        return Err(PolytopeError::OriginNotInterior {
            facet: 0,
            slack: "0 (lower-dimensional)".into(),
        });
    }
    let n = p.ambient_dim();
    let vertices: Vec<Vec<Rat>> = p
        .hrep
        .ineqs
        .iter()
        .map(|(a, b)| {
            let inv = b.recip();
            a.iter().map(|x| x * &inv).collect()
        })
        .collect();
    let ineqs: Vec<(Vec<Rat>, Rat)> = p
        .vrep
        .vertices
        .iter()
        .map(|v| (v.clone(), Rat::one()))
        .collect();
    let vrep = VRep {
        dim: n,
        vertices,
    };
    let hrep = HRep {
        dim: n,
        ineqs,
        eqs: Vec::new(),
    };
    let incidence = incidence_of(&vrep, &hrep);
    let dim = affine_rank(&vrep.vertices);
    Ok(Polytope {
        vrep,
        hrep,
        incidence,
        dim,
    })
}

// ---------------------------------------------------------------------------
// face lattice

/// All faces of a polytope as vertex-index sets, closed under intersection,
/// including the empty face and the polytope itself.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// Sorted by (cardinality, lexicographic vertex set).
    pub faces: Vec<Vec<usize>>,
}

impl FaceLattice {
    pub fn count(&self) -> usize {
        self.faces.len()
    }

    /// Number of nonempty proper+improper faces of each vertex cardinality is
    /// not the f-vector; this is the longest chain of NONEMPTY faces under
    /// strict inclusion, counted by number of faces in the chain.
    pub fn longest_nonempty_chain(&self) -> usize {
        let nonempty: Vec<&Vec<usize>> = self.faces.iter().filter(|f| !f.is_empty()).collect();
        let mut best = vec![1usize; nonempty.len()];
        // faces are sorted by size, so predecessors come first
        for i in 0..nonempty.len() {
            for j in 0..i {
                if nonempty[j].len() < nonempty[i].len() && is_subset(nonempty[j], nonempty[i]) {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

/// Face lattice by closing the facet vertex-sets under intersection.
pub fn face_lattice(p: &Polytope) -> FaceLattice {
    use std::collections::BTreeSet;
    let nv = p.num_vertices();
    let full: Vec<usize> = (0..nv).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(full.clone());
    seen.insert(Vec::new());
    let facet_sets: Vec<Vec<usize>> = p
        .incidence
        .iter()
        .map(|row| (0..nv).filter(|&j| row[j]).collect())
        .collect();
    let mut queue: Vec<Vec<usize>> = facet_sets.clone();
    for f in &facet_sets {
        seen.insert(f.clone());
    }
    while let Some(f) = queue.pop() {
        for g in &facet_sets {
            let inter: Vec<usize> = f.iter().filter(|x| g.binary_search(x).is_ok()).cloned().collect();
            if seen.insert(inter.clone()) {
                queue.push(inter);
            }
        }
    }
    let mut faces: Vec<Vec<usize>> = seen.into_iter().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    FaceLattice { faces }
}

/// Exactness check that a face (given by its vertex set) is exposed: an LP
/// searches for an affine functional tight exactly on the face's vertices.
pub fn face_is_exposed(p: &Polytope, face: &[usize]) -> Result<bool, PolytopeError> {
    let n = p.ambient_dim();
    let nv = p.num_vertices();
    if face.len() == nv {
        return Ok(true); // the polytope itself is exposed by the zero functional
    }
    // vars: a (n), c, t; maximize t
    // a·v_j + c = 0 on the face, a·v_j + c <= -t off the face, -1 <= a <= 1, t <= 1
    let mut lp = LpProblem::new(n + 2);
    lp.objective[n + 1] = Rat::one();
    for j in 0..nv {
        let mut row: Vec<Rat> = p.vrep.vertices[j].to_vec();
        row.push(Rat::one());
        if face.binary_search(&j).is_ok() {
            row.push(Rat::zero());
            lp.add_row(row, Sense::Eq, Rat::zero());
        } else {
            row.push(Rat::one());
            lp.add_row(row, Sense::Le, Rat::zero());
        }
    }
    lp.set_bounds(n + 1, None, Some(Rat::one()));
    match lp_solve(&lp)? {
        LpResult::Optimal(s) => Ok(s.objective.is_positive()),
        _ => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// structural predicates

/// Per-facet level data: the distinct values `b_i - a_i·v_j` takes on the
/// vertex set, with multiplicities, in increasing order.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub is_k_level: bool,
    pub k: usize,
    pub facet_levels: Vec<Vec<(Rat, usize)>>,
}

/// Does every facet functional take at most `k` distinct values on the
/// vertices?
pub fn is_k_level(p: &Polytope, k: usize) -> LevelReport {
    let mut facet_levels = Vec::with_capacity(p.num_facets());
    let mut ok = true;
    for i in 0..p.num_facets() {
        let mut values: Vec<Rat> = p
            .vertices()
            .iter()
            .map(|v| p.facet_slack(i, v))
            .collect();
        values.sort();
        let mut levels: Vec<(Rat, usize)> = Vec::new();
        for v in values {
            match levels.last_mut() {
                Some((lv, c)) if *lv == v => *c += 1,
                _ => levels.push((v, 1)),
            }
        }
        if levels.len() > k {
            ok = false;
        }
        facet_levels.push(levels);
    }
    LevelReport {
        is_k_level: ok,
        k,
        facet_levels,
    }
}

/// Outcome of the neighborliness scan.
#[derive(Clone, Debug)]
pub struct NeighborlyReport {
    pub is_k_neighborly: bool,
    pub k: usize,
    /// Lexicographically smallest vertex-index subset that is not a face.
    pub violator: Option<Vec<usize>>,
}

/// Is every `k`-subset of vertices the vertex set of a face? Decided subset
/// by subset with an exact margin LP; the first failing subset in
/// lexicographic order is reported.
pub fn is_k_neighborly(p: &Polytope, k: usize) -> Result<NeighborlyReport, PolytopeError> {
    let nv = p.num_vertices();
    let n = p.ambient_dim();
    if k > nv {
        return Ok(NeighborlyReport {
            is_k_neighborly: false,
            k,
            violator: Some((0..nv.min(k)).collect()),
        });
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        // margin LP for the current subset
        let mut lp = LpProblem::new(n + 2); // a, c, t
        lp.objective[n + 1] = Rat::one();
        for j in 0..nv {
            let mut row: Vec<Rat> = p.vrep.vertices[j].to_vec();
            row.push(Rat::one());
            if subset.binary_search(&j).is_ok() {
                row.push(Rat::zero());
                lp.add_row(row, Sense::Eq, Rat::one());
            } else {
                row.push(Rat::one());
                lp.add_row(row, Sense::Le, Rat::one());
            }
        }
        lp.set_bounds(n + 1, None, Some(Rat::one()));
        let exposed = match lp_solve(&lp)? {
            LpResult::Optimal(s) => s.objective.is_positive(),
            _ => false,
        };
        if !exposed {
            return Ok(NeighborlyReport {
                is_k_neighborly: false,
                k,
                violator: Some(subset),
            });
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(NeighborlyReport {
                    is_k_neighborly: true,
                    k,
                    violator: None,
                });
            }
            i -= 1;
            if subset[i] != i + nv - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// helpers used across the crate

/// Exact membership of `x` in the convex hull of `points` (LP feasibility).
pub fn in_convex_hull(points: &[Vec<Rat>], x: &[Rat]) -> Result<bool, PolytopeError> {
    let n = x.len();
    let mut lp = LpProblem::new(points.len());
    for j in 0..points.len() {
        lp.set_bounds(j, Some(Rat::zero()), None);
    }
    for c in 0..n {
        let row: Vec<Rat> = points.iter().map(|p| p[c].clone()).collect();
        lp.add_row(row, Sense::Eq, x[c].clone());
    }
    lp.add_row(vec![Rat::one(); points.len()], Sense::Eq, Rat::one());
    Ok(matches!(lp_solve(&lp)?, LpResult::Optimal(_)))
}

/// Reduce an inequality `a·x <= b` modulo the affine-hull equations of `h`,
/// producing the canonical representative used for facet comparison.
pub fn reduce_ineq_mod_eqs(h: &HRep, a: &[Rat], b: &Rat) -> (Vec<Rat>, Rat) {
    if h.eqs.is_empty() {
        return (a.to_vec(), b.clone());
    }
    let rows: Vec<Vec<Rat>> = h
        .eqs
        .iter()
        .map(|(e, f)| {
            let mut r = e.clone();
            r.push(-f.clone());
            r
        })
        .collect();
    let basis = rref(&rows);
    let mut v = a.to_vec();
    v.push(-b.clone());
    let red = reduce_mod(&v, &basis);
    let bb = -red.last().unwrap().clone();
    (red[..red.len() - 1].to_vec(), bb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn pts(xs: &[&[i64]]) -> Vec<Vec<Rat>> {
        xs.iter().map(|p| p.iter().map(|&x| qi(x)).collect()).collect()
    }

    fn cross_polytope(n: usize) -> Polytope {
        let mut v = Vec::new();
        for i in 0..n {
            for s in [1i64, -1] {
                let mut p = vec![qi(0); n];
                p[i] = qi(s);
                v.push(p);
            }
        }
        v_to_h(&VRep::new(n, v).unwrap()).unwrap()
    }

    #[test]
    fn cross_polytope_has_2n_facets() {
        let p = cross_polytope(3);
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.num_facets(), 8);
        assert_eq!(p.dim(), 3);
        // all facets sum_i ±x_i <= 1
        for (a, b) in p.facets() {
            assert_eq!(*b, qi(1));
            assert!(a.iter().all(|x| x.clone().abs() == qi(1)));
        }
    }

    #[test]
    fn unit_segment() {
        let p = v_to_h(&VRep::new(1, pts(&[&[0], &[1]])).unwrap()).unwrap();
        assert_eq!(p.num_facets(), 2);
        assert_eq!(p.dim(), 1);
        // facets: x <= 1 and -x <= 0
        assert!(p
            .facets()
            .iter()
            .any(|(a, b)| a == &vec![qi(1)] && *b == qi(1)));
        assert!(p
            .facets()
            .iter()
            .any(|(a, b)| a == &vec![qi(-1)] && *b == qi(0)));
    }

    #[test]
    fn cube_from_facets() {
        let mut ineqs = Vec::new();
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut a = vec![qi(0); 3];
                a[i] = qi(s);
                ineqs.push((a, qi(1)));
            }
        }
        let h = HRep {
            dim: 3,
            ineqs,
            eqs: vec![],
        };
        let p = h_to_v(&h).unwrap();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.num_facets(), 6);
    }

    #[test]
    fn unbounded_and_empty_detected() {
        let h = HRep {
            dim: 2,
            ineqs: vec![(vec![qi(1), qi(0)], qi(1))],
            eqs: vec![],
        };
        assert!(matches!(h_to_v(&h), Err(PolytopeError::Unbounded)));
        let h2 = HRep {
            dim: 1,
            ineqs: vec![(vec![qi(1)], qi(-1)), (vec![qi(-1)], qi(0))],
            eqs: vec![],
        };
        assert!(matches!(h_to_v(&h2), Err(PolytopeError::Infeasible)));
    }

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        let cube = h_to_v(&HRep {
            dim: 3,
            ineqs: (0..3)
                .flat_map(|i| {
                    [1i64, -1].map(|s| {
                        let mut a = vec![qi(0); 3];
                        a[i] = qi(s);
                        (a, qi(1))
                    })
                })
                .collect(),
            eqs: vec![],
        })
        .unwrap();
        let pol = polar(&cube).unwrap();
        assert_eq!(pol.num_vertices(), 6);
        assert_eq!(pol.num_facets(), 8);
        // involution, exactly
        let back = polar(&pol).unwrap();
        assert_eq!(back.vertices(), cube.vertices());
        assert_eq!(back.facets(), cube.facets());
    }

    #[test]
    fn lower_dimensional_triangle() {
        // triangle in the plane x+y+z = 1
        let p = v_to_h(&VRep::new(3, pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap()).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.equalities().len(), 1);
        assert_eq!(p.num_facets(), 3);
        let (e, f) = &p.equalities()[0];
        assert_eq!(e, &vec![qi(1), qi(1), qi(1)]);
        assert_eq!(*f, qi(1));
    }

    #[test]
    fn redundant_vertex_rejected_and_filtered() {
        let bad = VRep::new(2, pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]]));
        assert!(matches!(bad, Err(PolytopeError::RedundantVertex { .. })));
        let p = Polytope::from_points(2, pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(p.num_vertices(), 3);
    }

    #[test]
    fn square_face_lattice() {
        let sq = Polytope::from_points(2, pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap();
        let fl = face_lattice(&sq);
        assert_eq!(fl.count(), 10); // empty + 4 vertices + 4 edges + full
        assert_eq!(fl.longest_nonempty_chain(), 3); // vertex < edge < square
        for f in &fl.faces {
            assert!(face_is_exposed(&sq, f).unwrap(), "face {f:?} not exposed");
        }
    }

    #[test]
    fn square_levels_and_neighborliness() {
        let sq = Polytope::from_points(2, pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap();
        let lr = is_k_level(&sq, 2);
        assert!(lr.is_k_level);
        for levels in &lr.facet_levels {
            assert_eq!(levels.len(), 2);
            assert_eq!(levels[0].0, qi(0));
            assert_eq!(levels[1].0, qi(2));
        }
        assert!(is_k_neighborly(&sq, 1).unwrap().is_k_neighborly);
        let r = is_k_neighborly(&sq, 2).unwrap();
        assert!(!r.is_k_neighborly);
        // vertices sorted lex: (-1,-1),(-1,1),(1,-1),(1,1); diagonal {0,3}
        // but the first failing pair in lex order is {0,3}
        assert_eq!(r.violator, Some(vec![0, 3]));
    }

    #[test]
    fn fractional_coordinates() {
        let p = Polytope::from_points(
            2,
            vec![
                vec![q(1, 2), qi(0)],
                vec![qi(0), q(1, 3)],
                vec![q(-1, 2), qi(0)],
                vec![qi(0), q(-1, 3)],
            ],
        )
        .unwrap();
        assert_eq!(p.num_facets(), 4);
        assert!(p.origin_interior());
        for (_, b) in p.facets() {
            assert_eq!(*b, qi(1));
        }
    }
}
