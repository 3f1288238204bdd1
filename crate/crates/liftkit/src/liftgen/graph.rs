//! Simple graphs, stable sets, and the theta-body pencil.
//!
//! The theta body of a graph `G` on `n` vertices is the projection of the
//! spectrahedron of arrowhead moment matrices
//! `X = [[1, x^T], [x, Y]] ⪰ 0` with `diag(Y) = x` and `Y_ab = 0` on edges.
//! The coupling constraints are substituted away, so the emitted pencil has
//! exactly `n` ambient variables plus one lifted variable per non-edge.

use crate::lifts::{LmiSpec, PsdLiftData};
use crate::matrix::Mat;
use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Graph {
    pub n: usize,
    /// Edges as ordered pairs `i < j`, sorted, no duplicates.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) out of range or a loop")]
    BadEdge(usize, usize),
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut es: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(GraphError::BadEdge(a, b));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        Ok(Graph { n, edges: es })
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// All stable-set indicator vectors (bitmask enumeration, n <= 20).
    pub fn stable_set_indicators(&self) -> Vec<Vec<Rat>> {
        assert!(self.n <= 20);
        let mut out = Vec::new();
        'outer: for mask in 0u32..(1 << self.n) {
            for &(a, b) in &self.edges {
                if mask & (1 << a) != 0 && mask & (1 << b) != 0 {
                    continue 'outer;
                }
            }
            out.push(
                (0..self.n)
                    .map(|i| {
                        if mask & (1 << i) != 0 {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
        }
        out
    }

    /// Comparability graph of a poset: one edge per comparable pair.
    pub fn comparability(poset: &super::poset::Poset) -> Graph {
        let lt = poset.less_than();
        let mut edges = Vec::new();
        for a in 0..poset.n {
            for b in a + 1..poset.n {
                if lt[a][b] || lt[b][a] {
                    edges.push((a, b));
                }
            }
        }
        Graph {
            n: poset.n,
            edges,
        }
    }
}

/// The theta-body pencil `L(G)` of size `n + 1`: variables `x_1..x_n` and
/// one `y_ab` per non-edge `a < b` (lexicographic order).
pub fn theta_body_lmi(g: &Graph) -> LmiSpec {
    let n = g.n;
    let size = n + 1;
    let mut mats = Vec::new();
    for i in 0..n {
        let mut m = Mat::zeros(size, size);
        *m.at_mut(0, i + 1) = Rat::one();
        *m.at_mut(i + 1, 0) = Rat::one();
        *m.at_mut(i + 1, i + 1) = Rat::one();
        mats.push(m);
    }
    let non_edges = g.non_edges();
    for &(a, b) in &non_edges {
        let mut m = Mat::zeros(size, size);
        *m.at_mut(a + 1, b + 1) = Rat::one();
        *m.at_mut(b + 1, a + 1) = Rat::one();
        mats.push(m);
    }
    let mut a0 = Mat::zeros(size, size);
    *a0.at_mut(0, 0) = Rat::one();
    LmiSpec {
        size,
        ambient_vars: n,
        lifted_vars: non_edges.len(),
        a0,
        mats,
    }
}

/// Full variable assignment of the rank-one lift `(1, χ_S)(1, χ_S)^T` of a
/// stable-set indicator, in the `theta_body_lmi` variable order.
pub fn rank_one_theta_point(g: &Graph, indicator: &[Rat]) -> Vec<Rat> {
    let mut z: Vec<Rat> = indicator.to_vec();
    for (a, b) in g.non_edges() {
        z.push(&indicator[a] * &indicator[b]);
    }
    z
}

/// Theta-body lift bundled with per-vertex rank-one evidence for a stable
/// set polytope (vertex order must match the target polytope's).
pub fn theta_body_lift_data(g: &Graph, vertex_indicators: &[Vec<Rat>]) -> PsdLiftData {
    let lmi = theta_body_lmi(g);
    let vertex_points = vertex_indicators
        .iter()
        .map(|ind| rank_one_theta_point(g, ind))
        .collect();
    PsdLiftData {
        lmi,
        vertex_points,
        facet_certificates: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psd::{psd_check, PsdOutcome};
    use crate::rational::qi;

    #[test]
    fn single_vertex_theta_body_is_unit_interval() {
        // L(G) for n = 1: [[1, x], [x, x]] ⪰ 0 iff x ∈ [0, 1]
        let g = Graph::new(1, vec![]).unwrap();
        let lmi = theta_body_lmi(&g);
        assert_eq!(lmi.size, 2);
        assert_eq!(lmi.num_vars(), 1);
        for (x, expect) in [
            (crate::rational::q(1, 2), true),
            (qi(0), true),
            (qi(1), true),
            (crate::rational::q(3, 2), false),
            (crate::rational::q(-1, 10), false),
        ] {
            let m = lmi.evaluate(&[x]);
            assert_eq!(psd_check(&m).unwrap().is_psd(), expect);
        }
    }

    #[test]
    fn c4_rank_one_lifts_satisfy_pencil() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let stable = g.stable_set_indicators();
        // C4 stable sets: empty, 4 singletons, 2 diagonals
        assert_eq!(stable.len(), 7);
        let lmi = theta_body_lmi(&g);
        for ind in &stable {
            let z = rank_one_theta_point(&g, ind);
            let m = lmi.evaluate(&z);
            match psd_check(&m).unwrap() {
                PsdOutcome::Psd(_) => {}
                PsdOutcome::NotPsd { .. } => panic!("rank-one lift of {ind:?} violates L(G)"),
            }
        }
    }

    #[test]
    fn comparability_edges() {
        let p = super::super::poset::Poset::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let g = Graph::comparability(&p);
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (1, 2)]);
    }
}
