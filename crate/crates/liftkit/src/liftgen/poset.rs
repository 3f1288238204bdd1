//! Posets, order polytopes, and the slack-variable lift of chain polytopes.
//!
//! The order polytope is cut out by the cover-relation inequalities together
//! with bounds on minimal and maximal elements; its vertices are the filter
//! indicators. The chain polytope (convex hull of antichain indicators) is
//! the projection of a lift over the order polytope that linearizes the
//! min-based transfer map with one slack variable per element.

use crate::lifts::PolyhedralLift;
use crate::matrix::Mat;
use crate::polytope::{h_to_v, HRep, Polytope, PolytopeError};
use crate::rational::Rat;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Poset {
    pub n: usize,
    pub names: Vec<String>,
    /// Cover relations `(a, b)` meaning `a ≺ b` with nothing in between.
    pub covers: Vec<(usize, usize)>,
}

#[derive(Debug, thiserror::Error)]
pub enum PosetError {
    #[error("cover relation ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
    #[error("cover digraph has a cycle through element {0}")]
    Cyclic(usize),
    #[error("cover ({0}, {1}) is implied by other covers (not a transitive reduction)")]
    NotReduced(usize, usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

impl Poset {
    pub fn new(n: usize, covers: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let names = (0..n).map(|i| format!("{}", i + 1)).collect();
        let p = Poset { n, names, covers };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), PosetError> {
        for &(a, b) in &self.covers {
            if a >= self.n || b >= self.n || a == b {
                return Err(PosetError::OutOfRange(a, b));
            }
        }
        // acyclicity via repeated removal of sources
        let mut indeg = vec![0usize; self.n];
        for &(_, b) in &self.covers {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.covers {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        if seen != self.n {
            let culprit = (0..self.n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(PosetError::Cyclic(culprit));
        }
        // transitive reduction: no cover may be implied by a 2+ step path
        let lt = self.less_than();
        for &(a, b) in &self.covers {
            for m in 0..self.n {
                if m != a && m != b && lt[a][m] && lt[m][b] {
                    return Err(PosetError::NotReduced(a, b));
                }
            }
        }
        Ok(())
    }

    /// Strict order matrix: `lt[a][b]` iff `a ≺ b`.
    pub fn less_than(&self) -> Vec<Vec<bool>> {
        let mut lt = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.covers {
            lt[a][b] = true;
        }
        for k in 0..self.n {
            for i in 0..self.n {
                for j in 0..self.n {
                    if lt[i][k] && lt[k][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
        lt
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.covers.iter().all(|&(_, b)| b != i))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.covers.iter().all(|&(a, _)| a != i))
            .collect()
    }

    /// All antichain indicator vectors (bitmask enumeration, n <= 20).
    pub fn antichain_indicators(&self) -> Vec<Vec<Rat>> {
        assert!(self.n <= 20);
        let lt = self.less_than();
        let mut out = Vec::new();
        'outer: for mask in 0u32..(1 << self.n) {
            for a in 0..self.n {
                for b in 0..self.n {
                    if mask & (1 << a) != 0 && mask & (1 << b) != 0 && lt[a][b] {
                        continue 'outer;
                    }
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

    /// All filter (up-set) indicator vectors.
    pub fn filter_indicators(&self) -> Vec<Vec<Rat>> {
        assert!(self.n <= 20);
        let lt = self.less_than();
        let mut out = Vec::new();
        'outer: for mask in 0u32..(1 << self.n) {
            for a in 0..self.n {
                if mask & (1 << a) != 0 {
                    for b in 0..self.n {
                        if lt[a][b] && mask & (1 << b) == 0 {
                            continue 'outer;
                        }
                    }
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
}

/// The order polytope `{0 <= x_a <= x_b <= 1 for covers a ≺ b}`, built from
/// cover relations plus bounds on minimal and maximal elements.
pub fn order_polytope(p: &Poset) -> Result<Polytope, PosetError> {
    let n = p.n;
    let mut ineqs = Vec::new();
    for &(a, b) in &p.covers {
        // x_a <= x_b
        let mut row = vec![Rat::zero(); n];
        row[a] = Rat::one();
        row[b] = -Rat::one();
        ineqs.push((row, Rat::zero()));
    }
    for a in p.minimal_elements() {
        let mut row = vec![Rat::zero(); n];
        row[a] = -Rat::one();
        ineqs.push((row, Rat::zero()));
    }
    for a in p.maximal_elements() {
        let mut row = vec![Rat::zero(); n];
        row[a] = Rat::one();
        ineqs.push((row, Rat::one()));
    }
    let poly = h_to_v(&HRep {
        dim: n,
        ineqs,
        eqs: vec![],
    })?;
    debug_assert_eq!(poly.num_vertices(), p.filter_indicators().len());
    Ok(poly)
}

#[derive(Clone, Debug)]
pub struct ChainPolytopeLift {
    /// Lift in `(z, x)` coordinates projecting onto the `z` block.
    pub lift: PolyhedralLift,
    /// The chain polytope computed directly as `conv(antichain indicators)`.
    pub chain_polytope: Polytope,
}

/// Slack-variable lift of the chain polytope over the order polytope:
/// `0 <= z_b <= x_b - x_a` for covers `a ≺ b`, `x_a <= 1` for maximal `a`,
/// `z_a = x_a` for minimal `a`; project onto `z`.
pub fn chain_polytope_lift(p: &Poset) -> Result<ChainPolytopeLift, PosetError> {
    let n = p.n;
    let dim = 2 * n; // z block then x block
    let mut ineqs = Vec::new();
    for a in 0..n {
        let mut row = vec![Rat::zero(); dim];
        row[a] = -Rat::one();
        ineqs.push((row, Rat::zero())); // z_a >= 0
    }
    for &(a, b) in &p.covers {
        // z_b - x_b + x_a <= 0
        let mut row = vec![Rat::zero(); dim];
        row[b] = Rat::one();
        row[n + b] = -Rat::one();
        row[n + a] = Rat::one();
        ineqs.push((row, Rat::zero()));
    }
    for a in p.maximal_elements() {
        let mut row = vec![Rat::zero(); dim];
        row[n + a] = Rat::one();
        ineqs.push((row, Rat::one()));
    }
    let mut eqs = Vec::new();
    for a in p.minimal_elements() {
        let mut row = vec![Rat::zero(); dim];
        row[a] = Rat::one();
        row[n + a] = -Rat::one();
        eqs.push((row, Rat::zero()));
    }
    let proj = Mat::from_fn(n, dim, |i, j| {
        if i == j {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let chain_polytope = Polytope::from_points(n, p.antichain_indicators())?;
    Ok(ChainPolytopeLift {
        lift: PolyhedralLift {
            hrep: HRep { dim, ineqs, eqs },
            proj,
        },
        chain_polytope,
    })
}

/// The five pairwise non-isomorphic posets on three elements.
pub fn three_element_posets() -> Vec<Poset> {
    vec![
        Poset::new(3, vec![(0, 1), (1, 2)]).unwrap(), // chain
        Poset::new(3, vec![(0, 1)]).unwrap(),         // one relation
        Poset::new(3, vec![]).unwrap(),               // antichain
        Poset::new(3, vec![(0, 1), (0, 2)]).unwrap(), // one below two
        Poset::new(3, vec![(1, 0), (2, 0)]).unwrap(), // two below one
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::verify_polyhedral_lift;
    use crate::rational::qi;

    #[test]
    fn antichain_order_polytope_is_cube() {
        let p = Poset::new(3, vec![]).unwrap();
        let op = order_polytope(&p).unwrap();
        assert_eq!(op.num_vertices(), 8);
        assert_eq!(op.num_facets(), 6);
    }

    #[test]
    fn chain_order_polytope_is_simplex_wedge() {
        // 0 <= x1 <= x2 <= x3 <= 1 has 4 vertices and 4 facets
        let p = Poset::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let op = order_polytope(&p).unwrap();
        assert_eq!(op.num_vertices(), 4);
        assert_eq!(op.num_facets(), 4);
    }

    #[test]
    fn filters_biject_with_antichains() {
        for p in three_element_posets() {
            assert_eq!(
                p.filter_indicators().len(),
                p.antichain_indicators().len()
            );
        }
        let fence = Poset::new(4, vec![(0, 1), (2, 1), (2, 3)]).unwrap();
        assert_eq!(
            fence.filter_indicators().len(),
            fence.antichain_indicators().len()
        );
    }

    #[test]
    fn chain_lift_projects_onto_chain_polytope() {
        for (i, p) in three_element_posets().into_iter().enumerate() {
            let cl = chain_polytope_lift(&p).unwrap();
            let check = verify_polyhedral_lift(&cl.chain_polytope, &cl.lift).unwrap();
            assert!(check.verified, "poset {i}: {:?}", check.failure);
        }
    }

    #[test]
    fn chain_polytope_of_chain_is_simplex() {
        let p = Poset::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let cl = chain_polytope_lift(&p).unwrap();
        let cp = &cl.chain_polytope;
        assert_eq!(cp.num_vertices(), 4); // {}, {1}, {2}, {3}
        assert_eq!(cp.num_facets(), 4); // x >= 0 (3) and x1+x2+x3 <= 1
        let sum_facet = cp
            .facets()
            .iter()
            .any(|(a, b)| a == &vec![qi(1), qi(1), qi(1)] && *b == qi(1));
        assert!(sum_facet);
    }

    #[test]
    fn invalid_posets_rejected() {
        assert!(matches!(
            Poset::new(2, vec![(0, 1), (1, 0)]),
            Err(PosetError::Cyclic(_))
        ));
        assert!(matches!(
            Poset::new(3, vec![(0, 1), (1, 2), (0, 2)]),
            Err(PosetError::NotReduced(0, 2))
        ));
        assert!(matches!(
            Poset::new(2, vec![(0, 5)]),
            Err(PosetError::OutOfRange(0, 5))
        ));
    }
}
