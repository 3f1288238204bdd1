//! Slack matrices of polytopes and of nested polytope pairs.
//!
//! The slack matrix records `b_i - a_i·v_j` for every facet `i` and vertex
//! `j`. It is only defined up to positive row scaling; the tag records which
//! normalization was applied. When the origin is strictly interior every row
//! is scaled to `1 - <a_i, x> >= 0`, which is the convention under which the
//! transpose of the slack matrix is a slack matrix of the polar.

use crate::matrix::{dot, Mat};
use crate::polytope::{polar, Polytope, PolytopeError};
use crate::rational::Rat;
use num_traits::Zero;

/// Row scaling convention of a slack matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// Facets scaled so each inequality reads `1 - <a_i, x> >= 0`.
    BetaOne,
    /// Facets as stored on the polytope (primitive integer data).
    AsStored,
}

#[derive(Clone, Debug)]
pub struct SlackMatrix {
    pub mat: Mat,
    pub scaling: Scaling,
}

impl SlackMatrix {
    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    /// Apply row and column permutations: entry `(i, j)` of the result is
    /// entry `(row_perm[i], col_perm[j])` of `self`. Used by fixtures whose
    /// published row/column order differs from the canonical one.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Mat {
        Mat::from_fn(row_perm.len(), col_perm.len(), |i, j| {
            self.mat.at(row_perm[i], col_perm[j]).clone()
        })
    }
}

/// Slack matrix of a polytope, rows in facet order, columns in vertex order.
pub fn slack_matrix(p: &Polytope) -> SlackMatrix {
    let scaling = if p.origin_interior() {
        Scaling::BetaOne
    } else {
        Scaling::AsStored
    };
    let mat = Mat::from_fn(p.num_facets(), p.num_vertices(), |i, j| {
        let (a, b) = &p.facets()[i];
        let s = b - dot(a, &p.vertices()[j]);
        match scaling {
            Scaling::BetaOne => s / b,
            Scaling::AsStored => s,
        }
    });
    debug_assert!({
        let inc = p.incidence();
        (0..mat.rows()).all(|i| (0..mat.cols()).all(|j| mat.at(i, j).is_zero() == inc[i][j]))
    });
    SlackMatrix { mat, scaling }
}

#[derive(Debug, thiserror::Error)]
pub enum SlackError {
    #[error("inner polytope is not contained in the outer one: vertex {vertex} violates facet {facet}")]
    NotNested { vertex: usize, facet: usize },
    #[error("origin is not strictly interior to the inner polytope")]
    OriginNotInterior,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Generalized slack matrix of a nested pair `inner ⊆ outer`: rows indexed
/// by facets of `outer` scaled to `1 - <a_i, x> >= 0`, columns by vertices
/// of `inner`, entries `1 - a_i·v_j`.
pub fn generalized_slack(inner: &Polytope, outer: &Polytope) -> Result<SlackMatrix, SlackError> {
    if !inner.origin_interior() {
        return Err(SlackError::OriginNotInterior);
    }
    for (j, v) in inner.vertices().iter().enumerate() {
        for (i, (a, b)) in outer.facets().iter().enumerate() {
            if dot(a, v) > *b {
                return Err(SlackError::NotNested {
                    vertex: j,
                    facet: i,
                });
            }
        }
    }
    // inner has 0 interior, hence so does outer, hence all outer b_i > 0
    let mat = Mat::from_fn(outer.num_facets(), inner.num_vertices(), |i, j| {
        let (a, b) = &outer.facets()[i];
        (b - dot(a, &inner.vertices()[j])) / b
    });
    Ok(SlackMatrix {
        mat,
        scaling: Scaling::BetaOne,
    })
}

/// Check `S_{P°} == S_P^T` exactly under the `BetaOne` convention.
pub fn transpose_polar_check(p: &Polytope) -> Result<bool, PolytopeError> {
    let q = polar(p)?;
    let sp = slack_matrix(p);
    let sq = slack_matrix(&q);
    Ok(sq.mat == sp.mat.transpose())
}

/// Raw slack grid `b_i - a_i·v_j` of an arbitrary inequality list against an
/// arbitrary point list, with no normalization.
pub fn raw_slack(ineqs: &[(Vec<Rat>, Rat)], points: &[Vec<Rat>]) -> Mat {
    Mat::from_fn(ineqs.len(), points.len(), |i, j| {
        let (a, b) = &ineqs[i];
        b - dot(a, &points[j])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::v_to_h;
    use crate::polytope::VRep;
    use crate::rational::{q, qi};

    fn square() -> Polytope {
        Polytope::from_points(
            2,
            vec![
                vec![qi(1), qi(1)],
                vec![qi(1), qi(-1)],
                vec![qi(-1), qi(1)],
                vec![qi(-1), qi(-1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn simplex_identity_zero_pattern() {
        // conv{0, e1, e2, e3}: slack matrix has an identity-like zero pattern
        let mut pts = vec![vec![qi(0); 3]];
        for i in 0..3 {
            let mut e = vec![qi(0); 3];
            e[i] = qi(1);
            pts.push(e);
        }
        let p = v_to_h(&VRep::new(3, pts).unwrap()).unwrap();
        let s = slack_matrix(&p);
        assert_eq!((s.rows(), s.cols()), (4, 4));
        for i in 0..4 {
            let zeros = (0..4).filter(|&j| s.mat.at(i, j).is_zero()).count();
            assert_eq!(zeros, 3);
        }
        assert_eq!(s.mat.rank(), 4);
    }

    #[test]
    fn unit_square_slack() {
        let p = square();
        let s = slack_matrix(&p);
        assert_eq!((s.rows(), s.cols()), (4, 4));
        assert_eq!(s.scaling, Scaling::BetaOne);
        for i in 0..4 {
            let mut row: Vec<Rat> = (0..4).map(|j| s.mat.at(i, j).clone()).collect();
            row.sort();
            assert_eq!(row, vec![qi(0), qi(0), qi(2), qi(2)]);
        }
        assert_eq!(s.mat.rank(), 3); // dim + 1
    }

    #[test]
    fn nested_squares() {
        let inner = square();
        let outer = Polytope::from_points(
            2,
            vec![
                vec![qi(2), qi(2)],
                vec![qi(2), qi(-2)],
                vec![qi(-2), qi(2)],
                vec![qi(-2), qi(-2)],
            ],
        )
        .unwrap();
        let s = generalized_slack(&inner, &outer).unwrap();
        // entries 1 - a·v with a = ±e_i/2: all 1/2 or 3/2, never zero
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                let v = s.mat.at(i, j);
                assert!(*v == q(1, 2) || *v == q(3, 2), "entry {v}");
            }
        }
        // containment violation is reported with a witness
        let err = generalized_slack(&outer, &inner).unwrap_err();
        assert!(matches!(err, SlackError::NotNested { .. }));
    }

    #[test]
    fn same_polytope_pair_matches_slack_matrix() {
        let p = square();
        let s = slack_matrix(&p);
        let g = generalized_slack(&p, &p).unwrap();
        assert_eq!(s.mat, g.mat);
    }

    #[test]
    fn transpose_polar_on_square() {
        assert!(transpose_polar_check(&square()).unwrap());
    }

    #[test]
    fn row_scaling_covariance() {
        // scaling facet i by λ > 0 scales raw slack row i by λ and nothing else;
        // the BetaOne-normalized slack matrix is invariant under such scaling
        let p = square();
        let raw = raw_slack(p.facets(), p.vertices());
        let mut scaled = p.facets().to_vec();
        for x in scaled[0].0.iter_mut() {
            *x *= qi(3);
        }
        scaled[0].1 *= qi(3);
        let raw2 = raw_slack(&scaled, p.vertices());
        for j in 0..raw.cols() {
            assert_eq!(*raw2.at(0, j), raw.at(0, j) * qi(3));
            for i in 1..raw.rows() {
                assert_eq!(raw2.at(i, j), raw.at(i, j));
            }
        }
        let p2 = crate::polytope::h_to_v(&crate::polytope::HRep {
            dim: 2,
            ineqs: scaled,
            eqs: vec![],
        })
        .unwrap();
        assert_eq!(slack_matrix(&p2).mat, slack_matrix(&p).mat);
    }
}
