//! Double description method for polyhedral cones, over exact rationals.
//!
//! Computes the extreme rays and lineality space of `{x : h·x >= 0}` by
//! inserting halfspaces one at a time. Adjacency of rays is decided by the
//! combinatorial zero-set criterion. Ray vectors are kept primitive (integer,
//! content one) to control coefficient growth.

use crate::matrix::{axpy, dot, is_zero_vec, lex_cmp, primitive_scale};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_superset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| b & !a == 0)
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<Rat>,
    zero: BitSet,
}

#[derive(Clone, Debug)]
pub struct DdOutput {
    /// Basis of the lineality space (vectors satisfying every h with equality).
    pub lineality: Vec<Vec<Rat>>,
    /// Extreme rays modulo the lineality space, reduced to a canonical
    /// representative, primitive-scaled and lexicographically sorted.
    pub rays: Vec<Vec<Rat>>,
}

/// Extreme rays of `{x in R^dim : h·x >= 0 for all h}`.
pub fn dual_description(dim: usize, halfspaces: &[Vec<Rat>]) -> DdOutput {
    let cap = halfspaces.len();
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, h) in halfspaces.iter().enumerate() {
        assert_eq!(h.len(), dim, "halfspace dimension mismatch");
        let lin_eval: Vec<Rat> = lineality.iter().map(|l| dot(h, l)).collect();
        if let Some(pos) = lin_eval.iter().position(|e| !e.is_zero()) {
            // h cuts the lineality space: one basis vector becomes a ray
            let l0 = lineality.remove(pos);
            let d0 = lin_eval[pos].clone();
            for l in lineality.iter_mut() {
                let e = dot(h, l);
                if !e.is_zero() {
                    let c = -e / &d0;
                    axpy(l, &c, &l0);
                }
            }
            for r in rays.iter_mut() {
                let e = dot(h, &r.v);
                if !e.is_zero() {
                    let c = -e / &d0;
                    axpy(&mut r.v, &c, &l0);
                    r.v = primitive_scale(&r.v);
                }
                r.zero.set(k);
            }
            let v = if d0.is_positive() {
                l0
            } else {
                l0.into_iter().map(|x| -x).collect()
            };
            let mut zero = BitSet::new(cap);
            for i in 0..k {
                zero.set(i);
            }
            rays.push(Ray {
                v: primitive_scale(&v),
                zero,
            });
            continue;
        }
        // partition rays by the sign of h·r
        let evals: Vec<Rat> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos_idx: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_positive()).collect();
        let neg_idx: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_negative()).collect();
        if neg_idx.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if evals[i].is_zero() {
                    r.zero.set(k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !evals[i].is_negative() {
                let mut r = r.clone();
                if evals[i].is_zero() {
                    r.zero.set(k);
                }
                next.push(r);
            }
        }
        for &p in &pos_idx {
            for &n in &neg_idx {
                let t = rays[p].zero.intersect(&rays[n].zero);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !r.zero.is_superset(&t));
                if !adjacent {
                    continue;
                }
                // (h·p) n - (h·n) p  lies on the hyperplane, inside the cone
                let mut v: Vec<Rat> = rays[n].v.iter().map(|x| x * &evals[p]).collect();
                let c = -evals[n].clone();
                axpy(&mut v, &c, &rays[p].v);
                let mut zero = t;
                zero.set(k);
                next.push(Ray {
                    v: primitive_scale(&v),
                    zero,
                });
            }
        }
        rays = next;
    }

    // canonical form: reduce rays modulo the lineality space, scale, sort
    let lin_rref = rref(&lineality);
    let mut out_rays: Vec<Vec<Rat>> = rays
        .into_iter()
        .map(|r| primitive_scale(&reduce_mod(&r.v, &lin_rref)))
        .filter(|v| !is_zero_vec(v))
        .collect();
    out_rays.sort_by(|a, b| lex_cmp(a, b));
    out_rays.dedup();
    let mut lin = lin_rref;
    lin.sort_by(|a, b| lex_cmp(a, b));
    DdOutput {
        lineality: lin,
        rays: out_rays,
    }
}

/// Reduced row echelon form of a list of vectors (as rows).
pub fn rref(vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = vectors.to_vec();
    let dim = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut col = 0;
    while col < dim && !rows.is_empty() {
        if let Some(p) = rows.iter().position(|r| !r[col].is_zero()) {
            let mut pivot = rows.swap_remove(p);
            let inv = pivot[col].recip();
            for x in pivot.iter_mut() {
                *x *= &inv;
            }
            for r in rows.iter_mut() {
                if !r[col].is_zero() {
                    let c = -r[col].clone();
                    axpy(r, &c, &pivot);
                }
            }
            for r in out.iter_mut() {
                if !r[col].is_zero() {
                    let c = -r[col].clone();
                    axpy(r, &c, &pivot);
                }
            }
            out.push(pivot);
            rows.retain(|r| !is_zero_vec(r));
        }
        col += 1;
    }
    out
}

/// Canonical representative of `v` modulo the row space of an RREF basis.
pub fn reduce_mod(v: &[Rat], rref_basis: &[Vec<Rat>]) -> Vec<Rat> {
    let mut v = v.to_vec();
    for row in rref_basis {
        let pivot_col = row.iter().position(|x| !x.is_zero()).unwrap();
        if !v[pivot_col].is_zero() {
            let c = -v[pivot_col].clone();
            axpy(&mut v, &c, row);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        // {x >= 0, y >= 0} in R^2
        let out = dual_description(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn halfplane_has_lineality() {
        let out = dual_description(2, &[v(&[1, 0])]);
        assert_eq!(out.lineality, vec![v(&[0, 1])]);
        assert_eq!(out.rays, vec![v(&[1, 0])]);
    }

    #[test]
    fn square_cone_homogenization() {
        // homogenization of the square [-1,1]^2: {(t,x,y): t±x>=0, t±y>=0}
        let hs = vec![
            v(&[1, 1, 0]),
            v(&[1, -1, 0]),
            v(&[1, 0, 1]),
            v(&[1, 0, -1]),
        ];
        let out = dual_description(3, &hs);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 4);
        for r in &out.rays {
            assert_eq!(r[0], qi(1));
            assert_eq!(r[1].clone().abs(), qi(1));
            assert_eq!(r[2].clone().abs(), qi(1));
        }
    }

    #[test]
    fn infeasible_gives_origin_only() {
        // x >= 1 section encoded as cone {(t,x): x - t >= 0, -x >= 0, t >= 0}
        let hs = vec![v(&[-1, 1]), v(&[0, -1]), v(&[1, 0])];
        let out = dual_description(2, &hs);
        assert!(out.lineality.is_empty());
        assert!(out.rays.is_empty());
    }

    #[test]
    fn octahedron_facets_from_vertices() {
        // dual cone of {(1, ±e_i)}: expect 8 rays (a0, a) = (1, ±1, ±1, ±1)
        let mut hs = Vec::new();
        for i in 0..3 {
            for s in [1i64, -1] {
                let mut h = vec![qi(1), qi(0), qi(0), qi(0)];
                h[1 + i] = qi(s);
                hs.push(h);
            }
        }
        let out = dual_description(4, &hs);
        assert!(out.lineality.is_empty());
        assert_eq!(out.rays.len(), 8);
        for r in &out.rays {
            assert_eq!(r[0], qi(1));
            assert!(r[1..].iter().all(|x| x.clone().abs() == qi(1)));
        }
    }
}
