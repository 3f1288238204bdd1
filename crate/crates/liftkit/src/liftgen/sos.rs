//! Moment-matrix lifts of k-level polytopes with sum-of-squares facet
//! certificates.
//!
//! For a k-level polytope the facet functional `b - a·x` takes at most `k`
//! values on the vertex set, so a univariate interpolation through the
//! square roots of those levels turns each facet inequality into a single
//! square of a polynomial of degree `k - 1`. The lift itself is the affine
//! hull of the vertex moment matrices over the monomials of degree
//! `<= k - 1`, intersected with the psd cone; its size is the number of such
//! monomials. The affine hull is parameterized by matrix entries, with the
//! degree-one row pinned to the ambient variables, so on 2-level boxes the
//! construction reproduces the classical correlation-matrix pencils on the
//! nose.
//!
//! Certificates are emitted exactly when each facet's nonzero levels have
//! rational square roots, or when there are just two levels (then
//! `b - a·x = (b - a·x)^2 / u` needs no root at all). Otherwise the lift is
//! still emitted and the certificate is marked symbolic.

use crate::lifts::{LmiSpec, PsdLiftData};
use crate::matrix::{dot, Mat};
use crate::polytope::{is_k_level, Polytope};
use crate::rational::Rat;

use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

#[derive(Debug, thiserror::Error)]
pub enum SosError {
    #[error("polytope is not {k}-level: facet {facet} takes {got} values on the vertices")]
    NotKLevel { k: usize, facet: usize, got: usize },
    #[error("moment lift requires a full-dimensional polytope")]
    NotFullDimensional,
    #[error("ambient entry for variable {0} is not free in the moment hull")]
    AmbientNotFree(usize),
}

/// Monomials of degree at most `max_degree` in `n` variables, ordered by
/// (total degree, lexicographic exponent).
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub max_degree: usize,
    pub exponents: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let mut exponents: Vec<Vec<usize>> = Vec::new();
        let mut cur = vec![vec![0usize; n]];
        exponents.extend(cur.iter().cloned());
        for _ in 0..max_degree {
            let mut next: Vec<Vec<usize>> = Vec::new();
            for e in &cur {
                for i in 0..n {
                    let mut f = e.clone();
                    f[i] += 1;
                    next.push(f);
                }
            }
            // within each degree: x1-major order (x^2, x y, y^2, ...)
            next.sort_by(|a, b| b.cmp(a));
            next.dedup();
            exponents.extend(next.iter().cloned());
            cur = next;
        }
        let index = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            n,
            max_degree,
            exponents,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn index_of(&self, e: &[usize]) -> usize {
        self.index[e]
    }

    /// Evaluate all basis monomials at a point.
    pub fn evaluate(&self, x: &[Rat]) -> Vec<Rat> {
        self.exponents
            .iter()
            .map(|e| {
                let mut v = Rat::one();
                for (i, &p) in e.iter().enumerate() {
                    for _ in 0..p {
                        v *= &x[i];
                    }
                }
                v
            })
            .collect()
    }
}

/// Dense polynomial as a coefficient vector over a monomial basis.
fn poly_mul(basis: &MonomialBasis, p: &[Rat], q_poly: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); basis.len()];
    for (i, ci) in p.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, cj) in q_poly.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let e: Vec<usize> = basis.exponents[i]
                .iter()
                .zip(basis.exponents[j].iter())
                .map(|(a, b)| a + b)
                .collect();
            out[basis.index_of(&e)] += ci * cj;
        }
    }
    out
}

/// `sqrt` of a nonnegative rational, when it is rational.
pub fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// One certificate: `b - a·x = sum_t coeff_t (poly_t(x))^2` on the vertex
/// set, with each `poly` given by coefficients over the monomial basis.
#[derive(Clone, Debug)]
pub struct FacetCertificate {
    pub facet: usize,
    pub levels: Vec<Rat>,
    pub exact: bool,
    pub terms: Vec<(Rat, Vec<Rat>)>,
}

impl FacetCertificate {
    /// The psd matrix `B = sum coeff · w w^T` realizing the certificate.
    pub fn matrix(&self, basis_len: usize) -> Mat {
        let mut b = Mat::zeros(basis_len, basis_len);
        for (c, w) in &self.terms {
            for i in 0..basis_len {
                if w[i].is_zero() {
                    continue;
                }
                for j in 0..basis_len {
                    let v = b.at(i, j) + c * &w[i] * &w[j];
                    *b.at_mut(i, j) = v;
                }
            }
        }
        b
    }
}

#[derive(Clone, Debug)]
pub struct KlevelLift {
    pub data: PsdLiftData,
    pub certificates: Vec<FacetCertificate>,
    pub basis: MonomialBasis,
    /// True when every facet certificate is exact.
    pub exact: bool,
}

/// Moment-matrix lift of a k-level polytope.
pub fn klevel_sos_lift(p: &Polytope, k: usize) -> Result<KlevelLift, SosError> {
    let report = is_k_level(p, k);
    if !report.is_k_level {
        let facet = report
            .facet_levels
            .iter()
            .position(|l| l.len() > k)
            .unwrap();
        return Err(SosError::NotKLevel {
            k,
            facet,
            got: report.facet_levels[facet].len(),
        });
    }
    if !p.equalities().is_empty() {
        return Err(SosError::NotFullDimensional);
    }
    let n = p.ambient_dim();
    let basis = MonomialBasis::new(n, k - 1);
    let nb = basis.len();

    // vertex moment matrices, vectorized over the upper triangle
    let tri: Vec<(usize, usize)> = (0..nb)
        .flat_map(|r| (r..nb).map(move |s| (r, s)))
        .collect();
    let tri_index: HashMap<(usize, usize), usize> =
        tri.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    let dd = tri.len();
    let moment_vecs: Vec<Vec<Rat>> = p
        .vertices()
        .iter()
        .map(|v| {
            let m = basis.evaluate(v);
            tri.iter().map(|&(r, s)| &m[r] * &m[s]).collect()
        })
        .collect();

    // affine hull of the moment vectors in constraint form C·vec = c0
    let diffs: Vec<Vec<Rat>> = moment_vecs[1..]
        .iter()
        .map(|m| crate::matrix::vec_sub(m, &moment_vecs[0]))
        .collect();
    let constraints = if diffs.is_empty() {
        Mat::identity(dd)
    } else {
        let rows = Mat::from_rows(diffs);
        let null = rows.nullspace();
        if null.is_empty() {
            Mat::zeros(0, dd)
        } else {
            Mat::from_rows(null)
        }
    };
    let rhs: Vec<Rat> = (0..constraints.rows())
        .map(|r| dot(&constraints.row(r), &moment_vecs[0]))
        .collect();

    // eliminate with ambient entry columns last, so x_1..x_n stay free
    let x_cols: Vec<usize> = (0..n)
        .map(|i| {
            let mut e = vec![0usize; n];
            e[i] = 1;
            tri_index[&(0, basis.index_of(&e))]
        })
        .collect();
    let mut col_order: Vec<usize> = (0..dd).filter(|c| !x_cols.contains(c)).collect();
    col_order.extend(x_cols.iter().copied());
    let (pivots, reduced, red_rhs) = rref_with_order(&constraints, &rhs, &col_order);
    for (i, xc) in x_cols.iter().enumerate() {
        if pivots.iter().any(|&(_, c)| c == *xc) {
            return Err(SosError::AmbientNotFree(i));
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut free_cols: Vec<usize> = x_cols.clone();
    free_cols.extend((0..dd).filter(|c| !pivot_cols.contains(c) && !x_cols.contains(c)));

    // assemble the pencil
    let sym_from_vec = |v: &[Rat]| -> Mat {
        Mat::from_fn(nb, nb, |r, s| {
            let key = if r <= s { (r, s) } else { (s, r) };
            v[tri_index[&key]].clone()
        })
    };
    let mut a0_vec = vec![Rat::zero(); dd];
    for (ri, &(row, col)) in pivots.iter().enumerate() {
        let _ = row;
        a0_vec[col] = red_rhs[ri].clone();
    }
    let a0 = sym_from_vec(&a0_vec);
    let mut mats = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); dd];
        v[fc] = Rat::one();
        for (ri, &(_, pc)) in pivots.iter().enumerate() {
            let coeff = reduced.at(ri, fc);
            if !coeff.is_zero() {
                v[pc] = -coeff.clone();
            }
        }
        mats.push(sym_from_vec(&v));
    }
    let lmi = LmiSpec {
        size: nb,
        ambient_vars: n,
        lifted_vars: free_cols.len() - n,
        a0,
        mats,
    };

    // vertex preimages read off the free entries of each moment vector
    let vertex_points: Vec<Vec<Rat>> = moment_vecs
        .iter()
        .map(|m| free_cols.iter().map(|&c| m[c].clone()).collect())
        .collect();

    // facet certificates
    let mut certificates = Vec::with_capacity(p.num_facets());
    for (i, (a, b)) in p.facets().iter().enumerate() {
        let levels: Vec<Rat> = report.facet_levels[i].iter().map(|(v, _)| v.clone()).collect();
        debug_assert!(levels[0].is_zero(), "facet not supporting its polytope");
        // affine form b - a·x over the basis
        let mut affine = vec![Rat::zero(); nb];
        affine[0] = b.clone();
        for (vi, coef) in a.iter().enumerate() {
            let mut e = vec![0usize; n];
            e[vi] = 1;
            affine[basis.index_of(&e)] = -coef.clone();
        }
        let roots: Option<Vec<Rat>> = levels.iter().map(rational_sqrt).collect();
        let cert = if let Some(roots) = roots {
            // interpolate r with r(level_s) = sqrt(level_s), certificate (r∘affine)^2
            let r_coeffs = lagrange(&levels, &roots);
            let mut w = vec![Rat::zero(); nb];
            let mut power = vec![Rat::zero(); nb];
            power[0] = Rat::one();
            for (deg, c) in r_coeffs.iter().enumerate() {
                if deg > 0 {
                    power = poly_mul(&basis, &power, &affine);
                }
                if !c.is_zero() {
                    for (wi, pi) in w.iter_mut().zip(power.iter()) {
                        *wi += c * pi;
                    }
                }
            }
            FacetCertificate {
                facet: i,
                levels,
                exact: true,
                terms: vec![(Rat::one(), w)],
            }
        } else if levels.len() == 2 {
            // b - a·x = (b - a·x)^2 / u on the two levels {0, u}
            let u = levels[1].clone();
            FacetCertificate {
                facet: i,
                levels,
                exact: true,
                terms: vec![(u.recip(), affine.clone())],
            }
        } else {
            FacetCertificate {
                facet: i,
                levels,
                exact: false,
                terms: Vec::new(),
            }
        };
        certificates.push(cert);
    }
    let exact = certificates.iter().all(|c| c.exact);
    let facet_certificates = if exact {
        certificates.iter().map(|c| c.matrix(nb)).collect()
    } else {
        Vec::new()
    };
    Ok(KlevelLift {
        data: PsdLiftData {
            lmi,
            vertex_points,
            facet_certificates,
        },
        certificates,
        basis,
        exact,
    })
}

/// Check the per-vertex identity `b - a·v = sum c (w·m(v))^2` for every
/// exact certificate; returns the index of the first failing (facet, vertex)
/// pair, if any.
pub fn check_certificates_vertexwise(
    p: &Polytope,
    lift: &KlevelLift,
) -> Option<(usize, usize)> {
    for cert in &lift.certificates {
        if !cert.exact {
            continue;
        }
        let (a, b) = &p.facets()[cert.facet];
        for (j, v) in p.vertices().iter().enumerate() {
            let m = lift.basis.evaluate(v);
            let mut rhs = Rat::zero();
            for (c, w) in &cert.terms {
                let val = dot(w, &m);
                rhs += c * &val * &val;
            }
            if rhs != b - dot(a, v) {
                return Some((cert.facet, j));
            }
        }
    }
    None
}

/// Coefficients (ascending degree) of the interpolation polynomial through
/// `(xs[i], ys[i])`.
fn lagrange(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    let t = xs.len();
    let mut coeffs = vec![Rat::zero(); t];
    for i in 0..t {
        // basis polynomial prod_{j != i} (X - x_j) / (x_i - x_j)
        let mut num = vec![Rat::one()];
        let mut den = Rat::one();
        for j in 0..t {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); num.len() + 1];
            for (d, c) in num.iter().enumerate() {
                next[d] -= c * &xs[j];
                next[d + 1] += c;
            }
            num = next;
            den *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / den;
        for (d, c) in num.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
}

/// Row-reduce `[c | rhs]` visiting columns in the given order; returns the
/// pivot (row, col) list, the reduced matrix and reduced rhs.
fn rref_with_order(c: &Mat, rhs: &[Rat], col_order: &[usize]) -> (Vec<(usize, usize)>, Mat, Vec<Rat>) {
    let mut m = c.clone();
    let mut r = rhs.to_vec();
    let rows = m.rows();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; rows];
    for &col in col_order {
        let Some(row) = (0..rows).find(|&i| !used[i] && !m.at(i, col).is_zero()) else {
            continue;
        };
        used[row] = true;
        let inv = m.at(row, col).recip();
        for j in 0..m.cols() {
            let v = m.at(row, j) * &inv;
            *m.at_mut(row, j) = v;
        }
        r[row] = &r[row] * &inv;
        for i in 0..rows {
            if i != row && !m.at(i, col).is_zero() {
                let f = m.at(i, col).clone();
                for j in 0..m.cols() {
                    let v = m.at(i, j) - &f * m.at(row, j);
                    *m.at_mut(i, j) = v;
                }
                r[i] = &r[i] - &f * &r[row];
            }
        }
        pivots.push((row, col));
    }
    // compact to pivot rows only, in pivot order
    let pm = Mat::from_fn(pivots.len(), m.cols(), |i, j| m.at(pivots[i].0, j).clone());
    let pr: Vec<Rat> = pivots.iter().map(|&(row, _)| r[row].clone()).collect();
    let pivots_out: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .map(|(i, &(_, c))| (i, c))
        .collect();
    (pivots_out, pm, pr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::{verify_psd_lift, VerificationTier};
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
    fn square_yields_printed_correlation_pencil() {
        let p = square();
        let lift = klevel_sos_lift(&p, 2).unwrap();
        let lmi = &lift.data.lmi;
        assert_eq!(lmi.size, 3);
        assert_eq!(lmi.ambient_vars, 2);
        assert_eq!(lmi.lifted_vars, 1);
        assert_eq!(lmi.a0, Mat::identity(3));
        // A_x has 1s at (0,1),(1,0); A_y at (0,2),(2,0); A_z at (1,2),(2,1)
        let expect = |pairs: &[(usize, usize)]| {
            Mat::from_fn(3, 3, |r, s| {
                if pairs.contains(&(r, s)) || pairs.contains(&(s, r)) {
                    qi(1)
                } else {
                    qi(0)
                }
            })
        };
        assert_eq!(lmi.mats[0], expect(&[(0, 1)]));
        assert_eq!(lmi.mats[1], expect(&[(0, 2)]));
        assert_eq!(lmi.mats[2], expect(&[(1, 2)]));
        assert!(lift.exact);
        assert_eq!(check_certificates_vertexwise(&p, &lift), None);
        let check = verify_psd_lift(&p, &lift.data).unwrap();
        assert!(check.verified);
        assert_eq!(check.tier, VerificationTier::PsdCertified);
    }

    #[test]
    fn cube_size_four_with_rank_one_vertices() {
        let mut pts = Vec::new();
        for sx in [-1i64, 1] {
            for sy in [-1i64, 1] {
                for sz in [-1i64, 1] {
                    pts.push(vec![qi(sx), qi(sy), qi(sz)]);
                }
            }
        }
        let p = Polytope::from_points(3, pts).unwrap();
        let lift = klevel_sos_lift(&p, 2).unwrap();
        assert_eq!(lift.data.lmi.size, 4);
        let check = verify_psd_lift(&p, &lift.data).unwrap();
        assert!(check.verified);
        assert_eq!(check.tier, VerificationTier::PsdCertified);
    }

    #[test]
    fn simplex_size_n_plus_one() {
        let mut pts = vec![vec![qi(0); 3]];
        for i in 0..3 {
            let mut e = vec![qi(0); 3];
            e[i] = qi(1);
            pts.push(e);
        }
        let p = Polytope::from_points(3, pts).unwrap();
        let lift = klevel_sos_lift(&p, 2).unwrap();
        assert_eq!(lift.data.lmi.size, 4);
        assert!(lift.exact);
        assert_eq!(check_certificates_vertexwise(&p, &lift), None);
        let check = verify_psd_lift(&p, &lift.data).unwrap();
        assert!(check.verified);
    }

    #[test]
    fn not_k_level_reported_with_facet() {
        // hexagon with levels {0, 4, 8} is 3-level but not 2-level
        let hexagon = Polytope::from_points(
            2,
            vec![
                vec![qi(2), qi(0)],
                vec![qi(1), qi(2)],
                vec![qi(-1), qi(2)],
                vec![qi(-2), qi(0)],
                vec![qi(-1), qi(-2)],
                vec![qi(1), qi(-2)],
            ],
        )
        .unwrap();
        match klevel_sos_lift(&hexagon, 2) {
            Err(SosError::NotKLevel { k: 2, .. }) => {}
            other => panic!("expected NotKLevel, got {other:?}"),
        }
        let lift = klevel_sos_lift(&hexagon, 3).unwrap();
        assert_eq!(lift.data.lmi.size, 6); // monomials of degree <= 2 in 2 vars
        // levels {0, 4, 8}: sqrt(8) irrational, so 3-level certificates are
        // partly symbolic; {0,4,8} facets are symbolic while any 2-level
        // facet would still be exact
        assert!(!lift.exact);
        let check = verify_psd_lift(&hexagon, &lift.data).unwrap();
        assert!(check.verified);
        assert_eq!(check.tier, VerificationTier::PsdPartial);
    }

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&qi(4)), Some(qi(2)));
        assert_eq!(rational_sqrt(&q(9, 16)), Some(q(3, 4)));
        assert_eq!(rational_sqrt(&qi(2)), None);
        assert_eq!(rational_sqrt(&qi(0)), Some(qi(0)));
        assert_eq!(rational_sqrt(&qi(-1)), None);
    }

    #[test]
    fn lagrange_interpolation() {
        // through (0,0), (1,1), (4,2): r(t) with r(t)^2 = t on {0,1,4}
        let xs = vec![qi(0), qi(1), qi(4)];
        let ys = vec![qi(0), qi(1), qi(2)];
        let c = lagrange(&xs, &ys);
        for (x, y) in xs.iter().zip(ys.iter()) {
            let mut v = Rat::zero();
            let mut p = Rat::one();
            for ci in &c {
                v += ci * &p;
                p *= x;
            }
            assert_eq!(&v, y);
        }
    }
}
