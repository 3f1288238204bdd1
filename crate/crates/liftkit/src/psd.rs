//! Exact positive-semidefiniteness testing.
//!
//! Symmetric pivoting LDL^T over the rationals. A rational symmetric matrix
//! is psd iff repeatedly pivoting on a positive diagonal entry never exposes
//! a negative diagonal entry or a zero diagonal with a nonzero residual row.
//! On failure the witness vector `v` with `v^T S v < 0` is reconstructed
//! through the elimination steps, so callers can re-check the verdict with a
//! single exact quadratic-form evaluation.

use crate::matrix::Mat;
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

/// LDL^T data for a psd matrix: `S = P^T L D L^T P` with unit lower L.
#[derive(Clone, Debug)]
pub struct LdlDecomposition {
    pub perm: Vec<usize>,
    pub l: Mat,
    pub d: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub enum PsdOutcome {
    Psd(LdlDecomposition),
    /// Witness with `v^T S v < 0`, together with the attained value.
    NotPsd { witness: Vec<Rat>, value: Rat },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd(_))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PsdError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// Evaluate `v^T S v` exactly.
pub fn quadratic_form(s: &Mat, v: &[Rat]) -> Rat {
    let sv = s.mul_vec(v);
    crate::matrix::dot(v, &sv)
}

/// Exact psd decision for a symmetric rational matrix.
pub fn psd_check(s: &Mat) -> Result<PsdOutcome, PsdError> {
    let n = s.rows();
    for i in 0..n {
        for j in 0..i {
            if s.at(i, j) != s.at(j, i) {
                return Err(PsdError::NotSymmetric(i, j));
            }
        }
    }
    let mut work = s.clone();
    let mut active: Vec<usize> = (0..n).collect(); // original indices still in play
    let mut perm: Vec<usize> = Vec::new();
    let mut l = Mat::identity(n);
    let mut d: Vec<Rat> = Vec::new();
    let mut steps: Vec<(usize, Vec<(usize, Rat)>, Rat)> = Vec::new(); // (pivot idx, row over active, pivot value)

    // Reconstruct an original-space witness from a witness for the current
    // Schur complement by back-substituting through the recorded pivots.
    let lift_witness = |steps: &[(usize, Vec<(usize, Rat)>, Rat)], w: Vec<(usize, Rat)>| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        for (idx, val) in w {
            v[idx] = val;
        }
        for (p, row, piv) in steps.iter().rev() {
            // v_p = -(sum_j S_pj v_j) / S_pp over the remaining coordinates
            let mut acc = Rat::zero();
            for (j, c) in row {
                acc += c * &v[*j];
            }
            v[*p] = -acc / piv;
        }
        v
    };

    loop {
        if active.is_empty() {
            let ldl = LdlDecomposition { perm, l, d };
            return Ok(PsdOutcome::Psd(ldl));
        }
        // negative diagonal: immediate witness
        if let Some(&p) = active.iter().find(|&&i| work.at(i, i).is_negative()) {
            let w = lift_witness(&steps, vec![(p, Rat::one())]);
            let value = quadratic_form(s, &w);
            debug_assert!(value.is_negative());
            return Ok(PsdOutcome::NotPsd { witness: w, value });
        }
        // pick the first positive diagonal pivot
        if let Some(pos) = active.iter().position(|&i| work.at(i, i).is_positive()) {
            let p = active[pos];
            let piv = work.at(p, p).clone();
            active.remove(pos);
            let row: Vec<(usize, Rat)> = active
                .iter()
                .map(|&j| (j, work.at(p, j).clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            for &i in &active {
                let li = work.at(p, i) / &piv;
                *l.at_mut(i, p) = li;
            }
            for &i in &active {
                for &j in &active {
                    let v = work.at(i, j) - work.at(p, i) * work.at(p, j) / &piv;
                    *work.at_mut(i, j) = v;
                }
            }
            steps.push((p, row, piv.clone()));
            perm.push(p);
            d.push(piv);
            continue;
        }
        // all remaining diagonal entries are zero: psd iff the rest is zero
        let bad = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !work.at(i, j).is_zero());
        match bad {
            None => {
                for &i in &active {
                    perm.push(i);
                    d.push(Rat::zero());
                }
                let ldl = LdlDecomposition { perm, l, d };
                return Ok(PsdOutcome::Psd(ldl));
            }
            Some((i, j)) => {
                // 2x2 block [[0, t],[t, 0]]: (1, -sign t) is negative
                let t = work.at(i, j).clone();
                let sgn = if t.is_positive() {
                    -Rat::one()
                } else {
                    Rat::one()
                };
                let w = lift_witness(&steps, vec![(i, Rat::one()), (j, sgn)]);
                let value = quadratic_form(s, &w);
                debug_assert!(value.is_negative());
                return Ok(PsdOutcome::NotPsd { witness: w, value });
            }
        }
    }
}

/// Test-oracle psd decision by brute-force principal minors (n <= 5).
/// A symmetric matrix is psd iff every principal minor is nonnegative.
pub fn psd_by_principal_minors(s: &Mat) -> bool {
    let n = s.rows();
    assert!(n <= 8, "principal-minor oracle is exponential");
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub = Mat::from_fn(idx.len(), idx.len(), |i, j| s.at(idx[i], idx[j]).clone());
        if determinant(&sub).is_negative() {
            return false;
        }
    }
    true
}

/// Exact determinant by fraction Gaussian elimination.
pub fn determinant(m: &Mat) -> Rat {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a.at(i, col).is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            for j in 0..n {
                let x = a.at(p, j).clone();
                let y = a.at(col, j).clone();
                *a.at_mut(p, j) = y;
                *a.at_mut(col, j) = x;
            }
            det = -det;
        }
        det *= a.at(col, col);
        let inv = a.at(col, col).recip();
        for i in col + 1..n {
            if !a.at(i, col).is_zero() {
                let f = a.at(i, col) * &inv;
                for j in col..n {
                    let v = a.at(i, j) - &f * a.at(col, j);
                    *a.at_mut(i, j) = v;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn identity_is_psd() {
        assert!(psd_check(&Mat::identity(3)).unwrap().is_psd());
    }

    #[test]
    fn indefinite_2x2_with_witness() {
        // [[1,2],[2,1]] has determinant -3; v = (1,-1) gives v^T S v = -2
        let s = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
        match psd_check(&s).unwrap() {
            PsdOutcome::NotPsd { witness, value } => {
                assert!(value.is_negative());
                assert_eq!(quadratic_form(&s, &witness), value);
            }
            _ => panic!("expected not psd"),
        }
        assert_eq!(quadratic_form(&s, &[qi(1), qi(-1)]), qi(-2));
        assert_eq!(determinant(&s), qi(-3));
    }

    #[test]
    fn all_ones_elliptope_vertex() {
        // [[1,1,1],[1,1,1],[1,1,1]] is rank-one psd
        let s = Mat::from_fn(3, 3, |_, _| qi(1));
        assert!(psd_check(&s).unwrap().is_psd());
    }

    #[test]
    fn zero_diagonal_nonzero_row() {
        let s = Mat::from_rows(vec![
            vec![qi(0), qi(1), qi(0)],
            vec![qi(1), qi(0), qi(0)],
            vec![qi(0), qi(0), qi(2)],
        ]);
        match psd_check(&s).unwrap() {
            PsdOutcome::NotPsd { witness, value } => {
                assert_eq!(quadratic_form(&s, &witness), value);
                assert!(value.is_negative());
            }
            _ => panic!("expected not psd"),
        }
    }

    #[test]
    fn non_symmetric_rejected() {
        let s = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(3), qi(1)]]);
        assert!(psd_check(&s).is_err());
    }

    #[test]
    fn witness_survives_elimination() {
        // psd leading block, negativity hidden behind a pivot
        let s = Mat::from_rows(vec![
            vec![qi(4), qi(2), qi(0)],
            vec![qi(2), qi(1), qi(3)],
            vec![qi(0), qi(3), qi(1)],
        ]);
        match psd_check(&s).unwrap() {
            PsdOutcome::NotPsd { witness, value } => {
                assert_eq!(quadratic_form(&s, &witness), value);
                assert!(value.is_negative());
            }
            _ => panic!("expected not psd"),
        }
    }
}
