//! Spectrahedral representation of the epigraph of a convex quadratic.
//!
//! For `f(x) = x^T A x + 2 b^T x + c` with `A ⪰ 0`,
//! `epi(f) = {(x, t) : [[t - c - 2b^T x, -(Ax)^T], [-Ax, A]] ⪰ 0}`.

use crate::lifts::LmiSpec;
use crate::matrix::{dot, Mat};
use crate::psd::{psd_check, PsdOutcome};
use crate::rational::Rat;
use num_traits::One;

#[derive(Debug, thiserror::Error)]
pub enum EpigraphError {
    #[error("matrix is not positive semidefinite (witness value {0})")]
    NotPsd(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch between A ({a}) and b ({b})")]
    DimensionMismatch { a: usize, b: usize },
}

/// Pencil over `(x_1..x_n, t)` cutting out the epigraph of the quadratic.
pub fn quadratic_epigraph_lmi(a: &Mat, b: &[Rat], c: &Rat) -> Result<LmiSpec, EpigraphError> {
    let n = a.rows();
    if b.len() != n {
        return Err(EpigraphError::DimensionMismatch { a: n, b: b.len() });
    }
    match psd_check(a) {
        Ok(PsdOutcome::Psd(_)) => {}
        Ok(PsdOutcome::NotPsd { value, .. }) => {
            return Err(EpigraphError::NotPsd(crate::rational::fmt_rat(&value)))
        }
        Err(_) => return Err(EpigraphError::NotSymmetric),
    }
    let size = n + 1;
    let mut a0 = Mat::zeros(size, size);
    *a0.at_mut(0, 0) = -c.clone();
    for i in 0..n {
        for j in 0..n {
            *a0.at_mut(i + 1, j + 1) = a.at(i, j).clone();
        }
    }
    let mut mats = Vec::with_capacity(size);
    for i in 0..n {
        // coefficient of x_i: -2 b_i in the corner, -(A e_i) on the border
        let mut m = Mat::zeros(size, size);
        *m.at_mut(0, 0) = -(&b[i] + &b[i]);
        for r in 0..n {
            let v = -a.at(r, i).clone();
            *m.at_mut(0, r + 1) = v.clone();
            *m.at_mut(r + 1, 0) = v;
        }
        mats.push(m);
    }
    let mut mt = Mat::zeros(size, size);
    *mt.at_mut(0, 0) = Rat::one();
    mats.push(mt);
    Ok(LmiSpec {
        size,
        ambient_vars: n + 1,
        lifted_vars: 0,
        a0,
        mats,
    })
}

/// Exact evaluation of the quadratic `x^T A x + 2 b^T x + c`.
pub fn quadratic_value(a: &Mat, b: &[Rat], c: &Rat, x: &[Rat]) -> Rat {
    let ax = a.mul_vec(x);
    dot(x, &ax) + (dot(b, x) + dot(b, x)) + c.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn unit_disk_slice() {
        // f(x) = x^T x, slice t = 1: [[1, x^T],[x, I]] up to the sign
        // convention on the border, psd iff |x| <= 1
        let a = Mat::identity(2);
        let lmi = quadratic_epigraph_lmi(&a, &[qi(0), qi(0)], &qi(0)).unwrap();
        assert_eq!(lmi.size, 3);
        let on_disk = |x: Rat, y: Rat| {
            let m = lmi.evaluate(&[x, y, qi(1)]);
            psd_check(&m).unwrap().is_psd()
        };
        assert!(on_disk(qi(1), qi(0)));
        assert!(on_disk(qi(0), qi(-1)));
        assert!(on_disk(q(3, 5), q(4, 5)));
        assert!(on_disk(q(1, 2), q(1, 2)));
        assert!(!on_disk(qi(1), qi(1)));
        assert!(!on_disk(q(3, 5), q(9, 10)));
        // boundary points make the pencil singular psd: check determinant 0
        let m = lmi.evaluate(&[q(3, 5), q(4, 5), qi(1)]);
        assert_eq!(crate::psd::determinant(&m), qi(0));
    }

    #[test]
    fn zero_quadratic_is_halfspace() {
        let a = Mat::zeros(2, 2);
        let lmi = quadratic_epigraph_lmi(&a, &[qi(0), qi(0)], &qi(0)).unwrap();
        let member = |t: Rat| {
            psd_check(&lmi.evaluate(&[qi(7), qi(-3), t]))
                .unwrap()
                .is_psd()
        };
        assert!(member(qi(0)));
        assert!(member(qi(5)));
        assert!(!member(qi(-1)));
    }

    #[test]
    fn shifted_diagonal_boundary() {
        // f(x) = x1^2 + 2 x2^2 - 5: at x = 0 membership flips at t = -5
        let a = Mat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(2)]]);
        let lmi = quadratic_epigraph_lmi(&a, &[qi(0), qi(0)], &qi(-5)).unwrap();
        let member = |t: Rat| {
            psd_check(&lmi.evaluate(&[qi(0), qi(0), t]))
                .unwrap()
                .is_psd()
        };
        assert!(member(qi(-5)));
        assert!(member(q(-49, 10)));
        assert!(!member(q(-51, 10)));
        assert_eq!(quadratic_value(&a, &[qi(0), qi(0)], &qi(-5), &[qi(0), qi(0)]), qi(-5));
    }

    #[test]
    fn non_psd_input_rejected() {
        let a = Mat::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
        assert!(matches!(
            quadratic_epigraph_lmi(&a, &[qi(0), qi(0)], &qi(0)),
            Err(EpigraphError::NotPsd(_))
        ));
    }

    #[test]
    fn membership_matches_quadratic_value() {
        let a = Mat::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), qi(1)]]);
        let b = [q(1, 2), qi(-1)];
        let c = q(1, 3);
        let lmi = quadratic_epigraph_lmi(&a, &b, &c).unwrap();
        let pts = [
            (qi(0), qi(0)),
            (qi(1), qi(-1)),
            (q(1, 2), q(1, 3)),
            (qi(-2), qi(3)),
        ];
        for (x, y) in pts {
            let f = quadratic_value(&a, &b, &c, &[x.clone(), y.clone()]);
            for dt in [qi(-1), qi(0), qi(1)] {
                let t = &f + &dt;
                let m = lmi.evaluate(&[x.clone(), y.clone(), t]);
                let member = psd_check(&m).unwrap().is_psd();
                // member iff f(x) <= t iff dt >= 0
                assert_eq!(member, dt >= qi(0));
            }
        }
    }
}
