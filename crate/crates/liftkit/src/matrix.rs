//! Dense rational matrices and vectors.
//!
//! All instances this toolkit works with are tiny, so the representation is a
//! dense row-major grid and every algorithm is plain fraction-free-enough
//! Gaussian elimination over `Rat`.

use crate::rational::{fmt_rat, Rat};
use num_traits::{One, Zero};

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_rat(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Rat::zero();
            for k in 0..self.cols {
                s += self.at(i, k) * other.at(k, j);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * &v[k];
                }
                s
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Trace inner product `<A, B> = sum_ij A_ij B_ij` of symmetric matrices.
    pub fn dot(&self, other: &Mat) -> Rat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut s = Rat::zero();
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            s += a * b;
        }
        s
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&i| !m.at(i, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m.at(rank, col).recip();
            for j in col..m.cols {
                let v = m.at(rank, j) * &inv;
                *m.at_mut(rank, j) = v;
            }
            for i in 0..m.rows {
                if i != rank && !m.at(i, col).is_zero() {
                    let f = m.at(i, col).clone();
                    for j in col..m.cols {
                        let v = m.at(i, j) - &f * m.at(rank, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solve `A x = b` exactly. Returns `None` when inconsistent; when the
    /// system is underdetermined, free variables are set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            rhs.swap(row, p);
            let inv = m.at(row, col).recip();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                *m.at_mut(row, j) = v;
            }
            rhs[row] = &rhs[row] * &inv;
            for i in 0..m.rows {
                if i != row && !m.at(i, col).is_zero() {
                    let f = m.at(i, col).clone();
                    for j in col..m.cols {
                        let v = m.at(i, j) - &f * m.at(row, j);
                        *m.at_mut(i, j) = v;
                    }
                    rhs[i] = &rhs[i] - &f * &rhs[row];
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        for i in row..m.rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); m.cols];
        for (r, c) in pivots {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }

    /// Basis of the nullspace `{x : A x = 0}`, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.at(row, col).recip();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                *m.at_mut(row, j) = v;
            }
            for i in 0..m.rows {
                if i != row && !m.at(i, col).is_zero() {
                    let f = m.at(i, col).clone();
                    for j in col..m.cols {
                        let v = m.at(i, j) - &f * m.at(row, j);
                        *m.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for &(r, c) in &pivots {
                v[c] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// `a · b` for rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        s += x * y;
    }
    s
}

/// `a + c*b` in place.
pub fn axpy(a: &mut [Rat], c: &Rat, b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x += c * y;
    }
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scale a rational vector by the unique positive factor making it an integer
/// vector with content 1.
pub fn primitive_scale(v: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

/// Lexicographic comparison of rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::zeros(3, 3).rank(), 0);
        assert_eq!(Mat::identity(4).rank(), 4);
        let m = Mat::from_rows(vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(1), qi(0), qi(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_and_nullspace() {
        let m = Mat::from_rows(vec![vec![qi(2), qi(1)], vec![qi(1), qi(3)]]);
        let x = m.solve(&[qi(5), qi(10)]).unwrap();
        assert_eq!(x, vec![qi(1), qi(3)]);
        let sing = Mat::from_rows(vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]]);
        assert!(sing.solve(&[qi(1), qi(3)]).is_none());
        let ns = sing.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(dot(&ns[0], &[qi(1), qi(1)]), qi(0));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![q(2, 3), q(-4, 3), qi(2)];
        assert_eq!(primitive_scale(&v), vec![qi(1), qi(-2), qi(3)]);
        let w = vec![qi(0), q(-1, 2)];
        assert_eq!(primitive_scale(&w), vec![qi(0), qi(-1)]);
    }
}
