//! Exact rational linear programming.
//!
//! A two-phase full-tableau simplex over `Rat` with Bland's anticycling rule.
//! Every answer carries an exact certificate: optimal solutions come with
//! dual multipliers whose objective matches the primal exactly, infeasible
//! problems come with a Farkas vector, and unbounded problems with an
//! improving ray. `verify_optimal` / `verify_farkas` / `verify_unbounded`
//! re-check those certificates independently of the solver path.

use crate::matrix::{dot, is_zero_vec};
use crate::rational::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// `maximize c·x  s.t.  a_i·x {<=,=,>=} b_i,  l <= x <= u` (bounds optional).
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Sense, Rat)>,
    pub lower: Vec<Option<Rat>>,
    pub upper: Vec<Option<Rat>>,
}

#[derive(Debug, thiserror::Error)]
pub enum LpError {
    #[error("dimension mismatch: row {row} has {got} coefficients, expected {expected}")]
    DimensionMismatch {
        row: usize,
        got: usize,
        expected: usize,
    },
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            objective: vec![Rat::zero(); num_vars],
            rows: Vec::new(),
            lower: vec![None; num_vars],
            upper: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) {
        self.rows.push((coeffs, sense, rhs));
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rat>, upper: Option<Rat>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    fn check_dims(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        for (i, (a, _, _)) in self.rows.iter().enumerate() {
            if a.len() != n {
                return Err(LpError::DimensionMismatch {
                    row: i,
                    got: a.len(),
                    expected: n,
                });
            }
        }
        Ok(())
    }
}

/// Exact optimum with matching duals. `row_duals[i]` is the multiplier of
/// constraint row `i`; bound duals are the multipliers of `x_j >= l_j`
/// (nonpositive) and `x_j <= u_j` (nonnegative).
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<Rat>,
    pub objective: Rat,
    pub row_duals: Vec<Rat>,
    pub lower_duals: Vec<Rat>,
    pub upper_duals: Vec<Rat>,
}

/// Infeasibility certificate: sign-correct multipliers with
/// `sum_i y_i a_i + sum_j (lo_j + up_j) e_j = 0` and aggregated rhs `< 0`.
#[derive(Clone, Debug)]
pub struct Farkas {
    pub row_mult: Vec<Rat>,
    pub lower_mult: Vec<Rat>,
    pub upper_mult: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct UnboundedRay {
    pub feasible_point: Vec<Rat>,
    pub ray: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible(Farkas),
    Unbounded(UnboundedRay),
}

impl LpResult {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpResult::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpResult::Infeasible(_))
    }
}

// ---------------------------------------------------------------------------
// internal standard form
//
// Original variables split as x = x+ - x-; bounds become explicit rows; every
// row becomes an equality with slack/surplus; rows are flipped so rhs >= 0.
// Row i keeps a "record" unit column (its slack or artificial) from which the
// dual y_i is read off at the end.

struct StdForm {
    ncols: usize,
    nvars: usize, // original variable count
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    flip: Vec<bool>,
    // per std row: the original row index it came from, or a bound marker
    origin: Vec<RowOrigin>,
    record_col: Vec<usize>,
    artificial_cols: Vec<Option<usize>>,
    structural_cols: usize, // x+/x-/slack columns (artificials come after)
}

#[derive(Clone, Copy, Debug)]
enum RowOrigin {
    Constraint(usize),
    LowerBound(usize),
    UpperBound(usize),
}

fn build_std(p: &LpProblem) -> StdForm {
    let n = p.num_vars();
    let mut all_rows: Vec<(Vec<Rat>, Sense, Rat, RowOrigin)> = Vec::new();
    for (i, (a, s, b)) in p.rows.iter().enumerate() {
        all_rows.push((a.clone(), *s, b.clone(), RowOrigin::Constraint(i)));
    }
    for j in 0..n {
        if let Some(l) = &p.lower[j] {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            all_rows.push((e, Sense::Ge, l.clone(), RowOrigin::LowerBound(j)));
        }
        if let Some(u) = &p.upper[j] {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            all_rows.push((e, Sense::Le, u.clone(), RowOrigin::UpperBound(j)));
        }
    }
    let m = all_rows.len();
    let num_slack = all_rows
        .iter()
        .filter(|(_, s, _, _)| *s != Sense::Eq)
        .count();
    // columns: [x+ (n)] [x- (n)] [slacks] [artificials]
    let struct_cols = 2 * n + num_slack;
    let mut rows_out: Vec<Vec<Rat>> = Vec::new();
    let mut rhs = Vec::new();
    let mut flip = Vec::new();
    let mut origin = Vec::new();
    let mut record_col = Vec::new();
    let mut artificial_cols: Vec<Option<usize>> = Vec::new();
    let mut next_slack = 2 * n;
    let mut next_art = struct_cols;
    let mut pending_art: Vec<usize> = Vec::new();

    for (ri, (a, s, b, org)) in all_rows.into_iter().enumerate() {
        let neg = b.is_negative();
        let mut row = vec![Rat::zero(); struct_cols];
        for j in 0..n {
            let c = if neg { -&a[j] } else { a[j].clone() };
            row[j] = c.clone();
            row[n + j] = -c;
        }
        let slack_coeff = match s {
            Sense::Le => Some(Rat::one()),
            Sense::Ge => Some(-Rat::one()),
            Sense::Eq => None,
        };
        let mut rec = None;
        if let Some(c) = slack_coeff {
            let c = if neg { -c } else { c };
            row[next_slack] = c.clone();
            if c == Rat::one() {
                rec = Some(next_slack); // slack can serve as initial basis
            }
            next_slack += 1;
        }
        let b = if neg { -b } else { b };
        if rec.is_none() {
            pending_art.push(ri);
            artificial_cols.push(Some(next_art));
            rec = Some(next_art);
            next_art += 1;
        } else {
            artificial_cols.push(None);
        }
        rows_out.push(row);
        rhs.push(b);
        flip.push(neg);
        origin.push(org);
        record_col.push(rec.unwrap());
    }
    let ncols = next_art;
    for row in rows_out.iter_mut() {
        row.resize(ncols, Rat::zero());
    }
    for &ri in &pending_art {
        let c = artificial_cols[ri].unwrap();
        rows_out[ri][c] = Rat::one();
    }
    let _ = m;
    StdForm {
        ncols,
        nvars: n,
        rows: rows_out,
        rhs,
        flip,
        origin,
        record_col,
        artificial_cols,
        structural_cols: struct_cols,
    }
}

struct Tableau {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for j in 0..self.ncols {
            let v = &self.a[row][j] * &inv;
            self.a[row][j] = v;
        }
        self.b[row] = &self.b[row] * &inv;
        for i in 0..self.a.len() {
            if i != row && !self.a[i][col].is_zero() {
                let f = self.a[i][col].clone();
                for j in 0..self.ncols {
                    let v = &self.a[i][j] - &f * &self.a[row][j];
                    self.a[i][j] = v;
                }
                let v = &self.b[i] - &f * &self.b[row];
                self.b[i] = v;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c - c_B^T B^{-1} A` and objective `c_B^T B^{-1} b`.
    fn reduced_costs(&self, cost: &[Rat]) -> (Vec<Rat>, Rat) {
        let mut r = cost.to_vec();
        let mut obj = Rat::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            obj += cb * &self.b[i];
            for j in 0..self.ncols {
                if !self.a[i][j].is_zero() {
                    let v = &r[j] - cb * &self.a[i][j];
                    r[j] = v;
                }
            }
        }
        (r, obj)
    }

    /// Bland's rule simplex for `maximize cost·z`. `allowed` masks columns
    /// that may enter. Returns `Err(col)` when column `col` proves the LP
    /// unbounded.
    fn run(&mut self, cost: &[Rat], allowed: &[bool]) -> Result<(), usize> {
        loop {
            let (r, _) = self.reduced_costs(cost);
            let enter = (0..self.ncols)
                .find(|&j| allowed[j] && !self.basis.contains(&j) && r[j].is_positive());
            let Some(enter) = enter else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.a.len() {
                if self.a[i][enter].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return Err(enter),
            }
        }
    }
}

/// Solve an LP exactly. Deterministic: identical input yields an identical
/// result, including the certificate.
pub fn lp_solve(p: &LpProblem) -> Result<LpResult, LpError> {
    p.check_dims()?;
    let std = build_std(p);
    let m = std.rows.len();
    let mut t = Tableau {
        a: std.rows.clone(),
        b: std.rhs.clone(),
        basis: std.record_col.clone(),
        ncols: std.ncols,
    };
    // initial basis columns are unit columns by construction

    // phase I: drive artificial variables to zero
    let mut phase1 = vec![Rat::zero(); std.ncols];
    let mut have_art = false;
    for ac in std.artificial_cols.iter().flatten() {
        phase1[*ac] = -Rat::one();
        have_art = true;
    }
    if have_art {
        let allowed = vec![true; std.ncols];
        t.run(&phase1, &allowed).expect("phase I is bounded");
        let (r1, obj1) = t.reduced_costs(&phase1);
        if obj1.is_negative() {
            // infeasible: y_i = phase1[rec_i] - r1[rec_i], unflipped
            let y: Vec<Rat> = (0..m)
                .map(|i| {
                    let rc = std.record_col[i];
                    let v = &phase1[rc] - &r1[rc];
                    if std.flip[i] {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            let mut cert = Farkas {
                row_mult: vec![Rat::zero(); p.rows.len()],
                lower_mult: vec![Rat::zero(); p.num_vars()],
                upper_mult: vec![Rat::zero(); p.num_vars()],
            };
            for (i, yi) in y.into_iter().enumerate() {
                match std.origin[i] {
                    RowOrigin::Constraint(k) => cert.row_mult[k] = yi,
                    RowOrigin::LowerBound(j) => cert.lower_mult[j] = yi,
                    RowOrigin::UpperBound(j) => cert.upper_mult[j] = yi,
                }
            }
            debug_assert!(verify_farkas(p, &cert).is_ok());
            return Ok(LpResult::Infeasible(cert));
        }
        // drive basic artificials out with degenerate pivots
        for i in 0..m {
            let bi = t.basis[i];
            if std.artificial_cols.iter().flatten().any(|&c| c == bi) {
                if let Some(j) = (0..std.structural_cols).find(|&j| !t.a[i][j].is_zero()) {
                    t.pivot(i, j);
                }
                // else: redundant row, the artificial stays basic at zero
            }
        }
    }

    // phase II
    let mut cost = vec![Rat::zero(); std.ncols];
    for j in 0..std.nvars {
        cost[j] = p.objective[j].clone();
        cost[std.nvars + j] = -p.objective[j].clone();
    }
    let mut allowed = vec![true; std.ncols];
    for ac in std.artificial_cols.iter().flatten() {
        allowed[*ac] = false;
    }
    let extract_x = |t: &Tableau| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); std.nvars];
        for (i, &bi) in t.basis.iter().enumerate() {
            if bi < std.nvars {
                x[bi] += &t.b[i];
            } else if bi < 2 * std.nvars {
                x[bi - std.nvars] -= &t.b[i];
            }
        }
        x
    };
    match t.run(&cost, &allowed) {
        Err(enter) => {
            let x = extract_x(&t);
            let mut d = vec![Rat::zero(); std.nvars];
            if enter < std.nvars {
                d[enter] += Rat::one();
            } else if enter < 2 * std.nvars {
                d[enter - std.nvars] -= Rat::one();
            }
            for (i, &bi) in t.basis.iter().enumerate() {
                let step = -&t.a[i][enter];
                if bi < std.nvars {
                    d[bi] += &step;
                } else if bi < 2 * std.nvars {
                    d[bi - std.nvars] -= &step;
                }
            }
            let ray = UnboundedRay {
                feasible_point: x,
                ray: d,
            };
            debug_assert!(verify_unbounded(p, &ray).is_ok());
            Ok(LpResult::Unbounded(ray))
        }
        Ok(()) => {
            let (r, _) = t.reduced_costs(&cost);
            let x = extract_x(&t);
            let objective = dot(&p.objective, &x);
            let mut sol = LpSolution {
                x,
                objective,
                row_duals: vec![Rat::zero(); p.rows.len()],
                lower_duals: vec![Rat::zero(); p.num_vars()],
                upper_duals: vec![Rat::zero(); p.num_vars()],
            };
            for i in 0..m {
                let rc = std.record_col[i];
                let v = &cost[rc] - &r[rc];
                let v = if std.flip[i] { -v } else { v };
                match std.origin[i] {
                    RowOrigin::Constraint(k) => sol.row_duals[k] = v,
                    RowOrigin::LowerBound(j) => sol.lower_duals[j] = v,
                    RowOrigin::UpperBound(j) => sol.upper_duals[j] = v,
                }
            }
            debug_assert!(verify_optimal(p, &sol).is_ok(), "{:?}", verify_optimal(p, &sol));
            Ok(LpResult::Optimal(sol))
        }
    }
}

// ---------------------------------------------------------------------------
// certificate validation (independent of the solver internals)

fn primal_feasible(p: &LpProblem, x: &[Rat]) -> Result<(), String> {
    for (i, (a, s, b)) in p.rows.iter().enumerate() {
        let v = dot(a, x);
        let ok = match s {
            Sense::Le => v <= *b,
            Sense::Eq => v == *b,
            Sense::Ge => v >= *b,
        };
        if !ok {
            return Err(format!("row {i} violated"));
        }
    }
    for j in 0..p.num_vars() {
        if let Some(l) = &p.lower[j] {
            if &x[j] < l {
                return Err(format!("lower bound {j} violated"));
            }
        }
        if let Some(u) = &p.upper[j] {
            if &x[j] > u {
                return Err(format!("upper bound {j} violated"));
            }
        }
    }
    Ok(())
}

fn dual_signs_ok(p: &LpProblem, row: &[Rat], lo: &[Rat], up: &[Rat]) -> Result<(), String> {
    for (i, (_, s, _)) in p.rows.iter().enumerate() {
        match s {
            Sense::Le if row[i].is_negative() => return Err(format!("dual sign row {i}")),
            Sense::Ge if row[i].is_positive() => return Err(format!("dual sign row {i}")),
            _ => {}
        }
    }
    for j in 0..p.num_vars() {
        if lo[j].is_positive() || (p.lower[j].is_none() && !lo[j].is_zero()) {
            return Err(format!("lower dual sign {j}"));
        }
        if up[j].is_negative() || (p.upper[j].is_none() && !up[j].is_zero()) {
            return Err(format!("upper dual sign {j}"));
        }
    }
    Ok(())
}

fn dual_combination(p: &LpProblem, row: &[Rat], lo: &[Rat], up: &[Rat]) -> (Vec<Rat>, Rat) {
    let n = p.num_vars();
    let mut g = vec![Rat::zero(); n];
    let mut rhs = Rat::zero();
    for (i, (a, _, b)) in p.rows.iter().enumerate() {
        if !row[i].is_zero() {
            for j in 0..n {
                g[j] += &row[i] * &a[j];
            }
            rhs += &row[i] * b;
        }
    }
    for j in 0..n {
        if !lo[j].is_zero() {
            g[j] += &lo[j];
            rhs += &lo[j] * p.lower[j].as_ref().unwrap();
        }
        if !up[j].is_zero() {
            g[j] += &up[j];
            rhs += &up[j] * p.upper[j].as_ref().unwrap();
        }
    }
    (g, rhs)
}

/// Exact check of primal feasibility, dual feasibility and objective equality.
pub fn verify_optimal(p: &LpProblem, s: &LpSolution) -> Result<(), String> {
    primal_feasible(p, &s.x)?;
    dual_signs_ok(p, &s.row_duals, &s.lower_duals, &s.upper_duals)?;
    let (g, rhs) = dual_combination(p, &s.row_duals, &s.lower_duals, &s.upper_duals);
    if g != p.objective {
        return Err("dual combination does not match objective".into());
    }
    if rhs != s.objective {
        return Err("dual objective differs from primal".into());
    }
    if dot(&p.objective, &s.x) != s.objective {
        return Err("stored objective differs from c.x".into());
    }
    Ok(())
}

/// Exact check that a Farkas certificate demonstrates infeasibility.
pub fn verify_farkas(p: &LpProblem, c: &Farkas) -> Result<(), String> {
    dual_signs_ok(p, &c.row_mult, &c.lower_mult, &c.upper_mult)?;
    let (g, rhs) = dual_combination(p, &c.row_mult, &c.lower_mult, &c.upper_mult);
    if !is_zero_vec(&g) {
        return Err("multiplier combination is not the zero functional".into());
    }
    if !rhs.is_negative() {
        return Err("aggregated right-hand side is not negative".into());
    }
    Ok(())
}

/// Exact check of an unboundedness certificate.
pub fn verify_unbounded(p: &LpProblem, u: &UnboundedRay) -> Result<(), String> {
    primal_feasible(p, &u.feasible_point)?;
    for (i, (a, s, _)) in p.rows.iter().enumerate() {
        let v = dot(a, &u.ray);
        let ok = match s {
            Sense::Le => !v.is_positive(),
            Sense::Eq => v.is_zero(),
            Sense::Ge => !v.is_negative(),
        };
        if !ok {
            return Err(format!("ray violates row {i}"));
        }
    }
    for j in 0..p.num_vars() {
        if p.lower[j].is_some() && u.ray[j].is_negative() {
            return Err(format!("ray leaves lower bound {j}"));
        }
        if p.upper[j].is_some() && u.ray[j].is_positive() {
            return Err(format!("ray leaves upper bound {j}"));
        }
    }
    if !dot(&p.objective, &u.ray).is_positive() {
        return Err("ray does not improve the objective".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn one_variable_box() {
        // max x s.t. x <= 1, x >= 0
        let mut p = LpProblem::new(1);
        p.objective = vec![qi(1)];
        p.add_row(vec![qi(1)], Sense::Le, qi(1));
        p.set_bounds(0, Some(qi(0)), None);
        let r = lp_solve(&p).unwrap();
        let s = r.optimal().expect("optimal");
        assert_eq!(s.x, vec![qi(1)]);
        assert_eq!(s.objective, qi(1));
        verify_optimal(&p, s).unwrap();
    }

    #[test]
    fn empty_box_is_infeasible_with_farkas() {
        // max x s.t. x <= -1, x >= 0
        let mut p = LpProblem::new(1);
        p.objective = vec![qi(1)];
        p.add_row(vec![qi(1)], Sense::Le, qi(-1));
        p.set_bounds(0, Some(qi(0)), None);
        match lp_solve(&p).unwrap() {
            LpResult::Infeasible(f) => verify_farkas(&p, &f).unwrap(),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn square_vertex_optimum() {
        // max x1+x2 over [-1,1]^2 -> 2 at (1,1)
        let mut p = LpProblem::new(2);
        p.objective = vec![qi(1), qi(1)];
        p.set_bounds(0, Some(qi(-1)), Some(qi(1)));
        p.set_bounds(1, Some(qi(-1)), Some(qi(1)));
        let r = lp_solve(&p).unwrap();
        let s = r.optimal().unwrap();
        assert_eq!(s.objective, qi(2));
        assert_eq!(s.x, vec![qi(1), qi(1)]);
    }

    #[test]
    fn unbounded_detected() {
        let mut p = LpProblem::new(2);
        p.objective = vec![qi(1), qi(0)];
        p.add_row(vec![qi(0), qi(1)], Sense::Le, qi(5));
        match lp_solve(&p).unwrap() {
            LpResult::Unbounded(u) => verify_unbounded(&p, &u).unwrap(),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_fractions() {
        // max x + y s.t. 2x + y = 3/2, x - y <= 1/3, x >= 0, y >= 0
        // objective = 3/2 - x on the equality, so the optimum is x = 0, y = 3/2
        let mut p = LpProblem::new(2);
        p.objective = vec![qi(1), qi(1)];
        p.add_row(vec![qi(2), qi(1)], Sense::Eq, q(3, 2));
        p.add_row(vec![qi(1), qi(-1)], Sense::Le, q(1, 3));
        p.set_bounds(0, Some(qi(0)), None);
        p.set_bounds(1, Some(qi(0)), None);
        let r = lp_solve(&p).unwrap();
        let s = r.optimal().unwrap();
        verify_optimal(&p, s).unwrap();
        assert_eq!(s.x, vec![qi(0), q(3, 2)]);
        assert_eq!(s.objective, q(3, 2));
    }

    #[test]
    fn free_variable_equality_unbounded() {
        // max x + y s.t. 2x + y = 3/2, x - y <= 1/3 with x free below
        let mut p = LpProblem::new(2);
        p.objective = vec![qi(1), qi(1)];
        p.add_row(vec![qi(2), qi(1)], Sense::Eq, q(3, 2));
        p.add_row(vec![qi(1), qi(-1)], Sense::Le, q(1, 3));
        match lp_solve(&p).unwrap() {
            LpResult::Unbounded(u) => verify_unbounded(&p, &u).unwrap(),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        let mut p = LpProblem::new(2);
        p.objective = vec![qi(1), qi(2)];
        p.add_row(vec![qi(1), qi(1)], Sense::Le, qi(1));
        p.add_row(vec![qi(2), qi(2)], Sense::Le, qi(2)); // redundant
        p.add_row(vec![qi(1), qi(1)], Sense::Ge, qi(1)); // forces the edge
        p.set_bounds(0, Some(qi(0)), None);
        p.set_bounds(1, Some(qi(0)), None);
        let r = lp_solve(&p).unwrap();
        let s = r.optimal().unwrap();
        assert_eq!(s.objective, qi(2));
        assert_eq!(s.x, vec![qi(0), qi(1)]);
        verify_optimal(&p, s).unwrap();
    }
}
