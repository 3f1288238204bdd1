//! Ordered binary decision diagrams and their flow-polytope lifts.
//!
//! An OBDD for a Boolean function `f` turns into a polyhedral lift of the
//! 0/1 polytope `conv{x : f(x) = 1}`: one lift coordinate per arc, flow
//! conservation at every node (one unit from the source to the 1-sink), and
//! the projection sums, per variable, the flow on the 1-labeled arcs of that
//! variable's decision nodes. The lift size is the number of arcs present in
//! the input; a zero-suppressed input (0-sink arcs omitted) therefore yields
//! a smaller lift, while the flow equations force zero flow on any arc that
//! lies on no source-to-1-sink path.

use crate::lifts::PolyhedralLift;
use crate::matrix::Mat;
use crate::polytope::HRep;
use crate::rational::Rat;
use num_traits::{One, Zero};
use std::collections::{HashMap, HashSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObddNode {
    /// Decision on variable `var` (0-based). Missing successors mean an
    /// implicit 0-sink arc (zero-suppressed style).
    Decision {
        var: usize,
        lo: Option<u32>,
        hi: Option<u32>,
    },
    Sink0,
    Sink1,
}

#[derive(Clone, Debug)]
pub struct Obdd {
    pub num_vars: usize,
    /// Node storage keyed by external id.
    pub nodes: Vec<(u32, ObddNode)>,
    pub source: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum ObddError {
    #[error("duplicate node id {0}")]
    DuplicateId(u32),
    #[error("unknown node id {0}")]
    UnknownId(u32),
    #[error("variable index {var} out of range (n = {n})")]
    VarOutOfRange { var: usize, n: usize },
    #[error("variable order violated on arc {from} -> {to}")]
    OrderViolated { from: u32, to: u32 },
    #[error("no 1-sink is reachable from the source")]
    NoAcceptingPath,
}

impl Obdd {
    fn index(&self) -> Result<HashMap<u32, &ObddNode>, ObddError> {
        let mut map = HashMap::new();
        for (id, node) in &self.nodes {
            if map.insert(*id, node).is_some() {
                return Err(ObddError::DuplicateId(*id));
            }
        }
        Ok(map)
    }

    /// Structural validation: ids resolve, variables in range, and every arc
    /// from a decision node descends strictly in the variable order (which
    /// also forces acyclicity and the read-once property).
    pub fn validate(&self) -> Result<(), ObddError> {
        let map = self.index()?;
        if !map.contains_key(&self.source) {
            return Err(ObddError::UnknownId(self.source));
        }
        for (id, node) in &self.nodes {
            if let ObddNode::Decision { var, lo, hi } = node {
                if *var >= self.num_vars {
                    return Err(ObddError::VarOutOfRange {
                        var: *var,
                        n: self.num_vars,
                    });
                }
                for succ in [lo, hi].into_iter().flatten() {
                    let target = map.get(succ).ok_or(ObddError::UnknownId(*succ))?;
                    if let ObddNode::Decision { var: tvar, .. } = target {
                        if *tvar <= *var {
                            return Err(ObddError::OrderViolated {
                                from: *id,
                                to: *succ,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluate the Boolean function on one assignment.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool, ObddError> {
        let map = self.index()?;
        let mut cur = self.source;
        loop {
            match map.get(&cur).ok_or(ObddError::UnknownId(cur))? {
                ObddNode::Sink0 => return Ok(false),
                ObddNode::Sink1 => return Ok(true),
                ObddNode::Decision { var, lo, hi } => {
                    let next = if assignment[*var] { hi } else { lo };
                    match next {
                        Some(id) => cur = *id,
                        None => return Ok(false), // pruned arc = 0-sink
                    }
                }
            }
        }
    }

    /// All satisfying assignments, by direct evaluation over 2^n inputs.
    pub fn satisfying_assignments(&self) -> Result<Vec<Vec<Rat>>, ObddError> {
        assert!(self.num_vars <= 16, "enumeration limited to n <= 16");
        let mut out = Vec::new();
        for mask in 0u32..(1 << self.num_vars) {
            let assignment: Vec<bool> = (0..self.num_vars).map(|i| mask & (1 << i) != 0).collect();
            if self.evaluate(&assignment)? {
                out.push(
                    assignment
                        .iter()
                        .map(|&b| if b { Rat::one() } else { Rat::zero() })
                        .collect(),
                );
            }
        }
        Ok(out)
    }

    /// OBDD for the parity function `x_1 + ... + x_n = 1 (mod 2)`, with
    /// `4n - 2` arcs: one node on level one, two per later level.
    pub fn xor(n: usize) -> Obdd {
        assert!(n >= 1);
        // id scheme: level l in 1..=n, parity p in {0,1}: id = 2*l + p
        // (level 1 only has parity 0); sinks 0 and 1
        let id = |level: usize, parity: usize| -> u32 { (2 * level + parity) as u32 };
        let mut nodes: Vec<(u32, ObddNode)> = vec![(0, ObddNode::Sink0), (1, ObddNode::Sink1)];
        for level in 1..=n {
            let parities: &[usize] = if level == 1 { &[0] } else { &[0, 1] };
            for &p in parities {
                let (lo, hi) = if level == n {
                    // final test: parity p, reading bit b, accepts iff p ^ b == 1
                    let lo_sink = if p == 1 { 1 } else { 0 };
                    let hi_sink = if p == 1 { 0 } else { 1 };
                    (lo_sink, hi_sink)
                } else {
                    (id(level + 1, p), id(level + 1, 1 - p))
                };
                nodes.push((
                    id(level, p),
                    ObddNode::Decision {
                        var: level - 1,
                        lo: Some(lo),
                        hi: Some(hi),
                    },
                ));
            }
        }
        Obdd {
            num_vars: n,
            nodes,
            source: id(1, 0),
        }
    }
}

/// One arc of the flow network, used to describe the lift's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: u32,
    pub to: u32,
    pub var: usize,
    pub label: bool,
}

#[derive(Clone, Debug)]
pub struct ObddFlowLift {
    pub lift: PolyhedralLift,
    /// Arc order matching the lift coordinates.
    pub arcs: Vec<Arc>,
}

/// Flow-polytope lift of the 0/1 polytope of an OBDD. The lift has exactly
/// one inequality per arc on a source-to-1-sink path, flow-conservation
/// equalities, and projects by summing 1-labeled arc flows per variable.
pub fn obdd_flow_lift(obdd: &Obdd) -> Result<ObddFlowLift, ObddError> {
    obdd.validate()?;
    let map = obdd.index()?;
    // forward reachability from the source
    let mut fwd: HashSet<u32> = HashSet::new();
    let mut stack = vec![obdd.source];
    while let Some(id) = stack.pop() {
        if !fwd.insert(id) {
            continue;
        }
        if let ObddNode::Decision { lo, hi, .. } = map[&id] {
            for succ in [lo, hi].into_iter().flatten() {
                stack.push(*succ);
            }
        }
    }
    // backward reachability to the 1-sink
    let mut back: HashSet<u32> = HashSet::new();
    let mut changed = true;
    for (id, node) in &obdd.nodes {
        if matches!(node, ObddNode::Sink1) {
            back.insert(*id);
        }
    }
    while changed {
        changed = false;
        for (id, node) in &obdd.nodes {
            if back.contains(id) {
                continue;
            }
            if let ObddNode::Decision { lo, hi, .. } = node {
                if [lo, hi]
                    .into_iter()
                    .flatten()
                    .any(|succ| back.contains(succ))
                {
                    back.insert(*id);
                    changed = true;
                }
            }
        }
    }
    if !(fwd.contains(&obdd.source) && back.contains(&obdd.source)) {
        return Err(ObddError::NoAcceptingPath);
    }
    // every arc present in the input contributes a lift coordinate; the flow
    // system itself forces zero flow on arcs off the accepting paths (so a
    // zero-suppressed input yields a smaller lift)
    let mut ids: Vec<u32> = obdd.nodes.iter().map(|(id, _)| *id).collect();
    ids.sort_unstable();
    let mut arcs: Vec<Arc> = Vec::new();
    for &id in &ids {
        if let ObddNode::Decision { var, lo, hi } = map[&id] {
            for (label, succ) in [(false, lo), (true, hi)] {
                if let Some(to) = succ {
                    arcs.push(Arc {
                        from: id,
                        to: *to,
                        var: *var,
                        label,
                    });
                }
            }
        }
    }
    let nodes: Vec<u32> = ids;
    let na = arcs.len();
    let mut ineqs = Vec::with_capacity(na);
    for j in 0..na {
        let mut a = vec![Rat::zero(); na];
        a[j] = -Rat::one();
        ineqs.push((a, Rat::zero()));
    }
    let mut eqs = Vec::new();
    for &v in &nodes {
        let mut e = vec![Rat::zero(); na];
        for (j, arc) in arcs.iter().enumerate() {
            if arc.to == v {
                e[j] += Rat::one();
            }
            if arc.from == v {
                e[j] -= Rat::one();
            }
        }
        let b = match map[&v] {
            ObddNode::Sink1 => Rat::one(),
            _ if v == obdd.source => -Rat::one(),
            _ => Rat::zero(),
        };
        eqs.push((e, b));
    }
    let proj = Mat::from_fn(obdd.num_vars, na, |i, j| {
        if arcs[j].var == i && arcs[j].label {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    Ok(ObddFlowLift {
        lift: PolyhedralLift {
            hrep: HRep {
                dim: na,
                ineqs,
                eqs,
            },
            proj,
        },
        arcs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::verify_polyhedral_lift;
    use crate::polytope::Polytope;

    #[test]
    fn xor_structure() {
        for n in 1..=6 {
            let b = Obdd::xor(n);
            b.validate().unwrap();
            let sat = b.satisfying_assignments().unwrap();
            assert_eq!(sat.len(), 1 << (n - 1), "odd-parity count at n = {n}");
        }
    }

    #[test]
    fn xor_arc_count_is_4n_minus_2() {
        for n in 2..=6 {
            let lift = obdd_flow_lift(&Obdd::xor(n)).unwrap();
            assert_eq!(lift.arcs.len(), 4 * n - 2);
            assert_eq!(lift.lift.size(), 4 * n - 2);
        }
    }

    #[test]
    fn xor_lift_projects_onto_odd_parity_polytope() {
        for n in 2..=4 {
            let b = Obdd::xor(n);
            let target = Polytope::from_points(n, b.satisfying_assignments().unwrap()).unwrap();
            let lift = obdd_flow_lift(&b).unwrap();
            let check = verify_polyhedral_lift(&target, &lift.lift).unwrap();
            assert!(check.verified, "n = {n}: {:?}", check.failure);
        }
    }

    #[test]
    fn single_variable_identity_function() {
        // f(x1) = x1: P_f = {1}, the lift is the single hi arc
        let b = Obdd {
            num_vars: 1,
            nodes: vec![
                (0, ObddNode::Sink0),
                (1, ObddNode::Sink1),
                (
                    2,
                    ObddNode::Decision {
                        var: 0,
                        lo: Some(0),
                        hi: Some(1),
                    },
                ),
            ],
            source: 2,
        };
        let lift = obdd_flow_lift(&b).unwrap();
        assert_eq!(lift.arcs.len(), 2);
        let target = Polytope::from_points(1, b.satisfying_assignments().unwrap()).unwrap();
        let check = verify_polyhedral_lift(&target, &lift.lift).unwrap();
        assert!(check.verified);
    }

    #[test]
    fn zero_suppressed_arcs_are_dropped() {
        // same function with an explicit 0-sink arc pruned
        let b = Obdd {
            num_vars: 1,
            nodes: vec![
                (1, ObddNode::Sink1),
                (
                    2,
                    ObddNode::Decision {
                        var: 0,
                        lo: None,
                        hi: Some(1),
                    },
                ),
            ],
            source: 2,
        };
        let lift = obdd_flow_lift(&b).unwrap();
        assert_eq!(lift.arcs.len(), 1);
    }

    #[test]
    fn malformed_inputs_rejected() {
        let bad = Obdd {
            num_vars: 2,
            nodes: vec![(
                0,
                ObddNode::Decision {
                    var: 0,
                    lo: Some(7),
                    hi: None,
                },
            )],
            source: 0,
        };
        assert!(bad.validate().is_err());
        let cyclic = Obdd {
            num_vars: 2,
            nodes: vec![
                (
                    0,
                    ObddNode::Decision {
                        var: 1,
                        lo: Some(1),
                        hi: Some(1),
                    },
                ),
                (
                    1,
                    ObddNode::Decision {
                        var: 1,
                        lo: Some(0),
                        hi: Some(0),
                    },
                ),
            ],
            source: 0,
        };
        assert!(matches!(
            cyclic.validate(),
            Err(ObddError::OrderViolated { .. })
        ));
    }
}
