//! Cone lifts and the universal lift verifier.
//!
//! A lift of a polytope `P` is a convex set `Q = K ∩ L` together with a
//! linear projection onto `P`'s ambient space such that `π(Q) = P`. Here `K`
//! is either a nonnegative orthant (polyhedral lift, stored as an `HRep`
//! plus projection matrix) or a psd cone (spectrahedral lift, stored as a
//! linear matrix inequality).
//!
//! Verification is exact in both directions for polyhedral lifts. For psd
//! lifts the vertex direction is checked exactly on supplied (or rank-one
//! constructed) preimages, and the reverse direction is certified facet by
//! facet from psd matrices that reproduce each facet inequality as a linear
//! identity on the pencil's subspace; when certificates are missing, the
//! result is reported as partially verified.

use crate::matrix::Mat;
use crate::polytope::{h_to_v, Polytope, PolytopeError};
use crate::psd::{psd_check, PsdOutcome};
use crate::rational::Rat;
use num_traits::Zero;

/// Polyhedral lift: `P = proj · (points of hrep)`.
#[derive(Clone, Debug)]
pub struct PolyhedralLift {
    pub hrep: crate::polytope::HRep,
    /// `n × ℓ` projection matrix from lift space to target space.
    pub proj: Mat,
}

impl PolyhedralLift {
    /// Number of inequality rows (the size of the orthant lift).
    pub fn size(&self) -> usize {
        self.hrep.ineqs.len()
    }
}

/// Spectrahedron `{z : A0 + Σ z_i A_i ⪰ 0}` with the first `ambient_vars`
/// coordinates of `z` projecting onto the target space.
#[derive(Clone, Debug)]
pub struct LmiSpec {
    pub size: usize,
    pub ambient_vars: usize,
    pub lifted_vars: usize,
    pub a0: Mat,
    pub mats: Vec<Mat>,
}

impl LmiSpec {
    pub fn num_vars(&self) -> usize {
        self.ambient_vars + self.lifted_vars
    }

    /// Evaluate the pencil at a full variable assignment.
    pub fn evaluate(&self, z: &[Rat]) -> Mat {
        assert_eq!(z.len(), self.num_vars());
        let mut m = self.a0.clone();
        for (c, a) in z.iter().zip(self.mats.iter()) {
            if !c.is_zero() {
                m = m.add(&a.scale(c));
            }
        }
        m
    }

    /// Check that all matrices are symmetric and of the declared size.
    pub fn well_formed(&self) -> bool {
        self.mats.len() == self.num_vars()
            && self.a0.rows() == self.size
            && self.a0.is_symmetric()
            && self
                .mats
                .iter()
                .all(|m| m.rows() == self.size && m.is_symmetric())
    }
}

/// Spectrahedral lift bundled with its verification evidence.
#[derive(Clone, Debug)]
pub struct PsdLiftData {
    pub lmi: LmiSpec,
    /// Full variable assignments, one per target vertex (same order).
    pub vertex_points: Vec<Vec<Rat>>,
    /// Per target facet: psd matrix `B` with `<A(z), B> = b_i - a_i·x` as a
    /// linear identity in `z`.
    pub facet_certificates: Vec<Mat>,
}

#[derive(Clone, Debug)]
pub enum ConeLift {
    Orthant(PolyhedralLift),
    Psd(PsdLiftData),
}

impl ConeLift {
    pub fn size(&self) -> usize {
        match self {
            ConeLift::Orthant(l) => l.size(),
            ConeLift::Psd(d) => d.lmi.size,
        }
    }
}

/// How much of `π(Q) = P` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationTier {
    /// Both inclusions by exact vertex enumeration.
    ExactPolyhedral,
    /// Vertex preimages exact; reverse inclusion from facet certificates.
    PsdCertified,
    /// Vertex preimages exact; no reverse certificates supplied.
    PsdPartial,
}

#[derive(Clone, Debug)]
pub struct LiftCheck {
    pub verified: bool,
    pub tier: VerificationTier,
    pub failure: Option<String>,
}

impl LiftCheck {
    fn ok(tier: VerificationTier) -> Self {
        LiftCheck {
            verified: true,
            tier,
            failure: None,
        }
    }

    fn fail(tier: VerificationTier, why: String) -> Self {
        LiftCheck {
            verified: false,
            tier,
            failure: Some(why),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LiftError {
    #[error("lift polyhedron is unbounded")]
    Unbounded,
    #[error("lift polyhedron is empty")]
    Empty,
    #[error("projection matrix is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    ProjectionShape {
        got_rows: usize,
        got_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("malformed LMI data: {0}")]
    MalformedLmi(String),
    #[error(transparent)]
    Polytope(PolytopeError),
}

/// Exact polyhedral lift verification: enumerate the lift's vertices,
/// project them, and check both inclusions against the target.
pub fn verify_polyhedral_lift(
    target: &Polytope,
    lift: &PolyhedralLift,
) -> Result<LiftCheck, LiftError> {
    let n = target.ambient_dim();
    let ell = lift.hrep.dim;
    if lift.proj.rows() != n || lift.proj.cols() != ell {
        return Err(LiftError::ProjectionShape {
            got_rows: lift.proj.rows(),
            got_cols: lift.proj.cols(),
            rows: n,
            cols: ell,
        });
    }
    let q = match h_to_v(&lift.hrep) {
        Ok(q) => q,
        Err(PolytopeError::Unbounded) => return Err(LiftError::Unbounded),
        Err(PolytopeError::Infeasible) => return Err(LiftError::Empty),
        Err(e) => return Err(LiftError::Polytope(e)),
    };
    verify_projected_points(target, &q, &lift.proj)
}

/// Shared core: `conv(proj * vertices(q)) == target`, both inclusions exact.
pub fn verify_projected_points(
    target: &Polytope,
    q: &Polytope,
    proj: &Mat,
) -> Result<LiftCheck, LiftError> {
    let projected: Vec<Vec<Rat>> = q.vertices().iter().map(|z| proj.mul_vec(z)).collect();
    for (idx, x) in projected.iter().enumerate() {
        if !target.contains(x) {
            return Ok(LiftCheck::fail(
                VerificationTier::ExactPolyhedral,
                format!("projected lift vertex {idx} lies outside the target"),
            ));
        }
    }
    for (j, v) in target.vertices().iter().enumerate() {
        match crate::polytope::in_convex_hull(&projected, v) {
            Ok(true) => {}
            Ok(false) => {
                return Ok(LiftCheck::fail(
                    VerificationTier::ExactPolyhedral,
                    format!("target vertex {j} is not in the projected lift"),
                ));
            }
            Err(e) => return Err(LiftError::Polytope(e)),
        }
    }
    Ok(LiftCheck::ok(VerificationTier::ExactPolyhedral))
}

/// Two-tier psd lift verification.
///
/// Forward: every target vertex must have a supplied preimage that satisfies
/// the pencil exactly (psd) and projects onto it. Reverse: for each target
/// facet `a·x <= b`, a certificate `B ⪰ 0` must satisfy `<A0, B> = b`,
/// `<A_xi, B> = -a_i` and `<A_w, B> = 0`, which makes `b - a·π(z) >= 0` an
/// exact consequence of `A(z) ⪰ 0`. With all certificates present the
/// verification is complete; otherwise it is reported partial.
pub fn verify_psd_lift(target: &Polytope, data: &PsdLiftData) -> Result<LiftCheck, LiftError> {
    let lmi = &data.lmi;
    if !lmi.well_formed() {
        return Err(LiftError::MalformedLmi("inconsistent pencil shape".into()));
    }
    if lmi.ambient_vars != target.ambient_dim() {
        return Err(LiftError::MalformedLmi(format!(
            "pencil has {} ambient variables, target lives in dimension {}",
            lmi.ambient_vars,
            target.ambient_dim()
        )));
    }
    if data.vertex_points.len() != target.num_vertices() {
        return Err(LiftError::MalformedLmi(format!(
            "{} vertex preimages supplied for {} vertices",
            data.vertex_points.len(),
            target.num_vertices()
        )));
    }
    // forward direction: exact preimage per vertex
    for (j, z) in data.vertex_points.iter().enumerate() {
        if z.len() != lmi.num_vars() {
            return Err(LiftError::MalformedLmi(format!(
                "vertex preimage {j} has wrong length"
            )));
        }
        if z[..lmi.ambient_vars] != target.vertices()[j][..] {
            return Ok(LiftCheck::fail(
                VerificationTier::PsdPartial,
                format!("preimage {j} does not project onto vertex {j}"),
            ));
        }
        let m = lmi.evaluate(z);
        match psd_check(&m).map_err(|e| LiftError::MalformedLmi(e.to_string()))? {
            PsdOutcome::Psd(_) => {}
            PsdOutcome::NotPsd { value, .. } => {
                return Ok(LiftCheck::fail(
                    VerificationTier::PsdPartial,
                    format!("preimage of vertex {j} violates the pencil (witness value {value})"),
                ));
            }
        }
    }
    if data.facet_certificates.is_empty() {
        return Ok(LiftCheck::ok(VerificationTier::PsdPartial));
    }
    if data.facet_certificates.len() != target.num_facets() {
        return Err(LiftError::MalformedLmi(format!(
            "{} facet certificates supplied for {} facets",
            data.facet_certificates.len(),
            target.num_facets()
        )));
    }
    for (i, (a, b)) in target.facets().iter().enumerate() {
        let cert = &data.facet_certificates[i];
        match psd_check(cert).map_err(|e| LiftError::MalformedLmi(e.to_string()))? {
            PsdOutcome::Psd(_) => {}
            PsdOutcome::NotPsd { value, .. } => {
                return Ok(LiftCheck::fail(
                    VerificationTier::PsdCertified,
                    format!("facet {i} certificate is not psd (witness value {value})"),
                ));
            }
        }
        if lmi.a0.dot(cert) != *b {
            return Ok(LiftCheck::fail(
                VerificationTier::PsdCertified,
                format!("facet {i} certificate: constant term mismatch"),
            ));
        }
        for (k, m) in lmi.mats.iter().enumerate() {
            let expected = if k < lmi.ambient_vars {
                -a[k].clone()
            } else {
                Rat::zero()
            };
            if m.dot(cert) != expected {
                return Ok(LiftCheck::fail(
                    VerificationTier::PsdCertified,
                    format!("facet {i} certificate: coefficient {k} mismatch"),
                ));
            }
        }
    }
    Ok(LiftCheck::ok(VerificationTier::PsdCertified))
}

/// Dispatch on the cone family.
pub fn verify_lift(target: &Polytope, lift: &ConeLift) -> Result<LiftCheck, LiftError> {
    match lift {
        ConeLift::Orthant(l) => verify_polyhedral_lift(target, l),
        ConeLift::Psd(d) => verify_psd_lift(target, d),
    }
}

/// `dot` re-exported for downstream identity checks on pencils.
pub fn pencil_identity_holds(lmi: &LmiSpec, cert: &Mat, coeffs: &[Rat], constant: &Rat) -> bool {
    lmi.a0.dot(cert) == *constant
        && lmi
            .mats
            .iter()
            .enumerate()
            .all(|(k, m)| m.dot(cert) == coeffs.get(k).cloned().unwrap_or_else(Rat::zero))
}
