//! Local-equivalence certificates and their checker.
//!
//! The checker only multiplies matrices and evaluates inner products; it does
//! not build or solve any linear system, so it stays independent of the
//! solver that produced the certificate.

use std::sync::Arc;

use thiserror::Error;

use crate::complex::{
    homology_type, iota_map, verify_homotopy, Character, GradedMap, IotaComplex, MapError,
};
use crate::gf2::BitVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("CertificateInvalid: {0}")]
    Invalid(String),
    #[error("CertificateMismatch: {0}")]
    Mismatch(String),
    #[error("CompositionVerificationFailed: {0}")]
    CompositionVerificationFailed(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Cycle representatives of the homology generators and cocycles detecting
/// them, one pair per side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyEvidence {
    pub left_cycle: BitVector,
    pub left_cocycle: BitVector,
    pub right_cycle: BitVector,
    pub right_cocycle: BitVector,
}

/// Maps `F: left -> right`, `G: right -> left` with skew homotopies
/// `F ι + ι F = ∂H_F + H_F ∂` and `G ι + ι G = ∂H_G + H_G ∂`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalEquivCertificate {
    pub left: Arc<IotaComplex>,
    pub right: Arc<IotaComplex>,
    pub f: GradedMap,
    pub h_f: GradedMap,
    pub g: GradedMap,
    pub h_g: GradedMap,
    pub evidence: HomologyEvidence,
}

fn invalid(msg: impl Into<String>) -> CertificateError {
    CertificateError::Invalid(msg.into())
}

fn check_map(
    label: &str,
    m: &GradedMap,
    source: &IotaComplex,
    target: &IotaComplex,
    degree: i64,
    character: Character,
) -> Result<(), CertificateError> {
    if !crate::complex::same_chain_complex(m.source(), source)
        || !crate::complex::same_chain_complex(m.target(), target)
    {
        return Err(invalid(format!("{label} has the wrong endpoints")));
    }
    if m.degree() != degree {
        return Err(invalid(format!("{label} has degree {}, expected {degree}", m.degree())));
    }
    m.check_entries(character)
        .map_err(|e| invalid(format!("{label} is not {character}: {e}")))
}

/// `λ` vanishes on boundaries, i.e. `λ ∘ ∂ = 0`.
fn is_cocycle(c: &IotaComplex, lambda: &BitVector) -> bool {
    c.diff_matrix().transpose().mul_vec(lambda).unwrap().is_zero()
}

fn is_cycle(c: &IotaComplex, z: &BitVector) -> bool {
    c.diff_matrix().mul_vec(z).unwrap().is_zero()
}

fn single_parity(c: &IotaComplex, v: &BitVector) -> bool {
    let mut parities = v.ones().map(|i| c.generators()[i].parity());
    match parities.next() {
        None => true,
        Some(p) => parities.all(|q| q == p),
    }
}

impl LocalEquivCertificate {
    /// The certificate `(id, 0, id, 0)` of a complex against itself.
    pub fn identity(c: &Arc<IotaComplex>) -> Option<Self> {
        let z = super::homology_representative(c)?;
        let lambda = super::homology_cocycle(c, &z)?;
        let zero = GradedMap::zero(c.clone(), c.clone(), 1, Character::Skew);
        Some(Self {
            left: c.clone(),
            right: c.clone(),
            f: GradedMap::identity(c),
            h_f: zero.clone(),
            g: GradedMap::identity(c),
            h_g: zero,
            evidence: HomologyEvidence {
                left_cycle: z.clone(),
                left_cocycle: lambda.clone(),
                right_cycle: z,
                right_cocycle: lambda,
            },
        })
    }

    /// Swaps the roles of the two sides.
    pub fn reverse(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
            f: self.g.clone(),
            h_f: self.h_g.clone(),
            g: self.f.clone(),
            h_g: self.h_f.clone(),
            evidence: HomologyEvidence {
                left_cycle: self.evidence.right_cycle.clone(),
                left_cocycle: self.evidence.right_cocycle.clone(),
                right_cycle: self.evidence.left_cycle.clone(),
                right_cocycle: self.evidence.left_cocycle.clone(),
            },
        }
    }

    /// Re-verifies every claim of the certificate from scratch.
    pub fn check(&self) -> Result<(), CertificateError> {
        let (l, r) = (&self.left, &self.right);
        check_map("F", &self.f, l, r, 0, Character::Filtered)?;
        check_map("G", &self.g, r, l, 0, Character::Filtered)?;
        check_map("H_F", &self.h_f, l, r, 1, Character::Skew)?;
        check_map("H_G", &self.h_g, r, l, 1, Character::Skew)?;
        if !self.f.is_chain_map() {
            return Err(invalid("F is not a chain map"));
        }
        if !self.g.is_chain_map() {
            return Err(invalid("G is not a chain map"));
        }
        let (iota_l, iota_r) = (iota_map(l), iota_map(r));
        if !verify_homotopy(&self.f.compose(&iota_l)?, &iota_r.compose(&self.f)?, &self.h_f)? {
            return Err(invalid("H_F does not witness F ι ≃ ι F"));
        }
        if !verify_homotopy(&self.g.compose(&iota_r)?, &iota_l.compose(&self.g)?, &self.h_g)? {
            return Err(invalid("H_G does not witness G ι ≃ ι G"));
        }
        self.check_homology()
    }

    fn check_homology(&self) -> Result<(), CertificateError> {
        let (l, r) = (&self.left, &self.right);
        let (hl, hr) = (homology_type(l), homology_type(r));
        let (Some(pl), Some(pr)) = (hl.unit_parity(), hr.unit_parity()) else {
            return Err(invalid(format!("homology is not unit: left {hl}, right {hr}")));
        };
        if pl != pr {
            return Err(invalid("unit homology lives in different parities"));
        }
        let ev = &self.evidence;
        for (side, c, z, lambda) in [
            ("left", l, &ev.left_cycle, &ev.left_cocycle),
            ("right", r, &ev.right_cycle, &ev.right_cocycle),
        ] {
            if z.len() != c.len() || lambda.len() != c.len() {
                return Err(invalid(format!("{side} evidence has the wrong length")));
            }
            if !is_cycle(c, z) || !single_parity(c, z) {
                return Err(invalid(format!("{side} representative is not a homogeneous cycle")));
            }
            if !is_cocycle(c, lambda) || !single_parity(c, lambda) {
                return Err(invalid(format!("{side} functional does not vanish on boundaries")));
            }
            if !lambda.dot(z) {
                return Err(invalid(format!("{side} representative is a boundary")));
            }
        }
        if !ev.right_cocycle.dot(&self.f.apply(&ev.left_cycle)) {
            return Err(invalid("F is zero on homology"));
        }
        if !ev.left_cocycle.dot(&self.g.apply(&ev.right_cycle)) {
            return Err(invalid("G is zero on homology"));
        }
        Ok(())
    }
}

/// Chains `left ~ middle` and `middle ~ right` into `left ~ right`.
pub fn compose_certificates(
    first: &LocalEquivCertificate,
    second: &LocalEquivCertificate,
) -> Result<LocalEquivCertificate, CertificateError> {
    if !crate::complex::same_chain_complex(&first.right, &second.left)
        || first.right.iota_matrix() != second.left.iota_matrix()
    {
        return Err(CertificateError::Mismatch(format!(
            "middle complexes differ: {} vs {}",
            first.right.name(),
            second.left.name()
        )));
    }
    let fail = |e: MapError| CertificateError::CompositionVerificationFailed(e.to_string());
    let f = second.f.compose(&first.f).map_err(fail)?;
    let h_f = second
        .f
        .compose(&first.h_f)
        .and_then(|a| second.h_f.compose(&first.f).and_then(|b| a.add(&b)))
        .and_then(|h| h.retype(Character::Skew))
        .map_err(fail)?;
    let g = first.g.compose(&second.g).map_err(fail)?;
    let h_g = first
        .g
        .compose(&second.h_g)
        .and_then(|a| first.h_g.compose(&second.g).and_then(|b| a.add(&b)))
        .and_then(|h| h.retype(Character::Skew))
        .map_err(fail)?;
    let out = LocalEquivCertificate {
        left: first.left.clone(),
        right: second.right.clone(),
        f,
        h_f,
        g,
        h_g,
        evidence: HomologyEvidence {
            left_cycle: first.evidence.left_cycle.clone(),
            left_cocycle: first.evidence.left_cocycle.clone(),
            right_cycle: second.evidence.right_cycle.clone(),
            right_cocycle: second.evidence.right_cocycle.clone(),
        },
    };
    out.check()
        .map_err(|e| CertificateError::CompositionVerificationFailed(e.to_string()))?;
    Ok(out)
}
