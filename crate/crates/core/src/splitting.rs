//! Splitting a locally trivial ι-complex.
//!
//! Given filtered chain maps `F: F2[U,U^-1] -> C` and `G: C -> F2[U,U^-1]`
//! with `G F = id`, the complex decomposes as `im F ⊕ ker G`. The involution
//! need not respect that decomposition, but
//! `ι' = p1 + p2 ι p2` (with `p1 = F G`, `p2 = id + F G`) does, and
//! `J = H_F G + F H_G p2` is a skew homotopy from `ι` to `ι'`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    differential, homology_type, iota_map, iota_square_homotopy, normalize_level, verify_homotopy_with,
    Character, Generator, GradedMap, HomologyType, IotaComplex, MapError, ValidationErrors,
};
use crate::constructions::{direct_sum, dual, identity_complex, tensor, Variant};
use crate::gf2::BitMatrix;
use crate::localeq::{
    attempt_homotopy_equivalence, decide_local_equivalence, nullhomotopy_exists, HeuristicOutcome,
    LocalEquivCertificate, LocalEquivalence, Refutation, MAX_HEURISTIC_ROUNDS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("CertificateInvalid: {0}")]
    CertificateInvalid(String),
    #[error("GFNotIdentity: G ∘ F is not the identity of the unit complex")]
    GFNotIdentity,
    #[error("FiltrationAnomaly: {0}")]
    FiltrationAnomaly(String),
    #[error("HomotopyIdentityFailed: {0}")]
    HomotopyIdentityFailed(String),
    #[error("SummandNotAcyclic: {0}")]
    SummandNotAcyclic(HomologyType),
    #[error("NotLocallyTrivial: {0}")]
    NotLocallyTrivial(String),
    #[error("AssociationIotaMismatch: {0}")]
    AssociationIotaMismatch(String),
    #[error("{0}")]
    Validation(#[from] ValidationErrors),
    #[error("{0}")]
    Map(#[from] MapError),
}

fn is_unit_complex(c: &IotaComplex) -> bool {
    identity_complex().isomorphic_by_position(c)
}

/// The certificate's maps oriented as `F: E -> C`, `G: C -> E`.
struct Oriented {
    f: GradedMap,
    h_f: GradedMap,
    g: GradedMap,
    h_g: GradedMap,
}

fn orient(c: &Arc<IotaComplex>, cert: &LocalEquivCertificate) -> Result<Oriented, SplitError> {
    cert.check().map_err(|e| SplitError::CertificateInvalid(e.to_string()))?;
    let same = |x: &IotaComplex| {
        x.generators() == c.generators() && x.diff_matrix() == c.diff_matrix() && x.iota_matrix() == c.iota_matrix()
    };
    if is_unit_complex(&cert.left) && same(&cert.right) {
        Ok(Oriented { f: cert.f.clone(), h_f: cert.h_f.clone(), g: cert.g.clone(), h_g: cert.h_g.clone() })
    } else if is_unit_complex(&cert.right) && same(&cert.left) {
        Ok(Oriented { f: cert.g.clone(), h_f: cert.h_g.clone(), g: cert.f.clone(), h_g: cert.h_f.clone() })
    } else {
        Err(SplitError::CertificateInvalid(format!(
            "certificate relates {} and {}, not {} and the unit complex",
            cert.left.name(),
            cert.right.name(),
            c.name()
        )))
    }
}

/// A homogeneous element given by its support; returns its normalized
/// generator, placing it at the componentwise maximum of its terms' levels.
fn combined_generator(name: String, c: &IotaComplex, support: &[usize], maslov: i64) -> Generator {
    let mut level: Option<(i64, i64)> = None;
    for &y in support {
        let g = &c.generators()[y];
        debug_assert_eq!((g.maslov - maslov).rem_euclid(2), 0);
        let q = (g.maslov - maslov) / 2;
        let term = (-q, g.alexander - q);
        level = Some(match level {
            None => term,
            Some((i, j)) => (i.max(term.0), j.max(term.1)),
        });
    }
    let (i, j) = level.expect("non-empty support");
    let (m, a) = normalize_level(i, j, maslov);
    Generator::new(name, m, a)
}

/// `C` rewritten in the basis `{F(e)} ∪ (basis of ker G)`.
#[derive(Clone, Debug)]
pub struct SplitComplex {
    pub original: Arc<IotaComplex>,
    /// `C` in the new basis with the transported involution. Generator 0
    /// spans the unit summand, the rest span `ker G`.
    pub split: Arc<IotaComplex>,
    /// `Φ: split -> original`, `(x, y) ↦ x + y`.
    pub to_original: GradedMap,
    /// `Ψ: original -> split`, inverse of `to_original`.
    pub from_original: GradedMap,
    /// Index in `original` of the generator eliminated from `ker G`.
    pub pivot: usize,
    /// Whether `pivot` is the lowest-index generator with nonzero `G`-coefficient.
    pub pivot_is_lowest: bool,
    pub f: GradedMap,
    pub h_f: GradedMap,
    pub g: GradedMap,
    pub h_g: GradedMap,
    pub p1: GradedMap,
    pub p2: GradedMap,
}

impl SplitComplex {
    pub fn acyclic_indices(&self) -> Vec<usize> {
        (1..self.split.len()).collect()
    }
}

fn unit_name(c: &IotaComplex) -> String {
    let mut name = "unit".to_string();
    while c.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

fn try_pivot(
    c: &Arc<IotaComplex>,
    o: &Oriented,
    support: &[usize],
    pivot: usize,
) -> Result<(Arc<IotaComplex>, GradedMap, GradedMap), SplitError> {
    let n = c.len();
    let gens = c.generators();
    let unit_support: Vec<usize> = o.f.matrix().column(0).ones().collect();
    let name = match unit_support.as_slice() {
        [y] if *y == pivot => gens[pivot].name.clone(),
        _ => unit_name(c),
    };
    let mut new_gens = vec![combined_generator(name, c, &unit_support, 0)];
    let mut columns = vec![unit_support];
    for x in 0..n {
        if x == pivot {
            continue;
        }
        let cols = if support.contains(&x) { vec![x, pivot] } else { vec![x] };
        new_gens.push(combined_generator(gens[x].name.clone(), c, &cols, gens[x].maslov));
        columns.push(cols);
    }
    let phi = BitMatrix::from_entries(n, n, columns.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&i| (i, j))));
    let psi = phi.inverse().map_err(|_| SplitError::FiltrationAnomaly("basis change is singular".into()))?;
    let diff = psi.try_mul(c.diff_matrix()).unwrap().try_mul(&phi).unwrap();
    let iota = psi.try_mul(c.iota_matrix()).unwrap().try_mul(&phi).unwrap();
    let split = IotaComplex::new(format!("split({})", c.name()), new_gens, diff, iota, c.auxiliary())
        .map_err(|e| SplitError::FiltrationAnomaly(format!("pivot {}: {e}", gens[pivot].name)))?;
    let to_original = GradedMap::new(split.clone(), c.clone(), 0, Character::Filtered, phi)
        .map_err(|e| SplitError::FiltrationAnomaly(format!("pivot {}: Φ {e}", gens[pivot].name)))?;
    let from_original = GradedMap::new(c.clone(), split.clone(), 0, Character::Filtered, psi)
        .map_err(|e| SplitError::FiltrationAnomaly(format!("pivot {}: Ψ {e}", gens[pivot].name)))?;
    Ok((split, to_original, from_original))
}

/// Rewrites `C ≅ F2[U,U^-1] ⊕ ker G` from a certificate that `C` is locally
/// equivalent to the unit complex.
///
/// Pivots are tried in basis order; the first one whose combined basis
/// re-validates with a filtered basis change (and filtered inverse) is used.
pub fn split_complex(c: &Arc<IotaComplex>, cert: &LocalEquivCertificate) -> Result<SplitComplex, SplitError> {
    let o = orient(c, cert)?;
    let gf = o.g.compose(&o.f)?;
    if gf.matrix() != &BitMatrix::identity(1) {
        return Err(SplitError::GFNotIdentity);
    }
    let support: Vec<usize> = o.g.matrix().row(0).ones().collect();
    let mut last_err = None;
    for (k, &pivot) in support.iter().enumerate() {
        let (split, to_original, from_original) = match try_pivot(c, &o, &support, pivot) {
            Ok(v) => v,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let f = from_original.compose(&o.f)?;
        let h_f = from_original.compose(&o.h_f)?.retype(Character::Skew)?;
        let g = o.g.compose(&to_original)?;
        let h_g = o.h_g.compose(&to_original)?.retype(Character::Skew)?;
        let p1 = f.compose(&g)?;
        let p2 = GradedMap::identity(&split).add(&p1)?;
        let expected_p1 = BitMatrix::from_entries(split.len(), split.len(), [(0, 0)]);
        if p1.matrix() != &expected_p1 {
            return Err(SplitError::FiltrationAnomaly("F ∘ G is not the projection onto the unit summand".into()));
        }
        let d = split.diff_matrix();
        if (1..split.len()).any(|i| d.get(0, i) || d.get(i, 0)) {
            return Err(SplitError::FiltrationAnomaly("differential mixes the summands".into()));
        }
        return Ok(SplitComplex {
            original: c.clone(),
            split,
            to_original,
            from_original,
            pivot,
            pivot_is_lowest: k == 0,
            f,
            h_f,
            g,
            h_g,
            p1,
            p2,
        });
    }
    match last_err {
        Some(e) => Err(e),
        None => Err(SplitError::CertificateInvalid("G vanishes identically".into())),
    }
}

/// Machine-checked facts about a split.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub g_f_identity: bool,
    pub p1_idempotent: bool,
    pub p2_idempotent: bool,
    pub projections_sum_to_identity: bool,
    pub projections_orthogonal: bool,
    pub basis_change_inverse: bool,
    pub round_trip: bool,
    pub homotopy_identity: bool,
    pub homotopy_identity_on_original: bool,
    pub block_diagonal: bool,
    pub unit_block_identity: bool,
    pub acyclic_summand: bool,
    pub pivot_is_lowest: bool,
    /// Informational: `ι_A² ≃ id + Φ_A Ψ_A` on the acyclic summand.
    pub acyclic_iota_axiom: bool,
    /// Informational: `ι'² ≃ id + ΦΨ` on the split complex.
    pub split_iota_axiom: bool,
}

impl SplitReport {
    /// All the required (non-informational) checks passed.
    pub fn all_required(&self) -> bool {
        self.g_f_identity
            && self.p1_idempotent
            && self.p2_idempotent
            && self.projections_sum_to_identity
            && self.projections_orthogonal
            && self.basis_change_inverse
            && self.round_trip
            && self.homotopy_identity
            && self.homotopy_identity_on_original
            && self.block_diagonal
            && self.unit_block_identity
            && self.acyclic_summand
    }
}

#[derive(Clone, Debug)]
pub struct SplitResult {
    pub basis: SplitComplex,
    /// The split complex carrying `ι'` instead of the transported `ι`.
    pub split_with_iota_prime: Arc<IotaComplex>,
    pub unit_summand: Arc<IotaComplex>,
    pub acyclic_summand: Arc<IotaComplex>,
    pub iota_prime: GradedMap,
    pub j: GradedMap,
    pub report: SplitReport,
}

/// Replaces `ι` by `ι' = p1 + p2 ι p2` and checks `ι + ι' = ∂J + J∂` exactly
/// with `J = H_F G + F H_G p2`.
pub fn split_involution(c: &Arc<IotaComplex>, cert: &LocalEquivCertificate) -> Result<SplitResult, SplitError> {
    let sc = split_complex(c, cert)?;
    let s = &sc.split;
    let n = s.len();
    let iota = iota_map(s);
    let iota_prime = sc
        .p1
        .add(&sc.p2.compose(&iota)?.compose(&sc.p2)?)?
        .retype(Character::Skew)
        .map_err(|e| SplitError::HomotopyIdentityFailed(format!("ι' is not skew-filtered: {e}")))?;
    let j = sc
        .h_f
        .compose(&sc.g)?
        .add(&sc.f.compose(&sc.h_g)?.compose(&sc.p2)?)?
        .retype(Character::Skew)
        .map_err(|e| SplitError::HomotopyIdentityFailed(format!("J is not skew-filtered: {e}")))?;
    if !verify_homotopy_with(&iota, &iota_prime, &j, Character::Skew)? {
        return Err(SplitError::HomotopyIdentityFailed("ι + ι' ≠ ∂J + J∂".into()));
    }

    let m = iota_prime.matrix();
    let block_diagonal = (1..n).all(|i| !m.get(0, i) && !m.get(i, 0));
    let unit_block_identity = n > 0 && m.get(0, 0);
    if !block_diagonal || !unit_block_identity {
        return Err(SplitError::HomotopyIdentityFailed("ι' does not respect the splitting".into()));
    }

    let rest = sc.acyclic_indices();
    let a_gens: Vec<Generator> = rest.iter().map(|&i| s.generators()[i].clone()).collect();
    let acyclic = IotaComplex::new(
        format!("acyclic({})", c.name()),
        a_gens,
        s.diff_matrix().select(&rest, &rest),
        m.select(&rest, &rest),
        true,
    )?;
    let h_a = homology_type(&acyclic);
    if !h_a.is_acyclic() {
        return Err(SplitError::SummandNotAcyclic(h_a));
    }
    let unit_gen = &s.generators()[0];
    let unit_summand = IotaComplex::new(
        "unit",
        vec![unit_gen.clone()],
        BitMatrix::zeros(1, 1),
        BitMatrix::identity(1),
        false,
    )?;
    let split_with_iota_prime = s.with_iota(m.clone())?;

    // The same identity transported back to the original basis.
    let iota_prime_orig = sc.to_original.compose(&iota_prime)?.compose(&sc.from_original)?;
    let j_orig = sc.to_original.compose(&j)?.compose(&sc.from_original)?;
    let homotopy_identity_on_original =
        verify_homotopy_with(&iota_map(c), &iota_prime_orig, &j_orig, Character::Skew)?;

    let id = GradedMap::identity(s);
    let p1p1 = sc.p1.compose(&sc.p1)?;
    let p2p2 = sc.p2.compose(&sc.p2)?;
    let round_trip = sc.to_original.compose(&differential(s))?.compose(&sc.from_original)? == differential(c);
    let report = SplitReport {
        g_f_identity: sc.g.compose(&sc.f)?.matrix() == &BitMatrix::identity(1),
        p1_idempotent: p1p1 == sc.p1,
        p2_idempotent: p2p2.matrix() == sc.p2.matrix(),
        projections_sum_to_identity: sc.p1.add(&sc.p2)?.matrix() == id.matrix(),
        projections_orthogonal: sc.p1.compose(&sc.p2)?.is_zero(),
        basis_change_inverse: sc.to_original.compose(&sc.from_original)?.matrix() == &BitMatrix::identity(c.len())
            && sc.from_original.compose(&sc.to_original)?.matrix() == &BitMatrix::identity(n),
        round_trip,
        homotopy_identity: true,
        homotopy_identity_on_original,
        block_diagonal,
        unit_block_identity,
        acyclic_summand: true,
        pivot_is_lowest: sc.pivot_is_lowest,
        acyclic_iota_axiom: iota_square_homotopy(&acyclic).is_some(),
        split_iota_axiom: iota_square_homotopy(&split_with_iota_prime).is_some(),
    };
    Ok(SplitResult {
        basis: sc,
        split_with_iota_prime,
        unit_summand,
        acyclic_summand: acyclic,
        iota_prime,
        j,
        report,
    })
}

/// Splits `c` after deciding local triviality with the solver.
pub fn split_with_solver(c: &Arc<IotaComplex>) -> Result<(LocalEquivCertificate, SplitResult), SplitError> {
    let e = identity_complex();
    match decide_local_equivalence(c, &e) {
        LocalEquivalence::Equivalent(cert) => {
            let result = split_involution(c, &cert)?;
            Ok((cert, result))
        }
        LocalEquivalence::NotEquivalent(reasons) => Err(SplitError::NotLocallyTrivial(join_reasons(&reasons))),
    }
}

fn join_reasons(reasons: &[Refutation]) -> String {
    reasons.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}

/// How strongly the involutions of the two association orders agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociationRelation {
    Equal,
    SkewHomotopic,
    Homotopic,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociationReport {
    pub product: String,
    pub complexes_identical: bool,
    pub relation: AssociationRelation,
}

/// Whether generator `k` of `a` corresponds to generator `order[k]` of `b`
/// with equal gradings, differential and involution.
fn same_up_to_order(a: &IotaComplex, b: &IotaComplex, order: &[usize]) -> bool {
    if a.len() != b.len() || order.len() != a.len() {
        return false;
    }
    let grades = (0..a.len()).all(|k| {
        let (x, y) = (&a.generators()[k], &b.generators()[order[k]]);
        (x.maslov, x.alexander) == (y.maslov, y.alexander)
    });
    let permuted = |m: &BitMatrix| BitMatrix::from_entries(a.len(), a.len(), m.entries().map(|(r, c)| (order[r], order[c])));
    grades && &permuted(a.diff_matrix()) == b.diff_matrix() && &permuted(a.iota_matrix()) == b.iota_matrix()
}

#[derive(Clone, Debug)]
pub struct StableWitness {
    pub x1: Arc<IotaComplex>,
    pub x2: Arc<IotaComplex>,
    /// `A' = A × C2`, with `A` split off `C1 × C2*`.
    pub a_prime: Arc<IotaComplex>,
    /// `D' = C1 × D`, with `D` split off `C2* × C2`.
    pub d_prime: Arc<IotaComplex>,
    pub left_split: SplitResult,
    pub right_split: SplitResult,
    pub association: AssociationReport,
    /// `(unit ⊕ A) × C2 = (unit × C2) ⊕ (A × C2)` exactly, generators matched up.
    pub left_distributes: bool,
    /// `C1 × (unit ⊕ D) = (C1 × unit) ⊕ (C1 × D)` exactly, generators matched up.
    pub right_distributes: bool,
    pub homology_x1: HomologyType,
    pub homology_x2: HomologyType,
    pub certificate: Option<LocalEquivCertificate>,
    pub refutation: Vec<Refutation>,
    pub heuristic: HeuristicOutcome,
}

impl StableWitness {
    pub fn homology_matches(&self) -> bool {
        (self.homology_x1.even, self.homology_x1.odd) == (self.homology_x2.even, self.homology_x2.odd)
    }
}

fn association(
    product: String,
    left_first: &Arc<IotaComplex>,
    right_first: &Arc<IotaComplex>,
) -> Result<(AssociationRelation, bool), SplitError> {
    let same = left_first.len() == right_first.len()
        && left_first
            .generators()
            .iter()
            .zip(right_first.generators())
            .all(|(a, b)| (a.maslov, a.alexander) == (b.maslov, b.alexander))
        && left_first.diff_matrix() == right_first.diff_matrix();
    if !same {
        return Err(SplitError::AssociationIotaMismatch(format!("{product}: underlying complexes differ")));
    }
    let a = left_first.iota_matrix();
    let b = right_first.iota_matrix();
    if a == b {
        return Ok((AssociationRelation::Equal, true));
    }
    let diff = GradedMap::new(left_first.clone(), left_first.clone(), 0, Character::Unconstrained, a.try_add(b).unwrap())?;
    let found = |ch| nullhomotopy_exists(&diff, ch).expect("difference of chain maps").is_some();
    if found(Character::Skew) {
        Ok((AssociationRelation::SkewHomotopic, true))
    } else if found(Character::Unconstrained) {
        Ok((AssociationRelation::Homotopic, true))
    } else {
        Err(SplitError::AssociationIotaMismatch(format!("{product}: iota difference is not null-homotopic")))
    }
}

/// From a local equivalence `C1 ~ C2`, produces `X1 = C1 ⊕ D'` and
/// `X2 = C2 ⊕ A'` with acyclic `A'`, `D'`, and checks what can be checked
/// exactly about `X1 ≃ X2`.
pub fn stable_witness(
    c1: &Arc<IotaComplex>,
    c2: &Arc<IotaComplex>,
    cert: &LocalEquivCertificate,
    variant: Variant,
) -> Result<StableWitness, SplitError> {
    cert.check().map_err(|e| SplitError::CertificateInvalid(e.to_string()))?;
    let matches = |x: &IotaComplex, y: &IotaComplex| {
        x.generators() == y.generators() && x.diff_matrix() == y.diff_matrix() && x.iota_matrix() == y.iota_matrix()
    };
    if !(matches(&cert.left, c1) && matches(&cert.right, c2)) {
        return Err(SplitError::CertificateInvalid("certificate does not relate the given complexes".into()));
    }
    let c2_dual = dual(c2)?;
    let p = tensor(c1, &c2_dual, variant)?;
    let q = tensor(&c2_dual, c2, variant)?;
    let (left_split, right_split) = std::thread::scope(|s| {
        let left = s.spawn(|| split_with_solver(&p));
        let right = split_with_solver(&q);
        (left.join().expect("split thread panicked"), right)
    });
    let ((_, left_split), (_, right_split)) = (left_split?, right_split?);

    let order_a = tensor(&p, c2, variant)?;
    let order_b = tensor(c1, &q, variant)?;
    let product = format!("{} × {} × {}", c1.name(), c2_dual.name(), c2.name());
    let (relation, complexes_identical) = association(product.clone(), &order_a, &order_b)?;
    let association = AssociationReport { product, complexes_identical, relation };

    let a = left_split.acyclic_summand.clone();
    let d = right_split.acyclic_summand.clone();
    let a_prime = tensor(&a, c2, variant)?;
    let d_prime = tensor(c1, &d, variant)?;

    // (unit ⊕ A) × C2 against (unit × C2) ⊕ (A × C2): the orders agree.
    let left_product = tensor(&left_split.split_with_iota_prime, c2, variant)?;
    let left_sum = direct_sum(&tensor(&left_split.unit_summand, c2, variant)?, &a_prime)?;
    let left_distributes = same_up_to_order(&left_product, &left_sum, &(0..left_product.len()).collect::<Vec<_>>());
    // C1 × (unit ⊕ D) against (C1 × unit) ⊕ (C1 × D): pair (i, 0) sits at i,
    // pair (i, j) at n1 + i m + j - 1.
    let right_product = tensor(c1, &right_split.split_with_iota_prime, variant)?;
    let right_sum = direct_sum(&tensor(c1, &right_split.unit_summand, variant)?, &d_prime)?;
    let (n1, m) = (c1.len(), d.len());
    let order: Vec<usize> = (0..n1)
        .flat_map(|i| (0..=m).map(move |j| if j == 0 { i } else { n1 + i * m + j - 1 }))
        .collect();
    let right_distributes = same_up_to_order(&right_product, &right_sum, &order);

    let x1 = direct_sum(c1, &d_prime)?.renamed(format!("X1({},{})", c1.name(), c2.name()));
    let x2 = direct_sum(c2, &a_prime)?.renamed(format!("X2({},{})", c1.name(), c2.name()));
    let (homology_x1, homology_x2) = (homology_type(&x1), homology_type(&x2));
    let (certificate, refutation, heuristic) = match decide_local_equivalence(&x1, &x2) {
        LocalEquivalence::Equivalent(cert) => {
            let h = attempt_homotopy_equivalence(&cert, MAX_HEURISTIC_ROUNDS);
            (Some(cert), Vec::new(), h)
        }
        LocalEquivalence::NotEquivalent(r) => (None, r, HeuristicOutcome::Inconclusive { rounds: 0 }),
    };
    Ok(StableWitness {
        x1,
        x2,
        a_prime,
        d_prime,
        left_split,
        right_split,
        association,
        left_distributes,
        right_distributes,
        homology_x1,
        homology_x2,
        certificate,
        refutation,
        heuristic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{get, trefoil, unknot};
    use crate::localeq::LocalEquivalence;

    fn certificate(c: &Arc<IotaComplex>) -> LocalEquivCertificate {
        match decide_local_equivalence(c, &unknot()) {
            LocalEquivalence::Equivalent(cert) => cert,
            other => panic!("{} not locally trivial: {other:?}", c.name()),
        }
    }

    #[test]
    fn trefoil_times_its_dual_splits() {
        let t = trefoil();
        let p = tensor(&t, &dual(&t).unwrap(), Variant::One).unwrap();
        let cert = certificate(&p);
        for c in [cert.clone(), cert.reverse()] {
            let s = split_involution(&p, &c).unwrap();
            assert_eq!(s.acyclic_summand.len(), 8);
            assert!(homology_type(&s.acyclic_summand).is_acyclic());
            assert!(s.report.all_required(), "{:?}", s.report);
        }
    }

    #[test]
    fn mixed_sum_splits_into_unknot_and_box() {
        let c = get("unknot_box_mixed").unwrap();
        let s = split_involution(&c, &certificate(&c)).unwrap();
        assert_eq!(s.unit_summand.generators()[0].name, "e");
        let names: Vec<&str> = s.acyclic_summand.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["p", "q"]);
        assert!(s.acyclic_summand.isomorphic_by_position(&get("box").unwrap()));
        // The transported involution mixes the summands; the replacement does not.
        assert!(s.basis.split.iota_matrix().get(0, 1));
        assert!(!s.iota_prime.matrix().get(0, 1));
    }

    #[test]
    fn unknot_splits_trivially() {
        let e = unknot();
        let s = split_involution(&e, &LocalEquivCertificate::identity(&e).unwrap()).unwrap();
        assert!(s.acyclic_summand.is_empty());
        assert!(s.j.is_zero());
        assert!(s.report.all_required());
    }

    #[test]
    fn certificate_for_another_complex_is_rejected() {
        let t = trefoil();
        let p = tensor(&t, &dual(&t).unwrap(), Variant::One).unwrap();
        let e = unknot();
        let err = split_involution(&p, &LocalEquivCertificate::identity(&e).unwrap()).unwrap_err();
        assert!(matches!(err, SplitError::CertificateInvalid(_)));
        assert!(matches!(split_with_solver(&t), Err(SplitError::NotLocallyTrivial(_))));
    }

    #[test]
    fn stable_witness_for_trefoil() {
        let t = trefoil();
        let cert = LocalEquivCertificate::identity(&t).unwrap();
        let w = stable_witness(&t, &t, &cert, Variant::One).unwrap();
        assert!(w.homology_matches());
        assert_eq!((w.x1.len(), w.x2.len()), (27, 27));
        let c = w.certificate.as_ref().expect("X1 and X2 locally equivalent");
        assert!(c.check().is_ok() && c.reverse().check().is_ok());
        assert!(w.association.complexes_identical && w.left_distributes && w.right_distributes);
    }

    #[test]
    fn stable_witness_for_unknot_adds_nothing() {
        let e = unknot();
        let w = stable_witness(&e, &e, &LocalEquivCertificate::identity(&e).unwrap(), Variant::Two).unwrap();
        assert!(w.x1.isomorphic_by_position(&e) && w.x2.isomorphic_by_position(&e));
        assert!(w.heuristic.is_certified());
    }
}
