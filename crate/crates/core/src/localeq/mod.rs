//! Deciding local equivalence exactly.
//!
//! Every question here (is there a chain map of this shape, a homotopy, a
//! local map) is an affine F2 system in the admissible entries of the unknown
//! maps, so a negative answer is a proof of non-existence.

mod certificate;
mod heuristic;
mod system;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use certificate::{compose_certificates, CertificateError, HomologyEvidence, LocalEquivCertificate};
pub use heuristic::{attempt_homotopy_equivalence, HeuristicOutcome, HomotopyEquivalence, MAX_HEURISTIC_ROUNDS};
pub(crate) use system::{LinearSystem, Term};

use crate::complex::{homology_type, parity_block, Character, GradedMap, IotaComplex, Parity};
use crate::gf2::{BitMatrix, BitVector, SolutionSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalEqError {
    #[error("NotAChainMap: the map to be null-homotopic is not a chain map")]
    NotAChainMap,
}

/// All chain maps of a fixed degree and character between two complexes.
pub struct ChainMapSpace {
    system: LinearSystem,
    block: system::BlockId,
    space: SolutionSpace,
}

impl ChainMapSpace {
    pub fn space(&self) -> &SolutionSpace {
        &self.space
    }

    /// Number of admissible entry positions (unknowns).
    pub fn positions(&self) -> usize {
        self.system.block_len(self.block)
    }

    pub fn dimension(&self) -> usize {
        self.space.kernel_basis().len()
    }

    pub fn map_of(&self, x: &BitVector) -> GradedMap {
        self.system.extract(self.block, x)
    }

    pub fn basis_maps(&self) -> Vec<GradedMap> {
        self.space.kernel_basis().iter().map(|v| self.map_of(v)).collect()
    }

    pub fn contains(&self, map: &GradedMap) -> bool {
        map.is_chain_map() && self.system.embed(self.block, map).is_some()
    }
}

/// Parametrizes every map `c1 -> c2` of the given degree and character with
/// `∂f + f∂ = 0`.
pub fn chain_map_space(
    c1: &Arc<IotaComplex>,
    c2: &Arc<IotaComplex>,
    degree: i64,
    character: Character,
) -> ChainMapSpace {
    let mut system = LinearSystem::new();
    let block = system.add_block(c1, c2, degree, character);
    let rhs = BitMatrix::zeros(c2.len(), c1.len());
    system.add_equation(
        &[
            Term::new(Some(c2.diff_matrix()), block, None),
            Term::new(None, block, Some(c1.diff_matrix())),
        ],
        &rhs,
    );
    let space = system.solve();
    ChainMapSpace { system, block, space }
}

/// Solves `∂H + H∂ = P` for `H` of degree `deg P + 1` with the given character.
pub fn nullhomotopy_exists(p: &GradedMap, character: Character) -> Result<Option<GradedMap>, LocalEqError> {
    if !p.is_chain_map() {
        return Err(LocalEqError::NotAChainMap);
    }
    let (src, tgt) = (p.source(), p.target());
    let mut system = LinearSystem::new();
    let h = system.add_block(src, tgt, p.degree() + 1, character);
    system.add_equation(
        &[
            Term::new(Some(tgt.diff_matrix()), h, None),
            Term::new(None, h, Some(src.diff_matrix())),
        ],
        p.matrix(),
    );
    let space = system.solve();
    Ok(space.particular().map(|x| system.extract(h, x)))
}

/// Expands a vector on a sublist of basis indices to the whole basis.
fn expand(n: usize, indices: &[usize], v: &BitVector) -> BitVector {
    let mut out = BitVector::zeros(n);
    for k in v.ones() {
        out.set(indices[k], true);
    }
    out
}

/// The first cycle (in reduced echelon order over the basis order) of the unit
/// parity that is not a boundary. `None` unless homology is unit.
pub fn homology_representative(c: &IotaComplex) -> Option<BitVector> {
    let parity = homology_type(c).unit_parity()?;
    let (idx, _, out) = parity_block(c, parity);
    let (_, _, incoming) = parity_block(c, parity.flip());
    // `incoming` maps the other parity into `idx`, rows indexed by `idx`.
    let boundary_rank = incoming.rank();
    out.kernel_basis().into_iter().find_map(|z| {
        let mut cols: Vec<BitVector> = (0..incoming.cols()).map(|j| incoming.column(j)).collect();
        cols.push(z.clone());
        let widened = BitMatrix::from_rows(idx.len(), &cols).transpose();
        (widened.rank() > boundary_rank).then(|| expand(c.len(), &idx, &z))
    })
}

/// A functional vanishing on boundaries and pairing to one with `z`.
pub fn homology_cocycle(c: &IotaComplex, z: &BitVector) -> Option<BitVector> {
    let parity = z.ones().next().map(|i| c.generators()[i].parity())?;
    let (_, idx, incoming) = parity_block(c, parity.flip());
    let restricted = BitVector::from_bits(idx.iter().map(|&i| z.get(i)));
    let kernel = incoming.transpose().kernel_basis();
    let space = SolutionSpace::new(idx.len(), Some(BitVector::zeros(idx.len())), kernel);
    let lambda = space.find_with_functional(&restricted).ok()??;
    Some(expand(c.len(), &idx, &lambda))
}

/// A filtered degree-zero chain map `F: c1 -> c2` inducing an isomorphism on
/// homology, with a skew homotopy `H_F` between `F ι` and `ι F`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMap {
    pub f: GradedMap,
    pub h: GradedMap,
    pub source_cycle: BitVector,
    pub target_cocycle: BitVector,
}

/// Why two complexes are not locally equivalent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// One side does not have unit homology.
    NotUnit { complex: String },
    /// Unit homology in opposite parities.
    ParityMismatch { left: Parity, right: Parity },
    /// The affine system for a local map `from -> to` is inconsistent once the
    /// homology condition is imposed.
    NoLocalMap { from: String, to: String, unknowns: usize, equations: usize },
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refutation::NotUnit { complex } => write!(f, "{complex} does not have unit homology"),
            Refutation::ParityMismatch { left, right } => {
                write!(f, "unit homology in different parities ({left} vs {right})")
            }
            Refutation::NoLocalMap { from, to, unknowns, equations } => write!(
                f,
                "no local map {from} -> {to} ({unknowns} unknowns, {equations} equations, exact)"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocalEquivalence {
    Equivalent(LocalEquivCertificate),
    NotEquivalent(Vec<Refutation>),
}

impl LocalEquivalence {
    pub fn certificate(&self) -> Option<&LocalEquivCertificate> {
        match self {
            LocalEquivalence::Equivalent(c) => Some(c),
            LocalEquivalence::NotEquivalent(_) => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, LocalEquivalence::Equivalent(_))
    }
}

fn unit_guard(c1: &IotaComplex, c2: &IotaComplex) -> Result<Parity, Refutation> {
    let (h1, h2) = (homology_type(c1), homology_type(c2));
    let p1 = h1.unit_parity().ok_or_else(|| Refutation::NotUnit { complex: c1.name().into() })?;
    let p2 = h2.unit_parity().ok_or_else(|| Refutation::NotUnit { complex: c2.name().into() })?;
    if p1 != p2 {
        return Err(Refutation::ParityMismatch { left: p1, right: p2 });
    }
    Ok(p1)
}

/// Solves jointly for `(F, H_F)` and imposes `F(z) ∉ im ∂` as one linear
/// functional, where `z` is the fixed homology representative of `c1`.
pub fn local_map(c1: &Arc<IotaComplex>, c2: &Arc<IotaComplex>) -> Result<LocalMap, Refutation> {
    unit_guard(c1, c2)?;
    let z1 = homology_representative(c1).expect("unit homology has a representative");
    let z2 = homology_representative(c2).expect("unit homology has a representative");
    let lambda2 = homology_cocycle(c2, &z2).expect("representative is not a boundary");

    let mut system = LinearSystem::new();
    let f = system.add_block(c1, c2, 0, Character::Filtered);
    let h = system.add_block(c1, c2, 1, Character::Skew);
    let zero = BitMatrix::zeros(c2.len(), c1.len());
    system.add_equation(
        &[
            Term::new(Some(c2.diff_matrix()), f, None),
            Term::new(None, f, Some(c1.diff_matrix())),
        ],
        &zero,
    );
    system.add_equation(
        &[
            Term::new(None, f, Some(c1.iota_matrix())),
            Term::new(Some(c2.iota_matrix()), f, None),
            Term::new(Some(c2.diff_matrix()), h, None),
            Term::new(None, h, Some(c1.diff_matrix())),
        ],
        &zero,
    );
    let space = system.solve();
    // λ2(F z1) = Σ z1(x) λ2(y) F(x, y).
    let mut functional = BitVector::zeros(system.num_unknowns());
    for x in z1.ones() {
        for y in lambda2.ones() {
            if let Some(col) = system.column(f, x, y) {
                functional.toggle(col);
            }
        }
    }
    let refute = || Refutation::NoLocalMap {
        from: c1.name().into(),
        to: c2.name().into(),
        unknowns: system.num_unknowns(),
        equations: system.num_equations(),
    };
    let x = space.find_with_functional(&functional).expect("functional length").ok_or_else(refute)?;
    let out = LocalMap { f: system.extract(f, &x), h: system.extract(h, &x), source_cycle: z1, target_cocycle: lambda2 };
    debug_assert!(out.f.is_chain_map());
    Ok(out)
}

/// `Some((F, H_F))` when a local map `c1 -> c2` exists.
pub fn local_map_exists(c1: &Arc<IotaComplex>, c2: &Arc<IotaComplex>) -> Option<(GradedMap, GradedMap)> {
    local_map(c1, c2).ok().map(|m| (m.f, m.h))
}

/// Runs the local-map search in both directions and bundles a certificate,
/// re-verified by the independent checker.
pub fn decide_local_equivalence(c1: &Arc<IotaComplex>, c2: &Arc<IotaComplex>) -> LocalEquivalence {
    if c1.as_ref() == c2.as_ref() || (c1.generators() == c2.generators() && c1.diff_matrix() == c2.diff_matrix() && c1.iota_matrix() == c2.iota_matrix()) {
        if let Some(cert) = LocalEquivCertificate::identity(c1) {
            let cert = LocalEquivCertificate { right: c2.clone(), ..cert };
            if cert.check().is_ok() {
                return LocalEquivalence::Equivalent(cert);
            }
        }
    }
    if let Err(r) = unit_guard(c1, c2) {
        return LocalEquivalence::NotEquivalent(vec![r]);
    }
    let (forward, backward) = std::thread::scope(|s| {
        let fw = s.spawn(|| local_map(c1, c2));
        let bw = local_map(c2, c1);
        (fw.join().expect("solver thread panicked"), bw)
    });
    match (forward, backward) {
        (Ok(fw), Ok(bw)) => {
            let cert = LocalEquivCertificate {
                left: c1.clone(),
                right: c2.clone(),
                f: fw.f,
                h_f: fw.h,
                g: bw.f,
                h_g: bw.h,
                evidence: HomologyEvidence {
                    left_cycle: fw.source_cycle,
                    left_cocycle: bw.target_cocycle,
                    right_cycle: bw.source_cycle,
                    right_cocycle: fw.target_cocycle,
                },
            };
            cert.check().expect("solver output must pass the checker");
            LocalEquivalence::Equivalent(cert)
        }
        (fw, bw) => LocalEquivalence::NotEquivalent(
            [fw.err(), bw.err()].into_iter().flatten().collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{iota_square_defect, validate, Generator, RawComplex, ValidationLevel};

    fn raw(name: &str, gens: &[(&str, i64, i64)], diff: &[(&str, &str)], iota: &[(&str, &str)]) -> RawComplex {
        RawComplex {
            name: name.into(),
            auxiliary: false,
            generators: gens.iter().map(|&(n, m, a)| Generator::new(n, m, a)).collect(),
            diff: diff.iter().map(|&(a, b)| (a.into(), b.into())).collect(),
            iota: iota.iter().map(|&(a, b)| (a.into(), b.into())).collect(),
        }
    }

    fn trefoil() -> Arc<IotaComplex> {
        validate(
            &raw(
                "trefoil",
                &[("a", 0, 1), ("b", -1, 0), ("c", -2, -1)],
                &[("b", "a"), ("b", "c")],
                &[("a", "c"), ("c", "a"), ("b", "b")],
            ),
            ValidationLevel::Deep,
        )
        .unwrap()
    }

    fn unknot() -> Arc<IotaComplex> {
        validate(&raw("unknot", &[("e", 0, 0)], &[], &[("e", "e")]), ValidationLevel::Deep).unwrap()
    }

    #[test]
    fn chain_map_space_examples() {
        let (t, e) = (trefoil(), unknot());
        let s = chain_map_space(&e, &t, 0, Character::Filtered);
        assert_eq!(s.positions(), 0);
        assert_eq!(s.dimension(), 0);
        let s = chain_map_space(&t, &e, 0, Character::Filtered);
        assert_eq!(s.dimension(), 1);
        assert_eq!(
            s.basis_maps()[0].named_entries(),
            vec![("a".to_string(), "e".to_string()), ("c".to_string(), "e".to_string())]
        );
        let s = chain_map_space(&t, &t, 0, Character::Filtered);
        assert!(s.contains(&GradedMap::identity(&t)));
    }

    #[test]
    fn local_maps_between_trefoil_and_unknot() {
        let (t, e) = (trefoil(), unknot());
        assert!(local_map_exists(&e, &t).is_none());
        let (f, h) = local_map_exists(&t, &e).unwrap();
        assert_eq!(f.named_entries(), vec![("a".to_string(), "e".to_string()), ("c".to_string(), "e".to_string())]);
        assert!(h.is_zero());
    }

    #[test]
    fn trefoil_is_not_locally_trivial() {
        let (t, e) = (trefoil(), unknot());
        match decide_local_equivalence(&t, &e) {
            LocalEquivalence::NotEquivalent(r) => {
                assert_eq!(r.len(), 1);
                assert!(matches!(&r[0], Refutation::NoLocalMap { from, to, .. } if from == "unknot" && to == "trefoil"));
            }
            LocalEquivalence::Equivalent(_) => panic!("trefoil is not locally trivial"),
        }
    }

    #[test]
    fn reflexive_certificate_is_identity() {
        let t = trefoil();
        let cert = decide_local_equivalence(&t, &t).certificate().cloned().unwrap();
        assert_eq!(cert.f, GradedMap::identity(&t));
        assert!(cert.h_f.is_zero() && cert.h_g.is_zero());
        cert.check().unwrap();
    }

    #[test]
    fn nullhomotopy_examples() {
        let (t, e) = (trefoil(), unknot());
        let zero = GradedMap::zero(t.clone(), t.clone(), 0, Character::Filtered);
        assert!(nullhomotopy_exists(&zero, Character::Filtered).unwrap().unwrap().is_zero());
        let defect = iota_square_defect(&t);
        assert!(nullhomotopy_exists(&defect, Character::Filtered).unwrap().unwrap().is_zero());
        assert!(nullhomotopy_exists(&GradedMap::identity(&e), Character::Filtered).unwrap().is_none());
        let not_chain = crate::complex::phi(&t).add(&GradedMap::zero(t.clone(), t.clone(), 1, Character::Filtered)).unwrap();
        assert!(not_chain.is_chain_map());
    }

    #[test]
    fn composing_with_reverse_gives_self_certificate() {
        let t = trefoil();
        let cert = LocalEquivCertificate::identity(&t).unwrap();
        let id = compose_certificates(&cert, &cert).unwrap();
        assert_eq!(id.f, cert.f);
        let back = compose_certificates(&cert, &cert.reverse()).unwrap();
        assert_eq!(back.left.as_ref(), t.as_ref());
        let e = unknot();
        let other = LocalEquivCertificate::identity(&e).unwrap();
        assert!(matches!(compose_certificates(&cert, &other), Err(CertificateError::Mismatch(_))));
    }
}
