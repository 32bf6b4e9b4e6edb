//! Bounded search for an ι-equivariant filtered homotopy equivalence.
//!
//! Requiring `F G ≃ id` and `G F ≃ id` makes the problem bilinear in `(F, G)`.
//! With one of them frozen the rest is linear, so this alternates between
//! the two sides for a fixed number of rounds. A failure says nothing about
//! existence: the outcome is then reported as inconclusive.

use std::sync::Arc;

use serde::Serialize;

use super::{LinearSystem, LocalEquivCertificate, Term};
use crate::complex::{iota_map, verify_homotopy, Character, GradedMap, IotaComplex};
use crate::gf2::{BitMatrix, BitVector};

pub const MAX_HEURISTIC_ROUNDS: usize = 16;

/// `F: left -> right`, `G: right -> left` with skew ι-homotopies `H_F`, `H_G`
/// and filtered homotopies `G F ≃ id` (via `k_left`), `F G ≃ id` (via `k_right`).
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyEquivalence {
    pub f: GradedMap,
    pub h_f: GradedMap,
    pub g: GradedMap,
    pub h_g: GradedMap,
    pub k_left: GradedMap,
    pub k_right: GradedMap,
}

impl HomotopyEquivalence {
    pub fn check(&self) -> bool {
        let (l, r) = (self.f.source(), self.f.target());
        let ok_maps = self.f.satisfies(Character::Filtered)
            && self.g.satisfies(Character::Filtered)
            && self.f.is_chain_map()
            && self.g.is_chain_map();
        if !ok_maps {
            return false;
        }
        let (il, ir) = (iota_map(l), iota_map(r));
        let rel = |p: GradedMap, q: GradedMap, h: &GradedMap| verify_homotopy(&p, &q, h).unwrap_or(false);
        rel(self.f.compose(&il).unwrap(), ir.compose(&self.f).unwrap(), &self.h_f)
            && rel(self.g.compose(&ir).unwrap(), il.compose(&self.g).unwrap(), &self.h_g)
            && rel(self.g.compose(&self.f).unwrap(), GradedMap::identity(l), &self.k_left)
            && rel(self.f.compose(&self.g).unwrap(), GradedMap::identity(r), &self.k_right)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HeuristicOutcome {
    Certified { equivalence: Box<HomotopyEquivalence>, rounds: usize },
    Inconclusive { rounds: usize },
}

impl HeuristicOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, HeuristicOutcome::Certified { .. })
    }

    pub fn summary(&self) -> HeuristicSummary {
        match self {
            HeuristicOutcome::Certified { rounds, .. } => HeuristicSummary { status: "certified", rounds: *rounds },
            HeuristicOutcome::Inconclusive { rounds } => HeuristicSummary { status: "inconclusive", rounds: *rounds },
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HeuristicSummary {
    pub status: &'static str,
    pub rounds: usize,
}

struct Solved {
    map: GradedMap,
    h: GradedMap,
    k_own: GradedMap,
    k_other: Option<GradedMap>,
}

/// Given a fixed `other: target -> source`, finds `m: source -> target` (filtered chain map with a
/// skew ι-homotopy) such that `other ∘ m ≃ id`, and when `both` is set also `m ∘ other ≃ id`.
/// `pick` selects a kernel vector added to the particular solution.
fn solve_side(
    source: &Arc<IotaComplex>,
    target: &Arc<IotaComplex>,
    other: &GradedMap,
    both: bool,
    pick: usize,
) -> Option<Solved> {
    let mut sys = LinearSystem::new();
    let m = sys.add_block(source, target, 0, Character::Filtered);
    let h = sys.add_block(source, target, 1, Character::Skew);
    let k_own = sys.add_block(source, source, 1, Character::Filtered);
    let k_other = both.then(|| sys.add_block(target, target, 1, Character::Filtered));
    let zero = BitMatrix::zeros(target.len(), source.len());
    let (ds, dt) = (source.diff_matrix(), target.diff_matrix());
    sys.add_equation(&[Term::new(Some(dt), m, None), Term::new(None, m, Some(ds))], &zero);
    sys.add_equation(
        &[
            Term::new(None, m, Some(source.iota_matrix())),
            Term::new(Some(target.iota_matrix()), m, None),
            Term::new(Some(dt), h, None),
            Term::new(None, h, Some(ds)),
        ],
        &zero,
    );
    // other ∘ m + ∂K + K∂ = id on the source.
    sys.add_equation(
        &[
            Term::new(Some(other.matrix()), m, None),
            Term::new(Some(ds), k_own, None),
            Term::new(None, k_own, Some(ds)),
        ],
        &BitMatrix::identity(source.len()),
    );
    if let Some(k2) = k_other {
        sys.add_equation(
            &[
                Term::new(None, m, Some(other.matrix())),
                Term::new(Some(dt), k2, None),
                Term::new(None, k2, Some(dt)),
            ],
            &BitMatrix::identity(target.len()),
        );
    }
    let space = sys.solve();
    let mut x: BitVector = space.particular()?.clone();
    let kernel = space.kernel_basis();
    if !kernel.is_empty() && pick > 0 {
        x.xor_assign(&kernel[(pick - 1) % kernel.len()]);
    }
    Some(Solved {
        map: sys.extract(m, &x),
        h: sys.extract(h, &x),
        k_own: sys.extract(k_own, &x),
        k_other: k_other.map(|k| sys.extract(k, &x)),
    })
}

/// Alternates between solving for `F` with `G` frozen and for `G` with `F`
/// frozen, starting from the maps of a local-equivalence certificate.
pub fn attempt_homotopy_equivalence(seed: &LocalEquivCertificate, max_rounds: usize) -> HeuristicOutcome {
    let (l, r) = (&seed.left, &seed.right);
    let mut f = seed.f.clone();
    let mut g = seed.g.clone();
    for round in 1..=max_rounds {
        let pick = (round - 1) / 2;
        if round % 2 == 1 {
            if let Some(s) = solve_side(l, r, &g, true, 0) {
                let eq = HomotopyEquivalence {
                    h_g: solve_iota_homotopy(&g),
                    f: s.map,
                    h_f: s.h,
                    g: g.clone(),
                    k_left: s.k_own,
                    k_right: s.k_other.expect("requested"),
                };
                if eq.check() {
                    return HeuristicOutcome::Certified { equivalence: Box::new(eq), rounds: round };
                }
            }
            if let Some(s) = solve_side(l, r, &g, false, pick + 1) {
                f = s.map;
            }
        } else {
            if let Some(s) = solve_side(r, l, &f, true, 0) {
                let eq = HomotopyEquivalence {
                    h_f: solve_iota_homotopy(&f),
                    f: f.clone(),
                    g: s.map,
                    h_g: s.h,
                    k_left: s.k_other.expect("requested"),
                    k_right: s.k_own,
                };
                if eq.check() {
                    return HeuristicOutcome::Certified { equivalence: Box::new(eq), rounds: round };
                }
            }
            if let Some(s) = solve_side(r, l, &f, false, pick + 1) {
                g = s.map;
            }
        }
    }
    HeuristicOutcome::Inconclusive { rounds: max_rounds }
}

/// A skew homotopy between `m ι` and `ι m` for a fixed map, or the zero map
/// when none exists (the final check then rejects the candidate).
fn solve_iota_homotopy(m: &GradedMap) -> GradedMap {
    let (s, t) = (m.source(), m.target());
    let p = m
        .compose(&iota_map(s))
        .unwrap()
        .add(&iota_map(t).compose(m).unwrap())
        .unwrap();
    super::nullhomotopy_exists(&p, Character::Skew)
        .ok()
        .flatten()
        .unwrap_or_else(|| GradedMap::zero(s.clone(), t.clone(), 1, Character::Skew))
}
