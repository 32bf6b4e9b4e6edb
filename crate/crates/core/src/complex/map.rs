//! Homogeneous maps between complexes.
//!
//! A map is stored as an F2 incidence matrix (rows index the target basis,
//! columns the source basis) together with its Maslov degree. The power of
//! `U` on each entry is recovered from the gradings, so composition and
//! addition are plain matrix arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Generator, IotaComplex};
use crate::gf2::{BitMatrix, BitVector};

/// How a map interacts with the `Z ⊕ Z` filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    /// Level `(i, j)` goes to level `<= (i, j)`.
    Filtered,
    /// Level `(i, j)` goes to level `<= (j, i)`.
    Skew,
    /// No filtration constraint.
    #[serde(rename = "none")]
    Unconstrained,
}

impl Character {
    /// Character of `outer ∘ inner`.
    pub fn compose(outer: Character, inner: Character) -> Character {
        use Character::*;
        match (outer, inner) {
            (Unconstrained, _) | (_, Unconstrained) => Unconstrained,
            (Filtered, Filtered) | (Skew, Skew) => Filtered,
            (Filtered, Skew) | (Skew, Filtered) => Skew,
        }
    }

    /// Character of a sum: the weaker of the two.
    pub fn weakest(a: Character, b: Character) -> Character {
        if a == b {
            a
        } else {
            Character::Unconstrained
        }
    }

    /// Character of a tensor product of maps.
    pub fn tensor(a: Character, b: Character) -> Character {
        match (a, b) {
            (Character::Filtered, Character::Filtered) => Character::Filtered,
            (Character::Skew, Character::Skew) => Character::Skew,
            _ => Character::Unconstrained,
        }
    }

    /// Whether an entry `x -> U^q y` respects this character.
    pub fn admits(self, q: i64, source: &Generator, target: &Generator) -> bool {
        match self {
            Character::Filtered => q >= 0 && q >= target.alexander - source.alexander,
            Character::Skew => q >= (-source.alexander).max(target.alexander),
            Character::Unconstrained => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Character::Filtered => "filtered",
            Character::Skew => "skew",
            Character::Unconstrained => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Character> {
        match s {
            "filtered" => Some(Character::Filtered),
            "skew" => Some(Character::Skew),
            "none" => Some(Character::Unconstrained),
            _ => None,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("ParityViolation: entry {src} -> {dst} has no integral U-exponent at degree {degree}")]
    ParityViolation { src: String, dst: String, degree: i64 },
    #[error("CharacterViolation: entry {src} -> {dst} is not {character}")]
    CharacterViolation { src: String, dst: String, character: Character },
    #[error("DegreeMismatch: expected degree {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("ComplexMismatch: {0}")]
    ComplexMismatch(String),
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Exponent of `U` on an entry `x -> U^q y` of a degree-`degree` map, if the
/// gradings allow one.
pub fn entry_exponent(source: &Generator, target: &Generator, degree: i64) -> Option<i64> {
    let twice = target.maslov - source.maslov - degree;
    (twice % 2 == 0).then_some(twice / 2)
}

/// Two complexes are compatible as map endpoints when they are the same
/// chain complex: same graded basis and same differential.
pub(crate) fn same_chain_complex(a: &IotaComplex, b: &IotaComplex) -> bool {
    std::ptr::eq(a, b) || (a.generators() == b.generators() && a.diff_matrix() == b.diff_matrix())
}

#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<IotaComplex>,
    target: Arc<IotaComplex>,
    degree: i64,
    character: Character,
    matrix: BitMatrix,
}

impl PartialEq for GradedMap {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.character == other.character
            && self.matrix == other.matrix
            && same_chain_complex(&self.source, &other.source)
            && same_chain_complex(&self.target, &other.target)
    }
}

impl GradedMap {
    /// Builds a map, checking every entry's parity and character bound.
    pub fn new(
        source: Arc<IotaComplex>,
        target: Arc<IotaComplex>,
        degree: i64,
        character: Character,
        matrix: BitMatrix,
    ) -> Result<Self, MapError> {
        if matrix.rows() != target.len() {
            return Err(MapError::DimensionMismatch { expected: target.len(), found: matrix.rows() });
        }
        if matrix.cols() != source.len() {
            return Err(MapError::DimensionMismatch { expected: source.len(), found: matrix.cols() });
        }
        let map = Self { source, target, degree, character, matrix };
        map.check_entries(character)?;
        Ok(map)
    }

    /// Builds a map from named `(src, dst)` entries.
    pub fn from_named_entries<'a, I>(
        source: Arc<IotaComplex>,
        target: Arc<IotaComplex>,
        degree: i64,
        character: Character,
        entries: I,
    ) -> Result<Self, MapError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut matrix = BitMatrix::zeros(target.len(), source.len());
        for (s, d) in entries {
            let si = source
                .index_of(s)
                .ok_or_else(|| MapError::ComplexMismatch(format!("unknown source generator {s}")))?;
            let di = target
                .index_of(d)
                .ok_or_else(|| MapError::ComplexMismatch(format!("unknown target generator {d}")))?;
            matrix.toggle(di, si);
        }
        Self::new(source, target, degree, character, matrix)
    }

    pub fn zero(source: Arc<IotaComplex>, target: Arc<IotaComplex>, degree: i64, character: Character) -> Self {
        let matrix = BitMatrix::zeros(target.len(), source.len());
        Self { source, target, degree, character, matrix }
    }

    pub fn identity(c: &Arc<IotaComplex>) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            degree: 0,
            character: Character::Filtered,
            matrix: BitMatrix::identity(c.len()),
        }
    }

    pub fn source(&self) -> &Arc<IotaComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<IotaComplex> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn character(&self) -> Character {
        self.character
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn len(&self) -> usize {
        self.matrix.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, src: usize, dst: usize) -> bool {
        self.matrix.get(dst, src)
    }

    /// Entries as `(source index, target index)`, sorted.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self.matrix.entries().map(|(r, c)| (c, r)).collect();
        out.sort_unstable();
        out
    }

    /// Entries as `(source name, target name)`, sorted by source then target position.
    pub fn named_entries(&self) -> Vec<(String, String)> {
        self.entries()
            .into_iter()
            .map(|(s, d)| {
                (self.source.generators()[s].name.clone(), self.target.generators()[d].name.clone())
            })
            .collect()
    }

    /// The `U`-exponent carried by the entry `src -> dst`.
    pub fn exponent(&self, src: usize, dst: usize) -> Option<i64> {
        entry_exponent(&self.source.generators()[src], &self.target.generators()[dst], self.degree)
    }

    /// Checks that every entry is admissible for `character`.
    pub fn check_entries(&self, character: Character) -> Result<(), MapError> {
        for (s, d) in self.entries() {
            let (gs, gd) = (&self.source.generators()[s], &self.target.generators()[d]);
            let Some(q) = entry_exponent(gs, gd, self.degree) else {
                return Err(MapError::ParityViolation {
                    src: gs.name.clone(),
                    dst: gd.name.clone(),
                    degree: self.degree,
                });
            };
            if !character.admits(q, gs, gd) {
                return Err(MapError::CharacterViolation {
                    src: gs.name.clone(),
                    dst: gd.name.clone(),
                    character,
                });
            }
        }
        Ok(())
    }

    pub fn satisfies(&self, character: Character) -> bool {
        self.check_entries(character).is_ok()
    }

    /// Re-labels the map with a (checked) character.
    pub fn retype(mut self, character: Character) -> Result<Self, MapError> {
        self.check_entries(character)?;
        self.character = character;
        Ok(self)
    }

    /// Moves the map onto other endpoints carrying the same graded bases.
    pub fn rebase(mut self, source: Arc<IotaComplex>, target: Arc<IotaComplex>) -> Result<Self, MapError> {
        if source.generators() != self.source.generators() || target.generators() != self.target.generators() {
            return Err(MapError::ComplexMismatch("rebase onto a different graded basis".into()));
        }
        self.source = source;
        self.target = target;
        Ok(self)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap, MapError> {
        if !same_chain_complex(&inner.target, &self.source) {
            return Err(MapError::ComplexMismatch(format!(
                "cannot compose: target {} is not source {}",
                inner.target.name(),
                self.source.name()
            )));
        }
        let matrix = self.matrix.try_mul(&inner.matrix).expect("dimensions follow from endpoints");
        let out = GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            degree: self.degree + inner.degree,
            character: Character::compose(self.character, inner.character),
            matrix,
        };
        debug_assert!(out.satisfies(out.character));
        Ok(out)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, MapError> {
        if !same_chain_complex(&self.source, &other.source) || !same_chain_complex(&self.target, &other.target) {
            return Err(MapError::ComplexMismatch("cannot add maps with different endpoints".into()));
        }
        if self.degree != other.degree {
            return Err(MapError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let matrix = self.matrix.try_add(&other.matrix).expect("dimensions follow from endpoints");
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            character: Character::weakest(self.character, other.character),
            matrix,
        })
    }

    /// Applies the map to a coordinate vector on the source basis.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        self.matrix.mul_vec(v).expect("vector length matches source")
    }

    /// `∂ f + f ∂ = 0`, exactly.
    pub fn is_chain_map(&self) -> bool {
        self.chain_defect().is_zero()
    }

    /// `∂_target f + f ∂_source` as a matrix.
    pub fn chain_defect(&self) -> BitMatrix {
        let left = self.target.diff_matrix().try_mul(&self.matrix).unwrap();
        let right = self.matrix.try_mul(self.source.diff_matrix()).unwrap();
        left.try_add(&right).unwrap()
    }

    /// The transpose map between the dual complexes.
    pub fn dual(&self, source_dual: Arc<IotaComplex>, target_dual: Arc<IotaComplex>) -> Result<GradedMap, MapError> {
        if source_dual.len() != self.target.len() || target_dual.len() != self.source.len() {
            return Err(MapError::ComplexMismatch("dual endpoints have the wrong size".into()));
        }
        GradedMap::new(source_dual, target_dual, self.degree, self.character, self.matrix.transpose())
    }
}

/// Checks `p + q = ∂h + h∂` exactly, with `h` of degree `deg p + 1` and
/// entries admissible for the weaker of the characters of `p` and `q`.
pub fn verify_homotopy(p: &GradedMap, q: &GradedMap, h: &GradedMap) -> Result<bool, MapError> {
    let required = Character::weakest(p.character, q.character);
    verify_homotopy_with(p, q, h, required)
}

/// As [`verify_homotopy`] with an explicit character requirement on `h`.
pub fn verify_homotopy_with(
    p: &GradedMap,
    q: &GradedMap,
    h: &GradedMap,
    required: Character,
) -> Result<bool, MapError> {
    if p.degree != q.degree {
        return Err(MapError::DegreeMismatch { expected: p.degree, found: q.degree });
    }
    if h.degree != p.degree + 1 {
        return Err(MapError::DegreeMismatch { expected: p.degree + 1, found: h.degree });
    }
    if !same_chain_complex(&p.source, &q.source)
        || !same_chain_complex(&p.target, &q.target)
        || !same_chain_complex(&p.source, &h.source)
        || !same_chain_complex(&p.target, &h.target)
    {
        return Err(MapError::ComplexMismatch("homotopy endpoints differ".into()));
    }
    if !h.satisfies(required) {
        return Ok(false);
    }
    let lhs = p.matrix.try_add(&q.matrix).unwrap();
    Ok(lhs == h.chain_defect())
}
