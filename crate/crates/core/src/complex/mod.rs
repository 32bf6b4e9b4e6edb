//! ι-complexes over `F2[U, U^-1]`.
//!
//! `U` is never stored. A basis element `x` sits at filtration level
//! `(0, A(x))` with Maslov grading `M(x)`, and every coefficient of a
//! homogeneous map is a single monomial whose exponent the gradings
//! determine. The differential and the involution are therefore plain F2
//! incidence matrices.

mod map;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use map::{entry_exponent, verify_homotopy, verify_homotopy_with, Character, GradedMap, MapError};
pub(crate) use map::same_chain_complex;

use crate::gf2::BitMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub maslov: i64,
    pub alexander: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, maslov: i64, alexander: i64) -> Self {
        Self { name: name.into(), maslov, alexander }
    }

    /// A homogeneous element at filtration level `(i, j)` with Maslov grading
    /// `maslov`, translated by `U^i` back to a basis element at level `(0, j - i)`.
    pub fn from_level(name: impl Into<String>, i: i64, j: i64, maslov: i64) -> Self {
        let (maslov, alexander) = normalize_level(i, j, maslov);
        Self::new(name, maslov, alexander)
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.maslov)
    }
}

/// Multiplies an element at level `(i, j)` by `U^i`: returns the Maslov grading
/// and Alexander grading of the translate, which sits at level `(0, j - i)`.
pub fn normalize_level(i: i64, j: i64, maslov: i64) -> (i64, i64) {
    (maslov - 2 * i, j - i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(maslov: i64) -> Parity {
        if maslov.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowKind {
    Diff,
    Iota,
}

impl fmt::Display for ArrowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowKind::Diff => "diff",
            ArrowKind::Iota => "iota",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("DuplicateGenerator: {0}")]
    DuplicateGenerator(String),
    #[error("UnknownGenerator: {0}")]
    UnknownGenerator(String),
    #[error("DuplicateArrow: {kind} {src} {dst}")]
    DuplicateArrow { kind: ArrowKind, src: String, dst: String },
    #[error("ParityViolation: {kind} {src} -> {dst}")]
    ParityViolation { kind: ArrowKind, src: String, dst: String },
    #[error("NegativeExponent: diff {src} -> {dst}")]
    NegativeExponent { src: String, dst: String },
    #[error("FiltrationViolation: {kind} {src} -> {dst}")]
    FiltrationViolation { kind: ArrowKind, src: String, dst: String },
    #[error("DifferentialNotSquareZero: witness {src} -> {dst}")]
    DifferentialNotSquareZero { src: String, dst: String },
    #[error("IotaNotChainMap: witness {src} -> {dst}")]
    IotaNotChainMap { src: String, dst: String },
    #[error("IotaSquareAxiomFails: iota^2 + id + Phi Psi has no filtered null-homotopy")]
    IotaSquareAxiomFails,
    #[error("HomologyNotUnit: {0}")]
    HomologyNotUnit(HomologyType),
}

/// A non-empty list of validation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl ValidationErrors {
    pub fn errors(&self) -> &[ValidationError] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ValidationLevel {
    #[default]
    Structural,
    Deep,
}

/// Complex data as read from a file, before any checks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawComplex {
    pub name: String,
    pub auxiliary: bool,
    pub generators: Vec<Generator>,
    pub diff: Vec<(String, String)>,
    pub iota: Vec<(String, String)>,
}

/// Exponent data of a differential arrow `x -> U^n y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArrowData {
    /// Power of `U` on the coefficient.
    pub n: i64,
    /// Drop in the first filtration coordinate.
    pub horizontal: i64,
    /// Drop in the second filtration coordinate.
    pub vertical: i64,
}

/// `None` when `M(x) - M(y)` is even.
pub fn arrow_data_of(x: &Generator, y: &Generator) -> Option<ArrowData> {
    let n = entry_exponent(x, y, -1)?;
    Some(ArrowData { n, horizontal: n, vertical: x.alexander - y.alexander + n })
}

/// A finitely generated free complex over `F2[U, U^-1]` with an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaComplex {
    name: String,
    auxiliary: bool,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    /// Rows index targets, columns sources.
    diff: BitMatrix,
    iota: BitMatrix,
}

impl IotaComplex {
    /// Assembles a complex and runs the structural checks.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        diff: BitMatrix,
        iota: BitMatrix,
        auxiliary: bool,
    ) -> Result<Arc<Self>, ValidationErrors> {
        let n = generators.len();
        assert_eq!((diff.rows(), diff.cols()), (n, n), "differential must be square on the basis");
        assert_eq!((iota.rows(), iota.cols()), (n, n), "iota must be square on the basis");
        let mut errors = Vec::new();
        let mut index = HashMap::with_capacity(n);
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                errors.push(ValidationError::DuplicateGenerator(g.name.clone()));
            }
        }
        let c = Self { name: name.into(), auxiliary, generators, index, diff, iota };
        if errors.is_empty() {
            c.structural_errors(&mut errors);
        }
        if errors.is_empty() {
            Ok(Arc::new(c))
        } else {
            Err(ValidationErrors(errors))
        }
    }

    pub fn from_raw(raw: &RawComplex) -> Result<Arc<Self>, ValidationErrors> {
        let mut errors = Vec::new();
        let mut index = HashMap::new();
        for (i, g) in raw.generators.iter().enumerate() {
            if index.insert(g.name.as_str(), i).is_some() {
                errors.push(ValidationError::DuplicateGenerator(g.name.clone()));
            }
        }
        let n = raw.generators.len();
        let build = |kind: ArrowKind, arrows: &[(String, String)], errors: &mut Vec<ValidationError>| {
            let mut m = BitMatrix::zeros(n, n);
            let mut seen = HashSet::new();
            for (s, d) in arrows {
                match (index.get(s.as_str()), index.get(d.as_str())) {
                    (Some(&si), Some(&di)) => {
                        if !seen.insert((si, di)) {
                            errors.push(ValidationError::DuplicateArrow {
                                kind,
                                src: s.clone(),
                                dst: d.clone(),
                            });
                        }
                        m.set(di, si, true);
                    }
                    (None, _) => errors.push(ValidationError::UnknownGenerator(s.clone())),
                    (_, None) => errors.push(ValidationError::UnknownGenerator(d.clone())),
                }
            }
            m
        };
        let diff = build(ArrowKind::Diff, &raw.diff, &mut errors);
        let iota = build(ArrowKind::Iota, &raw.iota, &mut errors);
        if !errors.is_empty() {
            return Err(ValidationErrors(errors));
        }
        Self::new(raw.name.clone(), raw.generators.clone(), diff, iota, raw.auxiliary)
    }

    pub fn to_raw(&self) -> RawComplex {
        let names = |m: &BitMatrix| -> Vec<(String, String)> {
            let mut e: Vec<(usize, usize)> = m.entries().map(|(r, c)| (c, r)).collect();
            e.sort_unstable();
            e.into_iter()
                .map(|(s, d)| (self.generators[s].name.clone(), self.generators[d].name.clone()))
                .collect()
        };
        RawComplex {
            name: self.name.clone(),
            auxiliary: self.auxiliary,
            generators: self.generators.clone(),
            diff: names(&self.diff),
            iota: names(&self.iota),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn auxiliary(&self) -> bool {
        self.auxiliary
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.index_of(name).map(|i| &self.generators[i])
    }

    pub fn diff_matrix(&self) -> &BitMatrix {
        &self.diff
    }

    pub fn iota_matrix(&self) -> &BitMatrix {
        &self.iota
    }

    pub fn diff_arrows(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.diff.entries().map(|(r, c)| (c, r)).collect();
        e.sort_unstable();
        e
    }

    pub fn iota_arrows(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.iota.entries().map(|(r, c)| (c, r)).collect();
        e.sort_unstable();
        e
    }

    /// Same complex under a new name.
    pub fn renamed(&self, name: impl Into<String>) -> Arc<Self> {
        let mut c = self.clone();
        c.name = name.into();
        Arc::new(c)
    }

    /// Same chain complex with a different involution (structurally checked).
    pub fn with_iota(&self, iota: BitMatrix) -> Result<Arc<Self>, ValidationErrors> {
        Self::new(self.name.clone(), self.generators.clone(), self.diff.clone(), iota, self.auxiliary)
    }

    pub fn with_auxiliary(&self, auxiliary: bool) -> Arc<Self> {
        let mut c = self.clone();
        c.auxiliary = auxiliary;
        Arc::new(c)
    }

    /// Exponent and filtration drops of the arrow `x -> y`.
    pub fn arrow_data(&self, x: &str, y: &str) -> Result<ArrowData, ValidationError> {
        let gx = self.generator(x).ok_or_else(|| ValidationError::UnknownGenerator(x.into()))?;
        let gy = self.generator(y).ok_or_else(|| ValidationError::UnknownGenerator(y.into()))?;
        arrow_data_of(gx, gy).ok_or_else(|| ValidationError::ParityViolation {
            kind: ArrowKind::Diff,
            src: x.into(),
            dst: y.into(),
        })
    }

    /// Indices of generators with the given Maslov parity, in basis order.
    pub fn parity_indices(&self, parity: Parity) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.generators[i].parity() == parity).collect()
    }

    /// Isomorphic to `other` under the positional renaming of generators.
    pub fn isomorphic_by_position(&self, other: &IotaComplex) -> bool {
        self.len() == other.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.maslov == b.maslov && a.alexander == b.alexander)
            && self.diff == other.diff
            && self.iota == other.iota
    }

    fn structural_errors(&self, errors: &mut Vec<ValidationError>) {
        let g = &self.generators;
        let name = |i: usize| g[i].name.clone();
        for (s, d) in self.diff_arrows() {
            match arrow_data_of(&g[s], &g[d]) {
                None => errors.push(ValidationError::ParityViolation {
                    kind: ArrowKind::Diff,
                    src: name(s),
                    dst: name(d),
                }),
                Some(data) => {
                    if data.n < 0 {
                        errors.push(ValidationError::NegativeExponent { src: name(s), dst: name(d) });
                    } else if data.vertical < 0 {
                        errors.push(ValidationError::FiltrationViolation {
                            kind: ArrowKind::Diff,
                            src: name(s),
                            dst: name(d),
                        });
                    }
                }
            }
        }
        for (s, d) in self.iota_arrows() {
            match entry_exponent(&g[s], &g[d], 0) {
                None => errors.push(ValidationError::ParityViolation {
                    kind: ArrowKind::Iota,
                    src: name(s),
                    dst: name(d),
                }),
                Some(q) => {
                    if !Character::Skew.admits(q, &g[s], &g[d]) {
                        errors.push(ValidationError::FiltrationViolation {
                            kind: ArrowKind::Iota,
                            src: name(s),
                            dst: name(d),
                        });
                    }
                }
            }
        }
        let d2 = self.diff.try_mul(&self.diff).unwrap();
        if let Some((r, c)) = first_entry(&d2) {
            errors.push(ValidationError::DifferentialNotSquareZero { src: name(c), dst: name(r) });
        }
        let comm = self
            .iota
            .try_mul(&self.diff)
            .unwrap()
            .try_add(&self.diff.try_mul(&self.iota).unwrap())
            .unwrap();
        if let Some((r, c)) = first_entry(&comm) {
            errors.push(ValidationError::IotaNotChainMap { src: name(c), dst: name(r) });
        }
    }
}

/// The entry with the smallest `(col, row)`, i.e. first source then first target.
fn first_entry(m: &BitMatrix) -> Option<(usize, usize)> {
    m.entries().min_by_key(|&(r, c)| (c, r))
}

/// Runs the checks for the requested level on raw data.
pub fn validate(raw: &RawComplex, level: ValidationLevel) -> Result<Arc<IotaComplex>, ValidationErrors> {
    let c = IotaComplex::from_raw(raw)?;
    if level == ValidationLevel::Deep {
        let errors = deep_errors(&c);
        if !errors.is_empty() {
            return Err(ValidationErrors(errors));
        }
    }
    Ok(c)
}

/// The checks beyond the structural ones: unit homology (unless the complex
/// is auxiliary) and a filtered null-homotopy of `ι² + id + ΦΨ`.
pub fn deep_errors(c: &Arc<IotaComplex>) -> Vec<ValidationError> {
    let mut errors = Vec::new();
    if !c.auxiliary() {
        let h = homology_type(c);
        if !h.is_unit() {
            errors.push(ValidationError::HomologyNotUnit(h));
        }
    }
    if iota_square_homotopy(c).is_none() {
        errors.push(ValidationError::IotaSquareAxiomFails);
    }
    errors
}

/// `ι² + id + Φ∘Ψ`.
pub fn iota_square_defect(c: &Arc<IotaComplex>) -> GradedMap {
    let iota = iota_map(c);
    let sq = iota.compose(&iota).unwrap();
    let phipsi = phi(c).compose(&psi(c)).unwrap();
    sq.add(&GradedMap::identity(c)).unwrap().add(&phipsi).unwrap()
}

/// A filtered degree-one null-homotopy of [`iota_square_defect`], if one exists.
pub fn iota_square_homotopy(c: &Arc<IotaComplex>) -> Option<GradedMap> {
    let defect = iota_square_defect(c);
    crate::localeq::nullhomotopy_exists(&defect, Character::Filtered)
        .expect("iota square defect is a chain map")
}

pub fn differential(c: &Arc<IotaComplex>) -> GradedMap {
    GradedMap::new(c.clone(), c.clone(), -1, Character::Filtered, c.diff.clone())
        .expect("validated differential is filtered")
}

pub fn iota_map(c: &Arc<IotaComplex>) -> GradedMap {
    GradedMap::new(c.clone(), c.clone(), 0, Character::Skew, c.iota.clone())
        .expect("validated iota is skew-filtered")
}

/// Formal derivative of the differential in the first filtration direction:
/// the arrows with odd horizontal drop, one power of `U` lower.
pub fn phi(c: &Arc<IotaComplex>) -> GradedMap {
    derivative(c, |d| d.horizontal, 1, Character::Unconstrained)
}

/// Formal derivative in the second filtration direction: the arrows with odd
/// vertical drop, same power of `U`.
pub fn psi(c: &Arc<IotaComplex>) -> GradedMap {
    derivative(c, |d| d.vertical, -1, Character::Filtered)
}

fn derivative(
    c: &Arc<IotaComplex>,
    drop: impl Fn(&ArrowData) -> i64,
    degree: i64,
    character: Character,
) -> GradedMap {
    let g = c.generators();
    let entries = c.diff_arrows().into_iter().filter(|&(s, d)| {
        let data = arrow_data_of(&g[s], &g[d]).expect("validated arrow");
        drop(&data).rem_euclid(2) == 1
    });
    let matrix = BitMatrix::from_entries(c.len(), c.len(), entries.map(|(s, d)| (d, s)));
    GradedMap::new(c.clone(), c.clone(), degree, character, matrix).expect("derivative entries are admissible")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parity", rename_all = "lowercase")]
pub enum HomologyTag {
    Unit(Parity),
    Acyclic,
    Other,
}

/// Per-parity F2 dimensions of homology, with their classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyType {
    pub tag: HomologyTag,
    pub even: usize,
    pub odd: usize,
}

impl HomologyType {
    pub fn from_dims(even: usize, odd: usize) -> Self {
        let tag = match (even, odd) {
            (1, 0) => HomologyTag::Unit(Parity::Even),
            (0, 1) => HomologyTag::Unit(Parity::Odd),
            (0, 0) => HomologyTag::Acyclic,
            _ => HomologyTag::Other,
        };
        Self { tag, even, odd }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.tag, HomologyTag::Unit(_))
    }

    pub fn unit_parity(&self) -> Option<Parity> {
        match self.tag {
            HomologyTag::Unit(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.tag == HomologyTag::Acyclic
    }
}

impl fmt::Display for HomologyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            HomologyTag::Unit(p) => write!(f, "Unit({p})")?,
            HomologyTag::Acyclic => write!(f, "Acyclic")?,
            HomologyTag::Other => write!(f, "Other")?,
        }
        write!(f, " dims (even {}, odd {})", self.even, self.odd)
    }
}

/// Block of the differential from parity `from` into parity `from.flip()`.
pub(crate) fn parity_block(c: &IotaComplex, from: Parity) -> (Vec<usize>, Vec<usize>, BitMatrix) {
    let src = c.parity_indices(from);
    let dst = c.parity_indices(from.flip());
    let block = c.diff.select(&dst, &src);
    (src, dst, block)
}

/// Homology dimensions per parity. With `U` invertible, each graded piece of
/// a fixed parity is the F2 span of the generators of that parity.
pub fn homology_type(c: &IotaComplex) -> HomologyType {
    let (even_src, _, even_out) = parity_block(c, Parity::Even);
    let (odd_src, _, odd_out) = parity_block(c, Parity::Odd);
    let (r_even_out, r_odd_out) = (even_out.rank(), odd_out.rank());
    let even = even_src.len() - r_even_out - r_odd_out;
    let odd = odd_src.len() - r_odd_out - r_even_out;
    HomologyType::from_dims(even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> Arc<IotaComplex> {
        let raw = RawComplex {
            name: "T".into(),
            auxiliary: false,
            generators: vec![Generator::new("a", 0, 1), Generator::new("b", -1, 0), Generator::new("c", -2, -1)],
            diff: vec![("b".into(), "a".into()), ("b".into(), "c".into())],
            iota: vec![("a".into(), "c".into()), ("c".into(), "a".into()), ("b".into(), "b".into())],
        };
        validate(&raw, ValidationLevel::Deep).unwrap()
    }

    fn unknot() -> Arc<IotaComplex> {
        let raw = RawComplex {
            name: "E".into(),
            generators: vec![Generator::new("e", 0, 0)],
            iota: vec![("e".into(), "e".into())],
            ..Default::default()
        };
        validate(&raw, ValidationLevel::Deep).unwrap()
    }

    #[test]
    fn arrow_data_examples() {
        let t = trefoil();
        assert_eq!(t.arrow_data("b", "a").unwrap(), ArrowData { n: 1, horizontal: 1, vertical: 0 });
        assert_eq!(t.arrow_data("b", "c").unwrap(), ArrowData { n: 0, horizontal: 0, vertical: 1 });
        let e = unknot();
        assert!(matches!(e.arrow_data("e", "e"), Err(ValidationError::ParityViolation { .. })));
    }

    #[test]
    fn trefoil_with_extra_arrow_is_not_square_zero() {
        let mut raw = trefoil().to_raw();
        raw.diff.push(("a".into(), "b".into()));
        let errs = validate(&raw, ValidationLevel::Structural).unwrap_err();
        assert!(errs.0.iter().any(|e| matches!(e, ValidationError::DifferentialNotSquareZero { .. })));
        assert!(!errs.0.iter().any(|e| matches!(
            e,
            ValidationError::ParityViolation { .. } | ValidationError::NegativeExponent { .. }
        )));
    }

    #[test]
    fn duplicate_generator_rejected() {
        let mut raw = unknot().to_raw();
        raw.generators.push(Generator::new("e", 2, 0));
        let errs = validate(&raw, ValidationLevel::Structural).unwrap_err();
        assert_eq!(errs.0, vec![ValidationError::DuplicateGenerator("e".into())]);
    }

    #[test]
    fn homology_examples() {
        let t = trefoil();
        assert_eq!(homology_type(&t), HomologyType::from_dims(1, 0));
        assert_eq!(homology_type(&t).tag, HomologyTag::Unit(Parity::Even));
        let box_raw = RawComplex {
            name: "X".into(),
            auxiliary: true,
            generators: vec![Generator::new("p", 0, 0), Generator::new("q", -1, 0)],
            diff: vec![("p".into(), "q".into())],
            iota: vec![("p".into(), "p".into()), ("q".into(), "q".into())],
        };
        let x = validate(&box_raw, ValidationLevel::Deep).unwrap();
        assert!(homology_type(&x).is_acyclic());
        let mut x_unit = box_raw.clone();
        x_unit.auxiliary = false;
        let errs = validate(&x_unit, ValidationLevel::Deep).unwrap_err();
        assert!(matches!(errs.0[0], ValidationError::HomologyNotUnit(_)));
    }

    #[test]
    fn derivatives_of_trefoil() {
        let t = trefoil();
        let (p, s) = (phi(&t), psi(&t));
        assert_eq!(p.named_entries(), vec![("b".to_string(), "a".to_string())]);
        assert_eq!(p.degree(), 1);
        assert_eq!(s.named_entries(), vec![("b".to_string(), "c".to_string())]);
        assert_eq!(s.degree(), -1);
        assert!(p.is_chain_map() && s.is_chain_map());
        assert!(p.compose(&s).unwrap().is_zero());
        assert!(s.compose(&p).unwrap().is_zero());
        assert!(phi(&unknot()).is_zero());
    }

    #[test]
    fn iota_squares_to_identity_on_trefoil() {
        let t = trefoil();
        let iota = iota_map(&t);
        let sq = iota.compose(&iota).unwrap();
        assert_eq!(sq, GradedMap::identity(&t));
        assert_eq!(sq.character(), Character::Filtered);
        let id_plus = GradedMap::identity(&t).add(&phi(&t).compose(&psi(&t)).unwrap()).unwrap();
        let zero = GradedMap::zero(t.clone(), t.clone(), 1, Character::Filtered);
        assert!(verify_homotopy(&sq, &id_plus, &zero).unwrap());
        let zero0 = GradedMap::zero(t.clone(), t.clone(), 0, Character::Filtered);
        assert!(!verify_homotopy(&GradedMap::identity(&t), &zero0, &zero).unwrap());
        assert!(iota_square_homotopy(&t).unwrap().is_zero());
    }

    #[test]
    fn add_and_compose_algebra() {
        let t = trefoil();
        let id = GradedMap::identity(&t);
        assert!(id.add(&id).unwrap().is_zero());
        let p = phi(&t);
        assert!(p.add(&p).unwrap().is_zero());
        assert_eq!(id.compose(&p).unwrap(), p);
        let d = differential(&t);
        assert!(matches!(id.add(&d), Err(MapError::DegreeMismatch { .. })));
        assert!(d.is_chain_map());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_level(2, 3, 4), (0, 1));
        assert_eq!(normalize_level(0, 5, 7), (7, 5));
        assert_eq!(normalize_level(-1, 0, -2), (0, 1));
    }

    #[test]
    fn homology_ignores_generator_order() {
        let t = trefoil();
        let mut raw = t.to_raw();
        raw.generators.reverse();
        let r = validate(&raw, ValidationLevel::Structural).unwrap();
        assert_eq!(homology_type(&r), homology_type(&t));
    }
}
