//! Line-oriented text formats.
//!
//! A file is a sequence of blocks. `#` starts a comment; blank lines are
//! ignored. Exponents of `U` never appear: they follow from the gradings.
//!
//! ```text
//! complex trefoil
//! gen a 0 1
//! gen b -1 0
//! gen c -2 -1
//! diff b a
//! diff b c
//! iota a c
//! iota b b
//! iota c a
//! end
//! ```
//!
//! Maps are `map NAME` / `source` / `target` / `degree` / `character` /
//! `entry SRC DST` / `end`. A certificate embeds its two complexes and the
//! maps `F`, `G`, `H_F`, `H_G` between `certificate` and `endcertificate`;
//! split results sit between `split NAME` and `endsplit`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{Character, Generator, GradedMap, IotaComplex, MapError, RawComplex, ValidationErrors};
use crate::gf2::BitVector;
use crate::localeq::{CertificateError, HomologyEvidence, LocalEquivCertificate};
use crate::splitting::SplitResult;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("SyntaxError (line {line}): {message}")]
    SyntaxError { line: usize, message: String },
    #[error("UnknownGenerator (line {line}): {name}")]
    UnknownGenerator { line: usize, name: String },
    #[error("DuplicateArrow (line {line}): {src} -> {dst}")]
    DuplicateArrow { line: usize, src: String, dst: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoadError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Validation(#[from] ValidationErrors),
    #[error("{0}")]
    Map(#[from] MapError),
    #[error("{0}")]
    Certificate(#[from] CertificateError),
    #[error("MissingBlock: {0}")]
    MissingBlock(String),
}

/// A map block before it is attached to complexes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub character: String,
    pub entries: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCertificate {
    pub left: RawComplex,
    pub right: RawComplex,
    pub maps: Vec<RawMap>,
    /// `(kind, side, support)` with kind `cycle`/`cocycle` and side `left`/`right`.
    pub evidence: Vec<(String, String, Vec<String>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawSplit {
    pub name: String,
    /// `key value...` header lines, kept in order.
    pub fields: Vec<(String, Vec<String>)>,
    pub complexes: Vec<RawComplex>,
    pub maps: Vec<RawMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Complex(RawComplex),
    Map(RawMap),
    Certificate(RawCertificate),
    Split(RawSplit),
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = l.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Self { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let l = self.lines.get(self.pos).cloned();
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(0, |l| l.0)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::SyntaxError { line, message: message.into() }
}

fn expect_arity(line: usize, toks: &[&str], n: usize) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(syntax(line, format!("'{}' takes {} argument(s)", toks[0], n - 1)));
    }
    Ok(())
}

fn parse_int(line: usize, s: &str) -> Result<i64, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("expected an integer, found '{s}'")))
}

fn parse_complex_block(lines: &mut Lines, line: usize, header: &[&str]) -> Result<RawComplex, ParseError> {
    expect_arity(line, header, 2)?;
    let mut raw = RawComplex { name: header[1].to_string(), ..Default::default() };
    let mut names = HashSet::new();
    let mut diff_seen = HashSet::new();
    let mut iota_seen = HashSet::new();
    loop {
        let Some((ln, toks)) = lines.next() else {
            return Err(syntax(lines.last_line(), format!("complex {} is missing 'end'", raw.name)));
        };
        match toks[0] {
            "end" => {
                expect_arity(ln, &toks, 1)?;
                return Ok(raw);
            }
            "auxiliary" => {
                expect_arity(ln, &toks, 1)?;
                raw.auxiliary = true;
            }
            "gen" => {
                expect_arity(ln, &toks, 4)?;
                let (m, a) = (parse_int(ln, toks[2])?, parse_int(ln, toks[3])?);
                if !names.insert(toks[1].to_string()) {
                    return Err(syntax(ln, format!("duplicate generator {}", toks[1])));
                }
                raw.generators.push(Generator::new(toks[1], m, a));
            }
            kind @ ("diff" | "iota") => {
                expect_arity(ln, &toks, 3)?;
                for name in &toks[1..] {
                    if !names.contains(*name) {
                        return Err(ParseError::UnknownGenerator { line: ln, name: name.to_string() });
                    }
                }
                let arrow = (toks[1].to_string(), toks[2].to_string());
                let (seen, list) = if kind == "diff" {
                    (&mut diff_seen, &mut raw.diff)
                } else {
                    (&mut iota_seen, &mut raw.iota)
                };
                if !seen.insert(arrow.clone()) {
                    return Err(ParseError::DuplicateArrow { line: ln, src: arrow.0, dst: arrow.1 });
                }
                list.push(arrow);
            }
            other => return Err(syntax(ln, format!("unexpected '{other}' in complex block"))),
        }
    }
}

fn parse_map_block(lines: &mut Lines, line: usize, header: &[&str]) -> Result<RawMap, ParseError> {
    expect_arity(line, header, 2)?;
    let mut raw = RawMap { name: header[1].to_string(), ..Default::default() };
    let mut seen = HashSet::new();
    let mut have = HashSet::new();
    loop {
        let Some((ln, toks)) = lines.next() else {
            return Err(syntax(lines.last_line(), format!("map {} is missing 'end'", raw.name)));
        };
        match toks[0] {
            "end" => {
                expect_arity(ln, &toks, 1)?;
                for key in ["source", "target", "degree", "character"] {
                    if !have.contains(key) {
                        return Err(syntax(ln, format!("map {} has no '{key}' line", raw.name)));
                    }
                }
                return Ok(raw);
            }
            key @ ("source" | "target" | "degree" | "character") => {
                expect_arity(ln, &toks, 2)?;
                if !have.insert(key) {
                    return Err(syntax(ln, format!("repeated '{key}'")));
                }
                match key {
                    "source" => raw.source = toks[1].to_string(),
                    "target" => raw.target = toks[1].to_string(),
                    "degree" => raw.degree = parse_int(ln, toks[1])?,
                    _ => {
                        if Character::parse(toks[1]).is_none() {
                            return Err(syntax(ln, format!("unknown character '{}'", toks[1])));
                        }
                        raw.character = toks[1].to_string();
                    }
                }
            }
            "entry" => {
                expect_arity(ln, &toks, 3)?;
                let arrow = (toks[1].to_string(), toks[2].to_string());
                if !seen.insert(arrow.clone()) {
                    return Err(ParseError::DuplicateArrow { line: ln, src: arrow.0, dst: arrow.1 });
                }
                raw.entries.push(arrow);
            }
            other => return Err(syntax(ln, format!("unexpected '{other}' in map block"))),
        }
    }
}

fn parse_certificate_block(lines: &mut Lines, line: usize, header: &[&str]) -> Result<RawCertificate, ParseError> {
    expect_arity(line, header, 1)?;
    let mut complexes = Vec::new();
    let mut raw = RawCertificate::default();
    loop {
        let Some((ln, toks)) = lines.next() else {
            return Err(syntax(lines.last_line(), "certificate is missing 'endcertificate'"));
        };
        match toks[0] {
            "endcertificate" => {
                expect_arity(ln, &toks, 1)?;
                let [left, right]: [RawComplex; 2] = complexes
                    .try_into()
                    .map_err(|_| syntax(ln, "a certificate embeds exactly two complexes"))?;
                raw.left = left;
                raw.right = right;
                return Ok(raw);
            }
            "complex" => complexes.push(parse_complex_block(lines, ln, &toks)?),
            "map" => raw.maps.push(parse_map_block(lines, ln, &toks)?),
            kind @ ("cycle" | "cocycle") => {
                if toks.len() < 2 || !matches!(toks[1], "left" | "right") {
                    return Err(syntax(ln, format!("'{kind}' needs a side (left or right)")));
                }
                let support = toks[2..].iter().map(|s| s.to_string()).collect();
                raw.evidence.push((kind.to_string(), toks[1].to_string(), support));
            }
            other => return Err(syntax(ln, format!("unexpected '{other}' in certificate"))),
        }
    }
}

fn parse_split_block(lines: &mut Lines, line: usize, header: &[&str]) -> Result<RawSplit, ParseError> {
    expect_arity(line, header, 2)?;
    let mut raw = RawSplit { name: header[1].to_string(), ..Default::default() };
    loop {
        let Some((ln, toks)) = lines.next() else {
            return Err(syntax(lines.last_line(), "split is missing 'endsplit'"));
        };
        match toks[0] {
            "endsplit" => {
                expect_arity(ln, &toks, 1)?;
                return Ok(raw);
            }
            "complex" => raw.complexes.push(parse_complex_block(lines, ln, &toks)?),
            "map" => raw.maps.push(parse_map_block(lines, ln, &toks)?),
            key => raw.fields.push((key.to_string(), toks[1..].iter().map(|s| s.to_string()).collect())),
        }
    }
}

/// Parses every block of a file.
pub fn parse_document(text: &str) -> Result<Vec<Block>, ParseError> {
    let mut lines = Lines::new(text);
    let mut blocks = Vec::new();
    while lines.peek().is_some() {
        let (ln, toks) = lines.next().unwrap();
        let block = match toks[0] {
            "complex" => Block::Complex(parse_complex_block(&mut lines, ln, &toks)?),
            "map" => Block::Map(parse_map_block(&mut lines, ln, &toks)?),
            "certificate" => Block::Certificate(parse_certificate_block(&mut lines, ln, &toks)?),
            "split" => Block::Split(parse_split_block(&mut lines, ln, &toks)?),
            other => return Err(syntax(ln, format!("expected a block header, found '{other}'"))),
        };
        blocks.push(block);
    }
    Ok(blocks)
}

/// The complexes of a file, in order; other block kinds are skipped.
pub fn parse_complex_file(text: &str) -> Result<Vec<RawComplex>, ParseError> {
    Ok(parse_document(text)?
        .into_iter()
        .filter_map(|b| match b {
            Block::Complex(c) => Some(c),
            _ => None,
        })
        .collect())
}

pub fn serialize_raw_complex(raw: &RawComplex) -> String {
    let mut out = String::new();
    writeln!(out, "complex {}", raw.name).unwrap();
    if raw.auxiliary {
        out.push_str("auxiliary\n");
    }
    for g in &raw.generators {
        writeln!(out, "gen {} {} {}", g.name, g.maslov, g.alexander).unwrap();
    }
    for (s, d) in &raw.diff {
        writeln!(out, "diff {s} {d}").unwrap();
    }
    for (s, d) in &raw.iota {
        writeln!(out, "iota {s} {d}").unwrap();
    }
    out.push_str("end\n");
    out
}

/// Canonical form: generators in declaration order, arrows sorted by the
/// positions of their endpoints.
pub fn serialize_complex(c: &IotaComplex) -> String {
    serialize_raw_complex(&c.to_raw())
}

pub fn serialize_raw_map(raw: &RawMap) -> String {
    let mut out = String::new();
    writeln!(out, "map {}", raw.name).unwrap();
    writeln!(out, "source {}", raw.source).unwrap();
    writeln!(out, "target {}", raw.target).unwrap();
    writeln!(out, "degree {}", raw.degree).unwrap();
    writeln!(out, "character {}", raw.character).unwrap();
    for (s, d) in &raw.entries {
        writeln!(out, "entry {s} {d}").unwrap();
    }
    out.push_str("end\n");
    out
}

pub fn map_to_raw(name: &str, m: &GradedMap) -> RawMap {
    RawMap {
        name: name.to_string(),
        source: m.source().name().to_string(),
        target: m.target().name().to_string(),
        degree: m.degree(),
        character: m.character().as_str().to_string(),
        entries: m.named_entries(),
    }
}

pub fn serialize_map(name: &str, m: &GradedMap) -> String {
    serialize_raw_map(&map_to_raw(name, m))
}

/// Attaches a map block to its complexes, checking degree, parity and character.
pub fn map_from_raw(raw: &RawMap, source: &Arc<IotaComplex>, target: &Arc<IotaComplex>) -> Result<GradedMap, MapError> {
    if raw.source != source.name() || raw.target != target.name() {
        return Err(MapError::ComplexMismatch(format!(
            "map {} goes {} -> {}, expected {} -> {}",
            raw.name,
            raw.source,
            raw.target,
            source.name(),
            target.name()
        )));
    }
    let character = Character::parse(&raw.character)
        .ok_or_else(|| MapError::ComplexMismatch(format!("unknown character {}", raw.character)))?;
    GradedMap::from_named_entries(
        source.clone(),
        target.clone(),
        raw.degree,
        character,
        raw.entries.iter().map(|(s, d)| (s.as_str(), d.as_str())),
    )
}

fn support_names(c: &IotaComplex, v: &BitVector) -> Vec<String> {
    v.ones().map(|i| c.generators()[i].name.clone()).collect()
}

pub fn certificate_to_raw(cert: &LocalEquivCertificate) -> RawCertificate {
    let ev = &cert.evidence;
    RawCertificate {
        left: cert.left.to_raw(),
        right: cert.right.to_raw(),
        maps: vec![
            map_to_raw("F", &cert.f),
            map_to_raw("G", &cert.g),
            map_to_raw("H_F", &cert.h_f),
            map_to_raw("H_G", &cert.h_g),
        ],
        evidence: vec![
            ("cycle".into(), "left".into(), support_names(&cert.left, &ev.left_cycle)),
            ("cocycle".into(), "left".into(), support_names(&cert.left, &ev.left_cocycle)),
            ("cycle".into(), "right".into(), support_names(&cert.right, &ev.right_cycle)),
            ("cocycle".into(), "right".into(), support_names(&cert.right, &ev.right_cocycle)),
        ],
    }
}

pub fn serialize_raw_certificate(raw: &RawCertificate) -> String {
    let mut out = String::from("certificate\n");
    out.push_str(&serialize_raw_complex(&raw.left));
    out.push_str(&serialize_raw_complex(&raw.right));
    for m in &raw.maps {
        out.push_str(&serialize_raw_map(m));
    }
    for (kind, side, support) in &raw.evidence {
        let mut line = format!("{kind} {side}");
        for s in support {
            line.push(' ');
            line.push_str(s);
        }
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("endcertificate\n");
    out
}

pub fn serialize_certificate(cert: &LocalEquivCertificate) -> String {
    serialize_raw_certificate(&certificate_to_raw(cert))
}

/// Rebuilds a certificate and replays it through the checker before returning it.
pub fn certificate_from_raw(raw: &RawCertificate) -> Result<LocalEquivCertificate, LoadError> {
    let left = IotaComplex::from_raw(&raw.left)?;
    let right = IotaComplex::from_raw(&raw.right)?;
    let find = |name: &str| {
        raw.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| LoadError::MissingBlock(format!("map {name}")))
    };
    let f = map_from_raw(find("F")?, &left, &right)?;
    let g = map_from_raw(find("G")?, &right, &left)?;
    let h_f = map_from_raw(find("H_F")?, &left, &right)?;
    let h_g = map_from_raw(find("H_G")?, &right, &left)?;
    let vector = |kind: &str, side: &str, c: &IotaComplex| -> Result<BitVector, LoadError> {
        let (_, _, support) = raw
            .evidence
            .iter()
            .find(|(k, s, _)| k == kind && s == side)
            .ok_or_else(|| LoadError::MissingBlock(format!("{kind} {side}")))?;
        let mut v = BitVector::zeros(c.len());
        for name in support {
            let i = c
                .index_of(name)
                .ok_or_else(|| MapError::ComplexMismatch(format!("unknown generator {name} in {kind} {side}")))?;
            v.toggle(i);
        }
        Ok(v)
    };
    let evidence = HomologyEvidence {
        left_cycle: vector("cycle", "left", &left)?,
        left_cocycle: vector("cocycle", "left", &left)?,
        right_cycle: vector("cycle", "right", &right)?,
        right_cocycle: vector("cocycle", "right", &right)?,
    };
    let cert = LocalEquivCertificate { left, right, f, h_f, g, h_g, evidence };
    cert.check()?;
    Ok(cert)
}

/// Loads the first certificate block of a file (checked).
pub fn parse_certificate(text: &str) -> Result<LocalEquivCertificate, LoadError> {
    let raw = parse_document(text)?
        .into_iter()
        .find_map(|b| match b {
            Block::Certificate(c) => Some(c),
            _ => None,
        })
        .ok_or_else(|| LoadError::MissingBlock("certificate".into()))?;
    certificate_from_raw(&raw)
}

pub fn split_to_raw(s: &SplitResult) -> RawSplit {
    let b = &s.basis;
    let names = |c: &IotaComplex| c.generators().iter().map(|g| g.name.clone()).collect::<Vec<_>>();
    let r = &s.report;
    let flag = |v: bool| vec![v.to_string()];
    RawSplit {
        name: b.original.name().to_string(),
        fields: vec![
            ("pivot".into(), vec![b.original.generators()[b.pivot].name.clone()]),
            ("unit".into(), names(&s.unit_summand)),
            ("acyclic".into(), names(&s.acyclic_summand)),
            ("check_g_f_identity".into(), flag(r.g_f_identity)),
            ("check_p1_idempotent".into(), flag(r.p1_idempotent)),
            ("check_p2_idempotent".into(), flag(r.p2_idempotent)),
            ("check_projections_sum_to_identity".into(), flag(r.projections_sum_to_identity)),
            ("check_projections_orthogonal".into(), flag(r.projections_orthogonal)),
            ("check_basis_change_inverse".into(), flag(r.basis_change_inverse)),
            ("check_round_trip".into(), flag(r.round_trip)),
            ("check_homotopy_identity".into(), flag(r.homotopy_identity)),
            ("check_homotopy_identity_on_original".into(), flag(r.homotopy_identity_on_original)),
            ("check_block_diagonal".into(), flag(r.block_diagonal)),
            ("check_unit_block_identity".into(), flag(r.unit_block_identity)),
            ("check_acyclic_summand".into(), flag(r.acyclic_summand)),
            ("pivot_is_lowest".into(), flag(r.pivot_is_lowest)),
            ("acyclic_iota_axiom".into(), flag(r.acyclic_iota_axiom)),
            ("split_iota_axiom".into(), flag(r.split_iota_axiom)),
        ],
        complexes: vec![b.original.to_raw(), s.split_with_iota_prime.to_raw(), s.acyclic_summand.to_raw()],
        maps: vec![
            map_to_raw("Phi", &b.to_original),
            map_to_raw("Psi", &b.from_original),
            map_to_raw("F", &b.f),
            map_to_raw("G", &b.g),
            map_to_raw("H_F", &b.h_f),
            map_to_raw("H_G", &b.h_g),
            map_to_raw("iota_prime", &s.iota_prime),
            map_to_raw("J", &s.j),
        ],
    }
}

pub fn serialize_raw_split(raw: &RawSplit) -> String {
    let mut out = format!("split {}\n", raw.name);
    for (key, values) in &raw.fields {
        out.push_str(key);
        for v in values {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
    }
    for c in &raw.complexes {
        out.push_str(&serialize_raw_complex(c));
    }
    for m in &raw.maps {
        out.push_str(&serialize_raw_map(m));
    }
    out.push_str("endsplit\n");
    out
}

pub fn serialize_split(s: &SplitResult) -> String {
    serialize_raw_split(&split_to_raw(s))
}

pub fn serialize_block(b: &Block) -> String {
    match b {
        Block::Complex(c) => serialize_raw_complex(c),
        Block::Map(m) => serialize_raw_map(m),
        Block::Certificate(c) => serialize_raw_certificate(c),
        Block::Split(s) => serialize_raw_split(s),
    }
}

pub fn serialize_document(blocks: &[Block]) -> String {
    blocks.iter().map(serialize_block).collect::<Vec<_>>().join("\n")
}

/// Complexes by name, for resolving references in later blocks.
pub fn index_by_name(complexes: &[Arc<IotaComplex>]) -> HashMap<String, Arc<IotaComplex>> {
    complexes.iter().map(|c| (c.name().to_string(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{validate, ValidationLevel};
    use crate::constructions::identity_complex;

    const TREFOIL: &str = "\
# right-handed trefoil
complex trefoil
gen a 0 1
gen b -1 0
gen c -2 -1   # bottom
diff b a
diff b c

iota a c
iota b b
iota c a
end
";

    #[test]
    fn parses_trefoil() {
        let raws = parse_complex_file(TREFOIL).unwrap();
        assert_eq!(raws.len(), 1);
        let raw = &raws[0];
        assert_eq!(raw.generators.len(), 3);
        assert_eq!(raw.diff.len(), 2);
        assert_eq!(raw.iota.len(), 3);
        let c = validate(raw, ValidationLevel::Deep).unwrap();
        let text = serialize_complex(&c);
        assert_eq!(parse_complex_file(&text).unwrap()[0], c.to_raw());
        assert_eq!(serialize_complex(&validate(&parse_complex_file(&text).unwrap()[0], ValidationLevel::Structural).unwrap()), text);
    }

    #[test]
    fn empty_file() {
        assert!(parse_complex_file("").unwrap().is_empty());
        assert!(parse_complex_file("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_lines() {
        let unknown = "complex x\ngen a 0 0\ndiff a z\nend\n";
        assert_eq!(
            parse_complex_file(unknown),
            Err(ParseError::UnknownGenerator { line: 3, name: "z".into() })
        );
        let dup = "complex x\ngen a 0 0\niota a a\niota a a\nend\n";
        assert!(matches!(parse_complex_file(dup), Err(ParseError::DuplicateArrow { line: 4, .. })));
        let bad = "complex x\ngen a zero 0\nend\n";
        assert!(matches!(parse_complex_file(bad), Err(ParseError::SyntaxError { line: 2, .. })));
        let open = "complex x\ngen a 0 0\n";
        assert!(matches!(parse_complex_file(open), Err(ParseError::SyntaxError { .. })));
        // A self-loop parses; it is rejected downstream.
        let raw = &parse_complex_file("complex x\ngen a 0 0\ndiff a a\niota a a\nend\n").unwrap()[0];
        assert!(IotaComplex::from_raw(raw).is_err());
    }

    #[test]
    fn identity_certificate_blocks() {
        let e = identity_complex();
        let cert = LocalEquivCertificate::identity(&e).unwrap();
        let text = serialize_certificate(&cert);
        assert!(text.contains("map F\nsource unknot\ntarget unknot\ndegree 0\ncharacter filtered\nentry e e\nend\n"));
        assert!(text.contains("map H_F\nsource unknot\ntarget unknot\ndegree 1\ncharacter skew\nend\n"));
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(serialize_certificate(&back), text);
    }

    #[test]
    fn map_round_trip() {
        let c = validate(&parse_complex_file(TREFOIL).unwrap()[0], ValidationLevel::Structural).unwrap();
        let d = crate::complex::differential(&c);
        let raw = map_to_raw("d", &d);
        assert_eq!(raw.entries, vec![("b".to_string(), "a".to_string()), ("b".to_string(), "c".to_string())]);
        let text = serialize_raw_map(&raw);
        let Block::Map(parsed) = &parse_document(&text).unwrap()[0] else { panic!() };
        assert_eq!(map_from_raw(parsed, &c, &c).unwrap(), d);
    }
}
