//! The bundled complexes.

use std::sync::Arc;

use crate::complex::{validate, IotaComplex, ValidationLevel};
use crate::io::parse_complex_file;

pub const CORPUS_TEXT: &str = include_str!("../data/corpus.icx");

/// Corpus entries whose involution comes from the literature rather than
/// from a computation in this crate.
pub const LITERATURE_DERIVED: &[&str] = &["figure_eight"];

/// Every corpus complex, deep-validated.
pub fn corpus() -> Vec<Arc<IotaComplex>> {
    parse_complex_file(CORPUS_TEXT)
        .expect("corpus parses")
        .iter()
        .map(|raw| validate(raw, ValidationLevel::Deep).unwrap_or_else(|e| panic!("corpus {}: {e}", raw.name)))
        .collect()
}

pub fn get(name: &str) -> Option<Arc<IotaComplex>> {
    corpus().into_iter().find(|c| c.name() == name)
}

pub fn unknot() -> Arc<IotaComplex> {
    get("unknot").unwrap()
}

pub fn trefoil() -> Arc<IotaComplex> {
    get("trefoil").unwrap()
}

/// A single-line edit of one corpus block.
#[derive(Clone, Copy, Debug)]
pub enum Edit {
    Replace(&'static str, &'static str),
    Add(&'static str),
    Remove(&'static str),
}

/// A corpus complex broken by one edit, with the validation error it must raise.
#[derive(Clone, Copy, Debug)]
pub struct Mutation {
    pub label: &'static str,
    pub complex: &'static str,
    pub edit: Edit,
    pub expected: &'static str,
}

pub const MUTATIONS: &[Mutation] = &[
    Mutation {
        label: "trefoil corner moved to odd Maslov grading",
        complex: "trefoil",
        edit: Edit::Replace("gen a 0 1", "gen a 1 1"),
        expected: "ParityViolation",
    },
    Mutation {
        label: "box arrow of even Maslov drop",
        complex: "box",
        edit: Edit::Replace("gen q -1 0", "gen q -2 0"),
        expected: "ParityViolation",
    },
    Mutation {
        label: "box arrow dropping Maslov grading by three",
        complex: "box",
        edit: Edit::Replace("gen q -1 0", "gen q -3 0"),
        expected: "NegativeExponent",
    },
    Mutation {
        label: "mixed unknot and box with the box arrow dropping Maslov grading by three",
        complex: "unknot_box_mixed",
        edit: Edit::Replace("gen q -1 0", "gen q -3 0"),
        expected: "NegativeExponent",
    },
    Mutation {
        label: "unknot generator lifted to Alexander grading one",
        complex: "unknot",
        edit: Edit::Replace("gen e 0 0", "gen e 0 1"),
        expected: "FiltrationViolation",
    },
    Mutation {
        label: "figure-eight generator x lifted to Alexander grading one",
        complex: "figure_eight",
        edit: Edit::Replace("gen x 0 0", "gen x 0 1"),
        expected: "FiltrationViolation",
    },
    Mutation {
        label: "box with a returning arrow",
        complex: "box",
        edit: Edit::Add("diff q p"),
        expected: "DifferentialNotSquareZero",
    },
    Mutation {
        label: "mixed unknot and box with an arrow from the box into the unknot",
        complex: "unknot_box_mixed",
        edit: Edit::Add("diff q e"),
        expected: "DifferentialNotSquareZero",
    },
    Mutation {
        label: "trefoil involution forgetting the middle generator",
        complex: "trefoil",
        edit: Edit::Remove("iota b b"),
        expected: "IotaNotChainMap",
    },
    Mutation {
        label: "box involution forgetting the lower generator",
        complex: "box",
        edit: Edit::Remove("iota q q"),
        expected: "IotaNotChainMap",
    },
];

/// The text of one corpus block.
pub fn block_text(name: &str) -> Option<String> {
    let header = format!("complex {name}");
    let mut out = None::<String>;
    for line in CORPUS_TEXT.lines() {
        match &mut out {
            None if line.trim() == header => out = Some(format!("{line}\n")),
            None => {}
            Some(text) => {
                text.push_str(line);
                text.push('\n');
                if line.trim() == "end" {
                    break;
                }
            }
        }
    }
    out
}

impl Mutation {
    /// The mutated block; panics if the edit does not apply exactly once.
    pub fn apply(&self) -> String {
        let text = block_text(self.complex).unwrap_or_else(|| panic!("no corpus block {}", self.complex));
        let lines: Vec<&str> = text.lines().collect();
        let position = |needle: &str| {
            let hits: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].trim() == needle).collect();
            assert_eq!(hits.len(), 1, "{}: edit target '{needle}'", self.label);
            hits[0]
        };
        let mut edited: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        match self.edit {
            Edit::Replace(old, new) => edited[position(old)] = new.to_string(),
            Edit::Remove(old) => {
                edited.remove(position(old));
            }
            Edit::Add(new) => {
                let end = edited.len() - 1;
                edited.insert(end, new.to_string());
            }
        }
        edited.join("\n") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology_type;
    use crate::constructions::{dual, identity_complex};

    #[test]
    fn corpus_is_valid() {
        let names: Vec<String> = corpus().iter().map(|c| c.name().to_string()).collect();
        assert_eq!(
            names,
            ["unknot", "trefoil", "trefoil_left", "box", "square", "unknot_box_mixed", "figure_eight"]
        );
    }

    #[test]
    fn left_trefoil_is_dual_of_right() {
        assert!(get("trefoil_left").unwrap().isomorphic_by_position(&dual(&trefoil()).unwrap()));
        assert!(unknot().isomorphic_by_position(&identity_complex()));
    }

    #[test]
    fn auxiliary_entries_are_acyclic() {
        for c in corpus() {
            assert_eq!(c.auxiliary(), !homology_type(&c).is_unit(), "{}", c.name());
        }
    }

    #[test]
    fn mutations_raise_their_named_errors() {
        for m in MUTATIONS {
            let raw = &parse_complex_file(&m.apply()).unwrap()[0];
            let errs = crate::complex::IotaComplex::from_raw(raw).expect_err(m.label);
            let names: Vec<String> =
                errs.0.iter().map(|e| e.to_string().split(':').next().unwrap().to_string()).collect();
            assert!(names.iter().all(|n| n == m.expected), "{}: {names:?}", m.label);
        }
    }
}
