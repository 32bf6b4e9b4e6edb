//! Affine F2 systems whose unknowns are the admissible entries of one or more
//! graded maps, and whose equations are matrix identities of the form
//! `Σ L·X·R = B`.

use std::sync::Arc;

use crate::complex::{entry_exponent, Character, GradedMap, IotaComplex};
use crate::gf2::{BitMatrix, BitVector, SolutionSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct BlockId(usize);

#[derive(Clone, Debug)]
struct Block {
    source: Arc<IotaComplex>,
    target: Arc<IotaComplex>,
    degree: i64,
    character: Character,
    /// `(source index, target index)` of each unknown, in column order.
    positions: Vec<(usize, usize)>,
    offset: usize,
    /// `lookup[dst * n_src + src]` is the column of that position, if admissible.
    lookup: Vec<Option<usize>>,
}

/// One summand `L · X · R` of a matrix equation; `None` stands for the identity.
pub(crate) struct Term<'a> {
    pub left: Option<&'a BitMatrix>,
    pub block: BlockId,
    pub right: Option<&'a BitMatrix>,
}

impl<'a> Term<'a> {
    pub fn new(left: Option<&'a BitMatrix>, block: BlockId, right: Option<&'a BitMatrix>) -> Self {
        Self { left, block, right }
    }
}

#[derive(Default)]
pub(crate) struct LinearSystem {
    blocks: Vec<Block>,
    rows: Vec<BitVector>,
    rhs: Vec<bool>,
    sealed: bool,
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an unknown map. Positions violating parity or the character
    /// bound are excluded up front.
    pub fn add_block(
        &mut self,
        source: &Arc<IotaComplex>,
        target: &Arc<IotaComplex>,
        degree: i64,
        character: Character,
    ) -> BlockId {
        assert!(!self.sealed, "blocks must be declared before equations");
        let offset = self.num_unknowns();
        let (ns, nt) = (source.len(), target.len());
        let mut positions = Vec::new();
        let mut lookup = vec![None; ns * nt];
        for s in 0..ns {
            for d in 0..nt {
                let (gs, gd) = (&source.generators()[s], &target.generators()[d]);
                if let Some(q) = entry_exponent(gs, gd, degree) {
                    if character.admits(q, gs, gd) {
                        lookup[d * ns + s] = Some(offset + positions.len());
                        positions.push((s, d));
                    }
                }
            }
        }
        self.blocks.push(Block {
            source: source.clone(),
            target: target.clone(),
            degree,
            character,
            positions,
            offset,
            lookup,
        });
        BlockId(self.blocks.len() - 1)
    }

    pub fn num_unknowns(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.positions.len())
    }

    pub fn block_len(&self, id: BlockId) -> usize {
        self.blocks[id.0].positions.len()
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Column of the unknown for entry `src -> dst` of a block.
    pub fn column(&self, id: BlockId, src: usize, dst: usize) -> Option<usize> {
        let b = &self.blocks[id.0];
        b.lookup[dst * b.source.len() + src]
    }

    /// Adds the entrywise equations of `Σ terms = rhs`.
    pub fn add_equation(&mut self, terms: &[Term<'_>], rhs: &BitMatrix) {
        self.sealed = true;
        let n = self.num_unknowns();
        let (out_rows, out_cols) = (rhs.rows(), rhs.cols());
        let mut eqs = vec![BitVector::zeros(n); out_rows * out_cols];
        for term in terms {
            let b = &self.blocks[term.block.0];
            let left_t = term.left.map(|l| {
                assert_eq!(l.rows(), out_rows);
                assert_eq!(l.cols(), b.target.len());
                l.transpose()
            });
            if let Some(r) = term.right {
                assert_eq!(r.cols(), out_cols);
                assert_eq!(r.rows(), b.source.len());
            }
            for (k, &(s, d)) in b.positions.iter().enumerate() {
                let col = b.offset + k;
                let is: Vec<usize> = match &left_t {
                    Some(lt) => lt.row_ones(d).collect(),
                    None => vec![d],
                };
                let js: Vec<usize> = match term.right {
                    Some(r) => r.row_ones(s).collect(),
                    None => vec![s],
                };
                for &i in &is {
                    for &j in &js {
                        eqs[i * out_cols + j].toggle(col);
                    }
                }
            }
        }
        for (idx, row) in eqs.into_iter().enumerate() {
            let b = rhs.get(idx / out_cols, idx % out_cols);
            if row.is_zero() && !b {
                continue;
            }
            self.rows.push(row);
            self.rhs.push(b);
        }
    }

    pub fn solve(&self) -> SolutionSpace {
        let n = self.num_unknowns();
        let m = BitMatrix::from_rows(n, &self.rows);
        let b = BitVector::from_bits(self.rhs.iter().copied());
        m.solve_affine(&b).expect("system dimensions are consistent")
    }

    /// Reads one block of a solution vector back as a map.
    pub fn extract(&self, id: BlockId, x: &BitVector) -> GradedMap {
        let b = &self.blocks[id.0];
        let mut m = BitMatrix::zeros(b.target.len(), b.source.len());
        for (k, &(s, d)) in b.positions.iter().enumerate() {
            if x.get(b.offset + k) {
                m.set(d, s, true);
            }
        }
        GradedMap::new(b.source.clone(), b.target.clone(), b.degree, b.character, m)
            .expect("admissible positions give an admissible map")
    }

    /// Solution vector of a concrete map for one block (other blocks zero).
    pub fn embed(&self, id: BlockId, map: &GradedMap) -> Option<BitVector> {
        let mut x = BitVector::zeros(self.num_unknowns());
        for (s, d) in map.entries() {
            x.set(self.column(id, s, d)?, true);
        }
        Some(x)
    }
}
