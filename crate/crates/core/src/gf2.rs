//! Dense linear algebra over the two-element field.
//!
//! Rows are bit-packed into `u64` words and elimination works a word at a
//! time. Pivots are always taken at the lowest available column so every
//! result (rank profile, kernel basis, particular solution) is a pure
//! function of the input bits.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("SingularMatrix")]
    Singular,
}

#[inline]
fn word_count(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        iter_ones(&self.words)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        let parity: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        parity & 1 == 1
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, ")")
    }
}

fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            }
        })
    })
}

/// A dense matrix over F2, stored row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = word_count(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `(row, col)` positions. Repeated positions cancel.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.toggle(r, c);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of {}x{}", self.rows, self.cols);
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of {}x{}", self.rows, self.cols);
        let mask = 1u64 << (c % 64);
        let w = &mut self.data[r * self.stride + c / 64];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) out of {}x{}", self.rows, self.cols);
        self.data[r * self.stride + c / 64] ^= 1u64 << (c % 64);
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector { len: self.cols, words: self.row_words(r).to_vec() }
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits((0..self.rows).map(|r| self.get(r, c)))
    }

    /// Column indices of the set bits in row `r`.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row_words(r))
    }

    /// All set positions as `(row, col)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| self.row_ones(r).map(move |c| (r, c)))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Matrix product `self * other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let (lo, hi) = (r * out.stride, (r + 1) * out.stride);
            for k in iter_ones(self.row_words(r)) {
                let src = other.row_words(k);
                for (a, b) in out.data[lo..hi].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if self.cols != v.len() {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok(BitVector::from_bits((0..self.rows).map(|r| {
            self.row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1
                == 1
        })))
    }

    /// Kronecker product; row `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j) in self.entries() {
            for (k, l) in other.entries() {
                out.set(i * other.rows + k, j * other.cols + l, true);
            }
        }
        out
    }

    /// Extracts the submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(ri, ci, true);
                }
            }
        }
        out
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for (r, c) in self.entries() {
            out.set(r, c, true);
        }
        for (r, c) in other.entries() {
            out.set(self.rows + r, self.cols + c, true);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(self.cols).len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        m.kernel_from_reduced(&pivots, self.cols)
    }

    pub fn solve_affine(&self, b: &BitVector) -> Result<SolutionSpace, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        // Augment with b as the last column and eliminate only over the
        // coefficient columns.
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                aug.set(r, c, true);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.reduce_in_place(self.cols);
        for r in pivots.len()..self.rows {
            if aug.get(r, self.cols) {
                return Ok(SolutionSpace::empty(self.cols));
            }
        }
        let mut particular = BitVector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                particular.set(p, true);
            }
        }
        let kernel = aug.kernel_from_reduced(&pivots, self.cols);
        Ok(SolutionSpace { dim: self.cols, particular: Some(particular), kernel })
    }

    pub fn inverse(&self) -> Result<Self, Gf2Error> {
        if self.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for (r, c) in self.entries() {
            aug.set(r, c, true);
        }
        for i in 0..n {
            aug.set(i, n + i, true);
        }
        let pivots = aug.reduce_in_place(n);
        if pivots.len() < n {
            return Err(Gf2Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in aug.row_ones(r) {
                if c >= n {
                    inv.set(r, c - n, true);
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form over the first `pivot_cols` columns. Returns
    /// the pivot column of each leading row, ascending.
    fn reduce_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..pivot_cols {
            if next == self.rows {
                break;
            }
            let (w, mask) = (col / 64, 1u64 << (col % 64));
            let Some(found) = (next..self.rows).find(|&r| self.data[r * self.stride + w] & mask != 0)
            else {
                continue;
            };
            if found != next {
                for k in 0..self.stride {
                    self.data.swap(found * self.stride + k, next * self.stride + k);
                }
            }
            let pivot_row = self.row_words(next).to_vec();
            for r in 0..self.rows {
                if r != next && self.data[r * self.stride + w] & mask != 0 {
                    for (a, b) in self.row_words_mut(r).iter_mut().zip(&pivot_row).skip(w) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Kernel basis of a reduced matrix restricted to its first `n` columns,
    /// one vector per free column in ascending order.
    fn kernel_from_reduced(&self, pivots: &[usize], n: usize) -> Vec<BitVector> {
        let mut is_pivot = vec![false; n];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVector::zeros(n);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if self.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The affine solution set of `A x = b`: a particular solution plus a basis
/// of the homogeneous kernel, or nothing when the system is inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    dim: usize,
    particular: Option<BitVector>,
    kernel: Vec<BitVector>,
}

impl SolutionSpace {
    pub fn empty(dim: usize) -> Self {
        Self { dim, particular: None, kernel: Vec::new() }
    }

    pub fn new(dim: usize, particular: Option<BitVector>, kernel: Vec<BitVector>) -> Self {
        let kernel = if particular.is_some() { kernel } else { Vec::new() };
        Self { dim, particular, kernel }
    }

    /// Length of the vectors in the space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn particular(&self) -> Option<&BitVector> {
        self.particular.as_ref()
    }

    pub fn kernel_basis(&self) -> &[BitVector] {
        &self.kernel
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Affine dimension, or `None` for the empty space.
    pub fn affine_dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel.len())
    }

    /// Some member `x` with `<lambda, x> = 1`: the particular solution if it
    /// already qualifies, else the particular solution plus the first kernel
    /// vector that pairs to one.
    pub fn find_with_functional(&self, lambda: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if lambda.len() != self.dim {
            return Err(Gf2Error::DimensionMismatch { expected: self.dim, found: lambda.len() });
        }
        let Some(p) = &self.particular else {
            return Ok(None);
        };
        if lambda.dot(p) {
            return Ok(Some(p.clone()));
        }
        Ok(self.kernel.iter().find(|k| lambda.dot(k)).map(|k| {
            let mut x = p.clone();
            x.xor_assign(k);
            x
        }))
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    m.kernel_basis()
}

pub fn solve_affine(m: &BitMatrix, b: &BitVector) -> Result<SolutionSpace, Gf2Error> {
    m.solve_affine(b)
}

pub fn find_with_functional(
    s: &SolutionSpace,
    lambda: &BitVector,
) -> Result<Option<BitVector>, Gf2Error> {
    s.find_with_functional(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &[u8]) -> BitVector {
        BitVector::from_bits(bits.iter().map(|&b| b == 1))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::identity(2)), 2);
        assert_eq!(rank(&BitMatrix::zeros(3, 4)), 0);
        let ones = BitMatrix::from_entries(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(rank(&ones), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&BitMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&BitMatrix::zeros(2, 3)).len(), 3);
        let row = BitMatrix::from_entries(1, 2, [(0, 0), (0, 1)]);
        assert_eq!(kernel_basis(&row), vec![bv(&[1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_affine(&BitMatrix::identity(2), &bv(&[1, 0])).unwrap();
        assert_eq!(s.particular(), Some(&bv(&[1, 0])));
        assert!(s.kernel_basis().is_empty());

        let row = BitMatrix::from_entries(1, 2, [(0, 0), (0, 1)]);
        let s = solve_affine(&row, &bv(&[1])).unwrap();
        assert_eq!(s.particular(), Some(&bv(&[1, 0])));
        assert_eq!(s.kernel_basis(), &[bv(&[1, 1])]);

        let s = solve_affine(&BitMatrix::zeros(1, 1), &bv(&[1])).unwrap();
        assert!(s.is_empty());

        assert!(matches!(
            solve_affine(&row, &bv(&[1, 0])),
            Err(Gf2Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn functional_examples() {
        let s = SolutionSpace::new(2, Some(bv(&[1, 0])), vec![bv(&[1, 1])]);
        assert_eq!(find_with_functional(&s, &bv(&[0, 1])).unwrap(), Some(bv(&[0, 1])));
        let s = SolutionSpace::new(2, Some(bv(&[0, 0])), vec![]);
        assert_eq!(find_with_functional(&s, &bv(&[1, 0])).unwrap(), None);
        let s = SolutionSpace::empty(2);
        assert_eq!(find_with_functional(&s, &bv(&[1, 1])).unwrap(), None);
        assert!(find_with_functional(&s, &bv(&[1])).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_entries(3, 3, [(0, 0), (0, 2), (1, 1), (2, 2)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.try_mul(&inv).unwrap(), BitMatrix::identity(3));
        assert_eq!(BitMatrix::zeros(2, 2).inverse(), Err(Gf2Error::Singular));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 150;
        let m = BitMatrix::from_entries(n, n, (0..n).map(|i| (i, (i * 7 + 3) % n)));
        assert_eq!(m.rank(), n);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.try_mul(&m).unwrap(), BitMatrix::identity(n));
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                BitMatrix::from_entries(
                    r,
                    c,
                    bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| (k / c, k % c)),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.cols(), m.rank() + k.len());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
            prop_assert_eq!(BitMatrix::from_rows(m.cols(), &k).rank(), k.len());
        }

        #[test]
        fn solutions_substitute_back(m in arb_matrix(), seed in any::<u64>()) {
            let b = BitVector::from_bits((0..m.rows()).map(|i| (seed >> (i % 64)) & 1 == 1));
            let s = m.solve_affine(&b).unwrap();
            match s.particular() {
                Some(p) => {
                    prop_assert_eq!(&m.mul_vec(p).unwrap(), &b);
                    let lambda = BitVector::from_bits((0..m.cols()).map(|i| (seed >> ((i + 5) % 64)) & 1 == 1));
                    if let Some(x) = s.find_with_functional(&lambda).unwrap() {
                        prop_assert_eq!(&m.mul_vec(&x).unwrap(), &b);
                        prop_assert!(lambda.dot(&x));
                    }
                }
                None => {
                    // b is outside the column space: brute-force confirms.
                    if m.cols() <= 8 {
                        for bits in 0u32..(1 << m.cols()) {
                            let x = BitVector::from_bits((0..m.cols()).map(|i| (bits >> i) & 1 == 1));
                            prop_assert_ne!(&m.mul_vec(&x).unwrap(), &b);
                        }
                    }
                }
            }
            prop_assert_eq!(m.solve_affine(&b).unwrap(), s);
        }
    }
}
