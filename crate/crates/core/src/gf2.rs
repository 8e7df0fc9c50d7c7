//! Dense GF(2) vectors and matrices packed into machine words.
//!
//! Rows are stored as [`BitVector`]s (64 bits per `u64` word) so that the
//! elimination primitive, XOR of one row into another, runs word-parallel.
//! Reduction is plain Gaussian elimination; pivots are chosen
//! deterministically as the first nonzero entry of the remaining submatrix
//! scanning top-to-bottom, left-to-right, so equal inputs always produce
//! equal outputs.
//!
//! Dimension mismatches are caller bugs and panic; no operation here returns
//! a `Result`.

const WORD_BITS: usize = 64;

/// A fixed-length vector over GF(2), least significant bit first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    /// All-zero vector of `len` bits.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// Builds a vector from `0`/`1` entries.
    ///
    /// # Panics
    ///
    /// Panics if any entry is not 0 or 1.
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            assert!(b <= 1, "entry {i} is {b}, expected 0 or 1");
            if b == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Number of bits.
    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    /// True when the vector has no bits at all.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit at `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[must_use]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    /// Sets the bit at `index`.
    ///
    /// # Panics
    ///
    /// Panics if `index >= len`.
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    /// XORs `other` into `self`.
    ///
    /// # Panics
    ///
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor_assign");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Returns `self ^ other` without mutating either operand.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2): parity of the AND of the two vectors.
    ///
    /// # Panics
    ///
    /// Panics if lengths differ.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc == 1
    }

    /// Hamming weight.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when every bit is zero.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    return None;
                }
                let bit = rem.trailing_zeros() as usize;
                rem &= rem - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    /// ORs every bit of `src` into `self` starting at bit `offset`, as a
    /// word-level shifted copy.
    ///
    /// # Panics
    ///
    /// Panics if `offset + src.len()` exceeds `self.len()`.
    pub fn splice(&mut self, offset: usize, src: &Self) {
        assert!(
            offset + src.len <= self.len,
            "splice of {} bits at {offset} overflows length {}",
            src.len,
            self.len
        );
        let word = offset / WORD_BITS;
        let shift = offset % WORD_BITS;
        if shift == 0 {
            for (i, &w) in src.words.iter().enumerate() {
                self.words[word + i] |= w;
            }
        } else {
            for (i, &w) in src.words.iter().enumerate() {
                self.words[word + i] |= w << shift;
                let carried = w >> (WORD_BITS - shift);
                if carried != 0 {
                    self.words[word + i + 1] |= carried;
                }
            }
        }
    }

    /// Entries as `0`/`1` bytes, for serialization.
    #[must_use]
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Outcome of [`BitMatrix::rref`].
#[derive(Clone, Debug)]
pub struct RrefResult {
    /// The reduced matrix. When a column permutation was applied, its columns
    /// are in permuted order: column `j` of `reduced` is column
    /// `column_permutation[j]` of the input.
    pub reduced: BitMatrix,
    /// Pivot column indices of `reduced`, ascending. Without column
    /// permutation these are input column indices; with permutation enabled
    /// pivots occupy the leading columns `0..rank`.
    pub pivot_columns: Vec<usize>,
    /// Number of pivots.
    pub rank: usize,
    /// `column_permutation[j]` is the input column now at position `j`.
    /// Identity when no permutation was applied.
    pub column_permutation: Vec<usize>,
}

/// A dense GF(2) matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    /// All-zero matrix.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    /// Identity matrix.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` entries.
    ///
    /// # Panics
    ///
    /// Panics if rows have unequal lengths or non-binary entries.
    #[must_use]
    pub fn from_bit_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.as_ref().len(), cols, "ragged rows");
                BitVector::from_bits(r.as_ref())
            })
            .collect();
        Self { rows, cols }
    }

    /// Builds a matrix from owned rows.
    ///
    /// # Panics
    ///
    /// Panics if rows have unequal lengths.
    #[must_use]
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length differs from cols");
        }
        Self { rows, cols }
    }

    /// Number of rows.
    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`.
    #[must_use]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    /// Sets the entry at `(row, col)`.
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    /// Borrow of row `i`.
    #[must_use]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// All rows in order.
    #[must_use]
    pub fn row_slice(&self) -> &[BitVector] {
        &self.rows
    }

    /// Appends a row.
    ///
    /// # Panics
    ///
    /// Panics if the row length differs from the column count.
    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length differs from cols");
        self.rows.push(row);
    }

    /// Swaps two rows.
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// Swaps two columns in every row.
    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.rows {
            let (va, vb) = (row.get(a), row.get(b));
            row.set(a, vb);
            row.set(b, va);
        }
    }

    /// XORs row `src` into row `dst`.
    pub(crate) fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst, "xor_row_into with src == dst");
        if src < dst {
            let (head, tail) = self.rows.split_at_mut(dst);
            tail[0].xor_assign(&head[src]);
        } else {
            let (head, tail) = self.rows.split_at_mut(src);
            head[dst].xor_assign(&tail[0]);
        }
    }

    /// Matrix-vector product `M v^T` as a column of parities.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != ncols`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Matrix product `self * other`.
    ///
    /// # Panics
    ///
    /// Panics if `self.ncols() != other.nrows()`.
    #[must_use]
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.nrows(),
            "dimension mismatch in matmul"
        );
        let mut out = Self::zeros(self.rows.len(), other.ncols());
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    /// Product with the transpose of `other`: `self * other^T`.
    ///
    /// # Panics
    ///
    /// Panics if the column counts differ.
    #[must_use]
    pub fn mul_transpose(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols,
            other.ncols(),
            "dimension mismatch in mul_transpose"
        );
        let mut out = Self::zeros(self.rows.len(), other.nrows());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Transposed copy.
    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.set(j, i, true);
            }
        }
        out
    }

    /// Copy of the block with rows in `r0..r1` and columns in `c0..c1`.
    ///
    /// # Panics
    ///
    /// Panics if the ranges exceed the matrix shape.
    #[must_use]
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(r0 <= r1 && r1 <= self.rows.len(), "bad row range");
        assert!(c0 <= c1 && c1 <= self.cols, "bad column range");
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in self.rows[i].iter_ones() {
                if j >= c0 && j < c1 {
                    out.set(i - r0, j - c0, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    ///
    /// # Panics
    ///
    /// Panics if the row counts differ.
    #[must_use]
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows.len(), other.nrows(), "row count mismatch in hstack");
        let mut out = Self::zeros(self.rows.len(), self.cols + other.ncols());
        for i in 0..self.rows.len() {
            for j in self.rows[i].iter_ones() {
                out.set(i, j, true);
            }
            for j in other.rows[i].iter_ones() {
                out.set(i, self.cols + j, true);
            }
        }
        out
    }

    /// Vertical concatenation of `self` on top of `other`.
    ///
    /// # Panics
    ///
    /// Panics if the column counts differ.
    #[must_use]
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.ncols(), "column count mismatch in vstack");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self { rows, cols: self.cols }
    }

    /// Entrywise XOR (matrix sum over GF(2)).
    ///
    /// # Panics
    ///
    /// Panics if the shapes differ.
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.ncols(), "shape mismatch in xor");
        assert_eq!(self.rows.len(), other.nrows(), "shape mismatch in xor");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.xor(b))
            .collect();
        Self { rows, cols: self.cols }
    }

    /// Rank over GF(2).
    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref(false).rank
    }

    /// Reduced row-echelon form by Gaussian elimination.
    ///
    /// Pivots are the first nonzero entry of the remaining submatrix in
    /// top-to-bottom, left-to-right scan order. With
    /// `allow_column_permutation` the pivot's column is swapped into the
    /// leading position, so pivots occupy columns `0..rank` of the output and
    /// [`RrefResult::column_permutation`] records where each column came
    /// from. Without it only row operations are used and the result is the
    /// unique RREF of the input.
    #[must_use]
    pub fn rref(&self, allow_column_permutation: bool) -> RrefResult {
        let mut m = self.clone();
        let nrows = m.rows.len();
        let mut perm: Vec<usize> = (0..m.cols).collect();
        let mut pivot_columns = Vec::new();
        let mut r = 0;

        if allow_column_permutation {
            while r < nrows {
                // First nonzero entry of the submatrix at (r.., r..) in
                // row-major scan order.
                let found = (r..nrows)
                    .flat_map(|i| m.rows[i].iter_ones().map(move |j| (i, j)))
                    .find(|&(_, j)| j >= r);
                let Some((pi, pj)) = found else { break };
                m.rows.swap(r, pi);
                if pj != r {
                    m.swap_columns(r, pj);
                    perm.swap(r, pj);
                }
                for i in 0..nrows {
                    if i != r && m.get(i, r) {
                        m.xor_row_into(r, i);
                    }
                }
                pivot_columns.push(r);
                r += 1;
            }
        } else {
            let mut c = 0;
            while r < nrows && c < m.cols {
                let Some(pi) = (r..nrows).find(|&i| m.get(i, c)) else {
                    c += 1;
                    continue;
                };
                m.rows.swap(r, pi);
                for i in 0..nrows {
                    if i != r && m.get(i, c) {
                        m.xor_row_into(r, i);
                    }
                }
                pivot_columns.push(c);
                r += 1;
                c += 1;
            }
        }

        RrefResult {
            reduced: m,
            rank: pivot_columns.len(),
            pivot_columns,
            column_permutation: perm,
        }
    }

    /// Basis for the right kernel `{ b : M b^T = 0 }`, one row per free
    /// column of the RREF, in ascending free-column order. The result has
    /// `ncols - rank` rows (a `0 x ncols` matrix for full column rank).
    #[must_use]
    pub fn nullspace_basis(&self) -> Self {
        let RrefResult {
            reduced,
            pivot_columns,
            ..
        } = self.rref(false);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_columns {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Self::zeros(free.len(), self.cols);
        for (bi, &f) in free.iter().enumerate() {
            basis.set(bi, f, true);
            for (ri, &pc) in pivot_columns.iter().enumerate() {
                if reduced.get(ri, f) {
                    basis.set(bi, pc, true);
                }
            }
        }
        basis
    }

    /// True when `v` is a GF(2) combination of the rows of `self`.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != ncols`.
    #[must_use]
    pub fn is_in_rowspace(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "dimension mismatch in is_in_rowspace");
        let RrefResult {
            reduced,
            pivot_columns,
            ..
        } = self.rref(false);
        let mut w = v.clone();
        for (ri, &pc) in pivot_columns.iter().enumerate() {
            if w.get(pc) {
                w.xor_assign(reduced.row(ri));
            }
        }
        w.is_zero()
    }

    /// True when every row of `other` lies in the rowspace of `self` and
    /// vice versa.
    #[must_use]
    pub fn same_rowspace(&self, other: &Self) -> bool {
        if self.cols != other.ncols() {
            return false;
        }
        let ra = self.rank();
        let rb = other.rank();
        ra == rb && self.vstack(other).rank() == ra
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}
