//! Stabilizer codes over the binary symplectic representation.
//!
//! A code on `N` qubits with `N - k` independent stabilizer generators is
//! held as its parity-check matrix (PCM): one `(a_x | a_z)` row per
//! generator. The syndrome of an error is the column of symplectic products
//! with the PCM rows. Alongside the code itself this module builds the
//! certificates the rest of the crate relies on:
//!
//! - [`KernelGenerator`], a full-rank matrix `G` whose right kernel is
//!   exactly the rowspace of the PCM, so `G v^T = 0` certifies that `v` is a
//!   stabilizer element;
//! - [`standard_form`], Gaussian elimination with paired qubit permutations
//!   bringing the PCM to the block shape `[I A1 A2 | B C1 C2; 0 0 0 | D I E]`;
//! - [`logical_operators`], one encoded X and Z pair per logical qubit,
//!   extracted from the standard form;
//! - [`StabilizerCode::enumerate_stabilizer`], exhaustive enumeration of the
//!   stabilizer group for small codes.
//!
//! CSS codes enter through [`CssCode`]: two classical PCMs `hx`, `hz` with
//! `hx hz^T = 0`, stacked block-diagonally into a quantum PCM. For them the
//! kernel generator assembles directly from the classical code generators
//! instead of a fresh nullspace computation.

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{swap_halves, PauliError};
use crate::{Error, Result};

/// Largest `N - k` for which stabilizer-group enumeration is allowed by
/// default (2^24 elements).
pub const DEFAULT_ENUMERATION_CAP: u32 = 24;

/// A syndrome: one bit per PCM row, in row order.
pub type Syndrome = BitVector;

/// A violation found by [`StabilizerCode::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two PCM rows anticommute, so they cannot both be stabilizers.
    AnticommutingRows { row_a: usize, row_b: usize },
    /// The PCM rows are linearly dependent.
    RankDeficient { rank: usize, rows: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AnticommutingRows { row_a, row_b } => {
                write!(f, "rows {row_a} and {row_b} anticommute")
            }
            Violation::RankDeficient { rank, rows } => {
                write!(f, "rows are dependent: rank {rank} < {rows}")
            }
        }
    }
}

/// A stabilizer code, stored as its `(N - k) x 2N` parity-check matrix.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pcm: BitMatrix,
    /// Rows of `pcm` with (x|z) halves exchanged, so syndromes are plain
    /// matrix-vector products.
    pcm_swapped: BitMatrix,
    n_qubits: usize,
}

impl StabilizerCode {
    /// Wraps a parity-check matrix.
    ///
    /// Only structural constraints are checked here (even column count, at
    /// most `N` rows); use [`validate`](Self::validate) for the symplectic
    /// and rank invariants.
    pub fn new(pcm: BitMatrix) -> Result<Self> {
        if pcm.ncols() % 2 != 0 {
            return Err(Error::OddSymplecticLength { len: pcm.ncols() });
        }
        let n_qubits = pcm.ncols() / 2;
        if pcm.nrows() > n_qubits {
            return Err(Error::TooManyStabilizers {
                rows: pcm.nrows(),
                n: n_qubits,
            });
        }
        let swapped_rows = pcm.row_slice().iter().map(swap_halves).collect();
        let pcm_swapped = BitMatrix::from_rows(swapped_rows, pcm.ncols());
        Ok(Self {
            pcm,
            pcm_swapped,
            n_qubits,
        })
    }

    /// Number of physical qubits `N`.
    #[must_use]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of logical qubits `k = N - (PCM rows)`, assuming a full-rank
    /// PCM.
    #[must_use]
    pub fn k(&self) -> usize {
        self.n_qubits - self.pcm.nrows()
    }

    /// The parity-check matrix.
    #[must_use]
    pub fn pcm(&self) -> &BitMatrix {
        &self.pcm
    }

    /// Checks the stabilizer invariants: every pair of rows (and each row
    /// with itself) must commute symplectically, and the rows must be
    /// independent. Returns all violations found, empty for a valid code.
    #[must_use]
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.pcm.nrows();
        for i in 0..m {
            for j in i..m {
                if self.pcm.row(i).dot(self.pcm_swapped.row(j)) {
                    out.push(Violation::AnticommutingRows { row_a: i, row_b: j });
                }
            }
        }
        let rank = self.pcm.rank();
        if rank < m {
            out.push(Violation::RankDeficient { rank, rows: m });
        }
        out
    }

    /// True when [`validate`](Self::validate) reports nothing.
    #[must_use]
    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Syndrome of a raw symplectic vector: bit `v` is the symplectic
    /// product of the error with PCM row `v`.
    ///
    /// # Panics
    ///
    /// Panics if `e.len() != 2N`.
    #[must_use]
    pub fn syndrome_raw(&self, e: &BitVector) -> Syndrome {
        self.pcm_swapped.mul_vec(e)
    }

    /// Syndrome of an error operator.
    ///
    /// # Panics
    ///
    /// Panics if the qubit counts differ.
    #[must_use]
    pub fn syndrome(&self, e: &PauliError) -> Syndrome {
        assert_eq!(e.n_qubits(), self.n_qubits, "qubit count mismatch");
        self.syndrome_raw(e.symplectic())
    }

    /// Enumerates the full stabilizer group under the default cap of
    /// [`DEFAULT_ENUMERATION_CAP`] generators.
    pub fn enumerate_stabilizer(&self) -> Result<StabilizerEnumerator<'_>> {
        self.enumerate_stabilizer_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    /// Enumerates all `2^(N-k)` stabilizer elements in Gray-code order,
    /// starting with the zero vector. Each element is yielded exactly once
    /// provided the PCM has full row rank.
    ///
    /// Fails without yielding anything when `N - k` exceeds `cap`.
    pub fn enumerate_stabilizer_with_cap(&self, cap: u32) -> Result<StabilizerEnumerator<'_>> {
        let m = self.pcm.nrows();
        if m > cap as usize {
            return Err(Error::EnumerationCap { exponent: m, cap });
        }
        Ok(StabilizerEnumerator {
            rows: self.pcm.row_slice(),
            current: BitVector::zeros(self.pcm.ncols()),
            index: 0,
            total: 1u64 << m,
        })
    }
}

/// Iterator over all GF(2) combinations of the PCM rows, in Gray-code order.
pub struct StabilizerEnumerator<'a> {
    rows: &'a [BitVector],
    current: BitVector,
    index: u64,
    total: u64,
}

impl Iterator for StabilizerEnumerator<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.index == self.total {
            return None;
        }
        if self.index > 0 {
            // Gray step: combination index i differs from i-1 in row
            // trailing_zeros(i).
            let bit = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.rows[bit]);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

/// A CSS code: two classical PCMs over the same qubits with `hx hz^T = 0`.
#[derive(Clone, Debug)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
}

impl CssCode {
    /// Pairs the two classical halves. Fails when they disagree on the
    /// number of qubits; orthogonality and rank are checked by
    /// [`to_stabilizer`](Self::to_stabilizer).
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        if hx.ncols() != hz.ncols() {
            return Err(Error::CssWidthMismatch {
                nx: hx.ncols(),
                nz: hz.ncols(),
            });
        }
        Ok(Self { hx, hz })
    }

    /// Number of physical qubits.
    #[must_use]
    pub fn n_qubits(&self) -> usize {
        self.hx.ncols()
    }

    /// X-type classical half.
    #[must_use]
    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    /// Z-type classical half.
    #[must_use]
    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    /// Number of logical qubits `k = N - rows(hx) - rows(hz)`, assuming
    /// full-rank halves.
    #[must_use]
    pub fn k(&self) -> usize {
        self.n_qubits() - self.hx.nrows() - self.hz.nrows()
    }

    /// Builds the quantum PCM `[hx 0; 0 hz]` over the (x|z) halves: all
    /// hx rows first, then all hz rows.
    ///
    /// Fails when `hx hz^T != 0` (naming a violating row pair) or when
    /// either half has dependent rows.
    pub fn to_stabilizer(&self) -> Result<StabilizerCode> {
        let prod = self.hx.mul_transpose(&self.hz);
        for i in 0..prod.nrows() {
            if let Some(j) = prod.row(i).iter_ones().next() {
                return Err(Error::CssOrthogonality {
                    hx_row: i,
                    hz_row: j,
                });
            }
        }
        for (which, h) in [("hx", &self.hx), ("hz", &self.hz)] {
            let rank = h.rank();
            if rank < h.nrows() {
                return Err(Error::CssRankDeficient {
                    which,
                    rank,
                    rows: h.nrows(),
                });
            }
        }
        self.to_stabilizer_unchecked()
    }

    /// Assembles the quantum PCM without orthogonality or rank checks, so
    /// an invalid pair can still be inspected and its violations listed
    /// through [`StabilizerCode::validate`]. Structural limits (too many
    /// rows) still apply.
    pub fn to_stabilizer_unchecked(&self) -> Result<StabilizerCode> {
        let n = self.n_qubits();
        let mut pcm = BitMatrix::zeros(self.hx.nrows() + self.hz.nrows(), 2 * n);
        for i in 0..self.hx.nrows() {
            for j in self.hx.row(i).iter_ones() {
                pcm.set(i, j, true);
            }
        }
        for i in 0..self.hz.nrows() {
            for j in self.hz.row(i).iter_ones() {
                pcm.set(self.hx.nrows() + i, n + j, true);
            }
        }
        StabilizerCode::new(pcm)
    }
}

/// Generator matrix of the classical code with parity-check matrix `h`:
/// a basis of `{ b : h b^T = 0 }` with `ncols - rank(h)` independent rows.
#[must_use]
pub fn classical_generator_from_pcm(h: &BitMatrix) -> BitMatrix {
    h.nullspace_basis()
}

/// A certificate matrix for stabilizer membership: a full-rank `(N+k) x 2N`
/// matrix `G` with `{ v : G v^T = 0 }` equal to the rowspace of the PCM.
#[derive(Clone, Debug)]
pub struct KernelGenerator {
    g: BitMatrix,
}

impl KernelGenerator {
    /// Builds the kernel generator as a nullspace basis of the PCM. Works
    /// for any valid stabilizer code; cost is one Gaussian elimination of
    /// the `(N-k) x 2N` PCM.
    #[must_use]
    pub fn from_nullspace(code: &StabilizerCode) -> Self {
        Self {
            g: code.pcm().nullspace_basis(),
        }
    }

    /// Assembles the kernel generator for a CSS code from the classical
    /// generator matrices of its halves, as the block-diagonal stack
    /// `[gx 0; 0 gz]`. No elimination is needed, which is the point: when
    /// the classical generators are already known this is a plain copy.
    ///
    /// Fails when a generator has the wrong shape or rank for its half, or
    /// is not orthogonal to it.
    pub fn from_css_generators(css: &CssCode, gx: &BitMatrix, gz: &BitMatrix) -> Result<Self> {
        for (which, g, h) in [("x", gx, &css.hx), ("z", gz, &css.hz)] {
            if g.ncols() != css.n_qubits() {
                return Err(Error::BadClassicalGenerator {
                    which,
                    reason: format!(
                        "has {} columns, expected {}",
                        g.ncols(),
                        css.n_qubits()
                    ),
                });
            }
            let expected = css.n_qubits() - h.rank();
            if g.nrows() != expected {
                return Err(Error::BadClassicalGenerator {
                    which,
                    reason: format!("has {} rows, expected {expected}", g.nrows()),
                });
            }
            let rank = g.rank();
            if rank < g.nrows() {
                return Err(Error::BadClassicalGenerator {
                    which,
                    reason: format!("rows are dependent: rank {rank} < {}", g.nrows()),
                });
            }
            let prod = g.mul_transpose(h);
            for i in 0..prod.nrows() {
                if let Some(j) = prod.row(i).iter_ones().next() {
                    return Err(Error::BadClassicalGenerator {
                        which,
                        reason: format!("row {i} is not orthogonal to PCM row {j}"),
                    });
                }
            }
        }
        Ok(Self {
            g: assemble_css_kernel(gx, gz),
        })
    }

    /// Wraps an arbitrary matrix as a certificate without any checks.
    /// Useful for studying how corrupted certificates surface in agreement
    /// checks; everything else should go through the validated builders.
    #[must_use]
    pub fn from_matrix_unchecked(g: BitMatrix) -> Self {
        Self { g }
    }

    /// The certificate matrix `G`.
    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.g
    }

    /// True when `G v^T = 0`, i.e. `v` is a stabilizer element.
    ///
    /// # Panics
    ///
    /// Panics if `v.len()` differs from the PCM width `2N`.
    #[must_use]
    pub fn contains(&self, v: &BitVector) -> bool {
        self.g.mul_vec(v).is_zero()
    }
}

/// Block-diagonal stack `[gx 0; 0 gz]` over the (x|z) halves. This is the
/// raw assembly step of [`KernelGenerator::from_css_generators`], split out
/// so its cost can be measured against the nullspace route.
#[must_use]
pub fn assemble_css_kernel(gx: &BitMatrix, gz: &BitMatrix) -> BitMatrix {
    assert_eq!(gx.ncols(), gz.ncols(), "CSS halves must share qubit count");
    let n = gx.ncols();
    let mut rows = Vec::with_capacity(gx.nrows() + gz.nrows());
    for i in 0..gx.nrows() {
        let mut row = BitVector::zeros(2 * n);
        row.splice(0, gx.row(i));
        rows.push(row);
    }
    for i in 0..gz.nrows() {
        let mut row = BitVector::zeros(2 * n);
        row.splice(n, gz.row(i));
        rows.push(row);
    }
    BitMatrix::from_rows(rows, 2 * n)
}

/// Result of [`standard_form`].
#[derive(Clone, Debug)]
pub struct StandardForm {
    /// The transformed PCM. With `r = x_rank`, `m = N - k`, and column
    /// blocks of widths `r`, `m - r`, `k` in each half, the first `r` rows
    /// have x-half `[I A1 A2]` and the remaining rows are
    /// `[0 0 0 | D I E]`.
    pub matrix: BitMatrix,
    /// `qubit_permutation[i]` is the original qubit now at position `i`.
    pub qubit_permutation: Vec<usize>,
    /// Rank of the x-half, the size of the leading identity block.
    pub x_rank: usize,
}

/// Brings a PCM to standard form by Gaussian elimination with paired qubit
/// permutations (each qubit swap moves the matching column in both halves).
///
/// Fails when the PCM rows are dependent, which makes the lower identity
/// block unreachable.
pub fn standard_form(code: &StabilizerCode) -> Result<StandardForm> {
    let n = code.n_qubits();
    let m = code.pcm().nrows();
    let mut mat = code.pcm().clone();
    let mut perm: Vec<usize> = (0..n).collect();

    let swap_qubits = |mat: &mut BitMatrix, perm: &mut Vec<usize>, a: usize, b: usize| {
        if a != b {
            mat.swap_columns(a, b);
            mat.swap_columns(n + a, n + b);
            perm.swap(a, b);
        }
    };

    // Stage 1: reduce the x-half to [I A1 A2] on the first r rows.
    let mut r = 0;
    while r < m {
        let found = (r..m)
            .flat_map(|i| {
                mat.row(i)
                    .iter_ones()
                    .take_while(|&j| j < n)
                    .map(move |j| (i, j))
            })
            .find(|&(_, j)| j >= r);
        let Some((pi, pj)) = found else { break };
        mat.swap_rows(r, pi);
        swap_qubits(&mut mat, &mut perm, r, pj);
        for i in 0..m {
            if i != r && mat.get(i, r) {
                mat.xor_row_into(r, i);
            }
        }
        r += 1;
    }

    // Stage 2: the rows below r now have zero x-half; reduce their z-half to
    // [D I E] using qubits r..n only, so the x-stage identity is preserved.
    for pos in 0..(m - r) {
        let row_base = r + pos;
        let qub_base = r + pos;
        let found = (row_base..m)
            .flat_map(|i| {
                mat.row(i)
                    .iter_ones()
                    .filter(|&j| j >= n)
                    .map(move |j| (i, j - n))
            })
            .find(|&(_, q)| q >= qub_base);
        let Some((pi, pq)) = found else {
            return Err(Error::InvalidCode(
                "parity-check rows are dependent; standard form needs full rank".into(),
            ));
        };
        mat.swap_rows(row_base, pi);
        swap_qubits(&mut mat, &mut perm, qub_base, pq);
        for i in r..m {
            if i != row_base && mat.get(i, n + qub_base) {
                mat.xor_row_into(row_base, i);
            }
        }
    }

    Ok(StandardForm {
        matrix: mat,
        qubit_permutation: perm,
        x_rank: r,
    })
}

/// The encoded Pauli operators of a code: `xbars[l]` and `zbars[l]` act as
/// logical X and Z on logical qubit `l`.
#[derive(Clone, Debug)]
pub struct LogicalOperatorSet {
    xbars: Vec<PauliError>,
    zbars: Vec<PauliError>,
}

impl LogicalOperatorSet {
    /// Encoded X operators, one per logical qubit.
    #[must_use]
    pub fn xbars(&self) -> &[PauliError] {
        &self.xbars
    }

    /// Encoded Z operators, one per logical qubit.
    #[must_use]
    pub fn zbars(&self) -> &[PauliError] {
        &self.zbars
    }

    /// Number of logical qubits.
    #[must_use]
    pub fn k(&self) -> usize {
        self.xbars.len()
    }

    /// All `2k` operators, X set first.
    pub fn iter(&self) -> impl Iterator<Item = &PauliError> {
        self.xbars.iter().chain(self.zbars.iter())
    }

    pub(crate) fn from_parts(xbars: Vec<PauliError>, zbars: Vec<PauliError>) -> Self {
        Self { xbars, zbars }
    }
}

/// Extracts one encoded X/Z pair per logical qubit from the standard form.
///
/// With the standard form `[I A1 A2 | B C1 C2; 0 0 0 | D I E]` the encoded
/// operators (in permuted qubit order) are
///
/// ```text
/// Xbar = ( 0 E^T I | E^T C1^T + C2^T 0 0 )
/// Zbar = ( 0 0   0 | A2^T            0 I )
/// ```
///
/// and the result is mapped back to the original qubit order. Fails when
/// `k = 0` or when the code has no standard form.
pub fn logical_operators(code: &StabilizerCode) -> Result<LogicalOperatorSet> {
    let n = code.n_qubits();
    let k = code.k();
    if k == 0 {
        return Err(Error::NoLogicalQubits);
    }
    let sf = standard_form(code)?;
    let m = n - k;
    let r = sf.x_rank;

    let a2 = sf.matrix.block(0, r, m, n);
    let c1 = sf.matrix.block(0, r, n + r, n + m);
    let c2 = sf.matrix.block(0, r, n + m, 2 * n);
    let e = sf.matrix.block(r, m, n + m, 2 * n);

    let e_t = e.transpose();
    let xbar_z_left = c1.matmul(&e).xor(&c2).transpose();
    let zbar_z_left = a2.transpose();

    let unpermute = |xpart: &BitMatrix, zpart: &BitMatrix, row: usize| -> Result<PauliError> {
        let mut v = BitVector::zeros(2 * n);
        for j in xpart.row(row).iter_ones() {
            v.set(sf.qubit_permutation[j], true);
        }
        for j in zpart.row(row).iter_ones() {
            v.set(n + sf.qubit_permutation[j], true);
        }
        PauliError::from_symplectic(v)
    };

    // Assemble the k x n halves in permuted order, then map columns back.
    let zero_k_r = BitMatrix::zeros(k, r);
    let zero_k_mr = BitMatrix::zeros(k, m - r);
    let zero_k_k = BitMatrix::zeros(k, k);
    let ident_k = BitMatrix::identity(k);

    let xbar_x = zero_k_r.hstack(&e_t).hstack(&ident_k);
    let xbar_z = xbar_z_left.hstack(&zero_k_mr).hstack(&zero_k_k);
    let zbar_x = BitMatrix::zeros(k, n);
    let zbar_z = zbar_z_left.hstack(&zero_k_mr).hstack(&ident_k);

    let mut xbars = Vec::with_capacity(k);
    let mut zbars = Vec::with_capacity(k);
    for l in 0..k {
        xbars.push(unpermute(&xbar_x, &xbar_z, l)?);
        zbars.push(unpermute(&zbar_x, &zbar_z, l)?);
    }
    Ok(LogicalOperatorSet::from_parts(xbars, zbars))
}
