//! Toolkit for stabilizer quantum error-correcting codes over the binary
//! symplectic representation.
//!
//! An effective Pauli operator on `N` qubits (phases discarded) is stored as a
//! length-`2N` bit vector `(a_x | a_z)`: `X -> (1|0)`, `Z -> (0|1)`,
//! `Y -> (1|1)`. Operator composition is XOR, and two operators commute
//! exactly when their symplectic product vanishes. On top of that
//! representation the crate provides:
//!
//! - dense bit-packed GF(2) linear algebra ([`gf2`]);
//! - Pauli-string parsing, composition and commutation checks ([`pauli`]);
//! - stabilizer and CSS codes, syndromes, kernel generator matrices for the
//!   stabilizer group, standard-form reduction and encoded (logical) Pauli
//!   operators ([`stabilizer`]);
//! - a small library of built-in codes plus JSON / alist serialization
//!   ([`codes`]);
//! - classification of decoding outcomes into success, detected error,
//!   logical error, and degenerate error, with four interchangeable
//!   stabilizer-membership tests ([`classifier`]);
//! - a syndrome belief-propagation decoder for CSS codes under depolarizing
//!   noise ([`decoder`]);
//! - a deterministic Monte Carlo harness that measures physical and logical
//!   error rates and the split between error types ([`sim`]).
//!
//! Determinism is a design constraint throughout: every randomized routine
//! takes an explicit seed or RNG, and simulation results are bit-identical
//! for a fixed seed regardless of worker count.

pub mod classifier;
pub mod codes;
pub mod decoder;
pub mod gf2;
pub mod pauli;
pub mod sim;
pub mod stabilizer;

/// Errors reported by fallible operations across the crate.
///
/// Dimension mismatches in the hot algebra paths (`gf2`, `pauli`) are treated
/// as caller bugs and panic instead; see the `# Panics` sections there.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A Pauli string contained a character other than `I`, `X`, `Y`, `Z`.
    #[error("invalid Pauli character {found:?} at position {position}")]
    InvalidPauliChar { position: usize, found: char },

    /// A symplectic vector had odd length and cannot split into (x|z) halves.
    #[error("symplectic vector length {len} is odd")]
    OddSymplecticLength { len: usize },

    /// A parity-check matrix had more rows than qubits (k would be negative).
    #[error("parity-check matrix has {rows} rows for {n} qubits; at most {n} are allowed")]
    TooManyStabilizers { rows: usize, n: usize },

    /// Two CSS halves disagree on the number of qubits.
    #[error("CSS halves disagree on qubit count: hx has {nx} columns, hz has {nz}")]
    CssWidthMismatch { nx: usize, nz: usize },

    /// CSS orthogonality hx * hz^T = 0 failed for the named row pair.
    #[error("CSS orthogonality violated: hx row {hx_row} anticommutes with hz row {hz_row}")]
    CssOrthogonality { hx_row: usize, hz_row: usize },

    /// A classical parity-check half of a CSS code has dependent rows.
    #[error("{which} is rank-deficient: rank {rank} < {rows} rows")]
    CssRankDeficient {
        which: &'static str,
        rank: usize,
        rows: usize,
    },

    /// A generator matrix supplied for kernel assembly failed its contract.
    #[error("bad classical generator for the {which} half: {reason}")]
    BadClassicalGenerator { which: &'static str, reason: String },

    /// The code encodes no logical qubits, so the request is undefined.
    #[error("code has no logical qubits (k = 0)")]
    NoLogicalQubits,

    /// Parameters of a built-in code construction were out of domain.
    #[error("bad code parameters: {0}")]
    BadCodeParameters(String),

    /// Operation needs a valid code but the parity-check matrix is not one.
    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    /// Stabilizer-group enumeration would exceed the configured cap.
    #[error("stabilizer enumeration needs 2^{exponent} elements, above the cap 2^{cap}")]
    EnumerationCap { exponent: usize, cap: u32 },

    /// A vector fed to the encoded-Pauli membership test has a nonzero
    /// syndrome, so the test is undefined for it.
    #[error("not in centralizer: vector has nonzero syndrome")]
    NotInCentralizer,

    /// A decoder parameter was outside its documented domain.
    #[error("invalid decoder parameter: {0}")]
    DecoderParameter(String),

    /// A simulation parameter was outside its documented domain.
    #[error("invalid simulation parameter: {0}")]
    SimParameter(String),

    /// A depolarizing probability was outside [0, 3/4).
    #[error("depolarizing probability {p} outside [0, 0.75)")]
    BadErrorProbability { p: f64 },

    /// Malformed code file or trace input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
