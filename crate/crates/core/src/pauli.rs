//! Effective Pauli operators in the binary symplectic representation.
//!
//! An `N`-qubit Pauli operator with phases discarded maps to a bit vector
//! `(a_x | a_z)` of length `2N`: qubit `i` carries `X` when bit `i` of the
//! x-half is set, `Z` when bit `i` of the z-half is set, and `Y` when both
//! are. Composition of operators is XOR of their vectors, and the symplectic
//! product
//!
//! ```text
//! a (.) b = a_x . b_z + a_z . b_x   (mod 2)
//! ```
//!
//! is 0 exactly when the operators commute.

use crate::gf2::BitVector;
use crate::{Error, Result};

/// An effective (phase-free) Pauli operator on `n_qubits` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliError {
    symplectic: BitVector,
    n_qubits: usize,
}

impl PauliError {
    /// The identity operator on `n_qubits` qubits.
    #[must_use]
    pub fn identity(n_qubits: usize) -> Self {
        Self {
            symplectic: BitVector::zeros(2 * n_qubits),
            n_qubits,
        }
    }

    /// Wraps an existing symplectic vector `(a_x | a_z)`.
    ///
    /// Fails when the length is odd.
    pub fn from_symplectic(v: BitVector) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::OddSymplecticLength { len: v.len() });
        }
        let n_qubits = v.len() / 2;
        Ok(Self {
            symplectic: v,
            n_qubits,
        })
    }

    /// Parses a string over `IXYZ`, one character per qubit.
    ///
    /// Fails on any other character, reporting its position.
    pub fn from_pauli_string(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let n = chars.len();
        let mut v = BitVector::zeros(2 * n);
        for (i, c) in chars.into_iter().enumerate() {
            match c {
                'I' => {}
                'X' => v.set(i, true),
                'Z' => v.set(n + i, true),
                'Y' => {
                    v.set(i, true);
                    v.set(n + i, true);
                }
                other => {
                    return Err(Error::InvalidPauliChar {
                        position: i,
                        found: other,
                    })
                }
            }
        }
        Ok(Self {
            symplectic: v,
            n_qubits: n,
        })
    }

    /// Renders the operator as a string over `IXYZ`.
    #[must_use]
    pub fn to_pauli_string(&self) -> String {
        (0..self.n_qubits)
            .map(|i| match (self.x_bit(i), self.z_bit(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            })
            .collect()
    }

    /// Number of qubits the operator acts on.
    #[must_use]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The underlying `(a_x | a_z)` vector.
    #[must_use]
    pub fn symplectic(&self) -> &BitVector {
        &self.symplectic
    }

    /// Consumes the operator, returning its symplectic vector.
    #[must_use]
    pub fn into_symplectic(self) -> BitVector {
        self.symplectic
    }

    /// X component on qubit `i`.
    #[must_use]
    pub fn x_bit(&self, i: usize) -> bool {
        self.symplectic.get(i)
    }

    /// Z component on qubit `i`.
    #[must_use]
    pub fn z_bit(&self, i: usize) -> bool {
        self.symplectic.get(self.n_qubits + i)
    }

    /// Composition (operator product with phases discarded): XOR of the
    /// symplectic vectors.
    ///
    /// # Panics
    ///
    /// Panics if the qubit counts differ.
    #[must_use]
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "qubit count mismatch in compose"
        );
        Self {
            symplectic: self.symplectic.xor(&other.symplectic),
            n_qubits: self.n_qubits,
        }
    }

    /// Symplectic product: false when the operators commute, true when they
    /// anticommute.
    ///
    /// # Panics
    ///
    /// Panics if the qubit counts differ.
    #[must_use]
    pub fn symplectic_product(&self, other: &Self) -> bool {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "qubit count mismatch in symplectic_product"
        );
        symplectic_product_raw(&self.symplectic, &other.symplectic)
    }

    /// Number of qubits acted on nontrivially (X, Y, or Z).
    #[must_use]
    pub fn weight(&self) -> usize {
        (0..self.n_qubits)
            .filter(|&i| self.x_bit(i) || self.z_bit(i))
            .count()
    }
}

impl std::fmt::Display for PauliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pauli_string())
    }
}

impl std::fmt::Debug for PauliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PauliError({self})")
    }
}

impl std::str::FromStr for PauliError {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_pauli_string(s)
    }
}

/// Symplectic product of two raw `(a_x | a_z)` vectors of equal even length.
///
/// # Panics
///
/// Panics if the lengths differ or are odd.
#[must_use]
pub fn symplectic_product_raw(a: &BitVector, b: &BitVector) -> bool {
    assert_eq!(a.len(), b.len(), "length mismatch in symplectic product");
    // a_x . b_z + a_z . b_x is the plain inner product of a with b's halves
    // exchanged, which keeps the word-parallel dot.
    a.dot(&swap_halves(b))
}

/// Exchanges the (x|z) halves of a symplectic vector: `(a_x|a_z) -> (a_z|a_x)`.
///
/// The symplectic product of `a` and `b` equals the plain GF(2) inner product
/// of `a` with `swap_halves(b)`, so callers computing many products against a
/// fixed operand can swap it once.
///
/// # Panics
///
/// Panics if the length is odd.
#[must_use]
pub fn swap_halves(v: &BitVector) -> BitVector {
    assert_eq!(v.len() % 2, 0, "symplectic vectors must have even length");
    let n = v.len() / 2;
    let mut out = BitVector::zeros(v.len());
    for i in v.iter_ones() {
        out.set(if i < n { n + i } else { i - n }, true);
    }
    out
}
