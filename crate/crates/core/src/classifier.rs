//! Classification of end-to-end decoding outcomes.
//!
//! After decoding, the channel error `e` and the estimate `ehat` combine to
//! a residual `e (+) ehat`. Four outcomes are distinguished:
//!
//! - **Success**: the estimate matches the error exactly.
//! - **E1** ([`ErrorClass::DifferentSyndrome`]): the estimate reproduces a
//!   different syndrome, so the failure is detectable.
//! - **E2** ([`ErrorClass::IdenticalSyndrome`]): same syndrome but the
//!   residual acts nontrivially on the logical qubits, a logical error.
//! - **E3** ([`ErrorClass::Degenerate`]): same syndrome and the residual is
//!   a stabilizer element, so the correction succeeds physically even though
//!   the estimate differs from the error.
//!
//! Telling E2 from E3 is a stabilizer-membership question. Four
//! interchangeable tests answer it: the kernel certificate `G v^T = 0`,
//! commutation with all encoded Pauli operators, an augmented-rank check
//! against the PCM rowspace, and brute-force enumeration. They must agree
//! everywhere they are defined; [`methods_agree`] cross-checks them on
//! randomized inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gf2::BitVector;
use crate::pauli::{swap_halves, PauliError};
use crate::stabilizer::{logical_operators, KernelGenerator, LogicalOperatorSet, StabilizerCode};
use crate::{Error, Result};

/// Outcome classes for a decoded trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    /// The estimate equals the error.
    Success,
    /// E1: the estimate's syndrome differs from the observed one.
    DifferentSyndrome,
    /// E2: same syndrome, residual outside the stabilizer (logical error).
    IdenticalSyndrome,
    /// E3: same syndrome, residual inside the stabilizer (degenerate).
    Degenerate,
}

impl ErrorClass {
    /// Short report label: `SUCCESS`, `E1`, `E2`, or `E3`.
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            ErrorClass::Success => "SUCCESS",
            ErrorClass::DifferentSyndrome => "E1",
            ErrorClass::IdenticalSyndrome => "E2",
            ErrorClass::Degenerate => "E3",
        }
    }

    /// True for the classes that count as end-to-end errors (E1, E2, E3).
    #[must_use]
    pub fn is_error(self) -> bool {
        self != ErrorClass::Success
    }

    /// True for the classes that corrupt the logical state (E1, E2); a
    /// degenerate miss preserves it.
    #[must_use]
    pub fn is_logical_failure(self) -> bool {
        matches!(
            self,
            ErrorClass::DifferentSyndrome | ErrorClass::IdenticalSyndrome
        )
    }
}

impl std::fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which stabilizer-membership test [`classify`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodKind {
    /// `G v^T = 0` against the kernel certificate (the default).
    KernelCoset,
    /// Commutation with all encoded X and Z operators; defined only on
    /// centralizer elements.
    EncodedPauli,
    /// Rank of the PCM augmented with `v` against the PCM rank.
    AugmentedRank,
    /// Exhaustive enumeration; available only while `N - k` stays at or
    /// below the enumeration cap.
    BruteForce,
}

impl MethodKind {
    /// All methods, in the order reports use.
    pub const ALL: [MethodKind; 4] = [
        MethodKind::KernelCoset,
        MethodKind::EncodedPauli,
        MethodKind::AugmentedRank,
        MethodKind::BruteForce,
    ];
}

impl std::fmt::Display for MethodKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MethodKind::KernelCoset => "kernel_coset",
            MethodKind::EncodedPauli => "encoded_pauli",
            MethodKind::AugmentedRank => "augmented_rank",
            MethodKind::BruteForce => "brute_force",
        })
    }
}

impl std::str::FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel_coset" => Ok(MethodKind::KernelCoset),
            "encoded_pauli" => Ok(MethodKind::EncodedPauli),
            "augmented_rank" => Ok(MethodKind::AugmentedRank),
            "brute_force" => Ok(MethodKind::BruteForce),
            other => Err(Error::Parse(format!(
                "unknown method {other:?}; expected kernel_coset, encoded_pauli, \
augmented_rank, or brute_force"
            ))),
        }
    }
}

/// Precomputed state for classification: the code, its kernel certificate,
/// and its encoded Pauli operators.
#[derive(Clone, Debug)]
pub struct ClassifierContext {
    code: StabilizerCode,
    kernel: KernelGenerator,
    logicals: LogicalOperatorSet,
    /// Logical operators with (x|z) halves exchanged, so commutation checks
    /// are plain dot products.
    logicals_swapped: Vec<BitVector>,
}

impl ClassifierContext {
    /// Builds the kernel certificate and encoded operators for a valid
    /// code. For `k = 0` the encoded-operator set is empty, which makes the
    /// encoded-Pauli test report every centralizer element as a stabilizer;
    /// that is correct, since the centralizer then equals the stabilizer.
    pub fn new(code: StabilizerCode) -> Result<Self> {
        let kernel = KernelGenerator::from_nullspace(&code);
        let logicals = if code.k() == 0 {
            LogicalOperatorSet::from_parts(Vec::new(), Vec::new())
        } else {
            logical_operators(&code)?
        };
        Ok(Self::from_parts(code, kernel, logicals))
    }

    /// Assembles a context from parts without consistency checks. Meant for
    /// tests that deliberately corrupt a certificate; normal callers use
    /// [`new`](Self::new).
    #[must_use]
    pub fn from_parts(
        code: StabilizerCode,
        kernel: KernelGenerator,
        logicals: LogicalOperatorSet,
    ) -> Self {
        let logicals_swapped = logicals
            .iter()
            .map(|op| swap_halves(op.symplectic()))
            .collect();
        Self {
            code,
            kernel,
            logicals,
            logicals_swapped,
        }
    }

    /// The underlying code.
    #[must_use]
    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    /// The kernel certificate.
    #[must_use]
    pub fn kernel(&self) -> &KernelGenerator {
        &self.kernel
    }

    /// The encoded Pauli operators.
    #[must_use]
    pub fn logicals(&self) -> &LogicalOperatorSet {
        &self.logicals
    }
}

/// Stabilizer membership via the kernel certificate: `v` is a stabilizer
/// element iff `G v^T = 0`.
#[must_use]
pub fn is_stabilizer_kernel(ctx: &ClassifierContext, v: &BitVector) -> bool {
    ctx.kernel.contains(v)
}

/// Stabilizer membership via encoded Pauli operators: a centralizer element
/// is a stabilizer iff it commutes with every encoded X and Z.
///
/// Fails with [`Error::NotInCentralizer`] when `v` has a nonzero syndrome,
/// where the test is undefined.
pub fn is_stabilizer_logicals(ctx: &ClassifierContext, v: &BitVector) -> Result<bool> {
    if !ctx.code.syndrome_raw(v).is_zero() {
        return Err(Error::NotInCentralizer);
    }
    Ok(ctx.logicals_swapped.iter().all(|l| !v.dot(l)))
}

/// Stabilizer membership via rank: `v` is a stabilizer element iff appending
/// it to the PCM does not raise the rank.
#[must_use]
pub fn is_stabilizer_rank(code: &StabilizerCode, v: &BitVector) -> bool {
    code.pcm().is_in_rowspace(v)
}

/// Stabilizer membership by exhaustive enumeration of the group.
///
/// Fails when `N - k` exceeds the enumeration cap.
pub fn is_stabilizer_bruteforce(code: &StabilizerCode, v: &BitVector) -> Result<bool> {
    Ok(code.enumerate_stabilizer()?.any(|s| s == *v))
}

/// Membership decision for agreement checks: the encoded-Pauli test is
/// extended to non-centralizer vectors (which are never stabilizers) so all
/// four methods answer on every input.
fn membership(ctx: &ClassifierContext, v: &BitVector, method: MethodKind) -> Result<bool> {
    match method {
        MethodKind::KernelCoset => Ok(is_stabilizer_kernel(ctx, v)),
        MethodKind::EncodedPauli => match is_stabilizer_logicals(ctx, v) {
            Ok(b) => Ok(b),
            Err(Error::NotInCentralizer) => Ok(false),
            Err(e) => Err(e),
        },
        MethodKind::AugmentedRank => Ok(is_stabilizer_rank(&ctx.code, v)),
        MethodKind::BruteForce => is_stabilizer_bruteforce(&ctx.code, v),
    }
}

/// Classifies a decoded trial.
///
/// Syndrome mismatch is E1; an exact match is Success; otherwise the
/// residual `e (+) ehat` has zero syndrome relative to the code and the
/// chosen membership test splits degenerate (E3) from logical (E2) misses.
/// Method errors (such as an exceeded enumeration cap) propagate.
///
/// # Panics
///
/// Panics if the operators disagree with the code on qubit count.
pub fn classify(
    ctx: &ClassifierContext,
    e: &PauliError,
    ehat: &PauliError,
    method: MethodKind,
) -> Result<ErrorClass> {
    if ctx.code.syndrome(e) != ctx.code.syndrome(ehat) {
        return Ok(ErrorClass::DifferentSyndrome);
    }
    if e == ehat {
        return Ok(ErrorClass::Success);
    }
    let residual = e.symplectic().xor(ehat.symplectic());
    if membership(ctx, &residual, method)? {
        Ok(ErrorClass::Degenerate)
    } else {
        Ok(ErrorClass::IdenticalSyndrome)
    }
}

/// One cross-method comparison that came out unequal.
#[derive(Clone, Debug)]
pub struct Disagreement {
    /// Which randomized pair, counting from 0.
    pub pair: usize,
    /// The error and the estimate of the pair.
    pub e: PauliError,
    pub ehat: PauliError,
    /// Classes in [`MethodKind::ALL`] order.
    pub classes: [ErrorClass; 4],
}

/// Result of [`methods_agree`].
#[derive(Clone, Debug)]
pub struct AgreementReport {
    /// Per-pair classifications, methods in [`MethodKind::ALL`] order.
    pub per_pair: Vec<[ErrorClass; 4]>,
    /// Pairs on which the methods differed; empty for consistent methods.
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    /// True when every pair was classified identically by all methods.
    #[must_use]
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Classifies `trials` randomized `(e, ehat)` pairs with all four membership
/// methods and reports any disagreement. Pairs cycle through four shapes:
/// stabilizer-shifted estimates (expected E3), logical-shifted ones
/// (expected E2), independent random estimates (usually E1), and exact
/// matches (Success).
///
/// Requires brute-force enumeration to be feasible for the code.
pub fn methods_agree(
    ctx: &ClassifierContext,
    trials: usize,
    seed: u64,
) -> Result<AgreementReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n2 = 2 * ctx.code.n_qubits();
    let mut report = AgreementReport {
        per_pair: Vec::with_capacity(trials),
        disagreements: Vec::new(),
    };

    let random_vector = |rng: &mut ChaCha8Rng, len: usize| {
        let mut v = BitVector::zeros(len);
        for i in 0..len {
            if rng.random::<bool>() {
                v.set(i, true);
            }
        }
        v
    };

    for pair in 0..trials {
        let e = PauliError::from_symplectic(random_vector(&mut rng, n2))?;
        let ehat = match pair % 4 {
            0 => {
                let shift = random_stabilizer_element(ctx.code(), &mut rng);
                PauliError::from_symplectic(e.symplectic().xor(&shift))?
            }
            1 => {
                let mut v = e.symplectic().xor(&random_stabilizer_element(ctx.code(), &mut rng));
                v.xor_assign(&random_logical_combination(ctx.logicals(), &mut rng));
                PauliError::from_symplectic(v)?
            }
            2 => PauliError::from_symplectic(random_vector(&mut rng, n2))?,
            _ => e.clone(),
        };

        let mut classes = [ErrorClass::Success; 4];
        for (slot, method) in MethodKind::ALL.into_iter().enumerate() {
            classes[slot] = classify(ctx, &e, &ehat, method)?;
        }
        if classes.iter().any(|c| *c != classes[0]) {
            report.disagreements.push(Disagreement {
                pair,
                e: e.clone(),
                ehat: ehat.clone(),
                classes,
            });
        }
        report.per_pair.push(classes);
    }
    Ok(report)
}

/// A uniformly random GF(2) combination of the PCM rows.
pub fn random_stabilizer_element<R: Rng>(code: &StabilizerCode, rng: &mut R) -> BitVector {
    let mut v = BitVector::zeros(code.pcm().ncols());
    for i in 0..code.pcm().nrows() {
        if rng.random::<bool>() {
            v.xor_assign(code.pcm().row(i));
        }
    }
    v
}

/// A uniformly random nonzero combination of the encoded Pauli operators.
/// Returns the zero vector when the set is empty (`k = 0`).
pub fn random_logical_combination<R: Rng>(
    logicals: &LogicalOperatorSet,
    rng: &mut R,
) -> BitVector {
    let ops: Vec<&PauliError> = logicals.iter().collect();
    if ops.is_empty() {
        return BitVector::zeros(0);
    }
    let len = ops[0].symplectic().len();
    loop {
        let mut v = BitVector::zeros(len);
        let mut nonzero_mask = false;
        for op in &ops {
            if rng.random::<bool>() {
                v.xor_assign(op.symplectic());
                nonzero_mask = true;
            }
        }
        if nonzero_mask {
            return v;
        }
    }
}
