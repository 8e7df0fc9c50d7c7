//! Syndrome belief-propagation decoding.
//!
//! CSS decoding splits into two classical problems: the X-type checks
//! constrain the Z component of the error and the Z-type checks the X
//! component. Each side runs a sum-product decoder over the Tanner graph
//! of its binary PCM, with the syndrome folded into the check update as a
//! sign and a uniform per-bit prior from the depolarizing channel. Check
//! nodes update serially within an iteration (a layered schedule), each
//! seeing the messages already refreshed earlier in the same pass.
//!
//! The decoder is honest about convergence: `converged` is true exactly
//! when the hard-decision estimate reproduces the target syndrome within
//! the iteration budget.

use serde::{Deserialize, Serialize};

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliError;
use crate::stabilizer::CssCode;
use crate::{Error, Result};

/// Depolarizing channel strength `p`: each qubit suffers X, Y, or Z with
/// probability `p/3` each.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelPrior {
    p: f64,
}

impl ChannelPrior {
    /// Accepts `0 <= p < 3/4`. Beyond 3/4 the channel is no longer a
    /// probability distribution over the four Paulis.
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..0.75).contains(&p) {
            return Err(Error::BadErrorProbability { p });
        }
        Ok(Self { p })
    }

    /// The full depolarizing probability.
    #[must_use]
    pub fn p(self) -> f64 {
        self.p
    }

    /// Marginal flip probability of each binary error component. A qubit's
    /// X component is set by X or Y errors, so the marginal is `2p/3`; the
    /// Z component likewise.
    #[must_use]
    pub fn component_marginal(self) -> f64 {
        2.0 * self.p / 3.0
    }
}

/// Iteration budget and message clipping for the sum-product decoder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    /// Maximum number of flooding iterations.
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Messages and extrinsic LLRs are clamped to `[-clip, clip]`.
    #[serde(default = "default_clip")]
    pub clip: f64,
}

fn default_max_iterations() -> usize {
    100
}

fn default_clip() -> f64 {
    25.0
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self {
            max_iterations: default_max_iterations(),
            clip: default_clip(),
        }
    }
}

/// Result of one binary sum-product run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaOutcome {
    /// Hard-decision estimate after the last iteration.
    pub estimate: BitVector,
    /// True exactly when the estimate reproduces the target syndrome.
    pub converged: bool,
    /// Iterations spent; 0 when the all-zero initial decision already
    /// matches, `max_iterations` on non-convergence.
    pub iterations: usize,
}

/// Layered sum-product decoding of `hc * e^T = target` over GF(2).
///
/// `prior` is the per-bit flip probability, required in `(0, 1/2]`. Checks
/// with a set target bit negate their messages, steering the estimate onto
/// the requested syndrome. Within an iteration the checks update one after
/// another in row order, each reading variable messages that already
/// include the passes made earlier in the iteration. Check messages use
/// prefix/suffix products of `tanh(m/2)`, so degree-1 checks and zero
/// messages need no special cases.
pub fn spa_binary(
    hc: &BitMatrix,
    target: &BitVector,
    prior: f64,
    cfg: &DecoderConfig,
) -> Result<SpaOutcome> {
    if target.len() != hc.nrows() {
        return Err(Error::DecoderParameter(format!(
            "target syndrome has {} bits, PCM has {} rows",
            target.len(),
            hc.nrows()
        )));
    }
    if !(prior > 0.0 && prior <= 0.5) {
        return Err(Error::DecoderParameter(format!(
            "bit prior {prior} outside (0, 0.5]"
        )));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::DecoderParameter(
            "max_iterations must be at least 1".into(),
        ));
    }
    if !(cfg.clip.is_finite() && cfg.clip > 0.0) {
        return Err(Error::DecoderParameter(format!(
            "clip {} must be finite and positive",
            cfg.clip
        )));
    }

    let n = hc.ncols();
    let check_neighbors: Vec<Vec<usize>> =
        (0..hc.nrows()).map(|c| hc.row(c).iter_ones().collect()).collect();

    let l0 = ((1.0 - prior) / prior).ln();
    let clamp = |x: f64| x.clamp(-cfg.clip, cfg.clip);
    let mut check_to_var: Vec<Vec<f64>> =
        check_neighbors.iter().map(|vs| vec![0.0; vs.len()]).collect();
    // Per-variable sum of incoming check messages; the extrinsic message to
    // an individual check is recovered by subtracting that check's entry.
    let mut totals = vec![0.0f64; n];

    // Priors are at most even odds for a flip, so the initial hard decision
    // is the zero vector; when that already satisfies the target no
    // iterations are needed.
    let mut estimate = BitVector::zeros(n);
    if hc.mul_vec(&estimate) == *target {
        return Ok(SpaOutcome {
            estimate,
            converged: true,
            iterations: 0,
        });
    }

    for iteration in 1..=cfg.max_iterations {
        for (c, vars) in check_neighbors.iter().enumerate() {
            let d = vars.len();
            let t: Vec<f64> = (0..d)
                .map(|i| {
                    let m = clamp(l0 + totals[vars[i]] - check_to_var[c][i]);
                    (m / 2.0).tanh()
                })
                .collect();
            let mut prefix = vec![1.0; d + 1];
            for i in 0..d {
                prefix[i + 1] = prefix[i] * t[i];
            }
            let mut suffix = 1.0;
            let sign = if target.get(c) { -1.0 } else { 1.0 };
            for i in (0..d).rev() {
                let ext = (prefix[i] * suffix).clamp(-(1.0 - 1e-15), 1.0 - 1e-15);
                let msg = clamp(sign * 2.0 * ext.atanh());
                totals[vars[i]] += msg - check_to_var[c][i];
                check_to_var[c][i] = msg;
                suffix *= t[i];
            }
        }

        // Rebuild the sums once per iteration so incremental float error
        // cannot accumulate across hundreds of passes.
        for total in &mut totals {
            *total = 0.0;
        }
        for (c, vars) in check_neighbors.iter().enumerate() {
            for (i, &v) in vars.iter().enumerate() {
                totals[v] += check_to_var[c][i];
            }
        }
        for v in 0..n {
            estimate.set(v, l0 + totals[v] < 0.0);
        }

        if hc.mul_vec(&estimate) == *target {
            return Ok(SpaOutcome {
                estimate,
                converged: true,
                iterations: iteration,
            });
        }
    }

    Ok(SpaOutcome {
        estimate,
        converged: false,
        iterations: cfg.max_iterations,
    })
}

/// A decoded CSS syndrome: the Pauli estimate and per-component convergence
/// data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    /// Estimated Pauli error.
    pub estimate: PauliError,
    /// True when both components reproduced their syndrome halves.
    pub converged: bool,
    /// Iterations of the X-component run (driven by the Z-type checks).
    pub iterations_x: usize,
    /// Iterations of the Z-component run (driven by the X-type checks).
    pub iterations_z: usize,
}

impl DecodeResult {
    /// The larger of the two component iteration counts.
    #[must_use]
    pub fn iterations_used(&self) -> usize {
        self.iterations_x.max(self.iterations_z)
    }
}

/// Decodes a CSS syndrome with two independent sum-product runs.
///
/// The syndrome lays out the X-type check bits first (they constrain the
/// error's Z component), then the Z-type check bits (constraining the X
/// component), matching [`CssCode::to_stabilizer`]'s row order. Both runs
/// use the component marginal `2p/3` as bit prior.
pub fn decode_css(
    css: &CssCode,
    syndrome: &BitVector,
    prior: ChannelPrior,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    let rx = css.hx().nrows();
    let rz = css.hz().nrows();
    if syndrome.len() != rx + rz {
        return Err(Error::DecoderParameter(format!(
            "syndrome has {} bits, code measures {rx} X-type and {rz} Z-type checks",
            syndrome.len()
        )));
    }
    let mut wx = BitVector::zeros(rx);
    for i in 0..rx {
        wx.set(i, syndrome.get(i));
    }
    let mut wz = BitVector::zeros(rz);
    for i in 0..rz {
        wz.set(i, syndrome.get(rx + i));
    }

    let bit_prior = prior.component_marginal();
    let z_run = spa_binary(css.hx(), &wx, bit_prior, cfg)?;
    let x_run = spa_binary(css.hz(), &wz, bit_prior, cfg)?;

    let n = css.n_qubits();
    let mut symplectic = BitVector::zeros(2 * n);
    for i in x_run.estimate.iter_ones() {
        symplectic.set(i, true);
    }
    for i in z_run.estimate.iter_ones() {
        symplectic.set(n + i, true);
    }
    Ok(DecodeResult {
        estimate: PauliError::from_symplectic(symplectic)?,
        converged: x_run.converged && z_run.converged,
        iterations_x: x_run.iterations,
        iterations_z: z_run.iterations,
    })
}
