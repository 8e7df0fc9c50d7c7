//! Monte Carlo estimation of end-to-end error rates.
//!
//! Each trial samples a depolarizing error, measures its syndrome, decodes,
//! and classifies the outcome. A point runs trials until it has seen a
//! target number of errors (E1 + E2 + E3) or exhausts its trial budget; a
//! sweep runs one point per physical error rate.
//!
//! Results are reproducible by construction. Every trial draws from its own
//! counter-based generator keyed by (master seed, point index, trial
//! index), and points consume trial outcomes in index order regardless of
//! how many worker threads ran them. Two runs with the same configuration
//! produce byte-identical reports, whatever the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{classify, ClassifierContext, ErrorClass, MethodKind};
use crate::codes::CodeSpec;
use crate::decoder::{decode_css, ChannelPrior, DecoderConfig};
use crate::gf2::BitVector;
use crate::pauli::PauliError;
use crate::stabilizer::CssCode;
use crate::{Error, Result};

/// Trials dispatched to the thread pool per batch. Batches are consumed in
/// trial order, so the value affects scheduling only, never results.
const TRIAL_CHUNK: u64 = 256;

/// Samples a depolarizing error: each qubit independently suffers X, Y, or
/// Z with probability `p/3` each.
///
/// # Panics
///
/// Panics if `p` is outside `[0, 3/4)`.
pub fn sample_depolarizing<R: Rng>(n_qubits: usize, p: f64, rng: &mut R) -> PauliError {
    assert!(
        (0.0..0.75).contains(&p),
        "depolarizing probability {p} outside [0, 0.75)"
    );
    let mut v = BitVector::zeros(2 * n_qubits);
    for q in 0..n_qubits {
        let u: f64 = rng.random();
        if u < p / 3.0 {
            v.set(q, true);
        } else if u < 2.0 * p / 3.0 {
            v.set(q, true);
            v.set(n_qubits + q, true);
        } else if u < p {
            v.set(n_qubits + q, true);
        }
    }
    PauliError::from_symplectic(v).expect("even length by construction")
}

/// The generator for one trial, derived from the master seed, the point
/// index, and the trial index. Trials are independent streams, so any
/// subset can run on any thread in any order.
#[must_use]
pub fn trial_rng(master_seed: u64, p_index: u64, trial_index: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&p_index.to_le_bytes());
    seed[16..24].copy_from_slice(&trial_index.to_le_bytes());
    seed[24..32].copy_from_slice(b"deptrial");
    ChaCha8Rng::from_seed(seed)
}

/// One sampled, decoded, and classified error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial_index: u64,
    pub class: ErrorClass,
    pub error_weight: usize,
    pub estimate_weight: usize,
    /// Larger of the two component iteration counts.
    pub iterations_used: usize,
}

/// Runs a single trial: sample, measure, decode, classify.
///
/// `ctx` must be built from `css.to_stabilizer()` so the syndrome layout
/// the classifier measures matches what the decoder expects;
/// [`run_point`] checks this once per point.
pub fn run_trial<R: Rng>(
    css: &CssCode,
    ctx: &ClassifierContext,
    prior: ChannelPrior,
    cfg: &DecoderConfig,
    method: MethodKind,
    trial_index: u64,
    rng: &mut R,
) -> Result<TrialOutcome> {
    let e = sample_depolarizing(css.n_qubits(), prior.p(), rng);
    let w = ctx.code().syndrome(&e);
    let res = decode_css(css, &w, prior, cfg)?;
    let class = classify(ctx, &e, &res.estimate, method)?;
    Ok(TrialOutcome {
        trial_index,
        class,
        error_weight: e.weight(),
        estimate_weight: res.estimate.weight(),
        iterations_used: res.iterations_used(),
    })
}

/// Full description of a sweep: the code, the physical rates to scan, the
/// stopping rule, seeding, and the classification method.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimConfig {
    pub code: CodeSpec,
    pub p_values: Vec<f64>,
    /// Stop a point once this many errors (E1 + E2 + E3) are observed.
    #[serde(default = "default_target_errors")]
    pub target_errors: u64,
    /// Hard trial budget per point; points that hit it before reaching the
    /// error target are marked truncated.
    pub max_trials: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_method")]
    pub method: MethodKind,
    #[serde(default)]
    pub decoder: DecoderConfig,
}

fn default_method() -> MethodKind {
    MethodKind::KernelCoset
}

fn default_target_errors() -> u64 {
    1000
}

impl SimConfig {
    /// Checks the parameter domains shared by every point.
    pub fn validate(&self) -> Result<()> {
        if self.target_errors == 0 {
            return Err(Error::SimParameter(
                "target_errors must be at least 1".into(),
            ));
        }
        if self.max_trials < self.target_errors {
            return Err(Error::SimParameter(format!(
                "max_trials {} is below target_errors {}",
                self.max_trials, self.target_errors
            )));
        }
        for &p in &self.p_values {
            if !(p > 0.0 && p < 0.75) {
                return Err(Error::SimParameter(format!(
                    "physical error rate {p} outside (0, 0.75)"
                )));
            }
        }
        if self.decoder.max_iterations == 0 {
            return Err(Error::SimParameter(
                "decoder.max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Aggregated results of one simulated point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimStats {
    pub p: f64,
    pub trials: u64,
    pub e1: u64,
    pub e2: u64,
    pub e3: u64,
    pub successes: u64,
    /// Fractions of observed errors per class; all zero when no errors
    /// were observed.
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    /// Physical error rate estimate: every mismatch counts.
    pub per: f64,
    /// Logical error rate estimate: degenerate misses count as successes.
    pub ler: f64,
    /// True when the point exhausted `max_trials` before reaching the
    /// error target.
    pub truncated: bool,
}

impl SimStats {
    fn from_counts(p: f64, trials: u64, e1: u64, e2: u64, e3: u64, truncated: bool) -> Self {
        let errors = e1 + e2 + e3;
        let ratio = |num: u64, den: u64| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        Self {
            p,
            trials,
            e1,
            e2,
            e3,
            successes: trials - errors,
            r1: ratio(e1, errors),
            r2: ratio(e2, errors),
            r3: ratio(e3, errors),
            per: ratio(errors, trials),
            ler: ratio(e1 + e2, trials),
            truncated,
        }
    }

    /// Total observed errors, `e1 + e2 + e3`.
    #[must_use]
    pub fn errors(&self) -> u64 {
        self.e1 + self.e2 + self.e3
    }
}

/// Simulates one physical error rate (`config.p_values[p_index]`).
///
/// Trials run in parallel in fixed-size batches but are consumed strictly
/// in index order, stopping at the exact trial where the error target is
/// met. The trial count and every statistic are therefore independent of
/// the worker count.
pub fn run_point(
    css: &CssCode,
    ctx: &ClassifierContext,
    config: &SimConfig,
    p_index: usize,
) -> Result<SimStats> {
    config.validate()?;
    let Some(&p) = config.p_values.get(p_index) else {
        return Err(Error::SimParameter(format!(
            "point index {p_index} out of range for {} p_values",
            config.p_values.len()
        )));
    };
    let expected = css.to_stabilizer()?;
    if ctx.code().pcm() != expected.pcm() {
        return Err(Error::SimParameter(
            "classifier context was not built from this code's PCM".into(),
        ));
    }
    let prior = ChannelPrior::new(p)?;

    let (mut trials, mut e1, mut e2, mut e3) = (0u64, 0u64, 0u64, 0u64);
    let mut next = 0u64;
    'points: while next < config.max_trials {
        let hi = (next + TRIAL_CHUNK).min(config.max_trials);
        let batch: Result<Vec<TrialOutcome>> = (next..hi)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(config.master_seed, p_index as u64, t);
                run_trial(css, ctx, prior, &config.decoder, config.method, t, &mut rng)
            })
            .collect();
        for outcome in batch? {
            trials += 1;
            match outcome.class {
                ErrorClass::Success => {}
                ErrorClass::DifferentSyndrome => e1 += 1,
                ErrorClass::IdenticalSyndrome => e2 += 1,
                ErrorClass::Degenerate => e3 += 1,
            }
            if e1 + e2 + e3 == config.target_errors {
                break 'points;
            }
        }
        next = hi;
    }
    let truncated = e1 + e2 + e3 < config.target_errors;
    Ok(SimStats::from_counts(p, trials, e1, e2, e3, truncated))
}

/// Runs every point of the sweep on the configured code.
///
/// The code must have CSS structure; the decoder needs the X/Z check
/// split. An empty `p_values` list yields an empty result.
pub fn sweep(config: &SimConfig) -> Result<Vec<SimStats>> {
    config.validate()?;
    let loaded = config.code.load()?;
    let Some(css) = loaded.css else {
        return Err(Error::SimParameter(format!(
            "code {} has no CSS structure; the decoder needs separate X/Z checks",
            loaded.name
        )));
    };
    let ctx = ClassifierContext::new(css.to_stabilizer()?)?;
    (0..config.p_values.len())
        .map(|i| run_point(&css, &ctx, config, i))
        .collect()
}

/// Renders sweep results as CSV with a `#`-prefixed metadata header. The
/// header captures everything needed to reproduce the run; nothing in the
/// output varies between identical runs.
#[must_use]
pub fn stats_to_csv(config: &SimConfig, points: &[SimStats]) -> String {
    let mut out = String::new();
    out.push_str("# stabkit sweep schema 1\n");
    out.push_str(&format!("# tool: stabkit {}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("# code: {}\n", config.code));
    out.push_str(&format!("# method: {}\n", config.method));
    out.push_str(&format!("# master_seed: {}\n", config.master_seed));
    out.push_str(&format!("# target_errors: {}\n", config.target_errors));
    out.push_str(&format!("# max_trials: {}\n", config.max_trials));
    out.push_str(&format!(
        "# decoder: max_iterations={} clip={}\n",
        config.decoder.max_iterations, config.decoder.clip
    ));
    out.push_str("p,trials,e1,e2,e3,successes,r1,r2,r3,per,ler,truncated\n");
    for s in points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            s.p, s.trials, s.e1, s.e2, s.e3, s.successes, s.r1, s.r2, s.r3, s.per, s.ler,
            s.truncated
        ));
    }
    out
}

/// Renders sweep results as JSON, embedding the configuration.
pub fn stats_to_json(config: &SimConfig, points: &[SimStats]) -> Result<String> {
    #[derive(Serialize)]
    struct Report<'a> {
        schema: u32,
        config: &'a SimConfig,
        points: &'a [SimStats],
    }
    serde_json::to_string_pretty(&Report {
        schema: 1,
        config,
        points,
    })
    .map_err(|e| Error::Parse(format!("could not serialize sweep report: {e}")))
}
