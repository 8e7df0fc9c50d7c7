//! Command-line front end: validate codes, emit certificates and logical
//! operators, classify traces, decode syndromes, and run error-rate sweeps.
//!
//! Exit codes: 0 on success, 1 on domain failures (invalid codes,
//! classification refusals), 2 on usage, I/O, and parse errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stabkit::classifier::{classify, ClassifierContext, ErrorClass, MethodKind};
use stabkit::codes::CodeSpec;
use stabkit::decoder::{decode_css, ChannelPrior, DecoderConfig};
use stabkit::gf2::{BitMatrix, BitVector};
use stabkit::pauli::PauliError;
use stabkit::sim::{stats_to_csv, stats_to_json, sweep, SimConfig};
use stabkit::stabilizer::{
    assemble_css_kernel, classical_generator_from_pcm, logical_operators, KernelGenerator,
};
use stabkit::{Error, Result};

#[derive(Parser)]
#[command(
    name = "stabkit",
    version,
    about = "Stabilizer-code toolkit: codes, certificates, decoding, and error-rate simulation"
)]
struct Cli {
    /// Worker threads for simulation commands (0 picks automatically).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CodeArgs {
    /// Built-in code: steane, shor9, or bicycle:n_c,w,seed.
    #[arg(long)]
    builtin: Option<String>,
    /// Path to a .json or .alist code file.
    #[arg(long)]
    code: Option<PathBuf>,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec> {
        match (&self.builtin, &self.code) {
            (Some(b), None) => CodeSpec::parse_builtin(b),
            (None, Some(p)) => Ok(CodeSpec::File {
                path: p.display().to_string(),
            }),
            _ => unreachable!("clap enforces exactly one code source"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelMode {
    /// Nullspace of the full symplectic PCM.
    Nullspace,
    /// Block assembly from the classical generators of a CSS pair.
    CssGenerators,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DecodeTarget {
    /// Measured syndrome as a bit string, X-type check bits first.
    #[arg(long)]
    syndrome: Option<String>,
    /// Channel error as a Pauli string; its syndrome is decoded.
    #[arg(long)]
    error: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code and list every violation.
    Validate {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Compute the stabilizer-membership certificate matrix.
    Kernel {
        #[command(flatten)]
        code: CodeArgs,
        /// Construction route; both are timed whenever the code is CSS.
        #[arg(long, value_enum, default_value_t = KernelMode::Nullspace)]
        mode: KernelMode,
        /// Write the certificate as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the encoded Pauli operators.
    Logicals {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Classify error/estimate pairs from a trace file.
    Classify {
        #[command(flatten)]
        code: CodeArgs,
        /// Trace file: one "error<TAB>estimate" Pauli pair per line.
        #[arg(long)]
        trace: PathBuf,
        /// Stabilizer-membership method: kernel_coset, encoded_pauli,
        /// augmented_rank, or brute_force.
        #[arg(long, default_value = "kernel_coset")]
        method: String,
    },
    /// Decode one syndrome on a CSS code.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Depolarizing probability the decoder prior is derived from.
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        target: DecodeTarget,
        /// Maximum belief-propagation iterations.
        #[arg(long, default_value_t = 100)]
        max_iterations: usize,
    },
    /// Estimate end-to-end error rates at one physical rate.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Depolarizing probability.
        #[arg(long)]
        p: f64,
        /// Stop after this many end-to-end errors.
        #[arg(long, default_value_t = 1000)]
        target_errors: u64,
        /// Hard trial cap; hitting it marks the point truncated.
        #[arg(long, default_value_t = 1_000_000)]
        max_trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stabilizer-membership method used by classification.
        #[arg(long, default_value = "kernel_coset")]
        method: String,
    },
    /// Run a configured sweep and emit CSV (and optionally JSON).
    Sweep {
        /// JSON file matching the sweep configuration schema.
        #[arg(long)]
        config: PathBuf,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the full JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // The global pool can only be set once; a failure here means it
        // was already initialized, which is fine.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

/// Usage, I/O, and parse problems exit 2; everything else that fails is a
/// domain failure and exits 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io { .. }
        | Error::SimParameter(_)
        | Error::DecoderParameter(_)
        | Error::BadErrorProbability { .. }
        | Error::BadCodeParameters(_)
        | Error::InvalidPauliChar { .. } => 2,
        _ => 1,
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Validate { code } => cmd_validate(&code.spec()?),
        Command::Kernel { code, mode, out } => cmd_kernel(&code.spec()?, mode, out.as_deref()),
        Command::Logicals { code } => cmd_logicals(&code.spec()?),
        Command::Classify {
            code,
            trace,
            method,
        } => cmd_classify(&code.spec()?, &trace, &method),
        Command::Decode {
            code,
            p,
            target,
            max_iterations,
        } => cmd_decode(&code.spec()?, p, &target, max_iterations),
        Command::Simulate {
            code,
            p,
            target_errors,
            max_trials,
            seed,
            method,
        } => cmd_simulate(&code.spec()?, p, target_errors, max_trials, seed, &method),
        Command::Sweep {
            config,
            out,
            json,
            seed,
        } => cmd_sweep(&config, out.as_deref(), json.as_deref(), seed),
    }
}

fn cmd_validate(spec: &CodeSpec) -> Result<i32> {
    let loaded = spec.load_unvalidated()?;
    let code = &loaded.stabilizer;
    println!("code: {}", loaded.name);
    println!(
        "format: {}",
        if loaded.css.is_some() { "css" } else { "stabilizer" }
    );
    println!("n: {}", code.n_qubits());
    println!("checks: {}", code.pcm().nrows());
    let violations = code.validate();
    if violations.is_empty() {
        println!("k: {}", code.k());
        println!("PASS");
        Ok(0)
    } else {
        for v in &violations {
            println!("violation: {v}");
        }
        println!("FAIL");
        Ok(1)
    }
}

fn matrix_rows(m: &BitMatrix) -> Vec<Vec<u8>> {
    m.row_slice().iter().map(BitVector::to_bits).collect()
}

fn cmd_kernel(spec: &CodeSpec, mode: KernelMode, out: Option<&Path>) -> Result<i32> {
    let loaded = spec.load()?;
    let code = &loaded.stabilizer;

    let t0 = Instant::now();
    let nullspace = KernelGenerator::from_nullspace(code);
    let nullspace_time = t0.elapsed();

    let css_route = match &loaded.css {
        Some(css) => {
            let gx = classical_generator_from_pcm(css.hx());
            let gz = classical_generator_from_pcm(css.hz());
            let t1 = Instant::now();
            let assembled = assemble_css_kernel(&gx, &gz);
            let assembly_time = t1.elapsed();
            // The validating constructor repeats the assembly; only the
            // raw block copy above is the timed shortcut.
            let kernel = KernelGenerator::from_css_generators(css, &gx, &gz)?;
            debug_assert_eq!(kernel.matrix(), &assembled);
            Some((kernel, assembly_time))
        }
        None => None,
    };

    let chosen = match (mode, &css_route) {
        (KernelMode::Nullspace, _) => &nullspace,
        (KernelMode::CssGenerators, Some((kernel, _))) => kernel,
        (KernelMode::CssGenerators, None) => {
            return Err(Error::InvalidCode(
                "css-generators mode needs a CSS code; this one has a single symplectic PCM"
                    .into(),
            ));
        }
    };

    println!("code: {}", loaded.name);
    println!(
        "mode: {}",
        match mode {
            KernelMode::Nullspace => "nullspace",
            KernelMode::CssGenerators => "css-generators",
        }
    );
    let g = chosen.matrix();
    println!("kernel: {} x {}", g.nrows(), g.ncols());
    println!("rank: {}", g.rank());
    println!(
        "nullspace time: {:.1} us",
        nullspace_time.as_secs_f64() * 1e6
    );
    if let Some((kernel, assembly_time)) = &css_route {
        println!(
            "css assembly time: {:.1} us",
            assembly_time.as_secs_f64() * 1e6
        );
        println!(
            "routes agree on rowspace: {}",
            kernel.matrix().same_rowspace(nullspace.matrix())
        );
    }
    if let Some(path) = out {
        let doc = serde_json::json!({
            "name": loaded.name,
            "rows": g.nrows(),
            "cols": g.ncols(),
            "matrix": matrix_rows(g),
        });
        write_text(path, &format!("{doc:#}\n"))?;
    }
    Ok(0)
}

fn cmd_logicals(spec: &CodeSpec) -> Result<i32> {
    let loaded = spec.load()?;
    println!("code: {}", loaded.name);
    match logical_operators(&loaded.stabilizer) {
        Ok(set) => {
            println!("k: {}", set.k());
            for (i, x) in set.xbars().iter().enumerate() {
                println!("X{i}: {x}");
            }
            for (i, z) in set.zbars().iter().enumerate() {
                println!("Z{i}: {z}");
            }
            Ok(0)
        }
        Err(Error::NoLogicalQubits) => {
            println!("k: 0");
            println!("no logical operators");
            Ok(0)
        }
        Err(e) => Err(e),
    }
}

fn cmd_classify(spec: &CodeSpec, trace: &Path, method: &str) -> Result<i32> {
    let method: MethodKind = method.parse()?;
    let loaded = spec.load()?;
    let ctx = ClassifierContext::new(loaded.stabilizer)?;
    let text = std::fs::read_to_string(trace).map_err(|source| Error::Io {
        path: trace.display().to_string(),
        source,
    })?;

    let mut counts = [0u64; 4];
    for (index, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = index + 1;
        let mut fields = line.split('\t');
        let (Some(e_str), Some(ehat_str), None) =
            (fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::Parse(format!(
                "trace line {lineno}: expected two tab-separated Pauli strings"
            )));
        };
        let parse = |what: &str, s: &str| -> Result<PauliError> {
            let p: PauliError = s
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("trace line {lineno}: {what}: {e}")))?;
            if p.n_qubits() != ctx.code().n_qubits() {
                return Err(Error::Parse(format!(
                    "trace line {lineno}: {what} acts on {} qubits, code has {}",
                    p.n_qubits(),
                    ctx.code().n_qubits()
                )));
            }
            Ok(p)
        };
        let e = parse("error", e_str)?;
        let ehat = parse("estimate", ehat_str)?;
        let class = classify(&ctx, &e, &ehat, method)?;
        println!("{}", class.label());
        counts[match class {
            ErrorClass::Success => 0,
            ErrorClass::DifferentSyndrome => 1,
            ErrorClass::IdenticalSyndrome => 2,
            ErrorClass::Degenerate => 3,
        }] += 1;
    }
    println!(
        "summary: SUCCESS={} E1={} E2={} E3={} total={}",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts.iter().sum::<u64>()
    );
    Ok(0)
}

fn cmd_decode(
    spec: &CodeSpec,
    p: f64,
    target: &DecodeTarget,
    max_iterations: usize,
) -> Result<i32> {
    let loaded = spec.load()?;
    let Some(css) = &loaded.css else {
        return Err(Error::InvalidCode(
            "decoding needs a CSS code; this one has a single symplectic PCM".into(),
        ));
    };
    let prior = ChannelPrior::new(p)?;
    let cfg = DecoderConfig {
        max_iterations,
        ..DecoderConfig::default()
    };

    let syndrome = match (&target.syndrome, &target.error) {
        (Some(bits), None) => {
            let mut v = BitVector::zeros(bits.trim().len());
            for (i, c) in bits.trim().chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => v.set(i, true),
                    other => {
                        return Err(Error::Parse(format!(
                            "syndrome position {i}: expected 0 or 1, found {other:?}"
                        )));
                    }
                }
            }
            v
        }
        (None, Some(pauli)) => {
            let e: PauliError = pauli.trim().parse()?;
            if e.n_qubits() != loaded.stabilizer.n_qubits() {
                return Err(Error::Parse(format!(
                    "error acts on {} qubits, code has {}",
                    e.n_qubits(),
                    loaded.stabilizer.n_qubits()
                )));
            }
            println!("error: {e}");
            loaded.stabilizer.syndrome(&e)
        }
        _ => unreachable!("clap enforces exactly one decode target"),
    };

    let res = decode_css(css, &syndrome, prior, &cfg)?;
    println!("syndrome: {syndrome}");
    println!("estimate: {}", res.estimate);
    println!("converged: {}", res.converged);
    println!("iterations_x: {}", res.iterations_x);
    println!("iterations_z: {}", res.iterations_z);
    Ok(0)
}

fn cmd_simulate(
    spec: &CodeSpec,
    p: f64,
    target_errors: u64,
    max_trials: u64,
    seed: u64,
    method: &str,
) -> Result<i32> {
    let config = SimConfig {
        code: spec.clone(),
        p_values: vec![p],
        target_errors,
        max_trials,
        master_seed: seed,
        method: method.parse()?,
        decoder: DecoderConfig::default(),
    };
    let points = sweep(&config)?;
    print!("{}", stats_to_csv(&config, &points));
    Ok(0)
}

fn cmd_sweep(
    config_path: &Path,
    out: Option<&Path>,
    json: Option<&Path>,
    seed: Option<u64>,
) -> Result<i32> {
    let text = std::fs::read_to_string(config_path).map_err(|source| Error::Io {
        path: config_path.display().to_string(),
        source,
    })?;
    let mut config: SimConfig =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?;
    if let Some(seed) = seed {
        config.master_seed = seed;
    }
    let points = sweep(&config)?;
    let csv = stats_to_csv(&config, &points);
    match out {
        Some(path) => write_text(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = json {
        write_text(path, &stats_to_json(&config, &points)?)?;
    }
    Ok(0)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
