use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use transbound::certify::{
    build_certificate, exceeds_hasse_weil, hasse_weil_upper, prime_size_threshold,
    CertificateMeta, Verdict, DEFAULT_MARGIN, DEFAULT_ORBIT_COUNT,
};
use transbound::frobcount::{
    read_checkpoint, write_histogram, CheckpointHeader, CheckpointWriter, ScanError, ScanOptions,
    ScanProblem, Scanner, DEFAULT_CHUNK_SIZE,
};
use transbound::numfield::format_rational;
use transbound::permcomb::{genus_ck, GenusMode, GenusReport};
use transbound::specfile::{load_spec, Severity, SpecFile};

const EXIT_DISPROVED: u8 = 0;
const EXIT_INCONCLUSIVE: u8 = 10;
const EXIT_INPUT: u8 = 11;
const EXIT_CHECKPOINT: u8 = 12;
const EXIT_RUNTIME: u8 = 13;

#[derive(Parser)]
#[command(name = "transbound", version, about = "Disprove k-transitivity of a cover's monodromy by point counting")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the spec file: prime ideal, reduction of the cover, ramification type.
    Validate { spec: PathBuf },
    /// Print the Riemann–Hurwitz genus of the k-subset curve.
    Genus {
        spec: PathBuf,
        #[command(flatten)]
        task: TaskArgs,
    },
    /// Print the Hasse–Weil bound and the prime-size advisory.
    Bound {
        spec: PathBuf,
        #[command(flatten)]
        task: TaskArgs,
        #[command(flatten)]
        advisory: AdvisoryArgs,
        /// Test a claimed point count against the bound.
        #[arg(long)]
        count: Option<BigUint>,
    },
    /// Run the full pipeline and print a JSON certificate.
    Certify(CertifyArgs),
}

#[derive(Args)]
struct TaskArgs {
    /// Subset size; overrides task.k in the spec.
    #[arg(long)]
    k: Option<usize>,
    /// exact: orbit-counted indices; bound: per-branch upper bounds.
    #[arg(long, default_value = "exact")]
    mode: GenusMode,
    /// Replace a negative genus by 0 (for exercising the count on test covers).
    #[arg(long)]
    clamp_genus: bool,
}

#[derive(Args)]
struct AdvisoryArgs {
    /// Number of orbits on k-subsets under the alternative.
    #[arg(long = "orbits", default_value_t = DEFAULT_ORBIT_COUNT)]
    d: u32,
    /// Required ratio of lambda to the prime-size threshold.
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
}

#[derive(Args)]
struct CertifyArgs {
    spec: PathBuf,
    #[command(flatten)]
    task: TaskArgs,
    #[command(flatten)]
    advisory: AdvisoryArgs,
    /// Worker threads; 0 uses all hardware threads.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Fibers per chunk.
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    chunk: u64,
    /// Stop scanning once the count exceeds the Hasse–Weil bound.
    #[arg(long)]
    early_exit: bool,
    /// Append completed chunks to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from the records already in the checkpoint.
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    /// Write the factorization-pattern histogram here.
    #[arg(long)]
    histogram: Option<PathBuf>,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure { code: EXIT_INPUT, err: e.into() }
}

fn runtime<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure { code: EXIT_RUNTIME, err: e.into() }
}

fn scan_failure(e: ScanError) -> Failure {
    let code = match e {
        ScanError::CheckpointMismatch(_) | ScanError::CheckpointFormat { .. } => EXIT_CHECKPOINT,
        ScanError::Io(_) | ScanError::Pool(_) => EXIT_RUNTIME,
        _ => EXIT_INPUT,
    };
    Failure { code, err: e.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Command::Validate { spec } => cmd_validate(&spec),
        Command::Genus { spec, task } => cmd_genus(&spec, &task),
        Command::Bound { spec, task, advisory, count } => cmd_bound(&spec, &task, &advisory, count),
        Command::Certify(args) => cmd_certify(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn load(path: &Path) -> Result<SpecFile, Failure> {
    load_spec(path).map_err(|e| input(anyhow::anyhow!("{}: {e}", path.display())))
}

fn genus_report(spec: &SpecFile, task: &TaskArgs) -> Result<GenusReport, Failure> {
    let ram = spec.ramification().map_err(input)?;
    let k = task
        .k
        .or(spec.k)
        .ok_or_else(|| input(anyhow::anyhow!("no k given (use --k or task.k)")))?;
    let report = genus_ck(ram, k, task.mode).map_err(input)?;
    Ok(if task.clamp_genus {
        report.with_nonnegative_override()
    } else {
        report
    })
}

fn cmd_validate(path: &Path) -> Result<u8, Failure> {
    let spec = load(path)?;
    let diags = spec.diagnostics();
    let mut failed = false;
    for d in &diags {
        println!("{d}");
        failed |= d.severity == Severity::Error;
    }
    Ok(if failed { EXIT_INPUT } else { 0 })
}

fn print_genus(r: &GenusReport) {
    println!("k = {}, n = {}, deg(C_k) = C({}, {}) = {}", r.k, r.n, r.n, r.k, r.cover_degree);
    for b in &r.branches {
        println!(
            "  branch {:<20} order {:<6} pi_{} = {:<8} index {}",
            b.cycle_type.to_string(),
            b.order,
            r.k,
            b.pi_k.to_string(),
            format_rational(&b.index)
        );
    }
    println!("g(C_{}) = {} ({})", r.k, format_rational(&r.genus), r.mode.as_str());
    if r.contradiction {
        println!("negative genus: C_{} cannot be irreducible, so the group is not {}-transitive", r.k, r.k);
    }
    if r.nonnegative_override {
        println!("genus clamped to {} for the bound", r.genus_for_bound());
    }
}

fn cmd_genus(path: &Path, task: &TaskArgs) -> Result<u8, Failure> {
    let spec = load(path)?;
    if let Some(w) = spec.ramification().map_err(input)?.consistency_warning() {
        eprintln!("warning: {w}");
    }
    print_genus(&genus_report(&spec, task)?);
    Ok(0)
}

fn cmd_bound(
    path: &Path,
    task: &TaskArgs,
    adv: &AdvisoryArgs,
    count: Option<BigUint>,
) -> Result<u8, Failure> {
    let spec = load(path)?;
    let report = genus_report(&spec, task)?;
    let lambda = spec
        .lambda()
        .ok_or_else(|| input(anyhow::anyhow!("no lambda: add [prime] or task.lambda")))?;
    let g = report.genus_for_bound();
    println!("g(C_{}) = {} ({})", report.k, format_rational(&report.genus), report.mode.as_str());
    println!("lambda = {lambda}");
    if report.contradiction {
        println!("negative genus: no point count needed");
        return Ok(EXIT_DISPROVED);
    }
    let b = hasse_weil_upper(lambda, &g).map_err(input)?;
    println!("hasse-weil bound = {b}");
    let t = prime_size_threshold(&g, adv.d).map_err(input)?;
    println!("prime-size threshold 4g^2/(d-1)^2 = {} (d = {})", format_rational(&t), adv.d);
    if !t.is_zero() {
        let ratio = lambda as f64 / (t.numer().to_f64().unwrap_or(f64::INFINITY) / t.denom().to_f64().unwrap_or(1.0));
        println!("lambda / threshold = {ratio:.6} (margin {})", adv.margin);
        if ratio < adv.margin {
            eprintln!("warning: lambda is not comfortably above the prime-size threshold");
        }
    }
    if let Some(c) = count {
        let exceeds = exceeds_hasse_weil(lambda, &g, &c).map_err(input)?;
        println!("count {c} exceeds bound: {}", if exceeds { "yes" } else { "no" });
        return Ok(if exceeds { EXIT_DISPROVED } else { EXIT_INCONCLUSIVE });
    }
    Ok(0)
}

fn cmd_certify(args: &CertifyArgs) -> Result<u8, Failure> {
    let spec = load(&args.spec)?;
    let genus = genus_report(&spec, &args.task)?;
    let prime = spec.prime_ideal().map_err(input)?;
    let lambda = prime.ell();
    let mut meta = CertificateMeta {
        prime: spec.prime.map(|p| (p.ell, p.r)),
        ramification: spec.branch_texts.clone(),
        orbit_count_d: args.advisory.d,
        margin: args.advisory.margin,
        ..Default::default()
    };
    if args.advisory.d < 2 {
        return Err(input(anyhow::anyhow!("--orbits must be at least 2")));
    }

    let scan = if genus.contradiction {
        eprintln!("genus is negative; skipping the point count");
        None
    } else {
        let (p, q) = spec.reduced_cover().map_err(input)?;
        let problem = ScanProblem::new(p, q, genus.k).map_err(scan_failure)?;
        meta.cover_hash = Some(problem.hash().to_string());
        let g = genus.genus_for_bound();
        let bound = hasse_weil_upper(lambda, &g).map_err(input)?;
        let opts = ScanOptions {
            chunk_size: args.chunk.max(1),
            threads: args.threads,
            early_exit_above: args.early_exit.then(|| bound.clone()),
            check_interval: args.chunk.max(1),
        };
        let header = CheckpointHeader::for_problem(&problem);
        let (resume, writer) = match &args.checkpoint {
            None => (None, None),
            Some(path) if args.resume => {
                let prior = read_checkpoint(path, &header).map_err(scan_failure)?;
                if let Some(p) = &prior {
                    eprintln!("resuming: {} fibers already scanned", p.scanned());
                }
                (prior, Some(CheckpointWriter::append(path, &header).map_err(scan_failure)?))
            }
            Some(path) => (None, Some(CheckpointWriter::create(path, &header).map_err(scan_failure)?)),
        };
        eprintln!(
            "scanning {lambda} fibers, k = {}, bound {bound}",
            genus.k
        );
        let res = Scanner::new(&problem, opts)
            .run(problem.full_range(), resume, writer.as_ref())
            .map_err(scan_failure)?;
        eprintln!("count >= {}", res.total);
        if let Some(h) = &args.histogram {
            let f = File::create(h).with_context(|| format!("creating {}", h.display())).map_err(runtime)?;
            let mut w = BufWriter::new(f);
            write_histogram(&res, &mut w).map_err(runtime)?;
            w.flush().map_err(runtime)?;
        }
        Some(res)
    };

    let cert = build_certificate(&genus, scan.as_ref(), lambda, &meta).map_err(runtime)?;
    let json = cert.to_json();
    match &args.output {
        Some(path) => std::fs::write(path, &json)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(runtime)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(json.as_bytes()).map_err(runtime)?;
            out.flush().map_err(runtime)?;
        }
    }
    eprintln!("verdict: {}", cert.verdict);
    Ok(match cert.verdict {
        Verdict::NotKTransitive | Verdict::NegativeGenusContradiction => EXIT_DISPROVED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}
