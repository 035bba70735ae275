//! Command-line entry point: sequence generation, polynomial export, norm
//! scans, correlation tables, merit-factor tables and the verification suite.
//!
//! Every run with identical arguments produces byte-identical output. All
//! parallelism is schedule-independent; --threads only caps the worker count.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flatlab::correlate::{self, TableFamily};
use flatlab::polyfam::{self, AnalyticPolynomial};
use flatlab::report::{format_sig12, StatementId};
use flatlab::seqgen::{self, Source};
use flatlab::specnorm;
use flatlab::verify::{self, VerifyConfig};
use flatlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "flatlab",
    version,
    about = "Flatness laboratory for Littlewood-type polynomials on the unit circle",
    long_about = "Generates Golay-Rudin-Shapiro, Fekete and Singer sequences and \
polynomials, computes L^alpha norms, Mahler measures, autocorrelations and merit \
factors, and runs an executable verification suite over the statement catalogue \
(eq-para ... singer-open). Outputs are byte-deterministic."
)]
struct Cli {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker-thread cap (0 = rayon default). Results are identical for any
    /// value.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Quadrature tolerance override for norm computations.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sign sequence (statement ids: prop-ms-correlations via the
    /// GRS sources; gauss-formula via legendre).
    Seq(SeqArgs),
    /// Export polynomial coefficients (ids: eq-para, eq-conjugate,
    /// gauss-formula, self-reciprocal, singer-open).
    Poly(PolyArgs),
    /// Compute L^alpha norms / Mahler measure of one polynomial (ids: thm-l4,
    /// thm-main-nonflat, lemma-norm-equiv, montgomery-lower).
    Norms(NormsArgs),
    /// Exact autocorrelations, energy, merit factor and L4 of a sequence
    /// (ids: thm-l4, prop-19-18, prop-ms-correlations).
    Correlate(SeqArgs),
    /// Merit-factor table for one family at several sizes (ids: thm-l4,
    /// hoholdt-jensen-trend, newman-byrnes-search, singer-open).
    Merit(MeritArgs),
    /// Run the verification suite (all 18 statement ids).
    Verify(VerifyArgs),
    /// Norm scan across a whole family (ids: thm-main-nonflat,
    /// hoholdt-jensen-trend, prop-flatness-char).
    Scan(ScanArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// Sequence source: grs-recurrence | grs-binary | grs-substitution |
    /// legendre | singer.
    #[arg(long)]
    source: String,

    /// Number of terms (GRS sources).
    #[arg(long)]
    count: Option<usize>,

    /// Prime parameter (legendre, singer).
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct PolyArgs {
    /// Family: rs-p | rs-q | truncated-rs | fekete | fekete-modified |
    /// fekete-shifted | singer.
    #[arg(long)]
    family: String,

    /// Stage for the Rudin-Shapiro pair (2^stage coefficients).
    #[arg(long)]
    stage: Option<u32>,

    /// Degree bound N for truncated-rs (N+1 coefficients).
    #[arg(long)]
    n: Option<usize>,

    /// Prime parameter for the Fekete and Singer families.
    #[arg(long)]
    p: Option<u64>,

    /// Cyclic shift for fekete-shifted.
    #[arg(long, default_value_t = 0)]
    shift: i64,
}

#[derive(Args)]
struct NormsArgs {
    #[command(flatten)]
    poly: PolyArgs,

    /// Comma-separated list of exponents; 0 means the Mahler measure.
    #[arg(long, default_value = "4")]
    alpha: String,
}

#[derive(Args)]
struct MeritArgs {
    /// Family: grs | fekete | singer.
    #[arg(long)]
    family: String,

    /// Comma-separated sizes (lengths for grs, primes otherwise).
    #[arg(long)]
    sizes: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every statement check (the default when --only is absent).
    #[arg(long)]
    all: bool,

    /// Comma-separated statement ids to run.
    #[arg(long)]
    only: Option<String>,

    /// Scale preset: default (full desk scale) or smoke (fast).
    #[arg(long, default_value = "default")]
    scale: String,

    /// Thresholds file overriding the built-in defaults.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override of the exact-L4 maximum stage.
    #[arg(long)]
    max_stage: Option<u32>,
}

#[derive(Args)]
struct ScanArgs {
    /// Family: rs-p | rs-q | truncated-rs | fekete | fekete-modified |
    /// singer.
    #[arg(long)]
    family: String,

    /// Comma-separated stages (rs-p, rs-q) or sizes (truncated-rs).
    #[arg(long)]
    stages: Option<String>,

    /// Comma-separated primes (fekete families, singer).
    #[arg(long)]
    primes: Option<String>,

    /// Comma-separated list of exponents; 0 means the Mahler measure.
    #[arg(long, default_value = "1,2,4")]
    alpha: String,
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidArgument(format!("bad {what} entry '{part}'")))
        })
        .collect()
}

fn build_sequence(args: &SeqArgs) -> Result<seqgen::SignSequence> {
    let source: Source = args.source.parse()?;
    match source {
        Source::GrsRecurrence | Source::GrsBinary | Source::GrsSubstitution => {
            let count = args
                .count
                .ok_or_else(|| Error::InvalidArgument("--count required for GRS sources".into()))?;
            match source {
                Source::GrsRecurrence => seqgen::grs_recurrence(count),
                Source::GrsBinary => seqgen::grs_binary(count),
                _ => seqgen::grs_substitution(count),
            }
        }
        Source::Legendre => {
            let p = args
                .p
                .ok_or_else(|| Error::InvalidArgument("--p required for legendre".into()))?;
            seqgen::legendre_sequence(p)
        }
        Source::Singer => {
            let p = args
                .p
                .ok_or_else(|| Error::InvalidArgument("--p required for singer".into()))?;
            seqgen::singer_sign_sequence(p)
        }
        other => Err(Error::InvalidArgument(format!(
            "source '{other}' is not directly generable from the CLI"
        ))),
    }
}

fn build_polynomial(args: &PolyArgs) -> Result<AnalyticPolynomial> {
    let need_stage = || {
        args.stage
            .ok_or_else(|| Error::InvalidArgument("--stage required for this family".into()))
    };
    let need_p = || {
        args.p
            .ok_or_else(|| Error::InvalidArgument("--p required for this family".into()))
    };
    match args.family.as_str() {
        "rs" | "rs-p" => Ok(polyfam::rudin_shapiro_pair(need_stage()?)?.0),
        "rs-q" => Ok(polyfam::rudin_shapiro_pair(need_stage()?)?.1),
        "truncated-rs" => {
            let n = args.n.ok_or_else(|| {
                Error::InvalidArgument("--n required for truncated-rs".into())
            })?;
            polyfam::truncated_rs(n)
        }
        "fekete" => polyfam::fekete(need_p()?),
        "fekete-modified" => polyfam::fekete_modified(need_p()?),
        "fekete-shifted" => polyfam::fekete_shifted(need_p()?, args.shift),
        "singer" => polyfam::singer_poly(need_p()?),
        other => Err(Error::InvalidArgument(format!(
            "unknown polynomial family '{other}'"
        ))),
    }
}

fn poly_size_label(args: &PolyArgs) -> String {
    if let Some(stage) = args.stage {
        stage.to_string()
    } else if let Some(p) = args.p {
        p.to_string()
    } else if let Some(n) = args.n {
        n.to_string()
    } else {
        "0".to_string()
    }
}

/// FNV-1a over the serialized payload: a stable, dependency-free checksum for
/// the determinism contract.
fn checksum(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| {
            Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn cmd_seq(cli: &Cli, args: &SeqArgs) -> Result<()> {
    let seq = build_sequence(args)?;
    let payload = match cli.format {
        Format::Csv => format!("{}\n", seq.to_csv_line()),
        Format::Json => format!("{}\n", serde_json::to_string(&seq.to_json()).unwrap()),
    };
    emit(&cli.out, &payload)?;
    if cli.out.is_some() {
        println!("length {} checksum {:016x}", seq.len(), checksum(payload.as_bytes()));
    } else {
        eprintln!("length {} checksum {:016x}", seq.len(), checksum(payload.as_bytes()));
    }
    Ok(())
}

fn cmd_poly(cli: &Cli, args: &PolyArgs) -> Result<()> {
    let poly = build_polynomial(args)?;
    let payload = match cli.format {
        Format::Csv => poly.to_csv(),
        Format::Json => format!("{}\n", serde_json::to_string(&poly.to_json()).unwrap()),
    };
    emit(&cli.out, &payload)
}

fn cmd_norms(cli: &Cli, args: &NormsArgs) -> Result<()> {
    let poly = build_polynomial(&args.poly)?;
    let alphas: Vec<f64> = parse_list(&args.alpha, "alpha")?;
    let tol = cli.tolerance.unwrap_or(specnorm::DEFAULT_TOLERANCE);
    let size_label = poly_size_label(&args.poly);
    let mut rows = Vec::new();
    let mut warnings = 0usize;
    for &alpha in &alphas {
        let (profile, flagged) = match if alpha == 0.0 {
            specnorm::mahler_measure(&poly, tol)
        } else {
            specnorm::lp_norm(&poly, alpha, tol)
        } {
            Ok(p) => (p, false),
            Err(Error::AccuracyNotReached { best }) => (best, true),
            Err(e) => return Err(e),
        };
        if flagged {
            warnings += 1;
        }
        rows.push((alpha, profile, flagged));
    }
    let payload = match cli.format {
        Format::Csv => {
            let mut s = String::from("family,stage_or_p,alpha,value,error\n");
            for (alpha, profile, flagged) in &rows {
                let flag = if *flagged { " (accuracy-not-reached)" } else { "" };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}{flag}",
                    poly.family(),
                    size_label,
                    format_sig12(*alpha),
                    format_sig12(profile.value),
                    format_sig12(profile.estimated_error),
                );
            }
            s
        }
        Format::Json => {
            let mut s = String::new();
            for (alpha, profile, flagged) in &rows {
                let v = serde_json::json!({
                    "family": poly.family().to_string(),
                    "stage_or_p": size_label,
                    "alpha": alpha,
                    "value": profile.value,
                    "grid_size": profile.grid_size,
                    "estimated_error": profile.estimated_error,
                    "accuracy_not_reached": flagged,
                });
                let _ = writeln!(s, "{}", serde_json::to_string(&v).unwrap());
            }
            s
        }
    };
    emit(&cli.out, &payload)?;
    if warnings > 0 {
        eprintln!("warning: {warnings} row(s) flagged accuracy-not-reached");
    }
    Ok(())
}

fn cmd_correlate(cli: &Cli, args: &SeqArgs) -> Result<()> {
    let seq = build_sequence(args)?;
    let profile = correlate::autocorrelations(&seq)?;
    let payload = match cli.format {
        Format::Csv => {
            let mut s = String::from("lag,c\n");
            for (k, c) in profile.c.iter().enumerate() {
                let _ = writeln!(s, "{k},{c}");
            }
            let l4 = profile.l4_normalized();
            let _ = writeln!(s, "energy,{}", profile.energy);
            let _ = writeln!(s, "merit_factor,{}", profile.merit_factor);
            let _ = writeln!(s, "l4_fourth_normalized,{}/{}", l4.numer(), l4.denom());
            s
        }
        Format::Json => format!("{}\n", serde_json::to_string(&profile.to_json()).unwrap()),
    };
    emit(&cli.out, &payload)
}

fn cmd_merit(cli: &Cli, args: &MeritArgs) -> Result<()> {
    let family: TableFamily = args.family.parse()?;
    let sizes: Vec<u64> = parse_list(&args.sizes, "sizes")?;
    let rows = correlate::merit_factor_table(family, &sizes)?;
    let payload = match cli.format {
        Format::Csv => {
            let mut s = String::from(
                "family,size,merit_factor_exact,merit_factor,l4_fourth_exact,l4_fourth\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.family,
                    r.size,
                    r.merit_factor_exact,
                    format_sig12(r.merit_factor_decimal),
                    r.l4_fourth_normalized,
                    format_sig12(r.l4_fourth_decimal),
                );
            }
            s
        }
        Format::Json => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{}", serde_json::to_string(r).unwrap());
            }
            s
        }
    };
    emit(&cli.out, &payload)
}

fn smoke_config(cfg: &mut VerifyConfig) {
    cfg.exact_l4.max_stage = 10;
    cfg.parallelogram.max_stage = 8;
    cfg.parallelogram.grid_size = 1 << 13;
    cfg.sup_bounds.rs_pair_max_stage = 10;
    cfg.sup_bounds.truncated_max_n = 1024;
    cfg.sup_bounds.segment_samples = 20;
    cfg.sup_bounds.segment_max_total = 1024;
    cfg.correlations.prefix_lengths = vec![64, 256, 1024];
    cfg.truncated.lengths = vec![64, 256, 1024];
    cfg.nonflat.max_stage = 10;
    cfg.flatness_char.rs_stages = vec![4, 6];
    cfg.flatness_char.fekete_primes = vec![7, 101];
    cfg.norm_equiv.stages = vec![1, 3, 6];
    cfg.gauss.primes = vec![7, 101, 1009];
    cfg.fekete_trend.primes = vec![13, 101, 1009];
    cfg.fekete_trend.threshold = 0.01;
    cfg.fekete_structure.prime_bound = 199;
    cfg.montgomery.primes = vec![17, 101, 257];
    cfg.newman_byrnes.max_n = 10;
    cfg.singer.primes = vec![2, 3, 5];
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            VerifyConfig::from_toml_str(&text)?
        }
        None => VerifyConfig::default(),
    };
    match args.scale.as_str() {
        "default" => {}
        "smoke" => smoke_config(&mut cfg),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scale '{other}' (expected default|smoke)"
            )))
        }
    }
    if let Some(max_stage) = args.max_stage {
        cfg.exact_l4.max_stage = max_stage;
    }
    let selection: Vec<StatementId> = match (&args.only, args.all) {
        (Some(list), _) => parse_list(list, "statement id")?,
        (None, _) => Vec::new(),
    };
    let reports = verify::run_all(&cfg, &selection);
    let mut payload = String::new();
    for r in &reports {
        match cli.format {
            Format::Json => {
                let _ = writeln!(payload, "{}", r.to_json_line());
            }
            Format::Csv => {
                let _ = writeln!(payload, "{}", r.to_csv_line());
            }
        }
    }
    emit(&cli.out, &payload)?;
    for r in &reports {
        if cli.out.is_some() {
            println!("{}", r.summary_line());
        } else {
            eprintln!("{}", r.summary_line());
        }
    }
    Ok(verify::all_passed(&reports))
}

fn cmd_scan(cli: &Cli, args: &ScanArgs) -> Result<()> {
    let alphas: Vec<f64> = parse_list(&args.alpha, "alpha")?;
    let tol = cli.tolerance.unwrap_or(specnorm::DEFAULT_TOLERANCE);
    let mut polys: Vec<(String, AnalyticPolynomial)> = Vec::new();
    match args.family.as_str() {
        "rs" | "rs-p" | "rs-q" | "truncated-rs" => {
            let stages = args.stages.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--stages required for this family".into())
            })?;
            for stage in parse_list::<u64>(stages, "stages")? {
                let poly = match args.family.as_str() {
                    "truncated-rs" => polyfam::truncated_rs(stage as usize)?,
                    "rs-q" => polyfam::rudin_shapiro_pair(stage as u32)?.1,
                    _ => polyfam::rudin_shapiro_pair(stage as u32)?.0,
                };
                polys.push((stage.to_string(), poly));
            }
        }
        "fekete" | "fekete-modified" | "singer" => {
            let primes = args.primes.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--primes required for this family".into())
            })?;
            for p in parse_list::<u64>(primes, "primes")? {
                let poly = match args.family.as_str() {
                    "fekete" => polyfam::fekete(p)?,
                    "fekete-modified" => polyfam::fekete_modified(p)?,
                    _ => polyfam::singer_poly(p)?,
                };
                polys.push((p.to_string(), poly));
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scan family '{other}'"
            )))
        }
    }
    let mut s = match cli.format {
        Format::Csv => String::from("family,stage_or_p,alpha,value,error\n"),
        Format::Json => String::new(),
    };
    let mut warnings = 0usize;
    for (label, poly) in &polys {
        for &alpha in &alphas {
            let (profile, flagged) = match if alpha == 0.0 {
                specnorm::mahler_measure(poly, tol)
            } else {
                specnorm::lp_norm(poly, alpha, tol)
            } {
                Ok(p) => (p, false),
                Err(Error::AccuracyNotReached { best }) => (best, true),
                Err(e) => return Err(e),
            };
            if flagged {
                warnings += 1;
            }
            match cli.format {
                Format::Csv => {
                    let flag = if flagged { " (accuracy-not-reached)" } else { "" };
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}{flag}",
                        poly.family(),
                        label,
                        format_sig12(alpha),
                        format_sig12(profile.value),
                        format_sig12(profile.estimated_error),
                    );
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "family": poly.family().to_string(),
                        "stage_or_p": label,
                        "alpha": alpha,
                        "value": profile.value,
                        "grid_size": profile.grid_size,
                        "estimated_error": profile.estimated_error,
                        "accuracy_not_reached": flagged,
                    });
                    let _ = writeln!(s, "{}", serde_json::to_string(&v).unwrap());
                }
            }
        }
    }
    emit(&cli.out, &s)?;
    if warnings > 0 {
        eprintln!("warning: {warnings} row(s) flagged accuracy-not-reached");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    if cli.threads > 0 {
        // A second invocation (e.g. in tests) would fail; the cap is per
        // process, so ignore the error.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match &cli.command {
        Command::Seq(args) => cmd_seq(cli, args).map(|()| true),
        Command::Poly(args) => cmd_poly(cli, args).map(|()| true),
        Command::Norms(args) => cmd_norms(cli, args).map(|()| true),
        Command::Correlate(args) => cmd_correlate(cli, args).map(|()| true),
        Command::Merit(args) => cmd_merit(cli, args).map(|()| true),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::Scan(args) => cmd_scan(cli, args).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
