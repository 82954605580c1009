//! Command-line front end: compute pipeline objects, run the check catalog,
//! evaluate at distinguished points, and factor the product objects into
//! cyclotomic exponents. Results stream as one JSON record per line (or CSV
//! with a header); big integers are always decimal strings.
//!
//! Exit codes: 0 success, 1 gating check failure, 2 usage error, 3 internal
//! error.

mod bfile;
mod cache;
mod records;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use subsum_core::binary::{num_b, NumBStrategy};
use subsum_core::partitions::PartFamily;
use subsum_core::power::beta_poly;
use subsum_core::subsum::{
    c_row, den_star, f_factor, num_den, num_star, quotient_qd, quotient_qg, NumStarStrategy,
};
use subsum_core::verify::{
    run_check, run_check_streaming, suite, CheckError, CheckId, CheckReport,
};
use subsum_core::{CycloFactored, DensePoly};

use records::{
    check_record_csv, object_record_csv, CheckRecord, Format, ObjectRecord, CHECK_CSV_HEADER,
    OBJECT_CSV_HEADER,
};

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(message: impl Into<String>) -> Result<T> {
    Err(UsageError(message.into()).into())
}

#[derive(Parser)]
#[command(
    name = "subsum",
    about = "Exact subsum-polynomial pipeline: compute, verify, evaluate, factor",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an object and print one record (populates the result cache).
    Compute(ComputeArgs),
    /// Run verification checks over a range of n.
    Check(CheckArgs),
    /// Evaluate num(n, x) exactly at a distinguished point.
    Eval(EvalArgs),
    /// Factor a product object into cyclotomic exponents.
    Factor(FactorArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// num | den | g | num-star | den-star | num-b | beta | c-row
    object: String,
    n: u64,
    /// all | binary | ternary | odd (defaults: binary for num-b, all else)
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// naive | part-dp (num-star), naive | recurrence (num-b)
    #[arg(long)]
    strategy: Option<String>,
    /// Exponent m for beta (default 1)
    #[arg(long, default_value_t = 1)]
    power: u32,
    /// Cache directory override (else $SUBSUM_CACHE_DIR, else user cache)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Skip the result cache entirely
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name (all, ordinary, binary, power-sums, restricted,
    /// conjectures) or comma-separated check ids
    #[arg(default_value = "all")]
    targets: String,
    n_lo: Option<u64>,
    n_hi: Option<u64>,
    /// Promote conjecture failures to gating
    #[arg(long)]
    strict: bool,
    /// Worker threads for parallel sweeps
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value = "json")]
    format: Format,
    /// Compare a derived sequence against a local b-file
    #[arg(long)]
    bfile: Option<PathBuf>,
    /// Sequence for --bfile: s | d-half | b-count | sigma1-sum
    #[arg(long)]
    sequence: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    n: u64,
    /// minus1 | one | i | zeta6 | zeta:<m>
    point: String,
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct FactorArgs {
    /// den | den-star | g | qg | qd | f
    object: String,
    n: u64,
    /// Divisor argument for the object f
    #[arg(long)]
    d: Option<u64>,
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            if err.is::<UsageError>() {
                eprintln!("error: {err}");
                ExitCode::from(2)
            } else if let Some(check_err) = err.downcast_ref::<CheckError>() {
                match check_err {
                    CheckError::Internal { .. } => {
                        eprintln!("internal error: {err}");
                        ExitCode::from(3)
                    }
                    _ => {
                        eprintln!("error: {err}");
                        ExitCode::from(2)
                    }
                }
            } else if let Some(sub_err) = err.downcast_ref::<subsum_core::subsum::SubsumError>() {
                use subsum_core::subsum::SubsumError::*;
                match sub_err {
                    Domain(_) | ClosedFormRequiresAll | PartNotAllowed { .. } => {
                        eprintln!("error: {err}");
                        ExitCode::from(2)
                    }
                    _ => {
                        eprintln!("internal error: {err}");
                        ExitCode::from(3)
                    }
                }
            } else {
                eprintln!("internal error: {err:#}");
                ExitCode::from(3)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Check(args) => cmd_check(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Factor(args) => cmd_factor(args),
    }
}

fn parse_family(name: &str) -> Result<PartFamily> {
    match name {
        "all" => Ok(PartFamily::All),
        "binary" => Ok(PartFamily::Binary),
        "ternary" => Ok(PartFamily::Ternary),
        "odd" => Ok(PartFamily::Odd),
        other => usage(format!("unknown family: {other}")),
    }
}

fn coeff_strings(p: &DensePoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn exps_map(pairs: impl Iterator<Item = (u64, i64)>) -> std::collections::BTreeMap<String, i64> {
    pairs.map(|(i, e)| (i.to_string(), e)).collect()
}

fn print_object(record_value: &serde_json::Value, format: Format) -> Result<()> {
    match format {
        Format::Json => println!("{record_value}"),
        Format::Csv => {
            let record: ObjectRecord =
                serde_json::from_value(record_value.clone()).context("record shape")?;
            println!("{OBJECT_CSV_HEADER}");
            for row in object_record_csv(&record) {
                println!("{row}");
            }
        }
    }
    Ok(())
}

// ---- compute ----

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode> {
    let object = args.object.as_str();
    let family_name = args.family.clone().unwrap_or_else(|| {
        if object == "num-b" {
            "binary".to_string()
        } else {
            "all".to_string()
        }
    });

    let strategy = default_strategy(object, args.strategy.as_deref())?;
    validate_combination(object, &family_name)?;

    let cache_dir = if args.no_cache {
        None
    } else {
        cache::resolve_dir(args.cache_dir.as_deref())
    };
    if let Some(dir) = &cache_dir {
        if let Some(payload) = cache::load(dir, object, &family_name, args.n, &strategy) {
            print_object(&payload, args.format)?;
            return Ok(ExitCode::SUCCESS);
        }
    }

    let record = compute_record(object, args.n, &family_name, &strategy, args.power)?;
    let payload = record.payload();
    print_object(&payload, args.format)?;
    if let Some(dir) = &cache_dir {
        cache::store(dir, object, &family_name, args.n, &strategy, &payload)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn default_strategy(object: &str, flag: Option<&str>) -> Result<String> {
    let strategy = match (object, flag) {
        ("num-star", None) => "part-dp",
        ("num-star", Some(s @ ("naive" | "part-dp"))) => s,
        ("num-b", None) => "recurrence",
        ("num-b", Some(s @ ("naive" | "recurrence"))) => s,
        (_, None) => "default",
        (o, Some(s)) => return usage(format!("strategy {s} does not apply to {o}")),
    };
    Ok(strategy.to_string())
}

fn validate_combination(object: &str, family: &str) -> Result<()> {
    let ok = match object {
        "num" | "den" | "g" | "num-star" | "den-star" => true,
        "num-b" => family == "binary",
        "beta" | "c-row" => family == "all",
        other => return usage(format!("unknown object: {other}")),
    };
    if !ok {
        return usage(format!("object {object} does not accept family {family}"));
    }
    Ok(())
}

fn compute_record(
    object: &str,
    n: u64,
    family_name: &str,
    strategy: &str,
    power: u32,
) -> Result<ObjectRecord> {
    let family = parse_family(family_name)?;
    let mut record = ObjectRecord::new(object, n, family_name);
    match object {
        "num" => {
            let t = num_den(n, &family)?;
            record.coeffs = Some(coeff_strings(&t.num));
        }
        "den" => {
            let t = num_den(n, &family)?;
            record.exps = Some(exps_map(t.den.iter()));
        }
        "g" => {
            let t = num_den(n, &family)?;
            record.exps = Some(exps_map(t.g.iter()));
        }
        "num-star" => {
            let s = if strategy == "naive" {
                NumStarStrategy::Naive
            } else {
                NumStarStrategy::PartDp
            };
            record.strategy = Some(strategy.to_string());
            record.coeffs = Some(coeff_strings(&num_star(n, &family, s)));
        }
        "den-star" => {
            record.exps = Some(exps_map(den_star(n, &family).iter()));
        }
        "num-b" => {
            let s = if strategy == "naive" {
                NumBStrategy::Naive
            } else {
                NumBStrategy::Recurrence
            };
            record.strategy = Some(strategy.to_string());
            record.coeffs = Some(coeff_strings(&num_b(n, s)));
        }
        "beta" => {
            record.power = Some(i64::from(power));
            record.coeffs = Some(coeff_strings(&beta_poly(n, power)));
        }
        "c-row" => {
            record.c = Some(c_row(n).iter().map(|e| e.to_string()).collect());
        }
        other => return usage(format!("unknown object: {other}")),
    }
    Ok(record)
}

// ---- check ----

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return usage("--jobs must be at least 1");
        }
        // Ignore failure: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }

    if let Some(path) = &args.bfile {
        let Some(seq_name) = &args.sequence else {
            return usage("--bfile requires --sequence");
        };
        let sequence: bfile::Sequence = match seq_name.parse() {
            Ok(s) => s,
            Err(e) => return usage(e),
        };
        return run_bfile(path, sequence, args.n_lo, args.n_hi, args.format);
    }

    let targets: Vec<CheckId> = if let Some(ids) = suite(&args.targets) {
        ids
    } else {
        let mut ids = Vec::new();
        for name in args.targets.split(',') {
            match name.trim().parse::<CheckId>() {
                Ok(id) => ids.push(id),
                Err(e) => return usage(e.to_string()),
            }
        }
        ids
    };
    let explicit_ids = suite(&args.targets).is_none();

    if args.format == Format::Csv {
        println!("{CHECK_CSV_HEADER}");
    }

    let mut gating_failures = 0u64;
    for check in targets {
        let (dom_lo, dom_hi) = check.domain();
        let (def_lo, def_hi) = check.default_range();
        let (lo, hi) = if explicit_ids {
            // Explicit ids take the requested range verbatim; out-of-domain
            // is a usage error surfaced by run_check.
            (args.n_lo.unwrap_or(def_lo), args.n_hi.unwrap_or(def_hi))
        } else {
            // Suites clamp the requested range into each check's domain.
            let lo = args.n_lo.unwrap_or(def_lo).max(dom_lo);
            let hi = args.n_hi.unwrap_or(def_hi).min(dom_hi);
            if lo > hi {
                continue;
            }
            (lo, hi)
        };
        let gates = check.class().gates(args.strict);
        let mut emit = |report: CheckReport| {
            if report.status == subsum_core::verify::CheckStatus::Fail && gates {
                gating_failures += 1;
            }
            print_check_record(&report, gates, args.format);
        };
        if hi - lo >= 10_000 {
            run_check_streaming(check, lo, hi, &mut emit)?;
        } else {
            for report in run_check(check, lo, hi)? {
                emit(report);
            }
        }
    }

    Ok(if gating_failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn print_check_record(report: &CheckReport, gates: bool, format: Format) {
    let record = CheckRecord {
        check: report.check.to_string(),
        n: report.n,
        status: report.status.to_string(),
        computed: report.computed.clone(),
        expected: report.expected.clone(),
        elapsed_ms: report.elapsed_ms,
        gating: gates,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&record).expect("serializes")),
        Format::Csv => println!("{}", check_record_csv(&record)),
    }
}

fn run_bfile(
    path: &std::path::Path,
    sequence: bfile::Sequence,
    n_lo: Option<u64>,
    n_hi: Option<u64>,
    format: Format,
) -> Result<ExitCode> {
    let rows = bfile::parse(path)?;
    if format == Format::Csv {
        println!("{CHECK_CSV_HEADER}");
    }
    let mut failures = 0u64;
    for (index, file_value) in rows {
        if n_lo.is_some_and(|lo| index < lo) || n_hi.is_some_and(|hi| index > hi) {
            continue;
        }
        let started = std::time::Instant::now();
        let ours = bfile::derived_value(sequence, index)?;
        let ok = ours == file_value;
        if !ok {
            failures += 1;
        }
        let record = CheckRecord {
            check: format!("BFILE:{}", sequence.name()),
            n: index,
            status: if ok { "pass" } else { "fail" }.to_string(),
            computed: ours,
            expected: file_value,
            elapsed_ms: started.elapsed().as_millis() as u64,
            gating: true,
        };
        match format {
            Format::Json => println!("{}", serde_json::to_string(&record).expect("serializes")),
            Format::Csv => println!("{}", check_record_csv(&record)),
        }
    }
    Ok(if failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

// ---- eval ----

fn cmd_eval(args: EvalArgs) -> Result<ExitCode> {
    let family = parse_family(&args.family)?;
    let triple = num_den(args.n, &family)?;
    let mut record = ObjectRecord::new("eval", args.n, &args.family);
    record.point = Some(args.point.clone());

    match args.point.as_str() {
        "minus1" => record.value = Some(triple.num.eval_i64(-1).to_string()),
        "one" => record.value = Some(triple.num.eval(&BigInt::from(1)).to_string()),
        point => {
            let m: u64 = if point == "i" {
                4
            } else if point == "zeta6" {
                6
            } else if let Some(rest) = point.strip_prefix("zeta:") {
                match rest.parse() {
                    Ok(m) if m >= 1 => m,
                    _ => return usage(format!("bad root index in point {point}")),
                }
            } else {
                return usage(format!(
                    "unknown point {point} (expected minus1, one, i, zeta6, zeta:<m>)"
                ));
            };
            let residue = triple.num.reduce_mod_cyclotomic(m);
            record.residue = Some(residue.coeffs().iter().map(|c| c.to_string()).collect());
            if let Ok(abs2) = residue.abs_squared() {
                record.abs2 = Some(abs2.to_string());
            }
        }
    }
    print_object(&record.payload(), args.format)?;
    Ok(ExitCode::SUCCESS)
}

// ---- factor ----

fn cmd_factor(args: FactorArgs) -> Result<ExitCode> {
    let family = parse_family(&args.family)?;
    let all_only = matches!(args.object.as_str(), "qg" | "qd" | "f");
    if all_only && family != PartFamily::All {
        return usage(format!(
            "object {} exists only for the unrestricted family",
            args.object
        ));
    }
    let factored: CycloFactored = match args.object.as_str() {
        "den" => num_den(args.n, &family)?.den.to_cyclo(),
        "den-star" => den_star(args.n, &family).to_cyclo(),
        "g" => num_den(args.n, &family)?.g.to_cyclo(),
        "qg" => quotient_qg(args.n)?.to_cyclo(),
        "qd" => quotient_qd(args.n)?,
        "f" => {
            let Some(d) = args.d else {
                return usage("object f requires --d");
            };
            f_factor(args.n, d)?
        }
        other => return usage(format!("unknown factor object: {other}")),
    };
    let mut record = ObjectRecord::new("factor", args.n, &args.family);
    record.target = Some(args.object.clone());
    record.d = args.d;
    record.phi_exps = Some(exps_map(factored.iter()));
    print_object(&record.payload(), args.format)?;
    Ok(ExitCode::SUCCESS)
}
