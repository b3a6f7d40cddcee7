//! `primebound` — exact verification of prime-power and primorial
//! inequalities from the command line.
//!
//! Five subcommands map onto the core library:
//!
//! * `check` — one predicate at one index;
//! * `scan` — exhaustive range scan, failures and undecided points listed;
//! * `threshold` — minimal-threshold search with analytic certification;
//! * `root` — certified zero of a threshold function;
//! * `constants` — audit of the explicit decimal constants.
//!
//! Every invocation writes exactly one report to standard output. A
//! predicate that `Fails` is data, not an error: the exit status is 0 for
//! every completed run and nonzero only for operational problems (bad
//! arguments, table limits, precision exhaustion), which are diagnosed in
//! one line on standard error.
//!
//! The sieve is auto-sized from the requested range via the nth-prime upper
//! bound `p_m < m log(m log m)` with a 2x safety factor, and transparently
//! rebuilt larger if an index still falls outside.

pub mod report;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use primebound_core::bounds::{audit_constants, find_root, ThresholdFunction};
use primebound_core::exact::{parse_constant_with, parse_rational_text};
use primebound_core::num_rational::BigRational;
use primebound_core::num_traits::Signed;
use primebound_core::verify::{
    check_inequality, minimal_threshold, scan_range, scan_range_with, InequalityId,
    InequalityParams,
};
use primebound_core::{Error, PrecisionCfg, PrimeTable};

use report::{Format, Params, Report, Versions};

/// Environment variable overriding the precision-escalation cap (bits).
pub const PRECISION_CAP_ENV: &str = "PRIMEBOUND_PRECISION_CAP";
const DEFAULT_PRECISION_CAP: u32 = 4096;

#[derive(Parser, Debug)]
#[command(
    name = "primebound",
    version,
    about = "Exact certification of prime-power and primorial inequalities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Starting working precision for enclosure evaluations, in bits.
    #[arg(long, global = true, default_value_t = 64)]
    pub precision: u32,

    /// Output format (csv applies to `scan` only).
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Sieve limit override; by default the limit is derived from the
    /// requested range.
    #[arg(long, global = true)]
    pub sieve_limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one inequality at a single index n.
    Check {
        /// Inequality id: theorem1, corollary1, zhang, panaitopol,
        /// rosser_pi, rosser_pn, or appendix_a.
        #[arg(long)]
        ineq: String,
        #[arg(long)]
        n: u64,
        /// Constant c (integer, fraction like 5/2, or finite decimal);
        /// required by theorem1/corollary1.
        #[arg(long)]
        c: Option<String>,
        /// Prime-index offset k; required by theorem1/corollary1.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Scan an inclusive index range and report every failure.
    Scan {
        #[arg(long)]
        ineq: String,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Determine the minimal threshold by exhaustive scan up to a cap.
    Threshold {
        #[arg(long)]
        ineq: String,
        /// Scan cap (inclusive).
        #[arg(long)]
        cap: u64,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Locate the zero of a threshold function by certified bisection.
    Root {
        /// Function family: fk (requires --c/--k) or appendix.
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        /// Bisection tolerance on the abscissa.
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// Audit the explicit decimal constants (1.25506, 1.71678).
    Constants,
}

/// Parse arguments, run, serialize; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("primebound: {e}");
            1
        }
    }
}

/// Execute one invocation, writing the single report document to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Error> {
    let cap = precision_cap_from_env()?;
    let cfg = PrecisionCfg::new(cli.precision, cap);
    let format: Format = cli.format.into();
    if format == Format::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err(Error::Domain(
            "csv output is defined for scan only; use --format json or text".to_string(),
        ));
    }

    match &cli.command {
        Command::Check { ineq, n, c, k } => run_check(cli, &cfg, format, ineq, *n, c, *k, out),
        Command::Scan { ineq, lo, hi, c, k } => {
            run_scan(cli, &cfg, format, ineq, *lo, *hi, c, *k, out)
        }
        Command::Threshold { ineq, cap, c, k } => {
            run_threshold(cli, &cfg, format, ineq, *cap, c, *k, out)
        }
        Command::Root { func, c, k, tol } => run_root(&cfg, format, func, c, *k, tol, out),
        Command::Constants => run_constants(&cfg, format, out),
    }
}

fn precision_cap_from_env() -> Result<u32, Error> {
    match std::env::var(PRECISION_CAP_ENV) {
        Ok(v) => v.trim().parse::<u32>().map_err(|_| {
            Error::Parse(format!(
                "{PRECISION_CAP_ENV} must be an integer bit count, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_PRECISION_CAP),
    }
}

/// Resolve `(c, k)` against what the inequality expects, with the fixed
/// instance baked into `zhang` treated as implicit.
fn resolve_ck(
    id: InequalityId,
    c: &Option<String>,
    k: Option<u64>,
    cfg: &PrecisionCfg,
) -> Result<Option<(primebound_core::ExactConstant, u64)>, Error> {
    if id.takes_ck() {
        let c_text = c
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("{id} requires --c")))?;
        let k = k.ok_or_else(|| Error::Domain(format!("{id} requires --k")))?;
        let c = parse_constant_with(c_text, cfg)?;
        Ok(Some((c, k)))
    } else if c.is_some() || k.is_some() {
        Err(Error::Domain(format!("{id} takes no --c or --k")))
    } else {
        Ok(None)
    }
}

/// Sieve limit heuristic: enough for `p_m` via the upper bound
/// `p_m < m log(m log m)` (valid from m = 6), doubled for safety.
fn estimate_limit(id: InequalityId, n_max: u64, k: u64) -> u64 {
    let m = id.prime_index_needed(n_max, k).max(1) + 1;
    let from_primes = if m < 6 {
        32
    } else {
        let mf = m as f64;
        let bound = mf * (mf.ln() * mf).ln();
        (2.0 * bound).ceil() as u64
    };
    from_primes.max(n_max + 1).max(32)
}

/// Build a table covering the computation, growing transparently when the
/// estimate (or a user-provided limit) turns out short.
fn table_for(
    id: InequalityId,
    n_max: u64,
    k: u64,
    sieve_limit: Option<u64>,
) -> Result<(PrimeTable, u64), Error> {
    let mut limit = sieve_limit.unwrap_or_else(|| estimate_limit(id, n_max, k));
    for _ in 0..8 {
        let table = PrimeTable::new(limit.max(32))?;
        let covered = match id.prime_index_needed(n_max, k) {
            0 => table.limit() >= n_max,
            idx => table.nth_prime(idx).is_ok() && table.limit() >= n_max,
        };
        if covered {
            return Ok((table, limit.max(32)));
        }
        limit = limit.saturating_mul(2);
    }
    Err(Error::Resource(format!(
        "could not cover the requested range with a sieve (last limit tried: {limit})"
    )))
}

fn base_params(cfg: &PrecisionCfg) -> Params {
    Params {
        precision_bits: cfg.start_bits,
        precision_cap_bits: cfg.cap_bits,
        ..Params::default()
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    cli: &Cli,
    cfg: &PrecisionCfg,
    format: Format,
    ineq: &str,
    n: u64,
    c: &Option<String>,
    k: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let id = InequalityId::from_str(ineq)?;
    let ck = resolve_ck(id, c, k, cfg)?;
    let (table, limit) = table_for(id, n, ck.as_ref().map_or(0, |(_, k)| *k), cli.sieve_limit)?;
    let mut params = InequalityParams::new(&table).with_precision(*cfg);
    if let Some((c, k)) = ck {
        params = params.with_ck(c, k);
    }
    let verdict = check_inequality(id, n, &params)?;

    let mut p = base_params(cfg);
    p.inequality = Some(id.name().to_string());
    p.c = c.clone();
    p.k = k;
    p.n = Some(n);
    p.sieve_limit = Some(limit);
    let report = Report {
        command: "check",
        params: p,
        result: report::verdict_value(&verdict),
        diagnostics: vec![format!("{}: {}", id.name(), id.formula())],
        versions: Versions { spec: "1" },
    };
    emit(format, &report, out, |w| {
        writeln!(
            w,
            "{} at n={}: {}{}",
            id.name(),
            n,
            verdict.status.as_str(),
            verdict
                .margin
                .map(|m| format!(" (margin {})", report::sig12_str(m)))
                .unwrap_or_default()
        )
    })
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    cli: &Cli,
    cfg: &PrecisionCfg,
    format: Format,
    ineq: &str,
    lo: u64,
    hi: u64,
    c: &Option<String>,
    k: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let id = InequalityId::from_str(ineq)?;
    let ck = resolve_ck(id, c, k, cfg)?;
    let (table, limit) = table_for(id, hi, ck.as_ref().map_or(0, |(_, k)| *k), cli.sieve_limit)?;
    let mut params = InequalityParams::new(&table).with_precision(*cfg);
    if let Some((cc, kk)) = ck {
        params = params.with_ck(cc, kk);
    }

    if format == Format::Csv {
        // Stream one row per index; margins use the same 12-digit rendering
        // as the JSON reports.
        let mut rows = String::from("n,verdict,margin\n");
        scan_range_with(id, lo, hi, &params, |n, v| {
            rows.push_str(&format!(
                "{n},{},{}\n",
                v.status.as_str(),
                v.margin.map(report::sig12_str).unwrap_or_default()
            ));
        })?;
        out.write_all(rows.as_bytes())
            .map_err(|e| Error::Resource(format!("write failed: {e}")))?;
        return Ok(());
    }

    let outcome = scan_range(id, lo, hi, &params)?;
    let mut p = base_params(cfg);
    p.inequality = Some(id.name().to_string());
    p.c = c.clone();
    p.k = k;
    p.n_lo = Some(lo);
    p.n_hi = Some(hi);
    p.sieve_limit = Some(limit);
    let report = Report {
        command: "scan",
        params: p,
        result: report::scan_value(&outcome),
        diagnostics: vec![format!("{}: {}", id.name(), id.formula())],
        versions: Versions { spec: "1" },
    };
    emit(format, &report, out, |w| {
        writeln!(
            w,
            "{} over [{lo}, {hi}]: {} checked, {} failures{}, {} undecided",
            id.name(),
            outcome.checked,
            outcome.failures.len(),
            if outcome.failures.is_empty() {
                String::new()
            } else {
                format!(" {:?}", outcome.failures)
            },
            outcome.undecided.len()
        )
    })
}

#[allow(clippy::too_many_arguments)]
fn run_threshold(
    cli: &Cli,
    cfg: &PrecisionCfg,
    format: Format,
    ineq: &str,
    cap: u64,
    c: &Option<String>,
    k: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let id = InequalityId::from_str(ineq)?;
    let ck = resolve_ck(id, c, k, cfg)?;
    let (table, limit) = table_for(id, cap, ck.as_ref().map_or(0, |(_, k)| *k), cli.sieve_limit)?;
    let mut params = InequalityParams::new(&table).with_precision(*cfg);
    if let Some((cc, kk)) = ck {
        params = params.with_ck(cc, kk);
    }
    let report_core = minimal_threshold(id, &params, cap)?;

    let mut p = base_params(cfg);
    p.inequality = Some(id.name().to_string());
    p.c = c.clone();
    p.k = k;
    p.scan_cap = Some(cap);
    p.sieve_limit = Some(limit);
    let report = Report {
        command: "threshold",
        params: p,
        result: report::threshold_value(&report_core),
        diagnostics: report_core.diagnostics.clone(),
        versions: Versions { spec: "1" },
    };
    emit(format, &report, out, |w| {
        writeln!(
            w,
            "{} minimal threshold up to {cap}: {} ({}certified)",
            id.name(),
            report_core
                .minimal_n
                .map(|n| n.to_string())
                .unwrap_or_else(|| "none".to_string()),
            if report_core.certified { "" } else { "not " }
        )
    })
}

#[allow(clippy::too_many_arguments)]
fn run_root(
    cfg: &PrecisionCfg,
    format: Format,
    func: &str,
    c: &Option<String>,
    k: Option<u64>,
    tol_text: &str,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let f = match func {
        "appendix" => {
            if c.is_some() || k.is_some() {
                return Err(Error::Domain(
                    "the appendix function takes no --c or --k".to_string(),
                ));
            }
            ThresholdFunction::appendix()
        }
        "fk" => {
            let c_text = c
                .as_ref()
                .ok_or_else(|| Error::Domain("fk requires --c".to_string()))?;
            let k = k.ok_or_else(|| Error::Domain("fk requires --k".to_string()))?;
            ThresholdFunction::fk(parse_constant_with(c_text, cfg)?, k, cfg)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown function {other:?}; expected fk or appendix"
            )))
        }
    };
    let tol = parse_tolerance(tol_text)?;
    let root = find_root(&f, &tol, cfg)?;

    let mut p = base_params(cfg);
    p.function = Some(func.to_string());
    p.c = c.clone();
    p.k = k;
    p.tolerance = Some(tol_text.to_string());
    let report = Report {
        command: "root",
        params: p,
        result: report::root_value(&root),
        diagnostics: vec![],
        versions: Versions { spec: "1" },
    };
    emit(format, &report, out, |w| {
        writeln!(
            w,
            "{} root ~ {} (floor {}, bracket width {})",
            func,
            report::sig12_str(root.root_f64()),
            root.analytic_threshold,
            report::sig12_str(root.width_f64())
        )
    })
}

fn run_constants(
    cfg: &PrecisionCfg,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let audit = audit_constants(cfg);
    let p = base_params(cfg);
    let report = Report {
        command: "constants",
        params: p,
        result: report::constants_value(&audit),
        diagnostics: audit.findings.iter().map(|f| f.detail.clone()).collect(),
        versions: Versions { spec: "1" },
    };
    emit(format, &report, out, |w| {
        for f in &audit.findings {
            writeln!(
                w,
                "{}: {} — {}",
                f.name,
                if f.passed { "pass" } else { "FAIL" },
                f.detail
            )?;
        }
        Ok(())
    })
}

fn parse_tolerance(text: &str) -> Result<BigRational, Error> {
    let tol = parse_rational_text(text)?;
    if !tol.is_positive() {
        return Err(Error::Domain(format!("tolerance must be positive, got {text}")));
    }
    Ok(tol)
}

fn emit<F>(format: Format, report: &Report, out: &mut dyn Write, text: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let io_err = |e: std::io::Error| Error::Resource(format!("write failed: {e}"));
    match format {
        Format::Json => {
            let doc = report::render_json(report);
            out.write_all(doc.as_bytes()).map_err(io_err)?;
            out.write_all(b"\n").map_err(io_err)
        }
        Format::Text => text(out).map_err(io_err),
        Format::Csv => unreachable!("csv handled by the scan path"),
    }
}
