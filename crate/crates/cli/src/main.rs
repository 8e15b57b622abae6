use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nbjohnson::exact::to_string;
use nbjohnson::orthopoly::{eberlein, hahn, krawtchouk};
use nbjohnson::report::{parse_checks, run, Report, RunConfig, DEFAULT_BASES};
use nbjohnson::scheme::DEFAULT_MAX_VERTICES;
use nbjohnson::{Error, Verdict};

/// Exact verification of the non-binary Johnson scheme J_r(k,n).
#[derive(Debug, Parser)]
#[command(name = "nbjohnson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build J_r(k,n) and run verification checks.
    Verify(VerifyArgs),
    /// Orthogonal polynomial utilities.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    r: i64,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    n: i64,
    /// Comma-separated checks, or `all`: axioms, spectra, ppoly, qpoly,
    /// recurrences, difference, bispectral, terwilliger, orthopoly.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    /// Number of base vertices for the subconstituent checks.
    #[arg(long, default_value_t = DEFAULT_BASES)]
    bases: usize,
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long)]
    json: Option<String>,
    /// Record wall times in the report.
    #[arg(long)]
    timings: bool,
    /// Include eigenvalue tables and Krein parameters in the report.
    #[arg(long)]
    tables: bool,
}

#[derive(Debug, Subcommand)]
enum PolyCommand {
    /// Evaluate a polynomial exactly and print it as `num/den`.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Krawtchouk,
    Eberlein,
    Hahn,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    #[arg(long, allow_hyphen_values = true)]
    x: i64,
    #[arg(long = "N", allow_hyphen_values = true)]
    big_n: i64,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Poly {
            command: PolyCommand::Eval(args),
        } => eval(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<u8, Error> {
    let mut config = RunConfig::new(args.r, args.k, args.n);
    config.checks = parse_checks(&args.checks)?;
    config.max_vertices = args.max_vertices;
    config.bases = args.bases;
    config.timings = args.timings;
    config.tables = args.tables;
    let report = run(&config)?;

    match args.json.as_deref() {
        Some("-") => print!("{}", report.to_json()),
        Some(path) => {
            fs::write(path, report.to_json())
                .map_err(|e| Error::Usage(format!("cannot write {path}: {e}")))?;
            print_summary(&report);
        }
        None => print_summary(&report),
    }
    Ok(report.exit_code() as u8)
}

fn print_summary(report: &Report) {
    let inst = &report.instance;
    let v = inst.v.map_or_else(|| "?".to_string(), |v| v.to_string());
    println!(
        "J_{}({},{}): v = {v}, |D| = {}",
        inst.r,
        inst.k,
        inst.n,
        report.domain.len()
    );
    for cert in &report.certificates {
        let verdict = match cert.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skipped",
        };
        match cert.wall_time_ms {
            Some(ms) => println!("  {:<12} {verdict} ({ms} ms)", cert.check),
            None => println!("  {:<12} {verdict}", cert.check),
        }
        for note in &cert.notes {
            println!("      note: {note}");
        }
        for w in &cert.witnesses {
            println!(
                "      {} at {:?}: expected {}, got {}",
                w.context, w.index, w.expected, w.actual
            );
        }
        if cert.failures > cert.witnesses.len() {
            println!("      ... {} failures in total", cert.failures);
        }
    }
}

fn eval(args: EvalArgs) -> Result<u8, Error> {
    let EvalArgs {
        family,
        i,
        x,
        big_n,
        p,
    } = args;
    if !(0..=10_000).contains(&i) {
        return Err(Error::Domain(format!("degree {i} out of range 0..=10000")));
    }
    let value = match family {
        Family::Krawtchouk => krawtchouk(i, x, big_n, p),
        Family::Eberlein => eberlein(i, x, big_n, p),
        Family::Hahn => hahn(i, x, big_n, p)?,
    };
    println!("{}", to_string(&value));
    Ok(0)
}
