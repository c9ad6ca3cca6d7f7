use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use waring_core::generate::{generate, Stratum};
use waring_core::selfcheck::run_selfcheck;
use waring_core::{Convention, Error};

use waring_cli::report::{DecompositionRecord, PiRecord, ReportRecord};
use waring_cli::{
    build_report, error_record, invariants_report, orbit_report, run_batch, CliError,
    ReportOptions, EXIT_SELFCHECK, EXIT_USAGE,
};

/// Exact Waring ranks of binary forms.
#[derive(Parser)]
#[command(name = "waring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, invariants and stratum of one form.
    Rank {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        calc: CalcArgs,
        /// Also compute a certified numeric decomposition.
        #[arg(long)]
        decompose: bool,
    },
    /// Invariants I2, I4, I6, I10 and the weighted point of a sextic.
    Invariants {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        json: bool,
    },
    /// Write a form as a sum of rank-many powers of linear forms.
    Decompose {
        #[command(flatten)]
        form: FormArgs,
        #[command(flatten)]
        calc: CalcArgs,
    },
    /// Decide whether two stable sextics are SL2-equivalent.
    OrbitEq {
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Process one form per line, writing JSON Lines to stdout.
    Batch {
        /// Input file, or `-` for stdin.
        path: PathBuf,
        #[command(flatten)]
        calc: CalcArgs,
        /// Add a certified numeric decomposition to each record.
        #[arg(long)]
        decompose: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long, short)]
        jobs: Option<usize>,
        /// Add per-line wall-clock time to each record.
        #[arg(long)]
        timing: bool,
    },
    /// Print seeded test sextics, one expression per line.
    Generate {
        /// `rank:R`, `multiplicity:M`, `double-roots:K`, `case-b` or `random`.
        spec: String,
        #[arg(long, short = 'n', default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the classifier against Sylvester's algorithm.
    Selfcheck {
        /// Number of random forms after the fixed regression table.
        #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct FormArgs {
    /// A polynomial in x and y, or `plain:`/`binomial:` followed by
    /// coefficients.
    #[arg(required_unless_present = "coeffs", conflicts_with = "coeffs", allow_hyphen_values = true)]
    input: Option<String>,
    /// Comma-separated coefficients, optionally preceded by a convention
    /// (`--coeffs binomial 0,0,0,1,0,0,0`). A list starting with a minus
    /// sign needs the `--coeffs=-1,0,2` or `--coeffs=binomial:-1,0,2` form.
    #[arg(long, num_args = 1..=2, value_names = ["CONVENTION", "CSV"])]
    coeffs: Option<Vec<String>>,
    #[arg(long, default_value = "plain")]
    convention: Convention,
}

impl FormArgs {
    fn line(&self) -> Result<String, CliError> {
        match (&self.input, &self.coeffs) {
            (Some(s), _) => Ok(s.clone()),
            (None, Some(v)) if v.len() == 2 => {
                let c: Convention = v[0].parse().map_err(|message| CliError::Parse {
                    position: None,
                    message,
                })?;
                Ok(format!("{}: {}", tag(c), v[1]))
            }
            (None, Some(v)) if v[0].starts_with("plain:") || v[0].starts_with("binomial:") => {
                Ok(v[0].clone())
            }
            (None, Some(v)) => Ok(format!("{}: {}", tag(self.convention), v[0])),
            (None, None) => unreachable!("clap requires one of them"),
        }
    }
}

fn tag(c: Convention) -> &'static str {
    match c {
        Convention::Plain => "plain",
        Convention::Binomial => "binomial",
    }
}

#[derive(Args)]
struct CalcArgs {
    /// Relative residual a decomposition must reach.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for the random choices in the decomposer.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use Sylvester's algorithm (any degree) instead of the sextic
    /// classifier.
    #[arg(long, num_args = 0..=1, require_equals = true, default_value = "false",
          default_missing_value = "true", action = ArgAction::Set)]
    general: bool,
    /// Print a JSON record instead of a table.
    #[arg(long)]
    json: bool,
}

impl CalcArgs {
    fn options(&self, decompose: bool) -> ReportOptions {
        ReportOptions {
            decompose,
            general: self.general,
            tol: self.tol,
            seed: self.seed,
            timing: false,
        }
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn fail(input: &str, e: &CliError, json: bool) -> ExitCode {
    if json {
        print_json(&error_record(input, None, e));
    }
    let hint = match e {
        CliError::Math(Error::WrongDegree { .. }) => " (pass --general for other degrees)",
        _ => "",
    };
    eprintln!("error: {e}{hint}");
    ExitCode::from(e.exit_code() as u8)
}

fn show_pi(p: &PiRecord) -> String {
    match p {
        PiRecord::Point(z) => format!("({})", z.join(" : ")),
        PiRecord::Label(s) => s.clone(),
    }
}

fn show_decomposition(d: &DecompositionRecord, degree: usize) {
    println!("decomposition ({} terms, residual {:.3e})", d.terms.len(), d.residual);
    for t in &d.terms {
        println!(
            "  (({:+.12} {:+.12}i)*x + ({:+.12} {:+.12}i)*y)^{degree}",
            t.x[0], t.x[1], t.y[0], t.y[1]
        );
    }
    println!("operator      {}", d.operator);
}

fn show_report(r: &ReportRecord) {
    println!("form          {}", r.form);
    println!("rank          {}", r.rank);
    if let Some(b) = &r.branch {
        println!("branch        {b}");
    }
    if let Some(c) = &r.git_class {
        println!("git class     {c}");
    }
    if let Some(p) = &r.pi {
        println!("pi            {}", show_pi(p));
    }
    if let Some(i) = &r.invariants {
        println!("I2            {}", i.i2);
        println!("I4            {}", i.i4);
        println!("I6            {}", i.i6);
        println!("I10           {}", i.i10);
    }
    for e in &r.multiplicity_profile {
        println!("multiplicity  {} x{}: {}", e.multiplicity, e.roots, e.factor);
    }
    if let Some(d) = &r.decomposition {
        show_decomposition(d, r.degree);
    }
}

fn single(form: &FormArgs, opts: ReportOptions, json: bool) -> ExitCode {
    let line = match form.line() {
        Ok(l) => l,
        Err(e) => return fail("", &e, json),
    };
    match build_report(&line, &opts) {
        Ok(r) if json => {
            print_json(&r);
            ExitCode::SUCCESS
        }
        Ok(r) => {
            show_report(&r);
            ExitCode::SUCCESS
        }
        Err(e) => fail(&line, &e, json),
    }
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Rank {
            form,
            calc,
            decompose,
        } => single(&form, calc.options(decompose), calc.json),
        Command::Decompose { form, calc } => single(&form, calc.options(true), calc.json),
        Command::Invariants { form, json } => {
            let line = match form.line() {
                Ok(l) => l,
                Err(e) => return fail("", &e, json),
            };
            match invariants_report(&line) {
                Ok(r) if json => print_json(&r),
                Ok(r) => {
                    println!("form          {}", r.form);
                    println!("I2            {}", r.invariants.i2);
                    println!("I4            {}", r.invariants.i4);
                    println!("I6            {}", r.invariants.i6);
                    println!("I10           {}", r.invariants.i10);
                    println!("pi            {}", show_pi(&r.pi));
                    println!("git class     {}", r.git_class);
                }
                Err(e) => return fail(&line, &e, json),
            }
            ExitCode::SUCCESS
        }
        Command::OrbitEq {
            first,
            second,
            json,
        } => match orbit_report(&first, &second) {
            Ok(r) if json => {
                print_json(&r);
                ExitCode::SUCCESS
            }
            Ok(r) => {
                println!("equivalent    {}", r.equivalent);
                println!("pi(first)     {}", show_pi(&r.pi[0]));
                println!("pi(second)    {}", show_pi(&r.pi[1]));
                ExitCode::SUCCESS
            }
            Err(e) => fail(&format!("{first} ; {second}"), &e, json),
        },
        Command::Batch {
            path,
            calc,
            decompose,
            jobs,
            timing,
        } => {
            let text = match read_input(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            };
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|n| n.get())
                    .unwrap_or(1)
            });
            let opts = ReportOptions {
                timing,
                ..calc.options(decompose)
            };
            let out = run_batch(&text, &opts, jobs);
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            for r in &out.records {
                writeln!(w, "{r}").expect("stdout");
            }
            w.flush().expect("stdout");
            if out.failures > 0 {
                eprintln!("{} of {} lines failed", out.failures, out.records.len());
            }
            ExitCode::from(out.failures.min(125) as u8)
        }
        Command::Generate {
            spec,
            count,
            seed,
            json,
        } => {
            let stratum: Stratum = match spec.parse() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            };
            for (i, f) in generate(stratum, count, seed).iter().enumerate() {
                if json {
                    let plain: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
                    let rec = json!({
                        "stratum": stratum.to_string(),
                        "seed": seed,
                        "index": i,
                        "form": f.to_expression(),
                        "plain": plain,
                    });
                    println!("{rec}");
                } else {
                    println!("{}", f.to_expression());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Selfcheck {
            samples,
            seed,
            json,
        } => {
            let report = run_selfcheck(samples as usize, seed);
            if json {
                let counts: serde_json::Map<String, serde_json::Value> = report
                    .branch_counts
                    .iter()
                    .map(|(b, n)| (b.label().to_string(), json!(n)))
                    .collect();
                let mismatches: Vec<_> = report
                    .all_mismatches()
                    .map(|(suite, m)| {
                        json!({"suite": suite, "form": m.form.to_expression(), "detail": m.detail})
                    })
                    .collect();
                print_json(&json!({
                    "samples": report.samples,
                    "seed": report.seed,
                    "passed": report.passed(),
                    "branch_counts": counts,
                    "oracle_mismatches": report.oracle.len(),
                    "invariance_mismatches": report.invariance.len(),
                    "soundness_mismatches": report.soundness.len(),
                    "fixture_mismatches": report.fixtures.len(),
                    "mismatches": mismatches,
                }));
            } else {
                println!("{report}");
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_SELFCHECK as u8)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli)
}
