//! `quatwit`: encode, decode, generate and verify algebras with involution.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use quatwit::classify::{encode, Category, Instance};
use quatwit::field::factor::set_factor_budget;
use quatwit::harness::format::{encoded_line, parse_instances, parse_witnesses};
use quatwit::harness::{generate, verify_pair, InstanceFile, Outcome, RunReport, DEFAULT_HEIGHT};
use quatwit::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "quatwit", version, about = "Parameter witnesses for algebras with involution over Q")]
struct Cli {
    /// Iteration budget for integer factorization.
    #[arg(long, global = true)]
    factor_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode every instance of a file; prints one witness and certificate per line.
    Encode {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Encode into this category instead of the one recorded in the file.
        #[arg(long)]
        category: Option<Category>,
        /// Record encoding time per instance on standard error.
        #[arg(long)]
        timing: bool,
    },
    /// Decode every witness of a file into an instance file.
    Decode { file: PathBuf },
    /// Generate seeded random instances.
    Gen {
        #[arg(long)]
        category: Category,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: i64,
    },
    /// Compare instances with the decoding of witnesses, line by line.
    Verify {
        instances: PathBuf,
        witnesses: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timing: bool,
    },
}

/// A failure that ends the command with an exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = if matches!(e, Error::Parse(_)) { EXIT_PARSE } else { EXIT_DOMAIN };
        Exit(code, format!("{}: {e}", e.name()))
    }
}

/// Prints a line; a closed standard output ends the process quietly.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn read(path: &PathBuf) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit(EXIT_PARSE, format!("PARSE_ERROR: {}: {e}", path.display())))
}

fn load_instances(path: &PathBuf) -> Result<Vec<(Category, Instance)>, Exit> {
    let files = parse_instances(&read(path)?)?;
    files.iter().map(|f| Ok((f.category, f.to_instance()?))).collect()
}

fn cmd_encode(file: &PathBuf, seed: u64, category: Option<Category>, timing: bool) -> Result<u8, Exit> {
    let items = load_instances(file)?;
    let results: Vec<_> = items
        .par_iter()
        .enumerate()
        .map(|(k, (c, x))| {
            let start = Instant::now();
            let r = encode(category.unwrap_or(*c), x, seed + k as u64);
            (r, start.elapsed())
        })
        .collect();
    let mut code = 0;
    for (k, (r, elapsed)) in results.into_iter().enumerate() {
        match r {
            Ok(e) => emit(&encoded_line(&e)),
            Err(e) => {
                eprintln!("instance {k}: {}: {e}", e.name());
                code = EXIT_DOMAIN;
            }
        }
        if timing {
            eprintln!("instance {k}: {} µs", elapsed.as_micros());
        }
    }
    Ok(code)
}

fn cmd_decode(file: &PathBuf) -> Result<u8, Exit> {
    let witnesses = parse_witnesses(&read(file)?)?;
    for w in &witnesses {
        let x = quatwit::classify::decode(w)?;
        emit(&InstanceFile::from_instance(w.category, &x)?.to_line());
    }
    Ok(0)
}

fn cmd_gen(category: Category, n: Option<usize>, count: usize, seed: u64, height: i64) -> Result<u8, Exit> {
    let n = n.or(category.fixed_n()).unwrap_or(3);
    let lines: Vec<Result<String, Error>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let x = generate(category, n, seed + k as u64, height)?;
            Ok(InstanceFile::from_instance(category, &x)?.to_line())
        })
        .collect();
    for l in lines {
        emit(&l?);
    }
    Ok(0)
}

fn cmd_verify(instances: &PathBuf, witnesses: &PathBuf, seed: u64, timing: bool) -> Result<u8, Exit> {
    let items = load_instances(instances)?;
    let ws = parse_witnesses(&read(witnesses)?)?;
    if items.len() != ws.len() {
        return Err(Exit(EXIT_PARSE, format!("PARSE_ERROR: {} instances but {} witnesses", items.len(), ws.len())));
    }
    let outcomes: Vec<(Outcome, bool)> = items
        .par_iter()
        .zip(ws.par_iter())
        .enumerate()
        .map(|(k, ((c, x), w))| {
            let start = Instant::now();
            let (mut o, domain) = match verify_pair(*c, x, w) {
                Ok(checks) => (Outcome::from_checks(k, Some(w.clone()), checks), false),
                Err(e) => (Outcome::failed(k, format!("{}: {e}", e.name())), true),
            };
            if timing {
                o.micros = Some(start.elapsed().as_micros() as u64);
            }
            (o, domain)
        })
        .collect();
    let domain = outcomes.iter().any(|(_, d)| *d);
    let report = RunReport::new(seed, outcomes.into_iter().map(|(o, _)| o).collect());
    emit(&serde_json::to_string(&report).expect("reports serialize"));
    for o in report.outcomes.iter().filter(|o| !o.passed) {
        eprintln!("instance {}: {}", o.index, o.failure().unwrap_or_default());
    }
    Ok(if domain {
        EXIT_DOMAIN
    } else if report.all_passed() {
        0
    } else {
        EXIT_VERIFY
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    if let Some(b) = cli.factor_budget {
        set_factor_budget(b);
    }
    let result = match &cli.command {
        Command::Encode { file, seed, category, timing } => cmd_encode(file, *seed, *category, *timing),
        Command::Decode { file } => cmd_decode(file),
        Command::Gen { category, n, count, seed, height } => cmd_gen(*category, *n, *count, *seed, *height),
        Command::Verify { instances, witnesses, seed, timing } => cmd_verify(instances, witnesses, *seed, *timing),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
