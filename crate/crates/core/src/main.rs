use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use spinor_kit::cli::{eval_program, run_suite};

#[derive(Parser)]
#[command(name = "spinor-kit", version, about = "Exact two-spinor, Dirac, form and Fock-space algebra")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite and print its JSON report.
    Check {
        /// clifford, signature, pauli, fn-bracket, bianchi, car-ccr,
        /// normal-order, adjunction or all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, allow_negative_numbers = true)]
        trials: i64,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate a program from a file, or from stdin with `-`.
    Eval { input: String },
}

const USAGE: u8 = 2;

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPINORKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SPINORKIT_THREADS must be a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn check(suite: &str, seed: u64, trials: i64, json: Option<PathBuf>) -> ExitCode {
    if trials <= 0 {
        eprintln!("error: --trials must be positive");
        return ExitCode::from(USAGE);
    }
    let start = Instant::now();
    let report = match run_suite(suite, seed, trials as u64) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(USAGE);
        }
    }
    eprint!("{}", report.summary());
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn eval(input: &str) -> ExitCode {
    let src = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(input)
    };
    let src = match src {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {input}: {e}");
            return ExitCode::from(USAGE);
        }
    };
    match eval_program(&src) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    match args.command {
        Command::Check { suite, seed, trials, json } => check(&suite, seed, trials, json),
        Command::Eval { input } => eval(&input),
    }
}
