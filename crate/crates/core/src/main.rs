use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use decreal::expr::{evaluate, parse, scan, Backend};
use decreal::{Error, PeriodDetection};

#[derive(Parser)]
#[command(name = "decreal", version, about = "Exact and lazy arithmetic on infinite decimals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        expr: String,
        /// Places shown for values that are not finitely represented.
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
        backend: BackendArg,
    },
    /// Look for an ultimate period in the first digits of a value.
    Scan {
        expr: String,
        #[arg(long, default_value_t = 100)]
        digits: usize,
        #[arg(long, default_value_t = 20)]
        max_period: usize,
    },
    /// Run the built-in checks.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Lazy,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Lazy => Backend::Lazy,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 1,
        Error::BudgetExhausted { .. } => 3,
        _ => 2,
    }
}

fn fail(src: &str, err: Error) -> ExitCode {
    eprintln!("error: {err}");
    if let Error::Parse(p) = &err {
        eprintln!("  {src}");
        eprintln!("  {}^", " ".repeat(src[..p.offset.min(src.len())].chars().count()));
    }
    ExitCode::from(exit_code(&err))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr, digits, backend } => {
            match parse(&expr).map_err(Error::from).and_then(|e| evaluate(&e, digits, backend.into())) {
                Ok(result) => {
                    println!("{result}");
                    ExitCode::SUCCESS
                }
                Err(err) => fail(&expr, err),
            }
        }
        Command::Scan { expr, digits, max_period } => {
            match parse(&expr).map_err(Error::from).and_then(|e| scan(&e, digits, max_period)) {
                Ok(PeriodDetection::Found(x)) => {
                    let repetend: String = x.repetend().iter().map(|d| char::from(b'0' + d)).collect();
                    println!("period {}, repetend {repetend}: {x}", x.period_len());
                    ExitCode::SUCCESS
                }
                Ok(PeriodDetection::NotFoundWithinBounds) => {
                    println!("no ultimate period ≤ {max_period} in first {digits} digits");
                    ExitCode::SUCCESS
                }
                Err(err) => fail(&expr, err),
            }
        }
        Command::Selftest => {
            let checks = decreal::selftest::run();
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                println!("{mark} {}  [{}]", c.name, c.detail);
            }
            println!("{} passed, {failed} failed", checks.len() - failed);
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
