mod expr;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use condreal::elementary::register_builtins;
use condreal::gadgets::{GadgetRegistry, FAMILIES};
use condreal::metric::SPACES;
use condreal::naming::{format_rational, parse_rational, precision_index, Nat};
use condreal::sexpr::Sexpr;
use condreal::suites::{run_suite, DEFAULT_SEED};
use condreal::Error;

#[derive(Parser)]
#[command(name = "condreal", version, about = "Exact real arithmetic through name triples")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression such as `(add 1/2 (recip 3))` to precision eps.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "1/1000", allow_hyphen_values = true)]
        eps: String,
        /// Candidates tried by each parameter search.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Run an invariant suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "t-max", default_value_t = 200)]
        t_max: u64,
    },
    /// Registered real functions.
    Fns {
        #[command(subcommand)]
        action: ListCmd,
    },
    /// Base-function gadgets.
    Gadgets {
        #[command(subcommand)]
        action: GadgetCmd,
    },
    /// Effective metric spaces.
    Spaces {
        #[command(subcommand)]
        action: ListCmd,
    },
}

#[derive(Subcommand)]
enum ListCmd {
    List,
}

#[derive(Subcommand)]
enum GadgetCmd {
    List,
    /// Apply a gadget, e.g. `gadgets eval gamma_1_2 5 2 3`.
    Eval { name: String, args: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}

fn run(cmd: Cmd) -> condreal::Result<u8> {
    match cmd {
        Cmd::Eval { expr, eps, budget } => {
            let eps = parse_rational(&eps)?;
            let t = precision_index(&eps)?;
            let parsed = Sexpr::parse(&expr)?;
            let (name, searches) = expr::evaluate(&parsed, &register_builtins(), budget)?;
            for s in &searches {
                println!("search {}: s={}", s.call, s.s);
            }
            println!("t={t}");
            println!("bound=1/{}", &t + 1u32);
            println!("approx={}", format_rational(&name.approx(&t)));
            Ok(0)
        }
        Cmd::Suite { name, seed, t_max } => {
            let report = run_suite(&name, seed, t_max)?;
            println!("{report}");
            Ok(if report.pass() { 0 } else { 4 })
        }
        Cmd::Fns { action: ListCmd::List } => {
            for e in register_builtins().entries() {
                println!("{}\tarity={}\t{}", e.name, e.fun.arity(), e.fun.kind());
            }
            Ok(0)
        }
        Cmd::Gadgets { action: GadgetCmd::List } => {
            for f in GadgetRegistry::default().entries() {
                println!("{}\tarity={}", f.name(), f.arity());
            }
            for (name, desc) in FAMILIES {
                println!("{name}\t{desc}");
            }
            Ok(0)
        }
        Cmd::Gadgets { action: GadgetCmd::Eval { name, args } } => {
            let f = GadgetRegistry::default()
                .resolve(&name)
                .ok_or_else(|| Error::UnknownFunction(name.clone()))?;
            let args = args
                .iter()
                .map(|a| a.parse::<Nat>().map_err(|_| Error::Parse(format!("`{a}` is not a natural number"))))
                .collect::<condreal::Result<Vec<_>>>()?;
            println!("{}", f.call(&args)?);
            Ok(0)
        }
        Cmd::Spaces { action: ListCmd::List } => {
            for (name, desc) in SPACES {
                println!("{name}\t{desc}");
            }
            Ok(0)
        }
    }
}
