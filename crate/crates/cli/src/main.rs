//! `fwrank`: factor width and factor-width rank of PSD matrices from the
//! command line.
//!
//! Exit codes: 0 success, 2 unreadable input or bad flags, 3 a precondition
//! of the requested operation fails, 4 the only outcome is undetermined. With
//! several inputs the most severe code wins, in the order 2, 3, 4.

mod render;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fwrank::select::Method;
use fwrank::ToleranceConfig;
use serde_json::json;

use run::{Failure, Item};

#[derive(Parser, Debug)]
#[command(
    name = "fwrank",
    version,
    about = "Factor width and factor-width rank of positive semidefinite matrices"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Pivot threshold of the PSD test, relative to the largest entry.
    #[arg(long, global = true)]
    tol_psd: Option<f64>,
    /// Relative residual accepted for a decomposition.
    #[arg(long, global = true)]
    tol_recon: Option<f64>,
    /// Entries at most this large in magnitude are structural zeros.
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
    /// Sweep cap of the membership solver.
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Worker threads for multiple inputs and for conjecture trials.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Banded,
    Arrowhead,
    BlockOverlap,
    Fw2Optimal,
    Membership,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Banded => Method::Banded,
            MethodArg::Arrowhead => Method::Arrowhead,
            MethodArg::BlockOverlap => Method::BlockOverlap,
            MethodArg::Fw2Optimal => Method::Fw2Optimal,
            MethodArg::Membership => Method::Membership,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Factor width of each matrix and a membership verdict at width k.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Width to test; defaults to the computed factor width.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Decomposition into terms supported on at most k indices.
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Support size; defaults to the computed factor width.
        #[arg(long)]
        k: Option<usize>,
        /// Method to use; by default the first applicable of banded,
        /// arrowhead, block-overlap, fw2-optimal, membership.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Lower and upper bounds on the factor-width-k rank.
    Bounds {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Width; defaults to the computed factor width.
        #[arg(long)]
        k: Option<usize>,
        /// Node budget of the covering searches.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Covering number C(n, k, 2).
    Cover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// k-clique cover number of each graph.
    Cliquecover {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Hadamard product of two matrices, real power of one (--s), or the
    /// least integer power with factor width at most 2.
    Hadamard {
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        #[arg(long)]
        s: Option<f64>,
        /// Largest power tried by the minimal-power search.
        #[arg(long)]
        m_cap: Option<usize>,
    },
    /// Random search for counterexamples to width preservation under real
    /// Hadamard powers.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Check { .. } => "check",
            Verb::Decompose { .. } => "decompose",
            Verb::Bounds { .. } => "bounds",
            Verb::Cover { .. } => "cover",
            Verb::Cliquecover { .. } => "cliquecover",
            Verb::Hadamard { .. } => "hadamard",
            Verb::Conjecture { .. } => "conjecture",
        }
    }
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn tolerances(c: &Common) -> Result<ToleranceConfig, Failure> {
    let mut cfg = ToleranceConfig::default();
    cfg.tol_psd = c.tol_psd.unwrap_or(cfg.tol_psd);
    cfg.tol_recon = c.tol_recon.unwrap_or(cfg.tol_recon);
    cfg.tol_zero = c.tol_zero.unwrap_or(cfg.tol_zero);
    cfg.max_iter = c.max_iter.unwrap_or(cfg.max_iter);
    cfg.validate()
        .map_err(|e| Failure::usage(e.kind(), e.to_string()))?;
    Ok(cfg)
}

fn error_json(verb: &str, input: Option<&str>, f: &Failure) -> String {
    json!({
        "verb": verb,
        "input": input,
        "error": { "kind": f.kind, "message": f.message },
        "exit_code": f.code,
    })
    .to_string()
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if wants_json(&args) => {
            let f = Failure::usage("usage", e.to_string().trim_end().to_string());
            eprintln!("{}", error_json("", None, &f));
            return ExitCode::from(f.code);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(run::EXIT_INPUT);
        }
    };
    let verb = cli.verb.name();
    let json = cli.common.format == Format::Json;
    let items =
        match tolerances(&cli.common).and_then(|cfg| run::execute(&cli.verb, &cli.common, &cfg)) {
            Ok(items) => items,
            Err(f) => vec![Item {
                input: None,
                result: Err(f),
            }],
        };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut code = 0u8;
    for item in &items {
        let input = item.input.as_deref();
        let item_code = match &item.result {
            Ok(report) => {
                let text = if json {
                    render::json(verb, input, report)
                } else {
                    render::text(input, report)
                };
                let _ = out.write_all(text.as_bytes());
                report.exit_code()
            }
            Err(f) => {
                if json {
                    eprintln!("{}", error_json(verb, input, f));
                } else {
                    match input {
                        Some(p) => eprintln!("fwrank {verb}: {p}: {}", f.message),
                        None => eprintln!("fwrank {verb}: {}", f.message),
                    }
                }
                f.code
            }
        };
        code = run::worse(code, item_code);
    }
    let _ = out.flush();
    ExitCode::from(code)
}
