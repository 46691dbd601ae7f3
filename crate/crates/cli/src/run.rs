//! Dispatch from parsed commands to the library.

use std::path::Path;

use fwrank::bounds::{
    bounds_report, fran_exact_small, fran_exact_small_k, BoundsOptions, BoundsReport,
    SmallFranReport,
};
use fwrank::covering::{
    clique_cover_number, covering_number, CliqueCoverResult, CoveringResult, DEFAULT_BUDGET,
};
use fwrank::format::{parse_graph, parse_matrix};
use fwrank::hadamard::{
    conjecture_search, minimal_power_to_fw2, power_report, product_report, ConjectureSearch,
    HadamardReport, MinimalPower, TrialVerdict, DEFAULT_M_CAP,
};
use fwrank::select::{decompose, Decomposed};
use fwrank::specgraph::SupportGraph;
use fwrank::widthdec::{
    factor_width, membership, FactorWidth, MembershipStatus, MembershipVerdict,
};
use fwrank::{Error, SymMatrix, ToleranceConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::{Common, Verb};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_UNDETERMINED: u8 = 4;

/// Combines exit codes: input errors over precondition errors over
/// undetermined outcomes over success.
pub fn worse(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        EXIT_INPUT => 3,
        EXIT_PRECONDITION => 2,
        EXIT_UNDETERMINED => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn usage(kind: &str, message: String) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: kind.to_string(),
            message,
        }
    }

    fn input(e: Error) -> Self {
        Self::usage(e.kind(), e.to_string())
    }

    fn precondition(e: Error) -> Self {
        Self {
            code: EXIT_PRECONDITION,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Check {
        factor_width: FactorWidth,
        membership: MembershipVerdict,
    },
    Decompose {
        k: usize,
        #[serde(flatten)]
        result: Decomposed,
    },
    Bounds {
        #[serde(flatten)]
        bounds: BoundsReport,
        small: Option<SmallFranReport>,
    },
    Cover(CoveringResult),
    CliqueCover(CliqueCoverResult),
    Hadamard(HadamardReport),
    MinimalPower {
        operation: &'static str,
        #[serde(flatten)]
        result: MinimalPower,
    },
    Conjecture(ConjectureSearch),
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self {
            Report::Check { membership, .. }
                if membership.status == MembershipStatus::Undetermined =>
            {
                EXIT_UNDETERMINED
            }
            Report::Decompose {
                result: Decomposed::NotFound { verdict },
                ..
            } => match verdict.status {
                MembershipStatus::Undetermined => EXIT_UNDETERMINED,
                _ => EXIT_PRECONDITION,
            },
            Report::Conjecture(c)
                if c.tested > 0
                    && c.records
                        .iter()
                        .all(|r| r.verdict == TrialVerdict::Undetermined) =>
            {
                EXIT_UNDETERMINED
            }
            _ => 0,
        }
    }
}

pub struct Item {
    pub input: Option<String>,
    pub result: Result<Report, Failure>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::usage("io", format!("cannot read file: {e}")))
}

fn read_matrix(path: &Path) -> Result<SymMatrix, Failure> {
    parse_matrix(&read(path)?).map_err(Failure::input)
}

fn read_graph(path: &Path) -> Result<SupportGraph, Failure> {
    parse_graph(&read(path)?).map_err(Failure::input)
}

/// Requested width, or the upper end of the computed factor width.
fn width(a: &SymMatrix, k: Option<usize>, cfg: &ToleranceConfig) -> Result<usize, Error> {
    match k {
        Some(k) => Ok(k),
        None => Ok(factor_width(a, cfg)?.hi),
    }
}

fn check(a: &SymMatrix, k: Option<usize>, cfg: &ToleranceConfig) -> Result<Report, Error> {
    let fw = factor_width(a, cfg)?;
    let k = k.unwrap_or(fw.hi);
    Ok(Report::Check {
        factor_width: fw,
        membership: membership(a, k, cfg)?,
    })
}

fn bounds(
    a: &SymMatrix,
    k: Option<usize>,
    budget: u64,
    cfg: &ToleranceConfig,
) -> Result<Report, Error> {
    let opts = BoundsOptions {
        budget,
        ..BoundsOptions::default()
    };
    let small = match (a.n() <= 4, k) {
        (false, _) => None,
        (true, Some(k)) => Some(fran_exact_small_k(a, k, cfg, &opts)?),
        (true, None) => Some(fran_exact_small(a, cfg, &opts)?),
    };
    let k = match (&small, k) {
        (_, Some(k)) => k,
        (Some(s), None) => s.k,
        (None, None) => width(a, None, cfg)?,
    };
    Ok(Report::Bounds {
        bounds: bounds_report(a, k, cfg, &opts)?,
        small,
    })
}

fn hadamard(
    files: &[std::path::PathBuf],
    s: Option<f64>,
    m_cap: usize,
    cfg: &ToleranceConfig,
) -> Result<Report, Failure> {
    let a = read_matrix(&files[0])?;
    let report = match (files.get(1), s) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage(
                "bad_args",
                "--s takes a single matrix".into(),
            ));
        }
        (Some(f), None) => {
            let b = read_matrix(f)?;
            product_report(&a, &b, cfg).map(Report::Hadamard)
        }
        (None, Some(s)) => power_report(&a, s, cfg).map(Report::Hadamard),
        (None, None) => minimal_power_to_fw2(&a, m_cap, cfg).map(|result| Report::MinimalPower {
            operation: "minimal_power",
            result,
        }),
    };
    report.map_err(Failure::precondition)
}

/// One item per input file, in input order.
fn per_file(
    files: &[std::path::PathBuf],
    f: impl Fn(&Path) -> Result<Report, Failure> + Sync,
) -> Vec<Item> {
    files
        .par_iter()
        .map(|p| Item {
            input: Some(p.display().to_string()),
            result: f(p),
        })
        .collect()
}

pub fn execute(verb: &Verb, common: &Common, cfg: &ToleranceConfig) -> Result<Vec<Item>, Failure> {
    if common.jobs == 0 {
        return Err(Failure::usage(
            "bad_args",
            "--jobs must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .map_err(|e| Failure::usage("bad_args", e.to_string()))?;
    let on_matrix = |files: &[std::path::PathBuf],
                     f: &(dyn Fn(&SymMatrix) -> Result<Report, Error> + Sync)| {
        per_file(files, |p| {
            f(&read_matrix(p)?).map_err(Failure::precondition)
        })
    };
    let items = pool.install(|| match verb {
        Verb::Check { files, k } => on_matrix(files, &|a| check(a, *k, cfg)),
        Verb::Decompose { files, k, method } => on_matrix(files, &|a| {
            let k = width(a, *k, cfg)?;
            Ok(Report::Decompose {
                k,
                result: decompose(a, k, method.map(Into::into), cfg)?,
            })
        }),
        Verb::Bounds { files, k, budget } => on_matrix(files, &|a| {
            bounds(a, *k, budget.unwrap_or(DEFAULT_BUDGET), cfg)
        }),
        Verb::Cover { n, k, budget } => vec![Item {
            input: None,
            result: covering_number(*n, *k, budget.unwrap_or(DEFAULT_BUDGET))
                .map(Report::Cover)
                .map_err(Failure::precondition),
        }],
        Verb::Cliquecover { files, k, budget } => per_file(files, |p| {
            let g = read_graph(p)?;
            clique_cover_number(&g, *k, budget.unwrap_or(DEFAULT_BUDGET))
                .map(Report::CliqueCover)
                .map_err(Failure::precondition)
        }),
        Verb::Hadamard { files, s, m_cap } => vec![Item {
            input: Some(
                files
                    .iter()
                    .map(|p| p.display().to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            result: hadamard(files, *s, m_cap.unwrap_or(DEFAULT_M_CAP), cfg),
        }],
        Verb::Conjecture {
            n,
            k,
            s,
            trials,
            seed,
        } => vec![Item {
            input: None,
            result: conjecture_search(*n, *k, *s, *trials, *seed, cfg)
                .map(Report::Conjecture)
                .map_err(Failure::precondition),
        }],
    });
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worse_orders_input_over_precondition_over_undetermined() {
        let codes = [0, EXIT_UNDETERMINED, EXIT_PRECONDITION, EXIT_INPUT];
        for (i, &a) in codes.iter().enumerate() {
            for (j, &b) in codes.iter().enumerate() {
                assert_eq!(worse(a, b), codes[i.max(j)]);
            }
        }
    }
}
