//! Text and JSON rendering of reports. Both are pure functions of the report,
//! so output is byte-identical across runs.

use std::fmt::Write;

use fwrank::bounds::{Bound, SmallFran};
use fwrank::decomp::FWDecomposition;
use fwrank::select::Decomposed;
use fwrank::widthdec::{Certificate, MembershipVerdict};
use serde::Serialize;
use serde_json::json;

use crate::run::Report;

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize")
}

/// One envelope line per report; conjecture searches are written as one
/// line per trial instead.
pub fn json(verb: &str, input: Option<&str>, report: &Report) -> String {
    if let Report::Conjecture(c) = report {
        return c.to_jsonl();
    }
    to_json(&json!({ "verb": verb, "input": input, "report": report })) + "\n"
}

fn snake<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn one_based(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn decomposition(out: &mut String, d: &FWDecomposition) {
    let _ = writeln!(
        out,
        "decomposition: {} terms, max support {}, residual {:.3e}",
        d.term_count(),
        d.max_support(),
        d.residual
    );
    for v in &d.vectors {
        let vals: Vec<String> = v.values().iter().map(|x| format!("{x:.6}")).collect();
        let _ = writeln!(out, "  {} [{}]", one_based(v.support()), vals.join(", "));
    }
}

fn verdict(out: &mut String, v: &MembershipVerdict) {
    let _ = writeln!(
        out,
        "membership k={}: {} (distance {:.3e}, {} sweeps)",
        v.k,
        snake(&v.status).to_lowercase(),
        v.distance_estimate,
        v.iterations_used
    );
    match &v.certificate {
        Some(Certificate::Decomposition(d)) => decomposition(out, d),
        Some(Certificate::Witness(w)) => {
            let _ = writeln!(out, "witness: <W, A> = {:.3e}", w.inner_product);
        }
        None => {}
    }
}

fn bound_list(bounds: &[Bound]) -> String {
    let items: Vec<String> = bounds
        .iter()
        .map(|b| format!("{} ({})", b.value, snake(&b.source)))
        .collect();
    items.join(", ")
}

fn blocks(out: &mut String, label: &str, blocks: &[Vec<usize>]) {
    let items: Vec<String> = blocks.iter().map(|b| one_based(b)).collect();
    let _ = writeln!(out, "{label}: {}", items.join(" "));
}

pub fn text(input: Option<&str>, report: &Report) -> String {
    let mut out = String::new();
    if let Some(p) = input {
        let _ = writeln!(out, "input: {p}");
    }
    match report {
        Report::Check {
            factor_width: fw,
            membership,
        } => {
            if fw.lo == fw.hi {
                let _ = writeln!(out, "factor width: {} ({})", fw.k, snake(&fw.exactness));
            } else {
                let _ = writeln!(
                    out,
                    "factor width: in [{}, {}] ({})",
                    fw.lo,
                    fw.hi,
                    snake(&fw.exactness)
                );
            }
            verdict(&mut out, membership);
        }
        Report::Decompose { k, result } => match result {
            Decomposed::Found {
                method,
                decomposition: d,
            } => {
                let _ = writeln!(out, "k: {k}\nmethod: {}", snake(method));
                decomposition(&mut out, d);
            }
            Decomposed::NotFound { verdict: v } => {
                let _ = writeln!(out, "k: {k}\nno decomposition found");
                verdict(&mut out, v);
            }
        },
        Report::Bounds { bounds, small } => {
            let _ = writeln!(out, "k: {}", bounds.k);
            let _ = writeln!(out, "lower: {}", bound_list(&bounds.lower));
            let _ = writeln!(out, "upper: {}", bound_list(&bounds.upper));
            match bounds.exact {
                Some(v) => {
                    let _ = writeln!(out, "exact: {v}");
                }
                None => {
                    let _ = writeln!(
                        out,
                        "range: [{}, {}]",
                        bounds.best_lower(),
                        bounds.best_upper()
                    );
                }
            }
            if let Some(s) = small {
                match s.result {
                    SmallFran::Exact(v) => {
                        let _ = writeln!(out, "small case k={}: exact {v}", s.k);
                    }
                    SmallFran::Range(lo, hi) => {
                        let _ = writeln!(out, "small case k={}: range [{lo}, {hi}]", s.k);
                    }
                }
                for t in &s.trace {
                    let _ = writeln!(out, "  {t}");
                }
            }
        }
        Report::Cover(c) => {
            let _ = writeln!(
                out,
                "C({}, {}, 2) {} {} (lower bound {}, {} nodes)",
                c.design.n,
                c.design.k,
                if c.certified { "=" } else { "<=" },
                c.value,
                c.lower_bound,
                c.nodes
            );
            blocks(&mut out, "design", &c.design.blocks);
        }
        Report::CliqueCover(c) => {
            let _ = writeln!(
                out,
                "cc_{} {} {} (lower bound {}, {} nodes)",
                c.cover.k,
                if c.certified { "=" } else { "<=" },
                c.value,
                c.lower_bound,
                c.nodes
            );
            blocks(&mut out, "cover", &c.cover.cliques);
        }
        Report::Hadamard(h) => {
            let widths: Vec<String> = h.input_widths.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "operation: {}", snake(&h.operation));
            let _ = writeln!(out, "input widths: {}", widths.join(", "));
            if let Some(w) = h.width_claim {
                let _ = writeln!(out, "result width at most: {w}");
            }
            if let Some(b) = h.fran_bound {
                let _ = writeln!(out, "result rank bound: {b}");
            }
            let _ = writeln!(out, "rule: {}", snake(&h.rule));
            let _ = writeln!(out, "result psd: {}", h.psd_verdict);
        }
        Report::MinimalPower { result, .. } => {
            let _ = writeln!(out, "minimal power: {}", result.m);
            let _ = writeln!(out, "verified through: {}", result.verified_through);
        }
        Report::Conjecture(c) => {
            let undetermined = c
                .records
                .iter()
                .filter(|r| snake(&r.verdict) == "undetermined")
                .count();
            let _ = writeln!(
                out,
                "n={} k={} s={}: {} trials, {} counterexamples, {} undetermined",
                c.n,
                c.k,
                c.s,
                c.tested,
                c.counterexamples.len(),
                undetermined
            );
            for r in &c.counterexamples {
                let _ = writeln!(out, "  counterexample: trial {} seed {}", r.trial, r.seed);
            }
        }
    }
    out
}
