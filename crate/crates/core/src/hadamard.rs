//! Rank and width bounds for Hadamard products and powers, the minimal
//! integer power reaching factor width 2, and a randomized search for
//! counterexamples to width preservation under real powers.

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{fran_upper_bounds, BoundsOptions};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::matcore::{
    as_positive_integer, diagonal_normalize, hadamard_power, hadamard_product,
    is_diagonally_dominant, is_psd, SymMatrix, ToleranceConfig,
};
use crate::widthdec::{
    factor_width, factor_width_le_2, membership, Certificate, MembershipStatus, MEMBERSHIP_N_LIMIT,
};

/// Default cap on the exponent scanned by [`minimal_power_to_fw2`].
pub const DEFAULT_M_CAP: usize = 10_000;

/// `fran_k(A ⊙ B) <= fran_k(A) fran_k(B)`.
pub fn fran_product_bound(ra: usize, rb: usize) -> Result<usize> {
    if ra == 0 || rb == 0 {
        return Err(Error::BadArgs("ranks must be at least 1".into()));
    }
    ra.checked_mul(rb)
        .ok_or_else(|| Error::Overflow(format!("{ra} * {rb}")))
}

/// `fran_k(A^{⊙s}) <= C(fran_k(A) + s - 1, s)` for integer `s`.
pub fn fran_power_bound(r: u64, s: u64) -> Result<u64> {
    if r == 0 || s == 0 {
        return Err(Error::BadArgs("rank and power must be at least 1".into()));
    }
    r.checked_add(s - 1)
        .and_then(|top| binomial(top, s))
        .ok_or_else(|| Error::Overflow(format!("C({r} + {s} - 1, {s})")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerVerdict {
    Guaranteed,
    NotGuaranteed,
    /// Some factor-width-`k` matrix loses positive semidefiniteness at this `s`.
    CounterexampleClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthRule {
    /// Products of factor-width-`k` matrices keep width `k`.
    ProductClosure,
    /// Integer powers keep width `k`.
    IntegerPower,
    /// Real powers `s >= 1` keep width 2 for nonnegative matrices.
    Fw2RealPower,
    /// `k = n`: positive semidefiniteness for integer `s` or `s >= n - 2`.
    FitzgeraldHorn,
    /// Powers of diagonal matrices are diagonal.
    Diagonal,
    /// Non-integer `s < min(k - 1, n - 2)`: a banded counterexample exists.
    BandedConverse,
    /// Between the known regimes; preservation is conjectured only.
    Conjectural,
}

/// Whether `A^{⊙s}` is known to keep factor width at most `k`, for `A` PSD of
/// factor width at most `k` (taken as given).
pub fn power_preserves_width(a: &SymMatrix, k: usize, s: f64) -> Result<(PowerVerdict, WidthRule)> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::BadK { k, n });
    }
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::BadArgs(format!("power must be positive, got {s}")));
    }
    if as_positive_integer(s).is_some() {
        return Ok((PowerVerdict::Guaranteed, WidthRule::IntegerPower));
    }
    if let Some((row, col)) = first_negative(a) {
        return Err(Error::NegativeEntryNonIntegerPower { row, col });
    }
    let threshold = k.saturating_sub(1).min(n.saturating_sub(2)) as f64;
    Ok(if k == 1 {
        (PowerVerdict::Guaranteed, WidthRule::Diagonal)
    } else if k == n && s >= (n - 2) as f64 {
        (PowerVerdict::Guaranteed, WidthRule::FitzgeraldHorn)
    } else if k == 2 && s >= 1.0 {
        (PowerVerdict::Guaranteed, WidthRule::Fw2RealPower)
    } else if s < threshold {
        (PowerVerdict::CounterexampleClass, WidthRule::BandedConverse)
    } else {
        (PowerVerdict::NotGuaranteed, WidthRule::Conjectural)
    })
}

fn first_negative(a: &SymMatrix) -> Option<(usize, usize)> {
    (0..a.n())
        .flat_map(|j| (0..=j).map(move |i| (i, j)))
        .find(|&(i, j)| a.get(i, j) < 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinimalPower {
    /// Least `m` with `A^{⊙m}` of factor width at most 2.
    pub m: usize,
    /// Largest `m'` such that every power in `m..=m'` passed.
    pub verified_through: usize,
}

/// Least integer power of `A` with factor width at most 2.
///
/// Powers are taken of the unit-diagonal scaling of `A`, which has the same
/// factor width at every power and keeps entries in `[0, 1]`. Once a power is
/// diagonally dominant every later power is too, so the scan stops there with
/// `verified_through = m_cap`.
pub fn minimal_power_to_fw2(
    a: &SymMatrix,
    m_cap: usize,
    cfg: &ToleranceConfig,
) -> Result<MinimalPower> {
    cfg.validate()?;
    if m_cap == 0 {
        return Err(Error::BadArgs("m_cap must be at least 1".into()));
    }
    let c = is_psd(a, cfg);
    if !c.success {
        return Err(Error::NotPsd {
            min_pivot: c.min_pivot,
        });
    }
    if first_negative(a).is_some() {
        return Err(Error::BadArgs(
            "matrix must be entrywise nonnegative".into(),
        ));
    }
    let n = a.n();
    for j in 0..n {
        for i in 0..j {
            let (aii, ajj, aij) = (a.get(i, i), a.get(j, j), a.get(i, j));
            if aii * ajj - aij * aij <= cfg.tol_psd * aii * ajj || aii <= 0.0 {
                return Err(Error::DegenerateSubmatrix { i, j });
            }
        }
    }
    let b = if n == 1 {
        a.clone()
    } else {
        diagonal_normalize(a, cfg)?.b
    };
    let mut first = None;
    for m in 1..=m_cap {
        let p = hadamard_power(&b, m as f64)?;
        if !factor_width_le_2(&p, cfg)? {
            if let Some(m0) = first {
                return Ok(MinimalPower {
                    m: m0,
                    verified_through: m - 1,
                });
            }
            continue;
        }
        let m0 = *first.get_or_insert(m);
        if is_diagonally_dominant(&p, 0.0) {
            return Ok(MinimalPower {
                m: m0,
                verified_through: m_cap,
            });
        }
    }
    match first {
        Some(m0) => Ok(MinimalPower {
            m: m0,
            verified_through: m_cap,
        }),
        None => Err(Error::CapExceeded { cap: m_cap }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HadamardOperation {
    Product,
    IntegerPower,
    RealPower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HadamardReport {
    pub operation: HadamardOperation,
    /// Factor-width upper bounds of the inputs.
    pub input_widths: Vec<usize>,
    /// Bound on `fran_k` of the result, when one follows.
    pub fran_bound: Option<usize>,
    /// Width the result is known to have, when one follows.
    pub width_claim: Option<usize>,
    pub rule: WidthRule,
    /// Whether the result passed the PSD test.
    pub psd_verdict: bool,
}

/// Width upper bound and best constructive bound on `fran` at that width.
fn width_and_fran(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<(usize, Option<usize>)> {
    let k = factor_width(a, cfg)?.hi;
    let up = fran_upper_bounds(a, k, cfg, &BoundsOptions::default())?;
    let best = up.iter().map(|b| b.value).min().filter(|&v| v > 0);
    Ok((k, best))
}

pub fn product_report(
    a: &SymMatrix,
    b: &SymMatrix,
    cfg: &ToleranceConfig,
) -> Result<HadamardReport> {
    cfg.validate()?;
    let p = hadamard_product(a, b)?;
    let (ka, ra) = width_and_fran(a, cfg)?;
    let (kb, rb) = width_and_fran(b, cfg)?;
    let fran_bound = match (ra, rb) {
        (Some(x), Some(y)) => Some(fran_product_bound(x, y)?),
        _ => None,
    };
    Ok(HadamardReport {
        operation: HadamardOperation::Product,
        input_widths: vec![ka, kb],
        fran_bound,
        width_claim: Some(ka.max(kb)),
        rule: WidthRule::ProductClosure,
        psd_verdict: is_psd(&p, cfg).success,
    })
}

pub fn power_report(a: &SymMatrix, s: f64, cfg: &ToleranceConfig) -> Result<HadamardReport> {
    cfg.validate()?;
    let p = hadamard_power(a, s)?;
    let (k, r) = width_and_fran(a, cfg)?;
    let (verdict, rule) = power_preserves_width(a, k, s)?;
    let integer = as_positive_integer(s);
    let fran_bound = match (integer, r) {
        (Some(m), Some(r)) => Some(
            usize::try_from(fran_power_bound(r as u64, m as u64)?)
                .map_err(|_| Error::Overflow("power bound".into()))?,
        ),
        _ => None,
    };
    Ok(HadamardReport {
        operation: if integer.is_some() {
            HadamardOperation::IntegerPower
        } else {
            HadamardOperation::RealPower
        },
        input_widths: vec![k],
        fran_bound,
        width_claim: (verdict == PowerVerdict::Guaranteed).then_some(k),
        rule,
        psd_verdict: is_psd(&p, cfg).success,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialVerdict {
    Member,
    NotMember,
    Undetermined,
}

/// One harness trial; a `not_member` verdict carries a verified witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Seed that regenerates this trial's matrix on its own.
    pub seed: u64,
    pub verdict: TrialVerdict,
    pub residual: f64,
    pub witness_inner_product: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureSearch {
    pub n: usize,
    pub k: usize,
    pub s: f64,
    pub tested: u64,
    pub counterexamples: Vec<TrialRecord>,
    pub records: Vec<TrialRecord>,
}

impl ConjectureSearch {
    /// One JSON object per trial, in trial order.
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }
}

/// Seed of trial `trial` under master seed `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng.next_u64()
}

/// Random nonnegative matrix of factor width at most `k`: a sum of between
/// `n` and `2n` outer products, each on a random `k`-subset with entries
/// uniform in `[0, 1)`.
pub fn random_nonnegative_fw(n: usize, k: usize, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = SymMatrix::zeros(n);
    for _ in 0..rng.gen_range(n..=2 * n) {
        let support = sample(&mut rng, n, k).into_vec();
        let vals: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        a.add_outer_sparse(&support, &vals);
    }
    a
}

/// Searches for `A` of factor width at most `k` with `A^{⊙s}` provably not of
/// width `k`, for non-integer `s >= min(k - 1, n - 2)`. Results do not depend
/// on the thread count.
pub fn conjecture_search(
    n: usize,
    k: usize,
    s: f64,
    trials: u64,
    seed: u64,
    cfg: &ToleranceConfig,
) -> Result<ConjectureSearch> {
    cfg.validate()?;
    if k < 2 || k > n {
        return Err(Error::BadK { k, n });
    }
    if n > MEMBERSHIP_N_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: MEMBERSHIP_N_LIMIT,
        });
    }
    let threshold = (k - 1).min(n - 2) as f64;
    if !s.is_finite() || s < threshold || as_positive_integer(s).is_some() {
        return Err(Error::BadRegime { s, threshold });
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| run_trial(n, k, s, trial, trial_seed(seed, trial), cfg))
        .collect::<Result<Vec<_>>>()?;
    let counterexamples = records
        .iter()
        .filter(|r| r.verdict == TrialVerdict::NotMember)
        .cloned()
        .collect();
    Ok(ConjectureSearch {
        n,
        k,
        s,
        tested: trials,
        counterexamples,
        records,
    })
}

fn run_trial(
    n: usize,
    k: usize,
    s: f64,
    trial: u64,
    seed: u64,
    cfg: &ToleranceConfig,
) -> Result<TrialRecord> {
    let a = random_nonnegative_fw(n, k, seed);
    let p = hadamard_power(&a, s)?;
    let (verdict, residual, witness_inner_product) = if !is_psd(&p, cfg).success {
        // Outside the PSD cone, so outside every factor-width cone.
        (TrialVerdict::NotMember, f64::NAN, None)
    } else {
        let v = membership(&p, k, cfg)?;
        let ip = match &v.certificate {
            Some(Certificate::Witness(w)) => Some(w.inner_product),
            _ => None,
        };
        let verdict = match v.status {
            MembershipStatus::Member => TrialVerdict::Member,
            MembershipStatus::NotMember => TrialVerdict::NotMember,
            MembershipStatus::Undetermined => TrialVerdict::Undetermined,
        };
        (verdict, v.distance_estimate, ip)
    };
    Ok(TrialRecord {
        trial,
        seed,
        verdict,
        residual,
        witness_inner_product,
    })
}
