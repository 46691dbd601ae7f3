//! Lower and upper bounds on the factor-width-`k` rank `fran_k(A)`, and the
//! exact case analysis for matrices of size at most 4.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::combin::binomial;
use crate::covering::{clique_cover_number, covering_number, schonheim_bound};
use crate::decomp::{
    decompose_arrowhead, decompose_banded, decompose_block_overlap, decompose_dd_equality,
    decompose_fw2_optimal, decompose_tridiagonal, detect_overlap_cuts,
};
use crate::error::{Error, Result};
use crate::matcore::{bandwidth, is_psd, nnz_stats, SymMatrix, ToleranceConfig};
use crate::specgraph::{
    min_bandwidth_permutation, next_permutation, support_graph, SupportGraph,
    DEFAULT_BANDWIDTH_LIMIT,
};
use crate::widthdec::{
    factor_width, factor_width_1, factor_width_le_2, membership, Certificate, Exactness,
    MembershipStatus, MEMBERSHIP_N_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Rank,
    Nnzu,
    Covering,
    Schonheim,
    Cliquecover,
    KBinomial,
    Caratheodory,
    Banded,
    BandedPermuted,
    Tridiagonal,
    Arrowhead,
    DdEquality,
    Fw2Optimal,
    BlockOverlap,
    Membership,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub source: BoundSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
    /// Set when the best lower and upper bounds meet.
    pub exact: Option<usize>,
}

impl BoundsReport {
    pub fn best_lower(&self) -> usize {
        self.lower.iter().map(|b| b.value).max().unwrap_or(0)
    }

    pub fn best_upper(&self) -> usize {
        self.upper
            .iter()
            .map(|b| b.value)
            .min()
            .unwrap_or(usize::MAX)
    }
}

/// Options for the combinatorial and iterative parts of the bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsOptions {
    /// Node budget for the covering and clique-cover searches.
    pub budget: u64,
    /// Run general-`k` membership for an extra upper bound.
    pub membership: bool,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            budget: crate::covering::DEFAULT_BUDGET,
            membership: true,
        }
    }
}

fn require_psd(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<()> {
    let c = is_psd(a, cfg);
    if c.success {
        Ok(())
    } else {
        Err(Error::NotPsd {
            min_pivot: c.min_pivot,
        })
    }
}

/// Certified lower bounds, for `A` of factor width at most `k` (`k` is
/// clamped to `n`).
pub fn fran_lower_bounds(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
) -> Result<Vec<Bound>> {
    require_psd(a, cfg)?;
    let n = a.n();
    let k = k.clamp(1, n);
    let c = is_psd(a, cfg);
    let mut out = vec![Bound {
        value: c.rank,
        source: BoundSource::Rank,
    }];
    if k >= 2 {
        let nnzu = nnz_stats(a, cfg).nnzu;
        out.push(Bound {
            value: (2 * nnzu).div_ceil(k * (k - 1)),
            source: BoundSource::Nnzu,
        });
        if a.all_offdiag_nonzero(cfg) && n >= 2 {
            match covering_number(n, k, opts.budget) {
                Ok(r) if r.certified => out.push(Bound {
                    value: r.value,
                    source: BoundSource::Covering,
                }),
                _ => out.push(Bound {
                    value: schonheim_bound(n, k)?,
                    source: BoundSource::Schonheim,
                }),
            }
        }
        let g = support_graph(a, cfg);
        if let Ok(r) = clique_cover_number(&g, k, opts.budget) {
            if r.certified {
                out.push(Bound {
                    value: r.value,
                    source: BoundSource::Cliquecover,
                });
            }
        }
    }
    Ok(out)
}

/// Vertex adjacent to every edge, if the support graph is a star (or edgeless).
pub(crate) fn star_center(g: &SupportGraph) -> Option<usize> {
    let edges = g.edges();
    let Some(&(u, v)) = edges.first() else {
        return Some(0);
    };
    [u, v]
        .into_iter()
        .find(|&h| edges.iter().all(|&(i, j)| i == h || j == h))
}

/// First permutation (lexicographically) putting the support into a chain of
/// overlapping blocks with at least one cut.
pub(crate) fn overlap_permutation(
    a: &SymMatrix,
    cfg: &ToleranceConfig,
) -> Option<(Vec<usize>, Vec<usize>)> {
    const LIMIT: usize = 6;
    let n = a.n();
    if n > LIMIT {
        return detect_overlap_cuts(a, cfg)
            .filter(|c| !c.is_empty())
            .map(|c| ((0..n).collect(), c));
    }
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if let Some(cuts) = detect_overlap_cuts(&a.permuted(&p), cfg) {
            if !cuts.is_empty() {
                return Some((p, cuts));
            }
        }
        if !next_permutation(&mut p) {
            return None;
        }
    }
}

/// Upper bounds from counting and from every constructive decomposition that
/// applies, for `A` of factor width at most `k` (`k` is clamped to `n`).
pub fn fran_upper_bounds(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
) -> Result<Vec<Bound>> {
    require_psd(a, cfg)?;
    let n = a.n();
    let k = k.clamp(1, n);
    let mut out = Vec::new();
    let mut push = |value: usize, source| out.push(Bound { value, source });
    if let Some(v) = binomial(n as u64, k as u64).and_then(|c| c.checked_mul(k as u64)) {
        push(v as usize, BoundSource::KBinomial);
    }
    push(n * (n + 1) / 2, BoundSource::Caratheodory);
    if bandwidth(a, cfg) <= k {
        if let Ok(d) = decompose_banded(a, k, cfg) {
            push(d.term_count(), BoundSource::Banded);
        }
    } else if let Ok(p) = min_bandwidth_permutation(a, DEFAULT_BANDWIDTH_LIMIT, cfg) {
        if p.band <= k {
            if let Ok(d) = decompose_banded(&a.permuted(&p.perm), k, cfg) {
                push(d.term_count(), BoundSource::BandedPermuted);
            }
        }
    }
    if k >= 2 {
        if let Ok(d) = decompose_tridiagonal(a, cfg) {
            push(d.term_count(), BoundSource::Tridiagonal);
        }
        if let Some(h) = star_center(&support_graph(a, cfg)) {
            let perm: Vec<usize> = std::iter::once(h)
                .chain((0..n).filter(|&i| i != h))
                .collect();
            if let Ok(d) = decompose_arrowhead(&a.permuted(&perm), cfg) {
                push(d.term_count(), BoundSource::Arrowhead);
            }
        }
        if let Ok(d) = decompose_dd_equality(a, cfg) {
            push(d.term_count(), BoundSource::DdEquality);
        }
        if let Ok(d) = decompose_fw2_optimal(a, cfg) {
            push(d.term_count(), BoundSource::Fw2Optimal);
        }
        if let Some((perm, cuts)) = overlap_permutation(a, cfg) {
            if let Ok(d) = decompose_block_overlap(&a.permuted(&perm), &cuts, cfg) {
                push(d.term_count(), BoundSource::BlockOverlap);
            }
        }
    }
    if opts.membership && n <= MEMBERSHIP_N_LIMIT {
        if let Ok(v) = membership(a, k, cfg) {
            if let Some(Certificate::Decomposition(d)) = v.certificate {
                push(d.term_count(), BoundSource::Membership);
            }
        }
    }
    Ok(out)
}

/// Checks that `A` has factor width at most `k` wherever that is cheap or
/// already implied: exactly for `k <= 2`, by a verified witness otherwise.
fn check_width_at_most(a: &SymMatrix, k: usize, cfg: &ToleranceConfig) -> Result<()> {
    let ok = match k {
        1 => factor_width_1(a, cfg)?,
        2 => factor_width_le_2(a, cfg)?,
        _ if k >= a.n() || a.n() > MEMBERSHIP_N_LIMIT => true,
        _ => membership(a, k, cfg)?.status != MembershipStatus::NotMember,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::BadArgs(format!(
            "matrix does not have factor width at most {k}"
        )))
    }
}

/// Every available bound on `fran_k(A)`, collapsed to an exact value when the
/// best lower and upper bounds meet.
pub fn bounds_report(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
) -> Result<BoundsReport> {
    cfg.validate()?;
    require_psd(a, cfg)?;
    let k = k.clamp(1, a.n());
    check_width_at_most(a, k, cfg)?;
    let mut r = BoundsReport {
        k,
        lower: fran_lower_bounds(a, k, cfg, opts)?,
        upper: fran_upper_bounds(
            a,
            k,
            cfg,
            &BoundsOptions {
                membership: opts.membership && k > 2,
                ..*opts
            },
        )?,
        exact: None,
    };
    if r.best_lower() == r.best_upper() {
        r.exact = Some(r.best_lower());
    }
    Ok(r)
}

/// Exact value, or the best bracket when no rule settles it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallFran {
    Exact(usize),
    Range(usize, usize),
}

impl Serialize for SmallFran {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        match *self {
            SmallFran::Exact(v) => m.serialize_entry("exact", &v)?,
            SmallFran::Range(lo, hi) => m.serialize_entry("range", &[lo, hi])?,
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallFranReport {
    pub k: usize,
    pub result: SmallFran,
    /// Rules applied, in order.
    pub trace: Vec<String>,
}

/// Support patterns of 4x4 factor-width-2 matrices not settled by the
/// all-nonzero or permuted-tridiagonal rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pattern4 {
    Diamond,
    Paw,
    Cycle,
    Star,
    TriangleAndPoint,
}

impl Pattern4 {
    const ALL: [Pattern4; 5] = [
        Pattern4::Diamond,
        Pattern4::Paw,
        Pattern4::Cycle,
        Pattern4::Star,
        Pattern4::TriangleAndPoint,
    ];

    fn name(self) -> &'static str {
        match self {
            Pattern4::Diamond => "pentadiagonal",
            Pattern4::Paw => "overlapping blocks",
            Pattern4::Cycle => "cyclic tridiagonal",
            Pattern4::Star => "arrowhead",
            Pattern4::TriangleAndPoint => "block diagonal",
        }
    }

    fn template(self) -> SupportGraph {
        let edges: &[(usize, usize)] = match self {
            Pattern4::Diamond => &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            Pattern4::Paw => &[(0, 1), (1, 2), (1, 3), (2, 3)],
            Pattern4::Cycle => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern4::Star => &[(0, 1), (0, 2), (0, 3)],
            Pattern4::TriangleAndPoint => &[(1, 2), (1, 3), (2, 3)],
        };
        SupportGraph::new(4, edges).expect("valid template")
    }
}

/// Template matched by `g` and the first relabeling `p` with
/// `g.relabeled(p) == template`.
fn match_pattern4(g: &SupportGraph) -> Option<(Pattern4, Vec<usize>)> {
    for pat in Pattern4::ALL {
        let t = pat.template();
        let mut p: Vec<usize> = (0..4).collect();
        loop {
            if g.relabeled(&p) == t {
                return Some((pat, p));
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
    }
    None
}

/// True when the graph is a disjoint union of paths.
fn is_path_forest(g: &SupportGraph) -> bool {
    (0..g.n()).all(|v| g.degree(v) <= 2)
        && g.components()
            .iter()
            .all(|c| g.induced(c).edge_count() + 1 == c.len())
}

/// Exact `fran_k(A)` for `n <= 4` at `k` equal to the factor width of `A`.
pub fn fran_exact_small(
    a: &SymMatrix,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
) -> Result<SmallFranReport> {
    let n = a.n();
    if n > 4 {
        return Err(Error::TooLarge { n, limit: 4 });
    }
    let fw = factor_width(a, cfg)?;
    if fw.lo < fw.hi {
        let r = bounds_report(a, fw.hi, cfg, opts)?;
        return Ok(SmallFranReport {
            k: fw.hi,
            result: SmallFran::Range(r.best_lower(), r.best_upper()),
            trace: vec![format!(
                "factor width undetermined in [{}, {}]: bounds at k = {}",
                fw.lo, fw.hi, fw.hi
            )],
        });
    }
    let mut rep = fran_exact_small_k(a, fw.k, cfg, opts)?;
    let how = match fw.exactness {
        Exactness::Exact => "exact",
        Exactness::Numeric => "numeric",
    };
    rep.trace
        .insert(0, format!("factor width {} ({how})", fw.k));
    Ok(rep)
}

/// Exact `fran_k(A)` for `n <= 4` and any `k` at least the factor width of `A`.
pub fn fran_exact_small_k(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
) -> Result<SmallFranReport> {
    let n = a.n();
    if n > 4 {
        return Err(Error::TooLarge { n, limit: 4 });
    }
    if k == 0 {
        return Err(Error::BadK { k, n });
    }
    require_psd(a, cfg)?;
    let k = k.min(n);
    check_width_at_most(a, k, cfg)?;
    let rank = is_psd(a, cfg).rank;
    let nnzu = nnz_stats(a, cfg).nnzu;
    let mut trace = Vec::new();
    let exact = |v: usize, rule: String, mut trace: Vec<String>| {
        trace.push(rule);
        Ok(SmallFranReport {
            k,
            result: SmallFran::Exact(v),
            trace,
        })
    };
    if n <= 2 || k == 1 || k == n {
        return exact(
            rank,
            format!("n = {n}, k = {k}: fran = rank = {rank}"),
            trace,
        );
    }
    let all_nonzero = a.all_offdiag_nonzero(cfg);
    if n == 3 {
        // k = 2 here.
        return if all_nonzero {
            exact(
                3,
                "n = 3, k = 2, no zero entries: fran = nnzu = 3".into(),
                trace,
            )
        } else {
            exact(
                rank,
                format!("n = 3, k = 2, permutable to tridiagonal: fran = rank = {rank}"),
                trace,
            )
        };
    }
    // n = 4.
    if k == 3 {
        if !all_nonzero {
            return exact(
                rank,
                format!("n = 4, k = 3, a zero entry allows bandwidth 3: fran = rank = {rank}"),
                trace,
            );
        }
        return range_from_bounds(
            a,
            k,
            cfg,
            opts,
            "n = 4, k = 3, no zero entries".into(),
            trace,
        );
    }
    // k = 2.
    if all_nonzero {
        return exact(
            6,
            "n = 4, k = 2, no zero entries: fran = nnzu = 6".into(),
            trace,
        );
    }
    let g = support_graph(a, cfg);
    if is_path_forest(&g) {
        return exact(
            rank,
            format!("n = 4, k = 2, permutable to tridiagonal: fran = rank = {rank}"),
            trace,
        );
    }
    let (pat, perm) = match_pattern4(&g).expect("every 4-vertex graph is classified");
    let label = format!(
        "n = 4, k = 2, {} pattern (order {:?})",
        pat.name(),
        one_based(&perm)
    );
    match pat {
        Pattern4::Paw => exact(nnzu, format!("{label}: fran = nnzu = {nnzu}"), trace),
        Pattern4::Star => exact(rank, format!("{label}: fran = rank = {rank}"), trace),
        Pattern4::TriangleAndPoint => {
            trace.push(format!("{label}: fran = sum over diagonal blocks"));
            let mut total = 0;
            for comp in g.components() {
                let sub = fran_exact_small_k(&a.principal(&comp), k.min(comp.len()), cfg, opts)?;
                trace.extend(
                    sub.trace
                        .iter()
                        .map(|t| format!("block {:?}: {t}", one_based(&comp))),
                );
                match sub.result {
                    SmallFran::Exact(v) => total += v,
                    SmallFran::Range(..) => unreachable!("blocks of size at most 3 are exact"),
                }
            }
            Ok(SmallFranReport {
                k,
                result: SmallFran::Exact(total),
                trace,
            })
        }
        Pattern4::Diamond | Pattern4::Cycle => range_from_bounds(a, k, cfg, opts, label, trace),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn range_from_bounds(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    opts: &BoundsOptions,
    label: String,
    mut trace: Vec<String>,
) -> Result<SmallFranReport> {
    let r = bounds_report(a, k, cfg, opts)?;
    let (lo, hi) = (r.best_lower(), r.best_upper());
    let source = |bs: &[Bound], v: usize| {
        bs.iter()
            .find(|b| b.value == v)
            .map(|b| format!("{:?}", b.source).to_lowercase())
            .unwrap_or_default()
    };
    let detail = format!(
        "lower {lo} ({}), upper {hi} ({})",
        source(&r.lower, lo),
        source(&r.upper, hi)
    );
    let result = if lo == hi {
        trace.push(format!("{label}: bounds meet, {detail}"));
        SmallFran::Exact(lo)
    } else {
        trace.push(format!("{label}: no exact rule, {detail}"));
        SmallFran::Range(lo, hi)
    };
    Ok(SmallFranReport { k, result, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::m;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn opts() -> BoundsOptions {
        BoundsOptions::default()
    }

    fn values(bs: &[Bound], src: BoundSource) -> Vec<usize> {
        bs.iter()
            .filter(|b| b.source == src)
            .map(|b| b.value)
            .collect()
    }

    /// Unit-free pattern matrix: diagonal `d`, `off` on listed edges.
    fn patterned(n: usize, edges: &[(usize, usize)], d: f64, off: f64) -> SymMatrix {
        let g = SupportGraph::new(n, edges).unwrap();
        SymMatrix::from_fn(n, |i, j| {
            if i == j {
                d
            } else if g.has_edge(i, j) {
                off
            } else {
                0.0
            }
        })
    }

    #[test]
    fn lower_bound_examples() {
        let a = SymMatrix::from_fn(4, |i, j| if i == j { 3.5 } else { 1.0 });
        let lo = fran_lower_bounds(&a, 2, &cfg(), &opts()).unwrap();
        assert_eq!(values(&lo, BoundSource::Nnzu), vec![6]);
        let q3 = SupportGraph::hypercube(3);
        let a = patterned(8, &q3.edges(), 4.0, 1.0);
        let lo = fran_lower_bounds(&a, 3, &cfg(), &opts()).unwrap();
        assert_eq!(values(&lo, BoundSource::Cliquecover), vec![6]);
        let lo = fran_lower_bounds(&SymMatrix::identity(3), 2, &cfg(), &opts()).unwrap();
        assert_eq!(values(&lo, BoundSource::Rank), vec![3]);
        assert_eq!(values(&lo, BoundSource::Nnzu), vec![0]);
    }

    #[test]
    fn upper_bound_examples() {
        let a = SymMatrix::from_fn(4, |i, j| if i == j { 3.5 } else { 1.0 });
        let up = fran_upper_bounds(&a, 2, &cfg(), &opts()).unwrap();
        assert_eq!(values(&up, BoundSource::KBinomial), vec![12]);
        assert_eq!(values(&up, BoundSource::Caratheodory), vec![10]);
        let t5 = SymMatrix::from_fn(5, |i, j| {
            if i == j {
                2.0
            } else if j - i == 1 {
                1.0
            } else {
                0.0
            }
        });
        let up = fran_upper_bounds(&t5, 2, &cfg(), &opts()).unwrap();
        assert_eq!(values(&up, BoundSource::Tridiagonal), vec![5]);
        let a = m(&[&[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 1.0, 2.0]]);
        let r = bounds_report(&a, 2, &cfg(), &opts()).unwrap();
        assert_eq!(r.exact, Some(3));
    }

    #[test]
    fn report_rejects_wrong_width() {
        assert!(matches!(
            bounds_report(&SymMatrix::ones(3), 2, &cfg(), &opts()),
            Err(Error::BadArgs(_))
        ));
    }

    #[test]
    fn pattern_matching_is_up_to_relabeling() {
        let g = SupportGraph::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(match_pattern4(&g).unwrap().0, Pattern4::Star);
        let g = SupportGraph::new(4, &[(0, 2), (1, 3), (0, 1), (2, 3)]).unwrap();
        assert_eq!(match_pattern4(&g).unwrap().0, Pattern4::Cycle);
        assert!(is_path_forest(
            &SupportGraph::new(4, &[(0, 2), (1, 3)]).unwrap()
        ));
        assert!(!is_path_forest(&SupportGraph::cycle(4)));
    }

    #[test]
    fn small_three_by_three() {
        // One zero entry, rank 2: (1,1,0) and (0,1,1).
        let a = m(&[&[1.0, 1.0, 0.0], &[1.0, 2.0, 1.0], &[0.0, 1.0, 1.0]]);
        let r = fran_exact_small(&a, &cfg(), &opts()).unwrap();
        assert_eq!(r.result, SmallFran::Exact(2));
    }

    #[test]
    fn small_four_by_four_patterns() {
        let star = patterned(4, &[(0, 1), (0, 2), (0, 3)], 2.0, 1.0);
        assert_eq!(
            fran_exact_small(&star, &cfg(), &opts()).unwrap().result,
            SmallFran::Exact(4)
        );
        let cyc = patterned(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], 3.0, 1.0);
        let r = fran_exact_small(&cyc, &cfg(), &opts()).unwrap();
        assert!(matches!(r.result, SmallFran::Range(4, _)), "{r:?}");
        let paw = patterned(4, &[(0, 1), (1, 2), (1, 3), (2, 3)], 3.0, 1.0);
        assert_eq!(
            fran_exact_small(&paw, &cfg(), &opts()).unwrap().result,
            SmallFran::Exact(4)
        );
        let block = patterned(4, &[(1, 2), (1, 3), (2, 3)], 3.0, 1.0);
        let r = fran_exact_small(&block, &cfg(), &opts()).unwrap();
        assert_eq!(r.result, SmallFran::Exact(4));
        let diamond = patterned(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], 3.0, 1.0);
        assert_eq!(
            fran_exact_small(&diamond, &cfg(), &opts()).unwrap().result,
            SmallFran::Exact(5)
        );
    }

    #[test]
    fn small_rejects_large() {
        assert_eq!(
            fran_exact_small(&SymMatrix::identity(5), &cfg(), &opts()).unwrap_err(),
            Error::TooLarge { n: 5, limit: 4 }
        );
    }

    #[test]
    fn small_json_shape() {
        let r = fran_exact_small(&SymMatrix::identity(2), &cfg(), &opts()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["result"]["exact"], 2);
        let j = serde_json::to_value(SmallFran::Range(3, 10)).unwrap();
        assert_eq!(j["range"], serde_json::json!([3, 10]));
    }
}
