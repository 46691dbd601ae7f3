//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use fwrank::bounds::{fran_exact_small, fran_lower_bounds, BoundSource, BoundsOptions, SmallFran};
use fwrank::covering::{clique_cover_number, covering_number, schonheim_bound, DEFAULT_BUDGET};
use fwrank::decomp::{
    adjust_3x3_diagonal, decompose_arrowhead, decompose_banded, decompose_fw2_optimal,
    decompose_tridiagonal, FWDecomposition,
};
use fwrank::hadamard::{fran_product_bound, minimal_power_to_fw2, DEFAULT_M_CAP};
use fwrank::matcore::{hadamard_power, hadamard_product, is_psd, relative_residual};
use fwrank::specgraph::SupportGraph;
use fwrank::widthdec::{
    factor_width, factor_width_le_2, membership, verify_dual_witness, Certificate, MembershipStatus,
};
use fwrank::{Error, SymMatrix, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn from_rows(rows: &[&[f64]]) -> SymMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    SymMatrix::from_rows(&rows).expect("symmetric fixture")
}

fn gram(g: &[Vec<f64>]) -> SymMatrix {
    SymMatrix::from_fn(g.len(), |i, j| {
        g[i].iter().zip(&g[j]).map(|(x, y)| x * y).sum()
    })
}

fn check_decomp(
    a: &SymMatrix,
    d: &FWDecomposition,
    terms: usize,
    what: &str,
) -> Result<(), String> {
    ensure(d.term_count() == terms, || {
        format!(
            "{what}: {} terms, expected {terms} for {a:?}",
            d.term_count()
        )
    })?;
    let r = relative_residual(a, &d.reconstruct());
    ensure(r <= 1e-8, || format!("{what}: residual {r:e}"))
}

/// Alternates generic Gram matrices of rank 1..5 with perturbed diagonally
/// dominant ones, whose diagonals straddle the dominance boundary.
fn criterion_1() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t0 = Instant::now();
    let (mut samples, mut disagree, mut undetermined) = (0, 0, 0);
    while samples < 200 {
        let a = if samples % 2 == 0 {
            let r = rng.gen_range(1..=5);
            let g: Vec<Vec<f64>> = (0..5)
                .map(|_| (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            gram(&g)
        } else {
            let mut a = SymMatrix::from_fn(5, |i, j| {
                if i == j {
                    0.0
                } else {
                    rng.gen_range(-1.0..1.0)
                }
            });
            for i in 0..5 {
                let s: f64 = (0..5).filter(|&j| j != i).map(|j| a.get(i, j).abs()).sum();
                a.set(i, i, s * rng.gen_range(0.7..1.3));
            }
            a
        };
        if !is_psd(&a, &cfg).success {
            continue;
        }
        samples += 1;
        let exact = factor_width_le_2(&a, &cfg).map_err(|e| e.to_string())?;
        match membership(&a, 2, &cfg).map_err(|e| e.to_string())?.status {
            MembershipStatus::Undetermined => undetermined += 1,
            MembershipStatus::Member if !exact => disagree += 1,
            MembershipStatus::NotMember if exact => disagree += 1,
            _ => {}
        }
    }
    let el = t0.elapsed();
    ensure(
        disagree == 0 && undetermined == 0 && el < Duration::from_secs(60),
        || format!("{disagree} disagreements, {undetermined} undetermined, {el:.2?}"),
    )?;
    Ok(format!(
        "200 samples, 0 disagreements, 0 undetermined, {el:.2?}"
    ))
}

/// `L Lᵀ` with `L` lower bidiagonal; zeroed columns drop the rank by one each.
fn criterion_2() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut deficient = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let mut l = vec![vec![0.0; n]; n];
        let mut rank = 0;
        for j in 0..n {
            if n > 1 && rng.gen_bool(0.25) {
                continue;
            }
            rank += 1;
            l[j][j] = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            if j + 1 < n {
                l[j + 1][j] = rng.gen_range(-2.0..2.0);
            }
        }
        deficient += usize::from(rank < n);
        let a = gram(&l);
        let t = decompose_tridiagonal(&a, &cfg).map_err(|e| format!("tridiagonal: {e}"))?;
        check_decomp(&a, &t, rank, "tridiagonal")?;
        let b = decompose_banded(&a, n.min(2), &cfg).map_err(|e| format!("banded: {e}"))?;
        check_decomp(&a, &b, rank, "banded")?;
    }
    Ok(format!(
        "100 matrices ({deficient} rank-deficient), term count = rank"
    ))
}

fn random_dd(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let mut a = SymMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            rng.gen_range(0.1..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }
        }
    });
    for i in 0..n {
        let s: f64 = (0..n).filter(|&j| j != i).map(|j| a.get(i, j).abs()).sum();
        a.set(i, i, s * rng.gen_range(1.0..1.5));
    }
    a
}

fn criterion_3() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..50 {
        let n = 4 + t % 2;
        let a = random_dd(n, &mut rng);
        let pairs = n * (n - 1) / 2;
        let d = decompose_fw2_optimal(&a, &cfg).map_err(|e| e.to_string())?;
        check_decomp(&a, &d, pairs, "fw2 optimal")?;
        let lower =
            fran_lower_bounds(&a, 2, &cfg, &BoundsOptions::default()).map_err(|e| e.to_string())?;
        let nnzu = lower
            .iter()
            .find(|b| b.source == BoundSource::Nnzu)
            .map(|b| b.value);
        ensure(nnzu == Some(pairs), || {
            format!("nnzu lower bound {nnzu:?}, expected {pairs}")
        })?;
    }
    Ok("50 matrices, n(n-1)/2 terms, gap to the nnzu lower bound 0".into())
}

fn criterion_4() -> Outcome {
    let cfg = cfg();
    let r = 0.5f64.sqrt();
    let mut worst = 0.0f64;
    for t in 1..=20 {
        let target = 1.0 + 49.0 * t as f64 / 20.0;
        let vs =
            adjust_3x3_diagonal(0.5, 0.5, 0.5, r, r, r, target, &cfg).map_err(|e| e.to_string())?;
        let mut sum = SymMatrix::zeros(3);
        for v in &vs {
            sum.add_outer_sparse(v.support(), v.values());
        }
        let goal = SymMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 0) => target,
            (i, j) if i == j => 1.0,
            _ => 0.5,
        });
        let res = relative_residual(&goal, &sum);
        ensure(res <= 1e-8, || format!("target {target}: residual {res:e}"))?;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let dev = (sum.get(i, j) - 0.5).abs();
            ensure(dev <= 1e-10, || {
                format!("target {target}: entry ({i}, {j}) moved by {dev:e}")
            })?;
        }
        worst = worst.max(res);
    }
    Ok(format!("20 targets in (1, 50], worst residual {worst:.1e}"))
}

/// Head entry `Σ c_i²/d_i + δ`: singular when `δ = 0`, rank `n` otherwise.
fn criterion_5() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut singular = 0;
    for t in 0..50 {
        let n = rng.gen_range(2..=8);
        let mut a = SymMatrix::zeros(n);
        let mut head = 0.0;
        for i in 1..n {
            let d = rng.gen_range(0.5..3.0);
            let c = rng.gen_range(-2.0..2.0);
            a.set(i, i, d);
            a.set(0, i, c);
            head += c * c / d;
        }
        let delta = if t % 2 == 0 {
            0.0
        } else {
            rng.gen_range(0.1..2.0)
        };
        a.set(0, 0, head + delta);
        let rank = if delta == 0.0 { n - 1 } else { n };
        singular += usize::from(delta == 0.0);
        let d = decompose_arrowhead(&a, &cfg).map_err(|e| e.to_string())?;
        check_decomp(&a, &d, rank, "arrowhead")?;
    }
    Ok(format!(
        "50 arrowheads ({singular} singular), term count = rank"
    ))
}

fn criterion_6() -> Outcome {
    let t0 = Instant::now();
    let g = SupportGraph::hypercube(3);
    let r = clique_cover_number(&g, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let el = t0.elapsed();
    ensure(r.value == 6 && r.certified, || {
        format!("value {} certified {}", r.value, r.certified)
    })?;
    let cliques = &r.cover.cliques;
    ensure(cliques.len() == 6, || {
        format!("{} cliques returned", cliques.len())
    })?;
    for c in cliques {
        let distinct = c.windows(2).all(|w| w[0] < w[1]);
        ensure(c.len() == 3 && distinct && c.iter().all(|&v| v < 8), || {
            format!("{c:?} is not a 3-subset")
        })?;
    }
    for (u, v) in g.edges() {
        ensure(
            cliques.iter().any(|c| c.contains(&u) && c.contains(&v)),
            || format!("edge ({u}, {v}) uncovered"),
        )?;
    }
    ensure(el < Duration::from_secs(10), || format!("took {el:.2?}"))?;
    Ok(format!("cc_3(Q_3) = 6, certified, cover audited, {el:.2?}"))
}

fn criterion_7() -> Outcome {
    // Published covering numbers C(n, 3, 2).
    const KNOWN: [usize; 7] = [1, 3, 4, 6, 7, 11, 12];
    let t0 = Instant::now();
    for n in 3..=9 {
        let r = covering_number(n, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let s = schonheim_bound(n, 3).map_err(|e| e.to_string())?;
        ensure(r.certified && r.value == s && s == KNOWN[n - 3], || {
            format!(
                "n = {n}: value {} certified {} schonheim {s}",
                r.value, r.certified
            )
        })?;
        let blocks = &r.design.blocks;
        for i in 0..n {
            for j in i + 1..n {
                ensure(
                    blocks.iter().any(|b| b.contains(&i) && b.contains(&j)),
                    || format!("n = {n}: pair ({i}, {j}) uncovered"),
                )?;
            }
        }
    }
    let el = t0.elapsed();
    ensure(el < Duration::from_secs(300), || format!("took {el:.2?}"))?;
    Ok(format!(
        "C(n, 3, 2) = Schonheim bound for n = 3..9, {el:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let cfg = cfg();
    let a = from_rows(&[
        &[2.0, 1.0, 2.0, 1.0, 0.0],
        &[1.0, 1.0, 1.0, 1.0, 0.0],
        &[2.0, 1.0, 2.0, 1.0, 0.0],
        &[1.0, 1.0, 1.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    let b = from_rows(&[
        &[2.0, 0.0, 1.0, -1.0, 0.0],
        &[0.0, 2.0, 1.0, 1.0, 0.0],
        &[1.0, 1.0, 1.0, 0.0, 0.0],
        &[-1.0, 1.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    let p = hadamard_product(&a, &b).map_err(|e| e.to_string())?;
    let ranks = [
        is_psd(&a, &cfg).rank,
        is_psd(&b, &cfg).rank,
        is_psd(&p, &cfg).rank,
    ];
    ensure(ranks == [2, 2, 4], || format!("ranks {ranks:?}"))?;
    let bound = fran_product_bound(2, 2).map_err(|e| e.to_string())?;
    ensure(bound == 4, || format!("product bound {bound}"))?;
    let v = membership(&p, 4, &cfg).map_err(|e| e.to_string())?;
    let size = match &v.certificate {
        Some(Certificate::Decomposition(d)) => d.term_count(),
        _ => return Err(format!("no decomposition certificate: {:?}", v.status)),
    };
    ensure(size == 4, || format!("certificate has {size} terms"))?;
    Ok("ranks 2, 2, 4; product bound 4 attained by a 4-term certificate".into())
}

/// Gram matrices of nonnegative unit vectors, resampled until every
/// off-diagonal lies in (0, 0.95). Cross-checks `M` against membership.
fn criterion_9() -> Outcome {
    let cfg = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ms = Vec::new();
    while ms.len() < 20 {
        let n = rng.gen_range(3..=6);
        let g: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter().map(|x| x / norm).collect()
            })
            .collect();
        let a = gram(&g);
        let ok = (0..n).all(|i| (0..i).all(|j| a.get(i, j) > 0.0 && a.get(i, j) < 0.95));
        if !ok {
            continue;
        }
        let r = minimal_power_to_fw2(&a, DEFAULT_M_CAP, &cfg).map_err(|e| e.to_string())?;
        ensure(
            r.m <= DEFAULT_M_CAP && r.verified_through >= r.m + 5,
            || format!("{r:?}"),
        )?;
        let at = membership(&hadamard_power(&a, r.m as f64).unwrap(), 2, &cfg)
            .unwrap()
            .status;
        ensure(at == MembershipStatus::Member, || {
            format!("power {} is {at:?}", r.m)
        })?;
        if r.m > 1 {
            let before = membership(&hadamard_power(&a, (r.m - 1) as f64).unwrap(), 2, &cfg)
                .unwrap()
                .status;
            ensure(before == MembershipStatus::NotMember, || {
                format!("power {} is {before:?}", r.m - 1)
            })?;
        }
        ms.push(r.m);
    }
    let j3 = minimal_power_to_fw2(&SymMatrix::ones(3), DEFAULT_M_CAP, &cfg);
    ensure(matches!(j3, Err(Error::DegenerateSubmatrix { .. })), || {
        format!("J_3 gave {j3:?}")
    })?;
    Ok(format!(
        "20 matrices, M in {}..={}, tails verified; J_3 degenerate",
        ms.iter().min().unwrap(),
        ms.iter().max().unwrap()
    ))
}

fn criterion_10() -> Outcome {
    let cfg = cfg();
    let opts = BoundsOptions::default();
    let pattern = |edges: &[(usize, usize)], diag: [f64; 4]| {
        let g = SupportGraph::new(4, edges).unwrap();
        SymMatrix::from_fn(4, |i, j| {
            if i == j {
                diag[i]
            } else if g.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    };
    // Path-patterned Gram matrix of four vectors in R^3, rank 3, then relabeled.
    let l = [
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0],
    ];
    let tri = gram(&l.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let tri = tri.permuted(&[2, 0, 3, 1]);
    // Hub at index 3; head entry makes it singular: 3 * (1/2) = 1.5.
    let arrow = pattern(&[(0, 3), (1, 3), (2, 3)], [2.0, 2.0, 2.0, 1.5]);
    let fixtures: [(&str, SymMatrix, SmallFran, &str); 6] = [
        (
            "all-nonzero",
            SymMatrix::from_fn(4, |i, j| if i == j { 3.5 } else { 1.0 }),
            SmallFran::Exact(6),
            "no zero entries",
        ),
        (
            "tridiagonal-permutable",
            tri,
            SmallFran::Exact(3),
            "tridiagonal",
        ),
        (
            "overlap",
            pattern(&[(0, 2), (2, 1), (2, 3), (1, 3)], [2.0, 3.0, 3.0, 3.0]),
            SmallFran::Exact(4),
            "overlapping blocks",
        ),
        (
            "cyclic",
            pattern(&[(0, 1), (1, 3), (3, 2), (2, 0)], [3.0; 4]),
            SmallFran::Range(0, 0),
            "cyclic",
        ),
        ("arrowhead", arrow, SmallFran::Exact(3), "arrowhead"),
        (
            "block-diagonal",
            pattern(&[(0, 1), (0, 3), (1, 3)], [3.0; 4]),
            SmallFran::Exact(4),
            "block diagonal",
        ),
    ];
    for (name, a, want, rule) in fixtures {
        let r = fran_exact_small(&a, &cfg, &opts).map_err(|e| format!("{name}: {e}"))?;
        let ok = match (want, r.result) {
            (SmallFran::Range(..), SmallFran::Range(lo, hi)) => lo < hi,
            (w, got) => w == got,
        };
        ensure(ok, || {
            format!("{name}: got {:?}, expected {want:?}", r.result)
        })?;
        ensure(r.trace.iter().any(|t| t.contains(rule)), || {
            format!("{name}: trace {:?}", r.trace)
        })?;
    }
    Ok("6 pattern fixtures: 6, rank, 4, range, rank, block sum; rules traced".into())
}

fn criterion_11() -> Outcome {
    let cfg = cfg();
    let j3 = SymMatrix::ones(3);
    let v = membership(&j3, 2, &cfg).map_err(|e| e.to_string())?;
    ensure(v.status == MembershipStatus::NotMember, || {
        format!("J_3 status {:?}", v.status)
    })?;
    let Some(Certificate::Witness(w)) = &v.certificate else {
        return Err("no witness for J_3".into());
    };
    ensure(verify_dual_witness(&j3, w, 2, &cfg), || {
        "witness fails verification".into()
    })?;
    for n in [3, 4] {
        let fw = factor_width(&SymMatrix::ones(n), &cfg).map_err(|e| e.to_string())?;
        ensure(fw.k == n && fw.lo == n && fw.hi == n, || {
            format!("J_{n}: {fw:?}")
        })?;
    }
    Ok("J_3 not in FW_2 (witness verified); factor width of J_3, J_4 is 3, 4".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("k=2 oracle agreement", criterion_1),
        ("banded rank identity", criterion_2),
        ("all-nonzero fw2 exactness", criterion_3),
        ("3x3 diagonal adjustment", criterion_4),
        ("arrowhead rank identity", criterion_5),
        ("Q_3 clique cover", criterion_6),
        ("Schonheim equality for k=3", criterion_7),
        ("Hadamard product example", criterion_8),
        ("minimal power to width 2", criterion_9),
        ("4x4 decision tree", criterion_10),
        ("all-ones negative control", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
