//! Random matrix generators shared by the property suites.
#![allow(dead_code)]

use fwrank::SymMatrix;
use proptest::prelude::*;

pub fn gram(g: &[Vec<f64>]) -> SymMatrix {
    SymMatrix::from_fn(g.len(), |i, j| {
        g[i].iter().zip(&g[j]).map(|(x, y)| x * y).sum()
    })
}

/// `G Gᵀ` with `G` of size `n x r`, `n` in `lo..=hi`, entries in `[-1, 1]`.
pub fn psd(lo: usize, hi: usize) -> impl Strategy<Value = SymMatrix> {
    (lo..=hi)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, r)| prop::collection::vec(prop::collection::vec(-1.0..1.0f64, r), n))
        .prop_map(|g| gram(&g))
}

/// Diagonally dominant with row surplus factor in `[1, 1.5)`; off-diagonals
/// in `±[0.1, 1)`, so every entry is nonzero.
pub fn dd_full(lo: usize, hi: usize) -> impl Strategy<Value = SymMatrix> {
    (lo..=hi).prop_flat_map(|n| {
        (
            prop::collection::vec((0.1..1.0f64, any::<bool>()), n * n),
            prop::collection::vec(1.0..1.5f64, n),
        )
            .prop_map(move |(off, f)| {
                dd_from(
                    n,
                    |i, j| {
                        let (m, neg) = off[i * n + j];
                        if neg {
                            -m
                        } else {
                            m
                        }
                    },
                    &f,
                )
            })
    })
}

/// Diagonally dominant with arbitrary signs and some exact zeros.
pub fn dd_sparse(lo: usize, hi: usize) -> impl Strategy<Value = SymMatrix> {
    (lo..=hi).prop_flat_map(|n| {
        (
            prop::collection::vec(prop_oneof![Just(0.0), -1.0..1.0f64], n * n),
            prop::collection::vec(1.0..1.5f64, n),
        )
            .prop_map(move |(off, f)| dd_from(n, |i, j| off[i * n + j], &f))
    })
}

fn dd_from(n: usize, off: impl Fn(usize, usize) -> f64, factor: &[f64]) -> SymMatrix {
    let mut a = SymMatrix::from_fn(n, |i, j| if i == j { 0.0 } else { off(i.min(j), i.max(j)) });
    for i in 0..n {
        let s: f64 = (0..n).filter(|&j| j != i).map(|j| a.get(i, j).abs()).sum();
        a.set(i, i, (s * factor[i]).max(0.5));
    }
    a
}

/// `L Lᵀ` with `L` lower bidiagonal; some columns zeroed. Returns the
/// matrix and its rank.
pub fn tridiagonal(lo: usize, hi: usize) -> impl Strategy<Value = (SymMatrix, usize)> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec((any::<bool>(), 0.5..2.0f64, -2.0..2.0f64), n).prop_map(move |cols| {
            let mut l = vec![vec![0.0; n]; n];
            let mut rank = 0;
            for (j, &(keep, d, sub)) in cols.iter().enumerate() {
                if !keep && n > 1 {
                    continue;
                }
                rank += 1;
                l[j][j] = d;
                if j + 1 < n {
                    l[j + 1][j] = sub;
                }
            }
            (gram(&l), rank)
        })
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn positive_diag(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.2..5.0f64, n)
}

/// Matrix with a permutation and a positive diagonal of matching size.
pub fn with_perm_and_diag<S: Strategy<Value = SymMatrix>>(
    s: S,
) -> impl Strategy<Value = (SymMatrix, Vec<usize>, Vec<f64>)> {
    s.prop_flat_map(|a| {
        let n = a.n();
        (Just(a), permutation(n), positive_diag(n))
    })
}

/// Sum of `n..=2n` outer products on random `k`-subsets with entries in `[0, 1)`.
pub fn nonnegative_fw(n: usize, k: usize) -> impl Strategy<Value = SymMatrix> {
    prop::collection::vec(
        (
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(0.0..1.0f64, k),
        ),
        n..=2 * n,
    )
    .prop_map(move |terms| {
        let mut a = SymMatrix::zeros(n);
        for (perm, vals) in terms {
            let mut support: Vec<usize> = perm[..k].to_vec();
            support.sort_unstable();
            a.add_outer_sparse(&support, &vals);
        }
        a
    })
}
