//! Covering designs `C(n, k, 2)` and `k`-clique covers `cc_k(G)`.
//!
//! Both are set-cover problems over the edges of a graph (`K_n` for covering
//! designs) with `k`-subsets of vertices as the covering sets. The exact
//! search branches on the least uncovered edge; a run that closes within the
//! node budget is certified optimal.

use std::collections::HashSet;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::combin::{binomial, subsets};
use crate::error::{Error, Result};
use crate::specgraph::SupportGraph;

/// Default node budget for the exact searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest vertex count handled by the searches.
pub const MAX_VERTICES: usize = 64;

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::BadArgs(format!(
            "need 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

/// `⌈(n/k) ⌈(n-1)/(k-1)⌉⌉`, a lower bound on `C(n, k, 2)`.
pub fn schonheim_bound(n: usize, k: usize) -> Result<usize> {
    if k < 2 || k > n {
        return Err(Error::BadArgs(format!(
            "need 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let inner = (n - 1).div_ceil(k - 1);
    Ok((n * inner).div_ceil(k))
}

fn blocks_one_based(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|i| i + 1).collect())
        .collect()
}

/// Family of `k`-subsets of `0..n`, sorted, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringDesign {
    pub n: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl CoveringDesign {
    /// Every block has `k` distinct in-range elements and every pair is covered.
    pub fn verify(&self) -> bool {
        verify_blocks(self.n, self.k, &self.blocks)
            && (0..self.n).all(|i| {
                (i + 1..self.n)
                    .all(|j| self.blocks.iter().any(|b| b.contains(&i) && b.contains(&j)))
            })
    }
}

impl Serialize for CoveringDesign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoveringDesign", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("blocks", &blocks_one_based(&self.blocks))?;
        st.end()
    }
}

/// `k`-subsets whose union of pairs contains every edge of a graph. The subsets
/// need not be cliques of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    pub k: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn verify(&self, g: &SupportGraph) -> bool {
        verify_blocks(g.n(), self.k, &self.cliques)
            && g.edges().iter().all(|&(i, j)| {
                self.cliques
                    .iter()
                    .any(|b| b.contains(&i) && b.contains(&j))
            })
    }
}

impl Serialize for CliqueCover {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CliqueCover", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("cliques", &blocks_one_based(&self.cliques))?;
        st.end()
    }
}

fn verify_blocks(n: usize, k: usize, blocks: &[Vec<usize>]) -> bool {
    blocks
        .iter()
        .all(|b| b.len() == k && b.windows(2).all(|w| w[0] < w[1]) && b.iter().all(|&i| i < n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringResult {
    pub value: usize,
    /// The search closed within budget, so `value` is optimal.
    pub certified: bool,
    /// Certified lower bound from the root of the search.
    pub lower_bound: usize,
    pub nodes: u64,
    pub design: CoveringDesign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueCoverResult {
    pub value: usize,
    pub certified: bool,
    pub lower_bound: usize,
    pub nodes: u64,
    pub cover: CliqueCover,
}

/// `C(n, k, 2)` by branch and bound, falling back to the best design found
/// when the budget runs out.
pub fn covering_number(n: usize, k: usize, budget: u64) -> Result<CoveringResult> {
    check_k(n, k)?;
    let out = EdgeCover::new(&SupportGraph::complete(n), k).solve(budget);
    Ok(CoveringResult {
        value: out.blocks.len(),
        certified: out.certified,
        lower_bound: out.lower_bound,
        nodes: out.nodes,
        design: CoveringDesign {
            n,
            k,
            blocks: out.blocks,
        },
    })
}

/// `cc_k(G)` by branch and bound, falling back to the best cover found when
/// the budget runs out. An edgeless graph has `cc_k = 0`.
pub fn clique_cover_number(g: &SupportGraph, k: usize, budget: u64) -> Result<CliqueCoverResult> {
    check_k(g.n(), k)?;
    let out = EdgeCover::new(g, k).solve(budget);
    Ok(CliqueCoverResult {
        value: out.blocks.len(),
        certified: out.certified,
        lower_bound: out.lower_bound,
        nodes: out.nodes,
        cover: CliqueCover {
            k,
            cliques: out.blocks,
        },
    })
}

struct Outcome {
    blocks: Vec<Vec<usize>>,
    certified: bool,
    lower_bound: usize,
    nodes: u64,
}

/// Above this many `k`-subsets the densest block is bounded by `C(k, 2)`
/// instead of enumerated.
const DENSEST_BLOCK_ENUMERATION_LIMIT: u64 = 2_000_000;

/// Set cover of graph edges by vertex `k`-subsets. Blocks are bitmasks.
struct EdgeCover {
    n: usize,
    k: usize,
    edges: Vec<(usize, usize)>,
    /// `edge_id[u][v]` for adjacent `u != v`.
    edge_id: Vec<Vec<Option<usize>>>,
    /// Most edges any single block can contain.
    max_per_block: usize,
    uncovered: Vec<bool>,
    n_uncovered: usize,
    deg: Vec<usize>,
    chosen: Vec<u64>,
    forbidden: HashSet<u64>,
    best: Vec<u64>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}

impl EdgeCover {
    fn new(g: &SupportGraph, k: usize) -> Self {
        let n = g.n();
        let edges = g.edges();
        let mut edge_id = vec![vec![None; n]; n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            edge_id[u][v] = Some(e);
            edge_id[v][u] = Some(e);
        }
        let mut deg = vec![0; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let full = k * (k - 1) / 2;
        let max_per_block =
            if binomial(n as u64, k as u64).is_none_or(|c| c > DENSEST_BLOCK_ENUMERATION_LIMIT) {
                full.min(edges.len())
            } else {
                subsets(n, k)
                    .iter()
                    .map(|s| {
                        s.iter()
                            .enumerate()
                            .map(|(a, &i)| s[a + 1..].iter().filter(|&&j| g.has_edge(i, j)).count())
                            .sum::<usize>()
                    })
                    .max()
                    .unwrap_or(0)
            };
        Self {
            n,
            k,
            n_uncovered: edges.len(),
            uncovered: vec![true; edges.len()],
            edges,
            edge_id,
            max_per_block,
            deg,
            chosen: Vec::new(),
            forbidden: HashSet::new(),
            best: Vec::new(),
            nodes: 0,
            budget: 0,
            exhausted: false,
        }
    }

    /// Uncovered edges inside `mask`.
    fn new_edges(&self, mask: u64) -> Vec<usize> {
        let verts = mask_to_vec(mask);
        let mut out = Vec::new();
        for (a, &i) in verts.iter().enumerate() {
            for &j in &verts[a + 1..] {
                if let Some(e) = self.edge_id[i][j] {
                    if self.uncovered[e] {
                        out.push(e);
                    }
                }
            }
        }
        out
    }

    fn apply(&mut self, covered: &[usize], mask: u64) {
        for &e in covered {
            self.uncovered[e] = false;
            let (u, v) = self.edges[e];
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        self.n_uncovered -= covered.len();
        self.chosen.push(mask);
    }

    fn undo(&mut self, covered: &[usize]) {
        for &e in covered {
            self.uncovered[e] = true;
            let (u, v) = self.edges[e];
            self.deg[u] += 1;
            self.deg[v] += 1;
        }
        self.n_uncovered += covered.len();
        self.chosen.pop();
    }

    /// Blocks still needed for the uncovered edges.
    fn lower_bound(&self) -> usize {
        if self.n_uncovered == 0 {
            return 0;
        }
        let by_count = self.n_uncovered.div_ceil(self.max_per_block.max(1));
        let per_vertex: Vec<usize> = self.deg.iter().map(|d| d.div_ceil(self.k - 1)).collect();
        let by_degree = per_vertex.iter().sum::<usize>().div_ceil(self.k);
        let by_vertex = per_vertex.iter().copied().max().unwrap_or(0);
        by_count.max(by_degree).max(by_vertex)
    }

    /// Allowed blocks through the least uncovered edge, with the edges each
    /// newly covers; blocks whose new edges are a subset of another's are
    /// dropped. Sorted by coverage, descending, then by mask.
    fn candidates(&self) -> Vec<(u64, Vec<usize>)> {
        let e = self
            .uncovered
            .iter()
            .position(|&u| u)
            .expect("an edge is uncovered");
        let (u, v) = self.edges[e];
        let rest: Vec<usize> = (0..self.n).filter(|&x| x != u && x != v).collect();
        let base = (1u64 << u) | (1u64 << v);
        let mut cands: Vec<(u64, Vec<usize>)> = subsets(rest.len(), self.k - 2)
            .into_iter()
            .map(|s| s.iter().fold(base, |m, &t| m | (1u64 << rest[t])))
            .filter(|m| !self.forbidden.contains(m))
            .map(|m| (m, self.new_edges(m)))
            .collect();
        cands.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        let mut kept: Vec<(u64, Vec<usize>)> = Vec::with_capacity(cands.len());
        for (m, cov) in cands {
            // Sorted edge lists; earlier candidates cover at least as many.
            let dominated = kept
                .iter()
                .any(|(_, other)| cov.iter().all(|e| other.binary_search(e).is_ok()));
            if !dominated {
                kept.push((m, cov));
            }
        }
        kept
    }

    fn greedy(&mut self) {
        let mut applied = Vec::new();
        while self.n_uncovered > 0 {
            let (m, cov) = self.candidates().swap_remove(0);
            self.apply(&cov, m);
            applied.push(cov);
        }
        self.best = self.chosen.clone();
        while let Some(cov) = applied.pop() {
            self.undo(&cov);
        }
    }

    fn search(&mut self) {
        if self.n_uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.lower_bound() >= self.best.len() {
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let cands = self.candidates();
        let mut banned = Vec::with_capacity(cands.len());
        for (m, cov) in cands {
            self.apply(&cov, m);
            self.search();
            self.undo(&cov);
            if self.exhausted {
                break;
            }
            self.forbidden.insert(m);
            banned.push(m);
        }
        for m in banned {
            self.forbidden.remove(&m);
        }
    }

    fn solve(mut self, budget: u64) -> Outcome {
        let root = self.lower_bound();
        self.budget = budget;
        self.greedy();
        if self.best.len() > root {
            self.search();
        }
        let mut blocks: Vec<Vec<usize>> = self.best.iter().map(|&m| mask_to_vec(m)).collect();
        blocks.sort();
        Outcome {
            certified: !self.exhausted,
            lower_bound: if self.exhausted { root } else { blocks.len() },
            blocks,
            nodes: self.nodes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schonheim_examples() {
        assert_eq!(schonheim_bound(7, 3), Ok(7));
        assert_eq!(schonheim_bound(4, 2), Ok(6));
        assert_eq!(schonheim_bound(5, 5), Ok(1));
        assert_eq!(schonheim_bound(9, 3), Ok(12));
        assert!(schonheim_bound(4, 1).is_err());
        assert!(schonheim_bound(4, 5).is_err());
    }

    #[test]
    fn covering_examples() {
        let r = covering_number(7, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.certified), (7, true));
        assert!(r.design.verify());
        let r = covering_number(4, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, 1);
        let r = covering_number(9, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.certified), (12, true));
        assert!(r.design.verify());
    }

    #[test]
    fn clique_cover_examples() {
        let q3 = SupportGraph::hypercube(3);
        let r = clique_cover_number(&q3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.certified), (6, true));
        assert!(r.cover.verify(&q3));
        let r = clique_cover_number(&SupportGraph::complete(7), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, 7);
        let r = clique_cover_number(&SupportGraph::path(4), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, 3);
        let r = clique_cover_number(&SupportGraph::empty(4), 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.certified), (0, true));
    }

    #[test]
    fn tiny_budget_is_uncertified_but_valid() {
        let r = covering_number(9, 4, 1).unwrap();
        assert!(r.design.verify());
        assert!(r.value >= r.lower_bound);
    }

    #[test]
    fn serializes_one_based() {
        let r = covering_number(3, 3, DEFAULT_BUDGET).unwrap();
        let j = serde_json::to_value(&r.design).unwrap();
        assert_eq!(j["blocks"], serde_json::json!([[1, 2, 3]]));
    }
}
