//! Support graphs of symmetric matrices, chordality via maximum cardinality
//! search, clique numbers and bandwidth-minimizing permutations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{SymMatrix, ToleranceConfig};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl SupportGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadArgs("graph needs at least one vertex".into()));
        }
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::BadArgs(format!("edge ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::BadArgs(format!("self-loop at {i}")));
            }
            if g.adj[i][j] {
                return Err(Error::BadArgs(format!("duplicate edge ({i}, {j})")));
            }
            g.adj[i][j] = true;
            g.adj[j][i] = true;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                g.adj[i][j] = i != j;
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Self::new(n, &edges).expect("valid cycle")
    }

    /// Hypercube `Q_d`: vertex `v` is adjacent to `v ^ (1 << b)`.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..d {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Self::new(n, &edges).expect("valid hypercube")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.iter().filter(|&&b| b).count())
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Graph with vertex `i` of the result playing the role of `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                g.adj[i][j] = self.adj[perm[i]][perm[j]];
            }
        }
        g
    }

    pub fn induced(&self, verts: &[usize]) -> Self {
        let mut g = Self::empty(verts.len());
        for (a, &i) in verts.iter().enumerate() {
            for (b, &j) in verts.iter().enumerate() {
                g.adj[a][b] = self.adj[i][j];
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_clique(&self, verts: &[usize]) -> bool {
        verts
            .iter()
            .enumerate()
            .all(|(a, &i)| verts[a + 1..].iter().all(|&j| self.adj[i][j]))
    }

    /// Bandwidth of the adjacency pattern under vertex order `perm`
    /// (position `p` holds vertex `perm[p]`); 1 for an edgeless graph.
    pub fn bandwidth_under(&self, perm: &[usize]) -> usize {
        let mut pos = vec![0; self.n];
        for (p, &v) in perm.iter().enumerate() {
            pos[v] = p;
        }
        let mut band = 1;
        for (i, j) in self.edges() {
            band = band.max(pos[i].abs_diff(pos[j]) + 1);
        }
        band
    }
}

/// Edge `{i, j}` for every structural nonzero `a_ij`, `i != j`.
pub fn support_graph(a: &SymMatrix, cfg: &ToleranceConfig) -> SupportGraph {
    let n = a.n();
    let mut g = SupportGraph::empty(n);
    for i in 0..n {
        for j in 0..n {
            g.adj[i][j] = i != j && !a.is_zero_at(i, j, cfg);
        }
    }
    g
}

/// Candidate perfect elimination ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationOrdering {
    /// Vertices in elimination order.
    pub order: Vec<usize>,
    pub perfect: bool,
}

/// Runs maximum cardinality search (ties to the smallest vertex) and checks
/// whether the reverse visit order is a perfect elimination ordering.
pub fn is_chordal(g: &SupportGraph) -> EliminationOrdering {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    let perfect = is_perfect_elimination(g, &visit);
    EliminationOrdering {
        order: visit,
        perfect,
    }
}

fn later_neighbors(g: &SupportGraph, order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    order
        .iter()
        .map(|&v| g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect())
        .collect()
}

/// Each vertex's neighbors later in `order` form a clique.
pub fn is_perfect_elimination(g: &SupportGraph, order: &[usize]) -> bool {
    later_neighbors(g, order).iter().all(|l| g.is_clique(l))
}

/// `ω(G)` read off a perfect elimination ordering.
pub fn clique_number_chordal(g: &SupportGraph, peo: &EliminationOrdering) -> Result<usize> {
    if !peo.perfect {
        return Err(Error::NotChordal);
    }
    Ok(1 + later_neighbors(g, &peo.order)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

/// Largest clique by subset enumeration. Intended for `n <= 20`.
pub fn max_clique_brute_force(g: &SupportGraph) -> usize {
    let n = g.n();
    assert!(n <= 20, "brute-force clique search is limited to n <= 20");
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut best = 1;
    for set in 1u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = (0..n)
            .filter(|&v| set & (1 << v) != 0)
            .all(|v| (set & !(1 << v)) & !masks[v] == 0);
        if clique {
            best = size;
        }
    }
    best
}

/// Default exhaustive-search limit for [`min_bandwidth_permutation`].
pub const DEFAULT_BANDWIDTH_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandPermutation {
    /// Position `p` of the permuted matrix holds original index `perm[p]`.
    pub perm: Vec<usize>,
    pub band: usize,
    /// False when produced by the greedy fallback.
    pub optimal: bool,
}

/// Lexicographic successor; false after the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exhaustively finds the permutation minimizing `bandwidth(P A Pᵀ)`,
/// taking the lexicographically smallest among ties.
pub fn min_bandwidth_permutation(
    a: &SymMatrix,
    n_limit: usize,
    cfg: &ToleranceConfig,
) -> Result<BandPermutation> {
    let n = a.n();
    if n > n_limit {
        return Err(Error::TooLarge { n, limit: n_limit });
    }
    let g = support_graph(a, cfg);
    let mut p: Vec<usize> = (0..n).collect();
    let mut best = BandPermutation {
        band: g.bandwidth_under(&p),
        perm: p.clone(),
        optimal: true,
    };
    while best.band > 1 && next_permutation(&mut p) {
        let band = g.bandwidth_under(&p);
        if band < best.band {
            best.band = band;
            best.perm.copy_from_slice(&p);
        }
    }
    Ok(best)
}

/// Cuthill–McKee ordering. Not optimal in general.
pub fn cuthill_mckee(a: &SymMatrix, cfg: &ToleranceConfig) -> BandPermutation {
    let g = support_graph(a, cfg);
    let n = g.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (g.degree(v), v))
            .expect("unplaced vertex");
        placed[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let mut next: Vec<usize> = g.neighbors(v).filter(|&u| !placed[u]).collect();
            next.sort_by_key(|&u| (g.degree(u), u));
            for u in next {
                placed[u] = true;
                order.push(u);
            }
        }
    }
    BandPermutation {
        band: g.bandwidth_under(&order),
        perm: order,
        optimal: false,
    }
}

/// Exhaustive search up to `n_limit`, Cuthill–McKee above it.
pub fn reduce_bandwidth(a: &SymMatrix, n_limit: usize, cfg: &ToleranceConfig) -> BandPermutation {
    min_bandwidth_permutation(a, n_limit, cfg).unwrap_or_else(|_| cuthill_mckee(a, cfg))
}
