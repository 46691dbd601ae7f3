//! Constructive factor-width decompositions `A = Σ v vᵀ` with sparse `v`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{
    bandwidth, diagonal_normalize, is_psd, relative_residual, SymMatrix, ToleranceConfig,
};
use crate::specgraph::{support_graph, SupportGraph};
use crate::widthdec::factor_width_le_2_unchecked;

/// Vector with explicit support, indices strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    n: usize,
    support: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    pub fn new(n: usize, support: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != values.len() {
            return Err(Error::BadArgs(
                "sparse vector needs a nonempty support matching its values".into(),
            ));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) || support[support.len() - 1] >= n {
            return Err(Error::BadArgs(
                "sparse vector support must be strictly increasing and in range".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v == 0.0) {
            return Err(Error::BadArgs(
                "sparse vector values must be finite and nonzero".into(),
            ));
        }
        Ok(Self { n, support, values })
    }

    /// Keeps the entries with magnitude above `tol_zero`; `None` if none remain.
    pub fn from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, f64)>,
        tol_zero: f64,
    ) -> Option<Self> {
        let mut kept: Vec<(usize, f64)> = pairs
            .into_iter()
            .filter(|(_, v)| v.abs() > tol_zero)
            .collect();
        kept.sort_by_key(|p| p.0);
        if kept.is_empty() {
            return None;
        }
        let (support, values) = kept.into_iter().unzip();
        Some(Self { n, support, values })
    }

    pub fn from_dense(dense: &[f64], tol_zero: f64) -> Option<Self> {
        Self::from_pairs(dense.len(), dense.iter().copied().enumerate(), tol_zero)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.support
            .iter()
            .position(|&s| s == i)
            .map_or(0.0, |p| self.values[p])
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            out[i] = v;
        }
        out
    }

    /// Multiplies entry `i` by `d[i]`, keeping the support.
    pub(crate) fn scaled_by(&self, d: &[f64]) -> Self {
        Self {
            n: self.n,
            support: self.support.clone(),
            values: self
                .support
                .iter()
                .zip(&self.values)
                .map(|(&i, &v)| v * d[i])
                .collect(),
        }
    }

    /// Same vector in a larger space, index `t` sent to `map[t]`.
    /// `map` must be increasing.
    pub(crate) fn embed(&self, n: usize, map: &[usize]) -> Self {
        Self {
            n,
            support: self.support.iter().map(|&i| map[i]).collect(),
            values: self.values.clone(),
        }
    }
}

/// Decomposition `A ≈ Σ v vᵀ` with every support of size at most `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FWDecomposition {
    pub k: usize,
    pub n: usize,
    pub vectors: Vec<SparseVector>,
    /// `||A - Σ v vᵀ||_F / ||A||_F`.
    pub residual: f64,
}

impl FWDecomposition {
    /// Checks supports and the reconstruction residual against `a`.
    pub fn build(
        a: &SymMatrix,
        k: usize,
        vectors: Vec<SparseVector>,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        let mut d = Self {
            k,
            n: a.n(),
            vectors,
            residual: 0.0,
        };
        if let Some(v) = d
            .vectors
            .iter()
            .find(|v| v.support_size() > k || v.n() != a.n())
        {
            return Err(Error::BadArgs(format!(
                "term with support {:?} does not fit k = {k}, n = {}",
                v.support(),
                a.n()
            )));
        }
        d.residual = relative_residual(a, &d.reconstruct());
        if !(d.residual <= cfg.tol_recon) {
            return Err(Error::ReconstructionFailed {
                residual: d.residual,
                tolerance: cfg.tol_recon,
            });
        }
        Ok(d)
    }

    pub fn term_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn max_support(&self) -> usize {
        self.vectors
            .iter()
            .map(SparseVector::support_size)
            .max()
            .unwrap_or(0)
    }

    pub fn reconstruct(&self) -> SymMatrix {
        let mut out = SymMatrix::zeros(self.n);
        for v in &self.vectors {
            out.add_outer_sparse(v.support(), v.values());
        }
        out
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    support: Vec<usize>,
    values: &'a [f64],
}

/// Supports are written 1-based, matching the text formats.
impl Serialize for FWDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .vectors
            .iter()
            .map(|v| TermJson {
                support: v.support().iter().map(|i| i + 1).collect(),
                values: v.values(),
            })
            .collect();
        let mut st = s.serialize_struct("FWDecomposition", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
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

/// Pivots at or below this are treated as zero; matches the rank count of
/// [`is_psd`].
fn pivot_threshold(a: &SymMatrix, cfg: &ToleranceConfig) -> f64 {
    cfg.tol_psd * a.max_abs()
}

/// Pivotless Cholesky restricted to the band. Each nonzero column of `L`
/// becomes one term, so the term count equals the rank.
pub fn decompose_banded(a: &SymMatrix, k: usize, cfg: &ToleranceConfig) -> Result<FWDecomposition> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::BadK { k, n });
    }
    require_psd(a, cfg)?;
    let band = bandwidth(a, cfg);
    if band > k {
        return Err(Error::BandTooWide { bandwidth: band, k });
    }
    let thr = pivot_threshold(a, cfg);
    // l[j] holds column j of L on rows j..j+band.
    let mut l: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut vectors = Vec::new();
    for j in 0..n {
        let rows = band.min(n - j);
        let lower = j.saturating_sub(band - 1);
        let mut col = vec![0.0; rows];
        for (r, c) in col.iter_mut().enumerate() {
            let i = j + r;
            let mut s = a.get(i, j);
            for (p, lp) in l.iter().enumerate().skip(lower) {
                // Entries of column p live on rows p..p+band.
                if i < p + lp.len() {
                    s -= lp[i - p] * lp[j - p];
                }
            }
            *c = s;
        }
        let pivot = col[0];
        if pivot <= thr {
            for (r, &c) in col.iter().enumerate().skip(1) {
                let dii = a.get(j + r, j + r).max(0.0);
                if c.abs() > ((pivot.max(0.0) + thr) * (dii + thr)).sqrt() {
                    return Err(Error::NotPsd { min_pivot: pivot });
                }
            }
            col.fill(0.0);
        } else {
            let root = pivot.sqrt();
            col[0] = root;
            for c in col.iter_mut().skip(1) {
                *c /= root;
            }
            vectors.extend(SparseVector::from_pairs(
                n,
                col.iter().enumerate().map(|(r, &v)| (j + r, v)),
                cfg.tol_zero,
            ));
        }
        l.push(col);
    }
    FWDecomposition::build(a, k, vectors, cfg)
}

/// Schur-complement recurrence `s_1 = a_1`, `s_k = a_k - b_{k-1}² / s_{k-1}`,
/// emitting one term per positive `s_k`.
pub fn decompose_tridiagonal(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<FWDecomposition> {
    let n = a.n();
    if bandwidth(a, cfg) > 2 {
        return Err(Error::NotTridiagonal);
    }
    require_psd(a, cfg)?;
    let thr = pivot_threshold(a, cfg);
    let mut vectors = Vec::new();
    let mut prev: Option<(f64, f64)> = None; // (s_{k-1}, b_{k-1}) when s_{k-1} > thr
    for k in 0..n {
        let s = match prev {
            Some((sp, b)) => a.get(k, k) - b * b / sp,
            None => a.get(k, k),
        };
        let b = if k + 1 < n { a.get(k, k + 1) } else { 0.0 };
        if s > thr {
            let root = s.sqrt();
            let pairs = [(k, root), (k + 1, b / root)];
            let len = if k + 1 < n { 2 } else { 1 };
            vectors.extend(SparseVector::from_pairs(
                n,
                pairs[..len].iter().copied(),
                cfg.tol_zero,
            ));
            prev = Some((s, b));
        } else {
            let next_diag = if k + 1 < n {
                a.get(k + 1, k + 1).max(0.0)
            } else {
                0.0
            };
            if b.abs() > ((s.max(0.0) + thr) * (next_diag + thr)).sqrt() {
                return Err(Error::InconsistentZeroPivot {
                    index: k,
                    coupling: b,
                });
            }
            prev = None;
        }
    }
    FWDecomposition::build(a, 2.min(n), vectors, cfg)
}

/// Arrowhead matrices (nonzero only on the diagonal and the first row and
/// column): one term per nonzero diagonal entry past the first, plus the
/// corner surplus `a_11 - Σ a_1i² / a_ii` when it is positive.
pub fn decompose_arrowhead(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<FWDecomposition> {
    let n = a.n();
    for j in 1..n {
        for i in 1..j {
            if !a.is_zero_at(i, j, cfg) {
                return Err(Error::NotArrowhead { row: i, col: j });
            }
        }
    }
    require_psd(a, cfg)?;
    let thr = pivot_threshold(a, cfg);
    let mut vectors = Vec::new();
    let mut surplus = a.get(0, 0);
    for i in 1..n {
        let d = a.get(i, i);
        let b = a.get(0, i);
        if d > thr {
            let root = d.sqrt();
            surplus -= b * b / d;
            vectors.extend(SparseVector::from_pairs(
                n,
                [(0, b / root), (i, root)],
                cfg.tol_zero,
            ));
        } else if b.abs() > ((d.max(0.0) + thr) * (a.get(0, 0).max(0.0) + thr)).sqrt() {
            return Err(Error::NotPsd { min_pivot: d });
        }
    }
    if surplus < -thr {
        return Err(Error::NotPsd { min_pivot: surplus });
    }
    if surplus > thr {
        vectors.push(SparseVector::new(n, vec![0], vec![surplus.sqrt()])?);
    }
    FWDecomposition::build(a, 2.min(n), vectors, cfg)
}

/// `v_ij = sqrt|a_ij| (sgn(a_ij) e_i + e_j)` for each structural nonzero `i < j`.
fn dd_equality_vectors(a: &SymMatrix, cfg: &ToleranceConfig) -> Vec<SparseVector> {
    let n = a.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = a.get(i, j);
            if v.abs() > cfg.tol_zero {
                let r = v.abs().sqrt();
                out.push(SparseVector {
                    n,
                    support: vec![i, j],
                    values: vec![v.signum() * r, r],
                });
            }
        }
    }
    out
}

/// Decomposition with one term per nonzero above the diagonal, for matrices
/// whose rows satisfy `a_jj = Σ_{i≠j} |a_ij|`.
pub fn decompose_dd_equality(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<FWDecomposition> {
    let n = a.n();
    let slack = cfg.tol_recon * a.max_diag();
    for j in 0..n {
        let off: f64 = (0..n).filter(|&i| i != j).map(|i| a.get(i, j).abs()).sum();
        if (a.get(j, j) - off).abs() > slack {
            return Err(Error::NotDdEquality {
                row: j,
                diagonal: a.get(j, j),
                offdiag_sum: off,
            });
        }
    }
    require_psd(a, cfg)?;
    FWDecomposition::build(a, 2.min(n), dd_equality_vectors(a, cfg), cfg)
}

fn three_vec(pairs: [(usize, f64); 2]) -> SparseVector {
    SparseVector {
        n: 3,
        support: vec![pairs[0].0, pairs[1].0],
        values: vec![pairs[0].1, pairs[1].1],
    }
}

/// Raises the `(1,1)` entry of `u uᵀ + v vᵀ + w wᵀ` from 1 to `target` while
/// keeping every other entry, where
/// `u = (a/y, y, 0)`, `v = (x, 0, b/x)`, `w = (0, c/z, z)` reconstruct
/// `[[1, a, b], [a, 1, c], [b, c, 1]]`.
///
/// For `ξ > x` the new vectors are `v_ξ = (ξ, 0, b/ξ)`,
/// `w_ξ = (0, c/z_ξ, z_ξ)` with `z_ξ² = 1 - b²/ξ²`, and
/// `u_ξ = (a/y_ξ, y_ξ, 0)` with `y_ξ² = 1 - c²/z_ξ²`. The realized `(1,1)` entry
/// `f(ξ) = ξ² + a²/y_ξ²` tends to 1 as `ξ → x` and to infinity as `ξ → ∞`;
/// `ξ` is found by bisection on `f`.
pub fn adjust_3x3_diagonal(
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    y: f64,
    z: f64,
    target: f64,
    cfg: &ToleranceConfig,
) -> Result<[SparseVector; 3]> {
    if !(target > 1.0) || !target.is_finite() {
        return Err(Error::TargetNotAboveOne { target });
    }
    if [a, b, c].iter().any(|&t| t == 0.0 || !t.is_finite()) {
        return Err(Error::BadArgs(
            "off-diagonal entries must be finite and nonzero".into(),
        ));
    }
    if [x, y, z].iter().any(|&t| t == 0.0 || !t.is_finite()) {
        return Err(Error::BadSeed {
            residual: f64::INFINITY,
        });
    }
    let unit = SymMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 1) => a,
        (0, 2) => b,
        (1, 2) => c,
        _ => 1.0,
    });
    let seed = {
        let mut s = SymMatrix::zeros(3);
        s.add_outer_sparse(&[0, 1], &[a / y, y]);
        s.add_outer_sparse(&[0, 2], &[x, b / x]);
        s.add_outer_sparse(&[1, 2], &[c / z, z]);
        s
    };
    let residual = relative_residual(&unit, &seed);
    if !(residual <= cfg.tol_recon) {
        return Err(Error::BadSeed { residual });
    }
    // Flipping a vector's sign leaves its outer product unchanged.
    let x = x.abs();

    let entries = |xi: f64| -> Option<(f64, f64)> {
        let z2 = 1.0 - b * b / (xi * xi);
        let y2 = 1.0 - c * c / z2;
        (z2 > 0.0 && y2 > 0.0).then(|| (y2.sqrt(), z2.sqrt()))
    };
    let f = |xi: f64| entries(xi).map(|(yx, _)| xi * xi + a * a / (yx * yx));

    let mut lo = x;
    let mut hi = x.max(target.sqrt());
    let mut guard = 0;
    while f(hi).is_none_or(|v| v <= target) {
        hi *= 2.0;
        guard += 1;
        if guard > 2100 {
            return Err(Error::BadSeed { residual });
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match f(mid) {
            Some(v) if v > target => hi = mid,
            _ => lo = mid,
        }
    }
    let xi = hi;
    let (yx, zx) = entries(xi).expect("feasible at the upper bracket");
    let out = [
        three_vec([(0, a / yx), (1, yx)]),
        three_vec([(0, xi), (2, b / xi)]),
        three_vec([(1, c / zx), (2, zx)]),
    ];
    let mut goal = unit;
    goal.set(0, 0, target);
    let mut sum = SymMatrix::zeros(3);
    for v in &out {
        sum.add_outer_sparse(v.support(), v.values());
    }
    let residual = relative_residual(&goal, &sum);
    if !(residual <= cfg.tol_recon) {
        return Err(Error::ReconstructionFailed {
            residual,
            tolerance: cfg.tol_recon,
        });
    }
    Ok(out)
}

/// Lexicographically first `(p, q)`, `p < q`, with `{m, p, q}` pairwise adjacent.
fn first_triangle(g: &SupportGraph, m: usize) -> Option<(usize, usize)> {
    let n = g.n();
    (0..n)
        .filter(|&p| p != m && g.has_edge(m, p))
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .find(|&(p, q)| q != m && g.has_edge(m, q) && g.has_edge(p, q))
}

/// Positive `x` with `diag(x) B diag(x)` diagonally dominant, for unit-diagonal
/// `B` of factor width at most 2: the Perron vector of `|B - I|` on each
/// connected component of the support graph.
fn dd_scaling(b: &SymMatrix, g: &SupportGraph) -> Vec<f64> {
    let mut x = vec![1.0; b.n()];
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let k = comp.len();
        let nmat = DMatrix::from_fn(k, k, |p, q| {
            if p == q {
                0.0
            } else {
                b.get(comp[p], comp[q]).abs()
            }
        });
        let eig = SymmetricEigen::new(nmat);
        let top = eig.eigenvalues.imax();
        let v = eig.eigenvectors.column(top);
        let norm = v.iter().map(|t| t.abs()).fold(0.0, f64::max);
        for (p, &i) in comp.iter().enumerate() {
            x[i] = v[p].abs() / norm;
        }
    }
    x
}

/// Decomposition with exactly `nnzu(A)` terms for factor-width-2 matrices in
/// which every diagonal index lies in an all-nonzero `3 x 3` principal
/// submatrix.
///
/// After scaling to a diagonally dominant matrix, the part with equality in
/// every row is split into one term per nonzero, and each row surplus is
/// absorbed into the three terms of the lexicographically first triangle
/// through that row by [`adjust_3x3_diagonal`].
pub fn decompose_fw2_optimal(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<FWDecomposition> {
    let n = a.n();
    require_psd(a, cfg)?;
    if !factor_width_le_2_unchecked(a, cfg) {
        return Err(Error::NotFactorWidth2);
    }
    let scaling = diagonal_normalize(a, cfg)?;
    let kept = &scaling.kept;
    let nr = kept.len();
    let g = support_graph(&a.principal(kept), cfg);
    let triangles: Vec<(usize, usize)> = (0..nr)
        .map(|m| first_triangle(&g, m).ok_or(Error::HypothesisFailed { index: kept[m] }))
        .collect::<Result<_>>()?;

    let b = &scaling.b;
    let x = dd_scaling(b, &g);
    let bs = b.congruence_diag(&x)?;
    let surplus: Vec<f64> = (0..nr)
        .map(|i| {
            let off: f64 = (0..nr)
                .filter(|&j| j != i)
                .map(|j| bs.get(i, j).abs())
                .sum();
            (bs.get(i, i) - off).max(0.0)
        })
        .collect();
    let mut eq = bs.clone();
    for (i, s) in surplus.iter().enumerate() {
        eq.add_to(i, i, -s);
    }

    let mut terms: std::collections::BTreeMap<(usize, usize), [f64; 2]> =
        dd_equality_vectors(&eq, cfg)
            .into_iter()
            .map(|v| ((v.support[0], v.support[1]), [v.values[0], v.values[1]]))
            .collect();
    // Value of the term on pair {i, j} at coordinate i.
    let at = |t: &std::collections::BTreeMap<(usize, usize), [f64; 2]>, i: usize, j: usize| {
        if i < j {
            t[&(i, j)][0]
        } else {
            t[&(j, i)][1]
        }
    };
    for m in 0..nr {
        let s = surplus[m];
        if s <= 0.0 {
            continue;
        }
        let (p, q) = triangles[m];
        let (um, up) = (at(&terms, m, p), at(&terms, p, m));
        let (vm, vq) = (at(&terms, m, q), at(&terms, q, m));
        let (wp, wq) = (at(&terms, p, q), at(&terms, q, p));
        let tm = um * um + vm * vm;
        let tp = up * up + wp * wp;
        let tq = vq * vq + wq * wq;
        let target = (tm + s) / tm;
        if !(target > 1.0) {
            continue;
        }
        let (rm, rp, rq) = (tm.sqrt(), tp.sqrt(), tq.sqrt());
        let [u, v, w] = adjust_3x3_diagonal(
            um * up / (rm * rp),
            vm * vq / (rm * rq),
            wp * wq / (rp * rq),
            vm / rm,
            up / rp,
            wq / rq,
            target,
            cfg,
        )?;
        let mut set = |i: usize, j: usize, vi: f64, vj: f64| {
            let entry = if i < j { [vi, vj] } else { [vj, vi] };
            terms.insert((i.min(j), i.max(j)), entry);
        };
        set(m, p, u.values[0] * rm, u.values[1] * rp);
        set(m, q, v.values[0] * rm, v.values[1] * rq);
        set(p, q, w.values[0] * rp, w.values[1] * rq);
    }

    // Undo both scalings: A = S⁻¹ X⁻¹ (X B X) X⁻¹ S⁻¹ with S = diag(d).
    let factor: Vec<f64> = (0..nr).map(|i| 1.0 / (x[i] * scaling.d[i])).collect();
    let vectors = terms
        .into_iter()
        .map(|((i, j), [vi, vj])| SparseVector {
            n,
            support: vec![kept[i], kept[j]],
            values: vec![vi * factor[i], vj * factor[j]],
        })
        .collect();
    FWDecomposition::build(a, 2, vectors, cfg)
}

/// Cut positions of a chain of all-nonzero diagonal blocks in which each block
/// shares exactly its last index with the next one, or `None` if the pattern
/// is not of that form.
pub fn detect_overlap_cuts(a: &SymMatrix, cfg: &ToleranceConfig) -> Option<Vec<usize>> {
    let n = a.n();
    let mut cuts = Vec::new();
    let mut start = 0;
    loop {
        let end = (start + 1..n)
            .rev()
            .find(|&j| !a.is_zero_at(start, j, cfg))?;
        if end == n - 1 {
            break;
        }
        cuts.push(end);
        start = end;
    }
    check_overlap_structure(a, &cuts, cfg).ok().map(|_| cuts)
}

/// Block intervals `[start, end]` for the given cuts, after validation.
fn check_overlap_structure(
    a: &SymMatrix,
    cuts: &[usize],
    cfg: &ToleranceConfig,
) -> Result<Vec<(usize, usize)>> {
    let n = a.n();
    let bad = |m: String| Err(Error::BadBlockStructure(m));
    if n < 3 {
        return bad("need n >= 3".into());
    }
    let mut bounds = Vec::with_capacity(cuts.len() + 1);
    let mut start = 0;
    for &c in cuts.iter().chain(std::iter::once(&(n - 1))) {
        if c <= start || c >= n {
            return bad(format!("cut {c} out of order or out of range"));
        }
        bounds.push((start, c));
        start = c;
    }
    let last = bounds.len() - 1;
    for (t, &(s, e)) in bounds.iter().enumerate() {
        let size = e - s + 1;
        if size == 2 && t != 0 && t != last {
            return bad(format!("interior block [{s}, {e}] has size 2"));
        }
    }
    if last > 0 && bounds[0].1 - bounds[0].0 == 1 && bounds[last].1 - bounds[last].0 == 1 {
        return bad("first and last blocks cannot both have size 2".into());
    }
    for j in 0..n {
        for i in 0..j {
            let inside = bounds.iter().any(|&(s, e)| s <= i && j <= e);
            if inside == a.is_zero_at(i, j, cfg) {
                return bad(if inside {
                    format!("entry ({i}, {j}) inside a block is zero")
                } else {
                    format!("entry ({i}, {j}) outside the blocks is nonzero")
                });
            }
        }
    }
    Ok(bounds)
}

/// Least `g` in `[0, hi]` for which `m` with `(corner, corner) = g` has
/// factor width at most 2; `hi` must be feasible.
fn min_corner(m: &SymMatrix, corner: usize, hi: f64, cfg: &ToleranceConfig) -> f64 {
    let feasible = |g: f64| {
        let mut t = m.clone();
        t.set(corner, corner, g);
        factor_width_le_2_unchecked(&t, cfg)
    };
    let (mut lo, mut hi) = (0.0, hi);
    if feasible(lo) {
        return lo;
    }
    let width = cfg.tol_recon * hi.abs().max(f64::MIN_POSITIVE);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Decomposition with `nnzu(A)` terms for a chain of all-nonzero diagonal
/// blocks overlapping in single entries at `cut_indices` (0-based).
///
/// At each cut the shared diagonal entry is split between the block on the
/// left and the remainder on the right so both keep factor width 2; each
/// block of size at least 3 is then decomposed by [`decompose_fw2_optimal`].
/// A block of size 2 must receive its least feasible corner, so only one end
/// of the chain may have size 2.
pub fn decompose_block_overlap(
    a: &SymMatrix,
    cut_indices: &[usize],
    cfg: &ToleranceConfig,
) -> Result<FWDecomposition> {
    let n = a.n();
    let blocks = check_overlap_structure(a, cut_indices, cfg)?;
    require_psd(a, cfg)?;
    if !factor_width_le_2_unchecked(a, cfg) {
        return Err(Error::NotFactorWidth2);
    }
    if cut_indices.is_empty() {
        return decompose_fw2_optimal(a, cfg);
    }
    let mut work = a.clone();
    let mut vectors = Vec::new();
    let last = blocks.len() - 1;
    for (t, &(s, c)) in blocks.iter().enumerate().take(last) {
        let left_idx: Vec<usize> = (s..=c).collect();
        let right_idx: Vec<usize> = (c..n).collect();
        let total = work.get(c, c);
        let left_is_pair = left_idx.len() == 2;
        let right_is_pair = t + 1 == last && right_idx.len() == 2;
        let left = work.principal(&left_idx);
        let right = work.principal(&right_idx);
        let g_min = if left_is_pair {
            let (p, q) = (left.get(0, 0), left.get(0, 1));
            q * q / p
        } else {
            min_corner(&left, left_idx.len() - 1, total, cfg)
        };
        let h_min = if right_is_pair {
            let (q, p) = (right.get(0, 1), right.get(1, 1));
            q * q / p
        } else {
            min_corner(&right, 0, total, cfg)
        };
        let g = if left_is_pair {
            g_min
        } else if right_is_pair {
            total - h_min
        } else {
            g_min + 0.5 * (total - g_min - h_min).max(0.0)
        };
        if left_is_pair {
            let (p, q) = (left.get(0, 0), left.get(0, 1));
            let root = p.sqrt();
            vectors.extend(SparseVector::from_pairs(
                n,
                [(s, root), (c, q / root)],
                cfg.tol_zero,
            ));
        } else {
            let mut blk = left;
            blk.set(left_idx.len() - 1, left_idx.len() - 1, g);
            let d = decompose_fw2_optimal(&blk, cfg)?;
            vectors.extend(d.vectors.iter().map(|v| v.embed(n, &left_idx)));
        }
        work.set(c, c, total - g);
    }
    let (s, e) = blocks[last];
    let idx: Vec<usize> = (s..=e).collect();
    let blk = work.principal(&idx);
    if idx.len() == 2 {
        let (q, p) = (blk.get(0, 1), blk.get(1, 1));
        let root = p.sqrt();
        vectors.extend(SparseVector::from_pairs(
            n,
            [(s, q / root), (e, root)],
            cfg.tol_zero,
        ));
    } else {
        let d = decompose_fw2_optimal(&blk, cfg)?;
        vectors.extend(d.vectors.iter().map(|v| v.embed(n, &idx)));
    }
    FWDecomposition::build(a, 2, vectors, cfg)
}
