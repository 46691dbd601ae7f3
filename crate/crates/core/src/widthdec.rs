//! Factor width decisions.
//!
//! Widths 1 and 2 are decided exactly: width 1 means diagonal, width at most 2
//! means the comparison matrix is PSD. For general `k` the cone of
//! factor-width-`k` matrices is approached by block-coordinate descent over all
//! `k`-subsets, and a negative answer is only ever given together with a
//! verified dual witness.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::combin::subsets;
use crate::decomp::{FWDecomposition, SparseVector};
use crate::error::{Error, Result};
use crate::matcore::{
    bandwidth, comparison_matrix, is_diagonally_dominant, is_psd, SymMatrix, ToleranceConfig,
};
use crate::specgraph::{clique_number_chordal, is_chordal, support_graph};

/// Largest dimension (after dropping zero rows) accepted by [`membership`].
pub const MEMBERSHIP_N_LIMIT: usize = 16;

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

/// Width 1: every off-diagonal entry is a structural zero.
pub fn factor_width_1(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    require_psd(a, cfg)?;
    let n = a.n();
    Ok((0..n).all(|j| (0..j).all(|i| a.is_zero_at(i, j, cfg))))
}

/// Width at most 2, decided by scaled diagonal dominance.
pub fn factor_width_le_2(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    require_psd(a, cfg)?;
    Ok(factor_width_le_2_unchecked(a, cfg))
}

/// [`factor_width_le_2`] for an input already known to be PSD.
pub(crate) fn factor_width_le_2_unchecked(a: &SymMatrix, cfg: &ToleranceConfig) -> bool {
    is_diagonally_dominant(a, cfg.tol_psd) || is_psd(&comparison_matrix(a), cfg).success
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthSource {
    Bandwidth,
    Chordal,
    Trivial,
}

/// `min(bandwidth, ω(G) if G chordal, n)`; ties prefer `trivial`, then `bandwidth`.
pub fn structural_width_upper_bound(
    a: &SymMatrix,
    cfg: &ToleranceConfig,
) -> Result<(usize, WidthSource)> {
    require_psd(a, cfg)?;
    let n = a.n();
    let band = bandwidth(a, cfg);
    let g = support_graph(a, cfg);
    let chordal = clique_number_chordal(&g, &is_chordal(&g)).unwrap_or(n);
    let best = band.min(chordal).min(n);
    let source = if best == n {
        WidthSource::Trivial
    } else if best == band {
        WidthSource::Bandwidth
    } else {
        WidthSource::Chordal
    };
    Ok((best, source))
}

/// Matrix whose `k x k` principal submatrices are all PSD, separating `A`
/// from the factor-width-`k` cone when `<W, A> < 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualWitness {
    #[serde(serialize_with = "serialize_rows")]
    pub w: SymMatrix,
    /// `trace(W A)`.
    pub inner_product: f64,
}

fn serialize_rows<S: serde::Serializer>(
    m: &SymMatrix,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

/// True iff every `k x k` principal submatrix of `W` is PSD and
/// `<W, A> < -tol_psd ||A|| ||W||`.
pub fn verify_dual_witness(
    a: &SymMatrix,
    witness: &DualWitness,
    k: usize,
    cfg: &ToleranceConfig,
) -> bool {
    let w = &witness.w;
    let n = a.n();
    if w.n() != n || k == 0 {
        return false;
    }
    let k = k.min(n);
    let locally_psd = subsets(n, k)
        .iter()
        .all(|s| is_psd(&w.principal(s), cfg).success);
    locally_psd && w.inner(a) < -cfg.tol_psd * a.frobenius_norm() * w.frobenius_norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MembershipStatus {
    Member,
    NotMember,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Certificate {
    Decomposition(FWDecomposition),
    Witness(DualWitness),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub k: usize,
    pub status: MembershipStatus,
    /// Bound on the Frobenius distance from `A` to the last iterate, hence
    /// on the distance to the cone.
    pub distance_estimate: f64,
    pub certificate: Option<Certificate>,
    /// Completed sweeps over all blocks.
    pub iterations_used: usize,
}

/// Block iterate `X = Σ_S B_S` on the reduced index set, kept for warm starts.
#[derive(Debug, Clone)]
pub(crate) struct BlockState {
    k: usize,
    subsets: Vec<Vec<usize>>,
    /// Row-major `k x k` blocks aligned with `subsets`.
    blocks: Vec<Vec<f64>>,
}

impl BlockState {
    fn zero(n: usize, k: usize) -> Self {
        let subsets = subsets(n, k);
        let blocks = vec![vec![0.0; k * k]; subsets.len()];
        Self { k, subsets, blocks }
    }

    /// Embeds each block into the lexicographically first `k`-superset of
    /// its support. The sum `X` is unchanged.
    fn widened(&self, n: usize, k: usize) -> Self {
        let mut out = Self::zero(n, k);
        for (s, b) in self.subsets.iter().zip(&self.blocks) {
            let target = out
                .subsets
                .iter()
                .position(|t| s.iter().all(|i| t.contains(i)))
                .expect("every subset has a superset");
            let pos: Vec<usize> = s
                .iter()
                .map(|i| out.subsets[target].iter().position(|j| j == i).unwrap())
                .collect();
            let blk = &mut out.blocks[target];
            for (p, &pi) in pos.iter().enumerate() {
                for (q, &qi) in pos.iter().enumerate() {
                    blk[pi * k + qi] += b[p * self.k + q];
                }
            }
        }
        out
    }
}

/// Projects a row-major symmetric `k x k` block onto the PSD cone in place.
fn project_psd(m: &mut [f64], k: usize) {
    match k {
        1 => m[0] = m[0].max(0.0),
        2 => {
            let (a, b, c) = (m[0], 0.5 * (m[1] + m[2]), m[3]);
            let mean = 0.5 * (a + c);
            let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
            let (hi, lo) = (mean + r, mean - r);
            if lo >= 0.0 {
                return;
            }
            if hi <= 0.0 {
                m.fill(0.0);
                return;
            }
            // hi * q qᵀ with q qᵀ = (M - lo I) / (hi - lo).
            let f = hi / (2.0 * r);
            m[0] = f * (a - lo);
            m[1] = f * b;
            m[2] = f * b;
            m[3] = f * (c - lo);
        }
        _ => {
            let eig = SymmetricEigen::new(DMatrix::from_row_slice(k, k, m));
            if eig.eigenvalues.iter().all(|&l| l >= 0.0) {
                return;
            }
            m.fill(0.0);
            for (t, &l) in eig.eigenvalues.iter().enumerate() {
                if l > 0.0 {
                    let q = eig.eigenvectors.column(t);
                    for i in 0..k {
                        for j in 0..k {
                            m[i * k + j] += l * q[i] * q[j];
                        }
                    }
                }
            }
        }
    }
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 1 {
        return m[(0, 0)];
    }
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}

/// Total history size (in floats) kept by the Anderson accelerator.
const ANDERSON_FLOATS: usize = 2_000_000;
const ANDERSON_MAX_MEMORY: usize = 10;

/// Anderson acceleration of the sweep map `x -> G(x)` on the stacked blocks.
struct Anderson {
    memory: usize,
    dx: VecDeque<Vec<f64>>,
    df: VecDeque<Vec<f64>>,
    /// Previous input and step `G(x) - x`.
    last: Option<(Vec<f64>, Vec<f64>)>,
    best_residual: f64,
}

impl Anderson {
    fn new(size: usize) -> Self {
        Self {
            memory: (ANDERSON_FLOATS / size.max(1)).min(ANDERSON_MAX_MEMORY),
            dx: VecDeque::new(),
            df: VecDeque::new(),
            last: None,
            best_residual: f64::INFINITY,
        }
    }

    fn reset(&mut self) {
        self.dx.clear();
        self.df.clear();
        self.last = None;
    }

    /// Records the step from `x` to `gx` and returns the extrapolated point,
    /// if the history allows one.
    fn step(&mut self, x: Vec<f64>, gx: &[f64], residual: f64) -> Option<Vec<f64>> {
        if self.memory == 0 {
            return None;
        }
        if residual > 2.0 * self.best_residual {
            self.reset();
        }
        self.best_residual = self.best_residual.min(residual);
        let f: Vec<f64> = gx.iter().zip(&x).map(|(g, x)| g - x).collect();
        if let Some((px, pf)) = self.last.take() {
            self.dx
                .push_back(x.iter().zip(&px).map(|(a, b)| a - b).collect());
            self.df
                .push_back(f.iter().zip(&pf).map(|(a, b)| a - b).collect());
            if self.dx.len() > self.memory {
                self.dx.pop_front();
                self.df.pop_front();
            }
        }
        let m = self.df.len();
        let gamma = (m > 0).then(|| {
            let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
            let mut g = DMatrix::from_fn(m, m, |i, j| dot(&self.df[i], &self.df[j]));
            let reg = 1e-12 * g.trace().max(f64::MIN_POSITIVE);
            for i in 0..m {
                g[(i, i)] += reg;
            }
            let rhs = DVector::from_fn(m, |i, _| dot(&self.df[i], &f));
            g.cholesky().map(|c| c.solve(&rhs))
        });
        self.last = Some((x, f));
        match gamma {
            Some(Some(gamma)) => {
                let mut out = gx.to_vec();
                for (j, &c) in gamma.iter().enumerate() {
                    for (o, (a, b)) in out.iter_mut().zip(self.dx[j].iter().zip(&self.df[j])) {
                        *o -= c * (a + b);
                    }
                }
                Some(out)
            }
            Some(None) => {
                self.reset();
                None
            }
            None => None,
        }
    }
}

struct Solver<'a> {
    a: &'a SymMatrix,
    n: usize,
    /// Dense residual `A - X`, row-major.
    r: Vec<f64>,
    state: BlockState,
    accel: Anderson,
    /// Blocks before the latest sweep.
    before: Vec<f64>,
}

impl<'a> Solver<'a> {
    fn new(a: &'a SymMatrix, state: BlockState) -> Self {
        let n = a.n();
        let mut r: Vec<f64> = (0..n * n).map(|p| a.get(p / n, p % n)).collect();
        let k = state.k;
        for (s, b) in state.subsets.iter().zip(&state.blocks) {
            for p in 0..k {
                for q in 0..k {
                    r[s[p] * n + s[q]] -= b[p * k + q];
                }
            }
        }
        let size = state.blocks.len() * k * k;
        Self {
            a,
            n,
            r,
            state,
            accel: Anderson::new(size),
            before: Vec::new(),
        }
    }

    fn recompute_residual(&mut self) {
        let (n, k) = (self.n, self.state.k);
        for (p, x) in self.r.iter_mut().enumerate() {
            *x = self.a.get(p / n, p % n);
        }
        for (s, b) in self.state.subsets.iter().zip(&self.state.blocks) {
            for p in 0..k {
                for q in 0..k {
                    self.r[s[p] * n + s[q]] -= b[p * k + q];
                }
            }
        }
    }

    /// Moves the iterate to the Anderson extrapolation of the latest sweep.
    /// The blocks may leave the PSD cone until the next sweep.
    fn extrapolate(&mut self) {
        let x = std::mem::take(&mut self.before);
        let gx = self.state.blocks.concat();
        let res = self.residual_norm();
        if let Some(next) = self.accel.step(x, &gx, res) {
            let kk = self.state.k * self.state.k;
            for (b, chunk) in self.state.blocks.iter_mut().zip(next.chunks(kk)) {
                b.copy_from_slice(chunk);
            }
            self.recompute_residual();
        }
    }

    fn residual_norm(&self) -> f64 {
        self.r.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn sweep(&mut self) {
        let (n, k) = (self.n, self.state.k);
        self.before = self.state.blocks.concat();
        let mut m = vec![0.0; k * k];
        for (s, b) in self.state.subsets.iter().zip(self.state.blocks.iter_mut()) {
            for p in 0..k {
                for q in 0..k {
                    m[p * k + q] = b[p * k + q] + self.r[s[p] * n + s[q]];
                }
            }
            project_psd(&mut m, k);
            for p in 0..k {
                for q in 0..k {
                    self.r[s[p] * n + s[q]] += b[p * k + q] - m[p * k + q];
                }
            }
            b.copy_from_slice(&m);
        }
    }

    /// Rank factorization of the blocks, dropping eigenvalues at or below
    /// `drop_rel * ||A||`.
    fn certificate(&self, drop_rel: f64, cfg: &ToleranceConfig) -> Vec<SparseVector> {
        let (n, k) = (self.n, self.state.k);
        let cut = drop_rel * self.a.frobenius_norm();
        let mut out = Vec::new();
        for (s, b) in self.state.subsets.iter().zip(&self.state.blocks) {
            if b.iter().all(|&x| x == 0.0) {
                continue;
            }
            let eig = SymmetricEigen::new(DMatrix::from_row_slice(k, k, b));
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
            for t in order {
                let l = eig.eigenvalues[t];
                if l <= cut {
                    continue;
                }
                let q = eig.eigenvectors.column(t);
                let sign = if q
                    .iter()
                    .fold(0.0f64, |m, &x| if x.abs() > m.abs() { x } else { m })
                    < 0.0
                {
                    -1.0
                } else {
                    1.0
                };
                let pairs = (0..k).map(|p| (s[p], sign * l.sqrt() * q[p]));
                out.extend(SparseVector::from_pairs(n, pairs, cfg.tol_zero));
            }
        }
        out
    }

    /// Normalized `X - A` shifted by the identity until every `k x k`
    /// principal submatrix is PSD.
    fn witness_candidate(&self, cfg: &ToleranceConfig) -> Option<SymMatrix> {
        let (n, k) = (self.n, self.state.k);
        let w = SymMatrix::from_fn(n, |i, j| -self.r[i * n + j]);
        let norm = w.frobenius_norm();
        if norm == 0.0 {
            return None;
        }
        let w = w.scaled(1.0 / norm);
        let dense = w.to_nalgebra();
        let mut worst = 0.0f64;
        for s in &self.state.subsets {
            let sub = DMatrix::from_fn(k, k, |p, q| dense[(s[p], s[q])]);
            worst = worst.min(min_eigenvalue(&sub));
        }
        let shift = -worst + 4.0 * cfg.tol_psd;
        let mut out = w;
        for i in 0..n {
            out.add_to(i, i, shift);
        }
        Some(out)
    }
}

/// Block iteration on the face of the PSD cone that contains `A`.
///
/// With `A = V Vᵀ` (`V` is `n x r`, `r = rank A`), every term of a
/// decomposition is `V c` with `c` in `N_S`, the vectors whose image vanishes
/// off `S`. The iteration fits `I_r = Σ N_S X_S N_Sᵀ` with `X_S` PSD, which
/// stays strictly feasible for singular members, where the plain iteration
/// converges sublinearly.
struct FacialSolver {
    /// `Q_r Λ_r^{1/2}`.
    v: DMatrix<f64>,
    /// `Q_r Λ_r^{-1/2}`, so that `Uᵀ V = I_r`.
    u: DMatrix<f64>,
    /// Projector onto the null space of `A`.
    null_proj: DMatrix<f64>,
    lambda_max: f64,
    k: usize,
    /// Subsets with a nontrivial `N_S`.
    subsets: Vec<Vec<usize>>,
    /// Orthonormal bases of `N_S`, `r x d_S`.
    bases: Vec<DMatrix<f64>>,
    xs: Vec<DMatrix<f64>>,
    /// `I_r - Σ N_S X_S N_Sᵀ`.
    resid: DMatrix<f64>,
    accel: Anderson,
    before: Vec<f64>,
}

impl FacialSolver {
    /// `None` unless `A` is singular with positive rank.
    fn new(a: &SymMatrix, k: usize, cfg: &ToleranceConfig) -> Option<Self> {
        let n = a.n();
        let eig = SymmetricEigen::new(a.to_nalgebra());
        let cut = cfg.tol_psd * a.frobenius_norm();
        let cols: Vec<usize> = (0..n).filter(|&t| eig.eigenvalues[t] > cut).collect();
        let r = cols.len();
        if r == 0 || r == n {
            return None;
        }
        let v = DMatrix::from_fn(n, r, |i, c| {
            eig.eigenvectors[(i, cols[c])] * eig.eigenvalues[cols[c]].sqrt()
        });
        let u = DMatrix::from_fn(n, r, |i, c| {
            eig.eigenvectors[(i, cols[c])] / eig.eigenvalues[cols[c]].sqrt()
        });
        let q = DMatrix::from_fn(n, r, |i, c| eig.eigenvectors[(i, cols[c])]);
        let null_proj = DMatrix::identity(n, n) - &q * q.transpose();
        let lambda_max = cols.iter().map(|&t| eig.eigenvalues[t]).fold(0.0, f64::max);
        let sigma_cut = cfg.tol_psd * lambda_max.sqrt();
        let (mut kept_subsets, mut bases) = (Vec::new(), Vec::new());
        for s in subsets(n, k) {
            let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            let basis = if rest.is_empty() {
                DMatrix::identity(r, r)
            } else {
                // Row space of V restricted to the complement, from a
                // rank-revealing QR of its transpose.
                let vct = DMatrix::from_fn(r, rest.len(), |c, p| v[(rest[p], c)]);
                let qr = vct.col_piv_qr();
                let (q, rr) = (qr.q(), qr.r());
                let mut comp = DMatrix::identity(r, r);
                for t in 0..rr.nrows().min(rr.ncols()) {
                    if rr[(t, t)].abs() > sigma_cut {
                        let col = q.column(t);
                        comp -= col * col.transpose();
                    }
                }
                let ce = SymmetricEigen::new(comp);
                let keep: Vec<usize> = (0..r).filter(|&t| ce.eigenvalues[t] > 0.5).collect();
                DMatrix::from_fn(r, keep.len(), |i, c| ce.eigenvectors[(i, keep[c])])
            };
            if basis.ncols() > 0 {
                kept_subsets.push(s);
                bases.push(basis);
            }
        }
        let xs: Vec<DMatrix<f64>> = bases
            .iter()
            .map(|b| DMatrix::zeros(b.ncols(), b.ncols()))
            .collect();
        let size = xs.iter().map(|x| x.len()).sum();
        Some(Self {
            v,
            u,
            null_proj,
            lambda_max,
            k,
            subsets: kept_subsets,
            bases,
            xs,
            resid: DMatrix::identity(r, r),
            accel: Anderson::new(size),
            before: Vec::new(),
        })
    }

    /// Bound on `||A - Σ terms||_F` in the original coordinates.
    fn residual_bound(&self) -> f64 {
        self.lambda_max * self.resid.norm()
    }

    fn flat(&self) -> Vec<f64> {
        self.xs.iter().flat_map(|x| x.iter().copied()).collect()
    }

    fn sweep(&mut self) {
        self.before = self.flat();
        for (b, x) in self.bases.iter().zip(self.xs.iter_mut()) {
            let d = b.ncols();
            let m = &*x + b.transpose() * &self.resid * b;
            let mut buf: Vec<f64> = (0..d * d)
                .map(|p| 0.5 * (m[(p / d, p % d)] + m[(p % d, p / d)]))
                .collect();
            project_psd(&mut buf, d);
            let new = DMatrix::from_row_slice(d, d, &buf);
            self.resid -= b * (&new - &*x) * b.transpose();
            *x = new;
        }
    }

    fn extrapolate(&mut self) {
        let x = std::mem::take(&mut self.before);
        let gx = self.flat();
        let res = self.resid.norm();
        if let Some(next) = self.accel.step(x, &gx, res) {
            let mut off = 0;
            for x in self.xs.iter_mut() {
                let len = x.len();
                x.copy_from_slice(&next[off..off + len]);
                off += len;
            }
            let r = self.resid.nrows();
            self.resid = DMatrix::identity(r, r);
            for (b, x) in self.bases.iter().zip(&self.xs) {
                self.resid -= b * x * b.transpose();
            }
        }
    }

    /// Candidates `-U R Uᵀ + t P_null + shift I` for a few weights `t`.
    ///
    /// On a principal block, vectors in the range of `A` see `-R` restricted
    /// to `N_S`, which is negative semidefinite at the least-squares optimum,
    /// and the null-space term dominates elsewhere. Neither term pairs with
    /// `A`, so the shift alone decides the sign of `<W, A>`.
    fn witness_candidates(&self, cfg: &ToleranceConfig) -> Vec<SymMatrix> {
        let n = self.v.nrows();
        let w = -(&self.u * &self.resid * self.u.transpose());
        let norm = w.norm();
        if norm == 0.0 {
            return Vec::new();
        }
        let w = w / norm;
        let k = self.k;
        let blocks = subsets(n, k);
        [0.0, 0.1, 1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6]
            .iter()
            .map(|&t| {
                let m = &w + &self.null_proj * t;
                let worst = blocks
                    .iter()
                    .map(|s| min_eigenvalue(&DMatrix::from_fn(k, k, |p, q| m[(s[p], s[q])])))
                    .fold(0.0f64, f64::min);
                let shift = -worst + 4.0 * cfg.tol_psd;
                SymMatrix::from_fn(n, |i, j| m[(i, j)] + if i == j { shift } else { 0.0 })
            })
            .collect()
    }

    /// Terms `V N_S q sqrt(λ)` restricted to `S`, in reduced coordinates.
    fn certificate(&self, cfg: &ToleranceConfig) -> Vec<SparseVector> {
        let n = self.v.nrows();
        let mut out = Vec::new();
        for ((s, b), x) in self.subsets.iter().zip(&self.bases).zip(&self.xs) {
            let eig = SymmetricEigen::new(x.clone());
            for (t, &l) in eig.eigenvalues.iter().enumerate() {
                if l <= 0.0 {
                    continue;
                }
                let full = &self.v * (b * eig.eigenvectors.column(t) * l.sqrt());
                out.extend(SparseVector::from_pairs(
                    n,
                    s.iter().map(|&i| (i, full[i])),
                    cfg.tol_zero,
                ));
            }
        }
        out
    }
}

/// Sweeps between progress checks of the facial phase. The first window that
/// shrinks the residual by less than `FACIAL_PROGRESS` switches acceleration
/// off, the second ends the phase.
const FACIAL_WINDOW: usize = 100;
const FACIAL_PROGRESS: f64 = 0.999;

fn sweeps_between_witness_attempts(sweep: usize) -> usize {
    if sweep < 200 {
        10
    } else {
        50
    }
}

/// Decides whether `A` lies in the factor-width-`k` cone.
///
/// `Member` carries a decomposition reconstructing `A` within `tol_recon`;
/// `NotMember` carries a dual witness accepted by [`verify_dual_witness`].
/// When neither is reached within `max_iter` sweeps the verdict is
/// `Undetermined`.
pub fn membership(a: &SymMatrix, k: usize, cfg: &ToleranceConfig) -> Result<MembershipVerdict> {
    membership_warm(a, k, cfg, None).map(|(v, _)| v)
}

pub(crate) fn membership_warm(
    a: &SymMatrix,
    k: usize,
    cfg: &ToleranceConfig,
    warm: Option<&BlockState>,
) -> Result<(MembershipVerdict, BlockState)> {
    cfg.validate()?;
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::BadK { k, n });
    }
    require_psd(a, cfg)?;

    // Zero-diagonal rows of a PSD matrix vanish and take no part in any block.
    let red = Reduction::new(a, cfg);
    if red.kept.len() > MEMBERSHIP_N_LIMIT {
        return Err(Error::TooLarge {
            n: red.kept.len(),
            limit: MEMBERSHIP_N_LIMIT,
        });
    }
    if red.kept.is_empty() {
        let verdict = MembershipVerdict {
            k,
            status: MembershipStatus::Member,
            distance_estimate: 0.0,
            certificate: Some(Certificate::Decomposition(FWDecomposition {
                k,
                n,
                vectors: Vec::new(),
                residual: 0.0,
            })),
            iterations_used: 0,
        };
        return Ok((verdict, BlockState::zero(0, 0)));
    }
    let reduced = red.matrix(a);
    let nr = red.kept.len();
    let kr = k.min(nr);
    let state = match warm {
        Some(w) if w.k == kr && w.subsets.first().is_none_or(|s| s.len() == kr) => w.clone(),
        Some(w) if w.k < kr && w.subsets.iter().all(|s| s.iter().all(|&i| i < nr)) => {
            w.widened(nr, kr)
        }
        _ => BlockState::zero(nr, kr),
    };
    let initial_target = 0.5 * cfg.tol_recon * a.frobenius_norm() / red.factor();
    let mut member_target = initial_target;
    let mut sweep = 0;

    if (2..nr).contains(&kr) {
        if let Some(mut fs) = FacialSolver::new(&reduced, kr, cfg) {
            let mut window_start = f64::INFINITY;
            let mut accelerate = true;
            while sweep < cfg.max_iter / 2 {
                if sweep > 0 && accelerate {
                    fs.extrapolate();
                }
                fs.sweep();
                sweep += 1;
                let res = fs.residual_bound();
                if res <= member_target {
                    let vs = fs.certificate(cfg).iter().map(|v| red.vector(v)).collect();
                    if let Ok(d) = FWDecomposition::build(a, k, vs, cfg) {
                        let verdict = MembershipVerdict {
                            k,
                            status: MembershipStatus::Member,
                            distance_estimate: res * red.factor(),
                            certificate: Some(Certificate::Decomposition(d)),
                            iterations_used: sweep,
                        };
                        return Ok((verdict, state));
                    }
                    member_target *= 0.5;
                }
                if sweep == 10 || sweep == 30 || sweep % FACIAL_WINDOW == 0 {
                    let found = fs
                        .witness_candidates(cfg)
                        .iter()
                        .find_map(|w| embed_witness(a, w, &red, k, cfg));
                    if let Some(c) = found {
                        let verdict = MembershipVerdict {
                            k,
                            status: MembershipStatus::NotMember,
                            distance_estimate: res * red.factor(),
                            certificate: Some(c),
                            iterations_used: sweep,
                        };
                        return Ok((verdict, state));
                    }
                }
                if sweep % FACIAL_WINDOW == 0 {
                    if res > FACIAL_PROGRESS * window_start {
                        if !accelerate {
                            break;
                        }
                        accelerate = false;
                        window_start = f64::INFINITY;
                    } else {
                        window_start = res;
                    }
                }
            }
            member_target = initial_target;
        }
    }

    let mut solver = Solver::new(&reduced, state);
    let mut next_witness = sweep + 10;
    let status = loop {
        if sweep >= cfg.max_iter {
            break None;
        }
        if sweep > 0 {
            solver.extrapolate();
        }
        solver.sweep();
        sweep += 1;
        let res = solver.residual_norm();
        if res <= member_target {
            let vectors = [cfg.tol_psd, 0.0]
                .iter()
                .map(|&drop| {
                    solver
                        .certificate(drop, cfg)
                        .into_iter()
                        .map(|v| red.vector(&v))
                        .collect::<Vec<_>>()
                })
                .find_map(|vs| FWDecomposition::build(a, k, vs, cfg).ok());
            if let Some(d) = vectors {
                break Some(Certificate::Decomposition(d));
            }
            member_target *= 0.5;
        }
        if sweep >= next_witness || sweep == cfg.max_iter {
            next_witness = sweep + sweeps_between_witness_attempts(sweep);
            if let Some(c) = try_witness(a, &solver, &red, k, cfg) {
                break Some(c);
            }
        }
    };
    let verdict = MembershipVerdict {
        k,
        status: match &status {
            Some(Certificate::Decomposition(_)) => MembershipStatus::Member,
            Some(Certificate::Witness(_)) => MembershipStatus::NotMember,
            None => MembershipStatus::Undetermined,
        },
        distance_estimate: solver.residual_norm() * red.factor(),
        certificate: status,
        iterations_used: sweep,
    };
    Ok((verdict, solver.state))
}

/// `A` restricted to its nonzero-diagonal rows and scaled to unit diagonal.
/// Both operations preserve factor width.
struct Reduction {
    n: usize,
    kept: Vec<usize>,
    /// `sqrt(a_ii)` for the kept rows.
    scale: Vec<f64>,
}

impl Reduction {
    fn new(a: &SymMatrix, cfg: &ToleranceConfig) -> Self {
        let kept: Vec<usize> = (0..a.n()).filter(|&i| a.get(i, i) > cfg.tol_zero).collect();
        let scale = kept.iter().map(|&i| a.get(i, i).sqrt()).collect();
        Self {
            n: a.n(),
            kept,
            scale,
        }
    }

    fn matrix(&self, a: &SymMatrix) -> SymMatrix {
        let (k, d) = (&self.kept, &self.scale);
        SymMatrix::from_fn(k.len(), |p, q| a.get(k[p], k[q]) / (d[p] * d[q]))
    }

    /// `||A - D X D|| <= factor * ||B - X||` for the reduced matrix `B`.
    fn factor(&self) -> f64 {
        self.scale.iter().fold(0.0f64, |m, &d| m.max(d * d))
    }

    fn vector(&self, v: &SparseVector) -> SparseVector {
        v.scaled_by(&self.scale).embed(self.n, &self.kept)
    }

    /// `D^{-1} W D^{-1}`, which pairs with `A` as `W` pairs with `B`.
    fn witness(&self, w_red: &SymMatrix) -> SymMatrix {
        let (k, d) = (&self.kept, &self.scale);
        let mut w = SymMatrix::zeros(self.n);
        for p in 0..k.len() {
            for q in 0..=p {
                w.set(k[p], k[q], w_red.get(p, q) / (d[p] * d[q]));
            }
        }
        w
    }
}

fn try_witness(
    a: &SymMatrix,
    solver: &Solver,
    red: &Reduction,
    k: usize,
    cfg: &ToleranceConfig,
) -> Option<Certificate> {
    embed_witness(a, &solver.witness_candidate(cfg)?, red, k, cfg)
}

fn embed_witness(
    a: &SymMatrix,
    w_red: &SymMatrix,
    red: &Reduction,
    k: usize,
    cfg: &ToleranceConfig,
) -> Option<Certificate> {
    let w = red.witness(w_red);
    let witness = DualWitness {
        inner_product: w.inner(a),
        w,
    };
    verify_dual_witness(a, &witness, k, cfg).then_some(Certificate::Witness(witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    /// Decided by exact tests, structure, or verified witnesses.
    Exact,
    /// Relies on a tolerance-based membership verdict.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorWidth {
    /// Best known value: the smallest width shown to be feasible.
    pub k: usize,
    pub exactness: Exactness,
    /// The width lies in `[lo, hi]`; `lo == hi` unless some verdict was undetermined.
    pub lo: usize,
    pub hi: usize,
}

/// Smallest `k` such that `A` has factor width at most `k`.
///
/// Widths 1 and 2 come from the exact tests. Above that the search runs over
/// `[3, structural bound]` with [`membership`], relying on the nesting of the
/// cones.
pub fn factor_width(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<FactorWidth> {
    cfg.validate()?;
    require_psd(a, cfg)?;
    let exact = |k| FactorWidth {
        k,
        exactness: Exactness::Exact,
        lo: k,
        hi: k,
    };
    if factor_width_1(a, cfg)? {
        return Ok(exact(1));
    }
    if factor_width_le_2_unchecked(a, cfg) {
        return Ok(exact(2));
    }
    let (ub, _) = structural_width_upper_bound(a, cfg)?;
    let (mut lo, mut hi) = (3, ub.max(3));
    let mut hi_numeric = false;
    let mut warm: Option<BlockState> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let (v, state) = membership_warm(a, mid, cfg, warm.as_ref())?;
        match v.status {
            MembershipStatus::Member => {
                hi = mid;
                hi_numeric = true;
                warm = None;
            }
            MembershipStatus::NotMember => {
                lo = mid + 1;
                warm = Some(state);
            }
            MembershipStatus::Undetermined => {
                return Ok(FactorWidth {
                    k: hi,
                    exactness: Exactness::Numeric,
                    lo,
                    hi,
                });
            }
        }
    }
    Ok(FactorWidth {
        k: hi,
        exactness: if hi_numeric {
            Exactness::Numeric
        } else {
            Exactness::Exact
        },
        lo,
        hi,
    })
}
