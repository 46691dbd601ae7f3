//! Dense symmetric matrices and the basic tests everything else is built on.
//!
//! [`SymMatrix`] stores the upper triangle only, so `get(i, j)` and `get(j, i)`
//! read the same slot. Structural zeros are decided with
//! [`ToleranceConfig::tol_zero`] rather than exact equality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every routine in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Pivot acceptance threshold, relative to the largest entry.
    pub tol_psd: f64,
    /// Relative Frobenius residual accepted for a decomposition.
    pub tol_recon: f64,
    /// Entries with magnitude at most this are structural zeros.
    pub tol_zero: f64,
    /// Iteration cap for the iterative solvers.
    pub max_iter: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_psd: 1e-9,
            tol_recon: 1e-8,
            tol_zero: 1e-12,
            max_iter: 50_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t.is_finite() && t > 0.0;
        if !ok(self.tol_psd) || !ok(self.tol_recon) || !ok(self.tol_zero) {
            return Err(Error::BadArgs(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.max_iter == 0 {
            return Err(Error::BadArgs("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Real symmetric matrix in packed upper-triangular storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

#[inline]
fn packed_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    j * (j + 1) / 2 + i
}

impl SymMatrix {
    /// Zero matrix of dimension `n`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "SymMatrix needs n >= 1");
        Self {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..=j {
                m.data[packed_index(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from full rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows_with_tolerance(rows, 0.0)
    }

    /// Builds a matrix from full rows, accepting `|a_ij - a_ji| <= rel * max(|a_ij|, |a_ji|)`.
    /// The stored value is the mean of the two.
    pub fn from_rows_with_tolerance(rows: &[Vec<f64>], rel: f64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadArgs("matrix must have at least one row".into()));
        }
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let mut m = Self::zeros(n);
        for j in 0..n {
            for i in 0..=j {
                let (u, l) = (rows[i][j], rows[j][i]);
                if (u - l).abs() > rel * u.abs().max(l.abs()) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                m.set(i, j, if u == l { u } else { 0.5 * (u + l) });
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[packed_index(i, j)]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[packed_index(i, j)] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[packed_index(i, j)] += v;
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn max_diag(&self) -> f64 {
        (0..self.n).fold(0.0_f64, |m, i| m.max(self.get(i, i)))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Trace pairing `tr(self * other)`.
    pub fn inner(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        let mut s = 0.0;
        for j in 0..self.n {
            for i in 0..=j {
                let p = self.get(i, j) * other.get(i, j);
                s += if i == j { p } else { 2.0 * p };
            }
        }
        s
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SymMatrix { n: self.n, data })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.check_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SymMatrix { n: self.n, data })
    }

    pub fn scaled(&self, c: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// `D A D` for the diagonal matrix `D = diag(d)`.
    pub fn congruence_diag(&self, d: &[f64]) -> Result<SymMatrix> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: d.len(),
            });
        }
        Ok(SymMatrix::from_fn(self.n, |i, j| {
            d[i] * self.get(i, j) * d[j]
        }))
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// `P A Pᵀ` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.n);
        self.principal(perm)
    }

    /// Adds `v vᵀ` where `v` is given by `(index, value)` pairs.
    pub fn add_outer_sparse(&mut self, support: &[usize], values: &[f64]) {
        for (a, (&i, &vi)) in support.iter().zip(values).enumerate() {
            for (&j, &vj) in support[a..].iter().zip(&values[a..]) {
                self.add_to(i, j, vi * vj);
            }
        }
    }

    /// True when `|a_ij| <= tol_zero`.
    #[inline]
    pub fn is_zero_at(&self, i: usize, j: usize, cfg: &ToleranceConfig) -> bool {
        self.get(i, j).abs() <= cfg.tol_zero
    }

    /// True when every off-diagonal entry is a structural nonzero.
    pub fn all_offdiag_nonzero(&self, cfg: &ToleranceConfig) -> bool {
        (0..self.n).all(|j| (0..j).all(|i| !self.is_zero_at(i, j, cfg)))
    }

    pub fn is_entrywise_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    fn check_dims(&self, other: &SymMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

/// Outcome of the diagonally pivoted Cholesky test.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyResult {
    pub success: bool,
    /// Lower-triangular factor in pivot order, row-major `n x n`.
    /// Columns past `rank` are zero.
    pub factor: Vec<f64>,
    /// `perm[i]` is the original index placed at position `i`.
    pub perm: Vec<usize>,
    /// Number of pivots above `tol_psd * scale`.
    pub rank: usize,
    pub min_pivot: f64,
}

impl CholeskyResult {
    /// `F Fᵀ` mapped back to the original index order.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.perm.len();
        let mut out = SymMatrix::zeros(n.max(1));
        for a in 0..n {
            for b in 0..=a {
                let s: f64 = (0..=b)
                    .map(|c| self.factor[a * n + c] * self.factor[b * n + c])
                    .sum();
                out.set(self.perm[a], self.perm[b], s);
            }
        }
        out
    }
}

/// Decides positive semidefiniteness with a diagonally pivoted Cholesky
/// factorization.
///
/// The scale is the largest entry magnitude (the largest diagonal entry when
/// the input is PSD). Pivots above `tol_psd * scale` count towards the rank.
/// Once the largest remaining pivot drops below that threshold the remaining
/// Schur complement must be negligible: diagonal entries at least
/// `-tol_psd * scale` and off-diagonal entries bounded by the tolerance-inflated
/// geometric mean of the two diagonals.
pub fn is_psd(a: &SymMatrix, cfg: &ToleranceConfig) -> CholeskyResult {
    let n = a.n();
    let scale = a.max_abs();
    let thr = cfg.tol_psd * scale;
    let mut s: Vec<f64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            s.push(a.get(i, j));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut factor = vec![0.0; n * n];
    let mut min_pivot = f64::INFINITY;
    let mut rank = 0;
    let mut success = true;

    for step in 0..n {
        let mut p = step;
        for i in step + 1..n {
            if s[i * n + i] > s[p * n + p] {
                p = i;
            }
        }
        if p != step {
            swap_sym(&mut s, n, step, p);
            perm.swap(step, p);
            for c in 0..step {
                factor.swap(step * n + c, p * n + c);
            }
        }
        let piv = s[step * n + step];
        if piv <= thr {
            for i in step..n {
                let d = s[i * n + i];
                min_pivot = min_pivot.min(d);
                if d < -thr {
                    success = false;
                }
                for j in step..i {
                    let bound =
                        ((s[i * n + i].max(0.0) + thr) * (s[j * n + j].max(0.0) + thr)).sqrt();
                    if s[i * n + j].abs() > bound {
                        success = false;
                    }
                }
            }
            break;
        }
        min_pivot = min_pivot.min(piv);
        rank += 1;
        let l = piv.sqrt();
        factor[step * n + step] = l;
        for i in step + 1..n {
            factor[i * n + step] = s[i * n + step] / l;
        }
        for i in step + 1..n {
            let li = factor[i * n + step];
            for j in step + 1..=i {
                let v = s[i * n + j] - li * factor[j * n + step];
                s[i * n + j] = v;
                s[j * n + i] = v;
            }
        }
    }
    if n == 0 || min_pivot == f64::INFINITY {
        min_pivot = 0.0;
    }
    CholeskyResult {
        success,
        factor,
        perm,
        rank,
        min_pivot,
    }
}

fn swap_sym(s: &mut [f64], n: usize, a: usize, b: usize) {
    for k in 0..n {
        s.swap(a * n + k, b * n + k);
    }
    for k in 0..n {
        s.swap(k * n + a, k * n + b);
    }
}

/// `rank(A)` as counted by [`is_psd`].
pub fn psd_rank(a: &SymMatrix, cfg: &ToleranceConfig) -> usize {
    is_psd(a, cfg).rank
}

/// Result of scaling a PSD matrix to unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScaling {
    /// `d[t] = 1 / sqrt(a(kept[t], kept[t]))`.
    pub d: Vec<f64>,
    /// `D A D` restricted to the kept indices.
    pub b: SymMatrix,
    /// Original indices with a nonzero diagonal, ascending.
    pub kept: Vec<usize>,
    /// Original dimension.
    pub n: usize,
}

impl DiagonalScaling {
    pub fn dropped(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.kept.contains(i)).collect()
    }

    /// Maps a matrix in normalized coordinates back to the original ones.
    pub fn unscale(&self, b: &SymMatrix) -> SymMatrix {
        let inv: Vec<f64> = self.d.iter().map(|d| 1.0 / d).collect();
        let mut out = SymMatrix::zeros(self.n);
        for (t, &i) in self.kept.iter().enumerate() {
            for (u, &j) in self.kept.iter().enumerate().take(t + 1) {
                out.set(i, j, inv[t] * b.get(t, u) * inv[u]);
            }
        }
        out
    }
}

/// Rescales `A` to unit diagonal, dropping indices whose diagonal is a
/// structural zero (their whole row must then vanish).
pub fn diagonal_normalize(a: &SymMatrix, cfg: &ToleranceConfig) -> Result<DiagonalScaling> {
    let n = a.n();
    let mut kept = Vec::new();
    for i in 0..n {
        if a.get(i, i) > cfg.tol_zero {
            kept.push(i);
        } else if (0..n).any(|j| j != i && !a.is_zero_at(i, j, cfg)) {
            return Err(Error::ZeroDiagonalNonzeroRow { index: i });
        }
    }
    if kept.is_empty() {
        return Err(Error::BadArgs("every diagonal entry is zero".into()));
    }
    let d: Vec<f64> = kept.iter().map(|&i| 1.0 / a.get(i, i).sqrt()).collect();
    let b = SymMatrix::from_fn(kept.len(), |t, u| {
        if t == u {
            1.0
        } else {
            d[t] * a.get(kept[t], kept[u]) * d[u]
        }
    });
    Ok(DiagonalScaling { d, b, kept, n })
}

/// Smallest `k >= 1` with `a_ij = 0` whenever `|i - j| >= k`.
pub fn bandwidth(a: &SymMatrix, cfg: &ToleranceConfig) -> usize {
    let n = a.n();
    let mut band = 1;
    for j in 0..n {
        for i in 0..j {
            if !a.is_zero_at(i, j, cfg) {
                band = band.max(j - i + 1);
            }
        }
    }
    band
}

/// Structural nonzero counts: strictly above the diagonal, and off-diagonal total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NnzStats {
    pub nnzu: usize,
    pub nnz: usize,
}

pub fn nnz_stats(a: &SymMatrix, cfg: &ToleranceConfig) -> NnzStats {
    let n = a.n();
    let nnzu = (0..n)
        .map(|j| (0..j).filter(|&i| !a.is_zero_at(i, j, cfg)).count())
        .sum();
    NnzStats {
        nnzu,
        nnz: 2 * nnzu,
    }
}

/// `m_ii = |a_ii|`, `m_ij = -|a_ij|`.
pub fn comparison_matrix(a: &SymMatrix) -> SymMatrix {
    SymMatrix::from_fn(a.n(), |i, j| {
        let v = a.get(i, j).abs();
        if i == j {
            v
        } else {
            -v
        }
    })
}

/// Row-wise weak diagonal dominance `a_ii >= sum_{j != i} |a_ij|`, with a
/// relative slack of `tol` against the largest diagonal entry.
pub fn is_diagonally_dominant(a: &SymMatrix, tol: f64) -> bool {
    let n = a.n();
    let slack = tol * a.max_diag();
    (0..n).all(|i| {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| a.get(i, j).abs()).sum();
        a.get(i, i) + slack >= off
    })
}

/// Entrywise product.
pub fn hadamard_product(a: &SymMatrix, b: &SymMatrix) -> Result<SymMatrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    Ok(SymMatrix::from_fn(a.n(), |i, j| a.get(i, j) * b.get(i, j)))
}

/// True when `s` is (numerically) a positive integer.
pub(crate) fn as_positive_integer(s: f64) -> Option<u32> {
    if s >= 1.0 && s.fract() == 0.0 && s <= u32::MAX as f64 {
        Some(s as u32)
    } else {
        None
    }
}

/// Entrywise `s`-th power. Non-integer exponents need a nonnegative matrix.
pub fn hadamard_power(a: &SymMatrix, s: f64) -> Result<SymMatrix> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::BadArgs(format!("power must be positive, got {s}")));
    }
    if let Some(m) = as_positive_integer(s) {
        let m = m as i32;
        return Ok(SymMatrix::from_fn(a.n(), |i, j| a.get(i, j).powi(m)));
    }
    for j in 0..a.n() {
        for i in 0..=j {
            if a.get(i, j) < 0.0 {
                return Err(Error::NegativeEntryNonIntegerPower { row: i, col: j });
            }
        }
    }
    Ok(SymMatrix::from_fn(a.n(), |i, j| a.get(i, j).powf(s)))
}

/// Relative Frobenius distance `||a - b|| / ||a||` (absolute when `a = 0`).
pub fn relative_residual(a: &SymMatrix, b: &SymMatrix) -> f64 {
    let diff = a.sub(b).expect("same dimension").frobenius_norm();
    let norm = a.frobenius_norm();
    if norm > 0.0 {
        diff / norm
    } else {
        diff
    }
}
