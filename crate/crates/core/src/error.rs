use thiserror::Error;

/// Errors raised by the factor-width routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error(
        "entry ({row}, {col}) is negative; non-integer Hadamard powers need a nonnegative matrix"
    )]
    NegativeEntryNonIntegerPower { row: usize, col: usize },

    #[error("diagonal entry {index} is zero but its row is not")]
    ZeroDiagonalNonzeroRow { index: usize },

    #[error("matrix is not positive semidefinite (minimum pivot {min_pivot:e})")]
    NotPsd { min_pivot: f64 },

    #[error("k = {k} is outside 1..={n}")]
    BadK { k: usize, n: usize },

    #[error("graph is not chordal")]
    NotChordal,

    #[error("n = {n} exceeds the exhaustive-search limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("bandwidth {bandwidth} exceeds k = {k}")]
    BandTooWide { bandwidth: usize, k: usize },

    #[error("matrix is not tridiagonal")]
    NotTridiagonal,

    #[error("zero pivot at index {index} with nonzero coupling {coupling:e}")]
    InconsistentZeroPivot { index: usize, coupling: f64 },

    #[error("matrix is not an arrowhead matrix: entry ({row}, {col}) is nonzero")]
    NotArrowhead { row: usize, col: usize },

    #[error("row {row} is not diagonally dominant with equality (diagonal {diagonal}, off-diagonal sum {offdiag_sum})")]
    NotDdEquality {
        row: usize,
        diagonal: f64,
        offdiag_sum: f64,
    },

    #[error("seed vectors do not reconstruct the unit-diagonal matrix (residual {residual:e})")]
    BadSeed { residual: f64 },

    #[error("target {target} is not greater than 1")]
    TargetNotAboveOne { target: f64 },

    #[error("diagonal index {index} lies in no 3x3 principal submatrix with all entries nonzero")]
    HypothesisFailed { index: usize },

    #[error("matrix does not have factor width at most 2")]
    NotFactorWidth2,

    #[error("bad block structure: {0}")]
    BadBlockStructure(String),

    #[error("bad arguments: {0}")]
    BadArgs(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("principal 2x2 submatrix ({i}, {j}) is singular")]
    DegenerateSubmatrix { i: usize, j: usize },

    #[error("no Hadamard power up to {cap} has factor width at most 2")]
    CapExceeded { cap: usize },

    #[error("s = {s} is outside the conjectured regime (threshold {threshold}, integer powers excluded)")]
    BadRegime { s: f64, threshold: f64 },

    #[error("reconstruction residual {residual:e} exceeds tolerance {tolerance:e}")]
    ReconstructionFailed { residual: f64, tolerance: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSymmetric { .. } => "not_symmetric",
            Error::NegativeEntryNonIntegerPower { .. } => "negative_entry_non_integer_power",
            Error::ZeroDiagonalNonzeroRow { .. } => "zero_diagonal_nonzero_row",
            Error::NotPsd { .. } => "not_psd",
            Error::BadK { .. } => "bad_k",
            Error::NotChordal => "not_chordal",
            Error::TooLarge { .. } => "too_large",
            Error::BandTooWide { .. } => "band_too_wide",
            Error::NotTridiagonal => "not_tridiagonal",
            Error::InconsistentZeroPivot { .. } => "inconsistent_zero_pivot",
            Error::NotArrowhead { .. } => "not_arrowhead",
            Error::NotDdEquality { .. } => "not_dd_equality",
            Error::BadSeed { .. } => "bad_seed",
            Error::TargetNotAboveOne { .. } => "target_not_above_one",
            Error::HypothesisFailed { .. } => "hypothesis_failed",
            Error::NotFactorWidth2 => "not_factor_width_2",
            Error::BadBlockStructure(_) => "bad_block_structure",
            Error::BadArgs(_) => "bad_args",
            Error::Overflow(_) => "overflow",
            Error::DegenerateSubmatrix { .. } => "degenerate_submatrix",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::BadRegime { .. } => "bad_regime",
            Error::ReconstructionFailed { .. } => "reconstruction_failed",
            Error::Parse { .. } => "parse",
        }
    }
}
