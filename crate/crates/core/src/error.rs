use thiserror::Error;

/// Errors produced while building codes, decoding, or running experiments.
#[derive(Debug, Error)]
pub enum Error {
    #[error("base matrix is empty")]
    EmptyGrid,
    #[error(
        "base matrix rows have unequal lengths (row {row} has {len} entries, expected {expected})"
    )]
    RaggedGrid {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("row {0} has no positive entry")]
    EmptyRow(usize),
    #[error("column {0} has no positive entry")]
    EmptyColumn(usize),
    #[error("{rows}x{cols} base matrix has no positive design rate (need rows < cols)")]
    NonPositiveRate { rows: usize, cols: usize },
    #[error("entry {value} at ({row}, {col}) is not divisible into {parts} equal parts")]
    NotDivisible {
        row: usize,
        col: usize,
        value: u32,
        parts: usize,
    },
    #[error("spreading components do not sum to the base matrix: {0}")]
    SpreadingMismatch(String),
    #[error("lift size {lift} cannot supply {multiplicity} disjoint permutations")]
    LiftTooSmall { multiplicity: u32, lift: usize },
    #[error("duplicate circulant shift {shift} on parallel edges at base entry ({row}, {col})")]
    DuplicateShift {
        row: usize,
        col: usize,
        shift: usize,
    },
    #[error("explicit shifts do not match the base matrix: {0}")]
    ShiftShape(String),
    #[error(
        "no disjoint permutation set found for base entry ({row}, {col}) after {attempts} attempts"
    )]
    PermutationRetryExhausted {
        row: usize,
        col: usize,
        attempts: usize,
    },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid parity-check matrix: {0}")]
    InvalidMatrix(String),
    #[error("alist line {line}: {msg}")]
    Alist { line: usize, msg: String },
    #[error("cannot unwrap {rows}x{cols} matrix into {tile_rows}x{tile_cols} tiles")]
    TileMismatch {
        rows: usize,
        cols: usize,
        tile_rows: usize,
        tile_cols: usize,
    },
    #[error("non-finite channel LLR at position {0}")]
    NonFiniteLlr(usize),
    #[error("erasure probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("code rate {0} outside (0, 1]")]
    InvalidRate(f64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("code contains only the zero codeword")]
    ZeroCode,
    #[error("code dimension {k} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { k: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by invalid user input, as opposed to I/O or
    /// other runtime failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
