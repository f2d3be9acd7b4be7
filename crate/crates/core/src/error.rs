use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: polynomials in {left} and {right} variables")]
    Dimension { left: usize, right: usize },
    #[error("variable index {index} out of range 1..={nvars}")]
    VariableIndex { index: usize, nvars: usize },
    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    Shape {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("invalid Grassmannian G({r},{k}): need 0 < r < k")]
    InvalidSpec { r: usize, k: usize },
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
    #[error("required weighted degree {expected}, found {found}")]
    Degree { expected: i64, found: i64 },
    #[error("polynomial in the chern roots is not symmetric")]
    NotSymmetric,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not rational: {0}")]
    Rationality(String),
    #[error("floating-point residual {residual} exceeds tolerance {tolerance}; raise precision")]
    Precision { residual: String, tolerance: String },
    #[error("cannot combine exact and floating-point values")]
    BackendMismatch,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable X{index} at position {position} out of range 1..={nvars}")]
    Range {
        position: usize,
        index: usize,
        nvars: usize,
    },
}
