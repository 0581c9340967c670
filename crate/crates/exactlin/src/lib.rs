//! Exact linear algebra over Q and prime fields: scalars, sparse matrices,
//! rank/kernel/inverse, and homology of finite chain-complex windows.

pub mod complex;
pub mod elim;
pub mod exec;
pub mod scalar;
pub mod sparse;

pub use complex::{ChainComplexSlice, HomologyTable};
pub use elim::{invert, rank, rank_and_kernel, RankKernel};
pub use exec::Exec;
pub use scalar::{Field, Rational, Scalar};
pub use sparse::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular {size}x{size} matrix (rank {rank})")]
    SingularMatrix { size: usize, rank: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry ({row}, {col}) outside {rows}x{cols}")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error("not an exact rational: {0:?}")]
    BadScalar(String),
    #[error("unknown field {0:?} (expected q or fp:P)")]
    BadField(String),
    #[error("{0} is not a supported prime")]
    BadPrime(u64),
}
