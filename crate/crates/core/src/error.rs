//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the linear algebra, module and pipeline layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands have incompatible shapes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Operands live over different prime fields.
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u8, u8),
    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    /// The zero polynomial was passed where a nonzero one is needed.
    #[error("zero polynomial")]
    ZeroPolynomial,
    /// A parameter is outside the supported range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A matrix that must be invertible is singular.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// A subspace claimed to be invariant is moved by a generator.
    #[error("subspace not invariant: generator `{generator}` moves basis row {row} outside")]
    NotInvariant { generator: String, row: usize },
    /// A module without combinatorial labels was asked for weights.
    #[error("module carries no weight labels")]
    Unlabeled,
    /// Weight bookkeeping failed.
    #[error("weight error: {0}")]
    Weight(String),
    /// The chopping engine exhausted its round budget.
    #[error("round limit {limit} exhausted at dimension {dim}: {trail}")]
    RoundLimit { limit: usize, dim: usize, trail: String },
    /// A stored certificate does not replay.
    #[error("certificate replay failed: {0}")]
    Certificate(String),
    /// A value is not in the Sato algebra or a similar membership failure.
    #[error("not a member: {0}")]
    NotMember(String),
    /// An identity that must hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
