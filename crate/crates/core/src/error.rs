use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("quasi-invariance order of the zero polynomial is undefined")]
    UndefinedOrder,
    #[error("invalid quasi-invariance order: {0}")]
    InvalidOrder(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("unclassified module: dim={dim}, fixed_dim={fixed_dim}, sign_dim={sign_dim}")]
    Unclassified {
        dim: usize,
        fixed_dim: usize,
        sign_dim: usize,
    },
}
