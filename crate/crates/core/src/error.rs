use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors: they
/// are reported as failing cases in a [`crate::verify::SuiteReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity of order {0} does not lie in Q(zeta_24)")]
    UnsupportedRoot(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("exponent lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error(
        "cannot generate a full basis of E_2(Gamma_0({p}^{k})) with sieving and rescaling operators; \
         constructible levels are 2^k (k <= 7), 3^k (k <= 3) and p (k = 1)"
    )]
    NotConstructible { p: u64, k: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no decomposition: first mismatch at {at}")]
    NoDecomposition { at: String },
    #[error("rank deficient: rank {rank} for {columns} unknowns")]
    RankDeficient { rank: usize, columns: usize },
    #[error("curve has bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
