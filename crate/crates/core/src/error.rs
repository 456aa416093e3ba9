use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Inconsistent or out-of-range inputs (mismatched ℏ, invalid grid, bad parameters).
    #[error("configuration error: {0}")]
    Config(String),
    /// A formula was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operator polynomial does not have the expected Landau structure.
    #[error("structural error: {0}")]
    Structural(String),
    /// The effective oscillator has a non-positive frequency or mass prefactor.
    #[error("degenerate regime: {0}")]
    Degenerate(String),
    /// A numerical estimate failed its self-convergence check.
    #[error("accuracy error: {0}")]
    Accuracy(String),
}
