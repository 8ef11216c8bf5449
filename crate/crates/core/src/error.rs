use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("degree cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pairing or nabla element is degenerate: {0}")]
    NotNondegenerate(String),
    #[error("curve is not isotropic: [alpha].[alpha] = {0}")]
    Isotropy(String),
    #[error("exponential did not terminate within {0} iterations")]
    NilpotencyCapExceeded(usize),
    #[error("representation mismatch: expected {expected}")]
    RepresentationMismatch { expected: &'static str },
    #[error("genus {genus} too small for {what}")]
    GenusTooSmall { genus: usize, what: &'static str },
    #[error("linear solver failed: {0}")]
    Solver(String),
    #[error("input is not homogeneous")]
    NonHomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}
