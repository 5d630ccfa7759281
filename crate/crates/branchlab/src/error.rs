use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    ResourceLimit { dim: u64, cap: u64 },
    #[error("involution check failed: {0}")]
    NotInvolution(String),
    #[error("split part is not maximal: {0}")]
    NotMaximallySplit(String),
    #[error("sign data is inconsistent with the brackets: {0}")]
    InconsistentSigns(String),
    #[error("positive system is not compatible with the involution: {0}")]
    IncompatiblePositivity(String),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("no Cartan subalgebra of k found: {0}")]
    CartanSearchFailure(String),
    #[error("invalid fiber label: {0}")]
    InvalidLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
