use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid group or field specification: {0}")]
    SpecError(String),

    #[error("enumeration exceeded the cap of {0} elements")]
    EnumerationLimit(usize),

    #[error("{what} of size {size} exceeds the limit {limit}")]
    DimensionLimit {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("search space of {size} candidates exceeds the limit {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("level {level} is outside the computed range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group is not an elementary abelian p-group")]
    NotElementaryAbelian,

    #[error("map is not surjective (image {image} of {target})")]
    NotSurjective { image: usize, target: usize },

    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("grouplike consistency failure: {0}")]
    GrouplikeViolation(String),

    #[error("element set failed the closure certificate")]
    ClosureViolation,

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
}

impl Error {
    /// Errors caused by a size cap rather than by malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::EnumerationLimit(_) | Error::DimensionLimit { .. } | Error::SearchSpaceTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
