use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cayley table: {0}")]
    TableInvalid(String),
    #[error("generator closure exceeds the element cap of {cap}")]
    ClosureTooLarge { cap: usize },
    #[error("group of order {order} exceeds the element cap of {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("homomorphisms do not share a codomain")]
    CodomainMismatch,
    #[error("group is not proto-complete")]
    NotProtoComplete,
    #[error("group has non-trivial center (order {0})")]
    CenterNonTrivial(usize),
    #[error("group has a proper non-trivial characteristic subgroup {witness:?}")]
    NotCharacteristicallySimple { witness: Vec<usize> },
    #[error("input group is abelian")]
    AbelianInput,
    #[error("invalid ring: {0}")]
    RingInvalid(String),
    #[error("invalid Lie algebra: {0}")]
    LieInvalid(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("{object}: {source}")]
    Object { object: String, source: Box<Error> },
    /// An asserted theorem instance failed on concrete input.
    #[error("theorem instance violated: {0}")]
    Violation(String),
}

impl Error {
    pub fn within(self, object: impl Into<String>) -> Error {
        Error::Object {
            object: object.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
