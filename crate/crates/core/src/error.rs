use thiserror::Error;

/// Every failure the toolkit reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason}")]
    NotAGroup {
        reason: String,
        /// First offending index triple (row, column, third operand) when known.
        witness: Option<(u32, u32, u32)>,
    },
    #[error("group order cap exceeded: needed more than {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("bad family spec {spec:?}: {reason}")]
    BadFamilySpec { spec: String, reason: String },
    #[error("subgroup is not normal (witness conjugate of element {element} by {by})")]
    NotNormal { element: u32, by: u32 },
    #[error("group is not abelian (elements {0} and {1} do not commute)")]
    NotAbelian(u32, u32),
    #[error("group of order {0} is not a p-group")]
    NotPGroup(usize),
    #[error("coset enumeration exceeded {limit} live cosets (inconclusive)")]
    EnumerationLimitExceeded { limit: usize },
    #[error("presentation of {label} did not enumerate to {expected} cosets (got {got})")]
    PresentationUnverified {
        label: String,
        expected: usize,
        got: usize,
    },
    #[error("orders {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("normal subgroup enumeration capped at group order {cap} (got {order})")]
    SubgroupEnumerationCapExceeded { cap: usize, order: usize },
    #[error("subgroup chain is incompatible with the tower projection at level {level}")]
    IncompatibleChain { level: usize },
    #[error(
        "Haar measure undecided: indices {indices:?} neither stabilize nor grow over the window"
    )]
    InconclusiveChain { indices: Vec<u64> },
    #[error("need at least {needed} tower levels, have {have}")]
    InsufficientLevels { needed: usize, have: usize },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn not_a_group(reason: impl Into<String>) -> Self {
        Error::NotAGroup {
            reason: reason.into(),
            witness: None,
        }
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// True for errors caused by a configured resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::EnumerationLimitExceeded { .. }
                | Error::SubgroupEnumerationCapExceeded { .. }
        )
    }
}
