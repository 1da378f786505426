use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no linear orders")]
    EmptyInput,
    #[error("line {line}: not a permutation of the universe")]
    NotAPermutation { line: usize },
    #[error("line {line}: labels differ from the universe of the first order")]
    UniverseMismatch { line: usize },
    #[error("line {line}: duplicate linear order")]
    DuplicateOrder { line: usize },
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error("element index {index} out of range for universe of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("relation contains a cycle through {0} and {1}")]
    CycleDetected(usize, usize),
    #[error("linear extension count exceeds cap of {0}")]
    CapExceeded(usize),
    #[error("order set is empty")]
    EmptySet,
    #[error("elements {0} and {1} are not adjacent in the order")]
    NotAdjacent(usize, usize),
    #[error("order is not a vertex of the swap graph")]
    VertexNotFound,
    #[error("variable count for k={k}, n={n} overflows the id space")]
    Overflow { k: usize, n: usize },
    #[error("naive exclusion needs {complement} orders, above cap {cap}")]
    NaiveCapExceeded { complement: u128, cap: u64 },
    #[error("solver query timed out at k={k}")]
    QueryTimeout { k: usize },
    #[error("no cover with at most {max_k} posets")]
    KMaxExceeded { max_k: usize },
    #[error("backend returned a model violating clause {clause}")]
    BackendUnsound { clause: usize },
    #[error("decoded model is not a valid cover: {0}")]
    InvalidModel(String),
    #[error("cover does not reproduce the input set exactly")]
    VerificationFailed,
    #[error("instance size {m} exceeds {n}! orders")]
    SizeExceedsFactorial { n: usize, m: usize },
    #[error("oracle supports at most {cap} orders, got {size}")]
    OracleCapExceeded { size: usize, cap: usize },
    #[error("component {index}: {source}")]
    Component {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("solver backend: {0}")]
    Backend(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Strips any component wrapper.
    pub fn root(&self) -> &Error {
        match self {
            Error::Component { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code for this error: 1 usage, 2 invalid input,
    /// 3 timeout or k limit, 4 internal failure.
    pub fn exit_code(&self) -> u8 {
        match self.root() {
            Error::EmptyInput
            | Error::NotAPermutation { .. }
            | Error::UniverseMismatch { .. }
            | Error::DuplicateOrder { .. }
            | Error::InvalidUniverse(_)
            | Error::ElementOutOfRange { .. }
            | Error::CycleDetected(..)
            | Error::NotAdjacent(..)
            | Error::VertexNotFound
            | Error::SizeExceedsFactorial { .. }
            | Error::EmptySet
            | Error::Io(_) => 2,
            Error::QueryTimeout { .. } | Error::KMaxExceeded { .. } => 3,
            Error::InvalidArgument(_) | Error::NaiveCapExceeded { .. } | Error::Overflow { .. } => {
                1
            }
            _ => 4,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_see_through_components() {
        let e = Error::Component {
            index: 3,
            source: Box::new(Error::KMaxExceeded { max_k: 1 }),
        };
        assert_eq!(e.exit_code(), 3);
        assert_eq!(Error::DuplicateOrder { line: 2 }.exit_code(), 2);
        assert_eq!(Error::VerificationFailed.exit_code(), 4);
        assert_eq!(Error::BackendUnsound { clause: 0 }.exit_code(), 4);
    }
}
