use std::path::PathBuf;

use thiserror::Error;

use crate::element_set::ElementSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matroid spec: {0}")]
    InvalidSpec(String),

    #[error("ground set of {n} elements exceeds the cap of {cap}")]
    GroundSetTooLarge { n: usize, cap: usize },

    #[error("element {element} is not in the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("set {0} is not independent")]
    NotIndependent(ElementSet),

    #[error("{set} + {element} is independent, so there is no fundamental circuit")]
    NotDependent { set: ElementSet, element: usize },

    #[error("element {element} already belongs to {set}")]
    ElementInSet { set: ElementSet, element: usize },

    #[error("the complement of {0} is not a basis")]
    NotCobase(ElementSet),

    #[error("{which} = {set} is not a basis")]
    NotBasis { which: &'static str, set: ElementSet },

    #[error("element {element} is not in {which}")]
    NotInBasis { which: &'static str, element: usize },

    #[error("elements must be distinct (got {0} twice)")]
    SameElement(usize),

    #[error("{a} <-> {b} is not a symmetric exchange at the current pair")]
    NotExchangeable { a: usize, b: usize },

    #[error("operation requires disjoint bases")]
    NotDisjoint,

    #[error("deleted and contracted sets overlap in {0}")]
    OverlappingMinor(ElementSet),

    #[error("could not generate a {family} instance within {attempts} attempts")]
    GenerationExhausted { family: String, attempts: usize },

    #[error("{}: {message} (line {line}, column {column})", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Validation {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Usage(String),

    #[error("unknown law id `{0}`")]
    UnknownLaw(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
