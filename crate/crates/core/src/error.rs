use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for {len} elements")]
    BadIndex { index: usize, len: usize },

    #[error("face verdicts unresolved for index sets {0:?}")]
    UnresolvedFaces(Vec<Vec<usize>>),

    #[error("index set {0:?} is not a face")]
    NotAFace(Vec<usize>),

    #[error("index set {0:?} is not a facet")]
    NotAFacet(Vec<usize>),

    #[error("expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("normal vector for face {0:?} takes both signs outside the face")]
    MixedSigns(Vec<usize>),

    #[error("certificate does not reproduce the element")]
    BadCertificate,

    #[error("supported element has no terms")]
    EmptySupport,

    #[error("no gluing element found for cones {0} and {1}")]
    MissingGluing(usize, usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("generator {index} is a P[x]-combination of the others")]
    RedundantGenerator { index: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
