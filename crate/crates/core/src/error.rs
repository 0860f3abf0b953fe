use thiserror::Error;

/// Errors raised while validating inputs or running a certification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {0}")]
    FileNotFound(String),
    #[error("dangling reference `{reference}` in {cell}")]
    DanglingReference { cell: String, reference: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("square `{0}` boundary does not close")]
    NonClosingSquareBoundary(String),
    #[error("3-cube `{cube}` has inconsistent face pairing: {reason}")]
    Inconsistent3CubePairing { cube: String, reason: String },
    #[error("declared dimension {declared} but complex has {actual}-cells")]
    DimensionMismatch { declared: usize, actual: usize },
    #[error("dimension {0} exceeds the supported maximum of 3")]
    DimensionTooLarge(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("subcomplex is not connected")]
    NotConnected,
    #[error("complex is not non-positively curved at vertex `{0}`")]
    NotNpc(String),
    #[error("map does not commute with boundaries at `{0}`")]
    BoundaryMismatch(String),
    #[error("map has no assignment for `{0}`")]
    MissingAssignment(String),
    #[error("complex is not a graph")]
    NotAGraph,
    #[error("map is not an immersion at `{0}`")]
    NotImmersed(String),
    #[error("relator {0} is not a graph")]
    RelatorNotGraph(usize),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("diagram is not planar: {0}")]
    NonPlanar(String),
    #[error("diagram Euler characteristic is {actual}, expected {expected}")]
    EulerMismatch { expected: i64, actual: i64 },
    #[error("cone-cell `{0}` boundary is not a closed path in its relator")]
    ConeBoundaryNotClosed(String),
    #[error("diagram label mismatch: {0}")]
    LabelMismatch(String),
    #[error("cone-cell `{0}` not found")]
    ConeCellNotFound(String),
    #[error("filling required for cone-cell `{0}`")]
    FillingRequired(String),
    #[error("presentation is not certified C({0})")]
    PreconditionNotCertified(usize),
    #[error("invalid labelled graph: {0}")]
    InvalidGraph(String),
    #[error("invalid dihedral parameters: {0}")]
    InvalidDihedral(String),
    #[error("ball radius {0} exceeds the construction budget")]
    RadiusTooLargeForBudget(usize),
    #[error("piece profile not verified: {0}")]
    ProfileNotVerified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
