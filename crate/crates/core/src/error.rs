use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are split into input errors (malformed data, bad parameters) and
/// mathematical failures (data that parses but violates an identity that must
/// hold for a genuine circle action). See [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // input errors
    #[error("zero weight at fixed point {point}")]
    ZeroWeight { point: String },
    #[error("empty fixed point set")]
    EmptyPointSet,
    #[error("fixed point {point} has {got} weights, expected {expected}")]
    WeightCount { point: String, expected: usize, got: usize },
    #[error("duplicate fixed point id {0}")]
    DuplicateId(String),
    #[error("unknown fixed point id {0}")]
    UnknownPoint(String),
    #[error("bundle restriction missing at fixed point {0}")]
    MissingRestriction(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("duplicate node {0}")]
    DuplicateNode(i64),
    #[error("empty node list")]
    NoNodes,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("non-generic xi: edge {edge:?} at vertex {vertex} is orthogonal to xi")]
    NonGenericXi { vertex: usize, edge: Vec<i64> },
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),

    // mathematical failures
    #[error("not a Laurent polynomial")]
    NotLaurent,
    #[error("unbounded limit")]
    UnboundedLimit,
    #[error("localization sum not integral: {0}")]
    NotIntegral(String),
    #[error("not dominated: {0}")]
    NotDominated(String),
    #[error("eta inconsistent with k = {0}")]
    EtaInconsistent(u64),
    #[error("vanishing theorem violated at h = {h}: index {index}")]
    VanishingViolated { h: u64, index: String },
    #[error("no consistent residue for k0 = {k0}: {detail}")]
    NoConsistentResidue { k0: u64, detail: String },
    #[error("index values not polynomial: mismatch at k = {0}")]
    NotPolynomial(i64),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("no closed form for n = {n}, k0 = {k0}")]
    NoClosedForm { n: usize, k0: u64 },
    #[error("non-smooth vertex {vertex} {coords:?}: {detail}")]
    NonSmoothVertex { vertex: usize, coords: Vec<i64>, detail: String },
    #[error("limit mismatch: analytic {analytic}, predicted {predicted}")]
    LimitMismatch { analytic: String, predicted: String },
    #[error("ehrhart count not polynomial at k = {0}")]
    CountNotPolynomial(u64),
}

impl Error {
    /// True for malformed input, false for a failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroWeight { .. }
                | Error::EmptyPointSet
                | Error::WeightCount { .. }
                | Error::DuplicateId(_)
                | Error::UnknownPoint(_)
                | Error::MissingRestriction(_)
                | Error::InvalidPartition(_)
                | Error::DuplicateNode(_)
                | Error::NoNodes
                | Error::InvalidParams(_)
                | Error::InvalidPolytope(_)
                | Error::NonGenericXi { .. }
                | Error::UnknownEntry(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
