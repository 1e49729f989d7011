use thiserror::Error;

use crate::linalg::RatVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty point set")]
    EmptyInput,

    #[error("points have mixed ambient dimensions ({0} vs {1})")]
    MixedDimension(usize, usize),

    #[error("origin is not an interior point; separating facet normal {normal:?}")]
    OriginNotInterior { normal: Vec<String> },

    #[error("polytope is not full-dimensional (dimension {affine} in rank {ambient})")]
    NotFullDimensional { affine: usize, ambient: usize },

    #[error("unknown face {0:?}")]
    UnknownFace(Vec<usize>),

    #[error("invalid weight system {weights:?}: {reason}")]
    InvalidWeights { weights: Vec<u64>, reason: String },

    #[error("rays do not positively span the lattice; anticanonical polytope is unbounded")]
    Unbounded,

    #[error("ray {index} is not primitive: {reason}")]
    ImprimitiveRay { index: usize, reason: String },

    #[error("polytope is not canonical: {0}")]
    NotCanonical(String),

    #[error("point {0} lies outside the anticanonical polytope")]
    OutsideTheta(RatVector),

    #[error("newton polytope is not contained in the anticanonical polytope: vertex {0}")]
    NotContained(RatVector),

    #[error("invalid family datum: {0}")]
    InvalidFamily(String),

    #[error("zero vector is not a valid ray")]
    ZeroVector,

    #[error("support has mixed weighted degrees ({0} vs {1})")]
    MixedDegree(u64, u64),

    #[error("good pair check failed: {0}")]
    GoodPair(#[from] GoodPairFailure),

    #[error("good pairs have different second polytopes")]
    DifferentAmbient,

    #[error("ambient class group has torsion {0}")]
    TorsionClassGroup(String),

    #[error("matrix is singular")]
    Singular,

    #[error("dual weights not positive: origin is not interior to the simplex of monomials")]
    NonPositiveWeights,

    #[error("quotient index {index} exceeds the cap {cap}")]
    IndexTooLarge { index: String, cap: u64 },

    #[error("rank deficiency: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("infinite group cannot be listed by elements")]
    InfiniteGroup,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// Which clause of the good-pair definition failed, with a witness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GoodPairFailure {
    #[error("ambient ranks differ ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("first polytope not contained in second: vertex {0} violates a facet")]
    NotContained(RatVector),
    #[error("first polytope has non-lattice vertex {0}")]
    NonLatticeVertex(RatVector),
    #[error("polar of second polytope has non-lattice vertex {0}")]
    PolarNonLatticeVertex(RatVector),
    #[error("first polytope does not contain the origin in its interior")]
    OriginNotInterior,
    #[error("second polytope does not contain the origin in its interior")]
    PolarOriginNotInterior,
    #[error("first polytope has an extra interior lattice point {0}")]
    ExtraInteriorPoint(RatVector),
}
