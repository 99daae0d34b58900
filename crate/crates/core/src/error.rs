use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{what} bound exceeded: {size} > {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u64,
        bound: u64,
    },
    #[error("generator assignment is not a homomorphism: {0}")]
    InconsistentHom(String),
    #[error("element is not in the group")]
    NotAMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not soluble")]
    NotSoluble,
    #[error("group is not soluble")]
    GroupNotSoluble,
    #[error("module action is not faithful")]
    NotFaithful,
    #[error("subspace is not invariant under the module action")]
    NotInvariant,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("modulus {0} is not a supported prime")]
    BadModulus(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("randomized search inconclusive after {attempts} attempts; raise the attempt limit")]
    Inconclusive { attempts: usize },
    #[error("no maximal-subgroup method applies: {0}")]
    NoMaximalMethod(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}
