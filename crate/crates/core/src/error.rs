use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Each variant maps to a stable, machine-readable code (see [`Error::code`])
/// which the command-line front end prints and turns into an exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex index {index} out of range for a ball with {len} vertices")]
    InvalidVertex { index: usize, len: usize },

    #[error("sphere of radius {k} around a depth-{depth} vertex leaves a ball of radius {radius}")]
    SphereOutOfRange { depth: usize, k: usize, radius: usize },

    #[error("domain too small: operator needs radius {needed}, function is valid on radius {available}")]
    DomainTooSmall { needed: usize, available: usize },

    #[error("ambient ball too small: need radius {needed}, ball has radius {available}")]
    InsufficientRadius { needed: usize, available: usize },

    #[error("functions live on different balls (q={q_a}, R={r_a} vs q={q_b}, R={r_b})")]
    BallMismatch { q_a: u32, r_a: usize, q_b: u32, r_b: usize },

    #[error("both polynomials are zero")]
    ZeroPolynomial,

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("operator has a zero top coefficient")]
    DegenerateOperator,

    #[error("irrational component did not cancel")]
    IrrationalResidue,

    #[error("inputs are incompatible: {0}")]
    Incompatible(String),

    #[error("two-circle condition violated for k={k}, l={l}, q={q}")]
    ConditionViolated { k: usize, l: usize, q: u32 },

    #[error("p_{k} and p_{l} share a common factor for q={q}")]
    NotCoprime { k: usize, l: usize, q: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::InvalidVertex { .. } => "invalid-vertex",
            Error::SphereOutOfRange { .. } => "sphere-out-of-range",
            Error::DomainTooSmall { .. } => "domain-too-small",
            Error::InsufficientRadius { .. } => "insufficient-radius",
            Error::BallMismatch { .. } => "ball-mismatch",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::NotDivisible => "not-divisible",
            Error::DegenerateOperator => "degenerate-operator",
            Error::IrrationalResidue => "irrational-residue",
            Error::Incompatible(_) => "incompatible",
            Error::ConditionViolated { .. } => "condition-violated",
            Error::NotCoprime { .. } => "not-coprime",
            Error::Parse(_) => "parse-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
