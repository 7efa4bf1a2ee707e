//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),

    #[error("quasipolynomial has nonzero constant term {0}")]
    NonzeroConstantTerm(String),

    #[error("prefix of length {got} is too short for degree bound {bound} (need at least {need})")]
    InsufficientPrefix { got: usize, need: usize, bound: usize },

    #[error("series order {got} is too small (need at least {need})")]
    InsufficientOrder { got: usize, need: usize },

    #[error("operand has a central part; the associative product is only defined on differential operators")]
    CentralInProduct,

    #[error("operator is not a member of the order-{0} subalgebra")]
    NotInOrderSubalgebra(usize),

    #[error("operation requires algebra order n = {expected}, got n = {got}")]
    WrongOrder { expected: usize, got: usize },

    #[error("moment functional is only defined up to degree {max}, needed degree {needed}")]
    MissingMoment { max: usize, needed: usize },

    #[error("pairing requires twist 0, got twist {0}")]
    NonzeroTwist(String),

    #[error("singular weight: 1 + Delta_0 = 0")]
    SingularWeight,

    #[error("window shift by {shift} exceeds the boundary slack {slack}")]
    ShiftExceedsMargin { shift: i64, slack: i64 },

    #[error("window support touches the untrusted boundary region")]
    WindowBoundary,

    #[error("scaling factor vanishes at column {0}")]
    AdjointScaleDivision(i64),

    #[error("twist {0} is not an integer")]
    NonIntegerTwist(String),

    #[error("twist {0} must be real with 0 <= s < 1")]
    TwistOutOfRange(String),

    #[error("twists must be pairwise distinct modulo 1")]
    TwistCollision,

    #[error("generating-series numerator does not vanish at x = 0 (value {0})")]
    NumeratorNonvanishing(String),

    #[error("degree bound {bound} is too small for a generator of degree {degree}")]
    DegreeBoundTooSmall { bound: usize, degree: usize },

    #[error("zero element rejected: {0}")]
    ZeroElement(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
