use thiserror::Error;

use crate::algebra::AlgebraError;

/// Every failure the library can report. `code()` gives the stable string
/// used in machine-readable reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("map is constant after cancellation")]
    ConstantMap,
    #[error("map has trivial reduction")]
    TrivialReduction,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u128, cap: usize },
    #[error("Mobius transformation has zero determinant")]
    SingularMobius,
    #[error("the two normalization points coincide")]
    CoincidentPoints,
    #[error("an orbit point used for normalization is infinite")]
    InfiniteOrbitPoint,
    #[error("reduced map has a shared root or vanishing resultant")]
    InseparableOrSharedRoot,
    #[error("orbit heights exceed the budget of {0} bits")]
    OrbitOverflow(u64),
    #[error("search budget exhausted: {0}")]
    SearchBudgetExhausted(String),
    #[error("multiplier {0} is a root of unity")]
    RootOfUnity(String),
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("bad class hit at the horizon {0}; cannot certify the last hit")]
    HorizonTooSmall(usize),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("center is a pole of the map")]
    PoleAtCenter,
    #[error("disk contains a pole of the map")]
    PoleInDisk,
    #[error("a pole lies on the tested sphere and could not be resolved")]
    BadLift,
    #[error("not a valid Galois class: {0}")]
    InvalidClass(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Algebra(AlgebraError::NegativeValuation) => "negative_valuation",
            Error::Algebra(AlgebraError::BothZero) => "both_zero",
            Error::Algebra(AlgebraError::ZeroPolynomial) => "zero_polynomial",
            Error::Algebra(AlgebraError::DivisionByZero) => "division_by_zero",
            Error::Algebra(AlgebraError::InvalidPrime(_)) => "invalid_prime",
            Error::Syntax { .. } => "syntax_error",
            Error::ZeroDenominator => "zero_denominator",
            Error::ConstantMap => "constant_map",
            Error::TrivialReduction => "trivial_reduction",
            Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
            Error::SingularMobius => "singular_mobius",
            Error::CoincidentPoints => "coincident_points",
            Error::InfiniteOrbitPoint => "infinite_orbit_point",
            Error::InseparableOrSharedRoot => "inseparable_or_shared_root",
            Error::OrbitOverflow(_) => "orbit_overflow",
            Error::SearchBudgetExhausted(_) => "search_budget_exhausted",
            Error::RootOfUnity(_) => "root_of_unity",
            Error::ZeroMultiplier => "zero_multiplier",
            Error::HorizonTooSmall(_) => "horizon_too_small",
            Error::HypothesesNotMet(_) => "hypotheses_not_met",
            Error::PoleAtCenter => "pole_at_center",
            Error::PoleInDisk => "pole_in_disk",
            Error::BadLift => "bad_lift",
            Error::InvalidClass(_) => "invalid_class",
            Error::UnknownCommand(_) => "unknown_command",
            Error::UnknownExample(_) => "unknown_example",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
