use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid exponent k = {0}; must be at least 1")]
    InvalidExponent(u32),

    #[error("modulus {p}^{k} is too large to represent")]
    ModulusTooLarge { p: u64, k: u32 },

    #[error("operation requires a field (k = 1), got exponent k = {0}")]
    NotAField(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modulus mismatch: {0}")]
    ModulusMismatch(String),

    #[error("structure constants are not alternating: {0}")]
    NotAlternating(String),

    #[error("unknown algebra name `{0}`")]
    UnknownAlgebra(String),

    #[error("reduction exponent {t} out of range 1..={k}")]
    ReductionOutOfRange { t: u32, k: u32 },

    #[error("malformed algebra input: {0}")]
    MalformedInput(String),

    #[error("not a Lie algebra: Jacobi form is nonzero on ({0}, {1}, {2})")]
    NotLie(usize, usize, usize),

    #[error("module axiom fails for basis pair ({0}, {1})")]
    ModuleAxiom(usize, usize),

    #[error("d∘d ≠ 0 in degree {0}")]
    DifferentialSquare(usize),

    #[error("input is not a cocycle in degree {0}")]
    NotACocycle(usize),

    #[error("result of degree {degree} exceeds the truncation degree {max}")]
    TruncationOverflow { degree: usize, max: usize },

    #[error("β∘β ≠ 0 on generator {0}")]
    BetaSquareNonzero(String),

    #[error("comodule compatibility Δβ = βΔ fails on {0}")]
    ComoduleCompatibility(String),

    #[error("enumeration budget of {budget} elements exceeded and no normal form is available")]
    BudgetExceeded { budget: u64 },

    #[error("group is not a central p-power extension: {0}")]
    NotCentralExtension(String),

    #[error("p-power map is singular; not a bracket group")]
    SingularPowerMap,

    #[error("tower stage {stage}: {reason}")]
    MalformedTower { stage: usize, reason: String },

    #[error("lift precondition violated: {0}")]
    LiftPrecondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the input rather than by the computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotOddPrime(_)
                | Error::InvalidExponent(_)
                | Error::ModulusTooLarge { .. }
                | Error::NotAField(_)
                | Error::DimensionMismatch(_)
                | Error::ModulusMismatch(_)
                | Error::NotAlternating(_)
                | Error::UnknownAlgebra(_)
                | Error::ReductionOutOfRange { .. }
                | Error::MalformedInput(_)
                | Error::NotLie(..)
                | Error::ModuleAxiom(..)
                | Error::TruncationOverflow { .. }
                | Error::BudgetExceeded { .. }
                | Error::LiftPrecondition(_)
                | Error::BetaSquareNonzero(_)
        )
    }
}
