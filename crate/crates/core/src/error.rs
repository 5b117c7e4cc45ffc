use thiserror::Error;

/// Every failure mode of the toolkit. The `name()` of a variant is the
/// stable identifier printed by the command-line driver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization budget exhausted while factoring {0}")]
    FactorizationLimit(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("isotropic entry: {0}")]
    IsotropicEntry(String),
    #[error("linearly dependent entries: {0}")]
    LinearlyDependent(String),
    #[error("basis does not span: {0}")]
    SingularBasis(String),
    #[error("search budget exhausted: {0}")]
    SearchLimit(String),
    #[error("algebra is not split")]
    NotSplit,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("could not repair a zero pivot at position {0}")]
    ZeroDiagonalUnrepairable(usize),
    #[error("symmetric space of dimension {sym} fits no involution type in dimension {dim}")]
    TypeUndetermined { sym: usize, dim: usize },
    #[error("discriminant is not trivial (class {0})")]
    DiscNotTrivial(String),
    #[error("involution is not symplectic")]
    NotSymplectic,
    #[error("no parameters satisfy the variety constraints: {0}")]
    VarietyConstraintUnsatisfied(String),
    #[error("witness is invalid: {0}")]
    WitnessInvalid(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::FactorizationLimit(_) => "FACTORIZATION_LIMIT",
            Error::NotInvertible(_) => "NOT_INVERTIBLE",
            Error::IsotropicEntry(_) => "ISOTROPIC_ENTRY",
            Error::LinearlyDependent(_) => "LINEARLY_DEPENDENT",
            Error::SingularBasis(_) => "SINGULAR_BASIS",
            Error::SearchLimit(_) => "SEARCH_LIMIT",
            Error::NotSplit => "NOT_SPLIT",
            Error::DegenerateForm => "DEGENERATE_FORM",
            Error::ZeroDiagonalUnrepairable(_) => "ZERO_DIAGONAL_UNREPAIRABLE",
            Error::TypeUndetermined { .. } => "TYPE_UNDETERMINED",
            Error::DiscNotTrivial(_) => "DISC_NOT_TRIVIAL",
            Error::NotSymplectic => "NOT_SYMPLECTIC",
            Error::VarietyConstraintUnsatisfied(_) => "VARIETY_CONSTRAINT_UNSATISFIED",
            Error::WitnessInvalid(_) => "WITNESS_INVALID",
            Error::InvalidAlgebra(_) => "INVALID_ALGEBRA",
            Error::ShapeMismatch(_) => "SHAPE_MISMATCH",
            Error::CertificateFailed(_) => "CERTIFICATE_FAILED",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }

    /// Budget exhaustion, as opposed to a wrong or malformed input.
    pub fn is_budget_limit(&self) -> bool {
        matches!(self, Error::FactorizationLimit(_) | Error::SearchLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
