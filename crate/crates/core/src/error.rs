use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants map one-to-one onto the stable string codes returned by
/// [`Error::code`], which the command-line frontend embeds in its error
/// objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("a Lie vector needs n + 3 >= 4 coordinates, got {0}")]
    InvalidLength(usize),

    #[error("the zero vector does not represent a projective point")]
    ZeroVector,

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("pencil lies entirely on the Lie quadric")]
    DegeneratePencil,

    #[error("pencil generators are projectively equal")]
    DependentGenerators,

    #[error("axis vector is isotropic, (P|P) = 0")]
    IsotropicAxis,

    #[error("vector is not on the Lie quadric (relative residual {residual:e})")]
    NotACycle { residual: f64 },

    #[error("vector has neither a finite center nor a hyperplane normal")]
    DegenerateVector,

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("family is rank deficient: orthogonal complement has dimension {complement_dim}")]
    RankDeficient { complement_dim: usize },

    #[error("configuration is degenerate: nullspace of the lifts has dimension {nullity}")]
    DegenerateConfiguration { nullity: usize },

    #[error("point lies at infinity")]
    AtInfinity,

    #[error("configuration is not generic: subset omitting cycle {subset}: {reason}")]
    NotGeneric { subset: usize, reason: String },

    #[error("cycle is a hyperplane, its center lies at infinity")]
    CenterAtInfinity,

    #[error("centers coincide, no line is defined")]
    CoincidentCenters,

    #[error("second-level problem for index {index} does not contain the omitted cycle")]
    SecondLevelDegenerate { index: usize },

    #[error("no real tangent hyperplane found after {budget} attempts")]
    EmptyTangentSet { budget: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid scenario parameters: {0}")]
    InvalidParams(String),

    #[error("no generic configuration found within {attempts} attempts")]
    GenerationExhausted { attempts: usize },

    #[error("rendering supports dimension 2 only, got {0}")]
    UnsupportedDimension(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::InvalidLength(_) => "INVALID_LENGTH",
            Error::ZeroVector => "ZERO_VECTOR",
            Error::NonFinite => "NON_FINITE",
            Error::DegeneratePencil => "DEGENERATE_PENCIL",
            Error::DependentGenerators => "DEPENDENT_GENERATORS",
            Error::IsotropicAxis => "ISOTROPIC_AXIS",
            Error::NotACycle { .. } => "NOT_A_CYCLE",
            Error::DegenerateVector => "DEGENERATE_VECTOR",
            Error::InvalidCycle(_) => "INVALID_CYCLE",
            Error::RankDeficient { .. } => "RANK_DEFICIENT",
            Error::DegenerateConfiguration { .. } => "DEGENERATE_CONFIGURATION",
            Error::AtInfinity => "AT_INFINITY",
            Error::NotGeneric { .. } => "NOT_GENERIC",
            Error::CenterAtInfinity => "CENTER_AT_INFINITY",
            Error::CoincidentCenters => "COINCIDENT_CENTERS",
            Error::SecondLevelDegenerate { .. } => "SECOND_LEVEL_DEGENERATE",
            Error::EmptyTangentSet { .. } => "EMPTY_TANGENT_SET",
            Error::InvalidArgument(_) => "INVALID_ARGUMENT",
            Error::InvalidParams(_) => "INVALID_PARAMS",
            Error::GenerationExhausted { .. } => "GENERATION_EXHAUSTED",
            Error::UnsupportedDimension(_) => "UNSUPPORTED_DIMENSION",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Validation { .. } => "VALIDATION_ERROR",
        }
    }

    /// Index of the offending cycle or subset, when the error names one.
    pub fn subset_index(&self) -> Option<usize> {
        match self {
            Error::NotGeneric { subset, .. } => Some(*subset),
            Error::SecondLevelDegenerate { index } => Some(*index),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
