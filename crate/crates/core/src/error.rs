use thiserror::Error;

/// Errors shared across the engine.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expressions belong to different charts: `{0}` vs `{1}`")]
    MixedCharts(String, String),
    #[error("chart mismatch: `{0}` vs `{1}`")]
    ChartMismatch(String, String),
    #[error("exponent is not a linear form in chart variables: {0}")]
    NonLinearExponent(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("evaluation point is singular: {0}")]
    SingularPoint(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("dangling reference to `{0}`")]
    DanglingReference(String),
    #[error("expression too large: {0}")]
    ExpressionTooLarge(String),
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),
    #[error("interior product requires degree >= 1")]
    DegreeZero,
    #[error("coordinate map `{0}` has no declared inverse")]
    NoInverseDeclared(String),
    #[error("distribution already has full rank")]
    FullRank,
    #[error("bracket escapes the span of the basis: {0}")]
    NotClosed(String),
    #[error("bracket needs non-constant coefficients: {0}")]
    NotConstantCoefficients(String),
    #[error("basis fields are linearly dependent over constants")]
    DependentBasis,
    #[error("`{0}` is not a simultaneous eigenvector of the Cartan pair")]
    NotEigenvector(String),
    #[error("structure constants are not real: {0}")]
    ComplexConstants(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("check `{check}` does not run in mode `{mode}`")]
    ModeMismatch { check: String, mode: String },
    #[error("cannot take square root of composite expression: {0}")]
    RootOfComposite(String),
    #[error("constant-field modes differ between operands")]
    ModeClash,
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
