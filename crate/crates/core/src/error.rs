use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("modulus {0} is reducible over Q")]
    ReducibleModulus(String),
    #[error("invalid field description: {0}")]
    InvalidSpec(String),
    #[error("field too small: needs a root of {min_poly}")]
    FieldTooSmall { min_poly: String },
    #[error("constant rational function where a non-constant one is required")]
    ConstantFunction,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("group closure exceeded bound {bound}")]
    ExceedsBound { bound: usize, infinite_witness: Option<String> },
    #[error("group of order {0} could not be classified")]
    UnclassifiableGroup(usize),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("infinite group generated; witness {0}")]
    InfiniteGroup(String),
    #[error("solution kernel has dimension {0}, above the search threshold")]
    KernelTooLarge(usize),
    #[error("identity A(X) = B(Y) fails")]
    IdentityFails,
    #[error("compositum is not the full field (degree {0})")]
    CompositumNotFull(usize),
    #[error("no suitable base points found")]
    NoSuitableBasePoints,
    #[error("U(V) does not equal Y")]
    DecompositionMismatch,
    #[error("multiplicity at 0 is {0}, expected at least 2")]
    PreconditionZeroOrder(usize),
    #[error("not a good solution: {0}")]
    NotGoodSolution(String),
    #[error("series is not invertible (zero linear term)")]
    NotAUnit,
    #[error("0 is not a superattracting fixed point")]
    NotSuperattracting,
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("syntax error at {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("unknown symbol '{symbol}' at {position}")]
    UnknownSymbol { position: usize, symbol: String },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("corpus schema error: {0}")]
    SchemaError(String),
}
