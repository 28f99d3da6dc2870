use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {0} exceeds cap {1}")]
    CapExceeded(u64, u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("point {0} does not belong to the translating group")]
    GroupMismatch(String),
    #[error("point {0} has no copy index")]
    MissingCopyIndex(String),
    #[error("bad label: {0}")]
    BadLabel(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("design has no hole")]
    MissingHole,
    #[error("bad group sizes: {0}")]
    BadGroupSizes(String),
    #[error("design has no coloring")]
    MissingColoring,
    #[error("no point appears exactly once in the first row")]
    NoSingletonPoint,
    #[error("design already carries {0} colors")]
    AlreadyColored(usize),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("symbol {0} out of range for q = {1}")]
    SymbolOutOfRange(u32, u32),
    #[error("code needs at least two words")]
    TooFewWords,
    #[error("input does not verify: {0}")]
    NotVerified(String),
    #[error("code is not equitable")]
    NotEquitable,
    #[error("minimum distance {0} is below n - lambda = {1}")]
    DistanceTooSmall(usize, usize),
    #[error("m = {0} is below 7")]
    MTooSmall(u64),
    #[error("q = {0} is not 1 mod 6")]
    NotOneMod6(u64),
    #[error("starter invalid: {0}")]
    StarterInvalid(String),
    #[error("k = {0} exceeds q + 1 = {1}")]
    KTooLarge(usize, usize),
    #[error("input has no coloring")]
    ColorMissing,
    #[error("no witness block could be placed")]
    NoWitnessBlock,
    #[error("hole mismatch: {0}")]
    HoleMismatch(String),
    #[error("point map invalid: {0}")]
    PointMapInvalid(String),
    #[error("expected {0} inner designs, got {1}")]
    GroupCountMismatch(usize, usize),
    #[error("hole point sets differ across inner designs")]
    WMismatch,
    #[error("keep value {0} out of range 0..={1}")]
    KeepOutOfRange(usize, usize),
    #[error("missing ingredient: {0}")]
    MissingIngredient(String),
    #[error("budget must be positive")]
    BudgetZero,
    #[error("inconsistent parameters: {0}")]
    InconsistentParams(String),
    #[error("unknown kind {0}")]
    BadKind(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
