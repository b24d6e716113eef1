use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type `{0}`")]
    InvalidType(String),

    #[error("malformed weight `{0}`: {1}")]
    MalformedWeight(String, String),

    #[error("weight has {got} coordinates, rank is {rank}")]
    RankMismatch { got: usize, rank: usize },

    #[error("malformed word `{0}`")]
    MalformedWord(String),

    #[error("generator index {index} out of range (have {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("root-lattice vector {0:?} has a negative coordinate")]
    NegativeCoordinate(Vec<i64>),

    #[error("group order exceeds the enumeration cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("weight {0} is not antidominant; normalize it first")]
    NotAntidominant(String),

    #[error("element {0} is not a minimal coset representative modulo W_J; use decompose_yx")]
    NotMinimalRep(String),

    #[error("x = {x} is not below w = {w} in the Bruhat order")]
    NotBruhatBelow { x: String, w: String },

    #[error("I must be a subset of the integral simple roots; root {0} is not")]
    ParabolicNotIntegral(usize),

    #[error("element {0} is not in the parabolic parameter set")]
    NotParabolicRep(String),

    #[error("convention defect: {0}")]
    ConventionDefect(String),

    #[error("structure constant defect: {0}")]
    StructureDefect(String),

    #[error("depth {depth} exceeds the cap {cap} for this type")]
    DepthCapExceeded { depth: usize, cap: usize },

    #[error("type {0} is not supported by the contravariant form oracle")]
    UnsupportedOracleType(String),

    #[error("Gram matrix is degenerate beyond deformation at {0:?}")]
    DegenerateForm(Vec<i64>),

    #[error("root system defect: {0}")]
    RootSystemDefect(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
