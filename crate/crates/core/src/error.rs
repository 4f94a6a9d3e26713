use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot evaluate a Laurent polynomial with negative exponents at q = 0")]
    EvalAtZeroWithNegativeExponent,

    #[error("simplified closed form still has negative powers of q: {0}")]
    NegativeExponentResidue(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("sign sequence entries must be -1 or 1, got {0}")]
    InvalidSign(i64),

    #[error("sign sequence is empty")]
    EmptySequence,

    #[error("sign sequence {0} is not in the plus class")]
    NotPlusClass(String),

    #[error("invalid pair partition: {0}")]
    InvalidPartition(String),

    #[error("pair partition is crossing; depth and components need a non-crossing partition")]
    NotNonCrossing,

    #[error("pair index {index} out of range 1..={len}")]
    PairIndexOutOfRange { index: usize, len: usize },

    #[error("ground sets overlap at label {0}")]
    OverlappingGrounds(i64),

    #[error(
        "convolution routes disagree at n={n}, m={m}: brute force {brute}, closed form {closed}"
    )]
    ConvolutionMismatch {
        n: usize,
        m: usize,
        brute: String,
        closed: String,
    },

    #[error("test vector needs dimension >= 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("states are not homogeneous of one common level")]
    MixedLevels,

    #[error("operator word has length {ops} but {tests} test vectors were supplied")]
    LengthMismatch { ops: usize, tests: usize },

    #[error("plus-class word left non-vacuum terms: {0}")]
    NonScalarResidue(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
