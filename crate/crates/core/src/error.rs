use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient ({n},{m}) is invalid: need 1 <= n+m <= {cap}")]
    InvalidAmbient { n: usize, m: usize, cap: usize },

    #[error("degree {degree} is out of range for a block of {block_size} variables")]
    DegreeOutOfRange { degree: usize, block_size: usize },

    #[error("ideals live in different ambient rings: ({0},{1}) vs ({2},{3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("monomial support {support:#x} uses variables outside the ambient ring")]
    SupportOutsideAmbient { support: u32 },

    #[error("operation is not defined for the {0} ideal")]
    UnsupportedIdeal(&'static str),

    #[error("generator support is not contained in the given vertex set")]
    SupportOutsideVertices,

    #[error("vertex set is not contained in the complex's vertices")]
    VerticesOutsideComplex,

    #[error("homology of the void complex is not defined")]
    VoidComplex,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown field '{0}' (expected 'q' or 'gf<p>')")]
    UnknownField(String),

    #[error("spec has no terms")]
    EmptySpec,

    #[error("spec is not canonical; canonicalize it first")]
    NonCanonicalSpec,

    #[error("unsupported spec shape: {0}")]
    UnsupportedShape(String),

    #[error("block has no variables (n={n}, m={m})")]
    EmptyBlock { n: usize, m: usize },

    #[error("requested {requested} variables, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("Terai check failed: reg(I) = {reg_ideal} but pd(S/I*) = {pd_dual}")]
    TeraiMismatch { reg_ideal: usize, pd_dual: usize },

    #[error("cannot parse terms '{0}': expected k,l pairs separated by '+'")]
    TermSyntax(String),
}
