use thiserror::Error;

/// Largest ambient variable count representable by the bitmask types.
pub const MAX_VARIABLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient variable count must be between 1 and {MAX_VARIABLES}, got {0}")]
    BadAmbient(usize),

    #[error("variable index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("x{0} occurs both as a plain and as a complemented factor")]
    OverlappingFactors(usize),

    #[error("codeword has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("ambient mismatch: {left} variables vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("ambient size {n} exceeds the enumeration bound {bound}")]
    AmbientTooLarge { n: usize, bound: usize },

    #[error("not a permutation of 1..={n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("restriction parameters must satisfy 1 <= m <= m' <= n, got m={m} m'={mp} n={n}")]
    BadParameters { m: usize, mp: usize, n: usize },

    #[error("pseudomonomial is not a member of the ideal")]
    NotAMember,

    #[error("image of x{variable} is not one of 0, 1, x_j, 1-x_j")]
    NonLinearImage { variable: usize },

    #[error("x{target} is the image of more than one variable: {}", fmt_vars(.sources))]
    DuplicateTarget { target: usize, sources: Vec<usize> },

    #[error("x{target} is not the image of any variable")]
    MissedTarget { target: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("product of polynomials sharing variables is not multilinear")]
    NotMultilinear,

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid interval: {0}")]
    BadInterval(String),

    #[error("compatible region is not a single interval")]
    NonIntervalRegion,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn fmt_vars(vars: &[usize]) -> String {
    vars.iter()
        .map(|v| format!("x{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_ambient(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARIABLES {
        Err(Error::BadAmbient(n))
    } else {
        Ok(())
    }
}

pub(crate) fn check_same_ambient(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::AmbientMismatch { left, right })
    }
}

/// Mask with the low `n` bits set.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
