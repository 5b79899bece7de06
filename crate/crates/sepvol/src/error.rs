use thiserror::Error;

/// Errors surfaced by the library and mapped onto CLI exit codes.
///
/// Theorem-level identities (vertex descriptions, facet counts, two-sided
/// invariance) are checked with assertions instead: a violation there is a
/// bug, not an input problem.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("affine span of the polytope contains no lattice point")]
    NoLatticePoint,

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("volume channels disagree: {0}")]
    ChannelDisagreement(String),

    #[error("dilate counts do not fit a degree-{degree} polynomial: {detail}")]
    InterpolationMismatch { degree: usize, detail: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 2 parse, 3 degenerate input, 4 non-automorphism,
    /// 5 channel disagreement. (0 is success, 1 a verification failure.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Degenerate(_)
            | Error::InvalidInput(_)
            | Error::Unsupported(_)
            | Error::NoLatticePoint => 3,
            Error::NotAutomorphism(_) => 4,
            Error::ChannelDisagreement(_) | Error::InterpolationMismatch { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
