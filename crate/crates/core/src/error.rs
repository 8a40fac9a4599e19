use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// `‖M·M† − M†·M‖max` exceeded the normality threshold.
    #[error("matrix is not normal (commutator deviation {deviation:.3e})")]
    NotNormal { deviation: f64 },

    #[error("matrix is singular (|det| = {det_abs:.3e}); inverse-similarity check is undefined")]
    SingularInput { det_abs: f64 },

    #[error("parse error at token {position} ({token:?}): {message}")]
    Parse {
        /// 1-based token index.
        position: usize,
        token: String,
        message: String,
    },

    #[error("operator is not CNOT-like: {0}")]
    NotCnotLike(String),

    #[error("scalar coupling is zero; coupling pulses cannot be realized by free evolution")]
    ZeroCoupling,

    #[error("no catalog entry named {0:?}")]
    NotFound(String),

    #[error("invalid matrix document: {0}")]
    MatrixFormat(String),

    #[error("invalid state document: {0}")]
    StateFormat(String),

    #[error("invalid sequence document: {0}")]
    SequenceFormat(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("catalog transcription error: {0}")]
    Transcription(String),
}
