use thiserror::Error;

use crate::constructions::FamilyTag;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} of {size} exceeds the configured bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("{tag} does not exist for (n, m) = ({n}, {m})")]
    DoesNotExist { tag: FamilyTag, n: u64, m: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
