use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported Coxeter type: {0}")]
    Unsupported(String),

    #[error("system is not eligible for systolization: {0}")]
    Ineligible(String),

    #[error("enumeration exceeded the node budget of {budget} chambers")]
    Budget { budget: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
pub(crate) use input_err;
