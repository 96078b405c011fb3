use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] koptlab_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("report line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub fn io_error(path: impl std::fmt::Display) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.to_string();
    move |source| HarnessError::Io { path, source }
}
