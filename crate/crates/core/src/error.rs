use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },
    #[error("edge list parse error on line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("{what} is {value}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("contract violation: {0}")]
    Contract(String),
    /// A constructive step that a proven statement guarantees did not go
    /// through. Never swallowed: callers report these as counterexamples.
    #[error("counterexample to {claim}: {detail}")]
    Counterexample { claim: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}

pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
