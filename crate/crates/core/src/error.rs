use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is outside the supported range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },

    #[error("capacity exceeded: {what} is {actual}, cap is {cap}")]
    CapacityExceeded {
        what: &'static str,
        actual: u64,
        cap: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
