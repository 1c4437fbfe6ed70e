use thiserror::Error;

use crate::state::DpState;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constraint #{index} is empty")]
    EmptyPattern { index: usize },

    #[error("{count} constraints exceed the limit of {limit}")]
    TooManyConstraints { count: usize, limit: usize },

    #[error("constraint limit {limit} exceeds the mask width of 64 bits")]
    InvalidLimit { limit: usize },

    #[error("mask index {index} out of range for d = {d}")]
    IndexOutOfRange { index: u64, d: usize },

    #[error(
        "estimated table size {estimated_bytes} bytes exceeds the memory cap of {cap_bytes} bytes"
    )]
    MemoryCapExceeded {
        estimated_bytes: u128,
        cap_bytes: u64,
    },

    #[error("instance too large for exhaustive search: {0}")]
    InstanceTooLarge(String),

    #[error("traceback found no consistent step at cell ({i}, {j}) in state {state:?}")]
    InconsistentTable { i: usize, j: usize, state: DpState },

    #[error("traceback requires a retained table; solve with traceback enabled")]
    TableNotRetained,

    #[error("invalid benchmark configuration: {0}")]
    InvalidBenchConfig(String),
}
