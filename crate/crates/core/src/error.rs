use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit string must contain at least one bit")]
    EmptyBitString,

    #[error("invalid bit character {0:?}; expected '0' or '1'")]
    InvalidBit(char),

    #[error("bit strings have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid dyadic rational {0:?}; expected \"numerator/2^exponent\"")]
    ParseDyadic(String),

    #[error("value {0} lies outside the unit interval")]
    OutOfUnitInterval(String),

    #[error("symbolic expansion exhausted: no future digits left to shift")]
    ExhaustedExpansion,

    #[error("{what} supports 1..={max} qubits, got {got}")]
    QubitCap {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("{what} supports at most {max} steps, got {got}")]
    StepCap {
        what: &'static str,
        got: u64,
        max: u64,
    },

    #[error("partial Fourier index m={m} exceeds qubit count N={n}")]
    PartialFourierRange { m: usize, n: usize },

    #[error("partition needs at least one bin")]
    EmptyPartition,

    #[error("window [{start}, {end}] exceeds orbit of length {len}")]
    WindowExceedsOrbit {
        start: usize,
        end: usize,
        len: usize,
    },

    #[error("window length must be at least 1")]
    EmptyWindow,

    #[error("marginal and joint distributions do not come from the same window: {0}")]
    InconsistentDistributions(String),

    #[error("partition list is empty")]
    EmptyPartitionList,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
