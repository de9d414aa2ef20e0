use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u32),
    #[error("{divisor} does not divide {modulus}")]
    NotDividing { divisor: u32, modulus: u32 },
    #[error("group of order {order} exceeds the materialization cap {cap}")]
    OrderCap { order: u64, cap: u64 },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("invalid rack: {0}")]
    InvalidRack(String),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("representation domain does not match: {0}")]
    DomainMismatch(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("conductor {conductor} exceeds cap {cap}")]
    ConductorCap { conductor: u32, cap: u32 },
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },
    #[error("rack has no parent group")]
    MissingParent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid type C witness: {0}")]
    InvalidWitness(String),
    #[error("representation is reducible")]
    Reducible,
    #[error("element is not central")]
    NotCentral,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
