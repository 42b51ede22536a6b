use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// `n` or `k` is zero.
    InvalidGrid { n: usize, k: usize },
    /// The instance does not fit the requested representation or solver.
    TooLarge { what: &'static str, limit: usize },
    /// A point has the wrong dimension or a coordinate outside `[1, n]`.
    InvalidPoint(String),
    InvalidArgument(String),
    /// A set that must avoid 3-term progressions contains `x, y, z` with `x + z = 2y`.
    NotApFree { triple: (usize, usize, usize) },
    /// No exact `c_k(n)` value is available.
    TableMiss { k: usize, n: usize },
    /// A real-valued function was evaluated outside its domain.
    Domain(String),
    /// A degree profile was requested for a hypergraph without edges.
    UndefinedProfile,
    /// A post-hoc check of a constructed object failed.
    VerificationFailed { property: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid { n, k } => {
                write!(f, "invalid grid parameters n={n} k={k}: both must be at least 1")
            }
            Error::TooLarge { what, limit } => write!(f, "{what} exceeds the limit of {limit}"),
            Error::InvalidPoint(msg) => write!(f, "invalid point: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotApFree { triple: (x, y, z) } => {
                write!(f, "set contains the 3-term progression {x}, {y}, {z}")
            }
            Error::TableMiss { k, n } => write!(f, "no exact value of c_{k}({n}) is available"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UndefinedProfile => write!(f, "co-degree profile undefined for a hypergraph with no edges"),
            Error::VerificationFailed { property } => write!(f, "verification failed: {property}"),
        }
    }
}

impl core::error::Error for Error {}
