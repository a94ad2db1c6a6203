use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A Hilbert-space dimension was too small or inconsistent.
    InvalidDimension(String),
    /// Two objects live on different Hilbert spaces.
    DimensionMismatch { expected: usize, found: usize },
    /// A parameter lies outside the range where the model is defined.
    Domain(String),
    /// A state failed its construction invariants.
    InvalidState(String),
    /// A Hamiltonian sample was not Hermitian.
    NonHermitian { deviation: f64 },
    /// Norm or trace drifted past the integration tolerance.
    IntegrationFailure { time: f64, drift: f64 },
    /// The density matrix acquired a negative eigenvalue.
    PositivityFailure { time: f64 },
    /// An observable track that does not exist was requested.
    UnknownTrack { name: String, available: String },
    /// An empty operator list was given to a tensor product.
    EmptyProduct,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(msg) => write!(f, "invalid dimension: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidState(msg) => write!(f, "invalid state: {msg}"),
            Error::NonHermitian { deviation } => {
                write!(f, "Hamiltonian is not Hermitian (max |H - H†| = {deviation:e})")
            }
            Error::IntegrationFailure { time, drift } => write!(
                f,
                "integration failure at t = {time}: norm/trace drift {drift:e} exceeds tolerance; \
                 try a smaller step"
            ),
            Error::PositivityFailure { time } => {
                write!(f, "density matrix lost positivity at t = {time}")
            }
            Error::UnknownTrack { name, available } => {
                write!(f, "unknown track `{name}` (available: {available})")
            }
            Error::EmptyProduct => f.write_str("tensor product of an empty operator list"),
        }
    }
}

impl core::error::Error for Error {}
