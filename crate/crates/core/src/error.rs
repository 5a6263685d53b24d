use alloc::string::String;
use core::fmt;

/// The first violated primal constraint found by a feasibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The assignment has the wrong number of entries.
    Length { expected: usize, found: usize },
    /// `vertex` was given a label outside its allowed list.
    Disallowed { vertex: usize, label: usize },
    /// A non-dummy label is used by two vertices.
    Duplicate { label: usize, first: usize, second: usize },
    /// A LAP assignment leaves `label` unused, so it is not a bijection.
    NotBijection { label: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { expected, found } => {
                write!(f, "assignment has {found} entries, expected {expected}")
            }
            Violation::Disallowed { vertex, label } => {
                write!(f, "label {label} is not allowed for vertex {vertex}")
            }
            Violation::Duplicate { label, first, second } => {
                write!(f, "label {label} assigned to both vertex {first} and vertex {second}")
            }
            Violation::NotBijection { label } => {
                write!(f, "label {label} is not assigned to any vertex")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Instance data does not satisfy the model invariants.
    InvalidInstance(String),
    /// An assignment is not feasible for the instance.
    Infeasible(Violation),
    /// A dual vector violates `alpha_v + beta_l <= theta_v(l)` (or `beta <= 0`).
    DualInfeasible { vertex: Option<usize>, label: Option<usize>, excess: f64 },
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    /// The allowed-label graph has no perfect matching.
    NoPerfectMatching,
    /// A documented precondition of an operation does not hold.
    Precondition(&'static str),
    /// A brute-force enumeration would exceed its size guard.
    GuardExceeded { estimate: f64, limit: f64 },
    IndexOutOfRange { what: &'static str, index: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::Infeasible(v) => write!(f, "infeasible assignment: {v}"),
            Error::DualInfeasible { vertex, label, excess } => {
                write!(f, "dual infeasible by {excess:e}")?;
                if let Some(v) = vertex {
                    write!(f, " at vertex {v}")?;
                }
                if let Some(l) = label {
                    write!(f, " at label {l}")?;
                }
                Ok(())
            }
            Error::DimensionMismatch { what, expected, found } => {
                write!(f, "{what}: expected length {expected}, found {found}")
            }
            Error::NoPerfectMatching => f.write_str("no perfect matching on the allowed-label graph"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GuardExceeded { estimate, limit } => {
                write!(f, "enumeration size estimate {estimate:e} exceeds guard {limit:e}")
            }
            Error::IndexOutOfRange { what, index } => write!(f, "{what} index {index} out of range"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
