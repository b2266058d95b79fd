use core::fmt;

/// Errors shared across the crate. Report-style validators return their own
/// violation types instead; best-effort constructors (good partitions, broom
/// chains, absorption) return dedicated failure enums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument value was violated.
    Parameter(&'static str),
    /// An instance exceeds (or falls short of) a documented size cap.
    Size {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    /// An order handed to a construction does not satisfy the interval
    /// degree properties the construction relies on.
    InvalidOrder(&'static str),
    /// The query is structurally unanswerable (e.g. more arcs than colors).
    Infeasible(&'static str),
    /// A best-effort construction could not complete on this instance.
    Construction(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Size {
                what,
                limit,
                actual,
            } => write!(f, "size error: {what} (limit {limit}, got {actual})"),
            Error::InvalidOrder(msg) => write!(f, "invalid order: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible parameters: {msg}"),
            Error::Construction(msg) => write!(f, "construction failed: {msg}"),
        }
    }
}
