use std::fmt;

/// Error type shared by the whole crate.
///
/// `BudgetExceeded` is deliberately distinct from a negative answer: a search
/// that ran out of budget is *inconclusive*, never `false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A generator index outside `1..strands` (or the letter `0`).
    InvalidGenerator { index: i32, strands: usize },
    /// Operands live in braid groups on different strand counts.
    StrandMismatch { left: usize, right: usize },
    /// A braid group needs at least two strands.
    TooFewStrands { strands: usize },
    /// Word text (or a measure/config file) failed to parse.
    Parse(String),
    /// An iteration budget ran out before the computation settled.
    /// The result is inconclusive, not false.
    BudgetExceeded { what: &'static str, budget: u64 },
    /// The closed diagram is split (some generator index never occurs),
    /// and the requested quantity is only defined for connected diagrams.
    SplitDiagram { missing_index: usize },
    /// The closure has more than one component and the requested quantity
    /// is only defined for knots.
    MultiComponent { components: usize },
    /// A probability measure failed validation.
    InvalidMeasure(String),
    /// A functional name not present in the registry.
    UnknownFunctional(String),
    /// Bad experiment or walk configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGenerator { index, strands } => write!(
                f,
                "generator {} out of range for {} strands (expected 1..={} up to sign)",
                index,
                strands,
                strands - 1
            ),
            Error::StrandMismatch { left, right } => {
                write!(f, "strand counts differ: {} vs {}", left, right)
            }
            Error::TooFewStrands { strands } => {
                write!(f, "braid group needs at least 2 strands, got {}", strands)
            }
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
            Error::BudgetExceeded { what, budget } => {
                write!(f, "{}: budget of {} exhausted (inconclusive)", what, budget)
            }
            Error::SplitDiagram { missing_index } => write!(
                f,
                "split diagram: generator index {} never occurs",
                missing_index
            ),
            Error::MultiComponent { components } => write!(
                f,
                "closure has {} components; quantity defined only for knots",
                components
            ),
            Error::InvalidMeasure(msg) => write!(f, "invalid measure: {}", msg),
            Error::UnknownFunctional(name) => write!(f, "unknown functional {:?}", name),
            Error::Config(msg) => write!(f, "config error: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
