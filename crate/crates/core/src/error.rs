use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not a prime below 2^16.
    InvalidModulus(u64),
    /// Extension degree outside `1..=16`.
    InvalidExponent(usize),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Two objects were built over different fields.
    FieldMismatch,
    NotSymmetric,
    /// The operation is only defined in odd characteristic.
    EvenCharacteristic,
    SingularDuality {
        rank: usize,
        size: usize,
    },
    /// An enumeration would exceed its configured ceiling.
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u64,
    },
    ZeroCode,
    DualIsZero,
    InvalidRange(&'static str),
    Hypothesis(Hypothesis),
    /// An exhaustive search disagreed with a closed-form value.
    TheoryDisagreement {
        theory: Option<usize>,
        found: Option<usize>,
    },
}

/// A construction precondition (or verified conclusion) that did not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    NotSelfOrthogonal { hull_rank: usize, k: usize },
    NotAcd { hull_rank: usize },
    ElementSelfOrthogonal,
    ElementNotSelfOrthogonal,
    ZeroElement,
    NotSkewSymmetric,
    EvenRank(usize),
    OddRank(usize),
    VectorInCode,
    PatternViolated { row: usize, col: usize },
    Conclusion { expected: &'static str, hull_rank: usize },
    DistanceNotIncreased { before: usize, after: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(p) => write!(f, "modulus {p} is not a prime below 65536"),
            Error::InvalidExponent(e) => write!(f, "extension degree {e} is outside 1..=16"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::FieldMismatch => f.write_str("objects are defined over different fields"),
            Error::NotSymmetric => f.write_str("matrix is not symmetric"),
            Error::EvenCharacteristic => f.write_str("even characteristic count not in closed form, use brute force"),
            Error::SingularDuality { rank, size } => {
                write!(f, "duality matrix is singular: rank {rank} < {size}")
            }
            Error::BudgetExceeded { what, required, limit } => {
                write!(f, "{what}: {required} exceeds budget {limit}")
            }
            Error::ZeroCode => f.write_str("zero code has no generator matrix"),
            Error::DualIsZero => f.write_str("dual is the zero code"),
            Error::InvalidRange(msg) => write!(f, "invalid range: {msg}"),
            Error::Hypothesis(h) => write!(f, "hypothesis failed: {h}"),
            Error::TheoryDisagreement { theory, found } => {
                write!(f, "exhaustive search ({found:?}) disagrees with closed form ({theory:?})")
            }
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotSelfOrthogonal { hull_rank, k } => {
                write!(f, "code is not self-orthogonal (hull rank {hull_rank} of {k})")
            }
            Hypothesis::NotAcd { hull_rank } => {
                write!(f, "code is not ACD (hull rank {hull_rank})")
            }
            Hypothesis::ElementSelfOrthogonal => f.write_str("element x must satisfy chi_x(x) != 1"),
            Hypothesis::ElementNotSelfOrthogonal => f.write_str("element y must satisfy chi_y(y) = 1"),
            Hypothesis::ZeroElement => f.write_str("element must be nonzero"),
            Hypothesis::NotSkewSymmetric => f.write_str("duality is not skew-symmetric"),
            Hypothesis::EvenRank(k) => write!(f, "rank {k} must be odd"),
            Hypothesis::OddRank(k) => write!(f, "rank {k} must be even"),
            Hypothesis::VectorInCode => f.write_str("vector already lies in the code"),
            Hypothesis::PatternViolated { row, col } => {
                write!(f, "pairing pattern violated at ({row}, {col})")
            }
            Hypothesis::Conclusion { expected, hull_rank } => {
                write!(f, "output should be {expected} but has hull rank {hull_rank}")
            }
            Hypothesis::DistanceNotIncreased { before, after } => {
                write!(f, "distance did not grow: {before} -> {after}")
            }
        }
    }
}

impl From<Hypothesis> for Error {
    fn from(h: Hypothesis) -> Self {
        Error::Hypothesis(h)
    }
}

impl core::error::Error for Error {}
