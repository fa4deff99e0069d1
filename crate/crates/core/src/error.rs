use thiserror::Error;

/// How a candidate Cayley table failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    /// table[0][j] != j or table[i][0] != i.
    Identity { row: usize, col: usize },
    /// A row or column is not a permutation of 0..n.
    NotLatin { row: usize, col: usize },
    /// First triple found with (a*b)*c != a*(b*c).
    Associativity { a: usize, b: usize, c: usize },
    /// Entry out of range.
    EntryRange { row: usize, col: usize, value: usize },
}

impl std::fmt::Display for TableViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableViolation::Identity { row, col } => {
                write!(f, "element 0 is not an identity at ({row}, {col})")
            }
            TableViolation::NotLatin { row, col } => {
                write!(f, "row or column is not a permutation at ({row}, {col})")
            }
            TableViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails on triple ({a}, {b}, {c})")
            }
            TableViolation::EntryRange { row, col, value } => {
                write!(f, "entry {value} at ({row}, {col}) is out of range")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cayley table: {0}")]
    InvalidTable(TableViolation),
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup does not belong to this group")]
    ForeignSubgroup,
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("ring cardinality {cardinality} exceeds the configured bound {bound}")]
    CardinalityBoundExceeded { cardinality: u64, bound: u64 },
    #[error("exponent relations have full rank: no degree vector exists")]
    NotIndexable,
    #[error("fixed images violate relator {relator}")]
    ImpossibleFixedImage { relator: usize },
    #[error("homomorphisms come from different presentations or targets")]
    MixedPresentations,
    #[error("element does not centralize the image of the degree kernel")]
    NotCentralizing,
    #[error("twisted images violate relator {relator}")]
    RelatorViolation { relator: usize },
    #[error("negative exponent on a non-invertible ring element")]
    NonInvertibleBase,
    #[error("conjugates of h by powers of a must commute with every b")]
    HypothesisViolated,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
