use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {partition} does not fit the {rows}x{cols} box")]
    BoxOverflow { partition: Partition, rows: u32, cols: u32 },

    #[error("partition {partition} has more than {size} parts")]
    LengthOverflow { partition: Partition, size: usize },

    #[error("operands live in different truncations ({left:?} vs {right:?} variables)")]
    RankMismatch { left: Option<u32>, right: Option<u32> },

    #[error("series stops at degree {available}, determinant needs degree {needed}")]
    InsufficientDegrees { needed: u32, available: u32 },

    #[error("c_{degree} requested for {bundle} of rank {rank}")]
    DegreeOverflow { bundle: String, degree: u32, rank: u64 },

    #[error("degree {requested} exceeds the working degree bound {bound}")]
    WorkingDegreeExceeded { requested: u32, bound: u32 },

    #[error("duplicate bundle slot {0:?}")]
    DuplicateSlot(String),

    #[error("unknown bundle slot {0:?}")]
    UnknownSlot(String),

    #[error("{0} is not a line bundle")]
    NotALineBundle(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not a function of the virtual difference {e_slot}* - {f_slot}*: {detail}")]
    NotSupersymmetric { e_slot: String, f_slot: String, detail: String },

    #[error("rank order violated: need n >= m, got m = {m}, n = {n}")]
    RankOrder { m: u32, n: u32 },

    #[error("box with {rows} rows is too small for a class of degree {degree}")]
    BoxTooSmall { rows: u32, degree: u32 },

    #[error("corank {q} exceeds rank {m}")]
    CorankExceedsRank { q: u32, m: u32 },

    #[error("coefficient {0} is not an integer")]
    NonIntegralResult(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::BoxOverflow { .. } => "BoxOverflow",
            Error::LengthOverflow { .. } => "LengthOverflow",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::InsufficientDegrees { .. } => "InsufficientDegrees",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::WorkingDegreeExceeded { .. } => "WorkingDegreeExceeded",
            Error::DuplicateSlot(_) => "DuplicateSlot",
            Error::UnknownSlot(_) => "UnknownSlot",
            Error::NotALineBundle(_) => "NotALineBundle",
            Error::RingMismatch => "RingMismatch",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotSupersymmetric { .. } => "NotSupersymmetric",
            Error::RankOrder { .. } => "RankOrder",
            Error::BoxTooSmall { .. } => "BoxTooSmall",
            Error::CorankExceedsRank { .. } => "CorankExceedsRank",
            Error::NonIntegralResult(_) => "NonIntegralResult",
            Error::Invalid(_) => "Invalid",
        }
    }
}
