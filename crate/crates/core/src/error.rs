use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative part {0} in partition")]
    NegativePart(i64),

    #[error("partition sizes differ: {left} vs {right}")]
    SizeMismatch { left: u32, right: u32 },

    #[error("orbit {orbit} is not strictly greater than {base}")]
    NotStrictlyGreater { base: String, orbit: String },

    #[error("orbits {0} and {1} live in different groups")]
    GroupMismatch(String, String),

    #[error("unknown exceptional orbit label {label} for {group}")]
    UnknownLabel { group: String, label: String },

    #[error("family {family} does not admit stabilizer GL_{m}")]
    FamilyMismatch { family: String, m: u32 },

    #[error("unknown family name {0:?}")]
    UnknownFamily(String),

    #[error("{0}")]
    Domain(String),

    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i32>),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("{what} = {value} outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("cannot parse orbit expression {expr:?}: {reason}")]
    Expression { expr: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
