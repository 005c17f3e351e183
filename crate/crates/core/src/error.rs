use crate::poly::VarKey;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarKey),

    #[error("variable {var} is outside the {m}x{n} shape")]
    VariableOutOfShape { var: VarKey, m: u32, n: u32 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid shape {m}x{n}: both dimensions must be at least 1")]
    InvalidShape { m: u32, n: u32 },

    #[error("row index {row} out of range 1..={m}")]
    RowOutOfRange { row: u32, m: u32 },

    #[error("n = {n} exceeds the permutation enumeration limit {limit}")]
    EnumerationLimitExceeded { n: u32, limit: u32 },

    #[error("degree {degree} exceeds the truncation order n = {n}")]
    DegreeExceedsN { degree: u32, n: u32 },

    #[error("polynomial has an inadmissible term")]
    NotAdmissible,

    #[error("polynomial is not column symmetric")]
    NotColumnSymmetric,

    #[error("1-form is not closed: da{i}/dx{j} != da{j}/dx{i}")]
    NotClosed { i: u32, j: u32 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("matrix variables x[i,j] and row variables yi cannot be mixed")]
    MixedVariableKinds,

    #[error("invalid structured record: {0}")]
    Structured(String),
}
