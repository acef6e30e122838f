use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} outside 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid projector selection: {0}")]
    InvalidSelection(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("singular sample point {re}+{im}i: {reason}")]
    SingularPoint { re: f64, im: f64, reason: String },

    #[error("step size {0} produced a non-finite difference quotient")]
    StepSize(f64),

    #[error("degenerate metric g+- = {0}")]
    DegenerateMetric(f64),

    #[error("frame coefficient products are not exactly rational")]
    InexactFrame,

    #[error("parameter {param} outside the family range ({range})")]
    FamilyRange { param: u64, range: &'static str },

    #[error("family row is inadmissible: l = {l}, n = {n}")]
    Inadmissible { l: i64, n: i64 },

    #[error("closed form disagrees with the tabulated row: {0}")]
    FamilyMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
