use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("shape mismatch: {left:?} times {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal consistency: {0} is not an integer")]
    NonIntegral(String),
    #[error("no closed form stored for rank {0} (available: 1..=4)")]
    NoClosedForm(usize),
    #[error("not polynomial of expected degree {expected}: coefficient of t^{index} is {value}")]
    NotPolynomial {
        expected: usize,
        index: usize,
        value: String,
    },
    #[error("identity malformed: {0}")]
    IdentityMalformed(String),
    #[error("oracle instance too large: {required} ambient coordinates exceeds the cap of {cap}")]
    OracleTooLarge { required: u128, cap: u128 },
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}
