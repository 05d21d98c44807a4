use thiserror::Error;

use crate::cell::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("position {cell} is outside the triangle ({detail})")]
    Position { cell: Cell, detail: String },

    #[error("row {row} is outside the triangle (stored rows: {rows})")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("non-integral value at cell {cell}: {value}")]
    Integrality { cell: Cell, value: String },

    #[error("arithmetic overflow at cell {0}")]
    Overflow(Cell),

    #[error("rule not applicable: {0}")]
    RuleApplicability(String),

    #[error("pattern not applicable: {0}")]
    PatternApplicability(String),

    #[error("ring geometry: cell {cell} lies outside the triangle")]
    Geometry { cell: Cell },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
