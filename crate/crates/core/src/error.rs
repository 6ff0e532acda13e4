use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DenominatorVanishes: denominator vanishes at {symbol} = {value}")]
    DenominatorVanishes { symbol: String, value: String },
    #[error("NotOverBaseField: {0}")]
    NotOverBaseField(String),
    #[error("NotAdmissible: {0}")]
    NotAdmissible(String),
    #[error("ParseError: {0}")]
    ParseError(String),
    #[error("GeneratorNotInRadical: {0}")]
    GeneratorNotInRadical(String),
    #[error("RankDeficient: rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("LimitNotStable: {0}")]
    LimitNotStable(String),
    #[error("FormulaMismatch: mu - dim Stab = {via_stab} but Hom difference = {via_hom}")]
    FormulaMismatch { via_stab: usize, via_hom: usize },
    #[error("DimensionMismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("InconclusiveClassification: {0}")]
    InconclusiveClassification(String),
    #[error("InvalidPoint: {0}")]
    InvalidPoint(String),
    #[error("NotMinusOne: curve {name} has self-intersection {self_int}")]
    NotMinusOne { name: String, self_int: i64 },
    #[error("InvalidHirzebruchIndex: {0}")]
    InvalidHirzebruchIndex(i64),
}

impl Error {
    /// The bare variant name, as printed on the diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DenominatorVanishes { .. } => "DenominatorVanishes",
            Error::NotOverBaseField(_) => "NotOverBaseField",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::ParseError(_) => "ParseError",
            Error::GeneratorNotInRadical(_) => "GeneratorNotInRadical",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::LimitNotStable(_) => "LimitNotStable",
            Error::FormulaMismatch { .. } => "FormulaMismatch",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::InconclusiveClassification(_) => "InconclusiveClassification",
            Error::InvalidPoint(_) => "InvalidPoint",
            Error::NotMinusOne { .. } => "NotMinusOne",
            Error::InvalidHirzebruchIndex(_) => "InvalidHirzebruchIndex",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
