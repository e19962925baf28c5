use thiserror::Error;

/// Every failure the library can report. The variant name is the stable
/// identifier surfaced by the command line (`Error::name`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid p-adic context: {0}")]
    InvalidContext(String),
    #[error("operands live in different p-adic contexts")]
    ContextMismatch,
    #[error("division by an element that is zero at working precision")]
    DivisionByZeroAtPrecision,
    #[error("residue class is zero modulo p")]
    ZeroResidue,
    #[error("no coefficient is a unit within the truncation")]
    AllCoefficientsNonUnit,
    #[error("truncation order {have} is smaller than the required {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("module is not torsion (determinant vanishes)")]
    NotTorsion,
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not reduced")]
    NotReduced,
    #[error("the section does not split off a factor of the total ring of fractions")]
    NoSectionComponent,
    #[error("algebra is not Gorenstein over the base")]
    NotGorenstein,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix is singular")]
    SingularInput,
    #[error("target degree {r} is not in the Clebsch-Gordan range of {a} x {b}")]
    RangeParityError { a: usize, b: usize, r: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("direction makes the denominator vanish")]
    DegenerateDirection,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero Frobenius eigenvalue data")]
    ZeroEigenvalue,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "InvalidContext",
            Error::ContextMismatch => "ContextMismatch",
            Error::DivisionByZeroAtPrecision => "DivisionByZeroAtPrecision",
            Error::ZeroResidue => "ZeroResidue",
            Error::AllCoefficientsNonUnit => "AllCoefficientsNonUnit",
            Error::TruncationTooSmall { .. } => "TruncationTooSmall",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::NotTorsion => "NotTorsion",
            Error::InvalidAlgebra(_) => "InvalidAlgebra",
            Error::NotReduced => "NotReduced",
            Error::NoSectionComponent => "NoSectionComponent",
            Error::NotGorenstein => "NotGorenstein",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::SingularInput => "SingularInput",
            Error::RangeParityError { .. } => "RangeParityError",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DegenerateDirection => "DegenerateDirection",
            Error::NotMonic => "NotMonic",
            Error::ZeroEigenvalue => "ZeroEigenvalue",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
