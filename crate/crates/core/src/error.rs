use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable tag mismatch: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("exact division failed: operator does not preserve the polynomial ring")]
    NonDivisible,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate spectrum at n = {0}")]
    DegenerateSpectrum(i64),
    #[error("Pochhammer factor vanishes: {0}")]
    PochhammerZero(String),
    #[error("unknown operator name: {0}")]
    UnknownName(String),
    #[error("block formula mismatch for composite shift {0:?}")]
    BlockFormulaMismatch((i64, i64)),
    #[error("label out of domain: {0}")]
    OutOfDomain(String),
    #[error("shift {0:?} is not in the required cone")]
    BadCone((i64, i64)),
    #[error("leading coefficient is not of shift-operator shape")]
    LeadingFormMismatch,
    #[error("operator does not satisfy the transmutation property")]
    NotTransmuting,
    #[error("not a shift operator: nonzero residual after reduction")]
    NotAShiftOperator,
    #[error("operator does not commute with the diagonal modified Laplacian")]
    NotInCommutant,
    #[error("coefficient has a pole at z = infinity")]
    PoleAtInfinity,
    #[error("operator has a reflection part where none is allowed")]
    ReflectionPresent,
    #[error("constant term is not in the image: {0}")]
    IncompatibleConstantTerm(String),
    #[error("Gamma pole in c-function: {0}")]
    GammaPole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
