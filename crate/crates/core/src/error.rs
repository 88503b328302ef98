use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("coordinate vector has odd length {0}")]
    OddLength(usize),
    #[error("class is not primitive modulo {0}")]
    NotPrimitive(u32),
    #[error("parity is only defined for even moduli, got r = {0}")]
    OddModulus(u32),
    #[error("{what} exceeds the configured bound ({size} > {bound})")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("{divisor} does not divide {modulus} (or is smaller than 2)")]
    NotDivisor { divisor: u32, modulus: u32 },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("unknown curve system `{0}`")]
    UnknownPreset(String),
    #[error("genus {genus} is outside the valid range for {name} ({range})")]
    GenusOutOfRange {
        name: String,
        genus: usize,
        range: &'static str,
    },
    #[error("invalid curve diagram: {0}")]
    InvalidDiagram(String),
    #[error("cyclic order at `{curve}` is inconsistent: {reason}")]
    CyclicOrder { curve: String, reason: String },
    #[error("declared genus {declared} but the square-tiled surface has genus {computed}")]
    DeclaredGenus { declared: usize, computed: usize },
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("grid path is not closed (ends in square {end}, started in {start})")]
    OpenPath { start: usize, end: usize },
    #[error("invalid grid path: {0}")]
    InvalidPath(String),
    #[error("r = {r} does not divide the order {order} of a zero")]
    ZeroOrderNotDivisible { r: u32, order: u32 },
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("no class with the prescribed intersection numbers exists")]
    NoSuchClass,
    #[error("unsupported shadow: {0}")]
    UnsupportedShadow(String),
    #[error("stabilized structure is not unique ({0} solutions)")]
    NotUnique(u128),
    #[error("verification precondition failed: {0}")]
    Precondition(String),
    #[error("schema error: {0}")]
    Schema(String),
}
