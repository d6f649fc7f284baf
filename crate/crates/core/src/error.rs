use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p >= 5)")]
    UnsupportedCharacteristic(u64),
    #[error("field size {p}^{r} exceeds the supported bound 2^20")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("{0} is not a power of a prime p >= 5")]
    NotPrimePower(u64),
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("curve is singular (4a^3 + 27b^2 = 0)")]
    SingularCurve,
    #[error("class number argument must be nonnegative, got {0}")]
    NegativeArgument(i64),
    #[error("weight {0} is not an even integer >= 4")]
    InvalidWeight(u32),
    #[error("Hecke index must be positive")]
    InvalidHeckeIndex,
    #[error("precision {got} is too small, need at least {need}")]
    InsufficientPrecision { got: usize, need: usize },
    #[error("invalid interval [{alpha}, {beta}]")]
    InvalidInterval { alpha: f64, beta: f64 },
    #[error("degree bound must be at least {min}, got {got}")]
    DegreeTooSmall { got: usize, min: usize },
    #[error("frequency {m} outside 1..={max}")]
    FrequencyOutOfRange { m: i64, max: usize },
    #[error("moment order {0} is outside the supported range 0..=5")]
    MomentOrder(u32),
    #[error("need at least {need} usable points for a fit, got {got}")]
    TooFewPoints { got: usize, need: usize },
}
