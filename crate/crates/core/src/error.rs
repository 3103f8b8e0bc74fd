use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("bit value must be 0 or 1, got {0}")]
    InvalidBit(u8),
    #[error("non-finite value")]
    NonFinite,
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NonUnitary(f64),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("noise level {0} is outside [0, 1]")]
    InvalidNoise(f64),
    #[error("profile list is not the 27 canonical profiles: {0}")]
    InvalidProfileSet(String),
    #[error("noise level {0} maps to zero temperature")]
    ZeroTemperature(f64),
    #[error("temperature is unobtainable for noise level {0} (x >= 1/2 gives negative or infinite temperature)")]
    UnobtainableTemperature(f64),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}
