//! Certified real and complex arithmetic.

pub mod ball;
pub mod complex;
pub mod decimal;
pub mod elementary;
pub mod float;
pub mod mag;

pub use ball::{Ball, CertifiedValue, DEFAULT_PREC};
pub use complex::ComplexBall;
pub use decimal::DecimalBall;
pub use float::Float;
pub use mag::Mag;
