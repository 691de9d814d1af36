//! Heights of algebraic numbers, points and cycles, with certified enclosures.

pub mod algebraic;
pub mod chow;
pub mod cm;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod heights;
pub mod northcott;
pub mod numeric;
pub mod poly;
pub(crate) mod serde_util;
pub mod thresholds;

pub use algebraic::AlgebraicNumber;
pub use error::{Error, Result};
pub use numeric::{Ball, CertifiedValue, ComplexBall};
