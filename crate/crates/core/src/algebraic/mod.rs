//! Exact algebraic numbers and number fields generated by them.

pub mod field;
pub mod number;

pub use field::NumberField;
pub use number::AlgebraicNumber;
