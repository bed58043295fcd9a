//! Weil representations of `SL_*(2,A)` over finite involutive rings.

pub mod bundle;
pub mod cache;
pub mod config;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod operator;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod symplectic;
pub mod weil;

pub use error::{Error, Result};
