//! Computation engine for finite skew braces.

pub mod brace;
pub mod catalog;
pub mod cli;
pub mod constructors;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod series;
pub mod ybe;

pub use brace::SkewBrace;
pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, SubSet};
