//! Construction and certification of generalized balanced tournament
//! designs and the equitable symbol weight codes they induce.

pub mod algebra;
pub mod codes;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod recipe;
pub mod search;
pub mod starters;

pub use error::{Error, Result};
