//! Word maps on finite groups.

pub mod arith;
pub mod counting;
pub mod error;
pub mod groups;
pub mod normal_form;
pub mod reduction;
pub mod verification;
pub mod words;

pub use error::{Error, Result};
