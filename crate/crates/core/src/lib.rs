#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod forms;
pub mod lie;
pub mod octonion;

pub use error::{Error, Result};
