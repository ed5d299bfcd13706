//! Library side of the `qel` command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod input;
pub mod scan;
pub mod verify;

pub use error::{CliError, Result};
