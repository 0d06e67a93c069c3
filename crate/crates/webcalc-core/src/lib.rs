#![no_std]

extern crate alloc;

pub mod check;
pub mod end2;
pub mod error;
pub mod eval;
pub mod gl2;
pub mod linalg;
pub mod newton;
pub mod projectors;
pub mod relations;
pub mod scalars;
pub mod suites;
pub mod symfun;
pub mod web;

pub use error::{Error, Result};
