pub mod affine;
pub mod brst;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod nilp;
pub mod poly;
pub mod rational;
pub mod repr;
pub mod rootsys;
pub mod wmodels;

pub use error::{Error, Result};
