pub mod arith;
pub mod census;
pub mod classnum;
pub mod cli;
pub mod ellcurve;
pub mod error;
pub mod gf;
pub mod surface;

pub use error::{Error, Result};
