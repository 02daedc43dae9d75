pub mod acceptance;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod output;
#[cfg(feature = "high-precision")]
pub mod precise;
pub mod limitlaw;
pub mod moments;
pub mod specfun;
pub mod walk;

pub use error::{Error, Result};
