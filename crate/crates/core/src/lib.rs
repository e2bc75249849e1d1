pub mod error;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod rmatrix;
pub mod rootdata;
pub mod scalar;
pub mod crystal;
pub mod vectorrep;
pub mod wedge;

pub use error::{Error, Result};
