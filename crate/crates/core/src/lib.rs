pub mod analysis;
pub mod approximations;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod numerics;
pub mod reference;
pub mod report;
pub mod series;

pub use error::{Error, Result};
