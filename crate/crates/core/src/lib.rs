pub mod cli;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod hilbert;
pub mod polyring;
pub mod scenarios;

pub use error::{Error, Result};
