pub mod cli;
pub mod error;
pub mod lab;
pub mod lp;
pub mod monitors;
pub mod solver;
pub mod spectral;
pub mod vorticity;

pub use error::{Error, Result};
