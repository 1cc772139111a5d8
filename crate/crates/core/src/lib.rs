pub mod backends;
pub mod config;
pub mod dataset;
pub mod error;
pub mod imgcore;
pub mod inference;
pub mod metrics;
pub mod patching;
pub mod synth;

pub use error::{Error, Result};
