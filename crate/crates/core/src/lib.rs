pub mod error;
pub mod gb;
pub mod harness;
pub mod initial_data;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
