//! Spatially coupled LDPC codes: protograph construction, lifting, channel
//! models, belief-propagation decoders, density evolution and a Monte-Carlo
//! harness.

pub mod channels;
pub mod decoder;
pub mod density_evolution;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod lifting;
pub mod protograph;

pub use error::{Error, Result};
