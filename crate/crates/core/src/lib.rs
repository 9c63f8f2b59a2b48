//! Closed-form three-layer ReLU networks for piecewise constant functions.

pub mod error;
pub mod analysis;
pub mod construct;
pub mod geometry;
pub mod io;
pub mod network;
pub mod sampling;
pub mod scenarios;

pub use error::{Error, Result};
