pub mod algebra;
pub mod bar;
pub mod ce;
pub mod config;
pub mod error;
pub mod gamma;
pub mod lie;
pub mod rbar;
pub mod verify;

pub use error::{Error, Result};
