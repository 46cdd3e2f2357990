pub mod analysis;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod fock;
mod special;
pub mod states;

pub use deformation::{RhoFamily, Radius};
pub use error::{Error, Result};
pub use fock::{FockOperator, FockVector};
