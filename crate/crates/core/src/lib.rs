#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod rearrangement;
pub mod spectral_asymptotics;
pub mod fourier;
pub mod inequality;
pub mod vn_model;

pub use error::{Error, Result};
