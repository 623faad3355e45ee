pub mod ainfty;
pub mod catalog;
pub mod certificate;
pub mod certify;
pub mod config;
pub mod error;
pub mod ext;
pub mod hochschild;
pub mod io;
pub mod linalg;
pub mod pipelines;
pub mod scalar;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use space::{BasisElement, BigradedSpace};

/// Default exact field.
pub type Q = num_rational::BigRational;
