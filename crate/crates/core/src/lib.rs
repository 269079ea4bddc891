//! Numerical laboratory for principal eigenvalues of Z-matrix elliptic
//! discretizations on rough rasterized domains, positive-semigroup structure
//! checks, and the degenerate logistic equation solved by monotone
//! sub/supersolution iteration.

pub mod assembly;
pub mod domain;
pub mod error;
pub mod linalg;
pub mod logistic;
pub mod semigroup;
pub mod spectral;
pub mod verify;

pub use error::{CoreError, Result};
