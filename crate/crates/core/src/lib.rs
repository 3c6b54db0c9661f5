//! Mixing-rate machinery for random walks on finite symmetric groups and
//! their homogeneous spaces: exact walk distributions, Fourier-side bounds
//! on distance to uniformity, switched (time-inhomogeneous) walks and their
//! joint spectral radius, and seeded Monte Carlo estimation with explicit
//! concentration planning.

pub mod error;
pub mod exec;
pub mod fourier;
pub mod linalg;
pub mod lognum;
pub mod montecarlo;
pub mod jsr;
pub mod perm;
pub mod space;
pub mod symrep;
pub mod walks;

pub use error::{Error, Result};
