//! Susskind-Glogower nonlinear coherent states.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`specfun`]: integer-order Bessel functions, Chebyshev polynomials of the
//!   second kind, Bell polynomials and weighted Bessel sums.
//! - [`states`]: Fock-basis states built by approximate and exact
//!   displacement of the vacuum, by closed-form evolution under
//!   `H = η(V + V†)`, and by a direct propagation oracle.
//! - [`analysis`]: Husimi Q function, photon-number distributions and the
//!   Mandel Q-parameter.
//! - [`waveguide`]: the semi-infinite waveguide array whose intensity pattern
//!   reproduces the photon-number distribution.
//! - [`verify`]: the invariant suite behind `nlcs verify`.
//!
//! All operations are pure; nothing here holds global mutable state.

pub mod analysis;
pub mod error;
pub mod phase;
pub mod specfun;
pub mod states;
pub mod verify;
pub mod waveguide;

pub use error::{Error, Result};
pub use num_complex::Complex64;
