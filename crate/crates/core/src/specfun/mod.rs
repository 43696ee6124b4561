//! Special-function kernel: Bessel `J_n`, Chebyshev `U_n`, Bell polynomials,
//! quadrature and weighted Bessel sums.

pub mod bell;
pub mod bessel;
pub mod chebyshev;
pub mod moments;
pub mod quadrature;

pub use bell::{bell_complete, bell_complete_det, bell_partial, BellInput};
pub use bessel::{bessel_j, bessel_row, BesselRow};
pub use chebyshev::{chebyshev_fourier_coeff, chebyshev_u, chebyshev_u_row};
pub use moments::{
    bessel_cubed_sum_closed, bessel_even_moment, bessel_moment_direct, cubed_sum_check,
    sine_phase_derivatives, CubedSumCheck, MomentSum,
};
