//! Phase-space and photon-statistics analysis of Fock-basis states.

mod husimi;
mod scan;
mod statistics;

pub use husimi::{
    angular_lobes, husimi_grid, husimi_q, GridSpec, LobeReport, LobeSettings, PhaseGrid,
};
pub use scan::{mandel_at, mandel_scan, MandelSeries, MINIMUM_TOL};
pub use statistics::{
    mandel_closed_report, mandel_q, mandel_q_closed, photon_distribution, ClosedMandel,
    PhotonDistribution,
};
