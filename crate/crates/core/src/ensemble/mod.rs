//! Haar-random unitaries, Weyl-formula quadrature for class functions in
//! `d = 2, 3`, and seeded Monte Carlo estimators.

mod haar;
mod montecarlo;
mod weyl;

pub use haar::{haar_unitary, HaarSampler};
pub use montecarlo::{
    mc_chaotic_volume, mc_estimate, mc_mean_fixed_pvm, mc_mean_hdyn_d2, mc_mean_maxent, McEstimate,
    McOptions, Moments,
};
pub use weyl::{
    m_c2_exact, m_c3_lobes, m_c3_quadrature, mean_hdyn_d2_exact, midpoint, t3_normalization,
    trace_density_d3, weyl_average_d2, weyl_mean_hdyn_d2, weyl_volume_d2, PolarGrid, CATALAN,
    DEFAULT_WEYL_POINTS,
};
