//! Analysis of impulse response ensembles.

mod clean;
mod clusters;
mod estimate;
mod fit;
mod pdp;
mod stats;

pub use clean::{clean_deconvolve, CleanResult};
pub use clusters::{detect_clusters, segment_taps, Cluster, ClusterRule, ClusterSet};
pub use estimate::{estimate_sv_params, exponential_rate_mle, zero_truncated_poisson_mean, SvEstimate};
pub use fit::{fit_linear_ls, fit_sv_piecewise, ClusterFit, FitReport, LinearFit};
pub use pdp::{compute_pdp, Normalization, Pdp};
pub use stats::{
    channel_stats, count_significant_mpcs, los_tap_index, ricean_k_factor, ricean_k_factor_cir, rms_delay_spread,
    ChannelStats, PowerProfile, DEFAULT_THRESHOLD_FRACTION,
};
