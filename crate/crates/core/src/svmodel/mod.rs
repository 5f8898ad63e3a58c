//! Saleh-Valenzuela impulse response synthesis.
//!
//! Clusters arrive as a Poisson process with rate `chi`, multipath components
//! inside a cluster as a Poisson process with rate `varsigma`. The mean
//! square amplitude of component `m` in cluster `l` is
//! `omega00 * exp(-T_l * eta) * exp(-tau_lm * gamma)`.
//!
//! Each scan is aligned on its first arrival: the lead cluster of the
//! sounder window sits at excess delay 0 and later clusters keep arriving
//! until the physical window closes. The number of clusters per scan is
//! therefore Poisson with mean `chi * window`, conditioned on at least one
//! arrival, in line with the catalog identity `chi = N_C / window`.

pub mod catalog;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cir::{Cir, CirMeta, Tap, DEFAULT_SAMPLE_SPACING_NS, DEFAULT_WINDOW_NS};
use crate::rng::substream;
use crate::{Error, Result};

pub use catalog::{catalog_lookup, Distance, Receiver, Scenario, ScenarioKey};

/// One row of clustered channel parameters. Rates are per ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SVParams {
    /// Mean number of clusters in the window.
    pub n_c_mean: f64,
    /// Cluster arrival rate.
    pub chi: f64,
    /// MPC arrival rate within a cluster.
    pub varsigma: f64,
    /// Cluster power decay constant.
    pub eta: f64,
    /// MPC power decay constant.
    pub gamma: f64,
    /// Mean power of the first path of the first cluster.
    pub omega00: f64,
}

impl SVParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.n_c_mean, self.chi, self.varsigma, self.eta, self.gamma, self.omega00]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("non-finite channel parameter".into()));
        }
        if self.chi <= 0.0 || self.varsigma <= 0.0 {
            return Err(Error::InvalidParameter("arrival rates must be positive".into()));
        }
        if self.eta < 0.0 || self.gamma < 0.0 {
            return Err(Error::InvalidParameter("decay constants must be non-negative".into()));
        }
        if self.n_c_mean <= 0.0 || self.omega00 <= 0.0 {
            return Err(Error::InvalidParameter(
                "mean cluster count and first-path power must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Cluster and MPC decay rates (1/ns). With `as_time_constants` the
    /// stored `eta` and `gamma` are read as time constants in ns instead.
    pub fn decay_rates(&self, as_time_constants: bool) -> (f64, f64) {
        if as_time_constants {
            (self.eta.recip(), self.gamma.recip())
        } else {
            (self.eta, self.gamma)
        }
    }
}

/// Per-MPC amplitude law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeModel {
    /// Rayleigh magnitude with the model mean square.
    #[default]
    Rayleigh,
    /// Magnitude fixed at the square root of the mean power.
    Deterministic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthesisConfig {
    pub window_ns: f64,
    pub sample_spacing_ns: f64,
    pub amplitude: AmplitudeModel,
    pub decay_as_time_constant: bool,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        Self {
            window_ns: DEFAULT_WINDOW_NS,
            sample_spacing_ns: DEFAULT_SAMPLE_SPACING_NS,
            amplitude: AmplitudeModel::Rayleigh,
            decay_as_time_constant: false,
        }
    }
}

impl SynthesisConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.window_ns > 0.0 && self.window_ns.is_finite()) {
            return Err(Error::InvalidParameter("window must be positive".into()));
        }
        if !(self.sample_spacing_ns > 0.0 && self.sample_spacing_ns < self.window_ns) {
            return Err(Error::InvalidParameter(
                "sample spacing must be positive and below the window".into(),
            ));
        }
        Ok(())
    }

    /// Most arrivals a single process may place in one window: one per
    /// grid sample.
    pub fn capacity(&self) -> usize {
        (self.window_ns / self.sample_spacing_ns).round() as usize + 1
    }
}

/// `omega00 * exp(-t_cluster * eta) * exp(-tau * gamma)`.
pub fn mpc_mean_power(params: &SVParams, t_cluster: f64, tau: f64) -> f64 {
    params.omega00 * decay(params.eta, t_cluster) * decay(params.gamma, tau)
}

#[inline]
fn decay(rate: f64, t: f64) -> f64 {
    (-decay_exponent(rate, t)).exp()
}

// rate * t with the convention that an infinite rate does not decay at t = 0
#[inline]
fn decay_exponent(rate: f64, t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        rate * t
    }
}

/// Arrival times of a Poisson process started at 0: `0, g1, g1+g2, ...`
/// with `g ~ Exp(rate)`, kept while below `horizon` and capped at
/// `capacity` entries.
pub fn sample_arrivals<R: Rng + ?Sized>(rate: f64, horizon: f64, capacity: usize, rng: &mut R) -> Vec<f64> {
    let mut times = Vec::new();
    if capacity == 0 || horizon <= 0.0 {
        return times;
    }
    times.push(0.0);
    let gap = Exp::new(rate).expect("positive arrival rate");
    let mut t = 0.0;
    while times.len() < capacity {
        let next = t + gap.sample(rng);
        if next >= horizon {
            break;
        }
        // zero-length gaps would duplicate a delay
        if next > t {
            times.push(next);
        }
        t = next;
    }
    times
}

/// Cluster arrival times of one scan and the excess delay at which the
/// sounder window closes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterArrivals {
    pub times: Vec<f64>,
    pub horizon_ns: f64,
}

/// Draws the lead-cluster position inside the window, then cluster
/// arrivals at rate `chi` measured from the lead.
pub fn sample_cluster_arrivals<R: Rng + ?Sized>(params: &SVParams, cfg: &SynthesisConfig, rng: &mut R) -> ClusterArrivals {
    let w = cfg.window_ns;
    // inverse CDF of Exp(chi) truncated to [0, w)
    let mass = -(-params.chi * w).exp_m1();
    let u: f64 = rng.random();
    let lead = (-(-u * mass).ln_1p() / params.chi).clamp(0.0, w);
    let horizon_ns = w - lead;
    ClusterArrivals {
        times: sample_arrivals(params.chi, horizon_ns, cfg.capacity(), rng),
        horizon_ns,
    }
}

/// MPC delays relative to a cluster start, truncated at `span_ns` (the next
/// cluster start or the window end).
pub fn sample_mpc_arrivals<R: Rng + ?Sized>(params: &SVParams, span_ns: f64, capacity: usize, rng: &mut R) -> Vec<f64> {
    sample_arrivals(params.varsigma, span_ns, capacity, rng)
}

/// One synthetic scan.
pub fn synthesize_cir<R: Rng + ?Sized>(params: &SVParams, cfg: &SynthesisConfig, rng: &mut R) -> Result<Cir> {
    synthesize_scan(params, cfg, rng).map(|(cir, _)| cir)
}

/// One synthetic scan and the number of clusters drawn for it.
pub fn synthesize_scan<R: Rng + ?Sized>(params: &SVParams, cfg: &SynthesisConfig, rng: &mut R) -> Result<(Cir, usize)> {
    params.validate()?;
    cfg.validate()?;
    let (eta, gamma) = params.decay_rates(cfg.decay_as_time_constant);
    let ln_omega00 = params.omega00.ln();
    let capacity = cfg.capacity();

    let clusters = sample_cluster_arrivals(params, cfg, rng);
    let mut taps = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (l, &t_l) in clusters.times.iter().enumerate() {
        let end = clusters
            .times
            .get(l + 1)
            .copied()
            .unwrap_or(clusters.horizon_ns);
        let taus = sample_mpc_arrivals(params, end - t_l, capacity, rng);
        for tau in taus {
            let fading: f64 = match cfg.amplitude {
                AmplitudeModel::Rayleigh => Exp1.sample(rng),
                AmplitudeModel::Deterministic => 1.0,
            };
            let phase = rng.random::<f64>() * TAU;
            let delay = t_l + tau;
            if delay <= last || delay >= end || delay > cfg.window_ns {
                continue;
            }
            last = delay;
            // log domain keeps deep taps representable
            let ln_power = ln_omega00 - decay_exponent(eta, t_l) - decay_exponent(gamma, tau) + fading.ln();
            let magnitude = (0.5 * ln_power).exp();
            taps.push(Tap::new(delay, Complex64::from_polar(magnitude, phase)));
        }
    }
    Ok((Cir::new(taps, cfg.sample_spacing_ns, cfg.window_ns)?, clusters.times.len()))
}

/// `n_scans` scans; scan `i` uses substream `(seed, i)`, so the result does
/// not depend on how the work is scheduled.
pub fn synthesize_ensemble(params: &SVParams, cfg: &SynthesisConfig, n_scans: usize, seed: u64) -> Result<Vec<Cir>> {
    Ok(synthesize_ensemble_counted(params, cfg, n_scans, seed)?
        .into_iter()
        .map(|(cir, _)| cir)
        .collect())
}

/// Like [`synthesize_ensemble`], also returning each scan's cluster count.
pub fn synthesize_ensemble_counted(
    params: &SVParams,
    cfg: &SynthesisConfig,
    n_scans: usize,
    seed: u64,
) -> Result<Vec<(Cir, usize)>> {
    if n_scans == 0 {
        return Err(Error::InvalidParameter("an ensemble needs at least one scan".into()));
    }
    params.validate()?;
    cfg.validate()?;
    (0..n_scans as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i);
            let (mut cir, n_clusters) = synthesize_scan(params, cfg, &mut rng)?;
            cir.meta = Some(CirMeta {
                seed,
                scan_index: i,
                key: None,
            });
            Ok((cir, n_clusters))
        })
        .collect()
}
