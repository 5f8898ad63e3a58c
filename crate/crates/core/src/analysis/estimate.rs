use rayon::prelude::*;

use super::clusters::{segment_taps, ClusterRule};
use super::fit::fit_linear_ls;
use crate::cir::Cir;
use crate::svmodel::SVParams;
use crate::{Error, Result};

/// Maximum-likelihood rate of exponential samples, `1 / mean`.
pub fn exponential_rate_mle(samples: &[f64]) -> Option<f64> {
    let sum: f64 = samples.iter().sum();
    (sum > 0.0).then(|| samples.len() as f64 / sum)
}

/// Poisson mean `x` whose zero-truncated mean `x / (1 - exp(-x))` equals
/// `mean_count`. `None` when `mean_count <= 1`.
pub fn zero_truncated_poisson_mean(mean_count: f64) -> Option<f64> {
    if !(mean_count > 1.0 && mean_count.is_finite()) {
        return None;
    }
    let truncated_mean = |x: f64| x / -(-x).exp_m1();
    let (mut lo, mut hi) = (0.0, mean_count);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if truncated_mean(mid) < mean_count {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Estimated parameters plus flags for quantities the data could not
/// support. Unsupported rates are reported as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SvEstimate {
    pub params: SVParams,
    pub n_scans: usize,
    pub n_clusters: usize,
    pub warnings: Vec<String>,
}

impl SvEstimate {
    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }
}

#[derive(Default)]
struct ScanSummary {
    n_clusters: usize,
    mpc_gaps: usize,
    mpc_exposure_ns: f64,
    decay_rates: Vec<f64>,
    leads: Vec<(f64, f64)>,
    first_power: f64,
}

fn summarize(cir: &Cir, rule: &ClusterRule) -> ScanSummary {
    let starts = segment_taps(cir, rule);
    let mut s = ScanSummary {
        n_clusters: starts.len(),
        ..Default::default()
    };
    let Some(first) = cir.taps.first() else {
        return s;
    };
    s.first_power = first.power();
    for (k, &start) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(cir.taps.len());
        let taps = &cir.taps[start..end];
        let t_l = taps[0].delay_ns;
        let lead_db = taps[0].power_db();
        if lead_db.is_finite() {
            s.leads.push((t_l - first.delay_ns, lead_db));
        }
        if let Some(&next) = starts.get(k + 1) {
            s.mpc_gaps += taps.len() - 1;
            s.mpc_exposure_ns += cir.taps[next].delay_ns - t_l;
        }
        if taps.len() >= 3 {
            let points: Vec<(f64, f64)> = taps
                .iter()
                .map(|t| (t.delay_ns - t_l, t.power_db()))
                .filter(|p| p.1.is_finite())
                .collect();
            if let Ok(fit) = fit_linear_ls(&points) {
                s.decay_rates.push(fit.decay_rate());
            }
        }
    }
    s
}

/// Estimates clustered channel parameters from an ensemble of scans.
///
/// Each scan is split into clusters by [`segment_taps`]. The cluster rate
/// follows from the mean cluster count per window under a zero-truncated
/// Poisson model; the MPC rate is the number of intra-cluster gaps over
/// the time spanned by clusters with a successor; `gamma` is the mean decay
/// rate of per-cluster line fits (clusters with at least three taps);
/// `eta` comes from one line fit of cluster lead power against cluster
/// delay; `omega00` is the mean power of the first tap.
pub fn estimate_sv_params(scans: &[Cir], rule: &ClusterRule) -> Result<SvEstimate> {
    rule.validate()?;
    let first = scans
        .first()
        .ok_or_else(|| Error::Degenerate("no scans to estimate from".into()))?;
    if let Some(i) = scans.iter().position(|s| !s.same_grid(first)) {
        return Err(Error::GridMismatch(format!("scan {i} differs from scan 0")));
    }
    let summaries: Vec<ScanSummary> = scans.par_iter().map(|s| summarize(s, rule)).collect();

    let mut warnings = Vec::new();
    if scans.len() < 10 {
        warnings.push(format!("only {} scans; at least 10 recommended", scans.len()));
    }
    let non_empty: Vec<&ScanSummary> = summaries.iter().filter(|s| s.n_clusters > 0).collect();
    if non_empty.is_empty() {
        return Err(Error::Degenerate("all scans are empty".into()));
    }
    let n_clusters: usize = non_empty.iter().map(|s| s.n_clusters).sum();
    let n_c_mean = n_clusters as f64 / non_empty.len() as f64;

    let chi = match zero_truncated_poisson_mean(n_c_mean) {
        Some(x) => x / first.window_ns,
        None => {
            warnings.push("no scan has a second cluster; cluster rate undefined".into());
            0.0
        }
    };
    let gaps: usize = non_empty.iter().map(|s| s.mpc_gaps).sum();
    let exposure: f64 = non_empty.iter().map(|s| s.mpc_exposure_ns).sum();
    let varsigma = if gaps > 0 && exposure > 0.0 {
        gaps as f64 / exposure
    } else {
        warnings.push("no intra-cluster arrivals; MPC rate undefined".into());
        0.0
    };
    let rates: Vec<f64> = non_empty.iter().flat_map(|s| s.decay_rates.iter().copied()).collect();
    let gamma = if rates.is_empty() {
        warnings.push("no cluster with three or more taps; MPC decay undefined".into());
        0.0
    } else {
        rates.iter().sum::<f64>() / rates.len() as f64
    };
    let leads: Vec<(f64, f64)> = non_empty.iter().flat_map(|s| s.leads.iter().copied()).collect();
    let eta = match fit_linear_ls(&leads) {
        Ok(fit) => fit.decay_rate(),
        Err(_) => {
            warnings.push("cluster leads do not span two delays; cluster decay undefined".into());
            0.0
        }
    };
    let omega00 = non_empty.iter().map(|s| s.first_power).sum::<f64>() / non_empty.len() as f64;

    Ok(SvEstimate {
        params: SVParams {
            n_c_mean,
            chi,
            varsigma,
            eta,
            gamma,
            omega00,
        },
        n_scans: scans.len(),
        n_clusters,
        warnings,
    })
}
