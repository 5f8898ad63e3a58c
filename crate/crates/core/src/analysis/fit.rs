use super::clusters::ClusterSet;
use super::pdp::Pdp;
use crate::{Error, Result};

/// `P(t) = beta0 + beta1 * t` in dB, with `t` in ns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub beta0: f64,
    pub beta1: f64,
}

impl LinearFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.beta0 + self.beta1 * t
    }

    /// Exponential decay rate (1/ns) equivalent to the dB slope.
    pub fn decay_rate(&self) -> f64 {
        -self.beta1 * std::f64::consts::LN_10 / 10.0
    }
}

/// Ordinary least squares line through `(delay_ns, power_db)` points.
pub fn fit_linear_ls(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(Error::Degenerate("a line fit needs at least two points".into()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxx, sxy) = points.iter().fold((0.0, 0.0), |(sxx, sxy), &(x, y)| {
        let dx = x - mx;
        (sxx + dx * dx, sxy + dx * (y - my))
    });
    if sxx == 0.0 {
        return Err(Error::Degenerate("all delays identical".into()));
    }
    let beta1 = sxy / sxx;
    Ok(LinearFit {
        beta0: my - beta1 * mx,
        beta1,
    })
}

// Falls back to a flat line at the mean when no slope can be fitted.
fn fit_or_flat(points: &[(f64, f64)]) -> (LinearFit, bool) {
    match fit_linear_ls(points) {
        Ok(fit) => (fit, false),
        Err(_) => {
            let mean = if points.is_empty() {
                0.0
            } else {
                points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64
            };
            (LinearFit { beta0: mean, beta1: 0.0 }, true)
        }
    }
}

/// Fit of one cluster. Delays are measured from the cluster start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterFit {
    pub fit: LinearFit,
    pub n_points: usize,
    /// Too few distinct points for a slope; the fit is flat at the mean.
    pub flat: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub per_cluster: Vec<ClusterFit>,
    /// Single line over all points, delays from the first cluster start.
    pub single: LinearFit,
    pub mean_abs_residual_sv: f64,
    pub mean_abs_residual_single: f64,
    pub n_points: usize,
}

/// Per-cluster and single-line fits of the dB profile over the same set of
/// non-empty bins.
pub fn fit_sv_piecewise(pdp: &Pdp, clusters: &ClusterSet) -> Result<FitReport> {
    if clusters.is_empty() {
        return Err(Error::Degenerate("no clusters to fit".into()));
    }
    let db = pdp.db_floored(clusters.rule.dynamic_range_db);
    let origin = clusters.clusters[0].start_ns;
    let mut per_cluster = Vec::with_capacity(clusters.len());
    let mut sv_abs = 0.0;
    let mut all = Vec::new();
    for c in &clusters.clusters {
        let points: Vec<(f64, f64)> = (c.start_bin..c.end_bin.min(db.len()))
            .filter(|&i| !db[i].1)
            .map(|i| (pdp.delay(i) - c.start_ns, db[i].0))
            .collect();
        let (fit, flat) = fit_or_flat(&points);
        let cf = ClusterFit {
            fit,
            n_points: points.len(),
            flat,
        };
        sv_abs += points.iter().map(|&(t, y)| (y - cf.fit.eval(t)).abs()).sum::<f64>();
        all.extend(points.iter().map(|&(t, y)| (t + c.start_ns - origin, y)));
        per_cluster.push(cf);
    }
    if all.is_empty() {
        return Err(Error::Degenerate("no profile bins above the floor".into()));
    }
    let (single, _) = fit_or_flat(&all);
    let n = all.len() as f64;
    let single_abs = all.iter().map(|&(t, y)| (y - single.eval(t)).abs()).sum::<f64>();
    Ok(FitReport {
        per_cluster,
        single,
        mean_abs_residual_sv: sv_abs / n,
        mean_abs_residual_single: single_abs / n,
        n_points: all.len(),
    })
}
