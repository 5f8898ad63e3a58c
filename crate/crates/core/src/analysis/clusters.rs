use serde::{Deserialize, Serialize};

use super::pdp::Pdp;
use crate::cir::Cir;
use crate::{Error, Result};

/// Cluster delimiting constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClusterRule {
    /// Shortest admissible cluster, ns.
    pub min_duration_ns: f64,
    /// Drop below the running cluster peak that must precede a new cluster, dB.
    pub min_drop_db: f64,
    /// Bins further than this below the peak are treated as empty, dB.
    pub dynamic_range_db: f64,
}

impl Default for ClusterRule {
    fn default() -> Self {
        Self {
            min_duration_ns: 2.5,
            min_drop_db: 8.0,
            dynamic_range_db: 48.0,
        }
    }
}

impl ClusterRule {
    pub fn validate(&self) -> Result<()> {
        let ok = self.min_duration_ns > 0.0
            && self.min_duration_ns.is_finite()
            && self.min_drop_db > 0.0
            && self.min_drop_db.is_finite()
            && self.dynamic_range_db > 0.0
            && self.dynamic_range_db.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("cluster rule constants must be positive".into()))
        }
    }
}

/// One detected cluster. Bins `start_bin..end_bin` belong to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub start_bin: usize,
    pub end_bin: usize,
    pub start_ns: f64,
    pub end_ns: f64,
    /// Strongest bin, dB relative to the profile peak.
    pub peak_power_db: f64,
    pub lead_delay_ns: f64,
}

impl Cluster {
    pub fn duration_ns(&self) -> f64 {
        self.end_ns - self.start_ns
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    pub clusters: Vec<Cluster>,
    pub rule: ClusterRule,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

/// Greedy left-to-right cluster detection on the peak-relative dB profile.
///
/// A new cluster opens at a bin that rises above its predecessor after the
/// profile has fallen at least `min_drop_db` below the running peak of the
/// current cluster, provided the current cluster is already
/// `min_duration_ns` long. Shorter segments stay merged into the current
/// cluster. A trailing cluster shorter than `min_duration_ns` is merged
/// into its predecessor. Detection starts at the first non-empty bin and
/// ends after the last one.
pub fn detect_clusters(pdp: &Pdp, rule: &ClusterRule) -> Result<ClusterSet> {
    rule.validate()?;
    if pdp.is_empty() || pdp.peak() <= 0.0 {
        return Err(Error::Degenerate("PDP is empty".into()));
    }
    let db = pdp.db_floored(rule.dynamic_range_db);
    let first = db.iter().position(|&(_, floored)| !floored).unwrap_or(0);
    let last = db.iter().rposition(|&(_, floored)| !floored).unwrap_or(0);
    let dt = pdp.sample_spacing_ns;

    let mut starts = vec![first];
    let mut peak = db[first].0;
    let mut dip = peak;
    for i in first + 1..=last {
        let p = db[i].0;
        let rising = p > db[i - 1].0;
        let long_enough = (i - starts[starts.len() - 1]) as f64 * dt >= rule.min_duration_ns - 1e-9;
        if rising && peak - dip >= rule.min_drop_db && long_enough {
            starts.push(i);
            peak = p;
            dip = p;
        } else if p > peak {
            peak = p;
            dip = p;
        } else {
            dip = dip.min(p);
        }
    }
    let end = last + 1;
    if starts.len() > 1 && ((end - starts[starts.len() - 1]) as f64 * dt) < rule.min_duration_ns - 1e-9 {
        starts.pop();
    }

    let clusters = starts
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let e = starts.get(k + 1).copied().unwrap_or(end);
            let peak_power_db = db[s..e].iter().map(|d| d.0).fold(f64::NEG_INFINITY, f64::max);
            Cluster {
                start_bin: s,
                end_bin: e,
                start_ns: pdp.delay(s),
                end_ns: pdp.delay(e),
                peak_power_db,
                lead_delay_ns: pdp.delay(s),
            }
        })
        .collect();
    Ok(ClusterSet { clusters, rule: *rule })
}

/// Splits the taps of one scan into clusters and returns the index of each
/// cluster's first tap.
///
/// Tap lists are sparse, so the drop rule is applied to an envelope: a tap
/// opens a new cluster when its power exceeds the running peak minus
/// `min_drop_db / min_duration_ns` dB per ns elapsed since that peak, i.e.
/// it arrives above the decay a cluster would need to lose `min_drop_db`
/// within `min_duration_ns`. Openings closer than `min_duration_ns` to the
/// current cluster start are merged into it. Clusters whose taps decay
/// more slowly than that envelope are split.
pub fn segment_taps(cir: &Cir, rule: &ClusterRule) -> Vec<usize> {
    let mut starts = Vec::new();
    let Some(first) = cir.taps.first() else {
        return starts;
    };
    starts.push(0);
    let slope = rule.min_drop_db / rule.min_duration_ns;
    let mut start_delay = first.delay_ns;
    let mut peak = first.power_db();
    let mut peak_delay = first.delay_ns;
    for (k, tap) in cir.taps.iter().enumerate().skip(1) {
        let p = tap.power_db();
        if p > peak - slope * (tap.delay_ns - peak_delay) && tap.delay_ns - start_delay >= rule.min_duration_ns {
            starts.push(k);
            start_delay = tap.delay_ns;
            peak = p;
            peak_delay = tap.delay_ns;
        } else if p > peak {
            peak = p;
            peak_delay = tap.delay_ns;
        }
    }
    starts
}
