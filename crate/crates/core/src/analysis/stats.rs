use super::pdp::Pdp;
use crate::cir::Cir;
use crate::{Error, Result};

/// Default significance threshold as a fraction of the strongest amplitude.
pub const DEFAULT_THRESHOLD_FRACTION: f64 = 0.2;

/// Anything that can be read as `(delay_ns, linear power)` pairs.
pub trait PowerProfile {
    fn delay_powers(&self) -> Vec<(f64, f64)>;
}

impl PowerProfile for Cir {
    fn delay_powers(&self) -> Vec<(f64, f64)> {
        self.taps.iter().map(|t| (t.delay_ns, t.power())).collect()
    }
}

impl PowerProfile for Pdp {
    fn delay_powers(&self) -> Vec<(f64, f64)> {
        self.power
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| (self.delay(i), p))
            .collect()
    }
}

impl PowerProfile for [(f64, f64)] {
    fn delay_powers(&self) -> Vec<(f64, f64)> {
        self.to_vec()
    }
}

fn total_power(points: &[(f64, f64)]) -> Result<f64> {
    let total: f64 = points.iter().map(|p| p.1).sum();
    if total > 0.0 && total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Degenerate("profile has no power".into()))
    }
}

/// Power-weighted standard deviation of delay, ns.
pub fn rms_delay_spread<P: PowerProfile + ?Sized>(profile: &P) -> Result<f64> {
    let points = profile.delay_powers();
    let total = total_power(&points)?;
    let mean = points.iter().map(|&(t, p)| t * p).sum::<f64>() / total;
    let var = points.iter().map(|&(t, p)| p * (t - mean).powi(2)).sum::<f64>() / total;
    Ok(var.sqrt())
}

/// Index of the line-of-sight tap: the earliest tap within 3 dB of the
/// strongest one.
pub fn los_tap_index(powers: &[f64]) -> Option<usize> {
    let max = powers.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return None;
    }
    let threshold = max * 10f64.powf(-0.3);
    powers.iter().position(|&p| p >= threshold)
}

/// `10 log10(A^2 / sum of all other tap powers)`; `+inf` when the LOS tap is
/// the only one carrying power.
pub fn ricean_k_factor<P: PowerProfile + ?Sized>(profile: &P) -> Result<f64> {
    let powers: Vec<f64> = profile.delay_powers().into_iter().map(|p| p.1).collect();
    let los = los_tap_index(&powers).ok_or_else(|| Error::Degenerate("profile has no power".into()))?;
    let rest: f64 = powers.iter().enumerate().filter(|&(i, _)| i != los).map(|(_, p)| p).sum();
    if rest > 0.0 {
        Ok(crate::db10(powers[los] / rest))
    } else {
        Ok(f64::INFINITY)
    }
}

/// K-factor of a scan; refused for cross-polarized scans.
pub fn ricean_k_factor_cir(cir: &Cir) -> Result<f64> {
    if cir.is_cross_polarized() {
        return Err(Error::InvalidParameter(
            "K-factor is not evaluated for the VH orientation".into(),
        ));
    }
    ricean_k_factor(cir)
}

/// Number of amplitudes at or above `threshold_fraction` of the largest.
pub fn count_significant_mpcs(amplitudes: &[f64], threshold_fraction: f64) -> usize {
    let max = amplitudes.iter().map(|a| a.abs()).fold(0.0, f64::max);
    amplitudes.iter().filter(|a| a.abs() >= threshold_fraction * max).count()
}

/// Per-scan summary statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelStats {
    pub rms_ds_ns: f64,
    /// Absent for cross-polarized scans.
    pub k_factor_db: Option<f64>,
    pub n_significant_mpcs: usize,
    pub threshold_fraction: f64,
}

pub fn channel_stats(cir: &Cir, threshold_fraction: f64) -> Result<ChannelStats> {
    let amplitudes: Vec<f64> = cir.taps.iter().map(|t| t.amplitude.norm()).collect();
    Ok(ChannelStats {
        rms_ds_ns: rms_delay_spread(cir)?,
        k_factor_db: if cir.is_cross_polarized() {
            None
        } else {
            Some(ricean_k_factor(cir)?)
        },
        n_significant_mpcs: count_significant_mpcs(&amplitudes, threshold_fraction),
        threshold_fraction,
    })
}
