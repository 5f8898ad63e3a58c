use num_complex::Complex64;

use crate::cir::Cir;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Absolute,
    PeakNormalized,
}

/// Power delay profile on a uniform grid starting at delay 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Pdp {
    /// Linear power per bin.
    pub power: Vec<f64>,
    pub sample_spacing_ns: f64,
    pub n_scans: usize,
    pub normalization: Normalization,
}

impl Pdp {
    pub fn new(power: Vec<f64>, sample_spacing_ns: f64) -> Result<Self> {
        if !(sample_spacing_ns > 0.0 && sample_spacing_ns.is_finite()) {
            return Err(Error::InvalidParameter("sample spacing must be positive".into()));
        }
        if power.iter().any(|p| !(*p >= 0.0 && p.is_finite())) {
            return Err(Error::InvalidParameter("PDP powers must be finite and non-negative".into()));
        }
        Ok(Self {
            power,
            sample_spacing_ns,
            n_scans: 1,
            normalization: Normalization::Absolute,
        })
    }

    /// Builds a profile from dB samples.
    pub fn from_db(power_db: &[f64], sample_spacing_ns: f64) -> Result<Self> {
        Self::new(power_db.iter().map(|&db| crate::from_db10(db)).collect(), sample_spacing_ns)
    }

    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }

    pub fn delay(&self, bin: usize) -> f64 {
        bin as f64 * self.sample_spacing_ns
    }

    pub fn peak(&self) -> f64 {
        self.power.iter().copied().fold(0.0, f64::max)
    }

    pub fn normalized(&self) -> Self {
        let peak = self.peak();
        let mut out = self.clone();
        if peak > 0.0 {
            out.power.iter_mut().for_each(|p| *p /= peak);
        }
        out.normalization = Normalization::PeakNormalized;
        out
    }

    /// Power in dB relative to the peak, with zero bins raised to
    /// `-dynamic_range_db`. The flag marks floored bins.
    pub fn db_floored(&self, dynamic_range_db: f64) -> Vec<(f64, bool)> {
        let peak = self.peak();
        self.power
            .iter()
            .map(|&p| {
                if p > 0.0 {
                    let db = crate::db10(p / peak);
                    if db < -dynamic_range_db {
                        (-dynamic_range_db, true)
                    } else {
                        (db, false)
                    }
                } else {
                    (-dynamic_range_db, true)
                }
            })
            .collect()
    }
}

/// Ensemble average of `|H(n)|^2`. Taps are placed on the nearest grid bin;
/// taps sharing a bin within one scan add coherently.
pub fn compute_pdp(scans: &[Cir]) -> Result<Pdp> {
    let first = scans
        .first()
        .ok_or_else(|| Error::Degenerate("PDP needs at least one scan".into()))?;
    let len = first.grid_len();
    let mut power = vec![0.0; len];
    let mut sample = vec![Complex64::new(0.0, 0.0); len];
    for (i, scan) in scans.iter().enumerate() {
        if !scan.same_grid(first) {
            return Err(Error::GridMismatch(format!("scan {i} differs from scan 0")));
        }
        sample.iter_mut().for_each(|s| *s = Complex64::new(0.0, 0.0));
        for tap in &scan.taps {
            sample[scan.bin_of(tap.delay_ns).min(len - 1)] += tap.amplitude;
        }
        for (p, s) in power.iter_mut().zip(&sample) {
            *p += s.norm_sqr();
        }
    }
    let n = scans.len() as f64;
    power.iter_mut().for_each(|p| *p /= n);
    Ok(Pdp {
        power,
        sample_spacing_ns: first.sample_spacing_ns,
        n_scans: scans.len(),
        normalization: Normalization::Absolute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cir::Tap;

    #[test]
    fn identical_scans_average_to_one_scan() {
        let cir = Cir::from_taps(vec![Tap::real(0.0, 1.0), Tap::real(3.0, 0.5)]).unwrap();
        let pdp = compute_pdp(&vec![cir.clone(); 50]).unwrap();
        assert_eq!(pdp.n_scans, 50);
        assert_eq!(pdp.len(), 1668);
        assert!((pdp.power[0] - 1.0).abs() < 1e-12);
        assert!((pdp.power[50] - 0.25).abs() < 1e-12);
        assert_eq!(pdp.power.iter().filter(|&&p| p > 0.0).count(), 2);
    }

    #[test]
    fn unit_tap_is_delta() {
        let pdp = compute_pdp(&[Cir::from_taps(vec![Tap::real(0.0, 1.0)]).unwrap()]).unwrap();
        assert_eq!(pdp.power[0], 1.0);
        assert_eq!(pdp.power[1..].iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn arithmetic_mean_over_scans() {
        let a = Cir::from_taps(vec![Tap::real(0.0, 1.0)]).unwrap();
        let b = Cir::from_taps(vec![Tap::real(0.0, 0.0)]).unwrap();
        assert_eq!(compute_pdp(&[a, b]).unwrap().power[0], 0.5);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let a = Cir::from_taps(vec![]).unwrap();
        let b = Cir::new(vec![], 0.1, 100.0).unwrap();
        assert!(matches!(compute_pdp(&[a, b]), Err(Error::GridMismatch(_))));
        assert!(compute_pdp(&[]).is_err());
    }

    #[test]
    fn floor_marks_empty_bins() {
        let pdp = Pdp::new(vec![2.0, 0.0, 2e-6, 0.2], 0.06).unwrap();
        let db = pdp.db_floored(48.0);
        assert_eq!(db[0], (0.0, false));
        assert_eq!(db[1], (-48.0, true));
        assert!(db[2].1);
        assert!((db[3].0 + 10.0).abs() < 1e-12);
    }
}
