//! Channel impulse response container.

use num_complex::Complex64;

use crate::svmodel::ScenarioKey;
use crate::{Error, Result};

/// Sounder sample spacing, ns.
pub const DEFAULT_SAMPLE_SPACING_NS: f64 = 0.06;
/// Scan window, ns.
pub const DEFAULT_WINDOW_NS: f64 = 100.0;

/// One resolvable multipath component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    pub delay_ns: f64,
    pub amplitude: Complex64,
}

impl Tap {
    pub fn new(delay_ns: f64, amplitude: Complex64) -> Self {
        Self { delay_ns, amplitude }
    }

    pub fn real(delay_ns: f64, amplitude: f64) -> Self {
        Self::new(delay_ns, Complex64::new(amplitude, 0.0))
    }

    pub fn power(&self) -> f64 {
        self.amplitude.norm_sqr()
    }

    /// Tap power in dB computed from the amplitude, so taps whose squared
    /// magnitude underflows still get a finite value.
    pub fn power_db(&self) -> f64 {
        20.0 * self.amplitude.norm().log10()
    }
}

/// Provenance of a synthesized scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirMeta {
    pub seed: u64,
    pub scan_index: u64,
    pub key: Option<ScenarioKey>,
}

/// One channel scan: taps ordered by strictly increasing delay within
/// `[0, window_ns]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cir {
    pub taps: Vec<Tap>,
    pub sample_spacing_ns: f64,
    pub window_ns: f64,
    pub meta: Option<CirMeta>,
}

impl Cir {
    pub fn new(taps: Vec<Tap>, sample_spacing_ns: f64, window_ns: f64) -> Result<Self> {
        let cir = Self {
            taps,
            sample_spacing_ns,
            window_ns,
            meta: None,
        };
        cir.validate()?;
        Ok(cir)
    }

    /// Scan on the default sounder grid.
    pub fn from_taps(taps: Vec<Tap>) -> Result<Self> {
        Self::new(taps, DEFAULT_SAMPLE_SPACING_NS, DEFAULT_WINDOW_NS)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sample_spacing_ns > 0.0 && self.sample_spacing_ns.is_finite()) {
            return Err(Error::InvalidParameter("sample spacing must be positive".into()));
        }
        if !(self.window_ns > 0.0 && self.window_ns.is_finite()) {
            return Err(Error::InvalidParameter("window must be positive".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for tap in &self.taps {
            if !(tap.delay_ns >= 0.0 && tap.delay_ns <= self.window_ns) {
                return Err(Error::InvalidParameter(format!(
                    "tap delay {} ns outside [0, {}]",
                    tap.delay_ns, self.window_ns
                )));
            }
            if tap.delay_ns <= prev {
                return Err(Error::InvalidParameter(format!(
                    "tap delays not strictly increasing at {} ns",
                    tap.delay_ns
                )));
            }
            prev = tap.delay_ns;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn total_power(&self) -> f64 {
        self.taps.iter().map(Tap::power).sum()
    }

    /// Number of bins of the uniform sample grid covering the window.
    pub fn grid_len(&self) -> usize {
        (self.window_ns / self.sample_spacing_ns).round() as usize + 1
    }

    /// Nearest grid bin of `delay_ns`.
    pub fn bin_of(&self, delay_ns: f64) -> usize {
        (delay_ns / self.sample_spacing_ns).round() as usize
    }

    pub fn same_grid(&self, other: &Cir) -> bool {
        self.sample_spacing_ns == other.sample_spacing_ns && self.window_ns == other.window_ns
    }

    /// True when the scan was synthesized for a cross-polarized scenario.
    pub fn is_cross_polarized(&self) -> bool {
        matches!(
            self.meta.and_then(|m| m.key),
            Some(k) if k.orientation == crate::antenna::Orientation::VH
        )
    }
}
