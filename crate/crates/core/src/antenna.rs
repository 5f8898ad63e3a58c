//! Elevation-plane gain of the planar elliptical dipole and polarization
//! mismatch bookkeeping.
//!
//! The pattern is omnidirectional in azimuth and follows `|sin(theta)|^p`
//! in elevation, with `theta` measured from the dipole axis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Elevation gain model `max_gain * |sin(theta)|^gain_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaModel {
    pub gain_exponent: f64,
    pub max_gain: f64,
}

impl Default for AntennaModel {
    fn default() -> Self {
        Self {
            gain_exponent: 1.0,
            max_gain: 1.0,
        }
    }
}

impl AntennaModel {
    pub fn new(gain_exponent: f64, max_gain: f64) -> Result<Self> {
        if !(gain_exponent > 0.0 && gain_exponent.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "gain exponent {gain_exponent} must be positive"
            )));
        }
        if !(max_gain > 0.0 && max_gain.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "max gain {max_gain} must be positive"
            )));
        }
        Ok(Self {
            gain_exponent,
            max_gain,
        })
    }

    /// Gain towards a ray at `theta` radians from the dipole axis.
    pub fn los_gain(&self, theta: f64) -> f64 {
        self.max_gain * theta.sin().abs().powf(self.gain_exponent)
    }

    /// Combined TX/RX factor of the ground-reflected ray,
    /// `sqrt(gain(omega) * gain(omega_prime))`.
    pub fn grc_gain(&self, omega: f64, omega_prime: f64) -> f64 {
        (self.los_gain(omega) * self.los_gain(omega_prime)).sqrt()
    }
}

/// `|sin(theta)|` gain of the default model.
pub fn los_gain(model: &AntennaModel, theta: f64) -> f64 {
    model.los_gain(theta)
}

/// `sqrt(sin(omega) * sin(omega_prime))` for the default sine pattern.
pub fn grc_gain(omega: f64, omega_prime: f64) -> f64 {
    AntennaModel::default().grc_gain(omega, omega_prime)
}

/// TX/RX antenna orientation pair. The RX is always vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    /// Both antennas vertical (co-polarized).
    VV,
    /// TX horizontal, RX vertical (cross-polarized).
    VH,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::VV => "VV",
            Orientation::VH => "VH",
        })
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "VV" => Ok(Orientation::VV),
            "VH" => Ok(Orientation::VH),
            other => Err(Error::UnknownKey(format!("orientation '{other}'"))),
        }
    }
}

/// Orientation plus the measured VH/VV mismatch ratio in dB.
///
/// For VV the mismatch factor is 1 (0 dB) and `c_pol_db` is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationState {
    pub orientation: Orientation,
    pub c_pol_db: Option<f64>,
}

impl PolarizationState {
    pub const fn co_polarized() -> Self {
        Self {
            orientation: Orientation::VV,
            c_pol_db: None,
        }
    }

    pub const fn cross_polarized(c_pol_db: f64) -> Self {
        Self {
            orientation: Orientation::VH,
            c_pol_db: Some(c_pol_db),
        }
    }
}

/// Path loss penalty of the polarization state in dB.
pub fn mismatch_penalty_db(state: &PolarizationState) -> Result<f64> {
    match state.orientation {
        Orientation::VV => Ok(0.0),
        Orientation::VH => match state.c_pol_db {
            Some(c) if c.is_finite() && c >= 0.0 => Ok(c),
            Some(c) => Err(Error::InvalidParameter(format!(
                "c_pol = {c} dB must be finite and >= 0"
            ))),
            None => Err(Error::MissingPolarizationEntry("VH state".into())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sine_pattern_values() {
        let m = AntennaModel::default();
        assert_eq!(m.los_gain(FRAC_PI_2), 1.0);
        assert_eq!(m.los_gain(0.0), 0.0);
        // sin(arctan 1.5) = 1.5 / sqrt(3.25)
        assert_relative_eq!(m.los_gain(1.5f64.atan()), 1.5 / 3.25f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(m.los_gain(0.98279), 0.83205, epsilon = 1e-5);
    }

    #[test]
    fn grc_gain_values() {
        assert_eq!(grc_gain(FRAC_PI_2, FRAC_PI_2), 1.0);
        assert_eq!(grc_gain(0.0, 0.0), 0.0);
        let psi = 0.65404f64;
        let omega = FRAC_PI_2 - psi;
        assert_relative_eq!(grc_gain(omega, omega), psi.cos(), epsilon = 1e-15);
        assert_relative_eq!(grc_gain(omega, omega), 0.79363, epsilon = 1e-5);
    }

    #[test]
    fn higher_exponent_narrows_beam() {
        let m = AntennaModel::new(3.0, 1.0).unwrap();
        assert_relative_eq!(m.los_gain(PI / 6.0), 0.125, epsilon = 1e-12);
        assert!(AntennaModel::new(0.0, 1.0).is_err());
        assert!(AntennaModel::new(1.0, -1.0).is_err());
    }

    #[test]
    fn penalties() {
        assert_eq!(mismatch_penalty_db(&PolarizationState::co_polarized()).unwrap(), 0.0);
        assert_eq!(
            mismatch_penalty_db(&PolarizationState::cross_polarized(12.9)).unwrap(),
            12.9
        );
        assert_eq!(
            mismatch_penalty_db(&PolarizationState::cross_polarized(0.4)).unwrap(),
            0.4
        );
        let missing = PolarizationState {
            orientation: Orientation::VH,
            c_pol_db: None,
        };
        assert!(matches!(
            mismatch_penalty_db(&missing),
            Err(Error::MissingPolarizationEntry(_))
        ));
    }

    #[test]
    fn orientation_parse() {
        assert_eq!("vh".parse::<Orientation>().unwrap(), Orientation::VH);
        assert!("HV".parse::<Orientation>().is_err());
    }

    proptest! {
        #[test]
        fn symmetric_about_broadside(theta in 0.0f64..=PI, p in 0.5f64..6.0) {
            let m = AntennaModel::new(p, 1.0).unwrap();
            prop_assert!((m.los_gain(theta) - m.los_gain(PI - theta)).abs() < 1e-12);
            prop_assert!(m.los_gain(theta) >= 0.0 && m.los_gain(theta) <= 1.0);
        }

        #[test]
        fn monotone_below_broadside(a in 0.0f64..FRAC_PI_2, b in 0.0f64..FRAC_PI_2) {
            let m = AntennaModel::default();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(m.los_gain(lo) <= m.los_gain(hi));
        }

        #[test]
        fn grc_gain_commutes(a in 0.0f64..=PI, b in 0.0f64..=PI) {
            prop_assert_eq!(grc_gain(a, b), grc_gain(b, a));
        }
    }
}
