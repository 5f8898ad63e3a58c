//! Air-to-ground link layout.
//!
//! The UAV transmitter hovers at height `h` above flat ground, the receiver
//! sits `x` meters away horizontally at height `h_rx`. The ground-reflected
//! ray is constructed with the specular image method. All angles are radians
//! measured from the vertical (the dipole axis), except the grazing angle,
//! which is measured from the ground plane.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// TX/RX placement in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGeometry {
    /// Horizontal TX-RX distance.
    pub x: f64,
    /// UAV (TX) height above ground.
    pub h: f64,
    /// RX antenna height above ground.
    pub h_rx: f64,
}

/// Angles of the direct and ground-reflected rays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAngles {
    /// Direct ray angle from vertical at the TX, ignoring RX height.
    pub theta: f64,
    /// Direct ray angle from vertical towards the elevated RX.
    pub theta_prime: f64,
    /// Grazing angle of the reflected ray at the specular point.
    pub psi: f64,
    /// Reflected ray angle from vertical at the RX.
    pub omega: f64,
    /// Reflected ray angle from vertical at the TX.
    pub omega_prime: f64,
}

/// Path lengths of the two-ray layout in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkDistances {
    /// TX to ground-level RX.
    pub d0: f64,
    /// TX to elevated RX.
    pub d0_prime: f64,
    /// Ground-reflected path.
    pub d1: f64,
}

impl LinkGeometry {
    /// Builds a geometry, rejecting negative distances and a grounded UAV.
    pub fn new(x: f64, h: f64, h_rx: f64) -> Result<Self> {
        let geom = Self { x, h, h_rx };
        geom.validate()?;
        Ok(geom)
    }

    /// Geometry with the RX on the ground.
    pub fn ground(x: f64, h: f64) -> Result<Self> {
        Self::new(x, h, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.h.is_finite() && self.h_rx.is_finite()) {
            return Err(Error::Geometry("non-finite coordinate".into()));
        }
        if self.x < 0.0 {
            return Err(Error::Geometry(format!("x = {} must be >= 0", self.x)));
        }
        if self.h <= 0.0 {
            return Err(Error::Geometry(format!("h = {} must be > 0", self.h)));
        }
        if self.h_rx < 0.0 {
            return Err(Error::Geometry(format!("h_rx = {} must be >= 0", self.h_rx)));
        }
        Ok(())
    }

    /// Direct distance to a receiver at ground level.
    pub fn d0(&self) -> f64 {
        self.x.hypot(self.h)
    }
}

/// LOS angle from the vertical, `arctan(x / h)`.
pub fn elevation_angle(geom: &LinkGeometry) -> Result<f64> {
    geom.validate()?;
    Ok(geom.x.atan2(geom.h))
}

/// Angles and distances of the direct plus ground-reflected layout.
///
/// Requires the UAV to be strictly above the receiver. For `x = 0` the
/// reflected ray is vertical and `psi = pi/2`.
pub fn two_ray_geometry(geom: &LinkGeometry) -> Result<(LinkAngles, LinkDistances)> {
    geom.validate()?;
    if geom.h <= geom.h_rx {
        return Err(Error::Geometry(format!(
            "UAV height {} must exceed RX height {}",
            geom.h, geom.h_rx
        )));
    }
    let LinkGeometry { x, h, h_rx } = *geom;

    let theta = x.atan2(h);
    let theta_prime = x.atan2(h - h_rx);
    // atan2 returns exactly pi/2 at x = 0
    let psi = (h + h_rx).atan2(x);
    let omega = FRAC_PI_2 - psi;

    let angles = LinkAngles {
        theta,
        theta_prime,
        psi,
        omega,
        omega_prime: omega,
    };
    let distances = LinkDistances {
        d0: x.hypot(h),
        d0_prime: x.hypot(h - h_rx),
        d1: x.hypot(h + h_rx),
    };
    Ok((angles, distances))
}
