//! Ultra-wideband air-to-ground channel toolkit.
//!
//! The crate covers three concerns:
//!
//! * analytical received power and path loss for a UAV transmitter and a
//!   ground receiver ([`geometry`], [`antenna`], [`pathloss`]),
//! * clustered Saleh-Valenzuela impulse response synthesis with a built-in
//!   parameter catalog ([`svmodel`]),
//! * analysis of impulse response ensembles: power delay profiles, cluster
//!   detection, decay fits, RMS delay spread, Ricean K-factor, significant
//!   MPC counts, CLEAN deconvolution and parameter estimation ([`analysis`]).
//!
//! Plain-text file formats for impulse responses, profiles, catalogs and
//! sweep tables live in [`io`].

pub mod analysis;
pub mod antenna;
pub mod cir;
pub mod error;
pub mod geometry;
pub mod io;
pub mod pathloss;
pub mod rng;
pub mod svmodel;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Converts a linear power ratio to decibels.
#[inline]
pub fn db10(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Converts decibels to a linear power ratio.
#[inline]
pub fn from_db10(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
