//! Analytical path loss for hovering and moving UAV links.
//!
//! Every model has the close-in free-space form
//!
//! ```text
//! L [dB] = 10 log10 L(d_ref) + 10 log10 (1 / sum_k g_k)
//! ```
//!
//! where each `g_k` is a path contribution `G_T * G_R * |Gamma|^2 / d_k^2`
//! (units of 1/m^2). With the reference measured at 1 m this is the ratio of
//! the reference received power to the received power at the link position.
//!
//! The sine pattern factors are combined exactly as in the published model:
//! each antenna contributes `sin` of its ray angle as a power gain, so the
//! hovering LOS term carries `sin^2(theta)` and the moving terms, where the RX
//! gain is replaced by the circular-flight mean `G_R^(c)`, carry a single
//! `sin`. `RfConfig::harmonize_gains` instead treats the sine as a field
//! pattern and squares every per-antenna factor.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::antenna::{mismatch_penalty_db, AntennaModel, PolarizationState};
use crate::db10;
use crate::geometry::{two_ray_geometry, LinkGeometry};
use crate::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Radio and ground constants shared by the path loss models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RfConfig {
    /// Hz.
    pub center_frequency: f64,
    /// Meters.
    pub reference_distance: f64,
    /// Relative permittivity of the ground.
    pub epsilon_r: f64,
    /// Mean linear RX gain seen from a UAV circling the receiver.
    pub g_r_circular: f64,
    /// Sounder dynamic range, dB.
    pub dynamic_range_db: f64,
    /// Square every per-antenna sine factor.
    pub harmonize_gains: bool,
}

impl Default for RfConfig {
    fn default() -> Self {
        Self {
            center_frequency: 3.95e9,
            reference_distance: 1.0,
            epsilon_r: 35.0,
            g_r_circular: 0.5,
            dynamic_range_db: 48.0,
            harmonize_gains: false,
        }
    }
}

impl RfConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if !(self.center_frequency > 0.0 && self.center_frequency.is_finite()) {
            return bad("center frequency must be positive");
        }
        if !(self.reference_distance > 0.0 && self.reference_distance.is_finite()) {
            return bad("reference distance must be positive");
        }
        if !(self.epsilon_r > 1.0 && self.epsilon_r.is_finite()) {
            return bad("relative permittivity must exceed 1");
        }
        if !(self.g_r_circular > 0.0 && self.g_r_circular <= 1.0) {
            return bad("circular RX gain must lie in (0, 1]");
        }
        if !(self.dynamic_range_db >= 0.0 && self.dynamic_range_db.is_finite()) {
            return bad("dynamic range must be a non-negative dB value");
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.center_frequency
    }

    /// Per-antenna power gain for a ray at `angle` from the dipole axis.
    fn antenna_power(&self, model: &AntennaModel, angle: f64) -> f64 {
        let g = model.los_gain(angle);
        if self.harmonize_gains {
            g * g
        } else {
            g
        }
    }
}

/// Linear path contributions in 1/m^2.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerComponents {
    pub los: f64,
    pub grc: f64,
}

impl PowerComponents {
    pub fn total(&self) -> f64 {
        self.los + self.grc
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossResult {
    /// `fspl_ref_db + geometry_term_db + penalty_db`; `+inf` when the
    /// antennas null every path.
    pub total_db: f64,
    pub fspl_ref_db: f64,
    pub geometry_term_db: f64,
    pub penalty_db: f64,
    pub components: PowerComponents,
    /// Ground reflection coefficient magnitude used, for two-ray models.
    pub gamma_v: Option<f64>,
    /// Set when the value is the dynamic-range clamp rather than a
    /// propagation prediction.
    pub clamped: bool,
}

impl PathLossResult {
    fn from_components(fspl_ref_db: f64, components: PowerComponents, gamma_v: Option<f64>) -> Self {
        let geometry_term_db = excess_db(components.total());
        Self {
            total_db: fspl_ref_db + geometry_term_db,
            fspl_ref_db,
            geometry_term_db,
            penalty_db: 0.0,
            components,
            gamma_v,
            clamped: false,
        }
    }

    /// The antenna pattern nulls every modeled path.
    pub fn is_infinite(&self) -> bool {
        self.total_db == f64::INFINITY
    }
}

fn excess_db(gain_sum: f64) -> f64 {
    if gain_sum > 0.0 {
        -db10(gain_sum)
    } else {
        f64::INFINITY
    }
}

/// Free-space loss at the reference distance, `20 log10(4 pi d_ref / lambda)`.
pub fn fspl_ref(cfg: &RfConfig) -> f64 {
    20.0 * (4.0 * PI * cfg.reference_distance / cfg.wavelength()).log10()
}

/// Magnitude of the vertical-polarization Fresnel reflection coefficient of
/// a lossless dielectric half-space at grazing angle `psi`.
pub fn fresnel_gamma_v(psi: f64, epsilon_r: f64) -> f64 {
    if psi <= 0.0 {
        return 1.0;
    }
    let (s, c) = psi.sin_cos();
    let root = (epsilon_r - c * c).sqrt();
    ((epsilon_r * s - root) / (epsilon_r * s + root)).abs()
}

/// Excess loss `10 log10((d_los d_grc)^2 / (d_grc^2 g_los + d_los^2 g_grc |Gamma|^2))`
/// of a direct plus reflected ray pair, with its two contributions.
pub fn two_ray_excess_db(
    d_los: f64,
    d_grc: f64,
    los_gain: f64,
    grc_gain: f64,
    gamma: f64,
) -> (f64, PowerComponents) {
    let components = PowerComponents {
        los: los_gain / (d_los * d_los),
        grc: grc_gain * gamma * gamma / (d_grc * d_grc),
    };
    (excess_db(components.total()), components)
}

/// Hovering UAV, RX on the ground, co-polarized: LOS path only.
pub fn pl_hover_rx1_vv(geom: &LinkGeometry, model: &AntennaModel, cfg: &RfConfig) -> Result<PathLossResult> {
    geom.validate()?;
    cfg.validate()?;
    let theta = geom.x.atan2(geom.h);
    let d0 = geom.d0();
    let g = cfg.antenna_power(model, theta);
    let components = PowerComponents {
        los: g * g / (d0 * d0),
        grc: 0.0,
    };
    Ok(PathLossResult::from_components(fspl_ref(cfg), components, None))
}

/// Hovering UAV, elevated RX, co-polarized, Fresnel ground reflection.
pub fn pl_hover_rx2_vv(geom: &LinkGeometry, model: &AntennaModel, cfg: &RfConfig) -> Result<PathLossResult> {
    pl_hover_rx2_vv_with_gamma(geom, model, cfg, None)
}

/// As [`pl_hover_rx2_vv`], optionally overriding `|Gamma|` (e.g. with a
/// tabulated value).
pub fn pl_hover_rx2_vv_with_gamma(
    geom: &LinkGeometry,
    model: &AntennaModel,
    cfg: &RfConfig,
    gamma: Option<f64>,
) -> Result<PathLossResult> {
    cfg.validate()?;
    let (a, d) = two_ray_geometry(geom)?;
    let gamma = resolve_gamma(gamma, a.psi, cfg)?;
    let g_los = cfg.antenna_power(model, a.theta_prime);
    let g_grc = cfg.antenna_power(model, a.omega) * cfg.antenna_power(model, a.omega_prime);
    let (_, components) = two_ray_excess_db(d.d0_prime, d.d1, g_los * g_los, g_grc, gamma);
    Ok(PathLossResult::from_components(fspl_ref(cfg), components, Some(gamma)))
}

/// Circling UAV, RX on the ground, co-polarized.
pub fn pl_move_rx1_vv(geom: &LinkGeometry, model: &AntennaModel, cfg: &RfConfig) -> Result<PathLossResult> {
    geom.validate()?;
    cfg.validate()?;
    let theta = geom.x.atan2(geom.h);
    let d0 = geom.d0();
    let g = cfg.antenna_power(model, theta) * cfg.g_r_circular;
    let components = PowerComponents {
        los: g / (d0 * d0),
        grc: 0.0,
    };
    Ok(PathLossResult::from_components(fspl_ref(cfg), components, None))
}

/// Circling UAV, elevated RX, co-polarized.
///
/// Only the TX-side reflected-ray factor `sin(omega')` enters; the RX side
/// is folded into the circular mean gain.
pub fn pl_move_rx2_vv(geom: &LinkGeometry, model: &AntennaModel, cfg: &RfConfig) -> Result<PathLossResult> {
    pl_move_rx2_vv_with_gamma(geom, model, cfg, None)
}

pub fn pl_move_rx2_vv_with_gamma(
    geom: &LinkGeometry,
    model: &AntennaModel,
    cfg: &RfConfig,
    gamma: Option<f64>,
) -> Result<PathLossResult> {
    cfg.validate()?;
    let (a, d) = two_ray_geometry(geom)?;
    let gamma = resolve_gamma(gamma, a.psi, cfg)?;
    let g_los = cfg.antenna_power(model, a.theta_prime) * cfg.g_r_circular;
    let g_grc = cfg.antenna_power(model, a.omega_prime) * cfg.g_r_circular;
    let (_, components) = two_ray_excess_db(d.d0_prime, d.d1, g_los, g_grc, gamma);
    Ok(PathLossResult::from_components(fspl_ref(cfg), components, Some(gamma)))
}

fn resolve_gamma(gamma: Option<f64>, psi: f64, cfg: &RfConfig) -> Result<f64> {
    match gamma {
        Some(g) if (0.0..=1.0).contains(&g) => Ok(g),
        Some(g) => Err(Error::InvalidParameter(format!(
            "|Gamma| = {g} must lie in [0, 1]"
        ))),
        None => Ok(fresnel_gamma_v(psi, cfg.epsilon_r)),
    }
}

/// Adds the polarization mismatch penalty to a co-polarized result.
pub fn pl_vh(base: &PathLossResult, state: &PolarizationState) -> Result<PathLossResult> {
    let penalty = mismatch_penalty_db(state)?;
    Ok(PathLossResult {
        total_db: base.total_db + penalty,
        penalty_db: base.penalty_db + penalty,
        ..*base
    })
}

/// Foliage-obstructed link: the measured loss sits at the sounder's
/// dynamic-range limit, so the estimate is a constant clamp.
pub fn pl_foliage(cfg: &RfConfig) -> Result<PathLossResult> {
    cfg.validate()?;
    let fspl_ref_db = fspl_ref(cfg);
    Ok(PathLossResult {
        total_db: fspl_ref_db + cfg.dynamic_range_db,
        fspl_ref_db,
        geometry_term_db: cfg.dynamic_range_db,
        penalty_db: 0.0,
        components: PowerComponents::default(),
        gamma_v: None,
        clamped: true,
    })
}

/// The analytical models selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathLossModel {
    HoverRx1,
    HoverRx2,
    MoveRx1,
    MoveRx2,
    Foliage,
}

impl PathLossModel {
    pub fn name(&self) -> &'static str {
        match self {
            PathLossModel::HoverRx1 => "hover_rx1",
            PathLossModel::HoverRx2 => "hover_rx2",
            PathLossModel::MoveRx1 => "move_rx1",
            PathLossModel::MoveRx2 => "move_rx2",
            PathLossModel::Foliage => "foliage",
        }
    }

    /// Co-polarized path loss at `geom`.
    pub fn evaluate(&self, geom: &LinkGeometry, model: &AntennaModel, cfg: &RfConfig) -> Result<PathLossResult> {
        match self {
            PathLossModel::HoverRx1 => pl_hover_rx1_vv(geom, model, cfg),
            PathLossModel::HoverRx2 => pl_hover_rx2_vv(geom, model, cfg),
            PathLossModel::MoveRx1 => pl_move_rx1_vv(geom, model, cfg),
            PathLossModel::MoveRx2 => pl_move_rx2_vv(geom, model, cfg),
            PathLossModel::Foliage => {
                geom.validate()?;
                pl_foliage(cfg)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    // Independent evaluation of the printed formulas from raw trigonometry.
    fn oracle_fspl(f: f64, d_ref: f64) -> f64 {
        let lambda = 299_792_458.0 / f;
        10.0 * ((4.0 * PI * d_ref / lambda).powi(2)).log10()
    }

    fn oracle_hover_rx1(x: f64, h: f64) -> f64 {
        oracle_fspl(3.95e9, 1.0) + 10.0 * ((x * x + h * h) / (x / h).atan().sin().powi(2)).log10()
    }

    fn oracle_gamma(psi: f64) -> f64 {
        let er = 35.0;
        let num = er * psi.sin() - (er - psi.cos().powi(2)).sqrt();
        let den = er * psi.sin() + (er - psi.cos().powi(2)).sqrt();
        (num / den).abs()
    }

    fn oracle_hover_rx2(x: f64, h: f64, hr: f64, gamma: Option<f64>) -> f64 {
        let tp = (x / (h - hr)).atan();
        let psi = ((h + hr) / x).atan();
        let om = FRAC_PI_2 - psi;
        let d0 = ((h - hr).powi(2) + x * x).sqrt();
        let d1 = ((h + hr).powi(2) + x * x).sqrt();
        let g = gamma.unwrap_or_else(|| oracle_gamma(psi));
        oracle_fspl(3.95e9, 1.0)
            + 10.0 * ((d0 * d1).powi(2) / ((d1 * tp.sin()).powi(2) + d0 * d0 * om.sin() * om.sin() * g * g)).log10()
    }

    fn oracle_move_rx2(x: f64, h: f64, hr: f64, gr: f64) -> f64 {
        let tp = (x / (h - hr)).atan();
        let psi = ((h + hr) / x).atan();
        let om = FRAC_PI_2 - psi;
        let d0 = ((h - hr).powi(2) + x * x).sqrt();
        let d1 = ((h + hr).powi(2) + x * x).sqrt();
        let g = oracle_gamma(psi);
        oracle_fspl(3.95e9, 1.0)
            + 10.0 * ((d0 * d1).powi(2) / (d1 * d1 * tp.sin() * gr + d0 * d0 * om.sin() * gr * g * g)).log10()
    }

    fn geom(x: f64, h: f64, h_rx: f64) -> LinkGeometry {
        LinkGeometry::new(x, h, h_rx).unwrap()
    }

    #[test]
    fn reference_free_space_term() {
        let cfg = RfConfig::default();
        assert_relative_eq!(fspl_ref(&cfg), 44.38, epsilon = 0.01);
        assert_relative_eq!(fspl_ref(&cfg), oracle_fspl(3.95e9, 1.0), epsilon = 1e-12);
        let two_m = RfConfig { reference_distance: 2.0, ..cfg };
        assert_relative_eq!(fspl_ref(&two_m), fspl_ref(&cfg) + 20.0 * 2f64.log10(), epsilon = 1e-12);
        // lambda = 4 pi at d_ref = 1 gives a unit argument
        let unit = RfConfig {
            center_frequency: SPEED_OF_LIGHT / (4.0 * PI),
            ..cfg
        };
        assert_relative_eq!(fspl_ref(&unit), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn hover_rx1_values() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        for (x, h, frozen) in [(15.0, 10.0, 71.10), (30.0, 10.0, 74.84), (15.0, 30.0, 81.88)] {
            let r = pl_hover_rx1_vv(&geom(x, h, 0.0), &m, &cfg).unwrap();
            assert_relative_eq!(r.total_db, frozen, epsilon = 0.05);
            assert_relative_eq!(r.total_db, oracle_hover_rx1(x, h), epsilon = 1e-9);
            assert_relative_eq!(r.total_db, r.fspl_ref_db + r.geometry_term_db + r.penalty_db, epsilon = 1e-12);
        }
    }

    #[test]
    fn hover_rx1_overhead_is_infinite() {
        let r = pl_hover_rx1_vv(&geom(0.0, 10.0, 0.0), &AntennaModel::default(), &RfConfig::default()).unwrap();
        assert!(r.is_infinite());
        let r = pl_move_rx1_vv(&geom(0.0, 10.0, 0.0), &AntennaModel::default(), &RfConfig::default()).unwrap();
        assert!(r.is_infinite());
    }

    #[test]
    fn fresnel_values() {
        let (a, _) = two_ray_geometry(&geom(15.0, 10.0, 1.5)).unwrap();
        assert_relative_eq!(fresnel_gamma_v(a.psi, 35.0), 0.59, epsilon = 0.04);
        let brewster = (1.0f64 / 6.0).asin();
        assert!(fresnel_gamma_v(brewster, 35.0) < 1e-9);
        let normal = (35.0 - 35f64.sqrt()) / (35.0 + 35f64.sqrt());
        assert_relative_eq!(fresnel_gamma_v(FRAC_PI_2, 35.0), normal, epsilon = 1e-12);
        assert_relative_eq!(normal, 0.7108, epsilon = 1e-4);
        assert!(fresnel_gamma_v(1e-6, 35.0) > 0.999);
    }

    #[test]
    fn hover_rx2_matches_formula() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let r = pl_hover_rx2_vv(&geom(15.0, 10.0, 1.5), &m, &cfg).unwrap();
        assert_relative_eq!(r.total_db, oracle_hover_rx2(15.0, 10.0, 1.5, None), epsilon = 1e-9);
        assert_relative_eq!(r.total_db, 69.444, epsilon = 1e-3);
        let tabulated = pl_hover_rx2_vv_with_gamma(&geom(15.0, 10.0, 1.5), &m, &cfg, Some(0.59)).unwrap();
        assert_relative_eq!(tabulated.total_db, oracle_hover_rx2(15.0, 10.0, 1.5, Some(0.59)), epsilon = 1e-9);
        assert_relative_eq!(tabulated.total_db, 69.383, epsilon = 1e-3);
        assert_eq!(tabulated.gamma_v, Some(0.59));
    }

    #[test]
    fn hover_rx2_without_reflection_is_los_only() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let g = geom(15.0, 10.0, 1.5);
        let r = pl_hover_rx2_vv_with_gamma(&g, &m, &cfg, Some(0.0)).unwrap();
        let tp = 15f64.atan2(8.5);
        let d0p = 15f64.hypot(8.5);
        let los_only = fspl_ref(&cfg) + db10(d0p * d0p / tp.sin().powi(2));
        assert_relative_eq!(r.total_db, los_only, epsilon = 1e-9);
        assert_eq!(r.components.grc, 0.0);
    }

    #[test]
    fn equal_power_two_ray_doubles() {
        let d = 20.0;
        let (excess, c) = two_ray_excess_db(d, d, 1.0, 1.0, 1.0);
        assert_relative_eq!(excess, db10(d * d / 2.0), epsilon = 1e-12);
        assert_relative_eq!(c.los, c.grc);
    }

    #[test]
    fn move_rx1_values() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let r = pl_move_rx1_vv(&geom(15.0, 10.0, 0.0), &m, &cfg).unwrap();
        assert_relative_eq!(r.total_db, 73.31, epsilon = 0.05);
        let r = pl_move_rx1_vv(&geom(30.0, 30.0, 0.0), &m, &cfg).unwrap();
        let expected = oracle_fspl(3.95e9, 1.0) + 10.0 * (1800.0 / (FRAC_PI_2 / 2.0).sin() / 0.5).log10();
        assert_relative_eq!(r.total_db, expected, epsilon = 1e-9);
        assert_relative_eq!(r.total_db, 81.448, epsilon = 1e-3);
    }

    #[test]
    fn move_rx1_coincides_with_hover_when_gain_is_sine() {
        let m = AntennaModel::default();
        let g = geom(15.0, 10.0, 0.0);
        let theta = 1.5f64.atan();
        let cfg = RfConfig {
            g_r_circular: theta.sin(),
            ..RfConfig::default()
        };
        let hover = pl_hover_rx1_vv(&g, &m, &cfg).unwrap();
        let moving = pl_move_rx1_vv(&g, &m, &cfg).unwrap();
        assert_relative_eq!(hover.total_db, moving.total_db, epsilon = 1e-12);
    }

    #[test]
    fn move_rx2_values() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let g = geom(15.0, 10.0, 1.5);
        let r = pl_move_rx2_vv(&g, &m, &cfg).unwrap();
        assert_relative_eq!(r.total_db, oracle_move_rx2(15.0, 10.0, 1.5, 0.5), epsilon = 1e-9);
        assert_relative_eq!(r.total_db, 71.774, epsilon = 1e-3);

        let los_only = pl_move_rx2_vv_with_gamma(&g, &m, &cfg, Some(0.0)).unwrap();
        let tp = 15f64.atan2(8.5);
        let d0p = 15f64.hypot(8.5);
        assert_relative_eq!(
            los_only.total_db,
            fspl_ref(&cfg) + db10(d0p * d0p / (tp.sin() * 0.5)),
            epsilon = 1e-9
        );
    }

    #[test]
    fn vh_adds_penalty() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let base = pl_hover_rx1_vv(&geom(15.0, 10.0, 0.0), &m, &cfg).unwrap();
        let vh = pl_vh(&base, &PolarizationState::cross_polarized(12.9)).unwrap();
        assert_relative_eq!(vh.total_db, 84.00, epsilon = 0.05);
        assert_eq!(vh.penalty_db, 12.9);
        assert_relative_eq!(vh.total_db, vh.fspl_ref_db + vh.geometry_term_db + vh.penalty_db, epsilon = 1e-12);
        let zero = pl_vh(&base, &PolarizationState::cross_polarized(0.0)).unwrap();
        assert_eq!(zero, base);
        let vv = pl_vh(&base, &PolarizationState::co_polarized()).unwrap();
        assert_eq!(vv, base);
        let b = pl_move_rx1_vv(&geom(30.0, 10.0, 0.0), &m, &cfg).unwrap();
        let moved = pl_vh(&b, &PolarizationState::cross_polarized(5.4)).unwrap();
        assert_relative_eq!(moved.total_db, b.total_db + 5.4, epsilon = 1e-12);
        let missing = PolarizationState {
            orientation: crate::antenna::Orientation::VH,
            c_pol_db: None,
        };
        assert!(pl_vh(&base, &missing).is_err());
    }

    #[test]
    fn foliage_clamp() {
        let r = pl_foliage(&RfConfig::default()).unwrap();
        assert!(r.clamped);
        assert_relative_eq!(r.total_db, 92.38, epsilon = 0.01);
        let zero = pl_foliage(&RfConfig {
            dynamic_range_db: 0.0,
            ..RfConfig::default()
        })
        .unwrap();
        assert_eq!(zero.total_db, zero.fspl_ref_db);
        assert!(zero.clamped);
        let shifted = pl_foliage(&RfConfig {
            reference_distance: 2.0,
            ..RfConfig::default()
        })
        .unwrap();
        assert_relative_eq!(shifted.total_db, 50.40 + 48.0, epsilon = 0.01);
    }

    #[test]
    fn crossover() {
        let (m, cfg) = (AntennaModel::default(), RfConfig::default());
        let pl = |x, h| pl_hover_rx1_vv(&geom(x, h, 0.0), &m, &cfg).unwrap().total_db;
        assert!(pl(15.0, 10.0) < pl(30.0, 10.0));
        assert!(pl(15.0, 30.0) > pl(30.0, 30.0));
    }

    #[test]
    fn harmonized_gains_square_every_factor() {
        let m = AntennaModel::default();
        let cfg = RfConfig {
            harmonize_gains: true,
            ..RfConfig::default()
        };
        let r = pl_hover_rx1_vv(&geom(15.0, 10.0, 0.0), &m, &cfg).unwrap();
        let s = 1.5f64.atan().sin();
        assert_relative_eq!(r.total_db, fspl_ref(&cfg) + db10(325.0 / s.powi(4)), epsilon = 1e-9);
        let r = pl_move_rx1_vv(&geom(15.0, 10.0, 0.0), &m, &cfg).unwrap();
        assert_relative_eq!(r.total_db, fspl_ref(&cfg) + db10(325.0 / (s * s * 0.5)), epsilon = 1e-9);
    }

    #[test]
    fn invalid_config_rejected() {
        let m = AntennaModel::default();
        let g = geom(15.0, 10.0, 1.5);
        for cfg in [
            RfConfig { epsilon_r: 1.0, ..RfConfig::default() },
            RfConfig { g_r_circular: 0.0, ..RfConfig::default() },
            RfConfig { center_frequency: -1.0, ..RfConfig::default() },
        ] {
            assert!(pl_hover_rx2_vv(&g, &m, &cfg).is_err());
        }
        assert!(pl_hover_rx2_vv_with_gamma(&g, &m, &RfConfig::default(), Some(1.5)).is_err());
    }

    proptest! {
        #[test]
        fn reflection_never_increases_loss(x in 0.5f64..200.0, h in 2.0f64..120.0) {
            let (m, cfg) = (AntennaModel::default(), RfConfig::default());
            let g = geom(x, h, 1.5);
            let with = pl_hover_rx2_vv(&g, &m, &cfg).unwrap();
            let without = pl_hover_rx2_vv_with_gamma(&g, &m, &cfg, Some(0.0)).unwrap();
            prop_assert!(with.total_db <= without.total_db);
            prop_assert!(with.components.los >= 0.0 && with.components.grc >= 0.0);
        }

        #[test]
        fn fresnel_bounded(psi in 1e-6f64..=FRAC_PI_2, er in 1.5f64..80.0) {
            let g = fresnel_gamma_v(psi, er);
            prop_assert!((0.0..=1.0).contains(&g));
        }
    }
}
