//! Built-in measurement catalog.
//!
//! Clustered channel parameters for the three flight scenarios (averaged over
//! UAV heights of 10, 20 and 30 m), ground reflection coefficients at the
//! elevated receiver, and VH/VV polarization mismatch ratios.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SVParams;
use crate::antenna::Orientation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// Hovering UAV, unobstructed link.
    HoverOpen,
    /// Hovering UAV, link through a tree canopy.
    HoverFoliage,
    /// UAV circling the receivers at constant altitude.
    MovingOpen,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::HoverOpen, Scenario::HoverFoliage, Scenario::MovingOpen];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::HoverOpen => "hover-open",
            Scenario::HoverFoliage => "hover-foliage",
            Scenario::MovingOpen => "moving-open",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "hoveropen" | "hover" | "open" => Ok(Scenario::HoverOpen),
            "hoverfoliage" | "foliage" => Ok(Scenario::HoverFoliage),
            "movingopen" | "moving" | "move" => Ok(Scenario::MovingOpen),
            _ => Err(Error::UnknownKey(format!("scenario '{}'", s.trim()))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Receiver {
    /// Antenna 10 cm above ground.
    Rx1,
    /// Antenna on a 1.5 m tripod.
    Rx2,
}

impl Receiver {
    pub const ALL: [Receiver; 2] = [Receiver::Rx1, Receiver::Rx2];

    /// Nominal antenna height in meters.
    pub fn height_m(&self) -> f64 {
        match self {
            Receiver::Rx1 => 0.1,
            Receiver::Rx2 => 1.5,
        }
    }
}

impl fmt::Display for Receiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Receiver::Rx1 => "RX1",
            Receiver::Rx2 => "RX2",
        })
    }
}

impl FromStr for Receiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rx1" | "1" => Ok(Receiver::Rx1),
            "rx2" | "2" => Ok(Receiver::Rx2),
            other => Err(Error::UnknownKey(format!("receiver '{other}'"))),
        }
    }
}

/// Horizontal TX-RX distance of a catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Distance {
    X15,
    X30,
}

impl Distance {
    pub const ALL: [Distance; 2] = [Distance::X15, Distance::X30];

    pub fn meters(&self) -> f64 {
        match self {
            Distance::X15 => 15.0,
            Distance::X30 => 30.0,
        }
    }

    pub fn from_meters(x: f64) -> Result<Self> {
        if x == 15.0 {
            Ok(Distance::X15)
        } else if x == 30.0 {
            Ok(Distance::X30)
        } else {
            Err(Error::UnknownKey(format!("horizontal distance {x} m (catalog has 15 and 30)")))
        }
    }
}

impl FromStr for Distance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches('m').trim();
        let x: f64 = t
            .parse()
            .map_err(|_| Error::UnknownKey(format!("horizontal distance '{}'", s.trim())))?;
        Distance::from_meters(x)
    }
}

/// Identifies one catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScenarioKey {
    pub scenario: Scenario,
    pub rx: Receiver,
    pub orientation: Orientation,
    pub x: Distance,
}

impl ScenarioKey {
    pub const fn new(scenario: Scenario, rx: Receiver, orientation: Orientation, x: Distance) -> Self {
        Self {
            scenario,
            rx,
            orientation,
            x,
        }
    }

    /// All 24 keys in catalog order.
    pub fn all() -> impl Iterator<Item = ScenarioKey> {
        Scenario::ALL.into_iter().flat_map(|scenario| {
            COLUMN_ORDER
                .into_iter()
                .map(move |(rx, orientation, x)| ScenarioKey::new(scenario, rx, orientation, x))
        })
    }
}

impl fmt::Display for ScenarioKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}/x={}m",
            self.scenario,
            self.rx,
            self.orientation,
            self.x.meters()
        )
    }
}

/// Parses the `scenario/rx/orientation/x=15m` form produced by `Display`.
impl FromStr for ScenarioKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('/').collect();
        let [scenario, rx, orientation, x] = parts[..] else {
            return Err(Error::UnknownKey(format!("scenario key '{}'", s.trim())));
        };
        Ok(ScenarioKey::new(
            scenario.parse()?,
            rx.parse()?,
            orientation.parse()?,
            x.trim().trim_start_matches("x=").parse()?,
        ))
    }
}

const COLUMN_ORDER: [(Receiver, Orientation, Distance); 8] = [
    (Receiver::Rx1, Orientation::VV, Distance::X15),
    (Receiver::Rx1, Orientation::VV, Distance::X30),
    (Receiver::Rx2, Orientation::VV, Distance::X15),
    (Receiver::Rx2, Orientation::VV, Distance::X30),
    (Receiver::Rx1, Orientation::VH, Distance::X15),
    (Receiver::Rx1, Orientation::VH, Distance::X30),
    (Receiver::Rx2, Orientation::VH, Distance::X15),
    (Receiver::Rx2, Orientation::VH, Distance::X30),
];

/// Parameter rows per scenario: N_C, chi, eta, varsigma, gamma, one column
/// per entry of `COLUMN_ORDER`.
type Table = [[f64; 8]; 5];

const HOVER_OPEN: Table = [
    [3.33, 4.0, 2.66, 2.0, 1.66, 2.66, 1.66, 1.33],
    [0.033, 0.04, 0.027, 0.02, 0.017, 0.027, 0.017, 0.013],
    [0.23, 0.186, 0.24, 0.16, 0.215, 0.16, 0.177, 0.171],
    [0.1, 0.06, 0.11, 0.06, 0.25, 0.15, 0.26, 0.2],
    [8.7, 8.66, 5.5, 4.3, 2.7, 5.92, 2.8, 1.88],
];

const HOVER_FOLIAGE: Table = [
    [2.0, 2.0, 2.0, 1.66, 2.0, 1.33, 1.66, 1.33],
    [0.02, 0.02, 0.02, 0.017, 0.02, 0.013, 0.017, 0.013],
    [0.212, 0.21, 0.24, 0.23, 0.214, 0.16, 0.198, 0.2],
    [0.14, 0.175, 0.27, 0.21, 0.34, 0.34, 0.3, 0.34],
    [1.3, 1.11, 0.985, 1.34, 0.77, 0.811, 1.4, 0.74],
];

const MOVING_OPEN: Table = [
    [2.0, 1.66, 1.66, 1.33, 2.0, 1.0, 1.66, 1.0],
    [0.02, 0.017, 0.017, 0.013, 0.02, 0.01, 0.017, 0.01],
    [0.14, 0.143, 0.2, 0.18, 0.15, 0.12, 0.205, 0.171],
    [0.1, 0.082, 0.084, 0.084, 0.14, 0.11, 0.16, 0.16],
    [1.87, 1.87, 3.6, 5.2, 1.76, 2.0, 2.04, 1.31],
];

/// Built-in parameters for `key`.
pub fn catalog_lookup(key: &ScenarioKey) -> SVParams {
    let table = match key.scenario {
        Scenario::HoverOpen => &HOVER_OPEN,
        Scenario::HoverFoliage => &HOVER_FOLIAGE,
        Scenario::MovingOpen => &MOVING_OPEN,
    };
    let col = COLUMN_ORDER
        .iter()
        .position(|&(rx, o, x)| rx == key.rx && o == key.orientation && x == key.x)
        .expect("every receiver/orientation/distance combination has a column");
    SVParams {
        n_c_mean: table[0][col],
        chi: table[1][col],
        eta: table[2][col],
        varsigma: table[3][col],
        gamma: table[4][col],
        omega00: 1.0,
    }
}

/// Every catalog row with its key.
pub fn catalog_rows() -> Vec<(ScenarioKey, SVParams)> {
    ScenarioKey::all().map(|k| (k, catalog_lookup(&k))).collect()
}

/// Rows whose cluster rate departs from `n_c_mean / 100 ns` by more than
/// `tolerance`, with the absolute deviation.
pub fn rate_consistency_violations(window_ns: f64, tolerance: f64) -> Vec<(ScenarioKey, f64)> {
    catalog_rows()
        .into_iter()
        .filter_map(|(k, p)| {
            let dev = (p.chi - p.n_c_mean / window_ns).abs();
            (dev > tolerance).then_some((k, dev))
        })
        .collect()
}

/// Flight mode for polarization mismatch lookups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlightMode {
    Hovering,
    Moving,
}

impl FromStr for FlightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hover" | "hovering" => Ok(FlightMode::Hovering),
            "move" | "moving" => Ok(FlightMode::Moving),
            other => Err(Error::UnknownKey(format!("flight mode '{other}'"))),
        }
    }
}

impl fmt::Display for FlightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlightMode::Hovering => "hovering",
            FlightMode::Moving => "moving",
        })
    }
}

/// One column of the ground reflection / polarization table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPolarizationEntry {
    pub rx: Receiver,
    pub x_m: f64,
    pub h_m: f64,
    /// Tabulated `|Gamma|` at the elevated receiver (none for RX1).
    pub gamma_v: Option<f64>,
    pub c_pol_hover_db: f64,
    pub c_pol_moving_db: f64,
}

const fn gp(rx: Receiver, x_m: f64, h_m: f64, gamma_v: Option<f64>, hover: f64, moving: f64) -> GroundPolarizationEntry {
    GroundPolarizationEntry {
        rx,
        x_m,
        h_m,
        gamma_v,
        c_pol_hover_db: hover,
        c_pol_moving_db: moving,
    }
}

pub const GROUND_POLARIZATION: [GroundPolarizationEntry; 12] = [
    gp(Receiver::Rx1, 15.0, 10.0, None, 12.9, 0.6),
    gp(Receiver::Rx1, 15.0, 20.0, None, 7.3, 0.4),
    gp(Receiver::Rx1, 15.0, 30.0, None, 5.6, 2.0),
    gp(Receiver::Rx1, 30.0, 10.0, None, 8.0, 5.4),
    gp(Receiver::Rx1, 30.0, 20.0, None, 6.3, 4.6),
    gp(Receiver::Rx1, 30.0, 30.0, None, 6.0, 4.3),
    gp(Receiver::Rx2, 15.0, 10.0, Some(0.59), 11.2, 1.8),
    gp(Receiver::Rx2, 15.0, 20.0, Some(0.67), 8.2, 0.7),
    gp(Receiver::Rx2, 15.0, 30.0, Some(0.70), 5.7, 2.2),
    gp(Receiver::Rx2, 30.0, 10.0, Some(0.39), 11.3, 5.8),
    gp(Receiver::Rx2, 30.0, 20.0, Some(0.57), 8.8, 2.5),
    gp(Receiver::Rx2, 30.0, 30.0, Some(0.64), 8.0, 4.1),
];

pub fn ground_polarization_entry(rx: Receiver, x_m: f64, h_m: f64) -> Option<&'static GroundPolarizationEntry> {
    GROUND_POLARIZATION
        .iter()
        .find(|e| e.rx == rx && e.x_m == x_m && e.h_m == h_m)
}

/// Measured VH/VV mismatch ratio in dB, if the geometry was measured.
pub fn c_pol_db(mode: FlightMode, rx: Receiver, x_m: f64, h_m: f64) -> Result<f64> {
    let entry = ground_polarization_entry(rx, x_m, h_m).ok_or_else(|| {
        Error::MissingPolarizationEntry(format!("{mode} {rx} at x = {x_m} m, h = {h_m} m"))
    })?;
    Ok(match mode {
        FlightMode::Hovering => entry.c_pol_hover_db,
        FlightMode::Moving => entry.c_pol_moving_db,
    })
}
