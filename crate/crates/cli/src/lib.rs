//! Command implementations behind the `a2g` binary.
//!
//! Every command takes a [`RunConfig`] and writes plain-text files into its
//! output directory. Outputs depend only on the configuration, never on the
//! number of worker threads.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use a2g_channel::analysis::{
    channel_stats, compute_pdp, count_significant_mpcs, detect_clusters, estimate_sv_params, fit_sv_piecewise,
    ricean_k_factor, rms_delay_spread, ClusterRule,
};
use a2g_channel::antenna::{AntennaModel, Orientation, PolarizationState};
use a2g_channel::geometry::LinkGeometry;
use a2g_channel::io::{self, CirFile, StatsRow, SweepRow};
use a2g_channel::pathloss::{pl_vh, PathLossModel, RfConfig};
use a2g_channel::svmodel::catalog::{c_pol_db, catalog_rows, FlightMode, GROUND_POLARIZATION};
use a2g_channel::svmodel::{
    catalog_lookup, synthesize_ensemble_counted, Distance, Receiver, Scenario, ScenarioKey, SynthesisConfig,
};
use serde::{Deserialize, Serialize};

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Channel(#[from] a2g_channel::Error),
}

impl CliError {
    /// 2 for invalid input, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Channel(e) if e.is_io() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Attaches the file name to I/O errors coming out of the library.
fn at_path(path: &Path) -> impl FnOnce(a2g_channel::Error) -> CliError + '_ {
    move |e| match e {
        a2g_channel::Error::Io(source) => CliError::Io {
            path: path.to_path_buf(),
            source,
        },
        a2g_channel::Error::Parse { line, column, message } => {
            CliError::Invalid(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => CliError::Channel(other),
    }
}

/// Path-loss sweep grid, meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    pub x_m: Vec<f64>,
    pub h_m: Vec<f64>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            x_m: vec![15.0, 30.0],
            h_m: vec![10.0, 20.0, 30.0],
        }
    }
}

/// Everything a run depends on. Serializes to TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub n_scans: usize,
    pub scenario: Scenario,
    pub rx: Receiver,
    pub orientation: Orientation,
    /// Horizontal distance of the catalog row, 15 or 30 m.
    pub x_m: f64,
    pub threshold_fraction: f64,
    pub output_dir: PathBuf,
    pub synthesis: SynthesisConfig,
    pub rf: RfConfig,
    pub rule: ClusterRule,
    pub sweep: SweepGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            n_scans: 50,
            scenario: Scenario::HoverOpen,
            rx: Receiver::Rx1,
            orientation: Orientation::VV,
            x_m: 15.0,
            threshold_fraction: 0.2,
            output_dir: PathBuf::from("out"),
            synthesis: SynthesisConfig::default(),
            rf: RfConfig::default(),
            rule: ClusterRule::default(),
            sweep: SweepGrid::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Invalid(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_toml(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration serializes")
    }

    pub fn key(&self) -> CliResult<ScenarioKey> {
        let x = Distance::from_meters(self.x_m)?;
        Ok(ScenarioKey::new(self.scenario, self.rx, self.orientation, x))
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.n_scans == 0 {
            return Err(CliError::Invalid("number of scans must be at least 1".into()));
        }
        if !(self.threshold_fraction > 0.0 && self.threshold_fraction <= 1.0) {
            return Err(CliError::Invalid("threshold fraction must lie in (0, 1]".into()));
        }
        self.key()?;
        self.synthesis.validate()?;
        self.rf.validate()?;
        self.rule.validate()?;
        Ok(())
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn prepare_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

fn load_cir(path: &Path) -> CliResult<CirFile> {
    let file = File::open(path).map_err(io_err(path))?;
    io::read_cir_file(BufReader::new(file)).map_err(at_path(path))
}

/// Writes `cir.csv` and `run.toml`; returns the printed summary.
pub fn cmd_synthesize(cfg: &RunConfig) -> CliResult<String> {
    cfg.validate()?;
    let key = cfg.key()?;
    let params = catalog_lookup(&key);
    let scans = synthesize_ensemble_counted(&params, &cfg.synthesis, cfg.n_scans, cfg.seed)?;
    let n = scans.len() as f64;
    let mean_clusters = scans.iter().map(|s| s.1).sum::<usize>() as f64 / n;
    let mean_taps = scans.iter().map(|s| s.0.taps.len()).sum::<usize>() as f64 / n;
    let file = CirFile::new(scans.into_iter().map(|s| s.0).collect(), Some(cfg.seed), Some(key))?;

    prepare_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("cir.csv");
    io::write_cir_file(create(&path)?, &file).map_err(at_path(&path))?;
    let run = cfg.output_dir.join("run.toml");
    fs::write(&run, cfg.to_toml()).map_err(io_err(&run))?;
    Ok(format!(
        "{key}: {} scans, mean clusters {mean_clusters:.2}, mean taps {mean_taps:.2}\n",
        file.scans.len()
    ))
}

/// Writes `pdp.csv`, `clusters.csv` and `stats.csv` for a CIR file.
pub fn cmd_analyze(cir_path: &Path, cfg: &RunConfig) -> CliResult<String> {
    cfg.rule.validate()?;
    let file = load_cir(cir_path)?;
    let scans = &file.scans;
    let cross = file.header.scenario.is_some_and(|k| k.orientation == Orientation::VH);

    let pdp = compute_pdp(scans)?;
    let clusters = detect_clusters(&pdp, &cfg.rule)?;
    let fit = fit_sv_piecewise(&pdp, &clusters)?;

    let mut rows = Vec::with_capacity(scans.len() + 1);
    for (i, scan) in scans.iter().enumerate() {
        let row = if scan.is_empty() || scan.total_power() == 0.0 {
            StatsRow {
                scope: i.to_string(),
                rms_ds_ns: None,
                k_factor_db: None,
                n_mpcs: Some(0),
                residual_sv_db: None,
                residual_single_db: None,
            }
        } else {
            let stats = channel_stats(scan, cfg.threshold_fraction)?;
            StatsRow {
                scope: i.to_string(),
                rms_ds_ns: Some(stats.rms_ds_ns),
                k_factor_db: stats.k_factor_db.filter(|_| !cross),
                n_mpcs: Some(stats.n_significant_mpcs),
                residual_sv_db: None,
                residual_single_db: None,
            }
        };
        rows.push(row);
    }
    let pdp_amplitudes: Vec<f64> = pdp.power.iter().filter(|&&p| p > 0.0).map(|p| p.sqrt()).collect();
    let pdp_rms = rms_delay_spread(&pdp)?;
    rows.push(StatsRow {
        scope: "pdp".into(),
        rms_ds_ns: Some(pdp_rms),
        k_factor_db: if cross { None } else { Some(ricean_k_factor(&pdp)?) },
        n_mpcs: Some(count_significant_mpcs(&pdp_amplitudes, cfg.threshold_fraction)),
        residual_sv_db: Some(fit.mean_abs_residual_sv),
        residual_single_db: Some(fit.mean_abs_residual_single),
    });

    prepare_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("pdp.csv");
    io::write_pdp_csv(create(&path)?, &pdp, cfg.rule.dynamic_range_db).map_err(at_path(&path))?;
    let path = cfg.output_dir.join("clusters.csv");
    io::write_clusters_csv(create(&path)?, &clusters, Some(&fit)).map_err(at_path(&path))?;
    let path = cfg.output_dir.join("stats.csv");
    io::write_stats_csv(create(&path)?, &rows).map_err(at_path(&path))?;

    let mut out = String::new();
    let _ = writeln!(out, "scans: {}", scans.len());
    let _ = writeln!(out, "clusters in PDP: {}", clusters.len());
    let _ = writeln!(out, "PDP RMS delay spread: {pdp_rms:.4} ns");
    let _ = writeln!(
        out,
        "mean abs residual: piecewise {:.2} dB, single line {:.2} dB",
        fit.mean_abs_residual_sv, fit.mean_abs_residual_single
    );
    Ok(out)
}

/// Maps a scenario and receiver to its analytical model and flight mode.
pub fn pathloss_model(scenario: Scenario, rx: Receiver) -> (PathLossModel, FlightMode) {
    match (scenario, rx) {
        (Scenario::HoverOpen, Receiver::Rx1) => (PathLossModel::HoverRx1, FlightMode::Hovering),
        (Scenario::HoverOpen, Receiver::Rx2) => (PathLossModel::HoverRx2, FlightMode::Hovering),
        (Scenario::HoverFoliage, _) => (PathLossModel::Foliage, FlightMode::Hovering),
        (Scenario::MovingOpen, Receiver::Rx1) => (PathLossModel::MoveRx1, FlightMode::Moving),
        (Scenario::MovingOpen, Receiver::Rx2) => (PathLossModel::MoveRx2, FlightMode::Moving),
    }
}

/// Evaluates the sweep grid.
pub fn pathloss_sweep(cfg: &RunConfig) -> CliResult<Vec<SweepRow>> {
    cfg.rf.validate()?;
    if cfg.sweep.x_m.is_empty() || cfg.sweep.h_m.is_empty() {
        return Err(CliError::Invalid("sweep grid is empty".into()));
    }
    let (model, mode) = pathloss_model(cfg.scenario, cfg.rx);
    let antenna = AntennaModel::default();
    let mut rows = Vec::new();
    for &x in &cfg.sweep.x_m {
        for &h in &cfg.sweep.h_m {
            if !(x > 0.0 && h > 0.0) {
                return Err(CliError::Invalid(format!("grid values must be positive (x = {x}, h = {h})")));
            }
            let geom = LinkGeometry::new(x, h, cfg.rx.height_m())?;
            let vv = model.evaluate(&geom, &antenna, &cfg.rf)?;
            let c_pol = c_pol_db(mode, cfg.rx, x, h);
            let vh = match c_pol {
                Ok(c) => Some(pl_vh(&vv, &PolarizationState::cross_polarized(c))?),
                Err(_) => None,
            };
            let chosen = match cfg.orientation {
                Orientation::VV => vv,
                Orientation::VH => vh.ok_or_else(|| c_pol.unwrap_err())?,
            };
            rows.push(SweepRow {
                x_m: x,
                h_m: h,
                model: model.name().to_string(),
                orientation: cfg.orientation.to_string(),
                total_db: chosen.total_db,
                penalty_db: chosen.penalty_db,
                gamma_v: chosen.gamma_v,
                vh_total_db: vh.map(|r| r.total_db),
                clamped: chosen.clamped,
            });
        }
    }
    Ok(rows)
}

/// Writes `pathloss.csv`.
pub fn cmd_pathloss(cfg: &RunConfig) -> CliResult<String> {
    let rows = pathloss_sweep(cfg)?;
    prepare_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("pathloss.csv");
    io::write_sweep_csv(create(&path)?, &rows).map_err(at_path(&path))?;
    Ok(format!("{} grid points written to {}\n", rows.len(), path.display()))
}

/// Writes `estimate.csv` in catalog format and returns the same text.
///
/// The row is keyed by the scenario recorded in the CIR file, falling back
/// to the configured one.
pub fn cmd_estimate(cir_path: &Path, cfg: &RunConfig) -> CliResult<String> {
    cfg.rule.validate()?;
    let file = load_cir(cir_path)?;
    let key = match file.header.scenario {
        Some(k) => k,
        None => cfg.key()?,
    };
    let est = estimate_sv_params(&file.scans, &cfg.rule)?;
    let mut text = Vec::new();
    for w in &est.warnings {
        text.extend_from_slice(format!("# warning: {w}\n").as_bytes());
    }
    io::write_catalog_csv(&mut text, &[(key, est.params)])?;
    let text = String::from_utf8(text).expect("catalog text is UTF-8");

    prepare_dir(&cfg.output_dir)?;
    let path = cfg.output_dir.join("estimate.csv");
    fs::write(&path, &text).map_err(io_err(&path))?;
    Ok(text)
}

/// Writes the built-in tables as `sv_params.csv` and
/// `ground_polarization.csv`.
pub fn cmd_catalog(cfg: &RunConfig) -> CliResult<String> {
    prepare_dir(&cfg.output_dir)?;
    let sv = cfg.output_dir.join("sv_params.csv");
    io::write_catalog_csv(create(&sv)?, &catalog_rows()).map_err(at_path(&sv))?;
    let gp = cfg.output_dir.join("ground_polarization.csv");
    io::write_ground_polarization_csv(create(&gp)?, &GROUND_POLARIZATION).map_err(at_path(&gp))?;
    Ok(format!("wrote {} and {}\n", sv.display(), gp.display()))
}
