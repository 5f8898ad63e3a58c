use std::io::Write;

use super::{fmt_db, fmt_opt};
use crate::analysis::{ClusterSet, FitReport, Pdp};
use crate::Result;

/// Peak-normalized profile: `delay_ns,power_db,floored`.
pub fn write_pdp_csv<W: Write>(mut w: W, pdp: &Pdp, dynamic_range_db: f64) -> Result<()> {
    writeln!(w, "# n_scans={}", pdp.n_scans)?;
    writeln!(w, "# sample_spacing_ns={}", pdp.sample_spacing_ns)?;
    writeln!(w, "# dynamic_range_db={dynamic_range_db}")?;
    writeln!(w, "delay_ns,power_db,floored")?;
    for (i, (db, floored)) in pdp.db_floored(dynamic_range_db).into_iter().enumerate() {
        writeln!(w, "{:.2},{},{}", pdp.delay(i), fmt_db(db), u8::from(floored))?;
    }
    w.flush()?;
    Ok(())
}

/// One row per cluster with its line fit when available.
pub fn write_clusters_csv<W: Write>(mut w: W, clusters: &ClusterSet, fit: Option<&FitReport>) -> Result<()> {
    let rule = &clusters.rule;
    writeln!(w, "# min_duration_ns={}", rule.min_duration_ns)?;
    writeln!(w, "# min_drop_db={}", rule.min_drop_db)?;
    writeln!(w, "cluster,start_ns,end_ns,lead_delay_ns,peak_power_db,beta0_db,beta1_db_per_ns,n_points,flat")?;
    for (i, c) in clusters.clusters.iter().enumerate() {
        let cf = fit.and_then(|f| f.per_cluster.get(i));
        writeln!(
            w,
            "{i},{:.2},{:.2},{:.2},{},{},{},{},{}",
            c.start_ns,
            c.end_ns,
            c.lead_delay_ns,
            fmt_db(c.peak_power_db),
            fmt_opt(cf, |f| fmt_db(f.fit.beta0)),
            fmt_opt(cf, |f| format!("{:.4}", f.fit.beta1)),
            fmt_opt(cf, |f| f.n_points.to_string()),
            fmt_opt(cf, |f| u8::from(f.flat).to_string()),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Summary statistics of one scan or of the ensemble profile.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    /// Scan index, or `pdp` for the ensemble profile.
    pub scope: String,
    pub rms_ds_ns: Option<f64>,
    pub k_factor_db: Option<f64>,
    pub n_mpcs: Option<usize>,
    pub residual_sv_db: Option<f64>,
    pub residual_single_db: Option<f64>,
}

pub fn write_stats_csv<W: Write>(mut w: W, rows: &[StatsRow]) -> Result<()> {
    writeln!(w, "scope,rms_ds_ns,k_factor_db,n_mpcs,residual_sv_db,residual_single_db")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.scope,
            fmt_opt(r.rms_ds_ns, |v| format!("{v:.4}")),
            fmt_opt(r.k_factor_db, fmt_db),
            fmt_opt(r.n_mpcs, |v| v.to_string()),
            fmt_opt(r.residual_sv_db, fmt_db),
            fmt_opt(r.residual_single_db, fmt_db),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// One grid point of a path-loss sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub x_m: f64,
    pub h_m: f64,
    pub model: String,
    pub orientation: String,
    /// Loss for the requested orientation.
    pub total_db: f64,
    pub penalty_db: f64,
    pub gamma_v: Option<f64>,
    /// Cross-polarized loss when a mismatch ratio exists for the geometry.
    pub vh_total_db: Option<f64>,
    /// Set when the value is a dynamic-range bound, not a prediction.
    pub clamped: bool,
}

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(w, "x_m,h_m,model,orientation,total_db,penalty_db,gamma_v,vh_total_db,clamped")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.x_m,
            r.h_m,
            r.model,
            r.orientation,
            fmt_db(r.total_db),
            fmt_db(r.penalty_db),
            fmt_opt(r.gamma_v, |g| format!("{g:.4}")),
            fmt_opt(r.vh_total_db, fmt_db),
            u8::from(r.clamped),
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{detect_clusters, fit_sv_piecewise, ClusterRule};

    fn text(f: impl FnOnce(&mut Vec<u8>)) -> String {
        let mut out = Vec::new();
        f(&mut out);
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn pdp_and_cluster_tables() {
        let pdp = Pdp::new(vec![1.0, 0.1, 0.0], 0.06).unwrap();
        let s = text(|o| write_pdp_csv(o, &pdp, 48.0).unwrap());
        assert!(s.ends_with("delay_ns,power_db,floored\n0.00,0.00,0\n0.06,-10.00,0\n0.12,-48.00,1\n"));
        let set = detect_clusters(&pdp, &ClusterRule::default()).unwrap();
        let fit = fit_sv_piecewise(&pdp, &set).unwrap();
        let s = text(|o| write_clusters_csv(o, &set, Some(&fit)).unwrap());
        assert!(s.ends_with("0,0.00,0.12,0.00,0.00,0.00,-166.6667,2,0\n"), "{s}");
    }

    #[test]
    fn stats_leave_missing_values_empty() {
        let rows = [StatsRow {
            scope: "0".into(),
            rms_ds_ns: Some(0.0),
            k_factor_db: None,
            n_mpcs: Some(1),
            residual_sv_db: None,
            residual_single_db: None,
        }];
        let s = text(|o| write_stats_csv(o, &rows).unwrap());
        assert_eq!(s.lines().nth(1), Some("0,0.0000,,1,,"));
    }

    #[test]
    fn sweep_rows() {
        let rows = [SweepRow {
            x_m: 15.0,
            h_m: 10.0,
            model: "hover-rx1".into(),
            orientation: "VV".into(),
            total_db: 71.095567,
            penalty_db: 0.0,
            gamma_v: None,
            vh_total_db: Some(83.995567),
            clamped: false,
        }];
        let s = text(|o| write_sweep_csv(o, &rows).unwrap());
        assert_eq!(s.lines().nth(1), Some("15,10,hover-rx1,VV,71.10,0.00,,84.00,0"));
    }
}
