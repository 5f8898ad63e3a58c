use std::io::{BufRead, Write};

use super::{Document, Record};
use crate::svmodel::catalog::GroundPolarizationEntry;
use crate::svmodel::{Receiver, SVParams, ScenarioKey};
use crate::Result;

pub const CATALOG_COLUMNS: [&str; 10] = [
    "scenario",
    "rx",
    "orientation",
    "x_m",
    "n_c",
    "chi",
    "eta",
    "varsigma",
    "gamma",
    "omega00",
];

pub const GROUND_POLARIZATION_COLUMNS: [&str; 6] = ["rx", "x_m", "h_m", "gamma_v", "c_pol_hover_db", "c_pol_moving_db"];

/// Parameter rows keyed by scenario; rates per ns. Values are written in
/// their shortest exact decimal form.
pub fn write_catalog_csv<W: Write>(mut w: W, rows: &[(ScenarioKey, SVParams)]) -> Result<()> {
    writeln!(w, "{}", CATALOG_COLUMNS.join(","))?;
    for (k, p) in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            k.scenario,
            k.rx,
            k.orientation,
            k.x.meters(),
            p.n_c_mean,
            p.chi,
            p.eta,
            p.varsigma,
            p.gamma,
            p.omega00
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_catalog_csv<R: BufRead>(reader: R) -> Result<Vec<(ScenarioKey, SVParams)>> {
    let doc = Document::read(reader)?;
    doc.expect_columns(&CATALOG_COLUMNS)?;
    doc.rows
        .iter()
        .map(|(line, text)| {
            let rec = Record::new(*line, text);
            rec.expect_len(CATALOG_COLUMNS.len())?;
            let key = ScenarioKey::new(
                rec.parse_with(0, str::parse)?,
                rec.parse_with(1, str::parse)?,
                rec.parse_with(2, str::parse)?,
                rec.parse_with(3, str::parse)?,
            );
            let params = SVParams {
                n_c_mean: rec.parse(4, "n_c")?,
                chi: rec.parse(5, "chi")?,
                eta: rec.parse(6, "eta")?,
                varsigma: rec.parse(7, "varsigma")?,
                gamma: rec.parse(8, "gamma")?,
                omega00: rec.parse(9, "omega00")?,
            };
            params.validate().map_err(|e| rec.error(4, e.to_string()))?;
            Ok((key, params))
        })
        .collect()
}

pub fn write_ground_polarization_csv<W: Write>(mut w: W, rows: &[GroundPolarizationEntry]) -> Result<()> {
    writeln!(w, "{}", GROUND_POLARIZATION_COLUMNS.join(","))?;
    for e in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            e.rx,
            e.x_m,
            e.h_m,
            e.gamma_v.map(|g| g.to_string()).unwrap_or_default(),
            e.c_pol_hover_db,
            e.c_pol_moving_db
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_ground_polarization_csv<R: BufRead>(reader: R) -> Result<Vec<GroundPolarizationEntry>> {
    let doc = Document::read(reader)?;
    doc.expect_columns(&GROUND_POLARIZATION_COLUMNS)?;
    doc.rows
        .iter()
        .map(|(line, text)| {
            let rec = Record::new(*line, text);
            rec.expect_len(GROUND_POLARIZATION_COLUMNS.len())?;
            Ok(GroundPolarizationEntry {
                rx: rec.parse_with(0, str::parse::<Receiver>)?,
                x_m: rec.parse(1, "x_m")?,
                h_m: rec.parse(2, "h_m")?,
                gamma_v: rec.parse_opt(3, "gamma_v")?,
                c_pol_hover_db: rec.parse(4, "c_pol_hover_db")?,
                c_pol_moving_db: rec.parse(5, "c_pol_moving_db")?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::svmodel::catalog::{catalog_rows, GROUND_POLARIZATION};
    use crate::Error;

    #[test]
    fn builtin_tables_roundtrip() {
        let mut out = Vec::new();
        write_catalog_csv(&mut out, &catalog_rows()).unwrap();
        assert_eq!(read_catalog_csv(&out[..]).unwrap(), catalog_rows());
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1), Some("hover-open,RX1,VV,15,3.33,0.033,0.23,0.1,8.7,1"));

        let mut out = Vec::new();
        write_ground_polarization_csv(&mut out, &GROUND_POLARIZATION).unwrap();
        assert_eq!(read_ground_polarization_csv(&out[..]).unwrap(), GROUND_POLARIZATION.to_vec());
    }

    #[test]
    fn bad_rows_are_located() {
        let head = CATALOG_COLUMNS.join(",");
        let bad = format!("{head}\nhover-open,RX1,VV,15,3.33,0.033,0.23,0.1,8.7,1\nhover-open,RX3,VV,15,1,1,1,1,1,1\n");
        match read_catalog_csv(bad.as_bytes()) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 12)),
            other => panic!("{other:?}"),
        }
        let bad = format!("{head}\nhover-open,RX1,VV,15,3.33,-1,0.23,0.1,8.7,1\n");
        assert!(matches!(read_catalog_csv(bad.as_bytes()), Err(Error::Parse { line: 2, .. })));
        let bad = format!("{head}\nhover-open,RX1,VV,20,3.33,0.1,0.23,0.1,8.7,1\n");
        assert!(matches!(read_catalog_csv(bad.as_bytes()), Err(Error::Parse { line: 2, column: 19, .. })));
    }
}
