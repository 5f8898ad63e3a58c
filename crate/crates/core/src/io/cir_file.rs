use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::{fmt_linear, Document, Record};
use crate::cir::{Cir, CirMeta, Tap};
use crate::svmodel::ScenarioKey;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const COLUMNS: [&str; 4] = ["scan_id", "delay_ns", "real", "imag"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirHeader {
    pub format_version: u32,
    pub sample_spacing_ns: f64,
    pub window_ns: f64,
    pub n_scans: usize,
    pub seed: Option<u64>,
    pub scenario: Option<ScenarioKey>,
}

/// An ensemble of scans sharing one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CirFile {
    pub header: CirHeader,
    pub scans: Vec<Cir>,
}

impl CirFile {
    /// Wraps scans that share a grid; scan metadata is set from the header.
    pub fn new(mut scans: Vec<Cir>, seed: Option<u64>, scenario: Option<ScenarioKey>) -> Result<Self> {
        let first = scans
            .first()
            .ok_or_else(|| Error::InvalidParameter("a CIR file needs at least one scan".into()))?;
        let header = CirHeader {
            format_version: FORMAT_VERSION,
            sample_spacing_ns: first.sample_spacing_ns,
            window_ns: first.window_ns,
            n_scans: scans.len(),
            seed,
            scenario,
        };
        for (i, scan) in scans.iter_mut().enumerate() {
            if scan.sample_spacing_ns != header.sample_spacing_ns || scan.window_ns != header.window_ns {
                return Err(Error::GridMismatch(format!("scan {i} differs from scan 0")));
            }
            scan.meta = Some(CirMeta {
                seed: seed.unwrap_or(0),
                scan_index: i as u64,
                key: scenario,
            });
        }
        Ok(Self { header, scans })
    }
}

pub fn write_cir_file<W: Write>(mut w: W, file: &CirFile) -> Result<()> {
    let h = &file.header;
    writeln!(w, "# format_version={}", h.format_version)?;
    writeln!(w, "# sample_spacing_ns={}", h.sample_spacing_ns)?;
    writeln!(w, "# window_ns={}", h.window_ns)?;
    writeln!(w, "# n_scans={}", h.n_scans)?;
    writeln!(w, "# seed={}", h.seed.map(|s| s.to_string()).unwrap_or_default())?;
    writeln!(w, "# scenario={}", h.scenario.map(|k| k.to_string()).unwrap_or_default())?;
    writeln!(w, "{}", COLUMNS.join(","))?;
    for (i, scan) in file.scans.iter().enumerate() {
        for tap in &scan.taps {
            writeln!(
                w,
                "{i},{},{},{}",
                fmt_linear(tap.delay_ns),
                fmt_linear(tap.amplitude.re),
                fmt_linear(tap.amplitude.im)
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

fn required<'a>(doc: &'a Document, key: &str) -> Result<(usize, &'a str)> {
    doc.meta(key)
        .ok_or_else(|| Error::parse(1, 1, format!("missing header entry '{key}'")))
}

fn meta_value<T: std::str::FromStr>(doc: &Document, key: &str) -> Result<T> {
    let (line, v) = required(doc, key)?;
    v.parse()
        .map_err(|_| Error::parse(line, 1, format!("invalid {key} '{v}'")))
}

pub fn read_cir_file<R: BufRead>(reader: R) -> Result<CirFile> {
    let doc = Document::read(reader)?;
    let format_version: u32 = meta_value(&doc, "format_version")?;
    if format_version != FORMAT_VERSION {
        let (line, _) = required(&doc, "format_version")?;
        return Err(Error::parse(line, 1, format!("unsupported format version {format_version}")));
    }
    let sample_spacing_ns: f64 = meta_value(&doc, "sample_spacing_ns")?;
    let window_ns: f64 = meta_value(&doc, "window_ns")?;
    let n_scans: usize = meta_value(&doc, "n_scans")?;
    let seed = match doc.meta("seed") {
        Some((_, "")) | None => None,
        Some(_) => Some(meta_value::<u64>(&doc, "seed")?),
    };
    let scenario = match doc.meta("scenario") {
        Some((_, "")) | None => None,
        Some((line, v)) => Some(
            v.parse::<ScenarioKey>()
                .map_err(|e| Error::parse(line, 1, e.to_string()))?,
        ),
    };
    doc.expect_columns(&COLUMNS)?;

    let mut taps: Vec<Vec<Tap>> = vec![Vec::new(); n_scans];
    let mut prev: Option<(usize, f64)> = None;
    for (line, text) in &doc.rows {
        let rec = Record::new(*line, text);
        rec.expect_len(COLUMNS.len())?;
        let scan: usize = rec.parse(0, "scan_id")?;
        if scan >= n_scans {
            return Err(rec.error(0, format!("scan_id {scan} not below n_scans = {n_scans}")));
        }
        let delay: f64 = rec.parse(1, "delay_ns")?;
        if !(delay >= 0.0 && delay <= window_ns) {
            return Err(rec.error(1, format!("delay {delay} ns outside the window")));
        }
        if let Some((ps, pd)) = prev {
            if scan < ps || (scan == ps && delay <= pd) {
                return Err(rec.error(0, "rows must be sorted by scan_id and strictly increasing delay"));
            }
        }
        prev = Some((scan, delay));
        let re: f64 = rec.parse(2, "real part")?;
        let im: f64 = rec.parse(3, "imaginary part")?;
        taps[scan].push(Tap::new(delay, Complex64::new(re, im)));
    }
    let scans = taps
        .into_iter()
        .map(|t| Cir::new(t, sample_spacing_ns, window_ns))
        .collect::<Result<Vec<_>>>()?;
    let mut file = CirFile::new(scans, seed, scenario)?;
    file.header.format_version = format_version;
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antenna::Orientation;
    use crate::svmodel::{catalog_lookup, synthesize_ensemble, Distance, Receiver, Scenario, SynthesisConfig};

    fn write(file: &CirFile) -> Vec<u8> {
        let mut out = Vec::new();
        write_cir_file(&mut out, file).unwrap();
        out
    }

    #[test]
    fn roundtrip_is_stable_at_nine_digits() {
        let key = ScenarioKey::new(Scenario::HoverOpen, Receiver::Rx2, Orientation::VH, Distance::X30);
        let scans = synthesize_ensemble(&catalog_lookup(&key), &SynthesisConfig::default(), 20, 5).unwrap();
        let file = CirFile::new(scans, Some(5), Some(key)).unwrap();
        let bytes = write(&file);
        let back = read_cir_file(&bytes[..]).unwrap();
        assert_eq!(back.header, file.header);
        assert_eq!(write(&back), bytes);
        for (a, b) in file.scans.iter().zip(&back.scans) {
            assert_eq!(a.taps.len(), b.taps.len());
            for (x, y) in a.taps.iter().zip(&b.taps) {
                assert!((x.delay_ns - y.delay_ns).abs() <= 5e-9 * x.delay_ns.abs());
                assert!((x.amplitude.re - y.amplitude.re).abs() <= 5e-9 * x.amplitude.re.abs());
            }
            assert!(b.is_cross_polarized());
        }
    }

    #[test]
    fn empty_scans_survive() {
        let scans = vec![
            Cir::from_taps(vec![Tap::real(1.0, 0.5)]).unwrap(),
            Cir::from_taps(vec![]).unwrap(),
            Cir::from_taps(vec![Tap::real(0.0, 1.0)]).unwrap(),
        ];
        let file = CirFile::new(scans, None, None).unwrap();
        let back = read_cir_file(&write(&file)[..]).unwrap();
        assert_eq!(back.scans.len(), 3);
        assert!(back.scans[1].is_empty());
        assert_eq!(back.header.seed, None);
    }

    fn parse_error(text: &str) -> (usize, usize) {
        match read_cir_file(text.as_bytes()) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    const HEADER: &str = "# format_version=1\n# sample_spacing_ns=0.06\n# window_ns=100\n# n_scans=2\n# seed=1\n# scenario=\nscan_id,delay_ns,real,imag\n";

    #[test]
    fn diagnostics_point_at_the_field() {
        assert_eq!(parse_error(&format!("{HEADER}0,1.0,abc,0\n")), (8, 7));
        assert_eq!(parse_error(&format!("{HEADER}0,1.0,1,0\n0,0.5,1,0\n")), (9, 1));
        assert_eq!(parse_error(&format!("{HEADER}5,1.0,1,0\n")), (8, 1));
        assert_eq!(parse_error(&format!("{HEADER}0,1.0,1\n")), (8, 1));
        assert_eq!(parse_error(&format!("{HEADER}0,101,1,0\n")), (8, 3));
        assert_eq!(parse_error(&HEADER.replace("n_scans=2", "n_scans=x")), (4, 1));
        assert_eq!(parse_error(&HEADER.replace("scan_id,", "id,")), (7, 1));
        assert_eq!(parse_error(&HEADER.replace("scenario=", "scenario=indoor")), (6, 1));
    }
}
