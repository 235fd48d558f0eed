use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "family",
    "n_or_l",
    "r",
    "param",
    "property",
    "estimate",
    "ci_halfwidth",
    "trials",
    "seed_lo",
    "seed_hi",
    "flags",
];

/// One (parameter point, property) estimate of a sweep.
///
/// `param` is `p` for G(n, p), `k` for geometric points (radius and node
/// count go to `flags`) and the attachment count for preferential runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub family: String,
    pub n_or_l: f64,
    pub r: usize,
    pub param: f64,
    pub property: String,
    pub estimate: f64,
    /// 95% normal-approximation binomial halfwidth.
    pub ci_halfwidth: f64,
    pub trials: usize,
    pub seed_lo: u64,
    pub seed_hi: u64,
    /// `;`-separated annotations such as `clamped` or `x=-2`.
    pub flags: String,
}

impl SweepRecord {
    pub fn flag(&self, key: &str) -> Option<&str> {
        self.flags.split(';').find_map(|f| {
            if f == key {
                Some("")
            } else {
                f.strip_prefix(key).and_then(|rest| rest.strip_prefix('='))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordFormat {
    Csv,
    Json,
}

impl RecordFormat {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => RecordFormat::Json,
            _ => RecordFormat::Csv,
        }
    }
}

/// Shortest round-trip form, padded with zeros to at least six significant digits.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let short = format!("{x}");
    let digits = short
        .chars()
        .filter(|c| c.is_ascii_digit())
        .skip_while(|&c| c == '0')
        .count();
    if digits >= 6 || short.contains('e') {
        return short;
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (5 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_records(records: &[SweepRecord], path: &Path, format: RecordFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    match format {
        RecordFormat::Json => {
            let mut w = BufWriter::new(file);
            serde_json::to_writer_pretty(&mut w, records).map_err(|e| Error::Json {
                path: path.into(),
                source: e,
            })?;
            w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
            w.flush().map_err(|e| Error::io(path, e))
        }
        RecordFormat::Csv => {
            let csv_err = |e| Error::Csv {
                path: path.into(),
                source: e,
            };
            let mut w = csv::Writer::from_writer(file);
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in records {
                w.write_record([
                    r.family.clone(),
                    format_float(r.n_or_l),
                    r.r.to_string(),
                    format_float(r.param),
                    r.property.clone(),
                    format_float(r.estimate),
                    format_float(r.ci_halfwidth),
                    r.trials.to_string(),
                    r.seed_lo.to_string(),
                    r.seed_hi.to_string(),
                    r.flags.clone(),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(|e| Error::io(path, e))
        }
    }
}

pub fn read_records(path: &Path, format: RecordFormat) -> Result<Vec<SweepRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    match format {
        RecordFormat::Json => serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Json {
            path: path.into(),
            source: e,
        }),
        RecordFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .collect::<std::result::Result<Vec<SweepRecord>, _>>()
            .map_err(|e| Error::Csv {
                path: path.into(),
                source: e,
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_pads_and_round_trips() {
        assert_eq!(format_float(0.5), "0.500000");
        assert_eq!(format_float(1.0), "1.00000");
        assert_eq!(format_float(0.0), "0.00000");
        assert_eq!(format_float(123.25), "123.250");
        assert_eq!(format_float(0.008840400012898), "0.008840400012898");
        for x in [0.1, 1.0 / 3.0, 2e-9, 12345678.0, 0.0123, 7.0e21, -0.25] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn flags_lookup() {
        let r = SweepRecord {
            family: "erdos_renyi".into(),
            n_or_l: 20.0,
            r: 2,
            param: 0.1,
            property: "r_robust".into(),
            estimate: 0.5,
            ci_halfwidth: 0.1,
            trials: 10,
            seed_lo: 0,
            seed_hi: 9,
            flags: "x=-2;clamped".into(),
        };
        assert_eq!(r.flag("x"), Some("-2"));
        assert_eq!(r.flag("clamped"), Some(""));
        assert_eq!(r.flag("radius"), None);
    }
}
