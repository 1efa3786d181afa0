//! Time-series record and its CSV form.
//!
//! Columns, in order: `t, x1, x2, x3, x4, x1r, dx1r, e1, e2, z1, z2, xi1,
//! xi2, u1, E, nn_out, V`, optionally followed by named diagnostic columns.
//! Floats are written in shortest round-trip decimal form.

use std::path::Path;

use crate::error::{Error, Result};

pub const BASE_COLUMNS: [&str; 17] = [
    "t", "x1", "x2", "x3", "x4", "x1r", "dx1r", "e1", "e2", "z1", "z2", "xi1", "xi2", "u1", "E", "nn_out", "V",
];

/// One logged sample of the elevation channel and the full plant state.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Record {
    pub t: f64,
    pub x: [f64; 4],
    pub x1r: f64,
    pub dx1r: f64,
    pub e1: f64,
    pub e2: f64,
    pub z1: f64,
    pub z2: f64,
    pub xi1: f64,
    pub xi2: f64,
    pub u1: f64,
    pub residual: f64,
    pub nn_out: f64,
    pub lyapunov: f64,
}

impl Record {
    fn to_row(self) -> [f64; 17] {
        let [x1, x2, x3, x4] = self.x;
        [
            self.t,
            x1,
            x2,
            x3,
            x4,
            self.x1r,
            self.dx1r,
            self.e1,
            self.e2,
            self.z1,
            self.z2,
            self.xi1,
            self.xi2,
            self.u1,
            self.residual,
            self.nn_out,
            self.lyapunov,
        ]
    }

    fn from_row(r: &[f64]) -> Self {
        Self {
            t: r[0],
            x: [r[1], r[2], r[3], r[4]],
            x1r: r[5],
            dx1r: r[6],
            e1: r[7],
            e2: r[8],
            z1: r[9],
            z2: r[10],
            xi1: r[11],
            xi2: r[12],
            u1: r[13],
            residual: r[14],
            nn_out: r[15],
            lyapunov: r[16],
        }
    }
}

/// Uniformly sampled closed-loop log.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TimeSeries {
    pub records: Vec<Record>,
    /// Names of the optional diagnostic columns.
    pub extra_columns: Vec<String>,
    /// One row of diagnostic values per record; empty when there are no extra columns.
    pub extras: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn new(extra_columns: Vec<String>) -> Self {
        Self {
            records: Vec::new(),
            extra_columns,
            extras: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn push(&mut self, record: Record, extra: Option<Vec<f64>>) {
        self.records.push(record);
        if let Some(e) = extra {
            debug_assert_eq!(e.len(), self.extra_columns.len());
            self.extras.push(e);
        }
    }

    pub fn header(&self) -> Vec<String> {
        BASE_COLUMNS
            .iter()
            .map(|s| s.to_string())
            .chain(self.extra_columns.iter().cloned())
            .collect()
    }

    /// Values of a named column, base or diagnostic.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        if let Some(i) = BASE_COLUMNS.iter().position(|c| *c == name) {
            return Some(self.records.iter().map(|r| r.to_row()[i]).collect());
        }
        let i = self.extra_columns.iter().position(|c| c == name)?;
        Some(self.extras.iter().map(|row| row[i]).collect())
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> std::result::Result<(), csv::Error> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.header())?;
        let mut fields: Vec<String> = Vec::with_capacity(BASE_COLUMNS.len() + self.extra_columns.len());
        for (i, r) in self.records.iter().enumerate() {
            fields.clear();
            fields.extend(r.to_row().iter().map(|v| v.to_string()));
            if let Some(extra) = self.extras.get(i) {
                fields.extend(extra.iter().map(|v| v.to_string()));
            }
            out.write_record(&fields)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(r: R) -> std::result::Result<Self, String> {
        let mut rdr = csv::Reader::from_reader(r);
        let header: Vec<String> = rdr
            .headers()
            .map_err(|e| e.to_string())?
            .iter()
            .map(str::to_string)
            .collect();
        if header.len() < BASE_COLUMNS.len() || header[..BASE_COLUMNS.len()] != BASE_COLUMNS {
            return Err(format!("unexpected CSV header: {}", header.join(",")));
        }
        let mut series = TimeSeries::new(header[BASE_COLUMNS.len()..].to_vec());
        for (line, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| e.to_string())?;
            let values = row
                .iter()
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<f64>, _>>()
                .map_err(|e| format!("row {}: {e}", line + 1))?;
            if values.len() != header.len() {
                return Err(format!(
                    "row {} has {} fields, expected {}",
                    line + 1,
                    values.len(),
                    header.len()
                ));
            }
            let extra = (!series.extra_columns.is_empty()).then(|| values[BASE_COLUMNS.len()..].to_vec());
            series.push(Record::from_row(&values), extra);
        }
        Ok(series)
    }
}

/// Writes `series` as CSV to `path`.
pub fn export_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    series
        .write_csv(std::io::BufWriter::new(file))
        .map_err(|source| Error::Csv {
            path: path.to_path_buf(),
            source,
        })
}

/// Reads a CSV written by [`export_csv`].
pub fn import_csv(path: &Path) -> Result<TimeSeries> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    TimeSeries::read_csv(std::io::BufReader::new(file)).map_err(|msg| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, msg),
    })
}
