//! CSV output. Reals are written with 17 significant digits so every value
//! parses back to the same bits.

use std::path::Path;

use anyhow::{bail, Context, Result};
use ifoi_core::cases::SolveReport;

pub const CSV_HEADER: [&str; 9] = [
    "case", "method", "scheme", "n", "m", "spacing", "error", "time_s", "status",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub case: String,
    pub method: String,
    pub scheme: String,
    pub n: usize,
    pub m: usize,
    pub spacing: String,
    /// Empty unless the solve converged.
    pub error: Option<f64>,
    pub time_s: f64,
    pub status: String,
}

impl CsvRow {
    pub fn from_report(r: &SolveReport) -> Self {
        Self {
            case: r.case.to_string(),
            method: r.method.name().to_string(),
            scheme: r.params.scheme.name().to_string(),
            n: r.params.n,
            m: r.params.m,
            spacing: r.params.spacing.name().to_string(),
            error: r.sup_error,
            time_s: r.wall_time.as_secs_f64(),
            status: r.status.name().to_string(),
        }
    }

    fn record(&self) -> [String; 9] {
        [
            self.case.clone(),
            self.method.clone(),
            self.scheme.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.spacing.clone(),
            self.error.map_or_else(String::new, format_real),
            format_real(self.time_s),
            self.status.clone(),
        ]
    }
}

/// Scientific notation with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_rows<W: std::io::Write>(out: W, rows: &[CsvRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_reports(path: &Path, reports: &[SolveReport]) -> Result<()> {
    let rows: Vec<CsvRow> = reports.iter().map(CsvRow::from_report).collect();
    let file =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_rows(std::io::BufWriter::new(file), &rows)
        .with_context(|| format!("writing {}", path.display()))
}

pub fn read_rows<R: std::io::Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        bail!("unexpected CSV header {header:?}");
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let rec = record?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        let error = match field(6) {
            "" => None,
            s => Some(s.parse().with_context(|| format!("error field `{s}`"))?),
        };
        rows.push(CsvRow {
            case: field(0).to_string(),
            method: field(1).to_string(),
            scheme: field(2).to_string(),
            n: field(3).parse().context("n field")?,
            m: field(4).parse().context("m field")?,
            spacing: field(5).to_string(),
            error,
            time_s: field(7).parse().context("time_s field")?,
            status: field(8).to_string(),
        });
    }
    Ok(rows)
}

pub fn read_file(path: &Path) -> Result<Vec<CsvRow>> {
    let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_rows(file)
}
