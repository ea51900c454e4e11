//! Flat per-candidate records: the one shape shared by the table, CSV and
//! line-delimited JSON outputs. A field is empty exactly when the pipeline
//! stage producing it was never reached.

use scroll_core::{EnumReport, Outcome};
use serde::Serialize;

/// Bumped whenever the record layout changes; carried by every JSON line
/// and by the sweep checkpoint header.
pub const SCHEMA_VERSION: u32 = 1;

/// How far a candidate travelled through the pipeline. Rejecting stages
/// name the filter the candidate failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stage {
    Raw,
    LowDegree,
    Divisibility,
    Euler,
    Noether,
    Accepted,
}

impl Stage {
    pub fn label(self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::LowDegree => "low-degree",
            Stage::Divisibility => "divisibility",
            Stage::Euler => "euler",
            Stage::Noether => "noether",
            Stage::Accepted => "accepted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OutputRecord {
    pub n: u64,
    pub q: String,
    pub d: String,
    pub e2: String,
    pub divisor: String,
    pub stage_reached: Stage,
    pub classification: Option<&'static str>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub k_sq: Option<String>,
    pub euler: Option<String>,
    pub chi: Option<String>,
    pub genus: Option<String>,
    pub cast_bound: Option<String>,
}

pub const CSV_HEADER: &str =
    "n,q,d,e2,divisor,stage_reached,classification,a,b,k_sq,euler,chi,genus,cast_bound";

/// Wire shape of one JSON line; field order is the CSV column order with
/// the schema version up front.
#[derive(Serialize)]
struct JsonRecord<'a> {
    schema: u32,
    n: u64,
    q: &'a str,
    d: &'a str,
    e2: &'a str,
    divisor: &'a str,
    stage_reached: &'a str,
    classification: Option<&'a str>,
    a: Option<&'a str>,
    b: Option<&'a str>,
    k_sq: Option<&'a str>,
    euler: Option<&'a str>,
    chi: Option<&'a str>,
    genus: Option<&'a str>,
    cast_bound: Option<&'a str>,
}

impl OutputRecord {
    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.q,
            self.d,
            self.e2,
            self.divisor,
            self.stage_reached.label(),
            self.classification.unwrap_or(""),
            opt(&self.a),
            opt(&self.b),
            opt(&self.k_sq),
            opt(&self.euler),
            opt(&self.chi),
            opt(&self.genus),
            opt(&self.cast_bound),
        )
    }

    pub fn to_json(&self) -> String {
        let record = JsonRecord {
            schema: SCHEMA_VERSION,
            n: self.n,
            q: &self.q,
            d: &self.d,
            e2: &self.e2,
            divisor: &self.divisor,
            stage_reached: self.stage_reached.label(),
            classification: self.classification,
            a: self.a.as_deref(),
            b: self.b.as_deref(),
            k_sq: self.k_sq.as_deref(),
            euler: self.euler.as_deref(),
            chi: self.chi.as_deref(),
            genus: self.genus.as_deref(),
            cast_bound: self.cast_bound.as_deref(),
        };
        serde_json::to_string(&record).expect("record serialization cannot fail")
    }
}

/// One record per raw candidate, in the report's (degree-sorted) order.
pub fn records_for(report: &EnumReport) -> Vec<OutputRecord> {
    report
        .candidates
        .iter()
        .map(|(pair, outcome)| {
            let mut record = OutputRecord {
                n: pair.n,
                q: pair.q.to_string(),
                d: pair.d.to_string(),
                e2: pair.e2.to_string(),
                divisor: pair.t.to_string(),
                stage_reached: Stage::Raw,
                classification: None,
                a: None,
                b: None,
                k_sq: None,
                euler: None,
                chi: None,
                genus: None,
                cast_bound: None,
            };
            match outcome {
                Outcome::Raw => {}
                Outcome::LowDegree(class) => {
                    record.stage_reached = Stage::LowDegree;
                    record.classification = Some(class.label());
                }
                Outcome::RejectedDivisibility(rej) => {
                    record.stage_reached = Stage::Divisibility;
                    record.a = Some(rej.a.to_string());
                    record.b = Some(rej.b.to_string());
                }
                Outcome::RejectedEuler { a, b, k_sq } => {
                    record.stage_reached = Stage::Euler;
                    record.a = Some(a.to_string());
                    record.b = Some(b.to_string());
                    record.k_sq = Some(k_sq.to_string());
                }
                Outcome::RejectedNoether { a, b, k_sq, euler } => {
                    record.stage_reached = Stage::Noether;
                    record.a = Some(a.to_string());
                    record.b = Some(b.to_string());
                    record.k_sq = Some(k_sq.to_string());
                    record.euler = Some(euler.to_string());
                }
                Outcome::Accepted(inv, class) => {
                    record.stage_reached = Stage::Accepted;
                    record.classification = Some(class.label());
                    record.a = Some(inv.a.to_string());
                    record.b = Some(inv.b.to_string());
                    record.k_sq = Some(inv.k_sq.to_string());
                    record.euler = Some(inv.euler.to_string());
                    record.chi = Some(inv.chi.to_string());
                    record.genus = inv.genus.as_ref().map(|g| g.to_string());
                    record.cast_bound = Some(inv.cast_bound.to_string());
                }
            }
            record
        })
        .collect()
}

/// Human-readable aligned table.
pub fn render_table(records: &[OutputRecord]) -> String {
    let headers: Vec<&str> = CSV_HEADER.split(',').collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| r.to_csv().split(',').map(str::to_string).collect())
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], widths: &[usize]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}", w = w))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    out.push_str(&render_row(&header_cells, &widths));
    out.push('\n');
    for row in &rows {
        out.push_str(&render_row(row, &widths));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use scroll_core::{enumerate_n, EnumOptions};

    #[test]
    fn csv_and_json_carry_identical_values() {
        let report = enumerate_n(11, &EnumOptions::default());
        for record in records_for(&report) {
            let csv = record.to_csv();
            let csv_cells: Vec<&str> = csv.split(',').collect();
            let json: serde_json::Value = serde_json::from_str(&record.to_json()).unwrap();
            for (header, cell) in CSV_HEADER.split(',').zip(&csv_cells) {
                let value = &json[header];
                let json_text = match value {
                    serde_json::Value::Null => String::new(),
                    serde_json::Value::Number(v) => v.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    other => panic!("unexpected JSON shape {other}"),
                };
                assert_eq!(&json_text, cell, "field {header}");
            }
        }
    }

    #[test]
    fn fields_are_empty_exactly_below_the_reached_stage() {
        let report = enumerate_n(11, &EnumOptions::default());
        for record in records_for(&report) {
            match record.stage_reached {
                Stage::Raw | Stage::LowDegree => {
                    assert!(record.a.is_none() && record.k_sq.is_none());
                }
                Stage::Divisibility => {
                    assert!(record.a.is_some() && record.k_sq.is_none());
                }
                Stage::Euler => {
                    assert!(record.k_sq.is_some() && record.euler.is_none());
                }
                Stage::Noether => {
                    assert!(record.euler.is_some() && record.chi.is_none());
                }
                Stage::Accepted => {
                    assert!(record.chi.is_some() && record.cast_bound.is_some());
                    assert!(record.classification.is_some());
                }
            }
        }
    }
}
