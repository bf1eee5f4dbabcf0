//! Verification reports and their serializations.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    PassOriented,
    PassUnoriented,
    Mismatch,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PassOriented => "pass-oriented",
            Self::PassUnoriented => "pass-unoriented",
            Self::Mismatch => "mismatch",
            Self::Unsupported => "unsupported",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Self::PassOriented | Self::PassUnoriented)
    }
}

/// One claimed cell compared against its computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub column: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub note: String,
    /// Allowlist note when the mismatch is a documented discrepancy.
    pub known: Option<String>,
}

/// One instantiation of one table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowRecord {
    pub table: String,
    pub row: String,
    pub params: String,
    pub status: Status,
    pub oriented: Option<bool>,
    pub checks: Vec<Check>,
}

impl RowRecord {
    pub fn new(table: &str, row: &str, params: String, checks: Vec<Check>) -> Self {
        let any = |s: Status| checks.iter().any(|c| c.status == s);
        let status = if any(Status::Mismatch) {
            Status::Mismatch
        } else if any(Status::PassUnoriented) {
            Status::PassUnoriented
        } else if any(Status::PassOriented) {
            Status::PassOriented
        } else {
            Status::Unsupported
        };
        let oriented = status.is_pass().then_some(status == Status::PassOriented);
        Self {
            table: table.into(),
            row: row.into(),
            params,
            status,
            oriented,
            checks,
        }
    }

    pub fn check(&self, column: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.column == column)
    }

    fn joined(&self, f: impl Fn(&Check) -> String) -> String {
        self.checks
            .iter()
            .map(|c| format!("{}={}", c.column, f(c)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn expected(&self) -> String {
        self.joined(|c| c.expected.clone())
    }

    pub fn computed(&self) -> String {
        self.joined(|c| c.computed.clone())
    }

    pub fn note(&self) -> String {
        let mut parts = Vec::new();
        for c in &self.checks {
            if let Some(k) = &c.known {
                parts.push(k.clone());
            }
            if !c.note.is_empty() {
                parts.push(format!("{}: {}", c.column, c.note));
            }
        }
        parts.join("; ")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub pass_oriented: usize,
    pub pass_unoriented: usize,
    pub mismatch: usize,
    pub unsupported: usize,
    /// Mismatched checks not covered by the allowlist.
    pub unexplained: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<RowRecord>,
}

impl VerificationReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            rows: self.rows.len(),
            ..Summary::default()
        };
        for r in &self.rows {
            match r.status {
                Status::PassOriented => s.pass_oriented += 1,
                Status::PassUnoriented => s.pass_unoriented += 1,
                Status::Mismatch => s.mismatch += 1,
                Status::Unsupported => s.unsupported += 1,
            }
        }
        s.unexplained = self.unexplained().count();
        s
    }

    /// Every check from every row, in report order.
    pub fn checks(&self) -> impl Iterator<Item = (&RowRecord, &Check)> {
        self.rows.iter().flat_map(|r| r.checks.iter().map(move |c| (r, c)))
    }

    pub fn unexplained(&self) -> impl Iterator<Item = (&RowRecord, &Check)> {
        self.checks()
            .filter(|(_, c)| c.status == Status::Mismatch && c.known.is_none())
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.unexplained().next().is_some())
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.rows.extend(other.rows);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "table", "row", "params", "expected", "computed", "status", "oriented", "note",
];

/// Serialize a report. Output depends only on the report contents.
pub fn emit_report(report: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                summary: Summary,
                rows: &'a [RowRecord],
            }
            let doc = Doc {
                summary: report.summary(),
                rows: &report.rows,
            };
            serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidData(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidData(e.to_string());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in &report.rows {
                let oriented = r.oriented.map(|o| o.to_string()).unwrap_or_default();
                w.write_record([
                    r.table.as_str(),
                    r.row.as_str(),
                    r.params.as_str(),
                    &r.expected(),
                    &r.computed(),
                    r.status.as_str(),
                    &oriented,
                    &r.note(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidData(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidData(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(status: Status) -> Check {
        Check {
            column: "Y".into(),
            expected: "L(7,1)".into(),
            computed: "L(7,1)".into(),
            status,
            note: String::new(),
            known: None,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let csv = emit_report(&VerificationReport::default(), Format::Csv).unwrap();
        assert_eq!(csv, "table,row,params,expected,computed,status,oriented,note\n");
        assert_eq!(VerificationReport::default().exit_code(), 0);
    }

    #[test]
    fn aggregation() {
        let r = RowRecord::new(
            "t",
            "1",
            String::new(),
            vec![check(Status::PassOriented), check(Status::Unsupported)],
        );
        assert_eq!((r.status, r.oriented), (Status::PassOriented, Some(true)));
        let r = RowRecord::new(
            "t",
            "1",
            String::new(),
            vec![check(Status::PassUnoriented), check(Status::Mismatch)],
        );
        assert_eq!((r.status, r.oriented), (Status::Mismatch, None));
        let report = VerificationReport { rows: vec![r] };
        assert_eq!(report.exit_code(), 1);
        let mut known = report.clone();
        known.rows[0].checks[1].known = Some("documented".into());
        assert_eq!(known.exit_code(), 0);
        assert!(known.rows[0].note().contains("documented"));
    }
}
