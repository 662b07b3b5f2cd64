//! Wire types and renderers for the command-line output.
//!
//! Every command produces a list of per-level rows.  Rows serialize to JSON
//! with stable field order (declaration order), so repeated runs of the same
//! command are byte-identical; the CSV renderers flatten the same data into
//! one header plus data lines.  The library itself stays serialization-free:
//! these mirror types are the only place the wire format is defined.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use beauville::classifier::ClassificationReport;
use beauville::formulas::ThetaBreakdown;

/// Closed-form counts for one level.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct CountRow {
    pub n: u64,
    pub theta1: u128,
    pub theta2_prod: u128,
    pub theta3_prod: u128,
    pub theta4_prod: u128,
    pub theta: u128,
}

impl From<&ThetaBreakdown> for CountRow {
    fn from(b: &ThetaBreakdown) -> Self {
        CountRow {
            n: b.n,
            theta1: b.theta1,
            theta2_prod: b.theta2_prod,
            theta3_prod: b.theta3_prod,
            theta4_prod: b.theta4_prod,
            theta: b.theta,
        }
    }
}

/// Full matrix listing for one level.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EnumerateRow {
    pub n: u64,
    pub count: u64,
    pub matrices: Vec<[u64; 4]>,
}

/// One orbit class: lexicographically least member, orbit size, stabilizer.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct OrbitClassRow {
    pub representative: [u64; 4],
    pub orbit_size: u32,
    pub stabilizer: String,
}

/// Full classification of one level under the 72-element symmetry group.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ClassifyRow {
    pub n: u64,
    pub no_swap: bool,
    pub total_matrices: u64,
    pub theta: u64,
    pub burnside_breakdown: [u64; 9],
    pub orbit_classes: Vec<OrbitClassRow>,
    pub stabilizers: BTreeMap<String, u64>,
}

impl From<&ClassificationReport> for ClassifyRow {
    fn from(report: &ClassificationReport) -> Self {
        ClassifyRow {
            n: report.n,
            no_swap: false,
            total_matrices: report.total_matrices,
            theta: report.theta,
            burnside_breakdown: report.burnside_breakdown,
            orbit_classes: report
                .orbit_classes
                .iter()
                .map(|class| OrbitClassRow {
                    representative: class.representative.entries(),
                    orbit_size: class.orbit_size,
                    stabilizer: class.stabilizer.label().to_owned(),
                })
                .collect(),
            stabilizers: report
                .stabilizer_histogram()
                .into_iter()
                .map(|(kind, count)| (kind.label().to_owned(), count))
                .collect(),
        }
    }
}

/// Orbit count of one level under the 36-element swap-free subgroup.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct NoSwapRow {
    pub n: u64,
    pub no_swap: bool,
    pub total_matrices: u64,
    pub orbit_count: u64,
}

/// Outcome of cross-checking every counting path at one level.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct VerifyRow {
    pub n: u64,
    /// `"ok"`, `"mismatch"`, or `"skipped"`.
    pub status: String,
    /// Why the level was skipped, when it was.
    pub detail: Option<String>,
    pub theta: Option<u64>,
    pub burnside: Option<u64>,
    pub partition: Option<u64>,
    pub union_find: Option<u64>,
}

/// One line of the summary table.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TableRow {
    pub n: u64,
    pub theta1: u128,
    pub theta: u128,
    /// Orbit count from enumeration; null beyond the enumeration budget.
    pub orbits: Option<u64>,
    /// Stabilizer histogram; null beyond the enumeration budget.
    pub stabilizers: Option<BTreeMap<String, u64>>,
    /// Whether enumeration agreed with the closed form; null when not run.
    pub verified: Option<bool>,
}

/// Renders rows as pretty JSON: a single object for a single level, an array
/// for a range.
pub fn render_json<T: Serialize>(rows: &[T], single: bool) -> anyhow::Result<String> {
    let mut text = if single {
        serde_json::to_string_pretty(&rows[0])?
    } else {
        serde_json::to_string_pretty(rows)?
    };
    text.push('\n');
    Ok(text)
}

/// A row type that can flatten itself into CSV lines.
pub trait CsvRow {
    fn csv_header() -> &'static str;
    fn csv_lines(&self, out: &mut String);
}

/// Renders rows as CSV with a single header line.
pub fn render_csv<T: CsvRow>(rows: &[T]) -> String {
    let mut out = String::new();
    out.push_str(T::csv_header());
    out.push('\n');
    for row in rows {
        row.csv_lines(&mut out);
    }
    out
}

impl CsvRow for CountRow {
    fn csv_header() -> &'static str {
        "n,theta1,theta2_prod,theta3_prod,theta4_prod,theta"
    }

    fn csv_lines(&self, out: &mut String) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            self.n, self.theta1, self.theta2_prod, self.theta3_prod, self.theta4_prod, self.theta,
        ));
    }
}

impl CsvRow for EnumerateRow {
    fn csv_header() -> &'static str {
        "n,a,b,c,d"
    }

    fn csv_lines(&self, out: &mut String) {
        for m in &self.matrices {
            out.push_str(&format!("{},{},{},{},{}\n", self.n, m[0], m[1], m[2], m[3]));
        }
    }
}

impl CsvRow for ClassifyRow {
    fn csv_header() -> &'static str {
        "n,rep_a,rep_b,rep_c,rep_d,orbit_size,stabilizer"
    }

    fn csv_lines(&self, out: &mut String) {
        for class in &self.orbit_classes {
            let [a, b, c, d] = class.representative;
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.n, a, b, c, d, class.orbit_size, class.stabilizer,
            ));
        }
    }
}

impl CsvRow for NoSwapRow {
    fn csv_header() -> &'static str {
        "n,total_matrices,orbit_count"
    }

    fn csv_lines(&self, out: &mut String) {
        out.push_str(&format!(
            "{},{},{}\n",
            self.n, self.total_matrices, self.orbit_count
        ));
    }
}

impl CsvRow for VerifyRow {
    fn csv_header() -> &'static str {
        "n,status,theta,burnside,partition,union_find,detail"
    }

    fn csv_lines(&self, out: &mut String) {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            self.n,
            self.status,
            opt(self.theta),
            opt(self.burnside),
            opt(self.partition),
            opt(self.union_find),
            self.detail.as_deref().unwrap_or(""),
        ));
    }
}

impl CsvRow for TableRow {
    fn csv_header() -> &'static str {
        "n,theta1,theta,orbits,stabilizers,verified"
    }

    fn csv_lines(&self, out: &mut String) {
        let orbits = self.orbits.map(|x| x.to_string()).unwrap_or_default();
        let stabilizers = self
            .stabilizers
            .as_ref()
            .map(|hist| {
                hist.iter()
                    .map(|(kind, count)| format!("{kind}:{count}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        let verified = self.verified.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            self.n, self.theta1, self.theta, orbits, stabilizers, verified,
        ));
    }
}
