//! Serializable views of the core results. Rationals are written as exact
//! `num/den` strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use surgeul_core::lens::recursion_index;
use surgeul_core::obstruction::{SmallSlopeReport, TheoremReport, ViolationKind};
use surgeul_core::{EulTable, LensTable, ObstructionReport, Rational};

fn q(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub p: i64,
    pub q: i64,
    pub x: i64,
    pub spin_label: Option<i64>,
    pub lambda_prime_knot: String,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub label: i64,
    #[serde(rename = "T")]
    pub t: i128,
    #[serde(rename = "S")]
    pub s: String,
    pub eul_unknot: String,
    pub eul_knot: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eul_knot_decimal: Option<String>,
}

impl TableJson {
    pub fn new(table: &EulTable, decimal: Option<usize>) -> Self {
        let slope = table.slope();
        TableJson {
            p: slope.p(),
            q: slope.q(),
            x: slope.x(),
            spin_label: table.spin_label(),
            lambda_prime_knot: q(table.lambda_prime_knot()),
            rows: table
                .rows()
                .iter()
                .map(|row| RowJson {
                    label: row.label,
                    t: row.torsion,
                    s: q(&row.s),
                    eul_unknot: q(&row.eul_unknot),
                    eul_knot: q(&row.eul_knot),
                    eul_knot_decimal: decimal.map(|k| row.eul_knot.to_decimal_string(k)),
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let decimal = self.rows.iter().any(|r| r.eul_knot_decimal.is_some());
        let mut out = String::from("label,T,S,eul_unknot,eul_knot");
        if decimal {
            out.push_str(",eul_knot_decimal");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{},{},{}", r.label, r.t, r.s, r.eul_unknot, r.eul_knot);
            if let Some(d) = &r.eul_knot_decimal {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut header = vec!["label", "T", "S", "eul_unknot", "eul_knot"];
        let decimal = self.rows.iter().any(|r| r.eul_knot_decimal.is_some());
        if decimal {
            header.push("eul_knot (dec)");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut line = vec![
                    r.label.to_string(),
                    r.t.to_string(),
                    r.s.clone(),
                    r.eul_unknot.clone(),
                    r.eul_knot.clone(),
                ];
                line.extend(r.eul_knot_decimal.clone());
                line
            })
            .collect();
        let mut out = format!(
            "surgery slope {}/{}  x = {}  spin label = {}  lambda'(knot) = {}\n",
            self.p,
            self.q,
            self.x,
            self.spin_label.map_or_else(|| "-".to_string(), |s| s.to_string()),
            self.lambda_prime_knot
        );
        out.push_str(&align(&header, &cells));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensJson {
    pub p: i64,
    pub q: i64,
    pub lambda_prime: String,
    pub rows: Vec<LensRowJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensRowJson {
    pub label: i64,
    pub recursion_index: i64,
    pub d: String,
    pub eul_unknot: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_decimal: Option<String>,
}

impl LensJson {
    pub fn new(table: &LensTable, decimal: Option<usize>) -> Self {
        let params = table.params();
        LensJson {
            p: params.p(),
            q: params.q(),
            lambda_prime: q(&table.lambda_prime()),
            rows: (0..params.p())
                .map(|l| LensRowJson {
                    label: l,
                    recursion_index: recursion_index(params, l),
                    d: q(table.d(l)),
                    eul_unknot: q(&table.eul(l)),
                    d_decimal: decimal.map(|k| table.d(l).to_decimal_string(k)),
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let decimal = self.rows.iter().any(|r| r.d_decimal.is_some());
        let mut out = String::from("label,recursion_index,d,eul_unknot");
        if decimal {
            out.push_str(",d_decimal");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{},{}", r.label, r.recursion_index, r.d, r.eul_unknot);
            if let Some(d) = &r.d_decimal {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut header = vec!["label", "index", "d", "eul_unknot"];
        if self.rows.iter().any(|r| r.d_decimal.is_some()) {
            header.push("d (dec)");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut line = vec![
                    r.label.to_string(),
                    r.recursion_index.to_string(),
                    r.d.clone(),
                    r.eul_unknot.clone(),
                ];
                line.extend(r.d_decimal.clone());
                line
            })
            .collect();
        let mut out = format!(
            "lens space L({}, {})  lambda' = {}\n",
            self.p, self.q, self.lambda_prime
        );
        out.push_str(&align(&header, &cells));
        out
    }
}

/// Input of the `obstruct` subcommand. Entries may be `"num/den"` strings or
/// JSON integers.
#[derive(Debug, Clone, Deserialize)]
pub struct DFile {
    pub d: Vec<DValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum DValue {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionJson {
    pub p: i64,
    pub q: i64,
    pub verdict: String,
    pub witness_shift: Option<i64>,
    pub shift: i64,
    pub reflected: bool,
    pub t_sequence: BTreeMap<u64, String>,
    pub reconstructed_alexander: Option<Vec<i64>>,
    pub violations: Vec<ViolationJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub label: i64,
    pub kind: &'static str,
    pub expected: Option<String>,
    pub actual: String,
}

fn kind_name(kind: ViolationKind) -> &'static str {
    match kind {
        ViolationKind::NonInteger => "non-integer",
        ViolationKind::Asymmetric => "asymmetric",
        ViolationKind::Negative => "negative",
        ViolationKind::Mismatch => "mismatch",
    }
}

impl ObstructionJson {
    pub fn new(p: i64, q_: i64, report: &ObstructionReport) -> Self {
        ObstructionJson {
            p,
            q: q_,
            verdict: report.verdict.to_string(),
            witness_shift: report.witness_shift(),
            shift: report.identification.shift,
            reflected: report.reflected(),
            t_sequence: report.t_sequence.iter().map(|(k, v)| (*k, q(v))).collect(),
            reconstructed_alexander: report.reconstructed.as_ref().map(|a| a.coeffs().to_vec()),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationJson {
                    label: v.label,
                    kind: kind_name(v.kind),
                    expected: v.expected.as_ref().map(q),
                    actual: q(&v.actual),
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,kind,expected,actual\n");
        for v in &self.violations {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                v.label,
                v.kind,
                v.expected.as_deref().unwrap_or(""),
                v.actual
            );
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = format!("slope {}/{}: {}\n", self.p, self.q, self.verdict);
        let ident = if self.reflected { "l -> shift - l" } else { "l -> shift + l" };
        let _ = writeln!(
            out,
            "{} identification: {ident}, shift = {}",
            if self.witness_shift.is_some() { "witness" } else { "closest" },
            self.shift
        );
        let ts: Vec<String> = self.t_sequence.iter().map(|(i, t)| format!("t_{i} = {t}")).collect();
        let _ = writeln!(out, "torsion coefficients: {}", ts.join(", "));
        if let Some(a) = &self.reconstructed_alexander {
            let coeffs: Vec<String> = a.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "Alexander coefficients: {}", coeffs.join(","));
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "  label {}: {} (expected {}, got {})",
                v.label,
                v.kind,
                v.expected.as_deref().unwrap_or("-"),
                v.actual
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerifyEntry {
    Theorem {
        p: i64,
        q: i64,
        n: i64,
        r: i64,
        passed: bool,
        failures: Vec<WindowJson>,
    },
    SmallSlope {
        p: i64,
        q: i64,
        expected: String,
        passed: bool,
        at_minus_one: bool,
        floor_or_ceil: bool,
        nonzero_labels: Vec<i64>,
    },
    Skipped {
        p: i64,
        q: i64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowJson {
    pub i: i64,
    pub label: i64,
    pub expected: String,
    pub actual: String,
}

impl VerifyEntry {
    pub fn theorem(p: i64, q_: i64, report: &TheoremReport) -> Self {
        VerifyEntry::Theorem {
            p,
            q: q_,
            n: report.n,
            r: report.r,
            passed: report.passed(),
            failures: report
                .checks
                .iter()
                .filter(|c| !c.holds())
                .map(|c| WindowJson {
                    i: c.i,
                    label: c.label,
                    expected: format!("{}/1", c.expected),
                    actual: q(&c.actual),
                })
                .collect(),
        }
    }

    pub fn small_slope(p: i64, q_: i64, report: &SmallSlopeReport) -> Self {
        VerifyEntry::SmallSlope {
            p,
            q: q_,
            expected: format!("{}/1", report.expected),
            passed: report.passed,
            at_minus_one: report.at_minus_one,
            floor_or_ceil: report.floor_or_ceil,
            nonzero_labels: report.nonzero_labels.clone(),
        }
    }

    pub fn passed(&self) -> Option<bool> {
        match self {
            VerifyEntry::Theorem { passed, .. } | VerifyEntry::SmallSlope { passed, .. } => {
                Some(*passed)
            }
            VerifyEntry::Skipped { .. } => None,
        }
    }

    fn pretty_line(&self) -> String {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        match self {
            VerifyEntry::Theorem { p, q, n, r, passed, failures } => {
                let mut line = format!("{p}/{q} n={n} r={r} {}", mark(*passed));
                for f in failures {
                    let _ = write!(
                        line,
                        "\n  i={} label={}: expected {}, got {}",
                        f.i, f.label, f.expected, f.actual
                    );
                }
                line
            }
            VerifyEntry::SmallSlope { p, q, expected, passed, nonzero_labels, .. } => {
                format!(
                    "{p}/{q} small slope {} (expected {expected} at label {}, nonzero at {:?})",
                    mark(*passed),
                    p - 1,
                    nonzero_labels
                )
            }
            VerifyEntry::Skipped { p, q, reason } => format!("{p}/{q} skipped: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyJson {
    pub knot: Vec<i64>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub results: Vec<VerifyEntry>,
}

impl VerifyJson {
    pub fn new(knot: Vec<i64>, results: Vec<VerifyEntry>) -> Self {
        let count = |want: Option<bool>| results.iter().filter(|e| e.passed() == want).count();
        VerifyJson {
            knot,
            passed: count(Some(true)),
            failed: count(Some(false)),
            skipped: count(None),
            results,
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for e in &self.results {
            out.push_str(&e.pretty_line());
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.passed, self.failed, self.skipped
        );
        out
    }
}

fn align(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}
