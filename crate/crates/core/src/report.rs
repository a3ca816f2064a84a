//! Machine-readable verification reports.
//!
//! A report is a list of rows. Each row records one checked instance as a
//! pair `(lhs, rhs)` plus the comparator that decides `passed`, so every
//! row can be re-audited from its numbers alone.

use std::cmp::Ordering;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

/// CSV header, fixed.
pub const CSV_HEADER: &str = "check_id,delta,n,s,seed,lhs,rhs,passed,witness";

/// Default margin for inequalities proved strict.
pub const STRICT_MARGIN: f64 = 1e-6;
/// Default slack for non-strict inequalities.
pub const NONSTRICT_SLACK: f64 = 1e-9;
/// Default tolerance for equalities.
pub const EQUALITY_TOL: f64 = 1e-8;

/// How `passed` is derived from `(lhs, rhs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparator {
    /// `lhs < rhs - margin`
    Less { margin: f64 },
    /// `lhs <= rhs + slack`
    LessEq { slack: f64 },
    /// `lhs > rhs + margin`
    Greater { margin: f64 },
    /// `|lhs - rhs| <= tol`
    Equal { tol: f64 },
    /// `lhs < -slack || rhs == 1`: when the hypothesis value `lhs` reaches
    /// zero the conclusion flag `rhs` must be set.
    Implies { slack: f64 },
    /// Recorded finding; always passes.
    Record,
}

impl Comparator {
    pub fn holds(&self, lhs: f64, rhs: f64) -> bool {
        match *self {
            Comparator::Less { margin } => lhs < rhs - margin,
            Comparator::LessEq { slack } => lhs <= rhs + slack,
            Comparator::Greater { margin } => lhs > rhs + margin,
            Comparator::Equal { tol } => (lhs - rhs).abs() <= tol,
            Comparator::Implies { slack } => lhs < -slack || rhs == 1.0,
            Comparator::Record => true,
        }
    }
}

/// Tolerances used when building rows; overridable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub strict: f64,
    pub slack: f64,
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            strict: STRICT_MARGIN,
            slack: NONSTRICT_SLACK,
            equality: EQUALITY_TOL,
        }
    }
}

impl Tolerances {
    pub fn less(&self) -> Comparator {
        Comparator::Less { margin: self.strict }
    }
    pub fn greater(&self) -> Comparator {
        Comparator::Greater { margin: self.strict }
    }
    pub fn less_eq(&self) -> Comparator {
        Comparator::LessEq { slack: self.slack }
    }
    pub fn equal(&self) -> Comparator {
        Comparator::Equal { tol: self.equality }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params {
    pub delta: Option<u64>,
    pub n: Option<u64>,
    pub s: Option<u64>,
    pub seed: Option<u64>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }
    pub fn delta(mut self, d: usize) -> Self {
        self.delta = Some(d as u64);
        self
    }
    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n as u64);
        self
    }
    pub fn s(mut self, s: usize) -> Self {
        self.s = Some(s as u64);
        self
    }
    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub check_id: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub comparator: Comparator,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Row {
    pub fn new(check_id: impl Into<String>, params: Params, lhs: f64, rhs: f64, cmp: Comparator) -> Self {
        Row {
            check_id: check_id.into(),
            params,
            lhs,
            rhs,
            comparator: cmp,
            passed: cmp.holds(lhs, rhs),
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    /// Recomputes `passed` from the stored numbers.
    pub fn audit(&self) -> bool {
        self.passed == self.comparator.holds(self.lhs, self.rhs)
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.check_id,
            opt(self.params.delta),
            opt(self.params.n),
            opt(self.params.s),
            opt(self.params.seed),
            fmt_num(self.lhs),
            fmt_num(self.rhs),
            self.passed,
            csv_field(self.witness.as_deref().unwrap_or("")),
        )
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Row", 9)?;
        st.serialize_field("check_id", &self.check_id)?;
        st.serialize_field("delta", &self.params.delta)?;
        st.serialize_field("n", &self.params.n)?;
        st.serialize_field("s", &self.params.s)?;
        st.serialize_field("seed", &self.params.seed)?;
        st.serialize_field("lhs", &JsonNum(self.lhs))?;
        st.serialize_field("rhs", &JsonNum(self.rhs))?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// Serializes a float through [`fmt_num`] so JSON and CSV carry identical digits.
struct JsonNum(f64);

impl Serialize for JsonNum {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let v: serde_json::Number = fmt_num(self.0).parse().map_err(serde::ser::Error::custom)?;
            v.serialize(ser)
        } else {
            ser.serialize_str(&fmt_num(self.0))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct HarnessReport {
    pub rows: Vec<Row>,
}

impl HarnessReport {
    pub fn new() -> Self {
        HarnessReport::default()
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: HarnessReport) {
        self.rows.extend(other.rows);
    }

    /// Stable sort by check id, then parameters. Rows that tie keep their
    /// insertion order.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| match a.check_id.cmp(&b.check_id) {
            Ordering::Equal => a.params.cmp(&b.params),
            o => o,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.passed)
    }

    pub fn rows_for<'a>(&'a self, check_id: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.check_id == check_id)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }

    pub fn to_json_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("row serialization") + "\n")
            .collect()
    }
}

/// Formats like C's `%.12g`: twelve significant digits, trailing zeros
/// removed, exponent form outside `1e-5 <= |x| < 1e12`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    const P: i32 = 12;
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..P).contains(&exp) {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
