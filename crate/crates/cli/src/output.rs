//! Output records. JSON is one compact record per line; every integer is a
//! decimal string and every index is 1-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tangent_forge::verify::NumericCheck;
use tangent_forge::{
    Assignment, EqualSums, NumericSolution, Power, Sign, SignedEntry, SymbolicSolution, TrivialPair,
    VerificationReport, Witness,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    SymbolicSolution,
    NumericSolution,
    Verification,
    OracleSet,
    Reproduction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub kind: Kind,
    pub payload: Value,
}

impl OutputRecord {
    pub fn new<P: Serialize>(kind: Kind, payload: &P) -> OutputRecord {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            kind,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn join(v: &[String]) -> String {
    v.join(", ")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TemplatePayload {
    pub case: u8,
    pub alpha: usize,
    pub base: Vec<String>,
    pub direction: Vec<String>,
}

impl TemplatePayload {
    fn from_pair(pair: &TrivialPair) -> TemplatePayload {
        let render = |row: &[SignedEntry]| row.iter().map(ToString::to_string).collect();
        TemplatePayload {
            case: pair.case_label(),
            alpha: pair.alpha(),
            base: render(pair.base()),
            direction: render(pair.direction()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryPayload {
    pub name: String,
    pub formula: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Coincidence {
    pub left: String,
    pub right: String,
    pub sign: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolicCheckPayload {
    pub residual_k1: String,
    pub residual_k3: String,
    pub k1_ok: bool,
    pub k3_ok: bool,
    pub zero_entries: Vec<String>,
    pub coincidences: Vec<Coincidence>,
    pub nontrivial: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolicPayload {
    pub t1: usize,
    pub t2: usize,
    pub m: String,
    pub n: String,
    pub left_templates: TemplatePayload,
    pub right_templates: TemplatePayload,
    pub a: String,
    pub b: String,
    pub xs: Vec<EntryPayload>,
    pub ys: Vec<EntryPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<SymbolicCheckPayload>,
}

/// `base*B + direction*A` with zero terms dropped.
fn entry_formula(base: SignedEntry, direction: SignedEntry) -> String {
    let term = |e: SignedEntry, name: &str| match e {
        SignedEntry::Zero => None,
        SignedEntry::Var(s, v) => Some((s, format!("{v}*{name}"))),
    };
    let terms: Vec<_> = [term(base, "B"), term(direction, "A")].into_iter().flatten().collect();
    let mut out = String::new();
    for (i, (sign, body)) in terms.iter().enumerate() {
        match (i, sign) {
            (0, Sign::Plus) => {}
            (0, Sign::Minus) => out.push('-'),
            (_, Sign::Plus) => out.push_str(" + "),
            (_, Sign::Minus) => out.push_str(" - "),
        }
        out.push_str(body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn entries(prefix: &str, pair: &TrivialPair, values: &[tangent_forge::Polynomial]) -> Vec<EntryPayload> {
    pair.base()
        .iter()
        .zip(pair.direction())
        .zip(values)
        .enumerate()
        .map(|(i, ((b, d), v))| EntryPayload {
            name: format!("{prefix}'{}", i + 1),
            formula: entry_formula(*b, *d),
            value: v.to_string(),
        })
        .collect()
}

fn entry_name(side: tangent_forge::Side, i: usize) -> String {
    match side {
        tangent_forge::Side::Left => format!("x'{}", i + 1),
        tangent_forge::Side::Right => format!("y'{}", i + 1),
    }
}

fn sign_str(s: Sign) -> String {
    match s {
        Sign::Plus => "+".into(),
        Sign::Minus => "-".into(),
    }
}

impl SymbolicCheckPayload {
    pub fn from_report(r: &VerificationReport) -> SymbolicCheckPayload {
        let nt = &r.nontriviality;
        let mut coincidences: Vec<Coincidence> = nt
            .same_side
            .iter()
            .map(|c| Coincidence {
                left: entry_name(c.side, c.i),
                right: entry_name(c.side, c.j),
                sign: sign_str(c.sign),
            })
            .collect();
        coincidences.extend(nt.cross_side.iter().map(|c| Coincidence {
            left: entry_name(tangent_forge::Side::Left, c.i),
            right: entry_name(tangent_forge::Side::Right, c.j),
            sign: sign_str(c.sign),
        }));
        SymbolicCheckPayload {
            residual_k1: r.residual_k1.to_string(),
            residual_k3: r.residual_k3.to_string(),
            k1_ok: r.k1_ok,
            k3_ok: r.k3_ok,
            zero_entries: nt.zero_entries().into_iter().map(|(s, i)| entry_name(s, i)).collect(),
            coincidences,
            nontrivial: r.is_nontrivial_solution(),
        }
    }
}

impl SymbolicPayload {
    pub fn new(sol: &SymbolicSolution, report: Option<&VerificationReport>) -> SymbolicPayload {
        let spec = sol.spec();
        SymbolicPayload {
            t1: spec.t1(),
            t2: spec.t2(),
            m: spec.m_poly().to_string(),
            n: spec.n_poly().to_string(),
            left_templates: TemplatePayload::from_pair(sol.left()),
            right_templates: TemplatePayload::from_pair(sol.right()),
            a: sol.a().to_string(),
            b: sol.b().to_string(),
            xs: entries("x", sol.left(), sol.xs()),
            ys: entries("y", sol.right(), sol.ys()),
            verification: report.map(SymbolicCheckPayload::from_report),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "m*(x1^k + ... + x{}^k) = n*(y1^k + ... + y{}^k), k = 1, 3", self.t1, self.t2);
        let _ = writeln!(out, "m = {}, n = {}", self.m, self.n);
        for (side, t) in [("left", &self.left_templates), ("right", &self.right_templates)] {
            let _ = writeln!(out, "{side} templates (case {}, alpha {}):", t.case, t.alpha);
            let _ = writeln!(out, "  base:      ({})", join(&t.base));
            let _ = writeln!(out, "  direction: ({})", join(&t.direction));
        }
        let _ = writeln!(out, "A = {}", self.a);
        let _ = writeln!(out, "B = {}", self.b);
        for e in self.xs.iter().chain(&self.ys) {
            let _ = writeln!(out, "{} = {} = {}", e.name, e.formula, e.value);
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(out, "k=1 residual: {} ({})", v.residual_k1, ok_word(v.k1_ok));
            let _ = writeln!(out, "k=3 residual: {} ({})", v.residual_k3, ok_word(v.k3_ok));
            if !v.zero_entries.is_empty() {
                let _ = writeln!(out, "zero entries: {}", v.zero_entries.join(", "));
            }
            for c in &v.coincidences {
                let _ = writeln!(out, "coincidence: {} = {}{}", c.left, if c.sign == "-" { "-" } else { "" }, c.right);
            }
            let _ = writeln!(out, "nontrivial: {}", v.nontrivial);
        }
        out
    }
}

fn ok_word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqualSumsPayload {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl EqualSumsPayload {
    pub fn new(s: &EqualSums) -> EqualSumsPayload {
        EqualSumsPayload { lhs: strings(&s.lhs), rhs: strings(&s.rhs) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumericPayload {
    pub m: String,
    pub n: String,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub source: BTreeMap<String, String>,
    pub normalized: bool,
    pub primitive_gcd: String,
    pub height: String,
    pub degenerate: bool,
    pub collapsed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal_sums: Option<EqualSumsPayload>,
}

fn source_map(a: &Assignment) -> BTreeMap<String, String> {
    a.iter().map(|(v, x)| (v.to_string(), x.to_string())).collect()
}

impl NumericPayload {
    pub fn new(s: &NumericSolution, equal_sums: Option<&EqualSums>) -> NumericPayload {
        let t = s.tuple();
        NumericPayload {
            m: t.m.to_string(),
            n: t.n.to_string(),
            xs: strings(&t.xs),
            ys: strings(&t.ys),
            source: source_map(s.source()),
            normalized: s.normalized(),
            primitive_gcd: s.primitive_gcd().to_string(),
            height: s.height().to_string(),
            degenerate: s.degenerate(),
            collapsed: s.trivially_collapsed(),
            equal_sums: equal_sums.map(EqualSumsPayload::new),
        }
    }

    /// One line: `m=1 n=1 (x | y) from p1=..`.
    pub fn to_text_line(&self) -> String {
        let mut out = format!("m={} n={} ({} | {})", self.m, self.n, join(&self.xs), join(&self.ys));
        if !self.source.is_empty() {
            let src: Vec<String> = self.source.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " from {}", src.join(","));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.to_text_line());
        if self.normalized {
            let _ = writeln!(out, "normalized: divided by {}", self.primitive_gcd);
        }
        let _ = writeln!(out, "height: {}", self.height);
        if self.degenerate {
            let _ = writeln!(out, "degenerate: A or B vanishes");
        } else if self.collapsed {
            let _ = writeln!(out, "collapsed: a zero entry or a repeated absolute value");
        }
        if let Some(s) = &self.equal_sums {
            let _ = writeln!(out, "{} = {}", power_line(&s.lhs, 3), power_line(&s.rhs, 3));
            let _ = writeln!(out, "{} = {}", power_line(&s.lhs, 1), power_line(&s.rhs, 1));
        }
        out
    }
}

/// `5^3+11^3+28^3`, or `5+11+28` for k = 1.
pub fn power_line(values: &[String], k: u32) -> String {
    if values.is_empty() {
        return "0".into();
    }
    values.iter().map(|v| if k == 1 { v.clone() } else { format!("{v}^{k}") }).collect::<Vec<_>>().join("+")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckPayload {
    pub k: u32,
    pub ok: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationPayload {
    pub m: String,
    pub n: String,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub checks: Vec<CheckPayload>,
    pub ok: bool,
}

impl VerificationPayload {
    pub fn new(t: &tangent_forge::NumericTuple, checks: &[(Power, NumericCheck)]) -> VerificationPayload {
        VerificationPayload {
            m: t.m.to_string(),
            n: t.n.to_string(),
            xs: strings(&t.xs),
            ys: strings(&t.ys),
            checks: checks
                .iter()
                .map(|(k, c)| CheckPayload {
                    k: k.exponent(),
                    ok: c.ok,
                    lhs: c.lhs.to_string(),
                    rhs: c.rhs.to_string(),
                })
                .collect(),
            ok: checks.iter().all(|(_, c)| c.ok),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("m={} n={} ({} | {})\n", self.m, self.n, join(&self.xs), join(&self.ys));
        for c in &self.checks {
            let rel = if c.ok { "=" } else { "!=" };
            let _ = writeln!(out, "k={}: {} {rel} {} ({})", c.k, c.lhs, c.rhs, ok_word(c.ok));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessPayload {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OraclePayload {
    pub m: String,
    pub n: String,
    pub t1: usize,
    pub t2: usize,
    pub bound: String,
    pub work_estimate: String,
    pub count: usize,
    pub witnesses: Vec<WitnessPayload>,
}

impl OraclePayload {
    pub fn new(cfg: &tangent_forge::OracleConfig, found: &std::collections::BTreeSet<Witness>) -> OraclePayload {
        let s = |v: &[u64]| v.iter().map(ToString::to_string).collect();
        OraclePayload {
            m: cfg.m.to_string(),
            n: cfg.n.to_string(),
            t1: cfg.t1,
            t2: cfg.t2,
            bound: cfg.bound.to_string(),
            work_estimate: cfg.work_estimate().to_string(),
            count: found.len(),
            witnesses: found.iter().map(|w| WitnessPayload { lhs: s(&w.lhs), rhs: s(&w.rhs) }).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} witnesses with m={} n={} t1={} t2={} entries in 1..={}\n",
            self.count, self.m, self.n, self.t1, self.t2, self.bound
        );
        for w in &self.witnesses {
            let _ = writeln!(out, "({} | {})", join(&w.lhs), join(&w.rhs));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonPayload {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproductionPayload {
    pub example: String,
    pub lines: Vec<String>,
    pub comparisons: Vec<ComparisonPayload>,
    pub ok: bool,
}

impl ReproductionPayload {
    pub fn mismatches(&self) -> impl Iterator<Item = &ComparisonPayload> {
        self.comparisons.iter().filter(|c| !c.ok)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        let failed = self.mismatches().count();
        let _ = writeln!(
            out,
            "{}: {} of {} comparisons match",
            self.example,
            self.comparisons.len() - failed,
            self.comparisons.len()
        );
        for c in self.mismatches() {
            let _ = writeln!(out, "  {}: expected {}, got {}", c.label, c.expected, c.actual);
        }
        out
    }
}
