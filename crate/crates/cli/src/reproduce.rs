use std::fmt::Write as _;
use std::time::Instant;

use oriented_ideal::betti::BettiConfig;
use oriented_ideal::formulas::{Analysis, FormulaValue};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::fixtures::{fixtures, Fixture, Quantity};
use crate::report::{observed, power_report, render_value, NamedFormula, OracleOutcome};
use crate::Outcome;

/// Floor for the lattice cap here: the cube of the five-vertex graph is the
/// largest computation among the fixtures.
pub const REPRODUCE_MIN_CAP: usize = 2_000_000;

/// Rows slower than this are flagged.
pub const SLOW_MS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// Oracle against an external reference value; decides the exit status.
    Reference,
    /// Oracle against an applicable formula on a re-oriented variant.
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub fixture: String,
    pub kind: RowKind,
    pub quantity: Quantity,
    pub t: u32,
    pub expected: FormulaValue,
    pub computed: Option<i64>,
    /// The formula for the same quantity, whether or not it binds.
    pub formula: Option<FormulaValue>,
    pub binding: bool,
    pub status: Status,
    pub elapsed_ms: u64,
    pub slow: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproduceTable {
    pub rows: Vec<Row>,
    pub lattice_cap: usize,
    pub elapsed_ms: u64,
}

impl ReproduceTable {
    /// Every reference row passes.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::Reference)
            .all(|r| r.status == Status::Pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("table serializes") + "\n",
            Format::Csv => {
                let mut out = String::from(
                    "fixture,kind,quantity,t,expected,computed,formula,binding,status,elapsed_ms\n",
                );
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{}",
                        r.fixture,
                        kind_label(r.kind),
                        r.quantity.label(),
                        r.t,
                        render_value(r.expected),
                        r.computed.map_or(String::new(), |c| c.to_string()),
                        r.formula.map_or(String::new(), render_value),
                        r.binding,
                        status_label(r),
                        r.elapsed_ms
                    );
                }
                out
            }
            Format::Md => {
                let mut out = String::from(
                    "| fixture | kind | quantity | expected | computed | formula | status | ms |\n\
                     |---|---|---|---|---|---|---|---|\n",
                );
                for r in &self.rows {
                    let formula = match r.formula {
                        Some(f) if r.binding => render_value(f),
                        Some(f) => format!("{} (non-binding)", render_value(f)),
                        None => "-".into(),
                    };
                    let _ = writeln!(
                        out,
                        "| {} | {} | {}(I^{}) | {} | {} | {} | {} | {} |",
                        r.fixture,
                        kind_label(r.kind),
                        r.quantity.label(),
                        r.t,
                        render_value(r.expected),
                        r.computed.map_or("-".into(), |c| c.to_string()),
                        formula,
                        status_label(r),
                        r.elapsed_ms
                    );
                }
                let verdict = if self.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "\nreference rows: {verdict} ({} ms total)", self.elapsed_ms);
                out
            }
        }
    }

    /// `expected` versus `computed` for failing rows.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for r in self.rows.iter().filter(|r| r.status != Status::Pass) {
            let _ = writeln!(
                out,
                "{}: {}(I^{}) expected {}, computed {}",
                r.fixture,
                r.quantity.label(),
                r.t,
                render_value(r.expected),
                r.computed.map_or("nothing (skipped)".into(), |c| c.to_string())
            );
        }
        out
    }
}

fn kind_label(k: RowKind) -> &'static str {
    match k {
        RowKind::Reference => "reference",
        RowKind::Formula => "formula",
    }
}

fn status_label(r: &Row) -> String {
    let s = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
    };
    if r.slow {
        format!("{s} (SLOW)")
    } else {
        s.to_string()
    }
}

/// The formula shown next to a quantity: the first listed for it.
fn formula_for(formulas: &[NamedFormula], q: Quantity) -> Option<&NamedFormula> {
    formulas.iter().find(|f| f.quantity == q)
}

/// Runs the given fixtures; a fixture that fails to parse yields failing rows.
pub fn reproduce(list: &[Fixture], cfg: &BettiConfig) -> ReproduceTable {
    let start = Instant::now();
    let mut rows = Vec::new();
    for fixture in list {
        let graph = fixture.graph();
        let analysis = graph.as_ref().ok().map(Analysis::new);
        let mut powers: Vec<u32> = fixture.powers.clone();
        powers.extend(fixture.expected.iter().map(|e| e.t));
        powers.sort_unstable();
        powers.dedup();
        for t in powers {
            let report = analysis.as_ref().map(|a| power_report(a, t, cfg));
            let slow = report.as_ref().is_some_and(|r| r.elapsed_ms > SLOW_MS);
            let elapsed_ms = report.as_ref().map_or(0, |r| r.elapsed_ms);
            let oracle = report.as_ref().and_then(|r| r.oracle.invariants().cloned());
            let skipped = report
                .as_ref()
                .is_some_and(|r| matches!(r.oracle, OracleOutcome::Skipped { .. }));
            let mut push = |kind, quantity, expected: FormulaValue, formula: Option<&NamedFormula>| {
                let computed = oracle.as_ref().map(|o| observed(o, quantity));
                let status = match computed {
                    Some(c) if expected.contains(c) => Status::Pass,
                    None if skipped => Status::Skipped,
                    _ => Status::Fail,
                };
                rows.push(Row {
                    fixture: fixture.name.to_string(),
                    kind,
                    quantity,
                    t,
                    expected,
                    computed,
                    formula: formula.and_then(|f| f.result.value),
                    binding: formula.is_some_and(|f| f.result.applicable),
                    status,
                    elapsed_ms,
                    slow,
                });
            };
            let formulas = report.as_ref().map(|r| r.formulas.clone()).unwrap_or_default();
            for e in fixture.expected.iter().filter(|e| e.t == t) {
                let f = formula_for(&formulas, e.quantity);
                push(RowKind::Reference, e.quantity, FormulaValue::Exact(e.value), f);
            }
            if fixture.expected.is_empty() {
                for q in [Quantity::Reg, Quantity::Pd] {
                    let Some(f) = formula_for(&formulas, q) else { continue };
                    let Some(value) = f.result.value.filter(|_| f.result.applicable) else {
                        continue;
                    };
                    push(RowKind::Formula, q, value, Some(f));
                }
            }
        }
    }
    ReproduceTable {
        rows,
        lattice_cap: cfg.lattice_cap,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Exit 0 iff every reference value is reproduced.
pub fn cmd_reproduce_paper(config: &RunConfig) -> Outcome {
    let mut cfg = match config.betti_config() {
        Ok(c) => c,
        Err(e) => return Outcome { text: format!("error: {e}\n"), exit: 2 },
    };
    cfg.lattice_cap = cfg.lattice_cap.max(REPRODUCE_MIN_CAP);
    let mut list = fixtures();
    if let Some(only) = &config.only {
        list.retain(|f| f.name == only);
        if list.is_empty() {
            return Outcome { text: format!("error: no fixture named {only:?}\n"), exit: 2 };
        }
    }
    let table = reproduce(&list, &cfg);
    let mut text = table.render(config.format);
    if table.passed() {
        Outcome { text, exit: 0 }
    } else {
        text.push_str("\nmismatches:\n");
        text.push_str(&table.diff());
        Outcome { text, exit: 1 }
    }
}
