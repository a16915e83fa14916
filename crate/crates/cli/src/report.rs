use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use oriented_ideal::betti::{oracle_invariants, BettiConfig, BettiError};
use oriented_ideal::formulas::{
    depth_bounds, pd_power_bounds, pd_union_formula, reg_power_formula, star_case_formula,
    unweighted_reg_formula, Analysis, FormulaResult, FormulaValue,
};
use oriented_ideal::{HypothesisReport, OracleInvariants, WeightedOrientedGraph};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::fixtures::Quantity;
use crate::Outcome;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub weights: Vec<u32>,
    pub edges: Vec<(String, String)>,
    pub components: usize,
    pub weight_sum: u64,
    pub max_weight: u32,
    pub generators: Vec<String>,
}

impl GraphSummary {
    pub fn new(g: &WeightedOrientedGraph) -> Self {
        let generators = oriented_ideal::edge_ideal(g)
            .map(|i| {
                i.generators()
                    .iter()
                    .map(|m| m.render(g.names()))
                    .collect()
            })
            .unwrap_or_default();
        Self {
            vertices: g.names().to_vec(),
            weights: g.weights().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| (g.name(u).to_string(), g.name(v).to_string()))
                .collect(),
            components: oriented_ideal::graph::components(g).count(),
            weight_sum: g.weight_sum(),
            max_weight: g.max_weight(),
            generators,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedFormula {
    pub quantity: Quantity,
    pub result: FormulaResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleOutcome {
    Computed(OracleInvariants),
    Skipped { reason: String },
}

impl OracleOutcome {
    pub fn invariants(&self) -> Option<&OracleInvariants> {
        match self {
            OracleOutcome::Computed(o) => Some(o),
            OracleOutcome::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub source: String,
    pub quantity: Quantity,
    pub formula: FormulaValue,
    pub oracle: i64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerReport {
    pub t: u32,
    pub formulas: Vec<NamedFormula>,
    pub oracle: OracleOutcome,
    /// Applicable formulas against the oracle.
    pub agreements: Vec<Agreement>,
    /// Non-applicable formulas against the oracle, for information.
    pub non_binding: Vec<Agreement>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub graph: GraphSummary,
    pub hypothesis: HypothesisReport,
    pub applicable: bool,
    pub failures: Vec<String>,
    pub powers: Vec<PowerReport>,
    pub elapsed_ms: u64,
}

impl InvariantReport {
    pub fn all_agree(&self) -> bool {
        self.powers
            .iter()
            .all(|p| p.agreements.iter().all(|a| a.agrees))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,quantity,source,applicable,formula,oracle,agrees\n");
        for p in &self.powers {
            let oracle = p.oracle.invariants();
            for f in &p.formulas {
                let observed = oracle.map(|o| observed(o, f.quantity));
                let value = f.result.value.map(render_value).unwrap_or_default();
                let agrees = match (f.result.value, observed) {
                    (Some(v), Some(o)) => v.contains(o).to_string(),
                    _ => String::new(),
                };
                let oracle_text = match (&p.oracle, observed) {
                    (_, Some(o)) => o.to_string(),
                    (OracleOutcome::Skipped { .. }, _) => "skipped: cap".into(),
                    _ => String::new(),
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    p.t,
                    f.quantity.label(),
                    f.result.source,
                    f.result.applicable,
                    value,
                    oracle_text,
                    agrees
                );
            }
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let g = &self.graph;
        let mut out = String::from("# Invariant report\n\n");
        let _ = writeln!(
            out,
            "- vertices: {} ({} components, weight sum {}, max weight {})",
            g.vertices.len(),
            g.components,
            g.weight_sum,
            g.max_weight
        );
        let _ = writeln!(out, "- edge ideal: ({})", g.generators.join(", "));
        if self.applicable {
            out.push_str("- hypotheses: hold\n");
        } else {
            let _ = writeln!(out, "- hypotheses: fail ({})", self.failures.join("; "));
        }
        for p in &self.powers {
            let _ = writeln!(out, "\n## t = {}\n", p.t);
            match &p.oracle {
                OracleOutcome::Computed(o) => {
                    let _ = writeln!(
                        out,
                        "oracle: reg = {}, pd = {}, depth = {} ({}, {} ms)\n",
                        o.reg, o.pd, o.depth, o.field_note, p.elapsed_ms
                    );
                }
                OracleOutcome::Skipped { reason } => {
                    let _ = writeln!(out, "oracle: {reason}\n");
                }
            }
            out.push_str("| quantity | formula | value | binding | oracle | agrees |\n");
            out.push_str("|---|---|---|---|---|---|\n");
            for f in &p.formulas {
                let observed = p.oracle.invariants().map(|o| observed(o, f.quantity));
                let value = f.result.value.map(render_value).unwrap_or("-".into());
                let agrees = match (f.result.value, observed) {
                    (Some(v), Some(o)) if v.contains(o) => "yes",
                    (Some(_), Some(_)) => "no",
                    _ => "-",
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} |",
                    f.quantity.label(),
                    f.result.source,
                    value,
                    if f.result.applicable { "yes" } else { "no" },
                    observed.map_or("-".into(), |o| o.to_string()),
                    agrees
                );
            }
        }
        out
    }
}

pub fn render_value(v: FormulaValue) -> String {
    match v {
        FormulaValue::Exact(x) => x.to_string(),
        FormulaValue::Interval { lo, hi, exact: None } => format!("{lo}..{hi}"),
        FormulaValue::Interval { lo, hi, exact: Some(e) } => format!("{lo}..{hi} (={e})"),
    }
}

pub fn observed(o: &OracleInvariants, q: Quantity) -> i64 {
    match q {
        Quantity::Reg => o.reg,
        Quantity::Pd => o.pd as i64,
        Quantity::Depth => o.depth,
    }
}

/// Every formula relevant to `I^t`: union formulas at `t = 1`, power
/// formulas always, star and unweighted forms when their shape applies.
pub fn formulas_for(a: &Analysis, t: u32) -> Vec<NamedFormula> {
    let named = |quantity, result| NamedFormula { quantity, result };
    let mut out = Vec::new();
    if t == 1 {
        out.push(named(Quantity::Pd, pd_union_formula(a)));
    }
    out.push(named(Quantity::Reg, reg_power_formula(a, t)));
    out.push(named(Quantity::Pd, pd_power_bounds(a, t)));
    out.push(named(Quantity::Depth, depth_bounds(a, t)));
    let stars = a
        .all_stats()
        .is_some_and(|stats| stats.iter().all(|s| s.is_star()));
    if stars {
        let (reg, pd) = star_case_formula(a, t);
        out.push(named(Quantity::Reg, reg));
        out.push(named(Quantity::Pd, pd));
    }
    if a.graph.weights().iter().all(|&w| w == 1) {
        out.push(named(Quantity::Reg, unweighted_reg_formula(a, t)));
    }
    out
}

/// Oracle invariants of `I(D)^t`; cap exceedance becomes `Skipped`.
pub fn oracle_for(a: &Analysis, t: u32, cfg: &BettiConfig) -> OracleOutcome {
    let ideal = match a.edge_ideal().and_then(|i| i.power(t)) {
        Ok(i) => i,
        Err(e) => return OracleOutcome::Skipped { reason: format!("skipped: {e}") },
    };
    match oracle_invariants(&ideal, a.n(), cfg) {
        Ok(o) => OracleOutcome::Computed(o),
        Err(e @ (BettiError::CapExceeded(_) | BettiError::GroundSetTooLarge(..))) => {
            OracleOutcome::Skipped { reason: format!("skipped: cap ({e})") }
        }
        Err(e) => OracleOutcome::Skipped { reason: format!("skipped: {e}") },
    }
}

pub fn power_report(a: &Analysis, t: u32, cfg: &BettiConfig) -> PowerReport {
    let start = Instant::now();
    let formulas = formulas_for(a, t);
    let oracle = oracle_for(a, t, cfg);
    let (mut agreements, mut non_binding) = (Vec::new(), Vec::new());
    if let Some(o) = oracle.invariants() {
        for f in &formulas {
            let Some(value) = f.result.value else { continue };
            let oracle = observed(o, f.quantity);
            let entry = Agreement {
                source: f.result.source.clone(),
                quantity: f.quantity,
                formula: value,
                oracle,
                agrees: value.contains(oracle),
            };
            if f.result.applicable {
                agreements.push(entry);
            } else {
                non_binding.push(entry);
            }
        }
    }
    PowerReport {
        t,
        formulas,
        oracle,
        agreements,
        non_binding,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn invariant_report(g: &WeightedOrientedGraph, max_t: u32, cfg: &BettiConfig) -> InvariantReport {
    let start = Instant::now();
    let a = Analysis::new(g);
    let powers = (1..=max_t).map(|t| power_report(&a, t, cfg)).collect();
    InvariantReport {
        graph: GraphSummary::new(g),
        hypothesis: a.hypothesis.clone(),
        applicable: a.applicable(),
        failures: a.failures().to_vec(),
        powers,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn load(path: Option<&Path>) -> Result<WeightedOrientedGraph, String> {
    let path = path.ok_or("no input file given")?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    WeightedOrientedGraph::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn hypothesis_text(g: &WeightedOrientedGraph, h: &HypothesisReport) -> String {
    let mut out = String::new();
    for (c, comp) in h.components.iter().enumerate() {
        let names: Vec<&str> = comp.vertices.iter().map(|&v| g.name(v)).collect();
        let _ = writeln!(
            out,
            "component {} [{}]: bipartite={} gap-free={} forward={} b={} k={:?}",
            c + 1,
            names.join(" "),
            comp.is_bipartite,
            comp.is_gap_free,
            comp.oriented_away_from_x,
            comp.b.map_or("-".into(), |b| b.to_string()),
            comp.k_sequence().unwrap_or(&[]),
        );
    }
    let failures = h.failures(g);
    if failures.is_empty() {
        out.push_str("applicable\n");
    } else {
        let _ = writeln!(out, "not applicable: {}", failures.join("; "));
    }
    out
}

/// Exit 0 when the hypotheses hold, 1 when they fail, 2 on unreadable input.
pub fn cmd_check(config: &RunConfig) -> Outcome {
    let g = match load(config.input.as_deref()) {
        Ok(g) => g,
        Err(e) => return Outcome { text: format!("error: {e}\n"), exit: 2 },
    };
    let h = oriented_ideal::hypothesis_report(&g);
    let text = match config.format {
        Format::Json => serde_json::to_string_pretty(&h).expect("report serializes") + "\n",
        _ => hypothesis_text(&g, &h),
    };
    Outcome { text, exit: if h.applicable() { 0 } else { 1 } }
}

/// Exit 0 unless the input is unreadable (2) or an applicable formula
/// disagrees with the oracle (1).
pub fn cmd_invariants(config: &RunConfig) -> Outcome {
    let cfg = match config.validate().and_then(|_| config.betti_config()) {
        Ok(c) => c,
        Err(e) => return Outcome { text: format!("error: {e}\n"), exit: 2 },
    };
    let g = match load(config.input.as_deref()) {
        Ok(g) => g,
        Err(e) => return Outcome { text: format!("error: {e}\n"), exit: 2 },
    };
    let report = invariant_report(&g, config.power, &cfg);
    let mut text = report.render(config.format);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Outcome { text, exit: if report.all_agree() { 0 } else { 1 } }
}
