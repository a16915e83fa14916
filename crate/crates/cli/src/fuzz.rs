use std::collections::BTreeMap;
use std::fmt::Write as _;

use oriented_ideal::betti::BettiConfig;
use oriented_ideal::formulas::{
    colon_pd_lemma_check_all, colon_power_identity_check, Analysis, FormulaError, FormulaValue,
};
use oriented_ideal::graph::{components, random_gap_free_bipartite, GraphDocument};
use oriented_ideal::WeightedOrientedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig, SizeLimits};
use crate::report::{formulas_for, observed, oracle_for, render_value, OracleOutcome};
use crate::Outcome;

/// A random disjoint union of gap-free bipartite graphs, fully determined by
/// `seed`. With `scramble`, each edge is flipped with probability 1/2 and new
/// sources drop to weight 1.
pub fn random_instance(seed: u64, limits: &SizeLimits, scramble: bool) -> WeightedOrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rng.gen_range(1..=limits.max_components);
    let parts: Vec<WeightedOrientedGraph> = (0..s)
        .map(|_| {
            let l = rng.gen_range(1..=limits.max_x);
            let m = rng.gen_range(1..=limits.max_y);
            random_gap_free_bipartite(l, m, limits.max_weight, rng.gen())
        })
        .collect();
    let g = WeightedOrientedGraph::disjoint_union(&parts);
    if scramble {
        let flips: Vec<bool> = (0..g.edges().len()).map(|_| rng.gen()).collect();
        g.reoriented(&flips)
    } else {
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub instance: usize,
    pub seed: u64,
    pub check: String,
    pub detail: String,
    pub graph: GraphDocument,
}

/// Everything learned from one instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub applicable: bool,
    pub capped: bool,
    pub binding_checks: usize,
    pub failures: Vec<(String, String)>,
    pub non_binding_checks: usize,
    pub non_binding_disagreements: usize,
    /// Where oracle `pd(I^t)` fell inside the bounds interval.
    pub pd_positions: Vec<String>,
}

fn position(value: FormulaValue, pd: i64, t: u32) -> Option<String> {
    let FormulaValue::Interval { lo, hi, .. } = value else { return None };
    let at = if lo == hi {
        "degenerate"
    } else if pd == lo {
        "lower"
    } else if pd == hi {
        "upper"
    } else {
        "interior"
    };
    Some(format!("t={t} {at}"))
}

/// Runs every formula, bound and identity on `g` for `t = 1..=max_t`.
pub fn check_instance(g: &WeightedOrientedGraph, max_t: u32, cfg: &BettiConfig) -> InstanceOutcome {
    let a = Analysis::new(g);
    let mut out = InstanceOutcome { applicable: a.applicable(), ..Default::default() };
    for t in 1..=max_t {
        let oracle = match oracle_for(&a, t, cfg) {
            OracleOutcome::Computed(o) => o,
            OracleOutcome::Skipped { .. } => {
                out.capped = true;
                break;
            }
        };
        for f in formulas_for(&a, t) {
            let Some(value) = f.result.value else { continue };
            let seen = observed(&oracle, f.quantity);
            let ok = value.contains(seen);
            if f.result.applicable {
                out.binding_checks += 1;
                if !ok {
                    out.failures.push((
                        format!("{} t={t}", f.result.source),
                        format!("formula {} vs oracle {seen}", render_value(value)),
                    ));
                }
                if f.result.source == "pd-power-bounds" {
                    out.pd_positions.extend(position(value, seen, t));
                }
            } else {
                out.non_binding_checks += 1;
                out.non_binding_disagreements += usize::from(!ok);
            }
        }
        if t >= 2 && a.applicable() {
            out.binding_checks += 1;
            match colon_power_identity_check(&a, t) {
                Ok(v) if v.holds => {}
                Ok(v) => out
                    .failures
                    .push((format!("colon-power-identity t={t}"), v.failures.join("; "))),
                Err(e) => out.failures.push((format!("colon-power-identity t={t}"), e.to_string())),
            }
        }
    }
    if a.applicable() && !out.capped {
        for comp in components(g).components {
            let sub = g.component_subgraph(&comp);
            if sub.edges().len() < 2 {
                continue;
            }
            out.binding_checks += 1;
            match colon_pd_lemma_check_all(&Analysis::new(&sub), cfg) {
                Ok(v) if v.holds => {}
                Ok(v) => out.failures.push(("colon-pd-lemma".into(), v.failures.join("; "))),
                Err(FormulaError::Oracle(_)) => out.capped = true,
                Err(e) => out.failures.push(("colon-pd-lemma".into(), e.to_string())),
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub instances: usize,
    pub seed: u64,
    pub applicable: usize,
    pub skipped_cap: usize,
    pub binding_checks: usize,
    pub violations: Vec<Violation>,
    pub non_binding_checks: usize,
    pub non_binding_disagreements: usize,
    pub pd_positions: BTreeMap<String, usize>,
}

impl FuzzSummary {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("summary serializes") + "\n",
            Format::Csv => {
                let mut out = String::from("metric,value\n");
                for (k, v) in self.counts() {
                    let _ = writeln!(out, "{k},{v}");
                }
                for (k, v) in &self.pd_positions {
                    let _ = writeln!(out, "pd position {k},{v}");
                }
                out
            }
            Format::Md => {
                let mut out = String::from("| metric | value |\n|---|---|\n");
                for (k, v) in self.counts() {
                    let _ = writeln!(out, "| {k} | {v} |");
                }
                for (k, v) in &self.pd_positions {
                    let _ = writeln!(out, "| pd position {k} | {v} |");
                }
                for v in &self.violations {
                    let _ = writeln!(
                        out,
                        "\nviolation in instance {} (seed {}): {}: {}\n```json\n{}\n```",
                        v.instance,
                        v.seed,
                        v.check,
                        v.detail,
                        serde_json::to_string_pretty(&v.graph).expect("graph serializes")
                    );
                }
                out
            }
        }
    }

    fn counts(&self) -> Vec<(&'static str, usize)> {
        vec![
            ("instances", self.instances),
            ("applicable", self.applicable),
            ("skipped (cap)", self.skipped_cap),
            ("binding checks", self.binding_checks),
            ("violations", self.violations.len()),
            ("non-binding checks", self.non_binding_checks),
            ("non-binding formula disagreements", self.non_binding_disagreements),
        ]
    }
}

/// Instance `i` uses seed `seed + i`, so results do not depend on scheduling.
pub fn run_fuzz(
    count: usize,
    seed: u64,
    limits: &SizeLimits,
    scramble: bool,
    cfg: &BettiConfig,
) -> FuzzSummary {
    let results: Vec<(u64, WeightedOrientedGraph, InstanceOutcome)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let g = random_instance(s, limits, scramble);
            let outcome = check_instance(&g, limits.max_power, cfg);
            (s, g, outcome)
        })
        .collect();
    let mut summary = FuzzSummary {
        instances: count,
        seed,
        applicable: 0,
        skipped_cap: 0,
        binding_checks: 0,
        violations: Vec::new(),
        non_binding_checks: 0,
        non_binding_disagreements: 0,
        pd_positions: BTreeMap::new(),
    };
    for (i, (s, g, o)) in results.into_iter().enumerate() {
        summary.applicable += usize::from(o.applicable);
        summary.skipped_cap += usize::from(o.capped);
        summary.binding_checks += o.binding_checks;
        summary.non_binding_checks += o.non_binding_checks;
        summary.non_binding_disagreements += o.non_binding_disagreements;
        for p in o.pd_positions {
            *summary.pd_positions.entry(p).or_default() += 1;
        }
        for (check, detail) in o.failures {
            summary.violations.push(Violation {
                instance: i,
                seed: s,
                check,
                detail,
                graph: g.to_document(),
            });
        }
    }
    summary
}

/// Exit 0 iff no applicable formula, bound or identity is violated.
pub fn cmd_fuzz(config: &RunConfig) -> Outcome {
    let cfg = match config.validate().and_then(|_| config.betti_config()) {
        Ok(c) => c,
        Err(e) => return Outcome { text: format!("error: {e}\n"), exit: 2 },
    };
    let summary = run_fuzz(config.count, config.seed, &config.limits, config.scramble, &cfg);
    let exit = if summary.violations.is_empty() { 0 } else { 1 };
    Outcome { text: summary.render(config.format), exit }
}
