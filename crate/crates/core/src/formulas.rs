//! Closed-form invariants for disjoint unions of gap-free bipartite graphs
//! whose edges all leave the X side, plus the colon identities they rest on.
//!
//! Every formula is evaluated even when the hypotheses fail, so that values
//! can be compared against the Betti oracle; such results carry
//! `applicable: false` and are not binding.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::betti::{oracle_invariants, BettiConfig, BettiError};
use crate::graph::{hypothesis_report, ComponentHypothesis, HypothesisReport, WeightedOrientedGraph};
use crate::monomial::{edge_ideal, edge_ideal_from_parts, IdealError, Monomial, MonomialIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("hypotheses fail: {}", .0.join("; "))]
    NotApplicable(Vec<String>),
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Oracle(#[from] BettiError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaValue {
    Exact(i64),
    /// `lo <= value <= hi`; `exact` is set when a sufficient condition pins
    /// the value.
    Interval { lo: i64, hi: i64, exact: Option<i64> },
}

impl FormulaValue {
    pub fn contains(&self, v: i64) -> bool {
        match *self {
            FormulaValue::Exact(x) => x == v,
            FormulaValue::Interval { lo, hi, exact } => {
                lo <= v && v <= hi && exact.is_none_or(|e| e == v)
            }
        }
    }

    pub fn exact(&self) -> Option<i64> {
        match *self {
            FormulaValue::Exact(x) => Some(x),
            FormulaValue::Interval { exact, .. } => exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    /// `None` only when the value cannot be evaluated at all (no
    /// bipartition or no nested order).
    pub value: Option<FormulaValue>,
    pub applicable: bool,
    pub hypothesis_failures: Vec<String>,
    pub source: String,
}

impl FormulaResult {
    /// Binding value, or `NotApplicable`.
    pub fn binding(&self) -> Result<FormulaValue, FormulaError> {
        match (self.applicable, self.value) {
            (true, Some(v)) => Ok(v),
            _ => Err(FormulaError::NotApplicable(self.hypothesis_failures.clone())),
        }
    }

    pub fn exact_value(&self) -> Option<i64> {
        self.value.and_then(|v| v.exact())
    }
}

/// Degree data of one bipartite component in nested order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub vertices: Vec<usize>,
    /// X by nondecreasing degree.
    pub x: Vec<usize>,
    /// Y so that `N(x[i]) = y[..k[i]]`.
    pub y: Vec<usize>,
    pub l: usize,
    pub m: usize,
    pub b: usize,
    /// `max_i d(x_i) + d(y_{k_i}) - 2`.
    pub r: usize,
    pub x_degrees: Vec<usize>,
    pub y_degrees: Vec<usize>,
    pub k: Vec<usize>,
    pub w_max: u32,
    pub weight_sum: u64,
    pub edge_count: usize,
}

impl ComponentStats {
    pub fn from_hypothesis(
        g: &WeightedOrientedGraph,
        hyp: &ComponentHypothesis,
    ) -> Option<ComponentStats> {
        let nested = hyp.nested.as_ref()?;
        let x_degrees: Vec<usize> = nested.x_order.iter().map(|&v| g.degree(v)).collect();
        let y_degrees: Vec<usize> = nested.y_order.iter().map(|&v| g.degree(v)).collect();
        let r = (0..nested.x_order.len())
            .map(|i| x_degrees[i] + g.degree(nested.top_neighbor(i)))
            .max()?
            - 2;
        let (l, m) = (nested.x_order.len(), nested.y_order.len());
        Some(ComponentStats {
            vertices: hyp.vertices.clone(),
            x: nested.x_order.clone(),
            y: nested.y_order.clone(),
            l,
            m,
            b: l.max(m),
            r,
            x_degrees,
            y_degrees,
            k: nested.k.clone(),
            w_max: hyp.vertices.iter().map(|&v| g.weight(v)).max().unwrap_or(1),
            weight_sum: hyp.vertices.iter().map(|&v| u64::from(g.weight(v))).sum(),
            edge_count: nested.k.iter().sum(),
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.l * self.m
    }

    pub fn is_star(&self) -> bool {
        self.is_complete() && (self.l == 1 || self.m == 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.l + self.m
    }
}

/// A graph together with its recognition report and per-component stats.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: WeightedOrientedGraph,
    pub hypothesis: HypothesisReport,
    pub stats: Vec<Option<ComponentStats>>,
    failures: Vec<String>,
}

impl Analysis {
    pub fn new(graph: &WeightedOrientedGraph) -> Analysis {
        let hypothesis = hypothesis_report(graph);
        let stats = hypothesis
            .components
            .iter()
            .map(|c| ComponentStats::from_hypothesis(graph, c))
            .collect();
        let failures = hypothesis.failures(graph);
        Analysis {
            graph: graph.clone(),
            hypothesis,
            stats,
            failures,
        }
    }

    pub fn applicable(&self) -> bool {
        self.hypothesis.applicable()
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    /// Number of components.
    pub fn s(&self) -> usize {
        self.stats.len()
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn all_stats(&self) -> Option<Vec<&ComponentStats>> {
        self.stats.iter().map(Option::as_ref).collect()
    }

    pub fn edge_ideal(&self) -> Result<MonomialIdeal, IdealError> {
        edge_ideal(&self.graph)
    }

    fn result(&self, value: Option<FormulaValue>, extra: Vec<String>, source: &str) -> FormulaResult {
        let mut hypothesis_failures = self.failures.clone();
        hypothesis_failures.extend(extra);
        FormulaResult {
            value,
            applicable: hypothesis_failures.is_empty(),
            hypothesis_failures,
            source: source.to_string(),
        }
    }

    fn component_result(
        &self,
        c: usize,
        value: Option<FormulaValue>,
        source: &str,
    ) -> FormulaResult {
        let hyp = &self.hypothesis.components[c];
        let failures = if hyp.holds() {
            Vec::new()
        } else {
            let single = HypothesisReport {
                components: vec![hyp.clone()],
            };
            single
                .failures(&self.graph)
                .into_iter()
                .map(|f| f.replacen("component 1", &format!("component {}", c + 1), 1))
                .collect()
        };
        FormulaResult {
            value,
            applicable: failures.is_empty(),
            hypothesis_failures: failures,
            source: source.to_string(),
        }
    }

    fn b_sum(&self) -> Option<i64> {
        self.all_stats()
            .map(|s| s.iter().map(|c| c.b as i64).sum())
    }

    fn reg_base(&self) -> i64 {
        self.graph.weight_sum() as i64 - self.n() as i64 + self.s() as i64 + 1
    }
}

/// `pd(I(D_c)) = max_i d(x_i) + d(y_{k_i}) - 2` for component `c`.
pub fn pd_single_formula(a: &Analysis, c: usize) -> FormulaResult {
    let value = a.stats[c].as_ref().map(|s| FormulaValue::Exact(s.r as i64));
    a.component_result(c, value, "pd-single-component")
}

/// `pd(I(D)) = sum_i r_i + s - 1`.
pub fn pd_union_formula(a: &Analysis) -> FormulaResult {
    let value = a.all_stats().map(|stats| {
        FormulaValue::Exact(stats.iter().map(|s| s.r as i64).sum::<i64>() + a.s() as i64 - 1)
    });
    a.result(value, Vec::new(), "pd-disjoint-union")
}

/// `sum_i b_i - 1 <= pd(I(D)^t) <= |V| - s - 1`.
pub fn pd_power_bounds(a: &Analysis, t: u32) -> FormulaResult {
    let extra = power_failures(t);
    let value = a.all_stats().map(|stats| {
        let lo = a.b_sum().expect("stats present") - 1;
        let hi = a.n() as i64 - a.s() as i64 - 1;
        let exact = (stats.iter().all(|s| s.is_complete()) || lo == hi).then_some(hi);
        FormulaValue::Interval { lo, hi, exact }
    });
    a.result(value, extra, "pd-power-bounds")
}

/// `depth(I(D)^t)` in `[s + 1, |V| - sum_i b_i + 1]`, with depth taken as
/// `|V| - pd`.
pub fn depth_bounds(a: &Analysis, t: u32) -> FormulaResult {
    let extra = power_failures(t);
    let value = a.all_stats().map(|stats| {
        let lo = a.s() as i64 + 1;
        let hi = a.n() as i64 - a.b_sum().expect("stats present") + 1;
        let exact = (stats.iter().all(|s| s.is_complete()) || lo == hi).then_some(lo);
        FormulaValue::Interval { lo, hi, exact }
    });
    a.result(value, extra, "depth-power-bounds")
}

/// `reg(I(D_c)) = sum_{x in D_c} w(x) - |V(D_c)| + 2`.
pub fn reg_single_formula(a: &Analysis, c: usize) -> FormulaResult {
    let comp = &a.hypothesis.components[c].vertices;
    let sum: i64 = comp.iter().map(|&v| i64::from(a.graph.weight(v))).sum();
    let value = Some(FormulaValue::Exact(sum - comp.len() as i64 + 2));
    a.component_result(c, value, "reg-single-component")
}

/// `reg(I(D)) = sum_x w(x) - |V| + s + 1`.
pub fn reg_union_formula(a: &Analysis) -> FormulaResult {
    a.result(
        Some(FormulaValue::Exact(a.reg_base())),
        Vec::new(),
        "reg-disjoint-union",
    )
}

/// `reg(I(D)^t) = sum_x w(x) - |V| + s + 1 + (t - 1)(w + 1)` with `w` the
/// largest weight in the whole graph.
pub fn reg_power_formula(a: &Analysis, t: u32) -> FormulaResult {
    let extra = power_failures(t);
    let w = i64::from(a.graph.max_weight());
    let steps = i64::from(t.max(1)) - 1;
    a.result(
        Some(FormulaValue::Exact(a.reg_base() + steps * (w + 1))),
        extra,
        "reg-power",
    )
}

/// Every component a star: `(reg, pd)` of `I(D)^t` exactly.
pub fn star_case_formula(a: &Analysis, t: u32) -> (FormulaResult, FormulaResult) {
    let mut extra = power_failures(t);
    let stars = a
        .all_stats()
        .is_some_and(|stats| stats.iter().all(|s| s.is_star()));
    if !stars {
        extra.push("some component is not a star".to_string());
    }
    let w = i64::from(a.graph.max_weight());
    let steps = i64::from(t.max(1)) - 1;
    let reg = a.result(
        Some(FormulaValue::Exact(a.reg_base() + steps * (w + 1))),
        extra.clone(),
        "reg-star-union",
    );
    let pd = a.result(
        Some(FormulaValue::Exact(a.n() as i64 - a.s() as i64 - 1)),
        extra,
        "pd-star-union",
    );
    (reg, pd)
}

/// All weights 1: `reg(I(G)^t) = 2t + s - 1`, the induced matching number
/// being `s`.
pub fn unweighted_reg_formula(a: &Analysis, t: u32) -> FormulaResult {
    let mut extra = power_failures(t);
    if a.graph.weights().iter().any(|&w| w != 1) {
        extra.push("some weight differs from 1".to_string());
    }
    a.result(
        Some(FormulaValue::Exact(2 * i64::from(t) + a.s() as i64 - 1)),
        extra,
        "reg-unweighted-power",
    )
}

fn power_failures(t: u32) -> Vec<String> {
    if t == 0 {
        vec!["power must be at least 1".to_string()]
    } else {
        Vec::new()
    }
}

/// Outcome of an identity or oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Verdict {
    fn from_failures(checked: usize, failures: Vec<String>) -> Verdict {
        Verdict {
            holds: failures.is_empty(),
            checked,
            failures,
        }
    }
}

fn require_applicable(a: &Analysis) -> Result<Vec<&ComponentStats>, FormulaError> {
    if !a.applicable() {
        return Err(FormulaError::NotApplicable(a.failures.clone()));
    }
    Ok(a.all_stats().expect("applicable graphs have stats"))
}

/// `(I(D)^t : x * y^{w(y)}) = I(D)^{t-1}` for the minimum-degree X vertex
/// `x` of every component and every out-neighbor `y` of it.
pub fn colon_power_identity_check(a: &Analysis, t: u32) -> Result<Verdict, FormulaError> {
    let stats = require_applicable(a)?;
    if t < 2 {
        return Err(FormulaError::Precondition(format!("power {t} < 2")));
    }
    let ideal = a.edge_ideal()?;
    let lhs_base = ideal.power(t)?;
    let rhs = ideal.power(t - 1)?;
    let n = a.n();
    let mut checked = 0;
    let mut failures = Vec::new();
    for comp in stats {
        let x = comp.x[0];
        for &(tail, y) in a.graph.edges() {
            if tail != x {
                continue;
            }
            let mut e = vec![0; n];
            e[x] = 1;
            e[y] = u16::try_from(a.graph.weight(y)).map_err(|_| IdealError::ExponentOverflow)?;
            let f = Monomial::new(e);
            checked += 1;
            match lhs_base.colon(&f) {
                crate::monomial::Colon::Proper(q) if q == rhs => {}
                _ => failures.push(format!(
                    "colon by {} differs from the {}-th power",
                    f.render(a.graph.names()),
                    t - 1
                )),
            }
        }
    }
    Ok(Verdict::from_failures(checked, failures))
}

/// For a single applicable component and `e = x -> y_{k}` closing the
/// nested neighborhood of `x`: the oracle projective dimension of
/// `(I(D \ e) : x * y^{w(y)})` equals `d(x) + d(y) - 3`.
pub fn colon_pd_lemma_check(
    a: &Analysis,
    x: usize,
    config: &BettiConfig,
) -> Result<Verdict, FormulaError> {
    let stats = require_applicable(a)?;
    if stats.len() != 1 {
        return Err(FormulaError::Precondition(format!(
            "{} components, expected 1",
            stats.len()
        )));
    }
    let comp = stats[0];
    if comp.edge_count < 2 {
        return Err(FormulaError::Precondition("fewer than two edges".into()));
    }
    let i = comp
        .x
        .iter()
        .position(|&v| v == x)
        .ok_or_else(|| FormulaError::Precondition(format!("`{}` is not in X", a.graph.name(x))))?;
    let y = comp.y[comp.k[i] - 1];
    let edges: Vec<(usize, usize)> = a
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != (x, y))
        .collect();
    let reduced = edge_ideal_from_parts(a.graph.weights(), &edges)?;
    let n = a.n();
    let mut f = vec![0; n];
    f[x] = 1;
    f[y] = u16::try_from(a.graph.weight(y)).map_err(|_| IdealError::ExponentOverflow)?;
    let colon = reduced.colon(&Monomial::new(f)).into_proper()?;
    let expected = a.graph.degree(x) as i64 + a.graph.degree(y) as i64 - 3;
    let got = oracle_invariants(&colon, n, config)?.pd as i64;
    let failures = if got == expected {
        Vec::new()
    } else {
        vec![format!(
            "edge {}{}: oracle pd {got}, expected {expected}",
            a.graph.name(x),
            a.graph.name(y)
        )]
    };
    Ok(Verdict::from_failures(1, failures))
}

/// Runs [`colon_pd_lemma_check`] for every X vertex.
pub fn colon_pd_lemma_check_all(
    a: &Analysis,
    config: &BettiConfig,
) -> Result<Verdict, FormulaError> {
    let stats = require_applicable(a)?;
    let xs = stats.first().map(|s| s.x.clone()).unwrap_or_default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for x in xs {
        let v = colon_pd_lemma_check(a, x, config)?;
        checked += v.checked;
        failures.extend(v.failures);
    }
    Ok(Verdict::from_failures(checked, failures))
}

/// Once `pd(I^{t0}) = |V| - s - 1`, it stays there for `t0 <= t <= t_max`.
pub fn stabilization_check(
    a: &Analysis,
    t0: u32,
    t_max: u32,
    config: &BettiConfig,
) -> Result<Verdict, FormulaError> {
    require_applicable(a)?;
    if t0 == 0 || t_max < t0 {
        return Err(FormulaError::Precondition(format!("bad power range {t0}..={t_max}")));
    }
    let target = a.n() - a.s() - 1;
    let ideal = a.edge_ideal()?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for t in t0..=t_max {
        let pd = oracle_invariants(&ideal.power(t)?, a.n(), config)?.pd;
        if t == t0 && pd != target {
            return Err(FormulaError::Precondition(format!(
                "pd at power {t0} is {pd}, not {target}"
            )));
        }
        checked += 1;
        if pd != target {
            failures.push(format!("power {t}: pd {pd} != {target}"));
        }
    }
    Ok(Verdict::from_failures(checked, failures))
}
