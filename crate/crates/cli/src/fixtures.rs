use oriented_ideal::graph::GraphError;
use oriented_ideal::WeightedOrientedGraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Reg,
    Pd,
    Depth,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::Reg => "reg",
            Quantity::Pd => "pd",
            Quantity::Depth => "depth",
        }
    }
}

/// One externally computed value: `quantity(I^t) = value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub quantity: Quantity,
    pub t: u32,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub json: String,
    /// Reference values from an independent computer algebra run; empty for
    /// the re-oriented variants, which are checked against the formulas.
    pub expected: Vec<Expectation>,
    /// Powers at which formula rows are produced.
    pub powers: Vec<u32>,
}

impl Fixture {
    pub fn graph(&self) -> Result<WeightedOrientedGraph, GraphError> {
        WeightedOrientedGraph::from_json(&self.json)
    }
}

fn exp(quantity: Quantity, t: u32, value: i64) -> Expectation {
    Expectation { quantity, t, value }
}

/// The embedded graphs.
pub fn fixtures() -> Vec<Fixture> {
    use Quantity::{Pd, Reg};
    vec![
        Fixture {
            name: "union-complete-and-path",
            description: "K(2,2) plus a path, all edges X -> Y, w(Y) = 2",
            json: include_str!("../fixtures/union_complete_and_path.json").into(),
            expected: vec![exp(Pd, 2, 5)],
            powers: vec![1, 2],
        },
        Fixture {
            name: "cyclic-square",
            description: "oriented 4-cycle, every weight 2",
            json: include_str!("../fixtures/cyclic_square.json").into(),
            expected: vec![exp(Reg, 1, 5), exp(Reg, 2, 8), exp(Pd, 1, 3), exp(Pd, 2, 3)],
            powers: vec![1, 2],
        },
        Fixture {
            name: "cyclic-square-oriented",
            description: "same underlying K(2,2), all edges X -> Y",
            json: include_str!("../fixtures/cyclic_square_oriented.json").into(),
            expected: Vec::new(),
            powers: vec![1, 2],
        },
        Fixture {
            name: "mixed-union",
            description: "two components with mixed orientation, w(Y) = 2",
            json: include_str!("../fixtures/mixed_union.json").into(),
            expected: vec![exp(Reg, 1, 6), exp(Reg, 2, 9), exp(Pd, 1, 5)],
            powers: vec![1, 2],
        },
        Fixture {
            name: "mixed-union-oriented",
            description: "same underlying graph, all edges X -> Y",
            json: include_str!("../fixtures/mixed_union_oriented.json").into(),
            expected: Vec::new(),
            powers: vec![1, 2],
        },
        Fixture {
            name: "mixed-five",
            description: "five vertices, mixed orientation",
            json: include_str!("../fixtures/mixed_five.json").into(),
            expected: vec![exp(Pd, 3, 4)],
            powers: vec![3],
        },
        Fixture {
            name: "mixed-five-oriented",
            description: "same underlying graph, all edges X -> Y",
            json: include_str!("../fixtures/mixed_five_oriented.json").into(),
            expected: Vec::new(),
            powers: vec![1, 3],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use oriented_ideal::hypothesis_report;

    #[test]
    fn fixtures_parse_and_variants_apply() {
        for f in fixtures() {
            let g = f.graph().unwrap();
            let applicable = hypothesis_report(&g).applicable();
            let variant = f.name.ends_with("-oriented");
            // only the all-forward graphs satisfy the hypotheses
            assert_eq!(applicable, variant || f.name == "union-complete-and-path", "{}", f.name);
        }
    }

    #[test]
    fn variants_share_the_underlying_graph() {
        let all = fixtures();
        for v in all.iter().filter(|f| f.name.ends_with("-oriented")) {
            let base = all
                .iter()
                .find(|f| format!("{}-oriented", f.name) == v.name)
                .unwrap();
            let (a, b) = (base.graph().unwrap(), v.graph().unwrap());
            assert_eq!(a.names(), b.names());
            let undirected = |g: &WeightedOrientedGraph| {
                let mut e: Vec<(usize, usize)> =
                    g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                e.sort();
                e
            };
            assert_eq!(undirected(&a), undirected(&b));
        }
    }
}
