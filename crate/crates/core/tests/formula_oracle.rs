use oriented_ideal::betti::{oracle_invariants, BettiConfig};
use oriented_ideal::formulas::*;
use oriented_ideal::graph::random_gap_free_bipartite;
use oriented_ideal::WeightedOrientedGraph;

fn build(vertices: &[(&str, u32)], edges: &[(&str, &str)]) -> WeightedOrientedGraph {
    let names: Vec<&str> = vertices.iter().map(|v| v.0).collect();
    let idx = |n: &str| names.iter().position(|&m| m == n).unwrap();
    WeightedOrientedGraph::new(
        vertices.iter().map(|&(n, w)| (n.to_string(), w)).collect(),
        edges.iter().map(|&(a, b)| (idx(a), idx(b))).collect(),
    )
    .unwrap()
}

fn oracle(g: &WeightedOrientedGraph, t: u32) -> oriented_ideal::OracleInvariants {
    let ideal = oriented_ideal::edge_ideal(g).unwrap().power(t).unwrap();
    oracle_invariants(&ideal, g.vertex_count(), &BettiConfig::default()).unwrap()
}

fn k22(weight: u32) -> WeightedOrientedGraph {
    build(
        &[("x1", 1), ("x2", 1), ("y1", weight), ("y2", weight)],
        &[("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")],
    )
}

fn star(m: usize, weight: u32) -> WeightedOrientedGraph {
    let mut v = vec![("x".to_string(), 1)];
    v.extend((1..=m).map(|j| (format!("y{j}"), weight)));
    WeightedOrientedGraph::new(v, (1..=m).map(|j| (0, j)).collect()).unwrap()
}

#[test]
fn weighted_star_values() {
    let g = star(2, 2);
    let a = Analysis::new(&g);
    let (reg, pd) = star_case_formula(&a, 1);
    assert!(reg.applicable && pd.applicable);
    assert_eq!((reg.exact_value(), pd.exact_value()), (Some(4), Some(1)));
    let o = oracle(&g, 1);
    assert_eq!((o.reg, o.pd), (4, 1));

    let (reg2, _) = star_case_formula(&a, 2);
    assert_eq!(reg2.exact_value(), Some(7));
    assert_eq!(oracle(&g, 2).reg, 7);
}

#[test]
fn two_disjoint_edges() {
    let e = build(&[("x", 1), ("y", 1)], &[("x", "y")]);
    let g = WeightedOrientedGraph::disjoint_union(&[e.clone(), e]);
    let a = Analysis::new(&g);
    let (reg, pd) = star_case_formula(&a, 1);
    assert_eq!((reg.exact_value(), pd.exact_value()), (Some(3), Some(1)));
    let o = oracle(&g, 1);
    assert_eq!((o.reg, o.pd), (3, 1));
}

#[test]
fn unweighted_values_against_oracle() {
    let g = WeightedOrientedGraph::disjoint_union(&[k22(1), k22(1)]);
    let a = Analysis::new(&g);
    assert_eq!(unweighted_reg_formula(&a, 2).exact_value(), Some(5));
    assert_eq!(oracle(&g, 2).reg, 5);

    let g = WeightedOrientedGraph::disjoint_union(&[star(1, 1), star(2, 1), star(3, 1)]);
    let a = Analysis::new(&g);
    assert_eq!(unweighted_reg_formula(&a, 1).exact_value(), Some(4));
    assert_eq!(oracle(&g, 1).reg, 4);

    for seed in 0..20 {
        let g = random_gap_free_bipartite(1 + seed % 3, 1 + seed / 3 % 3, 1, seed as u64);
        let a = Analysis::new(&g);
        assert_eq!(reg_single_formula(&a, 0).exact_value(), Some(2));
        assert_eq!(oracle(&g, 1).reg, 2);
    }
}

#[test]
fn k22_depth_and_stabilization() {
    let g = k22(1);
    let a = Analysis::new(&g);
    let o = oracle(&g, 1);
    assert_eq!(o.depth, 2);
    assert!(depth_bounds(&a, 1).value.unwrap().contains(o.depth));
    let v = stabilization_check(&a, 1, 3, &BettiConfig::default()).unwrap();
    assert!(v.holds);
    assert_eq!(v.checked, 3);

    let s = Analysis::new(&star(3, 2));
    assert!(stabilization_check(&s, 1, 3, &BettiConfig::default()).unwrap().holds);
}

#[test]
fn stabilization_precondition() {
    // path x1 -> y1 <- x2 -> y2: pd(I) = 1 < |V| - 2 = 2
    let g = build(
        &[("x1", 1), ("x2", 1), ("y1", 1), ("y2", 1)],
        &[("x1", "y1"), ("x2", "y1"), ("x2", "y2")],
    );
    let a = Analysis::new(&g);
    assert!(matches!(
        stabilization_check(&a, 1, 2, &BettiConfig::default()),
        Err(FormulaError::Precondition(_))
    ));
}

#[test]
fn colon_pd_lemma_examples() {
    let cfg = BettiConfig::default();
    // K22, e = x2 y2: expected (2 + 2) - 3 = 1
    let a = Analysis::new(&k22(2));
    let v = colon_pd_lemma_check(&a, 1, &cfg).unwrap();
    assert!(v.holds, "{:?}", v.failures);

    // star K_{1,m}, e = x y_m: expected m - 2
    for m in 2..=4 {
        let a = Analysis::new(&star(m, 2));
        assert!(colon_pd_lemma_check(&a, 0, &cfg).unwrap().holds);
    }

    // path x1 -> y1 <- x2 -> y2, e = x2 y2: expected (2 + 1) - 3 = 0
    let g = build(
        &[("x1", 1), ("x2", 1), ("y1", 2), ("y2", 3)],
        &[("x1", "y1"), ("x2", "y1"), ("x2", "y2")],
    );
    let a = Analysis::new(&g);
    let v = colon_pd_lemma_check(&a, 1, &cfg).unwrap();
    assert!(v.holds, "{:?}", v.failures);
    assert!(colon_pd_lemma_check_all(&a, &cfg).unwrap().holds);

    let edge = Analysis::new(&star(1, 1));
    assert!(matches!(
        colon_pd_lemma_check(&edge, 0, &cfg),
        Err(FormulaError::Precondition(_))
    ));
}

#[test]
fn formulas_agree_with_oracle_on_small_unions() {
    for seed in 0..40u64 {
        let parts: Vec<WeightedOrientedGraph> = (0..1 + seed % 2)
            .map(|i| {
                random_gap_free_bipartite(
                    1 + ((seed + i) % 3) as usize,
                    1 + ((seed / 2 + i) % 3) as usize,
                    3,
                    seed * 31 + i,
                )
            })
            .collect();
        let g = WeightedOrientedGraph::disjoint_union(&parts);
        let a = Analysis::new(&g);
        let o1 = oracle(&g, 1);
        assert_eq!(pd_union_formula(&a).binding().unwrap().exact(), Some(o1.pd as i64));
        assert_eq!(reg_union_formula(&a).exact_value(), Some(o1.reg));
        let o2 = oracle(&g, 2);
        assert_eq!(reg_power_formula(&a, 2).exact_value(), Some(o2.reg), "seed {seed}");
        assert!(pd_power_bounds(&a, 2).value.unwrap().contains(o2.pd as i64));
        assert!(depth_bounds(&a, 2).value.unwrap().contains(o2.depth));
        let w = i64::from(g.max_weight());
        assert_eq!(o2.reg - o1.reg, w + 1);
    }
}
