use oriented_ideal::formulas::{colon_power_identity_check, Analysis};
use oriented_ideal::graph::random_gap_free_bipartite;
use oriented_ideal::monomial::{edge_ideal, Colon, Monomial, MonomialIdeal};
use oriented_ideal::WeightedOrientedGraph;
use proptest::prelude::*;

fn arb_monomial(n: usize, max_exp: u16) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n)
        .prop_filter("unit", |e| e.iter().any(|&x| x > 0))
        .prop_map(Monomial::new)
}

fn arb_ideal(n: usize, max_gens: usize, max_exp: u16) -> impl Strategy<Value = MonomialIdeal> {
    proptest::collection::vec(arb_monomial(n, max_exp), 1..=max_gens)
        .prop_map(move |gens| MonomialIdeal::minimalize(n, gens))
}

/// Every product of `t` generators, repetition allowed, minimalized.
fn brute_power(ideal: &MonomialIdeal, t: usize) -> MonomialIdeal {
    let gens = ideal.generators();
    let mut products = vec![Monomial::one(ideal.ambient())];
    for _ in 0..t {
        products = products
            .iter()
            .flat_map(|p| gens.iter().map(move |g| p.checked_mul(g).unwrap()))
            .collect();
    }
    MonomialIdeal::minimalize(ideal.ambient(), products)
}

fn is_minimal(ideal: &MonomialIdeal) -> bool {
    let g = ideal.generators();
    (0..g.len()).all(|i| (0..g.len()).all(|j| i == j || !g[i].divides(&g[j])))
        && g.windows(2).all(|w| w[0] < w[1])
}

/// Equality checked by double inclusion on generators.
fn same_ideal(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    a.generators().iter().all(|g| b.contains(g)) && b.generators().iter().all(|g| a.contains(g))
}

proptest! {
    #[test]
    fn minimalize_is_idempotent(ideal in arb_ideal(4, 8, 3)) {
        prop_assert!(is_minimal(&ideal));
        let again = MonomialIdeal::minimalize(4, ideal.generators().to_vec());
        prop_assert_eq!(again, ideal);
    }

    #[test]
    fn powers_compose(ideal in arb_ideal(3, 5, 2), a in 1u32..=3, b in 1u32..=2) {
        prop_assume!(a * b <= 6);
        let composed = ideal.power(a).unwrap().power(b).unwrap();
        prop_assert_eq!(&composed, &ideal.power(a * b).unwrap());
        prop_assert!(is_minimal(&composed));
        let split = ideal.power(a).unwrap().product(&ideal.power(b).unwrap()).unwrap();
        prop_assert!(same_ideal(&ideal.power(a + b).unwrap(), &split));
    }

    #[test]
    fn power_matches_brute_force(ideal in arb_ideal(3, 6, 2), t in 1usize..=3) {
        prop_assert_eq!(ideal.power(t as u32).unwrap(), brute_power(&ideal, t));
    }

    #[test]
    fn membership_matches_products(
        ideal in arb_ideal(3, 6, 2),
        t in 1usize..=3,
        m in proptest::collection::vec(0u16..=7, 3),
    ) {
        let m = Monomial::new(m);
        let power = ideal.power(t as u32).unwrap();
        // divisibility by some product of t generators, enumerated directly
        let gens = ideal.generators();
        let mut products = vec![Monomial::one(3)];
        for _ in 0..t {
            products = products
                .iter()
                .flat_map(|p| gens.iter().map(move |g| p.checked_mul(g).unwrap()))
                .collect();
        }
        let brute = products.iter().any(|p| p.divides(&m));
        prop_assert_eq!(power.contains(&m), brute);
    }

    #[test]
    fn colon_is_the_quotient_ideal(ideal in arb_ideal(3, 5, 3), f in arb_monomial(3, 3)) {
        // m in (I : f)  iff  m f in I, checked on a box of monomials
        match ideal.colon(&f) {
            Colon::Unit => prop_assert!(ideal.contains(&f)),
            Colon::Proper(q) => {
                prop_assert!(!ideal.contains(&f));
                for a in 0..=3u16 {
                    for b in 0..=3u16 {
                        for c in 0..=3u16 {
                            let m = Monomial::new(vec![a, b, c]);
                            let prod = m.checked_mul(&f).unwrap();
                            prop_assert_eq!(q.contains(&m), ideal.contains(&prod));
                        }
                    }
                }
            }
        }
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn mixed_union_edge_ideal() {
    let vars = names(&["x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4"]);
    let mut vertices: Vec<(String, u32)> = vars[..5].iter().map(|n| (n.clone(), 1)).collect();
    vertices.extend(vars[5..].iter().map(|n| (n.clone(), 2)));
    let idx = |n: &str| vars.iter().position(|v| v == n).unwrap();
    let edges = [
        ("y1", "x1"), ("x2", "y1"), ("x2", "y2"), ("x3", "y3"),
        ("y3", "x4"), ("x4", "y4"), ("x5", "y3"), ("y4", "x5"),
    ]
    .iter()
    .map(|&(a, b)| (idx(a), idx(b)))
    .collect();
    let g = WeightedOrientedGraph::new(vertices, edges).unwrap();
    let expected: Vec<Monomial> = [
        "y1*x1", "x2*y1^2", "x2*y2^2", "x3*y3^2", "y3*x4", "x4*y4^2", "x5*y3^2", "y4*x5",
    ]
    .iter()
    .map(|s| Monomial::parse(s, &vars).unwrap())
    .collect();
    assert_eq!(edge_ideal(&g).unwrap(), MonomialIdeal::minimalize(9, expected));
}

#[test]
fn cyclic_square_power_has_ten_generators() {
    let vars = names(&["x1", "x2", "y1", "y2"]);
    let gens: Vec<Monomial> = ["x1*y1^2", "y2*x1^2", "y1*x2^2", "x2*y2^2"]
        .iter()
        .map(|s| Monomial::parse(s, &vars).unwrap())
        .collect();
    let ideal = MonomialIdeal::minimalize(4, gens);
    let square = ideal.power(2).unwrap();
    assert_eq!(square.len(), 10);
    assert_eq!(square, brute_power(&ideal, 2));
}

#[test]
fn colon_by_a_source_edge_recovers_lower_power() {
    // complete part of the two-component union graph, weights 2 on Y
    let vars = names(&["x1", "x2", "y1", "y2"]);
    let gens: Vec<Monomial> = ["x1*y1^2", "x1*y2^2", "x2*y1^2", "x2*y2^2"]
        .iter()
        .map(|s| Monomial::parse(s, &vars).unwrap())
        .collect();
    let ideal = MonomialIdeal::minimalize(4, gens);
    let f = Monomial::parse("x1*y1^2", &vars).unwrap();
    let q = ideal.power(2).unwrap().colon(&f).into_proper().unwrap();
    assert!(same_ideal(&q, &ideal));
    assert_eq!(q, ideal);
}

#[test]
fn colon_by_top_y_power_gives_x_variables() {
    for seed in 0..50u64 {
        let g = random_gap_free_bipartite(1 + (seed % 4) as usize, 3, 3, seed);
        let a = Analysis::new(&g);
        let stats = a.all_stats().unwrap();
        let y1 = stats[0].y[0];
        let f = Monomial::var_power(g.vertex_count(), y1, g.weight(y1) as u16);
        let q = edge_ideal(&g).unwrap().colon(&f).into_proper().unwrap();
        assert_eq!(q, MonomialIdeal::variables(g.vertex_count(), &stats[0].x));
    }
}

#[test]
fn colon_power_identity_on_generated_unions() {
    for seed in 0..60u64 {
        let parts: Vec<WeightedOrientedGraph> = (0..1 + seed % 2)
            .map(|i| {
                random_gap_free_bipartite(
                    1 + ((seed + i) % 3) as usize,
                    1 + ((seed / 3 + i) % 3) as usize,
                    3,
                    seed * 7 + i,
                )
            })
            .collect();
        let g = WeightedOrientedGraph::disjoint_union(&parts);
        let a = Analysis::new(&g);
        for t in 2..=3 {
            let v = colon_power_identity_check(&a, t).unwrap();
            assert!(v.holds, "seed {seed}, t {t}: {:?}", v.failures);
        }
    }
}
