use oriented_ideal::betti::{
    betti_table, koszul_facets, lcm_lattice, oracle_invariants, reduced_homology,
    reduced_homology_direct, upper_koszul_by_membership, upper_koszul_complex, BettiConfig,
    SimplicialComplex, DEFAULT_GROUND_LIMIT,
};
use oriented_ideal::monomial::{Monomial, MonomialIdeal};
use proptest::prelude::*;

fn arb_ideal(n: usize, max_gens: usize, max_exp: u16) -> impl Strategy<Value = MonomialIdeal> {
    proptest::collection::vec(
        proptest::collection::vec(0..=max_exp, n)
            .prop_filter("unit", |e| e.iter().any(|&x| x > 0))
            .prop_map(Monomial::new),
        1..=max_gens,
    )
    .prop_map(move |gens| MonomialIdeal::minimalize(n, gens))
}

/// Moves an ideal in `n` variables into variables `offset..offset+n` of a
/// ring with `total` variables.
fn shift(ideal: &MonomialIdeal, offset: usize, total: usize) -> MonomialIdeal {
    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            let mut e = vec![0; total];
            e[offset..offset + g.ambient()].copy_from_slice(g.exponents());
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::minimalize(total, gens)
}

/// Subset lcms of the generators, enumerated directly.
fn subset_lcms(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let g = ideal.generators();
    let mut out: Vec<Monomial> = (1u32..1 << g.len())
        .map(|mask| {
            (0..g.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| g[i].clone())
                .reduce(|a, b| a.lcm(&b))
                .unwrap()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lattice_is_the_set_of_subset_lcms(ideal in arb_ideal(4, 6, 3)) {
        let lattice = lcm_lattice(&ideal, 10_000).unwrap();
        prop_assert_eq!(lattice.elements, subset_lcms(&ideal));
    }

    #[test]
    fn facet_construction_matches_membership(ideal in arb_ideal(5, 5, 3)) {
        for a in lcm_lattice(&ideal, 10_000).unwrap().elements {
            let fast = upper_koszul_complex(&ideal, &a, DEFAULT_GROUND_LIMIT).unwrap();
            let slow = upper_koszul_by_membership(&ideal, &a, DEFAULT_GROUND_LIMIT).unwrap();
            prop_assert!(fast.complex.is_downward_closed());
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn reduction_preserves_homology(
        n in 1usize..=7,
        facets in proptest::collection::vec(any::<u32>(), 0..6),
    ) {
        let mask = (1u32 << n) - 1;
        let facets: Vec<u32> = facets.iter().map(|f| f & mask).collect();
        let c = SimplicialComplex::from_facets(n, &facets, DEFAULT_GROUND_LIMIT).unwrap();
        let h = reduced_homology(&c);
        prop_assert_eq!(&h, &reduced_homology_direct(&c));
        prop_assert_eq!(h.euler_characteristic(), c.reduced_euler_characteristic());
    }

    #[test]
    fn table_basics(ideal in arb_ideal(6, 5, 3)) {
        let table = betti_table(&ideal, &BettiConfig::default()).unwrap();
        prop_assert_eq!(table.total(0), ideal.len() as u64);
        prop_assert!(table.pd() < ideal.len());
        prop_assert!(table.pd() <= ideal.ambient());
        let lattice = lcm_lattice(&ideal, 10_000).unwrap();
        for (i, a) in table.multigraded().keys() {
            prop_assert!(lattice.contains(a));
            prop_assert!(*i <= ideal.ambient());
        }
        // zeroth Betti numbers sit exactly on the generators
        for g in ideal.generators() {
            prop_assert_eq!(table.get(0, g), 1);
        }
        let totals = table.totals();
        let summed: u64 = totals.values().sum();
        prop_assert_eq!(summed, table.multigraded().values().sum::<u64>());
    }

    #[test]
    fn disjoint_sum_and_product(i in arb_ideal(3, 3, 3), j in arb_ideal(3, 3, 3)) {
        let cfg = BettiConfig::default();
        let (a, b) = (shift(&i, 0, 6), shift(&j, 3, 6));
        let oi = oracle_invariants(&a, 6, &cfg).unwrap();
        let oj = oracle_invariants(&b, 6, &cfg).unwrap();
        let sum = oracle_invariants(&a.sum(&b).unwrap(), 6, &cfg).unwrap();
        prop_assert_eq!(sum.pd, oi.pd + oj.pd + 1);
        prop_assert_eq!(sum.reg, oi.reg + oj.reg - 1);
        let prod = oracle_invariants(&a.product(&b).unwrap(), 6, &cfg).unwrap();
        prop_assert_eq!(prod.pd, oi.pd + oj.pd);
        prop_assert_eq!(prod.reg, oi.reg + oj.reg);
    }

    #[test]
    fn colon_does_not_raise_pd(
        ideal in arb_ideal(5, 5, 3),
        f in proptest::collection::vec(0u16..=3, 5),
    ) {
        let f = Monomial::new(f);
        prop_assume!(!f.is_one());
        let cfg = BettiConfig::default();
        if let Ok(q) = ideal.colon(&f).into_proper() {
            let before = oracle_invariants(&ideal, 5, &cfg).unwrap().pd;
            let after = oracle_invariants(&q, 5, &cfg).unwrap().pd;
            prop_assert!(before >= after);
        }
    }
}

#[test]
fn koszul_facets_of_two_variables() {
    let i = MonomialIdeal::variables(2, &[0, 1]);
    let (ground, facets) = koszul_facets(&i, &Monomial::new(vec![1, 1]));
    assert_eq!(ground, vec![0, 1]);
    assert_eq!(facets, vec![0b01, 0b10]);
}

#[test]
fn cyclic_square_lattice_size() {
    // subset lcms over the 15 nonempty subsets of the four generators
    let vars: Vec<String> = ["x1", "x2", "y1", "y2"].iter().map(|s| s.to_string()).collect();
    let gens: Vec<Monomial> = ["x1*y1^2", "y2*x1^2", "y1*x2^2", "x2*y2^2"]
        .iter()
        .map(|s| Monomial::parse(s, &vars).unwrap())
        .collect();
    let ideal = MonomialIdeal::minimalize(4, gens);
    let expected = subset_lcms(&ideal);
    let lattice = lcm_lattice(&ideal, 100).unwrap();
    assert_eq!(lattice.elements, expected);
    assert_eq!(lattice.len(), 15);
}

#[test]
fn cap_is_reported() {
    let ideal = MonomialIdeal::variables(6, &[0, 1, 2, 3, 4, 5]);
    let err = betti_table(&ideal, &BettiConfig::with_cap(10)).unwrap_err();
    assert!(matches!(err, oriented_ideal::BettiError::CapExceeded(_)));
}
