//! Upper Koszul simplicial complexes `K^a(I)`: subsets `t` of `supp(a)` with
//! `x^(a - t)` in `I`.

use crate::monomial::{Monomial, MonomialIdeal};

use super::complex::SimplicialComplex;
use super::BettiError;

/// `K^a(I)` with its ground set recorded as ambient variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperKoszul {
    pub ground: Vec<usize>,
    pub complex: SimplicialComplex,
}

/// Maximal faces of `K^a(I)` as masks over `supp(a)`.
///
/// A generator `g | x^a` admits exactly the faces avoiding the coordinates
/// where `g` and `a` agree, so each such generator contributes one facet.
pub fn koszul_facets(ideal: &MonomialIdeal, a: &Monomial) -> (Vec<usize>, Vec<u32>) {
    let ground = a.support();
    assert!(ground.len() <= 32, "support too large for mask facets");
    let mut facets: Vec<u32> = ideal
        .generators()
        .iter()
        .filter(|g| g.divides(a))
        .map(|g| {
            ground
                .iter()
                .enumerate()
                .filter(|&(_, &v)| g.exponents()[v] < a.exponents()[v])
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    facets.sort_unstable();
    facets.dedup();
    let maximal: Vec<u32> = facets
        .iter()
        .copied()
        .filter(|&f| !facets.iter().any(|&h| h != f && h & f == f))
        .collect();
    (ground, maximal)
}

pub fn upper_koszul_complex(
    ideal: &MonomialIdeal,
    a: &Monomial,
    ground_limit: usize,
) -> Result<UpperKoszul, BettiError> {
    let (ground, facets) = koszul_facets(ideal, a);
    let complex = SimplicialComplex::from_facets(ground.len(), &facets, ground_limit)?;
    Ok(UpperKoszul { ground, complex })
}

/// Same complex, built by testing ideal membership of `x^(a - t)` for every
/// subset `t` of the support.
pub fn upper_koszul_by_membership(
    ideal: &MonomialIdeal,
    a: &Monomial,
    ground_limit: usize,
) -> Result<UpperKoszul, BettiError> {
    let ground = a.support();
    let complex = SimplicialComplex::from_predicate(ground.len(), ground_limit, |mask| {
        let mut e = a.exponents().to_vec();
        for (i, &v) in ground.iter().enumerate() {
            if mask & (1 << i) != 0 {
                e[v] -= 1;
            }
        }
        ideal.contains(&Monomial::new(e))
    })?;
    Ok(UpperKoszul { ground, complex })
}
