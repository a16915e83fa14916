use std::collections::HashSet;

use crate::monomial::{Monomial, MonomialIdeal};

use super::BettiError;

pub const DEFAULT_LATTICE_CAP: usize = 200_000;

/// All lcms of nonempty subsets of the minimal generators, in canonical
/// monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    pub elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.binary_search(m).is_ok()
    }
}

/// Worklist closure of the generators under lcm. Joining every new element
/// with each generator reaches every subset lcm.
pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<LcmLattice, BettiError> {
    if ideal.is_zero() {
        return Err(BettiError::ZeroIdeal);
    }
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = HashSet::with_capacity(gens.len() * 4);
    let mut frontier: Vec<Monomial> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            frontier.push(g.clone());
        }
    }
    if seen.len() > cap {
        return Err(BettiError::CapExceeded(seen.len()));
    }
    while let Some(m) = frontier.pop() {
        for g in gens {
            if g.divides(&m) {
                continue;
            }
            let l = m.lcm(g);
            if !seen.contains(&l) {
                seen.insert(l.clone());
                if seen.len() > cap {
                    return Err(BettiError::CapExceeded(seen.len()));
                }
                frontier.push(l);
            }
        }
    }
    let mut elements: Vec<Monomial> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(LcmLattice { elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&[u16]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(
            gens[0].len(),
            gens.iter().map(|g| Monomial::new(g.to_vec())).collect(),
        )
    }

    #[test]
    fn two_variables() {
        let l = lcm_lattice(&ideal(&[&[1, 0], &[0, 1]]), 100).unwrap();
        assert_eq!(
            l.elements,
            vec![
                Monomial::new(vec![1, 0]),
                Monomial::new(vec![0, 1]),
                Monomial::new(vec![1, 1])
            ]
        );
    }

    #[test]
    fn principal() {
        let l = lcm_lattice(&ideal(&[&[1, 1]]), 100).unwrap();
        assert_eq!(l.elements, vec![Monomial::new(vec![1, 1])]);
    }

    #[test]
    fn cap_and_zero() {
        let i = ideal(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(lcm_lattice(&i, 7).unwrap().len(), 7);
        assert!(matches!(lcm_lattice(&i, 6), Err(BettiError::CapExceeded(_))));
        assert_eq!(
            lcm_lattice(&MonomialIdeal::zero(2), 10),
            Err(BettiError::ZeroIdeal)
        );
    }
}
