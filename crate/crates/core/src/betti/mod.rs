//! Multigraded Betti numbers of monomial ideals from first principles.
//!
//! `beta_{i,a}(I) = dim H~_{i-1}(K^a(I); Q)` for every `a` in the lcm
//! lattice of `I`; all other multidegrees vanish.

mod complex;
mod koszul;
mod lattice;
mod rank;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{Monomial, MonomialIdeal};

pub use complex::{
    reduced_homology, reduced_homology_direct, ReducedHomology, SimplicialComplex,
    DEFAULT_GROUND_LIMIT,
};
pub use koszul::{koszul_facets, upper_koszul_by_membership, upper_koszul_complex, UpperKoszul};
pub use lattice::{lcm_lattice, LcmLattice, DEFAULT_LATTICE_CAP};
pub use rank::{rank, SparseRow};

pub const FIELD_NOTE: &str = "characteristic 0";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error("lcm lattice exceeds cap ({0} elements)")]
    CapExceeded(usize),
    #[error("multidegree support of {0} variables exceeds limit {1}")]
    GroundSetTooLarge(usize, usize),
    #[error("the zero ideal has no Betti table here")]
    ZeroIdeal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiConfig {
    pub lattice_cap: usize,
    pub ground_limit: usize,
}

impl Default for BettiConfig {
    fn default() -> Self {
        Self {
            lattice_cap: DEFAULT_LATTICE_CAP,
            ground_limit: DEFAULT_GROUND_LIMIT,
        }
    }
}

impl BettiConfig {
    pub fn with_cap(lattice_cap: usize) -> Self {
        Self {
            lattice_cap,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ambient: usize,
    multigraded: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Nonzero `beta_{i,a}`.
    pub fn multigraded(&self) -> &BTreeMap<(usize, Monomial), u64> {
        &self.multigraded
    }

    pub fn get(&self, i: usize, a: &Monomial) -> u64 {
        self.multigraded.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    /// Nonzero `beta_{i,j}` keyed by `(i, j)`.
    pub fn totals(&self) -> BTreeMap<(usize, u32), u64> {
        let mut totals = BTreeMap::new();
        for ((i, a), &b) in &self.multigraded {
            *totals.entry((*i, a.degree())).or_insert(0) += b;
        }
        totals
    }

    /// Total Betti number `beta_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.multigraded
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, &b)| b)
            .sum()
    }

    pub fn pd(&self) -> usize {
        self.multigraded.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn reg(&self) -> i64 {
        self.multigraded
            .keys()
            .map(|(i, a)| i64::from(a.degree()) - *i as i64)
            .max()
            .unwrap_or(0)
    }

    /// `i,j,betti` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,betti\n");
        for ((i, j), b) in self.totals() {
            out.push_str(&format!("{i},{j},{b}\n"));
        }
        out
    }

    /// `i,multidegree,betti` rows, multidegree as space-separated exponents.
    pub fn multigraded_csv(&self) -> String {
        let mut out = String::from("i,multidegree,betti\n");
        for ((i, a), b) in &self.multigraded {
            let exps: Vec<String> = a.exponents().iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("{i},{},{b}\n", exps.join(" ")));
        }
        out
    }
}

/// Homology of `K^a(I)` with shortcuts for simplices and cones.
fn koszul_homology(
    ideal: &MonomialIdeal,
    a: &Monomial,
    ground_limit: usize,
) -> Result<Option<ReducedHomology>, BettiError> {
    let support = a.support().len();
    if support > ground_limit.min(31) {
        return Err(BettiError::GroundSetTooLarge(support, ground_limit));
    }
    let (ground, facets) = koszul_facets(ideal, a);
    let full = if ground.is_empty() {
        0
    } else {
        u32::MAX >> (32 - ground.len())
    };
    let common = facets.iter().fold(full, |acc, &f| acc & f);
    if facets.is_empty() || common != 0 {
        return Ok(None);
    }
    let complex = SimplicialComplex::from_facets(ground.len(), &facets, ground_limit)?;
    Ok(Some(reduced_homology(&complex)))
}

pub fn betti_table(ideal: &MonomialIdeal, config: &BettiConfig) -> Result<BettiTable, BettiError> {
    let lattice = lcm_lattice(ideal, config.lattice_cap)?;
    let per_degree: Vec<Vec<((usize, Monomial), u64)>> = lattice
        .elements
        .par_iter()
        .map(|a| {
            let Some(h) = koszul_homology(ideal, a, config.ground_limit)? else {
                return Ok(Vec::new());
            };
            Ok(h.dims
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| ((i, a.clone()), d as u64))
                .collect())
        })
        .collect::<Result<_, BettiError>>()?;
    Ok(BettiTable {
        ambient: ideal.ambient(),
        multigraded: per_degree.into_iter().flatten().collect(),
    })
}

/// Regularity, projective dimension and depth of the module `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInvariants {
    pub reg: i64,
    pub pd: usize,
    /// `n - pd(I)`, the depth of `I` as a module.
    pub depth: i64,
    pub field_note: String,
}

impl OracleInvariants {
    pub fn from_table(table: &BettiTable, ambient_n: usize) -> Self {
        let pd = table.pd();
        Self {
            reg: table.reg(),
            pd,
            depth: ambient_n as i64 - pd as i64,
            field_note: FIELD_NOTE.to_string(),
        }
    }
}

pub fn oracle_invariants(
    ideal: &MonomialIdeal,
    ambient_n: usize,
    config: &BettiConfig,
) -> Result<OracleInvariants, BettiError> {
    let table = betti_table(ideal, config)?;
    Ok(OracleInvariants::from_table(&table, ambient_n))
}
