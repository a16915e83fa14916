//! Monomials and monomial ideals over a fixed set of variables.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::WeightedOrientedGraph;

pub type Exponent = u16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("the zeroth power would be the unit ideal")]
    ZeroPower,
    #[error("colon collapsed to the unit ideal")]
    UnitIdeal,
    #[error("ambient sizes differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("cannot parse monomial `{0}`")]
    Parse(String),
}

/// Exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exponents: Vec<Exponent>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<Exponent>) -> Self {
        let degree = exponents.iter().map(|&e| u32::from(e)).sum();
        Self { exponents, degree }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// `x_i^e` in `n` variables.
    pub fn var_power(n: usize, i: usize, e: Exponent) -> Self {
        let mut exponents = vec![0; n];
        exponents[i] = e;
        Self::new(exponents)
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn ambient(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, IdealError> {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_add(b).ok_or(IdealError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::new(exponents))
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Renders as `x1*y1^2`, or `1` for the unit monomial.
    pub fn render(&self, names: &[String]) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }

    /// Parses the `render` format against a list of variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<Monomial, IdealError> {
        let text = text.trim();
        let mut exponents = vec![0 as Exponent; names.len()];
        if text == "1" {
            return Ok(Monomial::new(exponents));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<Exponent>()
                        .map_err(|_| IdealError::Parse(text.into()))?,
                ),
                None => (factor, 1),
            };
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| IdealError::Parse(text.into()))?;
            exponents[i] = exponents[i]
                .checked_add(exp)
                .ok_or(IdealError::ExponentOverflow)?;
        }
        Ok(Monomial::new(exponents))
    }
}

/// Graded lexicographic: lower degree first; within a degree, the larger
/// exponent on the earliest variable comes first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ambient()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// A monomial ideal stored by its minimal generators in canonical order.
///
/// The empty generator list is the zero ideal. The unit ideal is never
/// represented; see [`Colon`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    ambient: usize,
    generators: Vec<Monomial>,
}

/// Result of a monomial colon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colon {
    Unit,
    Proper(MonomialIdeal),
}

impl Colon {
    pub fn into_proper(self) -> Result<MonomialIdeal, IdealError> {
        match self {
            Colon::Proper(ideal) => Ok(ideal),
            Colon::Unit => Err(IdealError::UnitIdeal),
        }
    }
}

fn minimal_generators(mut monomials: Vec<Monomial>) -> Vec<Monomial> {
    monomials.sort_unstable();
    monomials.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(monomials.len());
    for m in monomials {
        // Sorted by degree, so only earlier elements can divide `m`.
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

impl MonomialIdeal {
    /// Minimalizes `monomials`; empty input yields the zero ideal.
    ///
    /// Panics if a unit monomial is given or if ambient sizes differ.
    pub fn minimalize(ambient: usize, monomials: Vec<Monomial>) -> MonomialIdeal {
        assert!(
            monomials.iter().all(|m| m.ambient() == ambient),
            "monomials over different ambient rings"
        );
        assert!(
            monomials.iter().all(|m| !m.is_one()),
            "unit monomial in a proper ideal"
        );
        MonomialIdeal {
            ambient,
            generators: minimal_generators(monomials),
        }
    }

    pub fn zero(ambient: usize) -> MonomialIdeal {
        MonomialIdeal {
            ambient,
            generators: Vec::new(),
        }
    }

    /// The ideal generated by the given variables.
    pub fn variables(ambient: usize, vars: &[usize]) -> MonomialIdeal {
        Self::minimalize(
            ambient,
            vars.iter().map(|&v| Monomial::var_power(ambient, v, 1)).collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn power(&self, t: u32) -> Result<MonomialIdeal, IdealError> {
        if t == 0 {
            return Err(IdealError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_ambient(other)?;
        let mut products = Vec::with_capacity(self.len() * other.len());
        for a in &self.generators {
            for b in &other.generators {
                products.push(a.checked_mul(b)?);
            }
        }
        Ok(MonomialIdeal::minimalize(self.ambient, products))
    }

    /// `(I : f)`, generated by `u / gcd(u, f)` over the minimal generators.
    pub fn colon(&self, f: &Monomial) -> Colon {
        assert_eq!(f.ambient(), self.ambient, "colon by a foreign monomial");
        let quotients: Vec<Monomial> = self.generators.iter().map(|u| u.strip(f)).collect();
        if quotients.iter().any(Monomial::is_one) {
            return Colon::Unit;
        }
        Colon::Proper(MonomialIdeal::minimalize(self.ambient, quotients))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_ambient(other)?;
        let all = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Ok(MonomialIdeal::minimalize(self.ambient, all))
    }

    /// Union of the generators' supports, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for g in &self.generators {
            for v in g.support() {
                used[v] = true;
            }
        }
        (0..self.ambient).filter(|&v| used[v]).collect()
    }

    /// Comma-separated rendering, e.g. `(x1*y1^2, x2*y1^2)`.
    pub fn render(&self, names: &[String]) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.render(names)).collect();
        format!("({})", gens.join(", "))
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<(), IdealError> {
        if self.ambient != other.ambient {
            return Err(IdealError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

/// Edge ideal over explicit weights and directed edges; `u -> v`
/// contributes `u * v^w(v)`.
pub fn edge_ideal_from_parts(
    weights: &[u32],
    edges: &[(usize, usize)],
) -> Result<MonomialIdeal, IdealError> {
    let n = weights.len();
    let gens = edges
        .iter()
        .map(|&(u, v)| {
            let w = Exponent::try_from(weights[v]).map_err(|_| IdealError::ExponentOverflow)?;
            let mut e = vec![0; n];
            e[u] = 1;
            e[v] = w;
            Ok(Monomial::new(e))
        })
        .collect::<Result<Vec<_>, IdealError>>()?;
    Ok(MonomialIdeal::minimalize(n, gens))
}

pub fn edge_ideal(g: &WeightedOrientedGraph) -> Result<MonomialIdeal, IdealError> {
    edge_ideal_from_parts(g.weights(), g.edges())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn ideal(vars: &[String], gens: &[&str]) -> MonomialIdeal {
        MonomialIdeal::minimalize(
            vars.len(),
            gens.iter().map(|g| Monomial::parse(g, vars).unwrap()).collect(),
        )
    }

    #[test]
    fn minimalize_drops_multiples_and_duplicates() {
        let v = names(&["x", "y"]);
        assert_eq!(ideal(&v, &["x^2", "x^2*y", "x*y"]), ideal(&v, &["x^2", "x*y"]));
        assert_eq!(ideal(&v, &["x*y", "x*y"]).len(), 1);
        assert!(MonomialIdeal::minimalize(2, vec![]).is_zero());
    }

    #[test]
    fn canonical_order_is_graded_lex() {
        let v = names(&["x", "y"]);
        let i = ideal(&v, &["y^2", "x*y^3", "x^2", "y*x"]);
        let rendered: Vec<String> = i.generators().iter().map(|g| g.render(&v)).collect();
        assert_eq!(rendered, ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn powers() {
        let v = names(&["x", "y"]);
        let i = ideal(&v, &["x*y"]);
        assert_eq!(i.power(3).unwrap(), ideal(&v, &["x^3*y^3"]));
        assert_eq!(i.power(1).unwrap(), i);
        assert_eq!(i.power(0), Err(IdealError::ZeroPower));
    }

    #[test]
    fn power_overflow_is_an_error() {
        let big = MonomialIdeal::minimalize(1, vec![Monomial::new(vec![40_000])]);
        assert_eq!(big.power(2), Err(IdealError::ExponentOverflow));
    }

    #[test]
    fn colons() {
        let v = names(&["x", "y"]);
        let i = ideal(&v, &["x*y^2"]);
        let f = Monomial::parse("y^2", &v).unwrap();
        assert_eq!(i.colon(&f), Colon::Proper(ideal(&v, &["x"])));
        let g = Monomial::parse("x*y^3", &v).unwrap();
        assert_eq!(i.colon(&g), Colon::Unit);
        assert_eq!(i.colon(&g).into_proper(), Err(IdealError::UnitIdeal));
    }

    #[test]
    fn sums_and_supports() {
        let v = names(&["x", "y", "z"]);
        assert_eq!(
            ideal(&v, &["x"]).sum(&ideal(&v, &["y"])).unwrap(),
            ideal(&v, &["x", "y"])
        );
        assert_eq!(ideal(&v, &["x*z^2"]).support(), vec![0, 2]);
        let other = MonomialIdeal::zero(2);
        assert_eq!(
            ideal(&v, &["x"]).sum(&other),
            Err(IdealError::AmbientMismatch(3, 2))
        );
    }

    #[test]
    fn render_and_parse() {
        let v = names(&["x1", "y1"]);
        let m = Monomial::parse("x1*y1^2", &v).unwrap();
        assert_eq!(m.exponents(), &[1, 2]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.render(&v), "x1*y1^2");
        assert!(Monomial::parse("z", &v).is_err());
        assert_eq!(Monomial::one(2).render(&v), "1");
    }

    #[test]
    fn single_edge_ideal() {
        let ideal = edge_ideal_from_parts(&[1, 3], &[(0, 1)]).unwrap();
        assert_eq!(ideal.generators(), &[Monomial::new(vec![1, 3])]);
    }
}
