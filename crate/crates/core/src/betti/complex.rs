//! Simplicial complexes on small ground sets and their reduced homology.
//!
//! Faces are bitmasks over a ground set of at most 20 vertices. The empty
//! face is a cell of dimension -1, which makes the chain complex the
//! augmented one and its homology the reduced homology.

use std::collections::VecDeque;

use super::rank::{rank, SparseRow};
use super::BettiError;

pub const DEFAULT_GROUND_LIMIT: usize = 20;

/// A downward-closed family of subsets of `0..ground_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground_size: usize,
    faces: Vec<bool>,
}

impl SimplicialComplex {
    /// The complex generated by `facets` (every subset of a facet is a face).
    pub fn from_facets(
        ground_size: usize,
        facets: &[u32],
        limit: usize,
    ) -> Result<SimplicialComplex, BettiError> {
        if ground_size > limit || ground_size > 31 {
            return Err(BettiError::GroundSetTooLarge(ground_size, limit));
        }
        let size = 1usize << ground_size;
        let mut faces = vec![false; size];
        for &f in facets {
            faces[f as usize] = true;
        }
        // Superset-or: a mask is a face if any superset is a facet.
        for bit in 0..ground_size {
            let b = 1usize << bit;
            for mask in 0..size {
                if mask & b == 0 && faces[mask | b] {
                    faces[mask] = true;
                }
            }
        }
        Ok(SimplicialComplex { ground_size, faces })
    }

    /// Builds from a membership predicate, checking downward closure.
    pub fn from_predicate(
        ground_size: usize,
        limit: usize,
        is_face: impl Fn(u32) -> bool,
    ) -> Result<SimplicialComplex, BettiError> {
        if ground_size > limit || ground_size > 31 {
            return Err(BettiError::GroundSetTooLarge(ground_size, limit));
        }
        let faces: Vec<bool> = (0..1u32 << ground_size).map(&is_face).collect();
        let complex = SimplicialComplex { ground_size, faces };
        assert!(complex.is_downward_closed(), "predicate is not downward closed");
        Ok(complex)
    }

    /// The void complex has no faces at all, not even the empty one.
    pub fn is_void(&self) -> bool {
        !self.faces[0]
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces[face as usize]
    }

    pub fn faces(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(m, _)| m as u32)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces().all(|f| {
            (0..self.ground_size)
                .filter(|&b| f & (1 << b) != 0)
                .all(|b| self.contains(f & !(1 << b)))
        })
    }

    /// Number of faces per dimension `-1..=ground_size-1`, index `dim + 1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; self.ground_size + 1];
        for f in self.faces() {
            counts[f.count_ones() as usize] += 1;
        }
        counts
    }

    /// Reduced Euler characteristic `sum (-1)^k f_k`, `k >= -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }
}

/// Dimensions of reduced homology, `dims[k + 1] = dim H~_k` for
/// `k = -1..=ground_size-1`, over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedHomology {
    pub dims: Vec<usize>,
}

impl ReducedHomology {
    pub fn dim(&self, k: isize) -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.dims.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }
}

/// Sign of facet `face \ {bit}` in the boundary of `face`.
fn boundary_sign(face: u32, bit: u32) -> i64 {
    if (face & ((1 << bit) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Reduced homology straight from the full boundary matrices.
pub fn reduced_homology_direct(complex: &SimplicialComplex) -> ReducedHomology {
    let alive: Vec<bool> = complex.faces.clone();
    homology_of_cells(complex.ground_size, &alive)
}

/// Reduced homology after discarding coreduction and collapse pairs, which
/// leaves the homology unchanged while shrinking the matrices.
pub fn reduced_homology(complex: &SimplicialComplex) -> ReducedHomology {
    let mut alive = complex.faces.clone();
    reduce_pairs(complex.ground_size, &mut alive);
    homology_of_cells(complex.ground_size, &alive)
}

fn homology_of_cells(ground_size: usize, alive: &[bool]) -> ReducedHomology {
    let n = ground_size;
    // cells[d] lists cells of size d (dimension d - 1)
    let mut cells: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for (mask, _) in alive.iter().enumerate().filter(|(_, &a)| a) {
        cells[(mask as u32).count_ones() as usize].push(mask as u32);
    }
    let index_of = |mask: u32, size: usize| -> Option<usize> {
        cells[size].binary_search(&mask).ok()
    };
    // ranks[d] = rank of the boundary from size-d cells to size-(d-1) cells
    let mut ranks = vec![0usize; n + 2];
    for size in 1..=n {
        if cells[size].is_empty() || cells[size - 1].is_empty() {
            continue;
        }
        let rows: Vec<SparseRow> = cells[size]
            .iter()
            .map(|&face| {
                let mut row: SparseRow = (0..n as u32)
                    .filter(|&b| face & (1 << b) != 0)
                    .filter_map(|b| {
                        index_of(face & !(1 << b), size - 1)
                            .map(|col| (col, boundary_sign(face, b)))
                    })
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        ranks[size] = rank(&rows);
    }
    let dims = (0..=n)
        .map(|size| cells[size].len() - ranks[size] - ranks[size + 1])
        .collect();
    ReducedHomology { dims }
}

/// Repeatedly removes pairs `(a, b)` with `a` a facet of `b` where either `b`
/// has `a` as its only alive facet or `a` has `b` as its only alive coface.
fn reduce_pairs(ground_size: usize, alive: &mut [bool]) {
    let full: u32 = if ground_size == 0 { 0 } else { (1u32 << ground_size) - 1 };
    let bits = |m: u32| (0..ground_size as u32).filter(move |&b| m & (1 << b) != 0);
    let co_bits = move |m: u32| (0..ground_size as u32).filter(move |&b| (full & !m) & (1 << b) != 0);

    let mut queued = vec![false; alive.len()];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for (m, &a) in alive.iter().enumerate() {
        if a {
            queue.push_back(m as u32);
            queued[m] = true;
        }
    }
    while let Some(cell) = queue.pop_front() {
        queued[cell as usize] = false;
        if !alive[cell as usize] {
            continue;
        }
        let mut pair = None;
        // coreduction: exactly one alive facet
        let mut facets = bits(cell).map(|b| cell & !(1 << b)).filter(|&f| alive[f as usize]);
        if let (Some(f), None) = (facets.next(), facets.next()) {
            pair = Some((f, cell));
        }
        if pair.is_none() {
            // collapse: exactly one alive coface
            let mut cofaces = co_bits(cell).map(|b| cell | (1 << b)).filter(|&c| alive[c as usize]);
            if let (Some(c), None) = (cofaces.next(), cofaces.next()) {
                pair = Some((cell, c));
            }
        }
        let Some((low, high)) = pair else { continue };
        alive[low as usize] = false;
        alive[high as usize] = false;
        for m in [low, high] {
            let neighbors = bits(m)
                .map(|b| m & !(1 << b))
                .chain(co_bits(m).map(|b| m | (1 << b)));
            for nb in neighbors {
                if alive[nb as usize] && !queued[nb as usize] {
                    queued[nb as usize] = true;
                    queue.push_back(nb);
                }
            }
        }
    }
}
