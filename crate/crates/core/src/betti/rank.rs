//! Exact rank over the rationals by fraction-free elimination on sparse
//! integer rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

type BigRow = Vec<(usize, BigInt)>;

/// Rank over Q of the matrix whose rows are given.
pub fn rank(rows: &[SparseRow]) -> usize {
    let mut pending: Vec<BigRow> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    let mut rank = 0;
    while !pending.is_empty() {
        // Pivot: the row with the smallest leading column, preferring
        // entries of small magnitude and short rows.
        let pivot_idx = (0..pending.len())
            .min_by(|&a, &b| {
                let (ra, rb) = (&pending[a], &pending[b]);
                ra[0]
                    .0
                    .cmp(&rb[0].0)
                    .then_with(|| ra[0].1.abs().cmp(&rb[0].1.abs()))
                    .then_with(|| ra.len().cmp(&rb.len()))
            })
            .expect("pending is nonempty");
        let pivot = pending.swap_remove(pivot_idx);
        let lead = pivot[0].0;
        rank += 1;
        pending = pending
            .into_iter()
            .filter_map(|row| {
                if row[0].0 != lead {
                    return Some(row);
                }
                let reduced = eliminate(&row, &pivot);
                (!reduced.is_empty()).then_some(reduced)
            })
            .collect();
    }
    rank
}

/// `p * row - r * pivot` where `p`, `r` are the leading entries divided by
/// their gcd; the result is divided by its content.
fn eliminate(row: &BigRow, pivot: &BigRow) -> BigRow {
    let g = row[0].1.gcd(&pivot[0].1);
    let row_scale = &pivot[0].1 / &g;
    let pivot_scale = &row[0].1 / &g;
    let mut out: BigRow = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, value) = if ci < cj {
            i += 1;
            (ci, &row_scale * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&pivot_scale * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (
                ci,
                &row_scale * &row[i - 1].1 - &pivot_scale * &pivot[j - 1].1,
            )
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    let content = out
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for (_, v) in &mut out {
            *v /= &content;
        }
    }
    out
}
