//! Sparse elimination kernels shared by rank, kernels and invariant factors.

use std::collections::{BTreeMap, BTreeSet};

use super::matrix::ExactMatrix;
use super::ring::Ring;
use super::scalar::Scalar;

type SparseRow = BTreeMap<usize, Scalar>;

/// Result of pivoting on unit entries until none remain.
pub(crate) struct UnitReduction {
    /// Number of unit pivots taken; each contributes an invariant factor 1.
    pub pivots: usize,
    /// What is left once pivot rows and columns are removed. Over a field this is zero.
    pub residual: ExactMatrix,
}

/// Gaussian elimination restricted to unit pivots.
///
/// Over a field every nonzero entry is a unit, so `pivots` is the rank. Over Z the
/// residual is equivalent (by unimodular operations) to the input with the pivot
/// rows and columns deleted, so its invariant factors complete the input's.
pub(crate) fn unit_reduce(m: &ExactMatrix) -> UnitReduction {
    let ring = m.ring();
    let ncols = m.ncols();
    let mut rows: Vec<Option<SparseRow>> = m.clone().into_rows().into_iter().map(Some).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.as_ref().unwrap().keys() {
            col_rows[j].insert(i);
        }
    }
    let mut col_done = vec![false; ncols];
    let mut pivots = 0;
    loop {
        let mut progress = false;
        for j in 0..ncols {
            if col_done[j] || col_rows[j].is_empty() {
                continue;
            }
            // Markowitz-style choice: the shortest row with a unit in this column.
            let best = col_rows[j]
                .iter()
                .copied()
                .filter(|&i| rows[i].as_ref().unwrap()[&j].is_unit())
                .min_by_key(|&i| rows[i].as_ref().unwrap().len());
            let Some(p) = best else { continue };
            let prow = rows[p].take().unwrap();
            for &c in prow.keys() {
                col_rows[c].remove(&p);
            }
            let inv = prow[&j].inverse().unwrap();
            let targets: Vec<usize> = col_rows[j].iter().copied().collect();
            for k in targets {
                let row = rows[k].as_mut().unwrap();
                let factor = &row[&j] * &inv;
                for (&c, v) in &prow {
                    let delta = -(&factor * v);
                    match row.get_mut(&c) {
                        Some(e) => {
                            let s = &*e + &delta;
                            if s.is_zero() {
                                row.remove(&c);
                                col_rows[c].remove(&k);
                            } else {
                                *e = s;
                            }
                        }
                        None => {
                            row.insert(c, delta);
                            col_rows[c].insert(k);
                        }
                    }
                }
            }
            debug_assert!(col_rows[j].is_empty());
            col_done[j] = true;
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..rows.len())
        .filter(|&i| rows[i].as_ref().is_some_and(|r| !r.is_empty()))
        .collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|&j| !col_rows[j].is_empty()).collect();
    let mut col_pos = vec![0usize; ncols];
    for (k, &j) in live_cols.iter().enumerate() {
        col_pos[j] = k;
    }
    let residual = ExactMatrix::from_entries(
        ring,
        live_rows.len(),
        live_cols.len(),
        live_rows.iter().enumerate().flat_map(|(k, &i)| {
            let col_pos = &col_pos;
            rows[i]
                .as_ref()
                .unwrap()
                .iter()
                .map(move |(&j, v)| (k, col_pos[j], v.clone()))
                .collect::<Vec<_>>()
        }),
    )
    .expect("residual entries are in range");
    UnitReduction { pivots, residual }
}

/// Reduced row echelon form over a field. Returns the nonzero rows and their pivot columns.
pub(crate) fn rref(ring: Ring, rows: Vec<SparseRow>, ncols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    debug_assert!(ring.is_field());
    let mut pending: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<SparseRow> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..ncols {
        let pick = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r.contains_key(&c))
            .min_by_key(|(_, r)| r.len())
            .map(|(i, _)| i);
        let Some(pi) = pick else { continue };
        let mut prow = pending.swap_remove(pi);
        let inv = prow[&c].inverse().expect("field pivot");
        for v in prow.values_mut() {
            *v = &*v * &inv;
        }
        for r in pending.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = r.get(&c).cloned() {
                axpy(r, &-f, &prow);
            }
        }
        pending.retain(|r| !r.is_empty());
        done.push(prow);
        pivots.push(c);
    }
    (done, pivots)
}

/// `row += f * other`, dropping cancelled entries.
pub(crate) fn axpy(row: &mut SparseRow, f: &Scalar, other: &SparseRow) {
    for (&c, v) in other {
        let delta = f * v;
        match row.get_mut(&c) {
            Some(e) => {
                let s = &*e + &delta;
                if s.is_zero() {
                    row.remove(&c);
                } else {
                    *e = s;
                }
            }
            None => {
                if !delta.is_zero() {
                    row.insert(c, delta);
                }
            }
        }
    }
}
