use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex, GroupAction};
use crate::error::{Error, Result};
use crate::exactalg::{rref, ExactMatrix, Scalar};

/// The quotient of the acted-on complex by the span of `x - g·x`, with the projection.
///
/// The quotient basis is the set of non-pivot coordinates of the row-reduced relation
/// space, so it is a subset of the original basis (labels kept).
pub fn coinvariants(act: &GroupAction) -> Result<(Complex, ChainMap)> {
    let c = act.complex();
    if act.is_trivial() {
        return Ok((c.clone(), ChainMap::identity(c)));
    }
    let ring = c.ring();
    if !ring.is_field() {
        return Err(Error::UnsupportedRing {
            op: "coinvariants of a nontrivial action",
            ring,
        });
    }
    let mut keep: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let mut proj: BTreeMap<i32, ExactMatrix> = BTreeMap::new();
    for i in c.degrees() {
        let n = c.dim(i);
        // Relations (I - g)e_j as rows.
        let mut rel = Vec::new();
        for g in act.generators() {
            let gi = g.component(i);
            let diff = ExactMatrix::identity(ring, n).sub(&gi).transpose();
            rel.extend(diff.into_rows().into_iter().filter(|r| !r.is_empty()));
        }
        let (rows, pivots) = rref(ring, rel, n);
        let mut pivot_row = vec![None; n];
        for (r, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let kept: Vec<usize> = (0..n).filter(|&j| pivot_row[j].is_none()).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &j) in kept.iter().enumerate() {
            pos[j] = k;
        }
        let mut entries = Vec::new();
        for j in 0..n {
            match pivot_row[j] {
                None => entries.push((pos[j], j, Scalar::one(ring))),
                // e_p ≡ e_p - row = -(row restricted to non-pivot coordinates)
                Some(r) => {
                    for (&col, v) in &rows[r] {
                        if col != j {
                            debug_assert!(pivot_row[col].is_none());
                            entries.push((pos[col], j, -v));
                        }
                    }
                }
            }
        }
        proj.insert(i, ExactMatrix::from_entries(ring, kept.len(), n, entries)?);
        keep.insert(i, kept);
    }
    let basis = keep
        .iter()
        .map(|(&i, k)| (i, k.iter().map(|&j| c.labels(i)[j].clone()).collect()))
        .collect();
    let mut diffs = BTreeMap::new();
    for i in c.differential_degrees() {
        let Some(p) = proj.get(&(i - 1)) else { continue };
        let d = p.mul(&c.differential(i));
        let rows: Vec<usize> = (0..d.nrows()).collect();
        diffs.insert(i, d.submatrix(&rows, &keep[&i]));
    }
    let quotient = Complex::new(ring, basis, diffs)?;
    let projection = ChainMap::new(c.clone(), quotient.clone(), proj)?;
    Ok((quotient, projection))
}
