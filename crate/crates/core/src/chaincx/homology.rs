use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::complex::{ChainMap, Complex, DegreeHomology, HomologyProfile};
use super::ops::cone;
use crate::exactalg::{invariant_factors, rank};

/// Rank and (over Z) invariant factors of one differential.
struct DiffData {
    rank: usize,
    factors: Vec<BigInt>,
}

fn analyse(c: &Complex, i: i32) -> DiffData {
    match c.differential_ref(i) {
        None => DiffData { rank: 0, factors: Vec::new() },
        Some(d) if c.ring().is_field() => DiffData {
            rank: rank(d).expect("field"),
            factors: Vec::new(),
        },
        Some(d) => {
            let factors = invariant_factors(d).expect("integers");
            DiffData { rank: factors.len(), factors }
        }
    }
}

/// Homology over a field (ranks) or over Z (free ranks plus torsion from invariant factors).
pub fn homology(c: &Complex) -> HomologyProfile {
    let diff_degrees: Vec<i32> = c.differential_degrees().collect();
    let data: BTreeMap<i32, DiffData> = diff_degrees
        .par_iter()
        .map(|&i| (i, analyse(c, i)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let degrees = c
        .degrees()
        .map(|i| {
            let out = data.get(&i).map_or(0, |d| d.rank);
            let incoming = data.get(&(i + 1));
            let inc_rank = incoming.map_or(0, |d| d.rank);
            let torsion = incoming
                .map(|d| d.factors.iter().filter(|x| !x.is_one()).cloned().collect())
                .unwrap_or_default();
            (
                i,
                DegreeHomology {
                    free_rank: c.dim(i) - out - inc_rank,
                    torsion,
                },
            )
        })
        .collect();
    HomologyProfile { degrees }
}

/// True iff all homology vanishes, torsion included.
pub fn is_acyclic(c: &Complex) -> bool {
    homology(c).is_zero()
}

/// `f` is a quasi-isomorphism iff its mapping cone is acyclic.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    is_acyclic(&cone(f))
}
