use std::collections::{BTreeMap, HashMap};

use crate::chaincx::{coinvariants, tensor, unit_complex, ChainMap, Complex, GroupAction};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Scalar};

/// `S^m(M)`: coinvariants of `M^{⊗m}` under `Σ_m` permuting factors with Koszul signs.
///
/// Builds the tensor power by repeated binary products and reads factor tuples back from
/// the basis labels, so it shares nothing with the tree-based assembly.
pub fn symmetric_power_oracle(m_complex: &Complex, m: usize) -> Result<Complex> {
    let ring = m_complex.ring();
    match m {
        0 => return Ok(unit_complex(ring)),
        1 => return Ok(m_complex.clone()),
        _ if !ring.is_field() => {
            return Err(Error::UnsupportedRing { op: "symmetric powers", ring });
        }
        _ => {}
    }
    // Relabel M so labels are short and free of the tensor separator.
    let mut degree_of: HashMap<String, i32> = HashMap::new();
    let basis: BTreeMap<i32, Vec<String>> = m_complex
        .basis()
        .iter()
        .map(|(&i, b)| {
            let labels: Vec<String> = (0..b.len()).map(|k| format!("g{i}_{k}")).collect();
            for l in &labels {
                degree_of.insert(l.clone(), i);
            }
            (i, labels)
        })
        .collect();
    let diffs = m_complex
        .differential_degrees()
        .map(|i| (i, m_complex.differential(i)))
        .collect();
    let base = Complex::new(ring, basis, diffs)?;
    let mut power = base.clone();
    for _ in 1..m {
        power = tensor(&power, &base)?;
    }
    let mut position: HashMap<Vec<&str>, usize> = HashMap::new();
    let mut tuples: BTreeMap<i32, Vec<Vec<&str>>> = BTreeMap::new();
    for (&i, labels) in power.basis() {
        for (k, l) in labels.iter().enumerate() {
            let t: Vec<&str> = l.split('⊗').collect();
            debug_assert_eq!(t.len(), m);
            position.insert(t.clone(), k);
            tuples.entry(i).or_default().push(t);
        }
    }
    let generators = (0..m - 1)
        .map(|j| {
            let comps = tuples
                .iter()
                .map(|(&i, ts)| {
                    let mut mat = ExactMatrix::zeros(ring, ts.len(), ts.len());
                    for (col, t) in ts.iter().enumerate() {
                        let mut u = t.clone();
                        u.swap(j, j + 1);
                        let odd = degree_of[t[j]] % 2 != 0 && degree_of[t[j + 1]] % 2 != 0;
                        let sign = Scalar::from_i64(ring, if odd { -1 } else { 1 });
                        mat.set(position[&u], col, sign);
                    }
                    (i, mat)
                })
                .collect();
            ChainMap::new(power.clone(), power.clone(), comps)
        })
        .collect::<Result<Vec<_>>>()?;
    let order = (1..=m as u64).product();
    let (sym, _) = coinvariants(&GroupAction::new(power.clone(), generators, order)?)?;
    Ok(sym)
}
