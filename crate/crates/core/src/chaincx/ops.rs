use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, Ring, Scalar};

/// The ground ring as a complex: one generator in degree 0.
pub fn unit_complex(ring: Ring) -> Complex {
    let basis = BTreeMap::from([(0, vec!["1".to_string()])]);
    Complex::new(ring, basis, BTreeMap::new()).expect("unit complex is valid")
}

/// `c[s]`: degree `i` of the result is degree `i - s` of `c`. No sign twist on `d`.
pub fn shift(c: &Complex, s: i32) -> Complex {
    let basis = c.basis().iter().map(|(&i, b)| (i + s, b.clone())).collect();
    let diffs = c
        .differential_degrees()
        .map(|i| (i + s, c.differential(i)))
        .collect();
    Complex::new(c.ring(), basis, diffs).expect("shift preserves validity")
}

/// Mapping cone: `cone(f)_i = Y_i ⊕ X_{i-1}`, `d(y, x) = (dy + f x, -dx)`.
pub fn cone(f: &ChainMap) -> Complex {
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let degrees: std::collections::BTreeSet<i32> = y.degrees().chain(x.degrees().map(|i| i + 1)).collect();
    let mut basis = BTreeMap::new();
    for &i in &degrees {
        let mut b: Vec<String> = y.labels(i).iter().map(|l| format!("t:{l}")).collect();
        b.extend(x.labels(i - 1).iter().map(|l| format!("s:{l}")));
        basis.insert(i, b);
    }
    let mut diffs = BTreeMap::new();
    for &i in &degrees {
        let (yi, xi1) = (y.dim(i), x.dim(i - 1));
        let (yi1, xi2) = (y.dim(i - 1), x.dim(i - 2));
        let mut d = ExactMatrix::zeros(ring, yi1 + xi2, yi + xi1);
        d.embed(0, 0, &y.differential(i));
        d.embed(0, yi, &f.component(i - 1));
        d.embed(yi1, yi, &x.differential(i - 1).neg());
        diffs.insert(i, d);
    }
    Complex::new(ring, basis, diffs).expect("cone satisfies d² = 0")
}

/// A basis element of a tensor factor: `(degree, index within that degree)`.
pub type BasisRef = (i32, usize);

/// Tensor product together with, per degree, the factor pair behind each basis element.
pub(crate) fn tensor_with_pairs(
    a: &Complex,
    b: &Complex,
) -> Result<(Complex, BTreeMap<i32, Vec<(BasisRef, BasisRef)>>)> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring(), b.ring()));
    }
    let ring = a.ring();
    let mut pairs: BTreeMap<i32, Vec<(BasisRef, BasisRef)>> = BTreeMap::new();
    for p in a.degrees() {
        for q in b.degrees() {
            let e = pairs.entry(p + q).or_default();
            for x in 0..a.dim(p) {
                for y in 0..b.dim(q) {
                    e.push(((p, x), (q, y)));
                }
            }
        }
    }
    // Lexicographic by (factor-a position, factor-b position); a's global order is by degree.
    for v in pairs.values_mut() {
        v.sort();
    }
    let index: BTreeMap<i32, std::collections::HashMap<(BasisRef, BasisRef), usize>> = pairs
        .iter()
        .map(|(&n, v)| (n, v.iter().enumerate().map(|(k, &pr)| (pr, k)).collect()))
        .collect();
    let basis = pairs
        .iter()
        .map(|(&n, v)| {
            let labels = v
                .iter()
                .map(|&((p, x), (q, y))| format!("{}⊗{}", a.labels(p)[x], b.labels(q)[y]))
                .collect();
            (n, labels)
        })
        .collect();

    let da: BTreeMap<i32, Vec<Vec<(usize, Scalar)>>> = a
        .degrees()
        .map(|p| (p, columns(&a.differential(p))))
        .collect();
    let db: BTreeMap<i32, Vec<Vec<(usize, Scalar)>>> = b
        .degrees()
        .map(|q| (q, columns(&b.differential(q))))
        .collect();
    let minus = Scalar::from_i64(ring, -1);
    let mut diffs = BTreeMap::new();
    for (&n, v) in &pairs {
        let Some(tgt) = index.get(&(n - 1)) else { continue };
        let mut entries = Vec::new();
        for (col, &((p, x), (q, y))) in v.iter().enumerate() {
            // dx ⊗ y
            for (x2, c) in &da[&p][x] {
                entries.push((tgt[&((p - 1, *x2), (q, y))], col, c.clone()));
            }
            // (-1)^|x| x ⊗ dy
            for (y2, c) in &db[&q][y] {
                let c = if p.rem_euclid(2) == 1 { c * &minus } else { c.clone() };
                entries.push((tgt[&((p, x), (q - 1, *y2))], col, c));
            }
        }
        if !entries.is_empty() {
            diffs.insert(n, ExactMatrix::from_entries(ring, tgt.len(), v.len(), entries)?);
        }
    }
    Ok((Complex::new(ring, basis, diffs)?, pairs))
}

fn columns(m: &ExactMatrix) -> Vec<Vec<(usize, Scalar)>> {
    let mut cols = vec![Vec::new(); m.ncols()];
    for (i, j, v) in m.entries() {
        cols[j].push((i, v.clone()));
    }
    cols
}

/// `a ⊗ b` with the Koszul rule `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`. In each degree the
/// basis is ordered lexicographically by the factors' positions.
pub fn tensor(a: &Complex, b: &Complex) -> Result<Complex> {
    tensor_with_pairs(a, b).map(|(c, _)| c)
}

/// Iterated tensor product `f_1 ⊗ (… ⊗ f_k)` folded from the left, with the tuple of
/// factor basis elements behind every basis element. The empty product is the unit.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub complex: Complex,
    /// Per degree, in basis order: one `(degree, index)` per factor.
    pub tuples: BTreeMap<i32, Vec<Vec<BasisRef>>>,
}

impl TensorProduct {
    /// Reverse lookup from factor tuples to `(degree, index)` in the product.
    pub fn index(&self) -> std::collections::HashMap<Vec<BasisRef>, BasisRef> {
        self.tuples
            .iter()
            .flat_map(|(&n, v)| v.iter().enumerate().map(move |(k, t)| (t.clone(), (n, k))))
            .collect()
    }
}

pub fn tensor_many(ring: Ring, factors: &[&Complex]) -> Result<TensorProduct> {
    let mut complex = unit_complex(ring);
    let mut tuples: BTreeMap<i32, Vec<Vec<BasisRef>>> = BTreeMap::from([(0, vec![Vec::new()])]);
    for (k, f) in factors.iter().enumerate() {
        if f.ring() != ring {
            return Err(Error::RingMismatch(ring, f.ring()));
        }
        let (next, pairs) = tensor_with_pairs(&complex, f)?;
        let next_tuples = pairs
            .iter()
            .map(|(&n, v)| {
                let ts = v
                    .iter()
                    .map(|&((p, x), fy)| {
                        let mut t = tuples[&p][x].clone();
                        t.push(fy);
                        t
                    })
                    .collect();
                (n, ts)
            })
            .collect();
        // Drop the leading unit label once the first real factor is in.
        complex = if k == 0 { relabel_drop_unit(&next, f) } else { next };
        tuples = next_tuples;
    }
    Ok(TensorProduct { complex, tuples })
}

fn relabel_drop_unit(c: &Complex, f: &Complex) -> Complex {
    let basis = f.basis().clone();
    debug_assert_eq!(c.dims(), f.dims());
    let diffs = c.differential_degrees().map(|i| (i, c.differential(i))).collect();
    Complex::new(c.ring(), basis, diffs).expect("relabeling preserves validity")
}

/// Degreewise direct sum with its split injections. Labels are prefixed `k:` by summand.
pub fn direct_sum(ring: Ring, cs: &[Complex]) -> Result<(Complex, Vec<ChainMap>)> {
    for c in cs {
        if c.ring() != ring {
            return Err(Error::RingMismatch(ring, c.ring()));
        }
    }
    let degrees: std::collections::BTreeSet<i32> = cs.iter().flat_map(|c| c.degrees()).collect();
    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    // offsets[k][deg] = first index of summand k in that degree
    let mut offsets: Vec<BTreeMap<i32, usize>> = vec![BTreeMap::new(); cs.len()];
    for &i in &degrees {
        let b = basis.entry(i).or_default();
        for (k, c) in cs.iter().enumerate() {
            offsets[k].insert(i, b.len());
            b.extend(c.labels(i).iter().map(|l| format!("{k}:{l}")));
        }
    }
    let dim = |i: i32| basis.get(&i).map_or(0, Vec::len);
    let mut diffs = BTreeMap::new();
    for &i in &degrees {
        let mut d = ExactMatrix::zeros(ring, dim(i - 1), dim(i));
        for (k, c) in cs.iter().enumerate() {
            if let Some(dk) = c.differential_ref(i) {
                d.embed(offsets[k][&(i - 1)], offsets[k][&i], dk);
            }
        }
        diffs.insert(i, d);
    }
    let sum = Complex::new(ring, basis, diffs)?;
    let injections = cs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let comps = c
                .degrees()
                .map(|i| {
                    let mut m = ExactMatrix::zeros(ring, sum.dim(i), c.dim(i));
                    m.embed(offsets[k][&i], 0, &ExactMatrix::identity(ring, c.dim(i)));
                    (i, m)
                })
                .collect();
            ChainMap::new(c.clone(), sum.clone(), comps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sum, injections))
}
