//! Exact arithmetic over Q, F_p and Z, and the matrix algorithms homology rests on.

mod elim;
mod matrix;
mod ring;
mod scalar;
mod snf;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use matrix::ExactMatrix;
pub use ring::{is_prime, Ring, RingKind};
pub use scalar::Scalar;

pub(crate) use elim::rref;

use crate::error::{Error, Result};

/// Rank of a matrix over a field.
pub fn rank(m: &ExactMatrix) -> Result<usize> {
    if !m.ring().is_field() {
        return Err(Error::UnsupportedRing { op: "rank", ring: m.ring() });
    }
    Ok(elim::unit_reduce(m).pivots)
}

/// A basis of the null space of a matrix over a field, as column vectors.
pub fn kernel_basis(m: &ExactMatrix) -> Result<Vec<Vec<Scalar>>> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::UnsupportedRing { op: "kernel_basis", ring });
    }
    let (rows, pivots) = rref(ring, m.clone().into_rows(), m.ncols());
    let mut is_pivot = vec![false; m.ncols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis = (0..m.ncols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(ring); m.ncols()];
            v[f] = Scalar::one(ring);
            for (row, &p) in rows.iter().zip(&pivots) {
                if let Some(x) = row.get(&f) {
                    v[p] = -x;
                }
            }
            v
        })
        .collect();
    Ok(basis)
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | …`, `d_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: ExactMatrix,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k)
            .filter_map(|i| self.d.get(i, i).as_integer().cloned())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn to_dense_int(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    m.to_dense()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.as_integer().cloned().unwrap()).collect())
        .collect()
}

fn from_dense_int(rows: &[Vec<BigInt>], ncols: usize) -> ExactMatrix {
    let z = Ring::integers();
    ExactMatrix::from_entries(
        z,
        rows.len(),
        ncols,
        rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(move |(j, x)| (i, j, Scalar::Integer(x.clone())))
        }),
    )
    .expect("in range")
}

/// Smith normal form of an integer matrix, with transforms.
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm> {
    if m.ring() != Ring::integers() {
        return Err(Error::UnsupportedRing { op: "smith_normal_form", ring: m.ring() });
    }
    let mut s = snf::DenseSmith::new(to_dense_int(m), m.ncols(), true);
    s.run();
    Ok(SmithForm {
        d: from_dense_int(&s.a, m.ncols()),
        u: from_dense_int(&s.u, m.nrows()),
        v: from_dense_int(&s.v, m.ncols()),
    })
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
///
/// Unit pivots are eliminated sparsely first; only the residual block goes through
/// the dense reduction. This is the path homology over Z takes.
pub fn invariant_factors(m: &ExactMatrix) -> Result<Vec<BigInt>> {
    if m.ring() != Ring::integers() {
        return Err(Error::UnsupportedRing { op: "invariant_factors", ring: m.ring() });
    }
    let red = elim::unit_reduce(m);
    let mut out = vec![BigInt::one(); red.pivots];
    if !red.residual.is_zero() {
        let mut s = snf::DenseSmith::new(to_dense_int(&red.residual), red.residual.ncols(), false);
        s.run();
        out.extend(s.diagonal().into_iter().filter(|x| !x.is_zero()));
    }
    Ok(out)
}

/// Rank over any supported ring (over Z: the number of nonzero invariant factors).
pub fn rank_any(m: &ExactMatrix) -> usize {
    if m.ring().is_field() {
        elim::unit_reduce(m).pivots
    } else {
        invariant_factors(m).expect("integer ring").len()
    }
}

/// Determinant of a square matrix, by fraction-free expansion over the ring's integers
/// or exact field elimination. Small matrices only.
pub fn determinant(m: &ExactMatrix) -> Scalar {
    assert_eq!(m.nrows(), m.ncols());
    let ring = m.ring();
    let n = m.nrows();
    if ring.is_field() {
        let mut a = m.to_dense();
        let mut det = Scalar::one(ring);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Scalar::zero(ring);
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inverse().unwrap();
            for i in c + 1..n {
                let f = &a[i][c] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        det
    } else {
        // Bareiss.
        let mut a = to_dense_int(m);
        if n == 0 {
            return Scalar::one(ring);
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(p, k);
                        sign = -sign;
                    }
                    None => return Scalar::zero(ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Scalar::Integer(sign * &a[n - 1][n - 1])
    }
}
