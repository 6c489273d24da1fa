use std::collections::BTreeMap;
use std::fmt;

use super::ring::Ring;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A sparse matrix over one of the supported rings.
///
/// Rows are stored as ordered maps `column → entry`; zero entries are never stored,
/// so structural equality is matrix equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, nrows: usize, ncols: usize) -> ExactMatrix {
        ExactMatrix {
            ring,
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.rows[i].insert(i, Scalar::one(ring));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I>(ring: Ring, nrows: usize, ncols: usize, entries: I) -> Result<ExactMatrix>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = ExactMatrix::zeros(ring, nrows, ncols);
        for (i, j, v) in entries {
            if v.ring() != ring {
                return Err(Error::RingMismatch(ring, v.ring()));
            }
            if i >= nrows || j >= ncols {
                return Err(Error::Shape(format!("entry ({i},{j}) outside {nrows}x{ncols}")));
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    pub fn from_dense(ring: Ring, rows: &[Vec<Scalar>]) -> Result<ExactMatrix> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged dense matrix".into()));
        }
        ExactMatrix::from_entries(
            ring,
            rows.len(),
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    /// Convenience constructor from small integer literals.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> ExactMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = ExactMatrix::zeros(ring, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged literal");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, Scalar::from_i64(ring, v));
            }
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: Ring, nrows: usize, columns: &[Vec<Scalar>]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(ring, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.nrows && j < self.ncols);
        debug_assert_eq!(v.ring(), self.ring);
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.get_mut(&j) {
            Some(e) => {
                let s = &*e + v;
                if s.is_zero() {
                    row.remove(&j);
                } else {
                    *e = s;
                }
            }
            None => {
                row.insert(j, v.clone());
            }
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Scalar> {
        &self.rows[i]
    }

    pub(crate) fn into_rows(self) -> Vec<BTreeMap<usize, Scalar>> {
        self.rows
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r.get(&i).is_some_and(Scalar::is_one))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.ring, self.ncols, self.nrows);
        for (i, j, v) in self.entries() {
            t.rows[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix product shape mismatch");
        debug_assert_eq!(self.ring, rhs.ring);
        let mut out = ExactMatrix::zeros(self.ring, self.nrows, rhs.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &rhs.rows[k] {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let mut out = self.clone();
        for (i, j, v) in rhs.entries() {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ring, self.nrows, self.ncols);
        for (i, j, v) in self.entries() {
            out.set(i, j, v * c);
        }
        out
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&Scalar::from_i64(self.ring, -1))
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.add(&rhs.neg())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(Scalar::zero(self.ring), |acc, (&j, a)| &acc + &(a * &v[j]))
            })
            .collect()
    }

    /// Adds `block` into this matrix with its top-left corner at `(row_off, col_off)`.
    pub fn embed(&mut self, row_off: usize, col_off: usize, block: &ExactMatrix) {
        assert!(row_off + block.nrows <= self.nrows && col_off + block.ncols <= self.ncols);
        for (i, j, v) in block.entries() {
            self.add_to(row_off + i, col_off + j, v);
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut col_pos = vec![usize::MAX; self.ncols];
        for (k, &j) in cols.iter().enumerate() {
            col_pos[j] = k;
        }
        let mut out = ExactMatrix::zeros(self.ring, rows.len(), cols.len());
        for (k, &i) in rows.iter().enumerate() {
            for (&j, v) in &self.rows[i] {
                if col_pos[j] != usize::MAX {
                    out.rows[k].insert(col_pos[j], v.clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            let cells: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
