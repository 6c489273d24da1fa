use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense Smith reduction over Z. When `track` is set, also maintains `u`, `v`
/// with `u · a_orig · v = a` throughout.
pub(crate) struct DenseSmith {
    pub a: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    track: bool,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

impl DenseSmith {
    pub fn new(a: Vec<Vec<BigInt>>, ncols: usize, track: bool) -> DenseSmith {
        let m = a.len();
        DenseSmith {
            a,
            u: if track { identity(m) } else { Vec::new() },
            v: if track { identity(ncols) } else { Vec::new() },
            track,
        }
    }

    fn ncols(&self) -> usize {
        self.a.first().map_or(self.v.len(), Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if self.track {
                self.u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in &mut self.a {
                r.swap(i, j);
            }
            if self.track {
                for r in &mut self.v {
                    r.swap(i, j);
                }
            }
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            *x += q * y;
        }
        if self.track {
            let src = self.u[j].clone();
            for (x, y) in self.u[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in &mut self.a {
            let y = r[j].clone();
            r[i] += q * y;
        }
        if self.track {
            for r in &mut self.v {
                let y = r[j].clone();
                r[i] += q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if self.track {
            for x in &mut self.u[i] {
                *x = -&*x;
            }
        }
    }

    /// Position of a smallest-magnitude nonzero entry in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.len() {
            for j in t..self.ncols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    pub fn run(&mut self) {
        let m = self.a.len();
        let n = self.ncols();
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else { return };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&p);
                    self.add_row(i, t, &-q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&p);
                    self.add_col(j, t, &-q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                // Divisibility: fold an offending row into row t and re-reduce.
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.a.len().min(self.ncols());
        (0..k).map(|i| self.a[i][i].clone()).collect()
    }
}
