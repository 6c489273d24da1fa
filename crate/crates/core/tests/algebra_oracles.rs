mod common;

use std::collections::BTreeMap;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use operad_coproduct::chaincx::{
    coinvariants, cone, direct_sum, homology, is_acyclic, is_quasi_iso, tensor, tensor_many, ChainMap, Complex,
    GroupAction,
};
use operad_coproduct::exactalg::{
    determinant, invariant_factors, rank, smith_normal_form, ExactMatrix, Ring, Scalar,
};
use rand::Rng;

fn integer(x: &Scalar) -> BigInt {
    x.to_bigint().unwrap()
}

#[test]
fn smith_form_recomposes() {
    let z = Ring::integers();
    let q = Ring::rationals();
    let mut rng = rng(1);
    for _ in 0..250 {
        let (rows, cols) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let m = random_matrix(z, &mut rng, rows, cols, 9, 0.7);
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert!(determinant(&snf.u).to_bigint().unwrap().abs().is_one());
        assert!(determinant(&snf.v).to_bigint().unwrap().abs().is_one());
        let mut diag = Vec::new();
        for (i, j, x) in snf.d.entries() {
            assert_eq!(i, j, "off-diagonal entry");
            diag.push((i, integer(x)));
        }
        diag.sort();
        for (k, (i, x)) in diag.iter().enumerate() {
            assert_eq!(*i, k, "zeros must come last");
            assert!(x.is_positive());
            if k > 0 {
                assert!((x % &diag[k - 1].1).is_zero(), "divisibility");
            }
        }
        let factors = invariant_factors(&m).unwrap();
        assert_eq!(factors, diag.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>());
        let mq = ExactMatrix::from_entries(q, rows, cols, m.entries().map(|(i, j, x)| (i, j, Scalar::from_bigint(q, &integer(x))))).unwrap();
        assert_eq!(rank(&mq).unwrap(), factors.len());
        if rows == cols && rows > 0 {
            let det: BigInt = if factors.len() == rows { factors.iter().product() } else { BigInt::zero() };
            assert_eq!(integer(&determinant(&m)).abs(), det);
        }
    }
}

#[test]
fn smith_form_examples() {
    let z = Ring::integers();
    let f = |rows: &[&[i64]]| invariant_factors(&ExactMatrix::from_i64(z, rows)).unwrap();
    assert_eq!(f(&[&[2, 0], &[0, 3]]), big(&[1, 6]));
    assert_eq!(f(&[&[2, 4], &[6, 8]]), big(&[2, 4]));
    let zero = smith_normal_form(&ExactMatrix::zeros(z, 2, 3)).unwrap();
    assert!(zero.d.is_zero() && zero.u.is_identity() && zero.v.is_identity());
}

fn convolve(a: &BTreeMap<i32, usize>, b: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            if x * y > 0 {
                *out.entry(i + j).or_insert(0) += x * y;
            }
        }
    }
    out
}

#[test]
fn kunneth_over_fields() {
    let mut rng = rng(2);
    for ring in [Ring::prime_field(3).unwrap(), Ring::rationals()] {
        for _ in 0..100 {
            let (lo, hi) = (rng.gen_range(-2..=1), rng.gen_range(0..=2));
            let a = random_complex(ring, &mut rng, lo, 2, 3);
            let b = random_complex(ring, &mut rng, 0, hi, 3);
            a.check_square_zero().unwrap();
            b.check_square_zero().unwrap();
            let ab = tensor(&a, &b).unwrap();
            ab.check_square_zero().unwrap();
            let expected = convolve(&homology(&a).ranks(), &homology(&b).ranks());
            assert_eq!(homology(&ab).ranks(), expected);
            let dims = convolve(&a.dims(), &b.dims());
            assert_eq!(ab.dims().into_iter().filter(|(_, d)| *d > 0).collect::<BTreeMap<_, _>>(), dims);
        }
    }
}

#[test]
fn quasi_isomorphisms_through_cones() {
    let mut rng = rng(3);
    for ring in [Ring::prime_field(5).unwrap(), Ring::rationals()] {
        for _ in 0..40 {
            let c = random_complex(ring, &mut rng, 0, 3, 3);
            let id = ChainMap::identity(&c);
            id.check_commutes().unwrap();
            assert!(is_quasi_iso(&id));
            let zero = ChainMap::zero(&c, &c);
            assert_eq!(is_quasi_iso(&zero), is_acyclic(&c));
            cone(&zero).check_square_zero().unwrap();

            // C → C ⊕ cone(id_D) is a quasi-isomorphism
            let d = random_complex(ring, &mut rng, 1, 2, 2);
            let contractible = cone(&ChainMap::identity(&d));
            assert!(is_acyclic(&contractible));
            let (sum, inj) = direct_sum(ring, &[c.clone(), contractible]).unwrap();
            sum.check_square_zero().unwrap();
            inj[0].check_commutes().unwrap();
            assert!(is_quasi_iso(&inj[0]));

            let k = Scalar::from_i64(ring, rng.gen_range(0..3));
            let comps = c.degrees().map(|i| (i, ExactMatrix::identity(ring, c.dim(i)).scale(&k))).collect();
            let f = ChainMap::new(c.clone(), c.clone(), comps).unwrap();
            assert_eq!(is_quasi_iso(&f), !k.is_zero() || is_acyclic(&c));
        }
    }
}

fn koszul_swap(c: &Complex) -> (Complex, ChainMap) {
    let ring = c.ring();
    let tp = tensor_many(ring, &[c, c]).unwrap();
    let index = tp.index();
    let comps = tp
        .tuples
        .iter()
        .map(|(&n, ts)| {
            let mut m = ExactMatrix::zeros(ring, ts.len(), ts.len());
            for (col, t) in ts.iter().enumerate() {
                let (x, y) = (t[0], t[1]);
                let sign = if x.0 % 2 != 0 && y.0 % 2 != 0 { -1 } else { 1 };
                let (_, row) = index[&vec![y, x]];
                m.set(row, col, Scalar::from_i64(ring, sign));
            }
            (n, m)
        })
        .collect();
    let swap = ChainMap::new(tp.complex.clone(), tp.complex.clone(), comps).unwrap();
    (tp.complex, swap)
}

/// Over Q, `(C ⊗ C)_{Σ_2}` has dimension `(dim + trace)/2` degreewise, and the same
/// count applied to homology ranks gives its homology.
#[test]
fn symmetric_square_traces_over_rationals() {
    let q = Ring::rationals();
    let mut rng = rng(4);
    let half_trace = |dims: &BTreeMap<i32, usize>| -> BTreeMap<i32, usize> {
        let total = convolve(dims, dims);
        total
            .keys()
            .map(|&n| {
                let mut t = total[&n] as i64;
                if n % 2 == 0 {
                    let x = dims.get(&(n / 2)).copied().unwrap_or(0) as i64;
                    t += if (n / 2) % 2 == 0 { x } else { -x };
                }
                (n, (t / 2) as usize)
            })
            .filter(|(_, d)| *d > 0)
            .collect()
    };
    for _ in 0..60 {
        let c = random_complex(q, &mut rng, -1, 2, 3);
        let (cc, swap) = koszul_swap(&c);
        swap.check_commutes().unwrap();
        assert!(swap.then(&swap).unwrap().is_identity());
        let (sym, proj) = coinvariants(&GroupAction::new(cc, vec![swap], 2).unwrap()).unwrap();
        proj.check_commutes().unwrap();
        sym.check_square_zero().unwrap();
        let dims: BTreeMap<i32, usize> = sym.dims().into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(dims, half_trace(&c.dims()));
        assert_eq!(homology(&sym).ranks(), half_trace(&homology(&c).ranks()));
    }
}

#[test]
fn integer_homology_of_small_complexes() {
    let z = Ring::integers();
    // k --2--> k: H_0 = Z/2
    let c = Complex::new(
        z,
        BTreeMap::from([(0, vec!["x".into()]), (1, vec!["y".into()])]),
        BTreeMap::from([(1, ExactMatrix::from_i64(z, &[&[2]]))]),
    )
    .unwrap();
    let h = homology(&c);
    assert_eq!(h.torsion(0), big(&[2]).as_slice());
    assert_eq!(h.free_rank(0), 0);
    assert!(!is_acyclic(&c));
    // over F_2 the same complex has H_0 = H_1 = F_2
    let f2 = Ring::prime_field(2).unwrap();
    let c2 = Complex::new(
        f2,
        c.basis().clone(),
        BTreeMap::from([(1, ExactMatrix::from_i64(f2, &[&[2]]))]),
    )
    .unwrap();
    assert_eq!(homology(&c2).ranks(), BTreeMap::from([(0, 1), (1, 1)]));
}
