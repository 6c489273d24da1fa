//! Bounded complexes of free modules, their constructors and homological tests.

mod coinvariants;
mod complex;
mod homology;
mod ops;

pub use coinvariants::coinvariants;
pub use complex::{ChainMap, Complex, DegreeHomology, GroupAction, HomologyProfile};
pub use homology::{homology, is_acyclic, is_quasi_iso};
pub use ops::{cone, direct_sum, shift, tensor, tensor_many, unit_complex, BasisRef, TensorProduct};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;

    use super::*;
    use crate::exactalg::{ExactMatrix, Ring, Scalar};

    fn q() -> Ring {
        Ring::rationals()
    }
    fn z() -> Ring {
        Ring::integers()
    }
    fn f2() -> Ring {
        Ring::prime_field(2).unwrap()
    }

    fn cone_id(ring: Ring) -> Complex {
        cone(&ChainMap::identity(&unit_complex(ring)))
    }

    fn scalar_map(c: &Complex, k: i64) -> ChainMap {
        let comps = c
            .degrees()
            .map(|i| (i, ExactMatrix::identity(c.ring(), c.dim(i)).scale(&Scalar::from_i64(c.ring(), k))))
            .collect();
        ChainMap::new(c.clone(), c.clone(), comps).unwrap()
    }

    /// The Koszul-signed swap on `c ⊗ c`.
    fn swap_action(c: &Complex) -> GroupAction {
        let ring = c.ring();
        let tp = tensor_many(ring, &[c, c]).unwrap();
        let idx = tp.index();
        let mut comps = BTreeMap::new();
        for (&n, ts) in &tp.tuples {
            let mut m = ExactMatrix::zeros(ring, ts.len(), ts.len());
            for (col, t) in ts.iter().enumerate() {
                let (x, y) = (t[0], t[1]);
                let sign = if (x.0 * y.0).rem_euclid(2) == 1 { -1 } else { 1 };
                let (_, row) = idx[&vec![y, x]];
                m.set(row, col, Scalar::from_i64(ring, sign));
            }
            comps.insert(n, m);
        }
        let g = ChainMap::new(tp.complex.clone(), tp.complex.clone(), comps).unwrap();
        GroupAction::new(tp.complex, vec![g], 2).unwrap()
    }

    #[test]
    fn unit_complex_dims() {
        for ring in [q(), f2(), z()] {
            assert_eq!(unit_complex(ring).dims(), BTreeMap::from([(0, 1)]));
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&unit_complex(q()), 3).dims(), BTreeMap::from([(3, 1)]));
        let m = cone_id(z());
        assert_eq!(shift(&m, 0), m);
        let c = cone(&scalar_map(&unit_complex(z()), 3));
        let h = homology(&c);
        for s in [-2, 1, 4] {
            assert_eq!(homology(&shift(&c, s)), h.shifted(s));
        }
    }

    #[test]
    fn cone_examples() {
        for ring in [q(), f2(), z()] {
            let m = cone_id(ring);
            assert_eq!(m.dims(), BTreeMap::from([(0, 1), (1, 1)]));
            assert_eq!(m.differential(1), ExactMatrix::from_i64(ring, &[&[1]]));
            assert!(homology(&m).is_zero());
        }
        // cone(0 → C) ≅ C
        let c = cone_id(q());
        let z0 = Complex::zero(q());
        let k = cone(&ChainMap::zero(&z0, &c));
        assert_eq!(k.dims(), c.dims());
        assert_eq!(k.differential(1), c.differential(1));
        // multiplication by 2 over Z
        let h = homology(&cone(&scalar_map(&unit_complex(z()), 2)));
        assert_eq!(h.torsion(0), &[BigInt::from(2)]);
        assert_eq!(h.free_rank(0) + h.free_rank(1), 0);
    }

    #[test]
    fn tensor_examples() {
        let m = cone_id(q());
        let u = tensor(&unit_complex(q()), &m).unwrap();
        assert_eq!(u.dims(), m.dims());
        assert_eq!(u.differential(1), m.differential(1));
        let mm = tensor(&m, &m).unwrap();
        assert_eq!(mm.dims(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(is_acyclic(&mm));
        assert!(tensor(&m, &cone_id(z())).is_err());
    }

    #[test]
    fn tensor_many_matches_pairwise() {
        let m = shift(&cone_id(q()), 1);
        let tp = tensor_many(q(), &[&m, &m, &m]).unwrap();
        let pw = tensor(&tensor(&m, &m).unwrap(), &m).unwrap();
        assert_eq!(tp.complex.dims(), pw.dims());
        for i in pw.differential_degrees() {
            assert_eq!(tp.complex.differential(i), pw.differential(i));
        }
        assert_eq!(tensor_many(q(), &[]).unwrap().complex, unit_complex(q()));
    }

    #[test]
    fn direct_sum_examples() {
        let (s, inj) = direct_sum(q(), &[]).unwrap();
        assert!(s.is_zero() && inj.is_empty());
        let c = cone_id(q());
        let (s, inj) = direct_sum(q(), &[c.clone(), Complex::zero(q())]).unwrap();
        assert_eq!(s.dims(), c.dims());
        assert_eq!(inj.len(), 2);
        let (s, _) = direct_sum(q(), &[c.clone(), unit_complex(q()), c.clone()]).unwrap();
        assert_eq!(s.dims(), BTreeMap::from([(0, 3), (1, 2)]));
    }

    #[test]
    fn homology_examples() {
        // 0 → Z --2--> Z → 0 in degrees 1 → 0
        let basis = BTreeMap::from([(0, vec!["y".into()]), (1, vec!["x".into()])]);
        let d = BTreeMap::from([(1, ExactMatrix::from_i64(z(), &[&[2]]))]);
        let c = Complex::new(z(), basis, d).unwrap();
        let h = homology(&c);
        assert_eq!(h.torsion(0), &[BigInt::from(2)]);
        assert_eq!((h.free_rank(0), h.free_rank(1)), (0, 0));
        assert_eq!(homology(&unit_complex(z())).free_rank(0), 1);
        for ring in [q(), f2(), z()] {
            assert!(homology(&cone_id(ring)).is_zero());
        }
        // over F_2 the same complex has homology in both degrees
        let basis = BTreeMap::from([(0, vec!["y".into()]), (1, vec!["x".into()])]);
        let d = BTreeMap::from([(1, ExactMatrix::from_i64(f2(), &[&[2]]))]);
        let c = Complex::new(f2(), basis, d).unwrap();
        assert_eq!(homology(&c).ranks(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn complex_rejects_bad_data() {
        let basis = BTreeMap::from([(0, vec!["a".into()]), (1, vec!["b".into()]), (2, vec!["c".into()])]);
        let d = BTreeMap::from([
            (1, ExactMatrix::from_i64(q(), &[&[1]])),
            (2, ExactMatrix::from_i64(q(), &[&[1]])),
        ]);
        assert!(matches!(Complex::new(q(), basis.clone(), d), Err(crate::Error::NotAComplex(2))));
        let d = BTreeMap::from([(1, ExactMatrix::from_i64(q(), &[&[1, 0]]))]);
        assert!(matches!(Complex::new(q(), basis, d), Err(crate::Error::Shape(_))));
    }

    #[test]
    fn chain_map_commutation_checked() {
        let m = cone_id(q());
        // identity in degree 0 only is not a chain map
        let comps = BTreeMap::from([(0, ExactMatrix::identity(q(), 1))]);
        assert!(matches!(ChainMap::new(m.clone(), m.clone(), comps), Err(crate::Error::NotAChainMap(_))));
    }

    #[test]
    fn acyclicity_and_quasi_isos() {
        assert!(is_acyclic(&cone_id(q())));
        assert!(!is_acyclic(&unit_complex(q())));
        let m = cone_id(z());
        let x = cone(&scalar_map(&unit_complex(z()), 6));
        assert!(is_acyclic(&tensor(&m, &x).unwrap()));
        assert!(is_quasi_iso(&ChainMap::identity(&unit_complex(z()))));
        assert!(is_quasi_iso(&ChainMap::zero(&Complex::zero(z()), &m)));
        assert!(!is_quasi_iso(&scalar_map(&unit_complex(z()), 2)));
        assert!(is_quasi_iso(&scalar_map(&unit_complex(q()), 2)));
    }

    #[test]
    fn coinvariants_examples() {
        let c = cone_id(q());
        let (cq, p) = coinvariants(&GroupAction::trivial(c.clone())).unwrap();
        assert_eq!(cq, c);
        assert!(p.is_identity());

        let (s2, p) = coinvariants(&swap_action(&cone_id(f2()))).unwrap();
        assert_eq!(s2.dims(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(homology(&s2).ranks(), BTreeMap::from([(2, 1)]));
        assert!(p.check_commutes().is_ok());

        let (s2q, _) = coinvariants(&swap_action(&cone_id(q()))).unwrap();
        assert_eq!(s2q.dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(is_acyclic(&s2q));

        assert!(matches!(
            coinvariants(&swap_action(&cone_id(z()))),
            Err(crate::Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn projection_kills_relations() {
        let act = swap_action(&shift(&cone_id(Ring::prime_field(3).unwrap()), 1));
        let (_, p) = coinvariants(&act).unwrap();
        let c = act.complex();
        for g in act.generators() {
            for i in c.degrees() {
                let n = c.dim(i);
                let rel = ExactMatrix::identity(c.ring(), n).sub(&g.component(i));
                assert!(p.component(i).mul(&rel).is_zero());
                assert_eq!(crate::exactalg::rank(&p.component(i)).unwrap(), p.target().dim(i));
            }
        }
    }
}
