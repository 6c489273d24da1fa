//! Symmetric collections, the built-in operads, and the tree-indexed components of the
//! coproduct `O ⊔ F(M, n)` together with the inclusion of `O`.

mod collection;
mod component;
mod description;

pub use collection::{
    builtin_operad, permutations, ArityComponent, BuiltinOperad, SymmetricCollection, UnitSplit,
};
pub use component::{
    analyze, check_inclusion_qiso, coproduct_component, make_generator_collection, tree_component,
    ComponentVerdict, CoproductTruncation, GeneratorCollection, InclusionCheck, TreeComponent,
};
pub use description::{
    describe, load_collection, ArityDescription, CollectionDescription, GeneratorDescription, ScalarText,
};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::chaincx::{homology, is_acyclic, tensor_many, unit_complex};
    use crate::exactalg::Ring;
    use crate::treecomb::{enumerate_reduced, MarkedTree, Marking, Tree};

    fn q() -> Ring {
        Ring::rationals()
    }
    fn f2() -> Ring {
        Ring::prime_field(2).unwrap()
    }

    fn corolla_of_slots(k: usize) -> MarkedTree {
        let mut parents = vec![None];
        parents.extend((0..k).map(|_| Some(0)));
        let tree = Tree::from_parents(parents).unwrap();
        MarkedTree::new(tree, Marking { r: 0, n: 0, args: vec![], slots: (1..=k).collect() }).unwrap()
    }

    #[test]
    fn builtin_components() {
        let com = builtin_operad("COM", f2()).unwrap();
        assert_eq!(com.component(0).dims(), BTreeMap::from([(0, 1)]));
        assert!(com.reduced_unary().is_zero());
        let nu = builtin_operad("com-nonunital", f2()).unwrap();
        assert!(nu.component(0).is_zero());
        assert!(!nu.enum_flags().allow_nullary);
        let assoc = builtin_operad("ASSOC_NONUNITAL", q()).unwrap();
        assert_eq!(assoc.component(3).total_dim(), 6);
        let unit = builtin_operad("UNIT", q()).unwrap();
        assert!(unit.component(2).is_zero());
        assert_eq!(unit.component(1).total_dim(), 1);
        assert!(builtin_operad("LIE", q()).is_err());
    }

    fn compose(p: &[usize], t: &[usize]) -> Vec<usize> {
        t.iter().map(|&i| p[i]).collect()
    }

    #[test]
    fn assoc_action_is_left_regular() {
        let assoc = builtin_operad("ASSOC_NONUNITAL", q()).unwrap();
        let perms = permutations(4);
        let id_index = 0;
        for p in &perms {
            let rho = assoc.act(p).component(0);
            let target = perms.iter().position(|x| x == p).unwrap();
            assert!(rho.get(target, id_index).is_one());
            assert_eq!(rho.nnz(), 24);
        }
        for (a, b) in [(3, 17), (5, 5), (23, 1), (10, 12)] {
            let (p, t) = (&perms[a], &perms[b]);
            let lhs = assoc.act(&compose(p, t));
            let rhs = assoc.act(t).then(&assoc.act(p)).unwrap();
            assert_eq!(lhs.component(0), rhs.component(0));
        }
    }

    #[test]
    fn generator_collections() {
        let g = make_generator_collection(q(), 1, 0);
        assert_eq!(g.m_complex.dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(is_acyclic(&g.m_complex));
        let g = make_generator_collection(f2(), 2, 2);
        assert_eq!(g.m_complex.dims(), BTreeMap::from([(2, 1), (3, 1)]));
        for s in -3..4 {
            assert!(is_acyclic(&make_generator_collection(Ring::integers(), 0, s).m_complex));
        }
    }

    #[test]
    fn symmetric_square_component() {
        let t = corolla_of_slots(2);
        let com = builtin_operad("COM", f2()).unwrap();
        let c = tree_component(&com, &make_generator_collection(f2(), 0, 0), &t).unwrap();
        assert_eq!(c.component.dims(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(homology(&c.component).ranks(), BTreeMap::from([(2, 1)]));
        assert_eq!(c.aut.order, 2);

        let com = builtin_operad("COM", q()).unwrap();
        let c = tree_component(&com, &make_generator_collection(q(), 0, 0), &t).unwrap();
        assert_eq!(c.component.dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(is_acyclic(&c.component));
    }

    #[test]
    fn bare_operation_root_is_unit() {
        let com = builtin_operad("COM", q()).unwrap();
        let t = MarkedTree::new(Tree::single_vertex(), Marking { r: 0, n: 0, args: vec![], slots: Default::default() })
            .unwrap();
        let c = tree_component(&com, &make_generator_collection(q(), 0, 0), &t).unwrap();
        assert_eq!(c.component.dims(), unit_complex(q()).dims());
    }

    #[test]
    fn free_action_gives_plain_tensor_power() {
        // k[Σ_k] ⊗ M^{⊗k} modulo Σ_k is M^{⊗k}, acyclic in every characteristic.
        for ring in [f2(), Ring::prime_field(3).unwrap(), q()] {
            let assoc = builtin_operad("ASSOC_NONUNITAL", ring).unwrap();
            let gen = make_generator_collection(ring, 0, 0);
            for k in 2..=4 {
                let c = tree_component(&assoc, &gen, &corolla_of_slots(k)).unwrap();
                let ms: Vec<&crate::chaincx::Complex> = (0..k).map(|_| &gen.m_complex).collect();
                let power = tensor_many(ring, &ms).unwrap().complex;
                assert_eq!(c.component.dims(), power.dims(), "k = {k}");
                assert!(is_acyclic(&c.component));
            }
        }
    }

    #[test]
    fn automorphism_actions_are_involutive_chain_maps() {
        let ring = Ring::prime_field(3).unwrap();
        let gen = make_generator_collection(ring, 2, 1);
        let com = builtin_operad("COM", ring).unwrap();
        for t in enumerate_reduced(0, 2, 2, com.enum_flags()).iter().flatten() {
            // tree_component validates every generator as a chain map on construction
            let c = tree_component(&com, &gen, t).unwrap();
            assert_eq!(c.projection.source(), &c.raw);
        }
    }

    #[test]
    fn inclusion_examples() {
        let nu = builtin_operad("COM_NONUNITAL", f2()).unwrap();
        let check = check_inclusion_qiso(&nu, &make_generator_collection(f2(), 1, 0), 1, 2).unwrap();
        assert!(check.quasi_iso);
        assert!(check.base_split);

        let com = builtin_operad("COM", q()).unwrap();
        assert!(check_inclusion_qiso(&com, &make_generator_collection(q(), 0, 0), 0, 3).unwrap().quasi_iso);

        let com = builtin_operad("COM", f2()).unwrap();
        let check = check_inclusion_qiso(&com, &make_generator_collection(f2(), 0, 0), 0, 2).unwrap();
        assert!(!check.quasi_iso);
        let bad: Vec<_> = check.failing().map(|c| c.code.as_str().to_string()).collect();
        assert_eq!(bad, vec!["o(s(),s())".to_string()]);
    }

    #[test]
    fn slot_free_block_is_the_operad() {
        let nu = builtin_operad("COM_NONUNITAL", q()).unwrap();
        let t = coproduct_component(&nu, &make_generator_collection(q(), 1, 0), 2, 0).unwrap();
        assert_eq!(t.total.dims(), BTreeMap::from([(0, 1)]));
        assert!(t.inclusion_is_split_onto_base());
        let com = builtin_operad("COM", q()).unwrap();
        let t = coproduct_component(&com, &make_generator_collection(q(), 1, 0), 1, 1).unwrap();
        assert!(t.inclusion_is_split_onto_base());
    }

    #[test]
    fn descriptions_round_trip() {
        let assoc = builtin_operad("ASSOC_NONUNITAL", q()).unwrap();
        let desc = describe(&assoc, 3).unwrap();
        let text = desc.to_json().unwrap();
        let back = CollectionDescription::from_json(&text).unwrap().build().unwrap();
        for m in 0..=3 {
            assert_eq!(back.component(m), assoc.component(m));
        }
        let p = vec![2, 0, 1];
        assert_eq!(back.act(&p).component(0), assoc.act(&p).component(0));
        assert_eq!(describe(&back, 3).unwrap(), desc);
    }

    #[test]
    fn descriptions_with_differential_and_fractions() {
        let text = r#"{
            "ring": "Q",
            "arities": [
                {"arity": 1, "unit": "e", "generators": [
                    {"label": "e", "degree": 0}, {"label": "x", "degree": 0}, {"label": "y", "degree": 1}],
                 "differential": [["y", "x", "3/2"]]},
                {"arity": 2, "generators": [{"label": "m", "degree": 0}, {"label": "n", "degree": 0}],
                 "action": [[["m", "n", 1], ["n", "m", 1]]]}
            ]
        }"#;
        let o = CollectionDescription::from_json(text).unwrap().build().unwrap();
        assert_eq!(o.reduced_unary().dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert!(is_acyclic(o.reduced_unary()));
        assert!(o.enum_flags().allow_unary);
        assert!(!o.enum_flags().allow_nullary);
        let d = describe(&o, 2).unwrap();
        assert_eq!(d.arities[0].differential[0].2, ScalarText::Text("3/2".into()));
    }

    #[test]
    fn invalid_descriptions_rejected() {
        let base = |extra: &str| {
            format!(
                r#"{{"ring": "Q", "arities": [{{"arity": 1, "unit": "e", "generators": [{{"label": "e", "degree": 0}}, {{"label": "y", "degree": 1}}]{extra}}}]}}"#
            )
        };
        // unit hit by the differential
        let text = base(r#", "differential": [["y", "e", 1]]"#);
        assert!(CollectionDescription::from_json(&text).unwrap().build().is_err());
        // a transposition that does not square to one
        let text = r#"{"ring": "Q", "arities": [
            {"arity": 1, "unit": "e", "generators": [{"label": "e", "degree": 0}]},
            {"arity": 2, "generators": [{"label": "m", "degree": 0}], "action": [[["m", "m", -1]]]},
            {"arity": 3, "generators": [{"label": "a", "degree": 0}, {"label": "b", "degree": 0}, {"label": "c", "degree": 0}],
             "action": [[["a", "b", 1], ["b", "a", 1], ["c", "c", 1]], [["a", "a", -1], ["b", "b", 1], ["c", "c", 1]]]}
        ]}"#;
        // arity 2 is fine (sign representation); arity 3 violates the braid relation
        let err = CollectionDescription::from_json(text).unwrap().build().unwrap_err();
        assert!(err.to_string().contains("arity 3"), "{err}");
        // missing unit
        let text = r#"{"ring": "Q", "arities": [{"arity": 1, "generators": [{"label": "e", "degree": 0}]}]}"#;
        assert!(CollectionDescription::from_json(text).unwrap().build().is_err());
    }
}
