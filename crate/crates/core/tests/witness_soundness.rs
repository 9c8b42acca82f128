mod support;

use proptest::prelude::*;

use support::structural::{apply, atom_multiset, expressions, structural_witnesses};
use zalpha_core::pelczynski::{
    check_witness, decomposition_axioms, derive, AxiomSet, IsoAxiom, IsoWitness, SpaceExpr,
};

#[test]
fn checker_agrees_with_direct_evaluation_on_small_trees() {
    let atoms = ["X", "Y", "E"];
    let none = AxiomSet::default();
    let universe = expressions(&atoms, 3);
    assert_eq!(universe.len(), 147);
    let witnesses = structural_witnesses(&atoms, 3);
    let mut accepted = 0;
    for w in &witnesses {
        let checked = check_witness(w, &none);
        if let Ok((s, t)) = &checked {
            accepted += 1;
            assert_eq!(atom_multiset(s), atom_multiset(t), "{w:?}");
            assert_eq!(apply(w, s, &none).as_ref(), Some(t), "{w:?}");
        }
        for e in &universe {
            if let Some(t) = apply(w, e, &none) {
                assert_eq!(checked, Ok((e.clone(), t)), "{w:?} on {e}");
            }
        }
    }
    assert!(accepted > witnesses.len() / 2);
}

#[test]
fn derived_witnesses_replay_under_direct_evaluation() {
    let axioms = decomposition_axioms();
    let (x, y) = (SpaceExpr::atom("X"), SpaceExpr::atom("Y"));
    let w = derive(&axioms, (&x, &y), 10_000).unwrap();
    assert_eq!(apply(&w, &x, &axioms), Some(y.clone()));
    assert_eq!(apply(&IsoWitness::sym(w), &y, &axioms), Some(x));
}

fn small_expr() -> impl Strategy<Value = SpaceExpr> {
    let leaf = prop::sample::select(vec!["A", "B", "C"]).prop_map(SpaceExpr::atom);
    leaf.prop_recursive(2, 4, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| SpaceExpr::sum(l, r))
    })
}

fn axiom_set() -> impl Strategy<Value = AxiomSet> {
    prop::collection::vec((small_expr(), small_expr()), 0..4).prop_map(|pairs| {
        let axioms = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (l, r))| IsoAxiom::new(format!("ax{i}"), l, r))
            .collect();
        AxiomSet::new(axioms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derive_is_sound_and_deterministic(
        axioms in axiom_set(),
        source in small_expr(),
        target in small_expr(),
    ) {
        let first = derive(&axioms, (&source, &target), 500);
        prop_assert_eq!(&first, &derive(&axioms, (&source, &target), 500));
        if let Ok(w) = first {
            prop_assert_eq!(check_witness(&w, &axioms), Ok((source.clone(), target.clone())));
            prop_assert_eq!(apply(&w, &source, &axioms), Some(target));
        }
    }

    #[test]
    fn structurally_reachable_goals_are_derived(source in small_expr(), rotate in 0usize..4) {
        // commute the root and reassociate: always reachable within the leaf bound
        let mut target = source.clone();
        for _ in 0..rotate {
            target = match target {
                SpaceExpr::Sum(l, r) => SpaceExpr::Sum(r, l),
                atom => atom,
            };
        }
        let none = AxiomSet::default();
        let w = derive(&none, (&source, &target), 10_000).unwrap();
        prop_assert_eq!(check_witness(&w, &none), Ok((source, target)));
    }
}
