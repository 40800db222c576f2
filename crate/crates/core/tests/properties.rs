use std::sync::OnceLock;

use proptest::prelude::*;
use rootfold::action::{make_action, ActionGroup, DatumAction, FiniteGroup, Generator};
use rootfold::folding::{restrict, RestrictedDatum};
use rootfold::rootdatum::{from_cartan_type, BasedRootDatum, DatumAutomorphism, MatrixGroup};
use rootfold::twist::{aut_gamma, diagram_automorphism, h1_classes, star_action, StarCocycle};

fn element_order(g: &DatumAutomorphism) -> usize {
    let mut p = g.clone();
    let mut n = 1;
    while !p.is_identity() {
        p = p.compose(g);
        n += 1;
    }
    n
}

fn automorphism_groups() -> &'static [(BasedRootDatum, MatrixGroup)] {
    static CELL: OnceLock<Vec<(BasedRootDatum, MatrixGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["A1:sc", "A2:sc", "A2:ad", "B2:ad", "G2:sc", "A3:sc", "D4:sc"]
            .iter()
            .map(|t| {
                let b = from_cartan_type(t).unwrap();
                let aut = aut_gamma(&DatumAction::trivial(b.datum(), Some(b.base()))).unwrap();
                (b, aut)
            })
            .collect()
    })
}

fn folds() -> &'static [RestrictedDatum] {
    static CELL: OnceLock<Vec<RestrictedDatum>> = OnceLock::new();
    CELL.get_or_init(|| {
        [("A2:sc", &[1, 0][..], 2), ("A3:sc", &[2, 1, 0], 2), ("A4:ad", &[3, 2, 1, 0], 2), ("D4:sc", &[2, 1, 3, 0], 3)]
            .iter()
            .map(|(t, perm, order)| {
                let b = from_cartan_type(t).unwrap();
                let g = diagram_automorphism(&b, perm).unwrap();
                let a = make_action(
                    b.datum(),
                    Some(b.base()),
                    &[Generator::new(g.chars, "g")],
                    ActionGroup::Given(FiniteGroup::cyclic(*order)),
                )
                .unwrap();
                restrict(&a, &[]).unwrap()
            })
            .collect()
    })
}

fn cyclic_action(b: &BasedRootDatum, sigma: &DatumAutomorphism) -> DatumAction {
    let n = element_order(sigma);
    let label = if n == 1 { "e" } else { "g" };
    make_action(b.datum(), None, &[Generator::new(sigma.chars.clone(), label)], ActionGroup::Given(FiniteGroup::cyclic(n)))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_cocycle_satisfies_twisted_law(d in 0usize..7, s in any::<prop::sample::Index>()) {
        let (b, aut) = &automorphism_groups()[d];
        let sigma = aut.get(s.index(aut.order()));
        let action = cyclic_action(b, sigma);
        let (star, c) = star_action(&action, b.base()).unwrap();
        prop_assert!(star.stabilizes_base());
        let g = action.group();
        for x in 0..g.order() {
            prop_assert_eq!(&c.value(x).compose(star.image(x)), action.image(x));
            for y in 0..g.order() {
                let rhs = c.value(x).compose(&c.value(y).conjugate_by(star.image(x)));
                prop_assert_eq!(c.value(g.mul(x, y)), &rhs);
            }
        }
    }

    #[test]
    fn cobounding_preserves_cocycles_and_classes(
        d in 0usize..7,
        s in any::<prop::sample::Index>(),
        k in any::<prop::sample::Index>(),
    ) {
        let (b, aut) = &automorphism_groups()[d];
        let action = cyclic_action(b, aut.get(s.index(aut.order())));
        let (star, c) = star_action(&action, b.base()).unwrap();
        let fixed = star.fixed_weyl().unwrap();
        let kappa = fixed.get(k.index(fixed.order()));
        let moved = c.cobound(kappa);
        let rebuilt = StarCocycle::new(moved.galois.clone(), moved.values.clone(), moved.star.clone());
        prop_assert!(rebuilt.is_ok());
        prop_assert_eq!(&moved.cobound(&kappa.inverse()), &c);
        let mut both = vec![c.clone(), moved.clone()];
        both.sort();
        both.dedup();
        let classes = h1_classes(&both, &fixed).unwrap();
        prop_assert_eq!(classes.same_class(&c, &moved), Some(true));
    }

    #[test]
    fn conjugating_by_fixed_weyl_keeps_star_action(
        d in 0usize..7,
        s in any::<prop::sample::Index>(),
        k in any::<prop::sample::Index>(),
    ) {
        let (b, aut) = &automorphism_groups()[d];
        let action = cyclic_action(b, aut.get(s.index(aut.order())));
        let (star, _) = star_action(&action, b.base()).unwrap();
        let fixed = star.fixed_weyl().unwrap();
        let w = fixed.get(k.index(fixed.order()));
        let conj = action.images().iter().map(|x| x.conjugate_by(w)).collect();
        let moved = DatumAction::from_images(b.datum(), None, action.group().clone(), conj).unwrap();
        let (star2, _) = star_action(&moved, b.base()).unwrap();
        prop_assert_eq!(star2.images(), star.images());
    }

    #[test]
    fn projection_is_equivariant(
        f in 0usize..4,
        w in any::<prop::sample::Index>(),
        x in prop::collection::vec(-6i64..=6, 4),
    ) {
        let r = &folds()[f];
        let a = r.source();
        let cm = r.coinvariants();
        let x = &x[..a.datum().rank()];
        let fixed = a.fixed_weyl().unwrap();
        let w = &fixed.get(w.index(fixed.order())).chars;
        prop_assert_eq!(cm.project(&w.apply(x)), cm.induced_chars(w).apply(&cm.project(x)));
        for g in a.images() {
            prop_assert_eq!(cm.project(&g.chars.apply(x)), cm.project(x));
        }
    }

    #[test]
    fn positive_system_transfer_round_trips(f in 0usize..4, w in any::<prop::sample::Index>()) {
        let r = &folds()[f];
        let a = r.source();
        let d = a.datum();
        let fixed = a.fixed_weyl().unwrap();
        let w = fixed.get(w.index(fixed.order()));
        let mut system: Vec<usize> = a
            .based_datum()
            .unwrap()
            .positive_roots()
            .iter()
            .map(|&i| d.find_root(&w.chars.apply(d.root(i))).unwrap())
            .collect();
        system.sort_unstable();
        let down = r.transfer_forward(&system).unwrap();
        prop_assert_eq!(down.len(), r.datum().num_roots() / 2);
        prop_assert_eq!(r.transfer_backward(&down).unwrap(), system);
    }
}
