use proptest::prelude::*;

use mkl_core::algebra::{check_rule_soundness, lift, translation_invariance, valid, FiniteAlgebra};
use mkl_core::calculus::{
    by, by_with, check_family_bounded, derive_identity, expand_family, omega_lift,
    principal_cut_instance, reduce_principal_cut, verify_omega_family, Bindings, Side,
};
use mkl_core::syntax::{
    parse_formula, parse_sequent, parse_structure, translate, Formula, Kind, Lang, Sequent,
    Structure,
};
use mkl_core::{check_derivation, rule_catalog};

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::atom("a")),
        Just(Formula::atom("b")),
        Just(Formula::atom("c")),
        Just(Formula::One),
        Just(Formula::Zero),
    ]
}

/// General multi-type formulas; `box` always wraps a `fdia` or `bbox`.
fn general(depth: u32) -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::union(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::comp(x, y)),
            inner.clone().prop_map(|x| Formula::boxf(Formula::fdia(x))),
            inner.prop_map(|x| Formula::boxf(Formula::bbox(x))),
        ]
    })
}

/// General or special multi-type formulas.
fn multi(depth: u32) -> impl Strategy<Value = Formula> {
    prop_oneof![
        3 => general(depth),
        1 => general(depth).prop_map(Formula::fdia),
        1 => general(depth).prop_map(Formula::bbox),
    ]
}

fn single(depth: u32) -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::union(x, y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::comp(x, y)),
            inner.clone().prop_map(Formula::star),
            inner.prop_map(Formula::dual_star),
        ]
    })
}

fn star_free(depth: u32) -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::union(x, y)),
            (inner.clone(), inner).prop_map(|(x, y)| Formula::comp(x, y)),
        ]
    })
}

/// General structures built from formula leaves and the structural
/// connectives, including the special detour `o(b(_))`.
fn structure(depth: u32) -> impl Strategy<Value = Structure> {
    prop_oneof![general(2).prop_map(Structure::Leaf), Just(Structure::Phi)].prop_recursive(
        depth,
        32,
        2,
        |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Structure::odot(x, y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Structure::left_res(x, y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Structure::right_res(x, y)),
                inner.prop_map(|x| Structure::circ(Structure::bullet(x))),
            ]
        },
    )
}

fn count_box_fdia(f: &Formula) -> usize {
    match f {
        Formula::BoxF(x) if matches!(**x, Formula::FDia(_)) => 1 + count_box_fdia(x),
        Formula::Atom(_) | Formula::One | Formula::Zero => 0,
        Formula::Union(x, y) | Formula::Comp(x, y) => count_box_fdia(x) + count_box_fdia(y),
        Formula::Star(x)
        | Formula::DualStar(x)
        | Formula::BoxF(x)
        | Formula::FDia(x)
        | Formula::BBox(x) => count_box_fdia(x),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multi_type_formulas_round_trip(f in multi(6)) {
        prop_assume!(f.depth() <= 8);
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text, Lang::MultiType).unwrap(), f);
    }

    #[test]
    fn single_type_formulas_round_trip(f in single(8)) {
        prop_assume!(f.depth() <= 8);
        prop_assert_eq!(parse_formula(&f.to_string(), Lang::SingleType).unwrap(), f);
    }

    #[test]
    fn structures_and_sequents_round_trip(s in structure(4), t in general(3)) {
        prop_assert_eq!(parse_structure(&s.to_string()).unwrap(), s.clone());
        let seq = Sequent::of(s, t);
        prop_assert_eq!(parse_sequent(&seq.to_string()).unwrap(), seq);
    }

    #[test]
    fn translation_is_multi_type_and_counts_stars(f in single(5)) {
        let t = translate(&f);
        prop_assert!(t.is_in(Lang::MultiType));
        prop_assert_eq!(t.kind(), Kind::General);
        prop_assert_eq!(t.check().unwrap(), Kind::General);
        prop_assert_eq!(t.size(), f.size() + f.star_count());
        let stars = {
            fn n(f: &Formula) -> usize {
                match f {
                    Formula::Star(x) => 1 + n(x),
                    Formula::DualStar(x) => n(x),
                    Formula::Union(x, y) | Formula::Comp(x, y) => n(x) + n(y),
                    _ => 0,
                }
            }
            n(&f)
        };
        prop_assert_eq!(count_box_fdia(&t), stars);
    }

    #[test]
    fn translation_fixes_star_free_formulas(f in star_free(5)) {
        prop_assert_eq!(translate(&f), f);
    }

    #[test]
    fn translation_invariance_on_small_models(x in star_free(2), y in star_free(2)) {
        for m in [FiniteAlgebra::b2(), FiniteAlgebra::rel(2)] {
            prop_assert!(translation_invariance(&m, &x, &y), "{} vs {}", x, y);
        }
    }

    #[test]
    fn identities_check(f in multi(3)) {
        prop_assume!(f.depth() <= 5);
        let d = derive_identity(&f).unwrap();
        prop_assert!(check_derivation(&d).is_ok());
        prop_assert_eq!(d.conclusion, Sequent::of(f.clone(), f));
    }

    #[test]
    fn principal_cuts_reduce(f in multi(3)) {
        let cut = principal_cut_instance(&f).unwrap();
        prop_assert!(check_derivation(&cut).is_ok());
        let red = reduce_principal_cut(&cut).unwrap();
        prop_assert_eq!(&red.conclusion, &cut.conclusion);
        prop_assert!(check_derivation(&red).is_ok());
        for c in red.cuts() {
            prop_assert!(c.cut_formula().unwrap().is_proper_subformula_of(&f));
        }
    }

    #[test]
    fn omega_lift_families_check(b in general(2), right in any::<bool>()) {
        // (0 , B) |- B and (B , 0) |- B from 0 |- I
        let bs = Structure::Leaf(b.clone());
        let w = |to: Structure| by_with(
            "PhiW",
            vec![by("zero_L", vec![])],
            Bindings::new().with_structure("D", to),
        );
        let zero = Structure::Leaf(Formula::Zero);
        let (d, side) = if right {
            (by("res1_bwd", vec![w(Structure::right_res(bs.clone(), bs.clone()))]), Side::Right)
        } else {
            (by("res2_bwd", vec![w(Structure::left_res(bs.clone(), bs.clone()))]), Side::Left)
        };
        let expected = match side {
            Side::Left => Sequent::of(Structure::odot(zero, bs.clone()), bs),
            Side::Right => Sequent::of(Structure::odot(bs.clone(), zero), bs),
        };
        prop_assert_eq!(&d.conclusion, &expected);
        let fam = omega_lift(&d, side).unwrap();
        prop_assert!(verify_omega_family(&fam).is_ok());
        prop_assert!(check_family_bounded(&fam, 4).is_ok());
        for k in 1..=4 {
            prop_assert!(check_derivation(&expand_family(&fam, k)).is_ok());
        }
    }

    #[test]
    fn derivable_identities_are_valid(f in general(3)) {
        let h = lift(&FiniteAlgebra::b2()).unwrap();
        let s = Sequent::of(f.clone(), f);
        prop_assert!(valid(&h, &s).unwrap().valid);
    }
}

#[test]
fn catalog_is_sound_on_b2() {
    let h = lift(&FiniteAlgebra::b2().with_guarded_dstar()).unwrap();
    for r in rule_catalog() {
        let s = check_rule_soundness(&h, &r);
        assert!(s.sound, "{} {:?}", r.name, s.witness);
    }
}
