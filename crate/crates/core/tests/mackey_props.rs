//! Structural properties of Mackey functor operations over the named catalogue.

use proptest::prelude::*;
use z2mackey::mackey::named::named_catalogue;
use z2mackey::mackey::ops::direct_sum;
use z2mackey::mackey::{
    box_product, classify, construct_named, dual_free, dual_tors, find_isomorphism, IsoResult, MackeyFunctor,
};
use z2mackey::fgab::{FgAb, IntMatrix};

fn named(s: &str) -> MackeyFunctor {
    construct_named(s).unwrap()
}

fn same_levels(a: &MackeyFunctor, b: &MackeyFunctor) -> bool {
    a.top().same_iso_type(b.top()) && a.bot().same_iso_type(b.bot())
}

fn catalogue_index() -> impl Strategy<Value = usize> {
    0..named_catalogue().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn box_product_is_symmetric(i in catalogue_index(), j in catalogue_index()) {
        let cat = named_catalogue();
        let (m, n) = (named(cat[i]), named(cat[j]));
        let (mn, nm) = (box_product(&m, &n), box_product(&n, &m));
        prop_assert!(same_levels(&mn, &nm));
        prop_assert!(!matches!(find_isomorphism(&mn, &nm), IsoResult::NotIso));
    }

    #[test]
    fn box_product_is_additive(i in catalogue_index(), j in catalogue_index(), k in catalogue_index()) {
        let cat = named_catalogue();
        let (m, n, p) = (named(cat[i]), named(cat[j]), named(cat[k]));
        let lhs = box_product(&direct_sum(&m, &n).unwrap(), &p);
        let rhs = direct_sum(&box_product(&m, &p), &box_product(&n, &p)).unwrap();
        prop_assert!(same_levels(&lhs, &rhs));
    }

    #[test]
    fn json_round_trip(i in catalogue_index()) {
        let m = named(named_catalogue()[i]);
        let back = MackeyFunctor::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(classify(&back), classify(&m));
    }
}

#[test]
fn duals_are_involutive() {
    for s in named_catalogue() {
        let m = named(s);
        if m.top().is_free() && m.bot().is_free() {
            let dd = dual_free(&dual_free(&m));
            assert!(matches!(find_isomorphism(&dd, &m), IsoResult::Iso(_)), "∇∇{s}");
        }
        if m.top().is_torsion() && m.bot().is_torsion() {
            let dd = dual_tors(&dual_tors(&m));
            assert!(matches!(find_isomorphism(&dd, &m), IsoResult::Iso(_)), "∇_tors∇_tors{s}");
        }
    }
}

#[test]
fn axioms_are_enforced() {
    // θ = ρτ - 1 must be an involution of the bottom level
    let z = FgAb::free(1);
    assert!(MackeyFunctor::new(z.clone(), z.clone(), IntMatrix::scalar(1, 1), IntMatrix::scalar(1, 3)).is_err());
    // ρ must be θ-invariant
    let z2 = FgAb::free(2);
    let rho = IntMatrix::from_rows(&[vec![1], vec![0]], 1);
    let tau = IntMatrix::from_rows(&[vec![1, 1]], 2);
    assert!(MackeyFunctor::new(z, z2, rho, tau).is_err());
}

#[test]
fn unknown_names_are_rejected() {
    for s in ["", "Q", "[", "Z/1", "R(Z+)"] {
        assert!(construct_named(s).is_err(), "{s:?}");
    }
}
