//! Hom, Ext and ⊗ of small finite groups against direct enumeration; SNF invariants.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use z2mackey::fgab::{ext1_group, hom_group, snf, tensor_group, FgAb, HomGroup, IntMatrix};

fn group(orders: &[i64]) -> FgAb {
    let rel = IntMatrix::from_rows(
        &(0..orders.len()).map(|i| (0..orders.len()).map(|j| if i == j { orders[i] } else { 0 }).collect()).collect::<Vec<_>>(),
        orders.len(),
    );
    FgAb::from_presentation(orders.len(), rel)
}

fn elements(orders: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &n in orders {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn is_zero(x: &[i64], orders: &[i64]) -> bool {
    x.iter().zip(orders).all(|(a, n)| a.rem_euclid(*n) == 0)
}

// homomorphisms are tuples of images killed by the source orders
fn hom_count(a: &[i64], b: &[i64]) -> usize {
    let els = elements(b);
    a.iter()
        .map(|&n| els.iter().filter(|x| is_zero(&x.iter().map(|v| v * n).collect::<Vec<_>>(), b)).count())
        .product()
}

// Ext(⊕ℤ/a_i, B) = ⊕ B / a_i B
fn ext_count(a: &[i64], b: &[i64]) -> usize {
    let els = elements(b);
    let size = els.len();
    a.iter()
        .map(|&n| {
            let mut image: Vec<Vec<i64>> =
                els.iter().map(|x| x.iter().zip(b).map(|(v, m)| (v * n).rem_euclid(*m)).collect()).collect();
            image.sort();
            image.dedup();
            size / image.len()
        })
        .product()
}

// |A ⊗ B| = number of bilinear maps into ℤ/N for N a common multiple of all orders
fn tensor_count(a: &[i64], b: &[i64]) -> usize {
    let n: i64 = a.iter().chain(b).product::<i64>().max(1);
    let mut total = 1usize;
    for &x in a {
        for &y in b {
            total *= (0..n).filter(|v| (v * x) % n == 0 && (v * y) % n == 0).count();
        }
    }
    total
}

fn order(g: &FgAb) -> usize {
    assert_eq!(g.rank(), 0);
    let o: BigInt = g.torsion().iter().product();
    o.to_string().parse().unwrap()
}

fn small_orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..=6, 0..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_ext_tensor_orders(a in small_orders(), b in small_orders()) {
        let (ga, gb) = (group(&a), group(&b));
        prop_assert_eq!(order(&hom_group(&ga, &gb)), hom_count(&a, &b));
        prop_assert_eq!(order(&ext1_group(&ga, &gb)), ext_count(&a, &b));
        prop_assert_eq!(order(&tensor_group(&ga, &gb)), tensor_count(&a, &b));
    }

    #[test]
    fn hom_coordinates_round_trip(a in small_orders(), b in small_orders(), seed in 0usize..1000) {
        let h = HomGroup::new(&group(&a), &group(&b));
        let g = h.group().clone();
        if g.gens() > 0 {
            let coords: Vec<BigInt> = (0..g.gens()).map(|i| BigInt::from((seed + 7 * i) % 5)).collect();
            let f = h.element(&coords);
            let back = h.coords(&f).unwrap();
            prop_assert!(g.eq_elem(&coords, &back));
        }
    }

    #[test]
    fn snf_invariants(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..=4)) {
        let m = IntMatrix::from_rows(&rows, 3);
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
        let f = s.factors();
        prop_assert_eq!(f.len(), s.rank);
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for x in &f {
            prop_assert!(x.is_positive());
        }
    }

    #[test]
    fn cokernel_order_is_determinant(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 3)) {
        let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
        let g = FgAb::from_presentation(3, IntMatrix::from_rows(&rows, 3));
        if det == 0 {
            prop_assert!(g.rank() > 0);
        } else {
            prop_assert_eq!(g.rank(), 0);
            prop_assert_eq!(g.order(), Some(BigInt::from(det.abs())));
        }
    }
}

#[test]
fn free_cases() {
    let z = FgAb::free(1);
    assert!(hom_group(&z, &FgAb::cyclic(6)).same_iso_type(&FgAb::cyclic(6)));
    assert!(hom_group(&FgAb::cyclic(6), &z).is_trivial());
    assert!(ext1_group(&FgAb::cyclic(6), &z).same_iso_type(&FgAb::cyclic(6)));
    assert!(ext1_group(&z, &FgAb::cyclic(6)).is_trivial());
    assert!(tensor_group(&FgAb::free(2), &FgAb::free(3)).same_iso_type(&FgAb::free(6)));
}
