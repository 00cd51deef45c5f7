//! Chart-level invariants across coefficient functors.

use z2mackey::bredon::{chart, in_support, Engine, Window};
use z2mackey::mackey::{construct_named, isomorphic};

const COEFFS: [&str; 5] = ["Z", "F2", "A", "Z/4", "Zop"];

#[test]
fn underlying_level_is_sphere_homology() {
    for c in COEFFS {
        let m = construct_named(c).unwrap();
        let e = Engine::new(&m);
        for (p, q) in Window::square(6).degrees() {
            let bot = e.value((p, q)).bot().clone();
            if p + q == 0 {
                assert!(bot.same_iso_type(m.bot()), "{c} at ({p},{q})");
            } else {
                assert!(bot.is_trivial(), "{c} at ({p},{q})");
            }
        }
    }
}

#[test]
fn integer_grading_is_the_coefficient() {
    for c in COEFFS {
        let m = construct_named(c).unwrap();
        let e = Engine::new(&m);
        for p in -6..=6 {
            let v = e.value((p, 0));
            if p == 0 {
                assert!(isomorphic(&v, &m), "{c}");
            } else {
                assert!(v.is_zero(), "{c} at {p}");
            }
        }
    }
}

#[test]
fn support_is_the_two_cones() {
    for c in COEFFS {
        let e = Engine::new(&construct_named(c).unwrap());
        for d in Window::square(6).degrees() {
            if !in_support(d) {
                assert!(e.value(d).is_zero(), "{c} at {d:?}");
            }
        }
    }
}

#[test]
fn a_maps_compose_to_zero_with_two() {
    let e = Engine::new(&construct_named("Z").unwrap());
    for (p, q) in Window::square(5).degrees() {
        let a = e.a_map((p, q));
        let two = z2mackey::fgab::FgAbMap::scalar(a.top().cod(), 2).after(a.top());
        assert!(two.is_zero(), "2a at ({p},{q})");
    }
}

#[test]
fn chart_json_is_deterministic() {
    let w = Window::new(-3, 3, -3, 3);
    let a = chart(&Engine::new(&construct_named("Z").unwrap()), "Z", w).to_json().to_string();
    let b = chart(&Engine::new(&construct_named("Z").unwrap()), "Z", w).to_json().to_string();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let n = v["cells"].as_array().unwrap().len();
    assert!(n > 0 && n <= 49);
}
