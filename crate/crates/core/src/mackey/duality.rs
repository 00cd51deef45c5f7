use super::functor::MackeyFunctor;
use crate::fgab::{ExtGroup, FgAb, HomGroup};

/// Levelwise ℤ-dual with restriction and transfer exchanged.
pub fn dual_free(m: &MackeyFunctor) -> MackeyFunctor {
    let m = m.canonical();
    let z = FgAb::free(1);
    let ht = HomGroup::new(m.top(), &z);
    let hb = HomGroup::new(m.bot(), &z);
    let rho = ht.precompose(m.tau(), &hb);
    let tau = hb.precompose(m.rho(), &ht);
    MackeyFunctor::from_maps(rho, tau).expect("dual of a Mackey functor").canonical()
}

/// Levelwise Ext(-, ℤ) with restriction and transfer exchanged.
pub fn dual_tors(m: &MackeyFunctor) -> MackeyFunctor {
    let m = m.canonical();
    let z = FgAb::free(1);
    let et = ExtGroup::new(m.top(), &z);
    let eb = ExtGroup::new(m.bot(), &z);
    let rho = et.precompose(m.tau(), &eb);
    let tau = eb.precompose(m.rho(), &et);
    MackeyFunctor::from_maps(rho, tau).expect("torsion dual of a Mackey functor").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::named::construct_named;
    use crate::mackey::ops::isomorphic;

    #[test]
    fn dual_table() {
        let n = |s: &str| construct_named(s).unwrap();
        assert!(isomorphic(&dual_free(&n("Z")), &n("Zop")));
        assert!(isomorphic(&dual_free(&n("[Z]")), &n("[Z]")));
        assert!(isomorphic(&dual_tors(&n("[F2]")), &n("[F2]")));
        assert!(dual_free(&n("F2")).is_zero());
        assert!(dual_tors(&n("Z")).is_zero());
        assert!(isomorphic(&dual_tors(&n("L")), &n("F2")));
    }
}
