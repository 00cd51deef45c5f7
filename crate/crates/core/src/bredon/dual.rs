use super::chart::{Degree, Engine, Window};
use crate::mackey::ops::{enumerate_elements, isomorphic, MackeyHom};
use crate::mackey::{dual_free, dual_tors, split_fr_tors, MackeyFunctor};

/// One degree of the Anderson dual chart: an extension of the free dual by the torsion dual.
#[derive(Clone, Debug)]
pub struct DualCell {
    pub degree: Degree,
    /// `∇_tors` of the torsion one degree down, the subobject
    pub sub: MackeyFunctor,
    /// `∇` of the free quotient, the quotient
    pub quotient: MackeyFunctor,
}

impl DualCell {
    /// The extension is only determined when one end vanishes.
    pub fn value(&self) -> Option<MackeyFunctor> {
        if self.sub.is_zero() {
            Some(self.quotient.clone())
        } else if self.quotient.is_zero() {
            Some(self.sub.clone())
        } else {
            None
        }
    }

    pub fn ambiguous(&self) -> bool {
        self.value().is_none()
    }
}

/// Dual chart at degree `W`, built from the chart at `-W - 1` and `-W`.
pub fn dual_cell(engine: &Engine, w: Degree) -> DualCell {
    let down = engine.value((-w.0 - 1, -w.1));
    let here = engine.value((-w.0, -w.1));
    let (tors, _, _) = split_fr_tors(&down);
    let (_, free, _) = split_fr_tors(&here);
    DualCell { degree: w, sub: dual_tors(&tors), quotient: dual_free(&free) }
}

pub fn dual_chart(engine: &Engine, w: Window) -> Vec<DualCell> {
    w.degrees().into_iter().map(|d| dual_cell(engine, d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SesResult {
    Holds,
    Fails,
    Inconclusive,
}

/// Is there a short exact sequence `0 -> t -> x -> f -> 0`? `t` must be torsion so the
/// candidate monomorphisms form a finite set.
pub fn has_extension(t: &MackeyFunctor, x: &MackeyFunctor, f: &MackeyFunctor) -> SesResult {
    if t.is_zero() {
        return if isomorphic(x, f) { SesResult::Holds } else { SesResult::Fails };
    }
    if f.is_zero() {
        return if isomorphic(x, t) { SesResult::Holds } else { SesResult::Fails };
    }
    let hom = MackeyHom::new(t, x);
    let Some(elts) = enumerate_elements(hom.group(), 0, 100_000) else {
        return SesResult::Inconclusive;
    };
    if hom.group().rank() > 0 {
        return SesResult::Inconclusive;
    }
    for e in elts {
        let g = hom.element(&e);
        if g.is_injective() && isomorphic(&g.cokernel(), f) {
            return SesResult::Holds;
        }
    }
    SesResult::Fails
}

/// Check a dual cell against an actual chart value.
pub fn dual_matches(cell: &DualCell, actual: &MackeyFunctor) -> SesResult {
    has_extension(&cell.sub, actual, &cell.quotient)
}
