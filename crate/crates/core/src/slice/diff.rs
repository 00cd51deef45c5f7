use crate::bredon::{in_support, Degree, Engine};
use crate::fgab::{factor_through_injection, factor_through_surjection, FgAbMap};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Which rule fixed a differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// source or target is zero
    Vanishing,
    /// `d(U y) = a^r v y + U d(y)` read forwards (U onto the source)
    LeibnizForward,
    /// the same identity read backwards (U injective on the target)
    LeibnizBackward,
    /// `d(a y) = a d(y)` with a onto the source
    ALinearForward,
    /// the same identity with a injective on the target
    ALinearBackward,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Vanishing => "vanishing",
            Rule::LeibnizForward => "leibniz-forward",
            Rule::LeibnizBackward => "leibniz-backward",
            Rule::ALinearForward => "a-linear-forward",
            Rule::ALinearBackward => "a-linear-backward",
        };
        f.write_str(s)
    }
}

/// The unique nontrivial slice differential of `Kℝ(n)`, as maps on top levels of the
/// `Hℤ̲` chart. `d_r` sends the cell `c` of slice tag `k` to the cell `c + δ` of tag `k + 1`.
pub struct Differential<'a> {
    engine: &'a Engine,
    n: u32,
    region: (Degree, Degree),
    known: HashMap<Degree, (FgAbMap, Rule)>,
    conflicts: Vec<(Degree, Rule)>,
}

impl<'a> Differential<'a> {
    /// Length of the differential, `2^{n+1} - 1`.
    pub fn length(n: u32) -> i64 {
        (1i64 << (n + 1)) - 1
    }

    /// Shift `δ` of the `Hℤ̲` cell.
    pub fn shift(n: u32) -> Degree {
        (-(1i64 << n), -((1i64 << n) - 1))
    }

    /// Degree of `U = u^{2^{n-1}}`.
    pub fn u_degree(n: u32) -> Degree {
        (1i64 << n, -(1i64 << n))
    }

    /// Solve on the region spanned by `cells` and the origin.
    pub fn solve(engine: &'a Engine, n: u32, cells: &[Degree]) -> Self {
        assert!(n >= 1, "height must be positive");
        let mut lo = (0i64, 0i64);
        let mut hi = (0i64, 0i64);
        for c in cells {
            lo = (lo.0.min(c.0), lo.1.min(c.1));
            hi = (hi.0.max(c.0), hi.1.max(c.1));
        }
        let mut d = Differential { engine, n, region: (lo, hi), known: HashMap::new(), conflicts: Vec::new() };
        d.run();
        d
    }

    fn in_region(&self, c: Degree) -> bool {
        let (lo, hi) = self.region;
        c.0 >= lo.0 && c.0 <= hi.0 && c.1 >= lo.1 && c.1 <= hi.1
    }

    fn target(&self, c: Degree) -> Degree {
        let s = Self::shift(self.n);
        (c.0 + s.0, c.1 + s.1)
    }

    fn top_zero(&self, c: Degree) -> bool {
        !in_support(c) || self.engine.value(c).top().is_trivial()
    }

    fn zero_map(&self, c: Degree) -> FgAbMap {
        let t = self.target(c);
        FgAbMap::zero(self.engine.value(c).top(), self.engine.value(t).top())
    }

    /// Known value of `D_c`, including the ones forced by vanishing anywhere.
    pub fn get(&self, c: Degree) -> Option<FgAbMap> {
        if self.top_zero(c) || self.top_zero(self.target(c)) {
            return Some(self.zero_map(c));
        }
        self.known.get(&c).map(|(m, _)| m.clone())
    }

    pub fn rule(&self, c: Degree) -> Option<Rule> {
        if self.top_zero(c) || self.top_zero(self.target(c)) {
            return Some(Rule::Vanishing);
        }
        self.known.get(&c).map(|(_, r)| *r)
    }

    fn upow(&self, c: Degree) -> FgAbMap {
        self.engine.u_power(c, 1i64 << (self.n - 1)).top().clone()
    }

    fn apow(&self, c: Degree) -> FgAbMap {
        self.engine.a_power(c, Self::length(self.n)).top().clone()
    }

    fn a1(&self, c: Degree) -> FgAbMap {
        self.engine.a_map(c).top().clone()
    }

    fn candidates(&self) -> Vec<Degree> {
        let (lo, hi) = self.region;
        let mut v = Vec::new();
        for q in lo.1..=hi.1 {
            for p in lo.0..=hi.0 {
                let c = (p, q);
                if !self.top_zero(c) && !self.top_zero(self.target(c)) {
                    v.push(c);
                }
            }
        }
        v
    }

    fn try_rules(&mut self, c: Degree) -> Option<(FgAbMap, Rule)> {
        let uu = Self::u_degree(self.n);
        let t = self.target(c);
        // forward Leibniz from c - |U|
        let c0 = (c.0 - uu.0, c.1 - uu.1);
        if self.in_region(c0) || !in_support(c0) {
            if let Some(d0) = self.get(c0) {
                let u0 = self.upow(c0);
                if u0.is_surjective() {
                    let g = self.apow(c0).add(&self.upow(self.target(c0)).after(&d0));
                    match factor_through_surjection(&g, &u0) {
                        Some(h) => return Some((h, Rule::LeibnizForward)),
                        None => self.conflicts.push((c, Rule::LeibnizForward)),
                    }
                }
            }
        }
        // forward a-linearity from c + α
        let c1 = (c.0, c.1 + 1);
        if self.in_region(c1) || !in_support(c1) {
            if let Some(d1) = self.get(c1) {
                let a = self.a1(c1);
                if a.is_surjective() {
                    let g = self.a1(self.target(c1)).after(&d1);
                    match factor_through_surjection(&g, &a) {
                        Some(h) => return Some((h, Rule::ALinearForward)),
                        None => self.conflicts.push((c, Rule::ALinearForward)),
                    }
                }
            }
        }
        // backward Leibniz through c + |U|
        let c2 = (c.0 + uu.0, c.1 + uu.1);
        if self.in_region(c2) || !in_support(c2) {
            if let Some(d2) = self.get(c2) {
                let ut = self.upow(t);
                if ut.is_injective() {
                    let h = d2.after(&self.upow(c)).sub(&self.apow(c));
                    match factor_through_injection(&h, &ut) {
                        Some(x) => return Some((x, Rule::LeibnizBackward)),
                        None => self.conflicts.push((c, Rule::LeibnizBackward)),
                    }
                }
            }
        }
        // backward a-linearity through c - α
        let c3 = (c.0, c.1 - 1);
        if self.in_region(c3) || !in_support(c3) {
            if let Some(d3) = self.get(c3) {
                let at = self.a1(t);
                if at.is_injective() {
                    let h = d3.after(&self.a1(c));
                    match factor_through_injection(&h, &at) {
                        Some(x) => return Some((x, Rule::ALinearBackward)),
                        None => self.conflicts.push((c, Rule::ALinearBackward)),
                    }
                }
            }
        }
        None
    }

    fn run(&mut self) {
        let cands = self.candidates();
        loop {
            let mut changed = false;
            for &c in &cands {
                if self.known.contains_key(&c) {
                    continue;
                }
                if let Some(v) = self.try_rules(c) {
                    self.known.insert(c, v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.conflicts.sort();
        self.conflicts.dedup();
    }

    /// Cells in the region where the differential could be nonzero but no rule fixed it.
    pub fn undetermined(&self) -> Vec<Degree> {
        self.candidates().into_iter().filter(|c| !self.known.contains_key(c)).collect()
    }

    /// Cells where some rule produced no consistent value.
    pub fn conflicts(&self) -> &[(Degree, Rule)] {
        &self.conflicts
    }

    /// Recheck every Leibniz and a-linearity identity among determined cells of the region.
    pub fn verify_identities(&self) -> Vec<Degree> {
        let uu = Self::u_degree(self.n);
        let mut bad = Vec::new();
        let (lo, hi) = self.region;
        for q in lo.1..=hi.1 {
            for p in lo.0..=hi.0 {
                let c = (p, q);
                let Some(dc) = self.get(c) else { continue };
                let c2 = (c.0 + uu.0, c.1 + uu.1);
                if let Some(d2) = self.get(c2) {
                    let lhs = d2.after(&self.upow(c));
                    let rhs = self.apow(c).add(&self.upow(self.target(c)).after(&dc));
                    if !lhs.equals(&rhs) {
                        bad.push(c);
                        continue;
                    }
                }
                let c3 = (c.0, c.1 - 1);
                if let Some(d3) = self.get(c3) {
                    if !d3.after(&self.a1(c)).equals(&self.a1(self.target(c)).after(&dc)) {
                        bad.push(c);
                    }
                }
            }
        }
        bad
    }

    /// Cells where `d ∘ d` is determined and nonzero.
    pub fn square_nonzero(&self) -> Vec<Degree> {
        self.known
            .iter()
            .filter_map(|(c, (m, _))| {
                let next = self.get(self.target(*c))?;
                (!next.after(m).is_zero()).then_some(*c)
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Determined nonzero differentials, by source cell.
    pub fn nonzero(&self) -> BTreeMap<Degree, FgAbMap> {
        self.known.iter().filter(|(_, (m, _))| !m.is_zero()).map(|(c, (m, _))| (*c, m.clone())).collect()
    }

    pub fn height(&self) -> u32 {
        self.n
    }

    pub fn engine(&self) -> &Engine {
        self.engine
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::construct_named;

    #[test]
    fn height_one_first_differential() {
        let e = Engine::new(&construct_named("Z").unwrap());
        let d = Differential::solve(&e, 1, &[(4, -4), (-6, 6)]);
        assert!(d.conflicts().is_empty());
        // d(u) = a^3 v: from (2, -2) to (0, -3), nonzero
        let du = d.get((2, -2)).unwrap();
        assert!(!du.is_zero());
        // d(u^2) = 2 u a^3 v = 0
        assert!(d.get((4, -4)).unwrap().is_zero());
        assert!(d.verify_identities().is_empty());
    }
}
