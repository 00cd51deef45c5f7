//! Integer stems, candidate groups, Anderson duality and a-localization.

use super::page::{KRParams, SSPage, SliceError, SliceSS};
use crate::bredon::{dual_cell, dual_matches, Degree, Engine, SesResult};
use crate::fgab::{FgAb, FgAbMap, SubQuotient};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Associated graded of one integer stem, by increasing filtration.
#[derive(Clone, Debug)]
pub struct StemGroup {
    pub m: i64,
    pub pieces: Vec<(i64, FgAb)>,
}

impl StemGroup {
    pub fn rank(&self) -> usize {
        self.pieces.iter().map(|(_, g)| g.rank()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// All groups not excluded by the filtration: `ℤ^r ⊕ T` where `|T|` may absorb the
    /// torsion sitting below the top free piece.
    pub fn candidates(&self) -> Vec<FgAb> {
        let r = self.rank();
        let top_free = self.pieces.iter().filter(|(_, g)| g.rank() > 0).map(|(s, _)| *s).max();
        let mut fixed = BigInt::one();
        let mut absorbable = BigInt::one();
        let mut count = 0usize;
        for (s, g) in &self.pieces {
            for t in g.torsion() {
                count += 1;
                match top_free {
                    Some(f) if *s < f => absorbable *= t,
                    _ => fixed *= t,
                }
            }
        }
        let absorbable = absorbable.to_u64().expect("small torsion");
        let mut out = Vec::new();
        for d in (1..=absorbable).filter(|d| absorbable % d == 0) {
            let order = (&fixed * BigInt::from(d)).to_u64().expect("small torsion");
            for t in abelian_groups(order) {
                if t.len() <= count {
                    let tb: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
                    out.push(FgAb::canonical_form(&tb, r));
                }
            }
        }
        out.sort_by_key(|g| g.to_string());
        out.dedup_by(|a, b| a.same_iso_type(b));
        out
    }

    /// Whether a cyclic group (or `0`) admits a filtration with these graded pieces;
    /// `None` when `g` is not cyclic.
    pub fn compatible_with(&self, g: &FgAb) -> Option<bool> {
        let gens = g.rank() + g.torsion().len();
        if gens > 1 {
            return None;
        }
        let nz: Vec<&(i64, FgAb)> = self.pieces.iter().filter(|(_, p)| !p.is_trivial()).collect();
        if g.is_trivial() {
            return Some(nz.is_empty());
        }
        if nz.iter().any(|(_, p)| p.rank() + p.torsion().len() > 1) {
            return Some(false);
        }
        if g.rank() == 1 {
            // ℤ ⊃ d₁ℤ ⊃ ...: finite cyclic quotients, the free piece last
            let free: Vec<usize> = (0..nz.len()).filter(|&i| nz[i].1.rank() == 1).collect();
            return Some(free == vec![nz.len() - 1]);
        }
        let order: BigInt = nz.iter().map(|(_, p)| p.order().unwrap_or_else(BigInt::zero)).product();
        Some(Some(order) == g.order())
    }
}

/// Invariant factors `d₁ | d₂ | ...` of every abelian group of the given order.
pub fn abelian_groups(order: u64) -> Vec<Vec<u64>> {
    let mut primes = Vec::new();
    let mut n = order;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        primes.push((n, 1));
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for part in partitions(e, e) {
            for base in &out {
                // combine primary parts largest with largest
                let mut f = base.clone();
                f.reverse();
                let mut pp: Vec<u64> = part.iter().map(|&k| p.pow(k as u32)).collect();
                pp.sort_unstable_by(|a, b| b.cmp(a));
                let len = f.len().max(pp.len());
                f.resize(len, 1);
                for (i, x) in pp.into_iter().enumerate() {
                    f[i] *= x;
                }
                f.reverse();
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - k, k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Integer stems `m + 0α` of a certified `E_∞` page.
pub fn stems(page: &SSPage) -> Vec<StemGroup> {
    let mut by: BTreeMap<i64, Vec<(i64, FgAb)>> = BTreeMap::new();
    for m in page.params.stems.0..=page.params.stems.1 {
        by.insert(m, Vec::new());
    }
    for e in page.entries.values().filter(|e| e.q == 0) {
        let top = e.mackey.as_ref().expect("certified page").top().clone();
        if !top.is_trivial() {
            by.entry(e.stem).or_default().push((e.s, top));
        }
    }
    by.into_iter()
        .map(|(m, mut pieces)| {
            pieces.sort_by_key(|(s, _)| *s);
            StemGroup { m, pieces }
        })
        .collect()
}

pub fn integer_stems(engine: &Engine, n: u32, periodic: bool, lo: i64, hi: i64) -> Result<Vec<StemGroup>, SliceError> {
    let mut p = KRParams::new(n).with_stems(lo, hi).with_alpha(0, 0);
    if !periodic {
        p = p.connective();
    }
    Ok(stems(&SliceSS::new(engine, p).e_infinity()?))
}

/// `π_* KO` by the Bott pattern.
pub fn ko_group(m: i64) -> FgAb {
    match m.rem_euclid(8) {
        0 | 4 => FgAb::free(1),
        1 | 2 => FgAb::cyclic(2),
        _ => FgAb::zero(),
    }
}

/// Integer periodicity `2^{n+2}(2^n - 1)` of `Kℝ(n)`.
pub fn period(n: u32) -> i64 {
    (1i64 << (n + 2)) * ((1i64 << n) - 1)
}

/// The shift `t` with `I_ℤ Kℝ(n) ≃ Σ^t Kℝ(n)`.
pub fn anderson_shift(n: u32) -> i64 {
    -(1i64 << (n + 2)) + 4
}

/// Stems repeat with the given period wherever both ends are known. Filtrations need not
/// repeat across stem zero, so only the candidate groups are compared.
pub fn periodic_with(stems: &[StemGroup], p: i64) -> bool {
    let by: BTreeMap<i64, &StemGroup> = stems.iter().map(|s| (s.m, s)).collect();
    by.iter().all(|(m, a)| match by.get(&(m + p)) {
        None => true,
        Some(b) => {
            let cb = b.candidates();
            a.candidates().iter().any(|x| cb.iter().any(|y| x.same_iso_type(y)))
        }
    })
}

#[derive(Clone, Debug)]
pub struct AndersonStem {
    pub m: i64,
    pub holds: bool,
    /// candidate sets left more than one group at `m` or its partner
    pub ambiguous: bool,
}

/// `π_m ≅ tors π_{-m-t-1} ⊕ free π_{-m-t}` with `π` only known up to candidate sets;
/// stems are read modulo `period`, which must be covered by `stems`.
pub fn anderson_stems(stems: &[StemGroup], t: i64, period: i64) -> Vec<AndersonStem> {
    let by: BTreeMap<i64, &StemGroup> = stems.iter().map(|s| (s.m, s)).collect();
    let lo = *by.keys().next().expect("stems");
    let get = |m: i64| -> Option<&StemGroup> { by.get(&(lo + (m - lo).rem_euclid(period))).copied() };
    let mut out = Vec::new();
    for s in stems {
        let (Some(tp), Some(fp)) = (get(-s.m - t - 1), get(-s.m - t)) else { continue };
        let mine = s.candidates();
        let theirs = tp.candidates();
        let tors = |g: &FgAb| FgAb::canonical_form(g.torsion(), 0);
        let common = mine.iter().any(|a| theirs.iter().any(|b| tors(a).same_iso_type(&tors(b))));
        let holds = common && s.rank() == fp.rank();
        out.push(AndersonStem { m: s.m, holds, ambiguous: mine.len() > 1 || theirs.len() > 1 });
    }
    out
}

/// Shifts in `[0, period)` passing the stem-level duality test.
pub fn anderson_shifts(stems: &[StemGroup], period: i64) -> Vec<i64> {
    (0..period).filter(|&t| anderson_stems(stems, t, period).iter().all(|a| a.holds)).collect()
}

/// `E_2`-level duality: the dual page built from `E_2` at `-W-1` and `-W` against
/// `E_2` at `W - 2 + 2α`, tag by tag.
pub fn e2_duality(engine: &Engine, params: &KRParams) -> Vec<((i64, i64, i64), SesResult)> {
    let mut out = Vec::new();
    for m in params.stems.0..=params.stems.1 {
        for q in params.alpha.0..=params.alpha.1 {
            let mut ks: Vec<i64> = params.tags(m - 2, q + 2);
            ks.extend(params.tags(-m, -q).into_iter().map(|k| -k));
            ks.extend(params.tags(-m - 1, -q).into_iter().map(|k| -k));
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                let x = params.cell(m, q, k);
                let cell = dual_cell(engine, x);
                let actual = engine.value((x.0 - 2, x.1 + 2));
                out.push(((m, q, k), dual_matches(&cell, &actual)));
            }
        }
    }
    out
}

/// Colimit of a finite a-tower, read off its tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Colimit {
    Stable(FgAb),
    Inconclusive,
}

/// Trailing isomorphisms required in a chart column.
pub const STABLE_TAIL: usize = 3;

/// Colimit read off the last `tail` maps: all isomorphisms, or all groups zero. A truncated
/// a-tower on `E_∞` has fewer than `r` classes, so slice towers need `tail >= r`.
pub fn a_colimit(groups: &[Option<FgAb>], maps: &[Option<FgAbMap>], tail: usize) -> Colimit {
    let l = groups.len();
    if l < tail + 1 || maps.len() + 1 != l {
        return Colimit::Inconclusive;
    }
    let last = &groups[l - tail - 1..];
    if last.iter().all(|g| g.as_ref().map(|g| g.is_trivial()).unwrap_or(false)) {
        return Colimit::Stable(FgAb::zero());
    }
    if maps[l - 1 - tail..].iter().all(|f| f.as_ref().map(|f| f.is_iso()).unwrap_or(false)) {
        return Colimit::Stable(groups[l - 1].clone().expect("map source").canonical());
    }
    Colimit::Inconclusive
}

/// a-inverted top level of `HM` at integer degree `p`, along `q` from `qhi` down to `qlo`.
pub fn localize_chart(engine: &Engine, p: i64, qhi: i64, qlo: i64) -> Colimit {
    let groups: Vec<Option<FgAb>> = (qlo..=qhi).rev().map(|q| Some(engine.value((p, q)).top().clone())).collect();
    let maps: Vec<Option<FgAbMap>> = (qlo + 1..=qhi).rev().map(|q| Some(engine.a_map((p, q)).top().clone())).collect();
    a_colimit(&groups, &maps, STABLE_TAIL)
}

/// a-inverted `E_∞` along stem `m` and slice tag `k`, using only certified entries.
pub fn localize_ss(ss: &SliceSS, m: i64, k: i64, qhi: i64, qlo: i64) -> Colimit {
    let subs: Vec<(Degree, Option<SubQuotient>)> =
        (qlo..=qhi).rev().map(|q| (ss.params.cell(m, q, k), ss.e_inf_top(m, q, k))).collect();
    let groups: Vec<Option<FgAb>> = subs.iter().map(|(_, s)| s.as_ref().map(|s| s.group().clone())).collect();
    let maps: Vec<Option<FgAbMap>> = subs
        .windows(2)
        .map(|w| match (&w[0], &w[1]) {
            ((c, Some(a)), (_, Some(b))) => {
                if a.group().is_trivial() || b.group().is_trivial() {
                    return Some(FgAbMap::zero(a.group(), b.group()));
                }
                b.induced_from(a, ss.engine().a_map(*c).top().matrix()).ok()
            }
            _ => None,
        })
        .collect();
    a_colimit(&groups, &maps, ss.r() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_group_counts() {
        // partition numbers multiply over primes
        assert_eq!(abelian_groups(1).len(), 1);
        assert_eq!(abelian_groups(8).len(), 3);
        assert_eq!(abelian_groups(16).len(), 5);
        assert_eq!(abelian_groups(72).len(), 6);
        for g in abelian_groups(72) {
            assert_eq!(g.iter().product::<u64>(), 72);
            assert!(g.windows(2).all(|w| w[1] % w[0] == 0), "{g:?}");
        }
    }

    #[test]
    fn candidates_absorb_lower_torsion() {
        let s = StemGroup { m: 0, pieces: vec![(-2, FgAb::cyclic(2)), (0, FgAb::free(1))] };
        let c: Vec<String> = s.candidates().iter().map(|g| g.to_string()).collect();
        assert_eq!(c.len(), 2, "{c:?}");
        assert_eq!(s.compatible_with(&FgAb::free(1)), Some(true));
        let t = StemGroup { m: 0, pieces: vec![(0, FgAb::free(1)), (2, FgAb::cyclic(2))] };
        assert_eq!(t.candidates().len(), 1);
        assert_eq!(t.compatible_with(&FgAb::free(1)), Some(false));
    }
}

/// a-localization of certified `E_∞` for every (stem, tag) tower meeting the window.
pub fn geometric_localize(ss: &SliceSS) -> BTreeMap<(i64, i64), Colimit> {
    let p = ss.params;
    let mut out = BTreeMap::new();
    for m in p.stems.0..=p.stems.1 {
        let mut ks: Vec<i64> = (p.alpha.0..=p.alpha.1).flat_map(|q| p.tags(m, q)).collect();
        ks.sort_unstable();
        ks.dedup();
        for k in ks {
            out.insert((m, k), localize_ss(ss, m, k, p.alpha.1, p.alpha.0));
        }
    }
    out
}

/// Degree bookkeeping behind the integer shift: `(-2 + 2α) + (2 - 2N)(1 - α) - 2|v_n|`
/// has no α-part and integer part `-2^{n+2} + 4`.
pub fn shift_arithmetic(n: u32) -> (i64, i64) {
    let nn = (1i64 << n) - 1;
    let x = 2 - 2 * nn;
    let int = -2 + x - 2 * nn;
    let alpha = 2 - x - 2 * nn;
    (int, alpha)
}

#[derive(Clone, Debug)]
pub struct AndersonReport {
    pub n: u32,
    pub e2_cells: usize,
    pub e2_failures: Vec<(i64, i64, i64)>,
    pub e2_ambiguous: Vec<(i64, i64, i64)>,
    pub stems: Vec<AndersonStem>,
    /// shifts in `[0, P)` consistent with the stems over one period
    pub shifts: Vec<i64>,
    pub arithmetic: bool,
}

impl AndersonReport {
    pub fn holds(&self) -> bool {
        let t = anderson_shift(self.n).rem_euclid(period(self.n));
        self.e2_failures.is_empty() && self.stems.iter().all(|s| s.holds) && self.shifts == vec![t] && self.arithmetic
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n, "holds": self.holds(),
            "e2_cells": self.e2_cells,
            "e2_failures": self.e2_failures.iter().map(|c| vec![c.0, c.1, c.2]).collect::<Vec<_>>(),
            "e2_ambiguous": self.e2_ambiguous.iter().map(|c| vec![c.0, c.1, c.2]).collect::<Vec<_>>(),
            "stems": self.stems.iter().map(|s| serde_json::json!({"m": s.m, "holds": s.holds, "ambiguous": s.ambiguous})).collect::<Vec<_>>(),
            "shifts": self.shifts, "expected_shift": anderson_shift(self.n), "arithmetic": self.arithmetic,
        })
    }
}

/// `E_2` duality on the window plus the integer-stem duality over one full period.
pub fn anderson_check(engine: &Engine, params: &KRParams) -> Result<AndersonReport, SliceError> {
    let n = params.n;
    let e2 = e2_duality(engine, params);
    let per = period(n);
    let st = integer_stems(engine, n, true, -per - 8, per + 8)?;
    let t = anderson_shift(n);
    let mut stems = anderson_stems(&st, t, per);
    stems.retain(|s| s.m >= params.stems.0 && s.m <= params.stems.1);
    Ok(AndersonReport {
        n,
        e2_cells: e2.len(),
        e2_failures: e2.iter().filter(|x| x.1 == SesResult::Fails).map(|x| x.0).collect(),
        e2_ambiguous: e2.iter().filter(|x| x.1 == SesResult::Inconclusive).map(|x| x.0).collect(),
        stems,
        shifts: anderson_shifts(&st, per),
        arithmetic: shift_arithmetic(n) == (t, 0),
    })
}
