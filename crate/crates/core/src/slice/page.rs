use super::diff::{Differential, Rule};
use crate::bredon::{in_support, Degree, Engine};
use crate::fgab::{homology_sub, FgAb, FgAbMap, SubQuotient};
use crate::mackey::{mackey_homology, MackeyFunctor, MackeyMap};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SliceError {
    #[error("differential not determined at {0} cells, first at Hℤ̲ cell {1:?}")]
    Undetermined(usize, Degree),
    #[error("degeneration not certified at {0} positions, first at stem {1:?}")]
    NotCertified(usize, (i64, i64, i64)),
    #[error("inconsistent differential rules at {0:?}")]
    Inconsistent(Degree),
}

/// Height, periodic or connective, and the abutment window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRParams {
    pub n: u32,
    pub periodic: bool,
    /// integer stems `m` of the abutment degree `m + qα`
    pub stems: (i64, i64),
    /// α-coordinate `q` of the abutment degree
    pub alpha: (i64, i64),
    /// filtration range; entries outside are absent from pages
    pub filt: (i64, i64),
}

impl KRParams {
    pub fn new(n: u32) -> Self {
        KRParams { n, periodic: true, stems: (-8, 16), alpha: (-16, 16), filt: (-64, 64) }
    }

    pub fn connective(mut self) -> Self {
        self.periodic = false;
        self
    }

    pub fn with_stems(mut self, a: i64, b: i64) -> Self {
        self.stems = (a, b);
        self
    }

    pub fn with_alpha(mut self, a: i64, b: i64) -> Self {
        self.alpha = (a, b);
        self
    }

    pub fn with_filt(mut self, a: i64, b: i64) -> Self {
        self.filt = (a, b);
        self
    }

    /// `|v_n| = N(1 + α)` with `N = 2^n - 1`.
    pub fn v_weight(&self) -> i64 {
        (1i64 << self.n) - 1
    }

    /// Slice tags `k` whose `Hℤ̲` cell at abutment `(m, q)` lies in the support cones.
    pub fn tags(&self, m: i64, q: i64) -> Vec<i64> {
        let nn = self.v_weight();
        let lo = (m.min(q).min((m + q).div_euclid(2)) - 1).div_euclid(nn) - 1;
        let hi = (m.max(q).max((m + q).div_euclid(2)) + 1).div_euclid(nn) + 1;
        (lo..=hi).filter(|&k| (self.periodic || k >= 0) && in_support(self.cell(m, q, k))).collect()
    }

    pub fn cell(&self, m: i64, q: i64, k: i64) -> Degree {
        let nn = self.v_weight();
        (m - k * nn, q - k * nn)
    }

    /// Filtration `s` of tag `k` at abutment `(m, q)`.
    pub fn filtration(&self, m: i64, q: i64, k: i64) -> i64 {
        2 * k * self.v_weight() - m - q
    }
}

/// Entry of a page: `E_r^{s, V}` with `V = p + qα`, abutting to `m + qα`, `m = p - s`.
#[derive(Clone, Debug)]
pub struct PageEntry {
    pub s: i64,
    pub p: i64,
    pub q: i64,
    pub stem: i64,
    pub tag: i64,
    pub cell: Degree,
    pub mackey: Option<MackeyFunctor>,
}

#[derive(Clone, Debug)]
pub struct DiffRecord {
    pub from: (i64, i64, i64),
    pub to: (i64, i64, i64),
    pub rule: Option<Rule>,
    pub map: Option<FgAbMap>,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub at: (i64, i64, i64),
    pub certified: bool,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct SSPage {
    pub r: i64,
    pub params: KRParams,
    /// keyed by `(s, p, q)`
    pub entries: BTreeMap<(i64, i64, i64), PageEntry>,
    pub differentials: Vec<DiffRecord>,
    pub certificates: Vec<Certificate>,
}

impl SSPage {
    pub fn undetermined(&self) -> Vec<(i64, i64, i64)> {
        self.entries.iter().filter(|(_, e)| e.mackey.is_none()).map(|(k, _)| *k).collect()
    }

    /// Entries abutting to `m + qα`, by increasing filtration.
    pub fn at(&self, m: i64, q: i64) -> Vec<&PageEntry> {
        let mut v: Vec<&PageEntry> = self.entries.values().filter(|e| e.stem == m && e.q == q).collect();
        v.sort_by_key(|e| e.s);
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .values()
            .filter(|e| e.mackey.as_ref().map(|m| !m.is_zero()).unwrap_or(true))
            .map(|e| {
                serde_json::json!({
                    "s": e.s, "p": e.p, "q": e.q, "stem": e.stem, "tag": e.tag,
                    "mackey": e.mackey.as_ref().map(|m| m.to_json()).unwrap_or(serde_json::Value::Null),
                })
            })
            .collect();
        let diffs: Vec<serde_json::Value> = self
            .differentials
            .iter()
            .map(|d| {
                serde_json::json!({
                    "from": [d.from.0, d.from.1, d.from.2],
                    "to": [d.to.0, d.to.1, d.to.2],
                    "rule": d.rule.map(|r| r.to_string()),
                    "top": d.map.as_ref().map(|m| crate::fgab::group::matrix_json(m.matrix())),
                })
            })
            .collect();
        let certs: Vec<serde_json::Value> = self
            .certificates
            .iter()
            .map(|c| serde_json::json!({"at": [c.at.0, c.at.1, c.at.2], "certified": c.certified, "reason": c.reason}))
            .collect();
        serde_json::json!({"r": self.r, "n": self.params.n, "periodic": self.params.periodic,
            "entries": entries, "differentials": diffs, "certificates": certs})
    }
}

/// The slice spectral sequence over a fixed `Hℤ̲` chart engine.
pub struct SliceSS<'a> {
    pub params: KRParams,
    engine: &'a Engine,
    diff: Differential<'a>,
}

impl<'a> SliceSS<'a> {
    pub fn new(engine: &'a Engine, params: KRParams) -> Self {
        let sh = Differential::shift(params.n);
        let mut cells = Vec::new();
        for m in params.stems.0 - 1..=params.stems.1 + 1 {
            for q in params.alpha.0..=params.alpha.1 {
                for k in params.tags(m, q) {
                    let c = params.cell(m, q, k);
                    cells.push(c);
                    cells.push((c.0 - sh.0, c.1 - sh.1));
                    cells.push((c.0 + sh.0, c.1 + sh.1));
                }
            }
        }
        let diff = Differential::solve(engine, params.n, &cells);
        SliceSS { params, engine, diff }
    }

    pub fn differential(&self) -> &Differential<'a> {
        &self.diff
    }

    /// Length of the only nontrivial differential.
    pub fn r(&self) -> i64 {
        Differential::length(self.params.n)
    }

    fn position(&self, m: i64, q: i64, k: i64) -> (i64, i64, i64) {
        let s = self.params.filtration(m, q, k);
        (s, m + s, q)
    }

    fn d_mackey(&self, c: Degree) -> Option<MackeyMap> {
        let top = self.diff.get(c)?;
        let sh = Differential::shift(self.params.n);
        let src = self.engine.value(c);
        let dst = self.engine.value((c.0 + sh.0, c.1 + sh.1));
        let bot = FgAbMap::zero(src.bot(), dst.bot());
        Some(MackeyMap::new(&src, &dst, top, bot).expect("slice differential is a Mackey map"))
    }

    /// `E_{r+1}` at a cell and tag, `None` when a differential is undetermined.
    pub fn next_value(&self, c: Degree, k: i64) -> Option<MackeyFunctor> {
        let sh = Differential::shift(self.params.n);
        let here = self.engine.value(c);
        if here.is_zero() {
            return Some(here);
        }
        let out = self.d_mackey(c)?;
        let inc = if !self.params.periodic && k == 0 {
            MackeyMap::zero(&MackeyFunctor::zero(), &here)
        } else {
            self.d_mackey((c.0 - sh.0, c.1 - sh.1))?
        };
        Some(mackey_homology(&inc, &out))
    }

    /// Top level of `E_{r+1}` as a subquotient of the cell's top group.
    pub fn next_top_sub(&self, c: Degree, k: i64) -> Option<SubQuotient> {
        let sh = Differential::shift(self.params.n);
        let here = self.engine.value(c);
        let out = self.diff.get(c)?;
        let inc = if !self.params.periodic && k == 0 {
            FgAbMap::zero(&FgAb::zero(), here.top())
        } else {
            self.diff.get((c.0 - sh.0, c.1 - sh.1))?
        };
        Some(homology_sub(&inc, &out))
    }

    fn in_filt(&self, s: i64) -> bool {
        s >= self.params.filt.0 && s <= self.params.filt.1
    }

    pub fn e2(&self) -> SSPage {
        let p = &self.params;
        let mut entries = BTreeMap::new();
        for m in p.stems.0..=p.stems.1 {
            for q in p.alpha.0..=p.alpha.1 {
                for k in p.tags(m, q) {
                    let (s, vp, vq) = self.position(m, q, k);
                    if !self.in_filt(s) {
                        continue;
                    }
                    let c = p.cell(m, q, k);
                    let v = self.engine.value(c);
                    if v.is_zero() {
                        continue;
                    }
                    entries.insert((s, vp, vq), PageEntry { s, p: vp, q: vq, stem: m, tag: k, cell: c, mackey: Some(v) });
                }
            }
        }
        SSPage { r: 2, params: *p, entries, differentials: Vec::new(), certificates: Vec::new() }
    }

    /// Record `d_r` out of every entry of the page.
    pub fn attach_differential(&self, page: &mut SSPage) {
        let sh = Differential::shift(self.params.n);
        let r = self.r();
        page.r = r;
        let mut recs = Vec::new();
        for e in page.entries.values() {
            let c = e.cell;
            let t = (c.0 + sh.0, c.1 + sh.1);
            if self.engine.value(t).is_zero() {
                continue;
            }
            let map = self.diff.get(c);
            if map.as_ref().map(|m| m.is_zero()).unwrap_or(false) {
                continue;
            }
            recs.push(DiffRecord {
                from: (e.s, e.p, e.q),
                to: (e.s + r, e.p + r - 1, e.q),
                rule: self.diff.rule(c),
                map,
            });
        }
        page.differentials = recs;
    }

    /// `E_{r+1}`, refusing if any differential touching the window is undetermined.
    pub fn turn_page(&self) -> Result<SSPage, SliceError> {
        if let Some(c) = self.diff.conflicts().first() {
            return Err(SliceError::Inconsistent(c.0));
        }
        let page = self.next_page_partial();
        let und: Vec<&PageEntry> = page.entries.values().filter(|e| e.mackey.is_none()).collect();
        if let Some(e) = und.first() {
            return Err(SliceError::Undetermined(und.len(), e.cell));
        }
        Ok(page)
    }

    /// `E_{r+1}` with undetermined entries left as `None`.
    pub fn next_page_partial(&self) -> SSPage {
        let e2 = self.e2();
        let mut entries = BTreeMap::new();
        for (key, e) in e2.entries {
            let v = self.next_value(e.cell, e.tag);
            if let Some(v) = &v {
                if v.is_zero() {
                    continue;
                }
            }
            entries.insert(key, PageEntry { mackey: v, ..e });
        }
        SSPage { r: self.r() + 1, params: self.params, entries, differentials: Vec::new(), certificates: Vec::new() }
    }

    /// Sparseness certificate: every longer differential in or out of the entry has a zero
    /// partner on `E_{r+1}`.
    pub fn certify(&self, m: i64, q: i64, k: i64) -> Certificate {
        let p = &self.params;
        let at = self.position(m, q, k);
        let c = p.cell(m, q, k);
        match self.next_value(c, k) {
            None => return Certificate { at, certified: false, reason: "entry undetermined".into() },
            Some(v) if v.is_zero() => return Certificate { at, certified: true, reason: "entry vanishes".into() },
            _ => {}
        }
        let reach = (c.0.abs() + c.1.abs()) / p.v_weight() + 4;
        for j in 2..=reach {
            for (mm, kk) in [(m - 1, k + j), (m + 1, k - j)] {
                if !p.periodic && kk < 0 {
                    continue;
                }
                let cc = p.cell(mm, q, kk);
                if !in_support(cc) {
                    continue;
                }
                match self.next_value(cc, kk) {
                    None => {
                        return Certificate { at, certified: false, reason: format!("partner at stem {mm} tag {kk} undetermined") }
                    }
                    Some(v) if !v.is_zero() => {
                        return Certificate {
                            at,
                            certified: false,
                            reason: format!("possible d_{} with stem {mm} tag {kk}", 2 * j * p.v_weight() + 1),
                        }
                    }
                    _ => {}
                }
            }
        }
        Certificate { at, certified: true, reason: "sparse".into() }
    }

    /// `E_∞` on the window with a certificate per entry.
    pub fn e_infinity(&self) -> Result<SSPage, SliceError> {
        let mut page = self.turn_page()?;
        let mut certs = Vec::new();
        for e in page.entries.values() {
            certs.push(self.certify(e.stem, e.q, e.tag));
        }
        let bad: Vec<&Certificate> = certs.iter().filter(|c| !c.certified).collect();
        if let Some(b) = bad.first() {
            return Err(SliceError::NotCertified(bad.len(), b.at));
        }
        page.r = i64::MAX;
        page.certificates = certs;
        Ok(page)
    }

    /// Certified `E_∞` top group at a cell and tag; `None` if undetermined or uncertified.
    pub fn e_inf_top(&self, m: i64, q: i64, k: i64) -> Option<SubQuotient> {
        let c = self.params.cell(m, q, k);
        if !in_support(c) {
            return Some(SubQuotient::new(0, &crate::fgab::IntMatrix::zeros(0, 0), &crate::fgab::IntMatrix::zeros(0, 0)));
        }
        let sub = self.next_top_sub(c, k)?;
        if sub.group().is_trivial() {
            return Some(sub);
        }
        self.certify(m, q, k).certified.then_some(sub)
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
    fn tags_cover_support() {
        let p = KRParams::new(2);
        for m in -10..10 {
            for q in -10..10 {
                let t = p.tags(m, q);
                for k in -20..20 {
                    assert_eq!(t.contains(&k), in_support(p.cell(m, q, k)), "{m} {q} {k}");
                }
            }
        }
    }

    #[test]
    fn height_one_low_stems() {
        let e = Engine::new(&construct_named("Z").unwrap());
        let ss = SliceSS::new(&e, KRParams::new(1).with_stems(-2, 4).with_alpha(-2, 2));
        let einf = ss.e_infinity().unwrap();
        let top = |m: i64| -> Vec<String> {
            einf.at(m, 0).iter().map(|e| e.mackey.as_ref().unwrap().top().to_string()).filter(|s| s != "0").collect()
        };
        assert_eq!(top(0), vec!["ℤ"]);
        assert_eq!(top(1), vec!["𝔽"]);
        assert_eq!(top(2), vec!["𝔽"]);
        assert!(top(3).is_empty());
        assert_eq!(top(4), vec!["ℤ"]);
    }
}
