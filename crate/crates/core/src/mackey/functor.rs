use crate::fgab::group::matrix_json;
use crate::fgab::{
    cokernel_sub, homology_sub, image_sub, kernel_sub, whole_sub, FgAb, FgAbError, FgAbMap, IntMatrix, SubQuotient,
};
use num_bigint::BigInt;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MackeyError {
    #[error("structure map: {0}")]
    Map(#[from] FgAbError),
    #[error("Mackey axiom fails: {0}")]
    Axiom(&'static str),
    #[error("map does not commute with {0}")]
    NotNatural(&'static str),
    #[error("unknown Mackey functor name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

/// Mackey functor for the group of order two: fixed level `top`, underlying level `bot`,
/// restriction `rho`, transfer `tau`. The Weyl action is `rho∘tau - 1` and is never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MackeyFunctor {
    top: FgAb,
    bot: FgAb,
    rho: FgAbMap,
    tau: FgAbMap,
    name: Option<String>,
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Mackey(top {}, bot {}, rho {:?}, tau {:?})",
            self.top,
            self.bot,
            self.rho.matrix(),
            self.tau.matrix()
        )
    }
}

impl MackeyFunctor {
    pub fn new(top: FgAb, bot: FgAb, rho: IntMatrix, tau: IntMatrix) -> Result<Self, MackeyError> {
        let rho = FgAbMap::new(top.clone(), bot.clone(), rho)?;
        let tau = FgAbMap::new(bot.clone(), top.clone(), tau)?;
        Self::from_maps(rho, tau)
    }

    pub fn from_maps(rho: FgAbMap, tau: FgAbMap) -> Result<Self, MackeyError> {
        if rho.dom() != tau.cod() || rho.cod() != tau.dom() {
            return Err(MackeyError::Invalid("restriction and transfer do not match levels".into()));
        }
        let m = MackeyFunctor { top: rho.dom().clone(), bot: rho.cod().clone(), rho, tau, name: None };
        let th = m.theta();
        if !th.after(&th).equals(&FgAbMap::identity(&m.bot)) {
            return Err(MackeyError::Axiom("theta squared is not the identity"));
        }
        if !th.after(&m.rho).equals(&m.rho) {
            return Err(MackeyError::Axiom("theta does not fix the image of restriction"));
        }
        if !m.tau.after(&th).equals(&m.tau) {
            return Err(MackeyError::Axiom("transfer is not theta invariant"));
        }
        Ok(m)
    }

    pub fn zero() -> Self {
        let z = FgAb::zero();
        MackeyFunctor::new(z.clone(), z, IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)).unwrap()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
    pub fn top(&self) -> &FgAb {
        &self.top
    }
    pub fn bot(&self) -> &FgAb {
        &self.bot
    }
    pub fn rho(&self) -> &FgAbMap {
        &self.rho
    }
    pub fn tau(&self) -> &FgAbMap {
        &self.tau
    }

    pub fn theta(&self) -> FgAbMap {
        self.rho.after(&self.tau).sub(&FgAbMap::identity(&self.bot))
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_trivial() && self.bot.is_trivial()
    }

    pub fn is_canonical(&self) -> bool {
        self.top.is_diagonal() && self.bot.is_diagonal()
    }

    /// Largest torsion exponent over both levels.
    pub fn torsion_exponent(&self) -> BigInt {
        self.top.exponent().max(self.bot.exponent())
    }

    /// Isomorphic functor with both levels in canonical form.
    pub fn canonical(&self) -> MackeyFunctor {
        self.canonical_isos().0.dst().clone()
    }

    /// Isomorphisms to and from the canonical form.
    pub fn canonical_isos(&self) -> (MackeyMap, MackeyMap) {
        let (tt, tf) = self.top.canonical_isos();
        let (bt, bf) = self.bot.canonical_isos();
        let rho = bt.after(&self.rho.after(&tf));
        let tau = tt.after(&self.tau.after(&bf));
        let mut c = MackeyFunctor::from_maps(rho, tau).expect("canonical form of a Mackey functor");
        c.name = self.name.clone();
        let to = MackeyMap::new(self, &c, tt, bt).expect("canonical iso");
        let from = MackeyMap::new(&c, self, tf, bf).expect("canonical inverse");
        (to, from)
    }

    /// Pairing of underlying modules with their involution.
    pub fn underlying_module(&self) -> (FgAb, FgAbMap) {
        (self.bot.clone(), self.theta())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c = if self.is_canonical() { self.clone() } else { self.canonical() };
        serde_json::json!({
            "top": c.top.to_json(),
            "bot": c.bot.to_json(),
            "rho": matrix_json(c.rho.matrix()),
            "tau": matrix_json(c.tau.matrix()),
            "name": self.name.clone().map(serde_json::Value::from).unwrap_or(serde_json::Value::Null),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, MackeyError> {
        let bad = |s: &str| MackeyError::Invalid(format!("bad JSON field {s}"));
        let top = FgAb::from_json(v.get("top").ok_or_else(|| bad("top"))?).ok_or_else(|| bad("top"))?;
        let bot = FgAb::from_json(v.get("bot").ok_or_else(|| bad("bot"))?).ok_or_else(|| bad("bot"))?;
        let rho = json_matrix(v.get("rho").ok_or_else(|| bad("rho"))?, bot.gens(), top.gens()).ok_or_else(|| bad("rho"))?;
        let tau = json_matrix(v.get("tau").ok_or_else(|| bad("tau"))?, top.gens(), bot.gens()).ok_or_else(|| bad("tau"))?;
        let mut m = MackeyFunctor::new(top, bot, rho, tau)?;
        m.name = v.get("name").and_then(|n| n.as_str()).map(|s| s.to_string());
        Ok(m)
    }
}

fn json_matrix(v: &serde_json::Value, rows: usize, cols: usize) -> Option<IntMatrix> {
    let arr = v.as_array()?;
    if arr.len() != rows {
        return None;
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in arr {
        let r = r.as_array()?;
        if r.len() != cols {
            return None;
        }
        for x in r {
            let b = match x {
                serde_json::Value::Number(n) => BigInt::from(n.as_i64()?),
                serde_json::Value::String(s) => s.parse().ok()?,
                _ => return None,
            };
            data.push(b);
        }
    }
    Some(IntMatrix::from_big_rows(rows, cols, data))
}

/// Natural transformation between Mackey functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyMap {
    src: MackeyFunctor,
    dst: MackeyFunctor,
    top: FgAbMap,
    bot: FgAbMap,
}

impl MackeyMap {
    pub fn new(src: &MackeyFunctor, dst: &MackeyFunctor, top: FgAbMap, bot: FgAbMap) -> Result<Self, MackeyError> {
        if top.dom() != &src.top || top.cod() != &dst.top || bot.dom() != &src.bot || bot.cod() != &dst.bot {
            return Err(MackeyError::Invalid("level maps do not match the functors".into()));
        }
        if !dst.rho.after(&top).equals(&bot.after(&src.rho)) {
            return Err(MackeyError::NotNatural("restriction"));
        }
        if !top.after(&src.tau).equals(&dst.tau.after(&bot)) {
            return Err(MackeyError::NotNatural("transfer"));
        }
        Ok(MackeyMap { src: src.clone(), dst: dst.clone(), top, bot })
    }

    pub fn from_matrices(
        src: &MackeyFunctor,
        dst: &MackeyFunctor,
        top: IntMatrix,
        bot: IntMatrix,
    ) -> Result<Self, MackeyError> {
        let t = FgAbMap::new(src.top.clone(), dst.top.clone(), top)?;
        let b = FgAbMap::new(src.bot.clone(), dst.bot.clone(), bot)?;
        Self::new(src, dst, t, b)
    }

    pub fn identity(m: &MackeyFunctor) -> Self {
        MackeyMap { src: m.clone(), dst: m.clone(), top: FgAbMap::identity(&m.top), bot: FgAbMap::identity(&m.bot) }
    }

    pub fn zero(a: &MackeyFunctor, b: &MackeyFunctor) -> Self {
        MackeyMap {
            src: a.clone(),
            dst: b.clone(),
            top: FgAbMap::zero(&a.top, &b.top),
            bot: FgAbMap::zero(&a.bot, &b.bot),
        }
    }

    pub fn src(&self) -> &MackeyFunctor {
        &self.src
    }
    pub fn dst(&self) -> &MackeyFunctor {
        &self.dst
    }
    pub fn top(&self) -> &FgAbMap {
        &self.top
    }
    pub fn bot(&self) -> &FgAbMap {
        &self.bot
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MackeyMap) -> MackeyMap {
        MackeyMap { src: first.src.clone(), dst: self.dst.clone(), top: self.top.after(&first.top), bot: self.bot.after(&first.bot) }
    }

    pub fn add(&self, other: &MackeyMap) -> MackeyMap {
        MackeyMap { src: self.src.clone(), dst: self.dst.clone(), top: self.top.add(&other.top), bot: self.bot.add(&other.bot) }
    }

    pub fn sub(&self, other: &MackeyMap) -> MackeyMap {
        MackeyMap { src: self.src.clone(), dst: self.dst.clone(), top: self.top.sub(&other.top), bot: self.bot.sub(&other.bot) }
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.bot.is_zero()
    }

    pub fn equals(&self, other: &MackeyMap) -> bool {
        self.top.equals(&other.top) && self.bot.equals(&other.bot)
    }

    pub fn is_injective(&self) -> bool {
        self.top.is_injective() && self.bot.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.top.is_surjective() && self.bot.is_surjective()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn kernel(&self) -> MackeyFunctor {
        let t = kernel_sub(&self.top);
        let b = kernel_sub(&self.bot);
        sub_functor(&self.src, &t, &b)
    }

    pub fn image(&self) -> MackeyFunctor {
        let t = image_sub(&self.top);
        let b = image_sub(&self.bot);
        sub_functor(&self.dst, &t, &b)
    }

    pub fn cokernel(&self) -> MackeyFunctor {
        let t = cokernel_sub(&self.top);
        let b = cokernel_sub(&self.bot);
        sub_functor(&self.dst, &t, &b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"top": matrix_json(self.top.matrix()), "bot": matrix_json(self.bot.matrix())})
    }
}

/// Levelwise subquotient of `m` with the induced restriction and transfer.
pub fn sub_functor(m: &MackeyFunctor, top: &SubQuotient, bot: &SubQuotient) -> MackeyFunctor {
    let rho = bot.induced_from(top, m.rho.matrix()).expect("restriction preserves the subquotient");
    let tau = top.induced_from(bot, m.tau.matrix()).expect("transfer preserves the subquotient");
    MackeyFunctor::from_maps(rho, tau).expect("subquotient of a Mackey functor")
}

/// Homology at the middle of `a -f-> b -g-> c`.
pub fn mackey_homology(f: &MackeyMap, g: &MackeyMap) -> MackeyFunctor {
    assert!(f.dst == g.src, "homology needs composable maps");
    let t = homology_sub(&f.top, &g.top);
    let b = homology_sub(&f.bot, &g.bot);
    sub_functor(&f.dst, &t, &b)
}

/// Chain complex of Mackey functors, `d[i]: terms[i+1] -> terms[i]`.
#[derive(Clone, Debug)]
pub struct MackeyComplex {
    pub terms: Vec<MackeyFunctor>,
    pub diffs: Vec<MackeyMap>,
}

impl MackeyComplex {
    pub fn new(terms: Vec<MackeyFunctor>, diffs: Vec<MackeyMap>) -> Result<Self, MackeyError> {
        if diffs.len() + 1 != terms.len() && !(terms.is_empty() && diffs.is_empty()) {
            return Err(MackeyError::Invalid("complex needs one differential per adjacent pair".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src != terms[i + 1] || d.dst != terms[i] {
                return Err(MackeyError::Invalid(format!("differential {i} has wrong endpoints")));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].after(&w[1]).is_zero() {
                return Err(MackeyError::Invalid("d squared is not zero".into()));
            }
        }
        Ok(MackeyComplex { terms, diffs })
    }

    /// Homology at position `i`.
    pub fn homology(&self, i: usize) -> MackeyFunctor {
        let t = &self.terms[i];
        let incoming = if i + 1 < self.terms.len() { self.diffs[i].clone() } else { MackeyMap::zero(&MackeyFunctor::zero(), t) };
        let outgoing = if i > 0 { self.diffs[i - 1].clone() } else { MackeyMap::zero(t, &MackeyFunctor::zero()) };
        mackey_homology(&incoming, &outgoing)
    }
}

/// Short exact sequence `0 -> a -i-> b -p-> c -> 0`.
#[derive(Clone, Debug)]
pub struct MackeySES {
    pub i: MackeyMap,
    pub p: MackeyMap,
}

impl MackeySES {
    pub fn new(i: MackeyMap, p: MackeyMap) -> Result<Self, MackeyError> {
        let s = MackeySES { i, p };
        if !s.is_exact() {
            return Err(MackeyError::Invalid("sequence is not short exact".into()));
        }
        Ok(s)
    }

    pub fn is_exact(&self) -> bool {
        self.i.dst == self.p.src
            && self.i.is_injective()
            && self.p.is_surjective()
            && crate::fgab::is_exact(&self.i.top, &self.p.top)
            && crate::fgab::is_exact(&self.i.bot, &self.p.bot)
    }
}

/// Torsion part, torsion-free quotient, and the two structure maps.
pub fn split_fr_tors(m: &MackeyFunctor) -> (MackeyFunctor, MackeyFunctor, MackeySES) {
    let c = m.canonical();
    let tors_sub = |g: &FgAb| {
        let n = g.gens();
        let t = g.torsion().len();
        let num = IntMatrix::identity(n).select_cols(&(0..t).collect::<Vec<_>>());
        SubQuotient::new(n, &num, g.rel())
    };
    let free_sub = |g: &FgAb| {
        let n = g.gens();
        let t = g.torsion().len();
        let den = IntMatrix::identity(n).select_cols(&(0..t).collect::<Vec<_>>());
        SubQuotient::new(n, &IntMatrix::identity(n), &den)
    };
    let (tt, tb) = (tors_sub(&c.top), tors_sub(&c.bot));
    let (ft, fb) = (free_sub(&c.top), free_sub(&c.bot));
    let tors = sub_functor(&c, &tt, &tb);
    let free = sub_functor(&c, &ft, &fb);
    let (wt, wb) = (whole_sub(&c.top), whole_sub(&c.bot));
    let i = MackeyMap::new(
        &tors,
        &c,
        wt.induced_from(&tt, &IntMatrix::identity(c.top.gens())).unwrap(),
        wb.induced_from(&tb, &IntMatrix::identity(c.bot.gens())).unwrap(),
    )
    .expect("torsion inclusion");
    let p = MackeyMap::new(
        &c,
        &free,
        ft.induced_from(&wt, &IntMatrix::identity(c.top.gens())).unwrap(),
        fb.induced_from(&wb, &IntMatrix::identity(c.bot.gens())).unwrap(),
    )
    .expect("free quotient");
    (tors, free, MackeySES::new(i, p).expect("torsion sequence"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_rejected() {
        let z = FgAb::free(1);
        // rho = 1, tau = 1 gives theta = 0, which is not an involution
        let e = MackeyFunctor::new(z.clone(), z.clone(), IntMatrix::identity(1), IntMatrix::identity(1)).unwrap_err();
        assert!(matches!(e, MackeyError::Axiom(_)));
        let ok = MackeyFunctor::new(z.clone(), z, IntMatrix::identity(1), IntMatrix::scalar(1, 2));
        assert!(ok.is_ok());
    }

    #[test]
    fn json_round_trip() {
        let z = FgAb::free(1);
        let m = MackeyFunctor::new(z.clone(), z, IntMatrix::scalar(1, 2), IntMatrix::identity(1)).unwrap();
        let back = MackeyFunctor::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
