use super::functor::{MackeyError, MackeyFunctor, MackeyMap};
use crate::fgab::functors::projected_kernel;
use crate::fgab::{tensor_presentation, FgAb, FgAbMap, HomGroup, IntMatrix, SubQuotient};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse linear system in integer unknowns.
pub(crate) struct LinSys {
    nvars: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl LinSys {
    pub fn new(nvars: usize) -> Self {
        LinSys { nvars, rows: Vec::new() }
    }

    /// Congruences `expr(i, c) ≡ 0` in group `g` for generator `i` and column `c`.
    /// Fresh slack unknowns absorb the relations of `g`.
    pub fn congruences(&mut self, g: &FgAb, ncols: usize, expr: impl Fn(usize, usize) -> Vec<(usize, BigInt)>) {
        let rel = g.rel();
        let base = self.nvars;
        self.nvars += rel.cols() * ncols;
        for i in 0..g.gens() {
            for c in 0..ncols {
                let mut row = expr(i, c);
                for l in 0..rel.cols() {
                    let r = rel.get(i, l);
                    if !r.is_zero() {
                        row.push((base + l * ncols + c, -r));
                    }
                }
                self.rows.push(row);
            }
        }
    }

    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.nvars);
        for (i, row) in self.rows.iter().enumerate() {
            for (v, c) in row {
                let cur = m.get(i, *v).clone();
                m.set(i, *v, cur + c);
            }
        }
        m
    }
}

/// Columns for `R_G Z` placed in a block of `rows x cols` matrix unknowns starting at `offset`.
fn relation_block(g: &FgAb, cols: usize, offset: usize, ambient: usize) -> Vec<Vec<BigInt>> {
    let rel = g.rel();
    let mut out = Vec::new();
    for l in 0..rel.cols() {
        for j in 0..cols {
            let mut v = vec![BigInt::zero(); ambient];
            for i in 0..g.gens() {
                v[offset + i * cols + j] = rel.get(i, l).clone();
            }
            out.push(v);
        }
    }
    out
}

/// Box product.
pub fn box_product(m: &MackeyFunctor, n: &MackeyFunctor) -> MackeyFunctor {
    let m = m.canonical();
    let n = n.canonical();
    let (tm, em, tn, en) = (m.top().gens(), m.bot().gens(), n.top().gens(), n.bot().gens());
    let bot = tensor_presentation(m.bot(), n.bot());
    let tt = tm * tn;
    let ee = em * en;
    let amb = tt + ee;
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    let top_tensor = tensor_presentation(m.top(), n.top());
    for c in 0..top_tensor.rel().cols() {
        let mut v = top_tensor.rel().col(c);
        v.extend(std::iter::repeat(BigInt::zero()).take(ee));
        rels.push(v);
    }
    for c in 0..bot.rel().cols() {
        let mut v = vec![BigInt::zero(); tt];
        v.extend(bot.rel().col(c));
        rels.push(v);
    }
    let th = m.theta().matrix().kron(n.theta().matrix());
    for k in 0..ee {
        let mut v = vec![BigInt::zero(); amb];
        v[tt + k] += BigInt::one();
        for r in 0..ee {
            v[tt + r] -= th.get(r, k);
        }
        rels.push(v);
    }
    let unit = |len: usize, i: usize| {
        let mut e = vec![BigInt::zero(); len];
        e[i] = BigInt::one();
        e
    };
    // tau(a) ⊗ y = [a ⊗ rho(y)]
    for a in 0..em {
        for j in 0..tn {
            let mut v = kron_vec(&m.tau().matrix().col(a), &unit(tn, j));
            let w = kron_vec(&unit(em, a), &n.rho().matrix().col(j));
            v.extend(w.into_iter().map(|x| -x));
            rels.push(v);
        }
    }
    // x ⊗ tau(b) = [rho(x) ⊗ b]
    for i in 0..tm {
        for b in 0..en {
            let mut v = kron_vec(&unit(tm, i), &n.tau().matrix().col(b));
            let w = kron_vec(&m.rho().matrix().col(i), &unit(en, b));
            v.extend(w.into_iter().map(|x| -x));
            rels.push(v);
        }
    }
    let top = FgAb::from_presentation(amb, IntMatrix::from_cols(amb, &rels));
    let rr = m.rho().matrix().kron(n.rho().matrix());
    let norm = IntMatrix::identity(ee).add(&th);
    let rho = IntMatrix::hstack(ee, &[&rr, &norm]);
    let tau = IntMatrix::vstack(ee, &[&IntMatrix::zeros(tt, ee), &IntMatrix::identity(ee)]);
    MackeyFunctor::new(top, bot, rho, tau).expect("box product satisfies the axioms").canonical()
}

fn kron_vec(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Group of Mackey maps `src -> dst`; elements are pairs of matrices on canonical generators.
#[derive(Clone, Debug)]
pub struct MackeyHom {
    src: MackeyFunctor,
    dst: MackeyFunctor,
    sub: SubQuotient,
}

impl MackeyHom {
    pub fn new(src: &MackeyFunctor, dst: &MackeyFunctor) -> Self {
        let m = src.canonical();
        let n = dst.canonical();
        let (tm, em, tn, en) = (m.top().gens(), m.bot().gens(), n.top().gens(), n.bot().gens());
        let ot = 0;
        let ob = tn * tm;
        let amb = ob + en * em;
        let ft = |i: usize, j: usize| ot + i * tm + j;
        let fb = |i: usize, j: usize| ob + i * em + j;
        let mut sys = LinSys::new(amb);
        let (rmt, rme) = (m.top().rel().clone(), m.bot().rel().clone());
        // well defined on relations
        sys.congruences(n.top(), rmt.cols(), |i, c| (0..tm).map(|j| (ft(i, j), rmt.get(j, c).clone())).collect());
        sys.congruences(n.bot(), rme.cols(), |i, c| (0..em).map(|j| (fb(i, j), rme.get(j, c).clone())).collect());
        let (rho_m, tau_m) = (m.rho().matrix().clone(), m.tau().matrix().clone());
        let (rho_n, tau_n) = (n.rho().matrix().clone(), n.tau().matrix().clone());
        // F_bot rho_M - rho_N F_top
        sys.congruences(n.bot(), tm, |i, c| {
            let mut row: Vec<(usize, BigInt)> = (0..em).map(|j| (fb(i, j), rho_m.get(j, c).clone())).collect();
            row.extend((0..tn).map(|k| (ft(k, c), -rho_n.get(i, k))));
            row
        });
        // F_top tau_M - tau_N F_bot
        sys.congruences(n.top(), em, |i, c| {
            let mut row: Vec<(usize, BigInt)> = (0..tm).map(|j| (ft(i, j), tau_m.get(j, c).clone())).collect();
            row.extend((0..en).map(|k| (fb(k, c), -tau_n.get(i, k))));
            row
        });
        let mat = sys.matrix();
        let num = if mat.rows() == 0 { IntMatrix::identity(amb) } else { projected_kernel(&mat, amb) };
        let mut den = relation_block(n.top(), tm, ot, amb);
        den.extend(relation_block(n.bot(), em, ob, amb));
        let den = IntMatrix::from_cols(amb, &den);
        MackeyHom { src: m, dst: n, sub: SubQuotient::new(amb, &num, &den) }
    }

    pub fn group(&self) -> &FgAb {
        self.sub.group()
    }

    pub fn sub(&self) -> &SubQuotient {
        &self.sub
    }

    /// Canonical source and target the matrices refer to.
    pub fn src(&self) -> &MackeyFunctor {
        &self.src
    }
    pub fn dst(&self) -> &MackeyFunctor {
        &self.dst
    }

    fn split(&self, v: &[BigInt]) -> (IntMatrix, IntMatrix) {
        let (tm, em, tn, en) = (self.src.top().gens(), self.src.bot().gens(), self.dst.top().gens(), self.dst.bot().gens());
        let t = IntMatrix::unflatten(tn, tm, &v[..tn * tm]);
        let b = IntMatrix::unflatten(en, em, &v[tn * tm..]);
        (t, b)
    }

    pub fn element(&self, coords: &[BigInt]) -> MackeyMap {
        let mut v = vec![BigInt::zero(); self.sub.ambient()];
        for (g, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in v.iter_mut().zip(self.sub.rep(g)) {
                *o += c * r;
            }
        }
        let (t, b) = self.split(&v);
        MackeyMap::from_matrices(&self.src, &self.dst, t, b).expect("element of the Mackey hom group")
    }

    pub fn coords(&self, f: &MackeyMap) -> Option<Vec<BigInt>> {
        let mut v = f.top().matrix().flatten();
        v.extend(f.bot().matrix().flatten());
        self.sub.coords(&v)
    }
}

/// Internal hom. The underlying level is the full group of homomorphisms with the
/// conjugation action, the top level is the group of Mackey maps.
pub fn internal_hom(m: &MackeyFunctor, n: &MackeyFunctor) -> MackeyFunctor {
    let hom = MackeyHom::new(m, n);
    let (m, n) = (hom.src.clone(), hom.dst.clone());
    let bot = HomGroup::new(m.bot(), n.bot());
    let (tm, em, tn, en) = (m.top().gens(), m.bot().gens(), n.top().gens(), n.bot().gens());
    let ob = tn * tm;
    let amb = ob + en * em;
    // restriction: keep the underlying component
    let mut proj = IntMatrix::zeros(en * em, amb);
    for k in 0..en * em {
        proj.set(k, ob + k, BigInt::one());
    }
    let rho = bot.sub().induced_from(hom.sub(), &proj).expect("restriction of Mackey maps");
    // transfer: g -> (tau_N g rho_M, g + theta_N g theta_M)
    let (thm, thn) = (m.theta().matrix().clone(), n.theta().matrix().clone());
    let mut cols = Vec::with_capacity(en * em);
    for i in 0..en {
        for j in 0..em {
            let mut g = IntMatrix::zeros(en, em);
            g.set(i, j, BigInt::one());
            let t = n.tau().matrix().mul(&g).mul(m.rho().matrix());
            let b = g.add(&thn.mul(&g).mul(&thm));
            let mut v = t.flatten();
            v.extend(b.flatten());
            cols.push(v);
        }
    }
    let tmat = IntMatrix::from_cols(amb, &cols);
    let tau = hom.sub().induced_from(bot.sub(), &tmat).expect("transfer of homomorphisms");
    MackeyFunctor::from_maps(rho, tau).expect("internal hom satisfies the axioms").canonical()
}

/// Deterministic list of canonical coordinate vectors: torsion coordinates range over all
/// residues, free ones over `[-bound, bound]`, smaller norms first. `None` if over `cap`.
pub fn enumerate_elements(g: &FgAb, bound: i64, cap: usize) -> Option<Vec<Vec<BigInt>>> {
    let t = g.torsion().len();
    let mut count: usize = 1;
    for d in g.torsion() {
        let d: usize = usize::try_from(d).ok()?;
        count = count.checked_mul(d)?;
    }
    let free_choices = (2 * bound + 1) as usize;
    for _ in 0..g.rank() {
        count = count.checked_mul(free_choices)?;
    }
    if count > cap {
        return None;
    }
    let mut out: Vec<Vec<BigInt>> = vec![vec![]];
    for d in g.torsion() {
        let d = i64::try_from(d).ok()?;
        out = out.into_iter().flat_map(|v| (0..d).map(move |k| { let mut w = v.clone(); w.push(BigInt::from(k)); w })).collect();
    }
    let mut free: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..g.rank() {
        free = free.into_iter().flat_map(|v| (-bound..=bound).map(move |k| { let mut w = v.clone(); w.push(k); w })).collect();
    }
    free.sort_by_key(|v| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    let mut res = Vec::with_capacity(out.len() * free.len());
    for f in &free {
        for tv in &out {
            let mut w = tv.clone();
            w.extend(f.iter().map(|x| BigInt::from(*x)));
            res.push(w);
        }
    }
    debug_assert!(res.iter().all(|v| v.len() == t + g.rank()));
    Some(res)
}

/// Outcome of a bounded isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoResult {
    Iso(MackeyMap),
    NotIso,
    Inconclusive,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

pub const ISO_BOUND: i64 = 2;
pub const ISO_CAP: usize = 200_000;

fn invariants(m: &MackeyFunctor) -> Vec<String> {
    let th = m.theta();
    let one = FgAbMap::identity(m.bot());
    let g = |f: &FgAbMap| crate::fgab::subquotient(f);
    let mut out = vec![m.top().to_string(), m.bot().to_string()];
    for f in [m.rho().clone(), m.tau().clone(), th.sub(&one), th.add(&one)] {
        let (k, i, c) = g(&f);
        out.push(format!("{k}|{i}|{c}"));
    }
    out
}

/// Bounded search for an isomorphism `m -> n`.
pub fn find_isomorphism(m: &MackeyFunctor, n: &MackeyFunctor) -> IsoResult {
    find_isomorphism_bounded(m, n, ISO_BOUND, ISO_CAP)
}

pub fn find_isomorphism_bounded(m: &MackeyFunctor, n: &MackeyFunctor, bound: i64, cap: usize) -> IsoResult {
    if invariants(m) != invariants(n) {
        return IsoResult::NotIso;
    }
    let hom = MackeyHom::new(m, n);
    let finite = hom.group().rank() == 0;
    let Some(elts) = enumerate_elements(hom.group(), bound, cap) else {
        return IsoResult::Inconclusive;
    };
    let (to_m, _) = m.canonical_isos();
    let (_, from_n) = n.canonical_isos();
    for e in elts {
        let f = hom.element(&e);
        if f.is_surjective() {
            // surjective endomorphisms of finitely generated groups of the same type are bijective
            return IsoResult::Iso(from_n.after(&f).after(&to_m));
        }
    }
    if finite {
        IsoResult::NotIso
    } else {
        IsoResult::Inconclusive
    }
}

pub fn isomorphic(m: &MackeyFunctor, n: &MackeyFunctor) -> bool {
    find_isomorphism(m, n).is_iso()
}

pub fn direct_sum(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<MackeyFunctor, MackeyError> {
    let top = FgAb::direct_sum(&[m.top(), n.top()]);
    let bot = FgAb::direct_sum(&[m.bot(), n.bot()]);
    let rho = IntMatrix::block_diag(&[m.rho().matrix(), n.rho().matrix()]);
    let tau = IntMatrix::block_diag(&[m.tau().matrix(), n.tau().matrix()]);
    MackeyFunctor::new(top, bot, rho, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::named::construct_named;

    #[test]
    fn burnside_is_unit_for_box_and_hom() {
        let a = construct_named("A").unwrap();
        for name in ["Z", "F2", "[Z]", "<F2>", "L(Z-)"] {
            let m = construct_named(name).unwrap();
            assert!(isomorphic(&box_product(&a, &m), &m), "A box {name}");
            assert!(isomorphic(&internal_hom(&a, &m), &m), "Hom(A, {name})");
        }
    }

    #[test]
    fn enumeration_order_and_cap() {
        let g = FgAb::from_invariants(&[2], 1);
        let e = enumerate_elements(&g, 1, 100).unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e[0], vec![BigInt::from(0), BigInt::from(0)]);
        assert!(enumerate_elements(&g, 1, 5).is_none());
    }
}
