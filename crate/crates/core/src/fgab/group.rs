use super::lattice::{column_basis, kernel_basis, Solver};
use super::matrix::IntMatrix;
use super::snf::snf;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FgAbError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("map is not well defined on relations")]
    NotWellDefined,
    #[error("element does not lie in the subgroup")]
    NotInSubgroup,
    #[error("incompatible domain/codomain in composition")]
    Incompatible,
}

/// Finitely generated abelian group given by generators and relation columns.
/// The Smith data of the relations is cached so membership tests are cheap.
#[derive(Clone)]
pub struct FgAb {
    gens: usize,
    rel: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    // per generator after the change of basis: 1 means trivial, 0 means free
    diag: Vec<BigInt>,
    kept: Vec<usize>,
    torsion: Vec<BigInt>,
    rank: usize,
    diagonal: bool,
}

impl PartialEq for FgAb {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.rel == other.rel
    }
}
impl Eq for FgAb {}

impl fmt::Debug for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAb({})", self)
    }
}

impl fmt::Display for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", group_name(self.rank, &self.torsion))
    }
}

/// Human-readable name: 0, ℤ, ℤ^2, 𝔽 for order two, ℤ/n otherwise.
pub fn group_name(rank: usize, torsion: &[BigInt]) -> String {
    let mut parts: Vec<String> = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("ℤ".into()),
        r => parts.push(format!("ℤ^{r}")),
    }
    // group equal factors
    let mut i = 0;
    while i < torsion.len() {
        let mut j = i;
        while j < torsion.len() && torsion[j] == torsion[i] {
            j += 1;
        }
        let base = if torsion[i] == BigInt::from(2) { "𝔽".to_string() } else { format!("ℤ/{}", torsion[i]) };
        if j - i == 1 {
            parts.push(base);
        } else {
            parts.push(format!("({base})^{}", j - i));
        }
        i = j;
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("⊕")
    }
}

impl FgAb {
    pub fn from_presentation(gens: usize, rel: IntMatrix) -> Self {
        assert_eq!(rel.rows(), gens, "relation matrix rows must equal generator count");
        let s = snf(&rel);
        let mut diag = vec![BigInt::zero(); gens];
        for (i, d) in diag.iter_mut().enumerate().take(s.rank) {
            *d = s.d.get(i, i).clone();
        }
        let kept: Vec<usize> = (0..gens).filter(|&i| !diag[i].is_one()).collect();
        let torsion: Vec<BigInt> = (0..s.rank).filter(|&i| !diag[i].is_one()).map(|i| diag[i].clone()).collect();
        let rank = gens - s.rank;
        FgAb { gens, rel, u: s.u, u_inv: s.u_inv, diag, kept, torsion, rank, diagonal: false }
    }

    /// Canonical diagonal group: torsion generators first, then free ones.
    pub fn canonical_form(torsion: &[BigInt], rank: usize) -> Self {
        for t in torsion {
            assert!(*t >= BigInt::from(2), "invariant factors must be at least 2");
        }
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "invariant factors must form a divisibility chain");
        }
        let gens = torsion.len() + rank;
        let mut rel = IntMatrix::zeros(gens, torsion.len());
        for (i, t) in torsion.iter().enumerate() {
            rel.set(i, i, t.clone());
        }
        let mut diag = torsion.to_vec();
        diag.extend(std::iter::repeat(BigInt::zero()).take(rank));
        FgAb {
            gens,
            rel,
            u: IntMatrix::identity(gens),
            u_inv: IntMatrix::identity(gens),
            diag,
            kept: (0..gens).collect(),
            torsion: torsion.to_vec(),
            rank,
            diagonal: true,
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::canonical_form(&[], rank)
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(n: i64) -> Self {
        match n {
            0 => Self::free(1),
            1 | -1 => Self::zero(),
            _ => Self::canonical_form(&[BigInt::from(n.abs())], 0),
        }
    }

    /// Canonical group isomorphic to ℤ^rank ⊕ ⊕ ℤ/t, normalising arbitrary orders.
    pub fn from_invariants(torsion: &[i64], rank: usize) -> Self {
        let gens = torsion.len();
        let rel = IntMatrix::diagonal(&torsion.iter().map(|t| BigInt::from(*t)).collect::<Vec<_>>());
        let g = FgAb::from_presentation(gens, rel);
        Self::canonical_form(g.torsion(), rank + g.rank())
    }

    pub fn gens(&self) -> usize {
        self.gens
    }
    pub fn rel(&self) -> &IntMatrix {
        &self.rel
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }
    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
    pub fn canonical_gens(&self) -> usize {
        self.kept.len()
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn same_iso_type(&self, other: &FgAb) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.gens);
        if self.diagonal {
            return x.iter().zip(&self.diag).all(|(a, d)| if d.is_zero() { a.is_zero() } else { (a % d).is_zero() });
        }
        let y = self.u.apply(x);
        y.iter().zip(&self.diag).all(|(a, d)| if d.is_zero() { a.is_zero() } else { (a % d).is_zero() })
    }

    pub fn eq_elem(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Coordinates in the canonical form, reduced into `[0, d)` on torsion factors.
    pub fn to_canonical(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = if self.diagonal { x.to_vec() } else { self.u.apply(x) };
        self.kept
            .iter()
            .map(|&i| if self.diag[i].is_zero() { y[i].clone() } else { y[i].mod_floor(&self.diag[i]) })
            .collect()
    }

    /// Representative of canonical generator `g` in the presentation's coordinates.
    pub fn from_canonical_col(&self, g: usize) -> Vec<BigInt> {
        self.u_inv.col(self.kept[g])
    }

    pub fn from_canonical(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.gens];
        for (g, cg) in c.iter().enumerate() {
            if cg.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.from_canonical_col(g)) {
                *o += cg * v;
            }
        }
        out
    }

    pub fn canonical(&self) -> FgAb {
        FgAb::canonical_form(&self.torsion, self.rank)
    }

    /// Isomorphisms to and from the canonical form.
    pub fn canonical_isos(&self) -> (FgAbMap, FgAbMap) {
        let c = self.canonical();
        let to_m = if self.diagonal {
            IntMatrix::identity(self.gens).select_rows(&self.kept)
        } else {
            self.u.select_rows(&self.kept)
        };
        let from_m = self.u_inv.select_cols(&self.kept);
        let to = FgAbMap::new(self.clone(), c.clone(), to_m).expect("canonical projection");
        let from = FgAbMap::new(c, self.clone(), from_m).expect("canonical section");
        (to, from)
    }

    /// Reduced canonical representative, as a vector in this presentation.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        if self.diagonal {
            return self.to_canonical(x);
        }
        self.from_canonical(&self.to_canonical(x))
    }

    pub fn direct_sum(parts: &[&FgAb]) -> FgAb {
        let gens = parts.iter().map(|p| p.gens).sum();
        let rels: Vec<&IntMatrix> = parts.iter().map(|p| &p.rel).collect();
        FgAb::from_presentation(gens, IntMatrix::block_diag(&rels))
    }

    /// All elements in canonical coordinates; finite groups only.
    pub fn enumerate_canonical(&self) -> Vec<Vec<BigInt>> {
        assert_eq!(self.rank, 0, "enumeration needs a finite group");
        let mut out = vec![vec![]];
        for d in &self.torsion {
            let mut next = Vec::new();
            for v in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut w = v.clone();
                    w.push(k.clone());
                    next.push(w);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tors: Vec<serde_json::Value> = self.torsion.iter().map(big_json).collect();
        serde_json::json!({"rank": self.rank, "torsion": tors})
    }

    pub fn from_json(v: &serde_json::Value) -> Option<FgAb> {
        let rank = v.get("rank")?.as_u64()? as usize;
        let tors: Option<Vec<i64>> = v.get("torsion")?.as_array()?.iter().map(|x| x.as_i64()).collect();
        Some(FgAb::from_invariants(&tors?, rank))
    }
}

pub fn big_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

pub fn matrix_json(m: &IntMatrix) -> serde_json::Value {
    let rows: Vec<serde_json::Value> =
        (0..m.rows()).map(|i| serde_json::Value::Array(m.row(i).iter().map(big_json).collect())).collect();
    serde_json::Value::Array(rows)
}

/// Homomorphism given by an integer matrix on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbMap {
    dom: FgAb,
    cod: FgAb,
    m: IntMatrix,
}

impl FgAbMap {
    pub fn new(dom: FgAb, cod: FgAb, m: IntMatrix) -> Result<Self, FgAbError> {
        if m.rows() != cod.gens || m.cols() != dom.gens {
            return Err(FgAbError::Dimension(format!(
                "matrix {}x{} for map {} -> {} generators",
                m.rows(),
                m.cols(),
                dom.gens,
                cod.gens
            )));
        }
        for j in 0..dom.rel.cols() {
            let img = m.apply(&dom.rel.col(j));
            if !cod.is_zero(&img) {
                return Err(FgAbError::NotWellDefined);
            }
        }
        let m = if cod.diagonal {
            let cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| cod.to_canonical(&m.col(j))).collect();
            IntMatrix::from_cols(cod.gens, &cols)
        } else {
            m
        };
        Ok(FgAbMap { dom, cod, m })
    }

    pub fn identity(a: &FgAb) -> Self {
        FgAbMap::new(a.clone(), a.clone(), IntMatrix::identity(a.gens)).unwrap()
    }

    pub fn zero(a: &FgAb, b: &FgAb) -> Self {
        FgAbMap { dom: a.clone(), cod: b.clone(), m: IntMatrix::zeros(b.gens, a.gens) }
    }

    pub fn scalar(a: &FgAb, c: i64) -> Self {
        FgAbMap::new(a.clone(), a.clone(), IntMatrix::scalar(a.gens, c)).unwrap()
    }

    pub fn dom(&self) -> &FgAb {
        &self.dom
    }
    pub fn cod(&self) -> &FgAb {
        &self.cod
    }
    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.m.apply(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FgAbMap) -> Result<FgAbMap, FgAbError> {
        if first.cod != self.dom {
            return Err(FgAbError::Incompatible);
        }
        FgAbMap::new(first.dom.clone(), self.cod.clone(), self.m.mul(&first.m))
    }

    pub fn after(&self, first: &FgAbMap) -> FgAbMap {
        self.compose(first).expect("composable maps")
    }

    pub fn add(&self, other: &FgAbMap) -> FgAbMap {
        assert!(self.dom == other.dom && self.cod == other.cod);
        FgAbMap::new(self.dom.clone(), self.cod.clone(), self.m.add(&other.m)).unwrap()
    }

    pub fn sub(&self, other: &FgAbMap) -> FgAbMap {
        assert!(self.dom == other.dom && self.cod == other.cod);
        FgAbMap::new(self.dom.clone(), self.cod.clone(), self.m.sub(&other.m)).unwrap()
    }

    pub fn neg(&self) -> FgAbMap {
        FgAbMap::new(self.dom.clone(), self.cod.clone(), self.m.neg()).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        (0..self.m.cols()).all(|j| self.cod.is_zero(&self.m.col(j)))
    }

    pub fn equals(&self, other: &FgAbMap) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.sub(other).is_zero()
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Same map between the canonical forms of domain and codomain.
    pub fn canonicalize(&self) -> FgAbMap {
        let (_, from) = self.dom.canonical_isos();
        let (to, _) = self.cod.canonical_isos();
        to.after(&self.after(&from))
    }

    /// Replace domain and codomain by equal presentations with no checks beyond dimensions.
    pub fn with_groups(&self, dom: FgAb, cod: FgAb) -> FgAbMap {
        FgAbMap::new(dom, cod, self.m.clone()).expect("regrouped map")
    }
}

/// Subquotient `num / den` of ℤ^ambient, with `den ⊆ num` given by generator columns.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    ambient: usize,
    basis: IntMatrix,
    solver: Solver,
    pres: FgAb,
    group: FgAb,
}

impl SubQuotient {
    pub fn new(ambient: usize, num: &IntMatrix, den: &IntMatrix) -> Self {
        assert_eq!(num.rows(), ambient);
        assert_eq!(den.rows(), ambient);
        let basis = column_basis(num);
        let solver = Solver::new(&basis);
        let r = basis.cols();
        let cols: Vec<Vec<BigInt>> = (0..den.cols())
            .map(|j| solver.solve(&den.col(j)).expect("denominator must lie in numerator"))
            .collect();
        let rel = IntMatrix::from_cols(r, &cols);
        let pres = FgAb::from_presentation(r, rel);
        let group = pres.canonical();
        SubQuotient { ambient, basis, solver, pres, group }
    }

    pub fn group(&self) -> &FgAb {
        &self.group
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Ambient representative of canonical generator `g`.
    pub fn rep(&self, g: usize) -> Vec<BigInt> {
        self.basis.apply(&self.pres.from_canonical_col(g))
    }

    pub fn reps(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.group.gens()).map(|g| self.rep(g)).collect();
        IntMatrix::from_cols(self.ambient, &cols)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solver.solve(x).is_some()
    }

    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solver.solve(x)?;
        Some(self.pres.to_canonical(&y))
    }

    /// Matrix sending each column of `xs` to canonical coordinates.
    pub fn coords_matrix(&self, xs: &IntMatrix) -> Option<IntMatrix> {
        let mut cols = Vec::with_capacity(xs.cols());
        for j in 0..xs.cols() {
            cols.push(self.coords(&xs.col(j))?);
        }
        Some(IntMatrix::from_cols(self.group.gens(), &cols))
    }

    /// Map `other -> self` induced by an ambient matrix.
    pub fn induced_from(&self, other: &SubQuotient, ambient_map: &IntMatrix) -> Result<FgAbMap, FgAbError> {
        let imgs = ambient_map.mul(&other.reps());
        let m = self.coords_matrix(&imgs).ok_or(FgAbError::NotInSubgroup)?;
        FgAbMap::new(other.group.clone(), self.group.clone(), m)
    }
}

/// `[F | R_B]`: columns spanning image plus relations in the codomain.
fn image_with_rel(f: &FgAbMap) -> IntMatrix {
    IntMatrix::hstack(f.cod.gens, &[&f.m, &f.cod.rel])
}

/// Lattice of preimages: x with f(x) = 0 in the codomain.
fn kernel_lattice(f: &FgAbMap) -> IntMatrix {
    let n = f.dom.gens;
    let k = kernel_basis(&image_with_rel(f));
    let idx: Vec<usize> = (0..n).collect();
    k.select_rows(&idx)
}

/// Kernel of `f` as a subquotient of the domain's ambient lattice.
pub fn kernel_sub(f: &FgAbMap) -> SubQuotient {
    SubQuotient::new(f.dom.gens, &kernel_lattice(f), &f.dom.rel)
}

/// Image of `f` as a subquotient of the codomain's ambient lattice.
pub fn image_sub(f: &FgAbMap) -> SubQuotient {
    SubQuotient::new(f.cod.gens, &image_with_rel(f), &f.cod.rel)
}

/// Cokernel of `f` as a quotient of the codomain's ambient lattice.
pub fn cokernel_sub(f: &FgAbMap) -> SubQuotient {
    let k = f.cod.gens;
    SubQuotient::new(k, &IntMatrix::identity(k), &image_with_rel(f))
}

/// Whole group as a subquotient of its own ambient lattice.
pub fn whole_sub(a: &FgAb) -> SubQuotient {
    SubQuotient::new(a.gens, &IntMatrix::identity(a.gens), &a.rel)
}

/// Kernel with its inclusion into the domain.
pub fn kernel(f: &FgAbMap) -> (FgAb, FgAbMap) {
    let n = f.dom.gens;
    let sq = SubQuotient::new(n, &kernel_lattice(f), &f.dom.rel);
    let incl = FgAbMap::new(sq.group.clone(), f.dom.clone(), sq.reps()).expect("kernel inclusion");
    (sq.group.clone(), incl)
}

/// Image with inclusion into the codomain and corestriction from the domain.
pub fn image(f: &FgAbMap) -> (FgAb, FgAbMap, FgAbMap) {
    let k = f.cod.gens;
    let sq = SubQuotient::new(k, &image_with_rel(f), &f.cod.rel);
    let incl = FgAbMap::new(sq.group.clone(), f.cod.clone(), sq.reps()).expect("image inclusion");
    let proj_m = sq.coords_matrix(&f.m).expect("image coordinates");
    let proj = FgAbMap::new(f.dom.clone(), sq.group.clone(), proj_m).expect("image projection");
    (sq.group.clone(), incl, proj)
}

/// Cokernel with the quotient map.
pub fn cokernel(f: &FgAbMap) -> (FgAb, FgAbMap) {
    let k = f.cod.gens;
    let sq = SubQuotient::new(k, &IntMatrix::identity(k), &image_with_rel(f));
    let proj_m = sq.coords_matrix(&IntMatrix::identity(k)).expect("cokernel coordinates");
    let proj = FgAbMap::new(f.cod.clone(), sq.group.clone(), proj_m).expect("cokernel projection");
    (sq.group.clone(), proj)
}

/// Kernel, image and cokernel together.
pub fn subquotient(f: &FgAbMap) -> (FgAb, FgAb, FgAb) {
    (kernel(f).0, image(f).0, cokernel(f).0)
}

/// Homology of `a -f-> b -g-> c` at `b`, as a subquotient of `b`'s ambient lattice.
pub fn homology_sub(f: &FgAbMap, g: &FgAbMap) -> SubQuotient {
    assert!(f.cod == g.dom, "homology needs composable maps");
    SubQuotient::new(g.dom.gens, &kernel_lattice(g), &image_with_rel(f))
}

pub fn homology(f: &FgAbMap, g: &FgAbMap) -> FgAb {
    homology_sub(f, g).group.clone()
}

/// Exactness of `a -f-> b -g-> c` at `b`.
pub fn is_exact(f: &FgAbMap, g: &FgAbMap) -> bool {
    if f.cod != g.dom {
        return false;
    }
    if !g.after(f).is_zero() {
        return false;
    }
    let img = image_with_rel(f);
    let s = Solver::new(&img);
    let kl = kernel_lattice(g);
    (0..kl.cols()).all(|j| s.solve(&kl.col(j)).is_some())
}

/// Preimage of `y` under `f`, if it exists.
pub fn preimage(f: &FgAbMap, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.dom.gens;
    let z = Solver::new(&image_with_rel(f)).solve(y)?;
    Some(z[..n].to_vec())
}

/// `h` with `h ∘ f = g` where `f` is surjective; `None` if no such map exists.
pub fn factor_through_surjection(g: &FgAbMap, f: &FgAbMap) -> Option<FgAbMap> {
    assert!(g.dom == f.dom);
    let solver = Solver::new(&image_with_rel(f));
    let n = f.dom.gens;
    let mut cols = Vec::with_capacity(f.cod.gens);
    for j in 0..f.cod.gens {
        let mut e = vec![BigInt::zero(); f.cod.gens];
        e[j] = BigInt::one();
        let x = solver.solve(&e)?;
        cols.push(g.apply(&x[..n]));
    }
    let h = FgAbMap::new(f.cod.clone(), g.cod.clone(), IntMatrix::from_cols(g.cod.gens, &cols)).ok()?;
    if h.after(f).equals(g) {
        Some(h)
    } else {
        None
    }
}

/// `h` with `f ∘ h = g` where `f` is injective; `None` if `g` does not land in the image.
pub fn factor_through_injection(g: &FgAbMap, f: &FgAbMap) -> Option<FgAbMap> {
    assert!(g.cod == f.cod);
    let solver = Solver::new(&image_with_rel(f));
    let n = f.dom.gens;
    let mut cols = Vec::with_capacity(g.dom.gens);
    for j in 0..g.dom.gens {
        let x = solver.solve(&g.m.col(j))?;
        cols.push(x[..n].to_vec());
    }
    let h = FgAbMap::new(g.dom.clone(), f.dom.clone(), IntMatrix::from_cols(f.dom.gens, &cols)).ok()?;
    if f.after(&h).equals(g) {
        Some(h)
    } else {
        None
    }
}

/// Sign-normalised absolute value helper for display.
pub fn abs_big(x: &BigInt) -> BigInt {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::big;

    #[test]
    fn presentation_canonicalises() {
        let g = FgAb::from_presentation(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(g.torsion(), &[big(6)]);
        assert_eq!(g.rank(), 0);
        let h = FgAb::from_presentation(3, IntMatrix::from_rows(&[vec![2], vec![4], vec![0]], 1));
        assert_eq!(h.torsion(), &[big(2)]);
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn kernel_image_cokernel_of_doubling() {
        let z4 = FgAb::cyclic(4);
        let two = FgAbMap::scalar(&z4, 2);
        let (k, i, c) = subquotient(&two);
        assert_eq!(k.torsion(), &[big(2)]);
        assert_eq!(i.torsion(), &[big(2)]);
        assert_eq!(c.torsion(), &[big(2)]);
        assert!(is_exact(&two, &two));
    }

    #[test]
    fn not_well_defined_rejected() {
        let z2 = FgAb::cyclic(2);
        let z = FgAb::free(1);
        assert_eq!(FgAbMap::new(z2, z, IntMatrix::identity(1)).unwrap_err(), FgAbError::NotWellDefined);
    }

    #[test]
    fn factorisations() {
        let z = FgAb::free(1);
        let z2 = FgAb::cyclic(2);
        let proj = FgAbMap::new(z.clone(), z2.clone(), IntMatrix::identity(1)).unwrap();
        let g = FgAbMap::new(z.clone(), z2.clone(), IntMatrix::from_rows(&[vec![3]], 1)).unwrap();
        let h = factor_through_surjection(&g, &proj).unwrap();
        assert!(h.matrix().get(0, 0) == &big(1));
        let two = FgAbMap::scalar(&z, 2);
        let six = FgAbMap::scalar(&z, 6);
        let q = factor_through_injection(&six, &two).unwrap();
        assert_eq!(q.matrix().get(0, 0), &big(3));
        assert!(factor_through_injection(&FgAbMap::identity(&z), &two).is_none());
    }

    #[test]
    fn names() {
        assert_eq!(FgAb::from_invariants(&[2, 4], 1).to_string(), "ℤ⊕𝔽⊕ℤ/4");
        assert_eq!(FgAb::zero().to_string(), "0");
    }
}
