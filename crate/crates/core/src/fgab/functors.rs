use super::group::{FgAb, FgAbError, FgAbMap, SubQuotient};
use super::lattice::{kernel_basis, solve};
use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// Rows `0..keep` of a kernel basis: the solutions projected to the first variables.
pub(crate) fn projected_kernel(system: &IntMatrix, keep: usize) -> IntMatrix {
    let k = kernel_basis(system);
    let idx: Vec<usize> = (0..keep).collect();
    k.select_rows(&idx)
}

/// Hom(A, B) with elements realised as integer matrices on generators.
#[derive(Clone, Debug)]
pub struct HomGroup {
    dom: FgAb,
    cod: FgAb,
    sub: SubQuotient,
}

impl HomGroup {
    pub fn new(a: &FgAb, b: &FgAb) -> Self {
        let (n, k) = (a.gens(), b.gens());
        let (ra, rb) = (a.rel(), b.rel());
        let (ma, mb) = (ra.cols(), rb.cols());
        let nf = k * n;
        // F R_A - R_B Y = 0
        let mut sys = IntMatrix::zeros(k * ma, nf + mb * ma);
        for i in 0..k {
            for c in 0..ma {
                let row = i * ma + c;
                for j in 0..n {
                    sys.set(row, i * n + j, ra.get(j, c).clone());
                }
                for l in 0..mb {
                    sys.set(row, nf + l * ma + c, -rb.get(i, l));
                }
            }
        }
        let num = if ma == 0 { IntMatrix::identity(nf) } else { projected_kernel(&sys, nf) };
        let mut den_cols = Vec::new();
        for l in 0..mb {
            for j in 0..n {
                let mut v = vec![BigInt::zero(); nf];
                for i in 0..k {
                    v[i * n + j] = rb.get(i, l).clone();
                }
                den_cols.push(v);
            }
        }
        let den = IntMatrix::from_cols(nf, &den_cols);
        HomGroup { dom: a.clone(), cod: b.clone(), sub: SubQuotient::new(nf, &num, &den) }
    }

    pub fn group(&self) -> &FgAb {
        self.sub.group()
    }

    pub fn sub(&self) -> &SubQuotient {
        &self.sub
    }

    /// The homomorphism named by canonical coordinates.
    pub fn element(&self, coords: &[BigInt]) -> FgAbMap {
        let mut v = vec![BigInt::zero(); self.sub.ambient()];
        for (g, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in v.iter_mut().zip(self.sub.rep(g)) {
                *o += c * r;
            }
        }
        let m = IntMatrix::unflatten(self.cod.gens(), self.dom.gens(), &v);
        FgAbMap::new(self.dom.clone(), self.cod.clone(), m).expect("hom element")
    }

    pub fn generator(&self, g: usize) -> FgAbMap {
        let mut c = vec![BigInt::zero(); self.group().gens()];
        c[g] = BigInt::from(1);
        self.element(&c)
    }

    pub fn coords(&self, f: &FgAbMap) -> Result<Vec<BigInt>, FgAbError> {
        if f.dom() != &self.dom || f.cod() != &self.cod {
            return Err(FgAbError::Incompatible);
        }
        self.sub.coords(&f.matrix().flatten()).ok_or(FgAbError::NotInSubgroup)
    }

    fn induced(&self, target: &HomGroup, op: impl Fn(&FgAbMap) -> FgAbMap) -> FgAbMap {
        let cols: Vec<Vec<BigInt>> =
            (0..self.group().gens()).map(|g| target.coords(&op(&self.generator(g))).expect("induced hom")).collect();
        let m = IntMatrix::from_cols(target.group().gens(), &cols);
        FgAbMap::new(self.group().clone(), target.group().clone(), m).expect("induced hom map")
    }

    /// `Hom(A, B) -> Hom(A', B)` along `h: A' -> A`.
    pub fn precompose(&self, h: &FgAbMap, target: &HomGroup) -> FgAbMap {
        self.induced(target, |f| f.after(h))
    }

    /// `Hom(A, B) -> Hom(A, B')` along `g: B -> B'`.
    pub fn postcompose(&self, g: &FgAbMap, target: &HomGroup) -> FgAbMap {
        self.induced(target, |f| g.after(f))
    }
}

pub fn hom_group(a: &FgAb, b: &FgAb) -> FgAb {
    HomGroup::new(a, b).group().clone()
}

/// Ext¹(A, B) computed from the presentation ℤ^m -> ℤ^n -> A.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    dom: FgAb,
    cod: FgAb,
    sub: SubQuotient,
}

impl ExtGroup {
    pub fn new(a: &FgAb, b: &FgAb) -> Self {
        let ra = a.rel();
        let (n, ma) = (a.gens(), ra.cols());
        let k = b.gens();
        let rb = b.rel();
        let mb = rb.cols();
        let amb = k * ma;
        // cocycles: psi K = R_B W
        let kk = if ma == 0 { IntMatrix::zeros(0, 0) } else { kernel_basis(ra) };
        let t = kk.cols();
        let num = if t == 0 {
            IntMatrix::identity(amb)
        } else {
            let mut sys = IntMatrix::zeros(k * t, amb + mb * t);
            for i in 0..k {
                for s in 0..t {
                    let row = i * t + s;
                    for c in 0..ma {
                        sys.set(row, i * ma + c, kk.get(c, s).clone());
                    }
                    for l in 0..mb {
                        sys.set(row, amb + l * t + s, -rb.get(i, l));
                    }
                }
            }
            projected_kernel(&sys, amb)
        };
        let mut den_cols = Vec::new();
        for i in 0..k {
            for j in 0..n {
                let mut v = vec![BigInt::zero(); amb];
                for c in 0..ma {
                    v[i * ma + c] = ra.get(j, c).clone();
                }
                den_cols.push(v);
            }
        }
        for l in 0..mb {
            for c in 0..ma {
                let mut v = vec![BigInt::zero(); amb];
                for i in 0..k {
                    v[i * ma + c] = rb.get(i, l).clone();
                }
                den_cols.push(v);
            }
        }
        let den = IntMatrix::from_cols(amb, &den_cols);
        ExtGroup { dom: a.clone(), cod: b.clone(), sub: SubQuotient::new(amb, &num, &den) }
    }

    pub fn group(&self) -> &FgAb {
        self.sub.group()
    }

    /// `Ext(A, B) -> Ext(A', B)` along `h: A' -> A`.
    pub fn precompose(&self, h: &FgAbMap, target: &ExtGroup) -> FgAbMap {
        assert!(h.cod() == &self.dom && h.dom() == &target.dom && self.cod == target.cod);
        let ra = self.dom.rel();
        let rap = target.dom.rel();
        let (ma, map) = (ra.cols(), rap.cols());
        // lift h to relations: R_A G = H R_A'
        let hr = h.matrix().mul(rap);
        let gcols: Vec<Vec<BigInt>> =
            (0..map).map(|c| solve(ra, &hr.col(c)).expect("lift of map to relations")).collect();
        let g = IntMatrix::from_cols(ma, &gcols);
        let k = self.cod.gens();
        let reps = self.sub.reps();
        let mut cols = Vec::new();
        for col in 0..reps.cols() {
            let psi = IntMatrix::unflatten(k, ma, &reps.col(col));
            let img = psi.mul(&g).flatten();
            cols.push(target.sub.coords(&img).expect("induced ext class"));
        }
        let m = IntMatrix::from_cols(target.group().gens(), &cols);
        FgAbMap::new(self.group().clone(), target.group().clone(), m).expect("induced ext map")
    }
}

pub fn ext1_group(a: &FgAb, b: &FgAb) -> FgAb {
    ExtGroup::new(a, b).group().clone()
}

/// Presentation of A ⊗ B on generators `a_i ⊗ b_j` at index `i * |B| + j`.
pub fn tensor_presentation(a: &FgAb, b: &FgAb) -> FgAb {
    let (n, k) = (a.gens(), b.gens());
    let ra_part = a.rel().kron(&IntMatrix::identity(k));
    let rb_part = IntMatrix::identity(n).kron(b.rel());
    FgAb::from_presentation(n * k, IntMatrix::hstack(n * k, &[&ra_part, &rb_part]))
}

pub fn tensor_group(a: &FgAb, b: &FgAb) -> FgAb {
    tensor_presentation(a, b).canonical()
}

/// `f ⊗ g` between tensor presentations.
pub fn tensor_map(f: &FgAbMap, g: &FgAbMap) -> FgAbMap {
    let dom = tensor_presentation(f.dom(), g.dom());
    let cod = tensor_presentation(f.cod(), g.cod());
    FgAbMap::new(dom, cod, f.matrix().kron(g.matrix())).expect("tensor of maps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::big;

    fn g(t: &[i64], r: usize) -> FgAb {
        FgAb::from_invariants(t, r)
    }

    #[test]
    fn hom_ext_tensor_cyclic() {
        assert_eq!(hom_group(&g(&[4], 0), &g(&[6], 0)).torsion(), &[big(2)]);
        assert_eq!(hom_group(&g(&[], 1), &g(&[3], 1)), g(&[3], 1));
        assert!(hom_group(&g(&[2], 0), &g(&[], 1)).is_trivial());
        assert_eq!(ext1_group(&g(&[4], 0), &g(&[], 1)).torsion(), &[big(4)]);
        assert_eq!(ext1_group(&g(&[4], 0), &g(&[6], 0)).torsion(), &[big(2)]);
        assert!(ext1_group(&g(&[], 2), &g(&[5], 0)).is_trivial());
        assert_eq!(tensor_group(&g(&[4], 1), &g(&[6], 0)).torsion(), &[big(2), big(6)]);
    }

    #[test]
    fn hom_elements_round_trip() {
        let a = g(&[2], 1);
        let b = g(&[4], 1);
        let h = HomGroup::new(&a, &b);
        for gen in 0..h.group().gens() {
            let f = h.generator(gen);
            let c = h.coords(&f).unwrap();
            for (i, ci) in c.iter().enumerate() {
                assert_eq!(ci, &big(if i == gen { 1 } else { 0 }));
            }
        }
    }

    #[test]
    fn ext_functorial_in_first_variable() {
        // multiplication by 2 on Z/4 induces multiplication by 2 on Ext(Z/4, Z) = Z/4
        let z4 = g(&[4], 0);
        let z = g(&[], 1);
        let e = ExtGroup::new(&z4, &z);
        let two = FgAbMap::scalar(&z4, 2);
        let m = e.precompose(&two, &e);
        assert_eq!(m.matrix().get(0, 0) % big(4), big(2));
    }
}
