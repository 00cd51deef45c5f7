use crate::fgab::{FgAb, IntMatrix};
use crate::mackey::{MackeyComplex, MackeyFunctor, MackeyMap};
use num_bigint::BigInt;

/// Chain group type: a copy of the coefficients, or a free cell `C₂₊ ∧ M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Fixed,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Top,
    Bot,
}

/// Elementary chain maps between the two chain group types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basic {
    /// free -> fixed: sum of the two sheets, transfer on top
    Fold,
    /// fixed -> free: diagonal, restriction on top
    Diag,
    /// free -> free: multiplication by `a + b·t`
    Mult(i64, i64),
    Id,
    Zero,
}

/// Coefficient Mackey functor in canonical form, with cached level groups.
#[derive(Clone, Debug)]
pub struct Coeff {
    m: MackeyFunctor,
    theta: IntMatrix,
    fixed_top: FgAb,
    fixed_bot: FgAb,
    free_top: FgAb,
    free_bot: FgAb,
}

impl Coeff {
    pub fn new(m: &MackeyFunctor) -> Self {
        let m = m.canonical();
        let theta = m.theta().matrix().clone();
        let b = m.bot().clone();
        let free_bot = FgAb::direct_sum(&[&b, &b]);
        Coeff { fixed_top: m.top().clone(), fixed_bot: b.clone(), free_top: b, free_bot, theta, m }
    }

    pub fn functor(&self) -> &MackeyFunctor {
        &self.m
    }

    pub fn group(&self, k: Kind, l: Level) -> &FgAb {
        match (k, l) {
            (Kind::Fixed, Level::Top) => &self.fixed_top,
            (Kind::Fixed, Level::Bot) => &self.fixed_bot,
            (Kind::Free, Level::Top) => &self.free_top,
            (Kind::Free, Level::Bot) => &self.free_bot,
        }
    }

    fn e(&self) -> usize {
        self.m.bot().gens()
    }

    pub fn rho(&self, k: Kind) -> IntMatrix {
        match k {
            Kind::Fixed => self.m.rho().matrix().clone(),
            Kind::Free => IntMatrix::vstack(self.e(), &[&IntMatrix::identity(self.e()), &self.theta]),
        }
    }

    pub fn tau(&self, k: Kind) -> IntMatrix {
        match k {
            Kind::Fixed => self.m.tau().matrix().clone(),
            Kind::Free => IntMatrix::hstack(self.e(), &[&IntMatrix::identity(self.e()), &self.theta]),
        }
    }

    /// Ambient matrix of an elementary map at one level.
    pub fn basic(&self, b: Basic, from: Kind, to: Kind, l: Level) -> IntMatrix {
        let e = self.e();
        let id = IntMatrix::identity(e);
        let (nf, nt) = (self.group(from, l).gens(), self.group(to, l).gens());
        match b {
            Basic::Zero => IntMatrix::zeros(nt, nf),
            Basic::Id => {
                assert_eq!(from, to, "identity needs equal chain group types");
                IntMatrix::identity(nf)
            }
            Basic::Fold => {
                assert!(from == Kind::Free && to == Kind::Fixed);
                match l {
                    Level::Top => self.m.tau().matrix().clone(),
                    Level::Bot => IntMatrix::hstack(e, &[&id, &id]),
                }
            }
            Basic::Diag => {
                assert!(from == Kind::Fixed && to == Kind::Free);
                match l {
                    Level::Top => self.m.rho().matrix().clone(),
                    Level::Bot => IntMatrix::vstack(e, &[&id, &id]),
                }
            }
            Basic::Mult(a, c) => {
                assert!(from == Kind::Free && to == Kind::Free);
                let (a, c) = (BigInt::from(a), BigInt::from(c));
                match l {
                    Level::Top => id.scale(&a).add(&self.theta.scale(&c)),
                    Level::Bot => {
                        let (ai, ci) = (id.scale(&a), id.scale(&c));
                        let r1 = IntMatrix::hstack(e, &[&ai, &ci]);
                        let r2 = IntMatrix::hstack(e, &[&ci, &ai]);
                        IntMatrix::vstack(2 * e, &[&r1, &r2])
                    }
                }
            }
        }
    }

    /// Chain group as a Mackey functor.
    pub fn chain_group(&self, k: Kind) -> MackeyFunctor {
        MackeyFunctor::new(self.group(k, Level::Top).clone(), self.group(k, Level::Bot).clone(), self.rho(k), self.tau(k))
            .expect("chain group")
    }

    pub fn chain_map(&self, b: Basic, from: Kind, to: Kind) -> MackeyMap {
        let (s, d) = (self.chain_group(from), self.chain_group(to));
        MackeyMap::from_matrices(&s, &d, self.basic(b, from, to, Level::Top), self.basic(b, from, to, Level::Bot))
            .expect("elementary chain map")
    }
}

/// Multiplier `1 - (-1)^j t` for the differential out of cell dimension `j >= 2`.
pub fn cell_boundary(j: i64) -> Basic {
    if j % 2 == 0 {
        Basic::Mult(1, -1)
    } else {
        Basic::Mult(1, 1)
    }
}

/// Cellular chains of S^{kα} (for `q = -k <= 0`) or cochains placed in negative degrees
/// (for `q = k > 0`), both with coefficients in a Mackey functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sphere {
    pub q: i64,
}

impl Sphere {
    pub fn lo(&self) -> i64 {
        if self.q <= 0 {
            0
        } else {
            -self.q
        }
    }

    pub fn hi(&self) -> i64 {
        if self.q <= 0 {
            -self.q
        } else {
            0
        }
    }

    pub fn kind(&self, d: i64) -> Option<Kind> {
        if d < self.lo() || d > self.hi() {
            None
        } else if d == 0 {
            Some(Kind::Fixed)
        } else {
            Some(Kind::Free)
        }
    }

    /// Differential from degree `d` to `d - 1`, when both exist.
    pub fn diff(&self, d: i64) -> Option<Basic> {
        self.kind(d)?;
        self.kind(d - 1)?;
        if self.q <= 0 {
            Some(if d == 1 { Basic::Fold } else { cell_boundary(d) })
        } else {
            let j = 1 - d;
            Some(if j == 1 { Basic::Diag } else { cell_boundary(j) })
        }
    }
}

/// The Mackey chain complex of the sphere with index `q`; position `i` holds degree `lo + i`.
pub fn sphere_complex(c: &Coeff, q: i64) -> MackeyComplex {
    let s = Sphere { q };
    let terms: Vec<MackeyFunctor> = (s.lo()..=s.hi()).map(|d| c.chain_group(s.kind(d).unwrap())).collect();
    let diffs: Vec<MackeyMap> = (s.lo() + 1..=s.hi())
        .map(|d| c.chain_map(s.diff(d).unwrap(), s.kind(d).unwrap(), s.kind(d - 1).unwrap()))
        .collect();
    MackeyComplex::new(terms, diffs).expect("sphere complex squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::construct_named;

    #[test]
    fn complexes_square_to_zero() {
        for name in ["Z", "F2", "A", "[Z]", "L(Z-)", "Zop"] {
            let c = Coeff::new(&construct_named(name).unwrap());
            for q in -7..=7 {
                let cx = sphere_complex(&c, q);
                assert_eq!(cx.terms.len() as i64, q.abs() + 1);
            }
        }
    }

    #[test]
    fn fold_diag_compose_to_norm() {
        let c = Coeff::new(&construct_named("Z").unwrap());
        for l in [Level::Top, Level::Bot] {
            let dg = c.basic(Basic::Diag, Kind::Fixed, Kind::Free, l).mul(&c.basic(Basic::Fold, Kind::Free, Kind::Fixed, l));
            assert_eq!(dg, c.basic(Basic::Mult(1, 1), Kind::Free, Kind::Free, l));
        }
    }
}
