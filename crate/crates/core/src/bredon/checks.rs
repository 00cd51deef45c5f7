use super::chart::{Degree, Engine, Window};
use super::complex::{Kind, Level, Sphere};
use crate::fgab::lattice::Solver;
use crate::fgab::{is_exact, FgAbMap, IntMatrix};
use crate::mackey::{MackeyFunctor, MackeyMap};

/// Outcome of the two Euler sequences at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub degree: Degree,
    /// image of a into this degree equals the kernel of restriction
    pub image_a_is_ker_rho: bool,
    /// kernel of a out of this degree equals the image of transfer
    pub ker_a_is_image_tau: bool,
    pub a_two_torsion: bool,
}

impl EulerCheck {
    pub fn holds(&self) -> bool {
        self.image_a_is_ker_rho && self.ker_a_is_image_tau && self.a_two_torsion
    }
}

/// Euler sequences at every degree of `w` (neighbours may lie outside `w`; they are computed).
pub fn euler_sequences_check(engine: &Engine, w: Window) -> Vec<EulerCheck> {
    w.degrees()
        .into_iter()
        .map(|(p, q)| {
            let cell = engine.value((p, q));
            let a_in = engine.a_map((p, q + 1));
            let a_out = engine.a_map((p, q));
            let two = FgAbMap::scalar(cell.top(), 2).after(a_in.top());
            EulerCheck {
                degree: (p, q),
                image_a_is_ker_rho: is_exact(a_in.top(), cell.rho()),
                ker_a_is_image_tau: is_exact(cell.tau(), a_out.top()),
                a_two_torsion: two.is_zero(),
            }
        })
        .collect()
}

fn coeff_matrix(phi: &MackeyMap, k: Kind, l: Level) -> IntMatrix {
    let b = phi.bot().matrix();
    match (k, l) {
        (Kind::Fixed, Level::Top) => phi.top().matrix().clone(),
        (Kind::Fixed, Level::Bot) | (Kind::Free, Level::Top) => b.clone(),
        (Kind::Free, Level::Bot) => IntMatrix::block_diag(&[b, b]),
    }
}

/// Map of charts induced by a map of (canonical) coefficients.
pub fn coeff_induced(src: &Engine, dst: &Engine, phi: &MackeyMap, d: Degree) -> MackeyMap {
    let (s, t) = (src.cell(d), dst.cell(d));
    let Some(k) = s.kind else {
        return MackeyMap::zero(&s.mackey, &t.mackey);
    };
    let top = t.sub(Level::Top).induced_from(s.sub(Level::Top), &coeff_matrix(phi, k, Level::Top)).expect("coefficient map on top");
    let bot = t.sub(Level::Bot).induced_from(s.sub(Level::Bot), &coeff_matrix(phi, k, Level::Bot)).expect("coefficient map on bottom");
    MackeyMap::new(&s.mackey, &t.mackey, top, bot).expect("natural coefficient map")
}

/// Connecting map `H_{(p,q)}(M'') -> H_{(p-1,q)}(M')` for `0 -> M' -i-> M -π-> M'' -> 0`.
pub fn connecting_map(sub: &Engine, mid: &Engine, quo: &Engine, i: &MackeyMap, pi: &MackeyMap, d: Degree) -> MackeyMap {
    let (p, q) = d;
    let src = quo.cell(d);
    let dst = sub.cell((p - 1, q));
    let s = Sphere { q };
    let (Some(k), Some(k1), Some(b)) = (s.kind(p), s.kind(p - 1), s.diff(p)) else {
        return MackeyMap::zero(&src.mackey, &dst.mackey);
    };
    let level = |l: Level| {
        let pm = coeff_matrix(pi, k, l);
        let rel_q = quo.coeff().group(k, l).rel().clone();
        let lift = Solver::new(&IntMatrix::hstack(pm.rows(), &[&pm, &rel_q]));
        let im = coeff_matrix(i, k1, l);
        let rel_m = mid.coeff().group(k1, l).rel().clone();
        let divide = Solver::new(&IntMatrix::hstack(im.rows(), &[&im, &rel_m]));
        let dm = mid.coeff().basic(b, k, k1, l);
        let reps = src.sub(l).reps();
        let mut cols = Vec::new();
        for j in 0..reps.cols() {
            let x = lift.solve(&reps.col(j)).expect("lift along a surjection");
            let y = dm.apply(&x[..pm.cols()]);
            let w = divide.solve(&y).expect("boundary of a lift lies in the subobject");
            cols.push(dst.sub(l).coords(&w[..im.cols()]).expect("connecting map lands in cycles"));
        }
        let m = IntMatrix::from_cols(dst.sub(l).group().gens(), &cols);
        FgAbMap::new(src.sub(l).group().clone(), dst.sub(l).group().clone(), m).expect("connecting map")
    };
    MackeyMap::new(&src.mackey, &dst.mackey, level(Level::Top), level(Level::Bot)).expect("connecting map is natural")
}

/// Exactness of the long exact sequence of a coefficient extension at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesCheck {
    pub degree: Degree,
    /// at H(M), at H(M''), and at H(M') one degree down
    pub exact: [bool; 3],
}

impl LesCheck {
    pub fn holds(&self) -> bool {
        self.exact.iter().all(|b| *b)
    }
}

fn exact_mackey(f: &MackeyMap, g: &MackeyMap) -> bool {
    is_exact(f.top(), g.top()) && is_exact(f.bot(), g.bot())
}

/// Long exact sequence for `0 -> M' -> M -> M'' -> 0`, checked at each degree of `w`.
pub fn coefficient_les(sub: &Engine, mid: &Engine, quo: &Engine, i: &MackeyMap, pi: &MackeyMap, w: Window) -> Vec<LesCheck> {
    w.degrees()
        .into_iter()
        .map(|d| {
            let down = (d.0 - 1, d.1);
            let i_d = coeff_induced(sub, mid, i, d);
            let pi_d = coeff_induced(mid, quo, pi, d);
            let del = connecting_map(sub, mid, quo, i, pi, d);
            let i_down = coeff_induced(sub, mid, i, down);
            LesCheck {
                degree: d,
                exact: [exact_mackey(&i_d, &pi_d), exact_mackey(&pi_d, &del), exact_mackey(&del, &i_down)],
            }
        })
        .collect()
}

/// Reduction `ℤ̲ -> 𝔽̲` and doubling on `ℤ̲`, as canonical Mackey maps.
pub fn bockstein_maps(z: &MackeyFunctor, f: &MackeyFunctor) -> (MackeyMap, MackeyMap) {
    let one = IntMatrix::identity(1);
    let red = MackeyMap::from_matrices(z, f, one.clone(), one).expect("reduction mod two");
    let two = MackeyMap::from_matrices(z, z, IntMatrix::scalar(1, 2), IntMatrix::scalar(1, 2)).expect("doubling");
    (two, red)
}

/// Bockstein sequence for `ℤ̲ -2-> ℤ̲ -> 𝔽̲` over the window.
pub fn bockstein_les(hz: &Engine, hf: &Engine, w: Window) -> Vec<LesCheck> {
    let (two, red) = bockstein_maps(hz.coeff().functor(), hf.coeff().functor());
    coefficient_les(hz, hz, hf, &two, &red, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::construct_named;

    #[test]
    fn euler_small_window() {
        let e = Engine::new(&construct_named("Z").unwrap());
        assert!(euler_sequences_check(&e, Window::square(3)).iter().all(|c| c.holds()));
    }

    #[test]
    fn bockstein_small_window() {
        let z = Engine::new(&construct_named("Z").unwrap());
        let f = Engine::new(&construct_named("F2").unwrap());
        assert!(bockstein_les(&z, &f, Window::square(3)).iter().all(|c| c.holds()));
    }
}
