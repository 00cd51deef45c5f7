use super::functor::{MackeyError, MackeyFunctor};
use crate::fgab::{cokernel_sub, kernel_sub, FgAb, FgAbMap, IntMatrix};

/// Constant functor: restriction the identity, transfer multiplication by two.
pub fn constant(c: &FgAb) -> MackeyFunctor {
    let n = c.gens();
    MackeyFunctor::new(c.clone(), c.clone(), IntMatrix::identity(n), IntMatrix::scalar(n, 2)).unwrap()
}

/// Dual constant functor: restriction multiplication by two, transfer the identity.
pub fn constant_op(c: &FgAb) -> MackeyFunctor {
    let n = c.gens();
    MackeyFunctor::new(c.clone(), c.clone(), IntMatrix::scalar(n, 2), IntMatrix::identity(n)).unwrap()
}

/// `[C]`: zero top, underlying `C` with the sign action.
pub fn bracket(c: &FgAb) -> MackeyFunctor {
    let z = FgAb::zero();
    MackeyFunctor::new(z, c.clone(), IntMatrix::zeros(c.gens(), 0), IntMatrix::zeros(0, c.gens())).unwrap()
}

/// `[C]` with a trivial action requested; only possible when `2C = 0`.
pub fn bracket_trivial(c: &FgAb) -> Result<MackeyFunctor, MackeyError> {
    let two = FgAbMap::scalar(c, 2);
    if !two.is_zero() {
        return Err(MackeyError::Invalid("a zero top level forces the sign action unless 2C = 0".into()));
    }
    Ok(bracket(c))
}

/// `⟨C⟩`: concentrated at the top.
pub fn angle(c: &FgAb) -> MackeyFunctor {
    let z = FgAb::zero();
    MackeyFunctor::new(c.clone(), z, IntMatrix::zeros(0, c.gens()), IntMatrix::zeros(c.gens(), 0)).unwrap()
}

fn check_involution(n: &FgAb, t: &FgAbMap) -> Result<(), MackeyError> {
    if t.dom() != n || t.cod() != n || !t.after(t).equals(&FgAbMap::identity(n)) {
        return Err(MackeyError::Invalid("module action must be an involution of N".into()));
    }
    Ok(())
}

/// `R(N)`: invariants on top, restriction the inclusion, transfer the norm.
pub fn r_functor(n: &FgAb, t: &FgAbMap) -> Result<MackeyFunctor, MackeyError> {
    check_involution(n, t)?;
    let one = FgAbMap::identity(n);
    let inv = kernel_sub(&t.sub(&one));
    let top = inv.group().clone();
    let rho = FgAbMap::new(top.clone(), n.clone(), inv.reps())?;
    let norm = t.add(&one);
    let tau_m = inv.coords_matrix(norm.matrix()).ok_or_else(|| MackeyError::Invalid("norm not invariant".into()))?;
    let tau = FgAbMap::new(n.clone(), top, tau_m)?;
    MackeyFunctor::from_maps(rho, tau)
}

/// `L(N)`: coinvariants on top, restriction the norm, transfer the projection.
pub fn l_functor(n: &FgAb, t: &FgAbMap) -> Result<MackeyFunctor, MackeyError> {
    check_involution(n, t)?;
    let one = FgAbMap::identity(n);
    let coinv = cokernel_sub(&t.sub(&one));
    let top = coinv.group().clone();
    let tau_m = coinv.coords_matrix(&IntMatrix::identity(n.gens())).expect("projection to coinvariants");
    let tau = FgAbMap::new(n.clone(), top.clone(), tau_m)?;
    let norm = t.add(&one);
    let rho = FgAbMap::new(top, n.clone(), norm.matrix().mul(&coinv.reps()))?;
    MackeyFunctor::from_maps(rho, tau)
}

/// Burnside functor: top ℤ{[G/G], [G/e]}, bottom ℤ.
pub fn burnside() -> MackeyFunctor {
    MackeyFunctor::new(
        FgAb::free(2),
        FgAb::free(1),
        IntMatrix::from_rows(&[vec![1, 2]], 2),
        IntMatrix::from_rows(&[vec![0], vec![1]], 1),
    )
    .unwrap()
}

pub fn z() -> FgAb {
    FgAb::free(1)
}

pub fn f2() -> FgAb {
    FgAb::cyclic(2)
}

/// Sign representation on ℤ.
pub fn z_sign() -> (FgAb, FgAbMap) {
    let g = z();
    let t = FgAbMap::scalar(&g, -1);
    (g, t)
}

/// Regular module ℤ[C₂] with the swap.
pub fn z_regular() -> (FgAb, FgAbMap) {
    let g = FgAb::free(2);
    let t = FgAbMap::new(g.clone(), g.clone(), IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 2)).unwrap();
    (g, t)
}

fn parse_group(s: &str) -> Option<FgAb> {
    match s {
        "Z" | "ℤ" => Some(z()),
        "F2" | "F" | "𝔽" => Some(f2()),
        _ => {
            let rest = s.strip_prefix("Z/").or_else(|| s.strip_prefix("ℤ/"))?;
            let n: i64 = rest.parse().ok()?;
            if n < 2 {
                return None;
            }
            Some(FgAb::cyclic(n))
        }
    }
}

/// Named constructors. Accepted: `Z`, `F2`, `Z/n`, `Zop`, `F2op`, `Z/nop`, `[C]`, `<C>`, `A`,
/// `L` (=`L(F2)`), `L-` (=`[F2]`), `dot` (=`<F2>`), `R(Z-)`, `L(Z-)`, `R(Z[C2])`, `L(Z[C2])`.
pub fn construct_named(name: &str) -> Result<MackeyFunctor, MackeyError> {
    let unknown = || MackeyError::UnknownName(name.to_string());
    let s = name.trim();
    let m = match s {
        "A" => burnside(),
        "L" => {
            let g = f2();
            l_functor(&g, &FgAbMap::identity(&g))?
        }
        "L-" | "L_-" => bracket(&f2()),
        "dot" | "•" => angle(&f2()),
        "R(Z-)" => {
            let (g, t) = z_sign();
            r_functor(&g, &t)?
        }
        "L(Z-)" => {
            let (g, t) = z_sign();
            l_functor(&g, &t)?
        }
        "R(Z[C2])" => {
            let (g, t) = z_regular();
            r_functor(&g, &t)?
        }
        "L(Z[C2])" => {
            let (g, t) = z_regular();
            l_functor(&g, &t)?
        }
        _ => {
            if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                bracket(&parse_group(inner).ok_or_else(unknown)?)
            } else if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
                angle(&parse_group(inner).ok_or_else(unknown)?)
            } else if let Some(inner) = s.strip_suffix("op") {
                constant_op(&parse_group(inner).ok_or_else(unknown)?)
            } else {
                constant(&parse_group(s).ok_or_else(unknown)?)
            }
        }
    };
    Ok(m.with_name(s))
}

/// Every name accepted by [`construct_named`] with torsion exponent at most 8; used by tests and `verify`.
pub fn named_catalogue() -> Vec<&'static str> {
    vec![
        "Z", "F2", "Z/4", "Z/8", "Z/3", "Zop", "F2op", "Z/4op", "[Z]", "[F2]", "[Z/4]", "<Z>", "<F2>", "<Z/4>", "A",
        "L", "L-", "dot", "R(Z-)", "L(Z-)", "R(Z[C2])", "L(Z[C2])",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_builds() {
        for n in named_catalogue() {
            let m = construct_named(n).unwrap();
            assert_eq!(m.name(), Some(n));
        }
        assert!(construct_named("nonsense").is_err());
    }

    #[test]
    fn sign_module_functors() {
        let r = construct_named("R(Z-)").unwrap();
        assert!(r.top().is_trivial());
        let l = construct_named("L(Z-)").unwrap();
        assert_eq!(l.top().to_string(), "𝔽");
        assert_eq!(l.bot().to_string(), "ℤ");
    }

    #[test]
    fn bracket_trivial_needs_two_torsion() {
        assert!(bracket_trivial(&f2()).is_ok());
        assert!(bracket_trivial(&z()).is_err());
    }
}
