use super::functor::{MackeyFunctor, MackeyMap};
use super::named::{angle, bracket, burnside, l_functor, r_functor};
use super::ops::find_isomorphism;
use crate::fgab::{group::group_name, FgAb, FgAbMap};
use num_bigint::BigInt;

/// Result of naming a Mackey functor: a primary symbol plus every other matching symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub name: String,
    pub aliases: Vec<String>,
}

impl Classification {
    pub fn is_named(&self) -> bool {
        self.name != UNCLASSIFIED
    }

    /// True if `s` is the primary name or an alias.
    pub fn matches(&self, s: &str) -> bool {
        self.name == s || self.aliases.iter().any(|a| a == s)
    }

    /// Preferred chart symbol.
    pub fn symbol(&self) -> &str {
        for pref in CHART_SYMBOLS {
            if self.matches(pref) {
                return pref;
            }
        }
        &self.name
    }

    pub fn all(&self) -> Vec<String> {
        let mut v = vec![self.name.clone()];
        v.extend(self.aliases.iter().cloned());
        v
    }
}

pub const UNCLASSIFIED: &str = "unclassified";

/// Symbols preferred when drawing charts.
pub const CHART_SYMBOLS: &[&str] = &["0", "•", "L", "L_−", "𝔽̲", "ℤ̲", "ℤ̲^op", "R(ℤ_−)", "L(ℤ_−)", "A"];

const MAX_EXPONENT: i64 = 64;
const MAX_RANK: usize = 4;

fn underline(s: &str) -> String {
    if s.chars().count() == 1 {
        format!("{s}\u{332}")
    } else {
        format!("({s})\u{332}")
    }
}

fn gname(g: &FgAb) -> String {
    group_name(g.rank(), g.torsion())
}

/// Name of an underlying module with involution.
pub fn module_name(n: &FgAb, t: &FgAbMap) -> String {
    let one = FgAbMap::identity(n);
    if t.equals(&one) {
        return gname(n);
    }
    if t.equals(&one.neg()) {
        return format!("{}_−", gname(n));
    }
    let inv = crate::fgab::kernel(&t.sub(&one)).0;
    let coinv = crate::fgab::cokernel(&t.sub(&one)).0;
    if n.is_free() && n.rank() == 2 && inv.rank() == 1 && coinv.is_free() {
        return "ℤ[C₂]".into();
    }
    let anti = crate::fgab::kernel(&t.add(&one)).0;
    format!("{}{{fix {}, anti {}}}", gname(n), gname(&inv), gname(&anti))
}

fn push(names: &mut Vec<String>, s: String) {
    if !names.contains(&s) {
        names.push(s);
    }
}

/// Identify `m` among the named families. Each match is certified by an explicit isomorphism.
pub fn classify(m: &MackeyFunctor) -> Classification {
    let m = m.canonical();
    if m.is_zero() {
        return Classification { name: "0".into(), aliases: vec![] };
    }
    let too_big = |g: &FgAb| g.rank() > MAX_RANK || g.exponent() > BigInt::from(MAX_EXPONENT);
    if too_big(m.top()) || too_big(m.bot()) {
        return Classification { name: UNCLASSIFIED.into(), aliases: vec![] };
    }
    let mut names: Vec<String> = Vec::new();
    let th = m.theta();
    let trivial = th.equals(&FgAbMap::identity(m.bot()));
    let (top, bot) = (m.top(), m.bot());

    if top.rank() == 2 && top.is_free() && bot.rank() == 1 && bot.is_free() && find_isomorphism(&m, &burnside()).is_iso() {
        push(&mut names, "A".into());
    }
    let r_iso = r_functor(bot, &th).ok().and_then(|r| {
        let f = MackeyMap::new(&m, &r, crate::fgab::factor_through_injection(m.rho(), r.rho())?, FgAbMap::identity(bot)).ok()?;
        f.is_iso().then_some(())
    });
    let l_iso = l_functor(bot, &th).ok().and_then(|l| {
        let f = MackeyMap::new(&l, &m, crate::fgab::factor_through_surjection(m.tau(), l.tau())?, FgAbMap::identity(bot)).ok()?;
        f.is_iso().then_some(())
    });
    if trivial && r_iso.is_some() {
        push(&mut names, underline(&gname(bot)));
    }
    if trivial && l_iso.is_some() {
        push(&mut names, format!("{}^op", underline(&gname(bot))));
    }
    if top.is_trivial() && m.is_canonical() {
        let b = bracket(bot);
        if find_isomorphism(&m, &b).is_iso() {
            push(&mut names, format!("[{}]", gname(bot)));
        }
    }
    if bot.is_trivial() {
        let a = angle(top);
        if find_isomorphism(&m, &a).is_iso() {
            push(&mut names, format!("⟨{}⟩", gname(top)));
        }
    }
    if l_iso.is_some() {
        push(&mut names, format!("L({})", module_name(bot, &th)));
    }
    if r_iso.is_some() {
        push(&mut names, format!("R({})", module_name(bot, &th)));
    }
    // chart symbols
    let snapshot = names.clone();
    for n in &snapshot {
        match n.as_str() {
            "⟨𝔽⟩" => push(&mut names, "•".into()),
            "[𝔽]" => push(&mut names, "L_−".into()),
            "L(𝔽)" => push(&mut names, "L".into()),
            _ => {}
        }
    }
    if names.is_empty() {
        return Classification { name: UNCLASSIFIED.into(), aliases: vec![] };
    }
    let name = names.remove(0);
    Classification { name, aliases: names }
}

/// Classify and compare against a symbol.
pub fn is_named(m: &MackeyFunctor, s: &str) -> bool {
    classify(m).matches(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::named::construct_named;

    fn c(s: &str) -> Classification {
        classify(&construct_named(s).unwrap())
    }

    #[test]
    fn named_functors_classify() {
        assert_eq!(c("Z").name, "ℤ̲");
        assert_eq!(c("Zop").name, "ℤ̲^op");
        assert_eq!(c("F2").name, "𝔽̲");
        assert!(c("[Z]").matches("[ℤ]") && c("[Z]").matches("R(ℤ_−)"));
        assert!(c("L(Z-)").matches("L(ℤ_−)"));
        assert!(!c("L(Z-)").matches("R(ℤ_−)"));
        assert_eq!(c("<F2>").name, "⟨𝔽⟩");
        assert!(c("<F2>").matches("•"));
        assert!(c("L").matches("L"));
        assert!(c("L-").matches("L_−"));
        assert_eq!(c("A").name, "A");
        assert!(c("R(Z[C2])").matches("R(ℤ[C₂])"));
        assert_eq!(classify(&MackeyFunctor::zero()).name, "0");
    }
}
