use super::complex::{Basic, Coeff, Kind, Level, Sphere};
use crate::fgab::{homology_sub, FgAb, FgAbMap, IntMatrix, SubQuotient};
use crate::mackey::{classify, Classification, MackeyFunctor, MackeyMap};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// Degree `p + qα`.
pub type Degree = (i64, i64);

/// Rectangle `[pmin, pmax] x [qmin, qmax]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub pmin: i64,
    pub pmax: i64,
    pub qmin: i64,
    pub qmax: i64,
}

impl Window {
    pub fn new(pmin: i64, pmax: i64, qmin: i64, qmax: i64) -> Self {
        assert!(pmin <= pmax && qmin <= qmax, "empty window");
        Window { pmin, pmax, qmin, qmax }
    }

    pub fn square(r: i64) -> Self {
        Window::new(-r, r, -r, r)
    }

    pub fn contains(&self, d: Degree) -> bool {
        d.0 >= self.pmin && d.0 <= self.pmax && d.1 >= self.qmin && d.1 <= self.qmax
    }

    /// Degrees in row-major order, `q` descending then `p` ascending.
    pub fn degrees(&self) -> Vec<Degree> {
        let mut v = Vec::new();
        for q in (self.qmin..=self.qmax).rev() {
            for p in self.pmin..=self.pmax {
                v.push((p, q));
            }
        }
        v
    }
}

/// Homology of one sphere complex in one degree, remembering how it sits in the chains.
#[derive(Clone, Debug)]
pub struct Cell {
    pub degree: Degree,
    pub kind: Option<Kind>,
    pub mackey: MackeyFunctor,
    top: SubQuotient,
    bot: SubQuotient,
}

impl Cell {
    pub fn sub(&self, l: Level) -> &SubQuotient {
        match l {
            Level::Top => &self.top,
            Level::Bot => &self.bot,
        }
    }
}

/// Lazily computed `RO(C₂)`-graded homotopy of `HM`, with operation maps between cells.
pub struct Engine {
    coeff: Coeff,
    cells: RefCell<HashMap<Degree, Rc<Cell>>>,
    a_cache: RefCell<HashMap<Degree, Rc<MackeyMap>>>,
    u_cache: RefCell<HashMap<Degree, Rc<MackeyMap>>>,
}

fn zero_group() -> FgAb {
    FgAb::zero()
}

impl Engine {
    pub fn new(m: &MackeyFunctor) -> Self {
        Engine {
            coeff: Coeff::new(m),
            cells: RefCell::new(HashMap::new()),
            a_cache: RefCell::new(HashMap::new()),
            u_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn coeff(&self) -> &Coeff {
        &self.coeff
    }

    /// Chain-level differential out of degree `d` as a map of level groups.
    fn level_diff(&self, s: Sphere, d: i64, l: Level) -> Option<FgAbMap> {
        let b = s.diff(d)?;
        let (kf, kt) = (s.kind(d)?, s.kind(d - 1)?);
        let m = self.coeff.basic(b, kf, kt, l);
        Some(FgAbMap::new(self.coeff.group(kf, l).clone(), self.coeff.group(kt, l).clone(), m).expect("differential"))
    }

    fn compute(&self, (p, q): Degree) -> Cell {
        let s = Sphere { q };
        let Some(kind) = s.kind(p) else {
            let z = SubQuotient::new(0, &IntMatrix::zeros(0, 0), &IntMatrix::zeros(0, 0));
            return Cell { degree: (p, q), kind: None, mackey: MackeyFunctor::zero(), top: z.clone(), bot: z };
        };
        let sub = |l: Level| {
            let g = self.coeff.group(kind, l).clone();
            let inc = self.level_diff(s, p + 1, l).unwrap_or_else(|| FgAbMap::zero(&zero_group(), &g));
            let out = self.level_diff(s, p, l).unwrap_or_else(|| FgAbMap::zero(&g, &zero_group()));
            homology_sub(&inc, &out)
        };
        let (top, bot) = (sub(Level::Top), sub(Level::Bot));
        let rho = bot.induced_from(&top, &self.coeff.rho(kind)).expect("restriction on homology");
        let tau = top.induced_from(&bot, &self.coeff.tau(kind)).expect("transfer on homology");
        let mackey = MackeyFunctor::from_maps(rho, tau).expect("homology is a Mackey functor");
        Cell { degree: (p, q), kind: Some(kind), mackey, top, bot }
    }

    pub fn cell(&self, d: Degree) -> Rc<Cell> {
        if let Some(c) = self.cells.borrow().get(&d) {
            return c.clone();
        }
        let c = Rc::new(self.compute(d));
        self.cells.borrow_mut().insert(d, c.clone());
        c
    }

    pub fn value(&self, d: Degree) -> MackeyFunctor {
        self.cell(d).mackey.clone()
    }

    /// Map on homology induced by one elementary chain map in the source degree.
    pub fn induced(&self, from: Degree, to: Degree, b: Basic) -> MackeyMap {
        let (s, t) = (self.cell(from), self.cell(to));
        match (s.kind, t.kind) {
            (Some(kf), Some(kt)) if b != Basic::Zero => {
                let top = t.top.induced_from(&s.top, &self.coeff.basic(b, kf, kt, Level::Top)).expect("chain map on top");
                let bot = t.bot.induced_from(&s.bot, &self.coeff.basic(b, kf, kt, Level::Bot)).expect("chain map on bottom");
                MackeyMap::new(&s.mackey, &t.mackey, top, bot).expect("induced map is natural")
            }
            _ => MackeyMap::zero(&s.mackey, &t.mackey),
        }
    }

    /// Multiplication by `a`: `(p, q) -> (p, q - 1)`.
    pub fn a_map(&self, d: Degree) -> Rc<MackeyMap> {
        if let Some(m) = self.a_cache.borrow().get(&d) {
            return m.clone();
        }
        let (p, q) = d;
        let to = (p, q - 1);
        let src = Sphere { q };
        let dst = Sphere { q: q - 1 };
        let b = match (src.kind(p), dst.kind(p)) {
            (Some(x), Some(y)) if x == y => Basic::Id,
            _ => Basic::Zero,
        };
        let m = Rc::new(self.induced(d, to, b));
        self.a_cache.borrow_mut().insert(d, m.clone());
        m
    }

    /// Multiplication by `u`: `(p, q) -> (p + 2, q - 2)`.
    pub fn u_map(&self, d: Degree) -> Rc<MackeyMap> {
        if let Some(m) = self.u_cache.borrow().get(&d) {
            return m.clone();
        }
        let (p, q) = d;
        let to = (p + 2, q - 2);
        let b = if q <= 0 {
            match p {
                0 => Basic::Diag,
                x if x >= 1 => Basic::Id,
                _ => Basic::Zero,
            }
        } else if q == 1 {
            if p == -1 {
                Basic::Mult(1, -1)
            } else {
                Basic::Zero
            }
        } else {
            match -p {
                j if j >= 3 => Basic::Id,
                2 => Basic::Fold,
                _ => Basic::Zero,
            }
        };
        let m = Rc::new(self.induced(d, to, b));
        self.u_cache.borrow_mut().insert(d, m.clone());
        m
    }

    /// Multiplication by the class in degree `1 - α`; needs `2M = 0`.
    pub fn sigma_map(&self, d: Degree) -> MackeyMap {
        assert!(
            FgAbMap::scalar(self.coeff.functor().top(), 2).is_zero() && FgAbMap::scalar(self.coeff.functor().bot(), 2).is_zero(),
            "the degree 1 - α class needs coefficients killed by two"
        );
        let (p, q) = d;
        let to = (p + 1, q - 1);
        let b = if q <= 0 {
            match p {
                0 => Basic::Diag,
                x if x >= 1 => Basic::Id,
                _ => Basic::Zero,
            }
        } else {
            match -p {
                j if j >= 2 => Basic::Id,
                1 => Basic::Fold,
                _ => Basic::Zero,
            }
        };
        self.induced(d, to, b)
    }

    /// Composite of `k` a-maps starting at `d`.
    pub fn a_power(&self, d: Degree, k: i64) -> MackeyMap {
        let mut f = MackeyMap::identity(&self.value(d));
        for i in 0..k {
            f = (*self.a_map((d.0, d.1 - i))).after(&f);
        }
        f
    }

    /// Composite of `k` u-maps starting at `d`.
    pub fn u_power(&self, d: Degree, k: i64) -> MackeyMap {
        let mut f = MackeyMap::identity(&self.value(d));
        for i in 0..k {
            f = (*self.u_map((d.0 + 2 * i, d.1 - 2 * i))).after(&f);
        }
        f
    }
}

/// Nonzero cells can only occur in the two cones.
pub fn in_support(d: Degree) -> bool {
    let (p, q) = d;
    if q <= 0 {
        p >= 0 && p <= -q
    } else {
        p <= 0 && p >= -q
    }
}

/// A windowed chart with named cells and the a-action between neighbours.
#[derive(Clone, Debug)]
pub struct GradedChart {
    pub coeff_name: String,
    pub window: Window,
    pub cells: BTreeMap<Degree, (MackeyFunctor, Classification)>,
    pub a_maps: BTreeMap<Degree, MackeyMap>,
}

pub fn chart(engine: &Engine, name: &str, w: Window) -> GradedChart {
    let mut cells = BTreeMap::new();
    let mut a_maps = BTreeMap::new();
    for d in w.degrees() {
        let m = engine.value(d);
        let c = classify(&m);
        cells.insert(d, (m, c));
        if w.contains((d.0, d.1 - 1)) {
            let f = engine.a_map(d);
            if !f.is_zero() {
                a_maps.insert(d, (*f).clone());
            }
        }
    }
    GradedChart { coeff_name: name.to_string(), window: w, cells, a_maps }
}

/// The a-action at a degree, `(p, q) -> (p, q - 1)`.
pub fn a_action(engine: &Engine, d: Degree) -> MackeyMap {
    (*engine.a_map(d)).clone()
}

impl GradedChart {
    pub fn get(&self, d: Degree) -> Option<&(MackeyFunctor, Classification)> {
        self.cells.get(&d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = self.window;
        let cells: Vec<serde_json::Value> = self
            .cells
            .iter()
            .filter(|(_, (m, _))| !m.is_zero())
            .map(|(d, (m, c))| serde_json::json!({"p": d.0, "q": d.1, "mackey": m.to_json(), "name": c.symbol()}))
            .collect();
        let a: Vec<serde_json::Value> = self
            .a_maps
            .iter()
            .map(|(d, f)| serde_json::json!({"from": [d.0, d.1], "to": [d.0, d.1 - 1], "map": f.to_json()}))
            .collect();
        serde_json::json!({
            "coeff": self.coeff_name,
            "window": [w.pmin, w.pmax, w.qmin, w.qmax],
            "cells": cells,
            "a_maps": a,
        })
    }
}
