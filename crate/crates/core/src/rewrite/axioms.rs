use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{Mode, MorTerm, TypeExpr};

/// An equation between two term templates over the basic metavariables `W`, `X`, `Y`, `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: &'static str,
    pub metavars: &'static [&'static str],
    pub lhs: MorTerm,
    pub rhs: MorTerm,
}

impl Axiom {
    /// Both sides with metavariables replaced by `f(name)`.
    pub fn instantiate(&self, f: &dyn Fn(&str) -> Option<TypeExpr>) -> (MorTerm, MorTerm) {
        let sub = |t: &TypeExpr| t.subst(f);
        (self.lhs.map_types(&sub), self.rhs.map_types(&sub))
    }
}

fn v(n: &str) -> TypeExpr {
    TypeExpr::basic(n)
}

fn id(x: TypeExpr) -> MorTerm {
    MorTerm::Id(x)
}

fn seq(ts: Vec<MorTerm>) -> MorTerm {
    ts.into_iter().reduce(MorTerm::seq).expect("nonempty")
}

fn par(a: MorTerm, b: MorTerm) -> MorTerm {
    MorTerm::par(a, b)
}

/// Axiom schemas active in `mode`.
pub fn coherence_axioms(mode: Mode) -> Vec<Axiom> {
    use MorTerm::*;
    let caps = mode.caps();
    let t = TypeExpr::tensor;
    let (w, x, y, z) = (v("W"), v("X"), v("Y"), v("Z"));
    let mut out = Vec::new();
    out.push(Axiom {
        name: "triangle",
        metavars: &["X", "Y"],
        lhs: seq(vec![
            Assoc(x.clone(), TypeExpr::Unit, y.clone()),
            par(id(x.clone()), LeftU(y.clone())),
        ]),
        rhs: par(RightU(x.clone()), id(y.clone())),
    });
    out.push(Axiom {
        name: "pentagon",
        metavars: &["W", "X", "Y", "Z"],
        lhs: seq(vec![
            Assoc(t(w.clone(), x.clone()), y.clone(), z.clone()),
            Assoc(w.clone(), x.clone(), t(y.clone(), z.clone())),
        ]),
        rhs: seq(vec![
            par(Assoc(w.clone(), x.clone(), y.clone()), id(z.clone())),
            Assoc(w.clone(), t(x.clone(), y.clone()), z.clone()),
            par(id(w.clone()), Assoc(x.clone(), y.clone(), z.clone())),
        ]),
    });
    if caps.braided {
        out.push(Axiom {
            name: "hexagon-1",
            metavars: &["X", "Y", "Z"],
            lhs: seq(vec![
                Assoc(x.clone(), y.clone(), z.clone()),
                Braid(x.clone(), t(y.clone(), z.clone())),
                Assoc(y.clone(), z.clone(), x.clone()),
            ]),
            rhs: seq(vec![
                par(Braid(x.clone(), y.clone()), id(z.clone())),
                Assoc(y.clone(), x.clone(), z.clone()),
                par(id(y.clone()), Braid(x.clone(), z.clone())),
            ]),
        });
        out.push(Axiom {
            name: "hexagon-2",
            metavars: &["X", "Y", "Z"],
            lhs: seq(vec![
                Unassoc(x.clone(), y.clone(), z.clone()),
                Braid(t(x.clone(), y.clone()), z.clone()),
                Unassoc(z.clone(), x.clone(), y.clone()),
            ]),
            rhs: seq(vec![
                par(id(x.clone()), Braid(y.clone(), z.clone())),
                Unassoc(x.clone(), z.clone(), y.clone()),
                par(Braid(x.clone(), z.clone()), id(y.clone())),
            ]),
        });
        out.push(Axiom {
            name: "yang-baxter",
            metavars: &["X", "Y", "Z"],
            lhs: seq(vec![
                Unassoc(x.clone(), y.clone(), z.clone()),
                par(Braid(x.clone(), y.clone()), id(z.clone())),
                Assoc(y.clone(), x.clone(), z.clone()),
                par(id(y.clone()), Braid(x.clone(), z.clone())),
                Unassoc(y.clone(), z.clone(), x.clone()),
                par(Braid(y.clone(), z.clone()), id(x.clone())),
                Assoc(z.clone(), y.clone(), x.clone()),
            ]),
            rhs: seq(vec![
                par(id(x.clone()), Braid(y.clone(), z.clone())),
                Unassoc(x.clone(), z.clone(), y.clone()),
                par(Braid(x.clone(), z.clone()), id(y.clone())),
                Assoc(z.clone(), x.clone(), y.clone()),
                par(id(z.clone()), Braid(x.clone(), y.clone())),
            ]),
        });
    }
    if caps.symmetric {
        out.push(Axiom {
            name: "symmetry",
            metavars: &["X", "Y"],
            lhs: seq(vec![
                Braid(x.clone(), y.clone()),
                Braid(y.clone(), x.clone()),
            ]),
            rhs: id(t(x.clone(), y.clone())),
        });
    }
    if caps.cartesian {
        out.push(Axiom {
            name: "dup-del",
            metavars: &["X"],
            lhs: seq(vec![
                Dup(x.clone()),
                par(id(x.clone()), Del(x.clone())),
                RightU(x.clone()),
            ]),
            rhs: id(x.clone()),
        });
        out.push(Axiom {
            name: "pair-proj",
            metavars: &["X", "Y"],
            lhs: MorTerm::pair(Proj1(x.clone(), y.clone()), Proj2(x.clone(), y.clone())),
            rhs: id(t(x.clone(), y.clone())),
        });
    }
    if caps.closed {
        out.push(Axiom {
            name: "curry-ev",
            metavars: &["X", "Y"],
            lhs: MorTerm::curry(Ev(x.clone(), y.clone())),
            rhs: id(TypeExpr::hom(x.clone(), y.clone())),
        });
    }
    if caps.compact {
        let xd = TypeExpr::dual(x.clone());
        out.push(Axiom {
            name: "zigzag-1",
            metavars: &["X"],
            lhs: seq(vec![
                UnrightU(x.clone()),
                par(id(x.clone()), Cup(x.clone())),
                Unassoc(x.clone(), xd.clone(), x.clone()),
                par(Cap(x.clone()), id(x.clone())),
                LeftU(x.clone()),
            ]),
            rhs: id(x.clone()),
        });
        out.push(Axiom {
            name: "zigzag-2",
            metavars: &["X"],
            lhs: seq(vec![
                UnleftU(xd.clone()),
                par(Cup(x.clone()), id(xd.clone())),
                Assoc(xd.clone(), x.clone(), xd.clone()),
                par(id(xd.clone()), Cap(x.clone())),
                RightU(xd.clone()),
            ]),
            rhs: id(xd),
        });
    }
    out
}
