use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::LinError;
use crate::kernel::{Mode, TypeExpr};

/// Types of a linear type theory: basic types, `I`, `X * Y` and `X -o Y`.
/// Dual types are rejected by [`lin_typecheck`].
pub type LinType = TypeExpr;

/// Variable-free combinators. `Comp(g, f)` is `g ∘ f`: first `f`, then `g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Combinator {
    /// A function symbol of the theory with its type.
    Fn {
        name: String,
        dom: LinType,
        cod: LinType,
    },
    Id(LinType),
    Assoc(LinType, LinType, LinType),
    Unassoc(LinType, LinType, LinType),
    Braid(LinType, LinType),
    Left(LinType),
    Unleft(LinType),
    Right(LinType),
    Unright(LinType),
    Eval(LinType, LinType),
    Comp(Box<Combinator>, Box<Combinator>),
    Tensor(Box<Combinator>, Box<Combinator>),
    Curry(Box<Combinator>),
}

/// Names of the basic combinators.
pub const BASIC_COMBINATORS: [&str; 9] = [
    "id", "assoc", "unassoc", "braid", "left", "unleft", "right", "unright", "eval",
];

fn tn(a: &LinType, b: &LinType) -> LinType {
    TypeExpr::tensor(a.clone(), b.clone())
}

fn show(t: &LinType) -> String {
    format!("{}", t.display_in(Mode::ClosedSymmetric))
}

impl Combinator {
    pub fn func(name: impl Into<String>, dom: LinType, cod: LinType) -> Self {
        Combinator::Fn {
            name: name.into(),
            dom,
            cod,
        }
    }

    /// `g ∘ f`.
    pub fn comp(g: Combinator, f: Combinator) -> Self {
        Combinator::Comp(Box::new(g), Box::new(f))
    }

    pub fn tensor(f: Combinator, g: Combinator) -> Self {
        Combinator::Tensor(Box::new(f), Box::new(g))
    }

    pub fn curry(f: Combinator) -> Self {
        Combinator::Curry(Box::new(f))
    }

    /// The basic-combinator name, if this is one.
    pub fn tag(&self) -> Option<&'static str> {
        use Combinator::*;
        let i = match self {
            Id(_) => 0,
            Assoc(..) => 1,
            Unassoc(..) => 2,
            Braid(..) => 3,
            Left(_) => 4,
            Unleft(_) => 5,
            Right(_) => 6,
            Unright(_) => 7,
            Eval(..) => 8,
            _ => return None,
        };
        Some(BASIC_COMBINATORS[i])
    }

    /// Domain and codomain, checking composites.
    pub fn dom_cod(&self) -> Result<(LinType, LinType), LinError> {
        use Combinator::*;
        let u = TypeExpr::Unit;
        Ok(match self {
            Fn { dom, cod, .. } => (dom.clone(), cod.clone()),
            Id(x) => (x.clone(), x.clone()),
            Assoc(x, y, z) => (tn(&tn(x, y), z), tn(x, &tn(y, z))),
            Unassoc(x, y, z) => (tn(x, &tn(y, z)), tn(&tn(x, y), z)),
            Braid(x, y) => (tn(x, y), tn(y, x)),
            Left(x) => (tn(&u, x), x.clone()),
            Unleft(x) => (x.clone(), tn(&u, x)),
            Right(x) => (tn(x, &u), x.clone()),
            Unright(x) => (x.clone(), tn(x, &u)),
            Eval(x, y) => (tn(x, &TypeExpr::hom(x.clone(), y.clone())), y.clone()),
            Comp(g, f) => {
                let (a, b) = f.dom_cod()?;
                let (b2, c) = g.dom_cod()?;
                if b != b2 {
                    return Err(LinError::Compose {
                        left: show(&b),
                        right: show(&b2),
                    });
                }
                (a, c)
            }
            Tensor(f, g) => {
                let (a, b) = f.dom_cod()?;
                let (c, d) = g.dom_cod()?;
                (tn(&a, &c), tn(&b, &d))
            }
            Curry(f) => {
                let (d, z) = f.dom_cod()?;
                let TypeExpr::Tensor(x, y) = d else {
                    return Err(LinError::Shape(format!(
                        "curry needs a tensor domain, got {}",
                        show(&d)
                    )));
                };
                (*y, TypeExpr::hom(*x, z))
            }
        })
    }

    pub fn size(&self) -> usize {
        match self {
            Combinator::Comp(a, b) | Combinator::Tensor(a, b) => 1 + a.size() + b.size(),
            Combinator::Curry(f) => 1 + f.size(),
            _ => 1,
        }
    }

    /// Function symbols used, with their types.
    pub fn functions(&self, out: &mut Vec<(String, LinType, LinType)>) {
        match self {
            Combinator::Fn { name, dom, cod } => out.push((name.clone(), dom.clone(), cod.clone())),
            Combinator::Comp(a, b) | Combinator::Tensor(a, b) => {
                a.functions(out);
                b.functions(out);
            }
            Combinator::Curry(f) => f.functions(out),
            _ => {}
        }
    }

    fn types(&self) -> Vec<&LinType> {
        use Combinator::*;
        match self {
            Fn { dom, cod, .. } => Vec::from([dom, cod]),
            Id(x) | Left(x) | Unleft(x) | Right(x) | Unright(x) => Vec::from([x]),
            Braid(x, y) | Eval(x, y) => Vec::from([x, y]),
            Assoc(x, y, z) | Unassoc(x, y, z) => Vec::from([x, y, z]),
            Comp(a, b) | Tensor(a, b) => {
                let mut v = a.types();
                v.extend(b.types());
                v
            }
            Curry(f) => f.types(),
        }
    }

    fn fmt_in(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        use Combinator::*;
        let subs = f.alternate();
        match self {
            Fn { name, .. } => f.write_str(name),
            Comp(g, h) => {
                if !top {
                    f.write_str("(")?;
                }
                g.fmt_in(f, false)?;
                f.write_str(" ∘ ")?;
                h.fmt_in(f, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Tensor(a, b) => {
                f.write_str("(")?;
                a.fmt_in(f, false)?;
                f.write_str(" ⊗ ")?;
                b.fmt_in(f, false)?;
                f.write_str(")")
            }
            Curry(g) => {
                f.write_str("curry(")?;
                g.fmt_in(f, true)?;
                f.write_str(")")
            }
            _ => {
                f.write_str(self.tag().expect("basic combinator"))?;
                if subs {
                    f.write_str("[")?;
                    for (i, t) in self.types().iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", t.display_in(Mode::ClosedSymmetric))?;
                    }
                    f.write_str("]")?;
                }
                Ok(())
            }
        }
    }
}

/// Paper-style notation; `{:#}` adds the type subscripts of basic combinators.
impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, true)
    }
}

/// Terms with variables. Each variable occurs at most once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinTerm {
    Var(String, LinType),
    /// The term `1 : I`.
    One,
    Tensor(Box<LinTerm>, Box<LinTerm>),
    Apply(Combinator, Box<LinTerm>),
}

impl LinTerm {
    pub fn var(name: impl Into<String>, ty: LinType) -> Self {
        LinTerm::Var(name.into(), ty)
    }

    pub fn tensor(s: LinTerm, t: LinTerm) -> Self {
        LinTerm::Tensor(Box::new(s), Box::new(t))
    }

    pub fn apply(c: Combinator, t: LinTerm) -> Self {
        LinTerm::Apply(c, Box::new(t))
    }

    /// Variables with their types, left to right.
    pub fn vars(&self) -> Vec<(String, LinType)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<(String, LinType)>) {
        match self {
            LinTerm::Var(x, t) => out.push((x.clone(), t.clone())),
            LinTerm::One => {}
            LinTerm::Tensor(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            LinTerm::Apply(_, t) => t.collect_vars(out),
        }
    }

    /// No combinators: an iterated tensor of variables and `1`.
    pub fn is_basic(&self) -> bool {
        match self {
            LinTerm::Var(..) | LinTerm::One => true,
            LinTerm::Tensor(a, b) => a.is_basic() && b.is_basic(),
            LinTerm::Apply(..) => false,
        }
    }

    /// Nodes, counting each combinator node.
    pub fn size(&self) -> usize {
        match self {
            LinTerm::Var(..) | LinTerm::One => 1,
            LinTerm::Tensor(a, b) => 1 + a.size() + b.size(),
            LinTerm::Apply(c, t) => c.size() + t.size(),
        }
    }

    /// Function symbols used, with their types.
    pub fn functions(&self, out: &mut Vec<(String, LinType, LinType)>) {
        match self {
            LinTerm::Var(..) | LinTerm::One => {}
            LinTerm::Tensor(a, b) => {
                a.functions(out);
                b.functions(out);
            }
            LinTerm::Apply(c, t) => {
                c.functions(out);
                t.functions(out);
            }
        }
    }
}

/// Paper-style notation; `{:#}` annotates variables and subscripts combinators,
/// which is the form the parser reads back.
impl fmt::Display for LinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinTerm::Var(x, t) => {
                if f.alternate() {
                    write!(f, "{}:", x)?;
                    match t {
                        TypeExpr::Basic(_) | TypeExpr::Unit => {
                            write!(f, "{}", t.display_in(Mode::ClosedSymmetric))
                        }
                        _ => write!(f, "({})", t.display_in(Mode::ClosedSymmetric)),
                    }
                } else {
                    f.write_str(x)
                }
            }
            LinTerm::One => f.write_str("1"),
            LinTerm::Tensor(a, b) => {
                if f.alternate() {
                    write!(f, "({:#} ⊗ {:#})", a, b)
                } else {
                    write!(f, "({} ⊗ {})", a, b)
                }
            }
            LinTerm::Apply(c, t) => {
                let wrap = matches!(c, Combinator::Comp(..) | Combinator::Tensor(..));
                let (l, r) = if wrap { ("(", ")") } else { ("", "") };
                let alt = f.alternate();
                f.write_str(l)?;
                if alt {
                    write!(f, "{:#}", c)?;
                } else {
                    write!(f, "{}", c)?;
                }
                f.write_str(r)?;
                match (&**t, alt) {
                    (LinTerm::Tensor(..), true) => write!(f, "{:#}", t),
                    (LinTerm::Tensor(..), false) => write!(f, "{}", t),
                    (_, true) => write!(f, "({:#})", t),
                    (_, false) => write!(f, "({})", t),
                }
            }
        }
    }
}

fn check_no_dual(t: &LinType) -> Result<(), LinError> {
    if t.mentions_dual() {
        return Err(LinError::Shape(format!(
            "dual types are not linear types: {}",
            show(t)
        )));
    }
    Ok(())
}

/// Type of a term, checking linearity and combinator domains.
pub fn lin_typecheck(t: &LinTerm) -> Result<LinType, LinError> {
    fn go(t: &LinTerm, seen: &mut BTreeSet<String>) -> Result<LinType, LinError> {
        match t {
            LinTerm::Var(x, ty) => {
                check_no_dual(ty)?;
                if !seen.insert(x.clone()) {
                    return Err(LinError::Reused(x.clone()));
                }
                Ok(ty.clone())
            }
            LinTerm::One => Ok(TypeExpr::Unit),
            LinTerm::Tensor(a, b) => Ok(TypeExpr::tensor(go(a, seen)?, go(b, seen)?)),
            LinTerm::Apply(c, s) => {
                let (dom, cod) = c.dom_cod()?;
                for ty in c.types() {
                    check_no_dual(ty)?;
                }
                let found = go(s, seen)?;
                if found != dom {
                    return Err(LinError::Argument {
                        comb: format!("{}", c),
                        expected: show(&dom),
                        found: show(&found),
                    });
                }
                Ok(cod)
            }
        }
    }
    go(t, &mut BTreeSet::new())
}

/// Combinator part and variable part: `t ~ cp(t)(vp(t))` with `vp(t)` basic.
pub fn cpvp(t: &LinTerm) -> Result<(Combinator, LinTerm), LinError> {
    lin_typecheck(t)?;
    fn go(t: &LinTerm) -> (Combinator, LinTerm) {
        match t {
            LinTerm::Var(_, ty) => (Combinator::Id(ty.clone()), t.clone()),
            LinTerm::One => (Combinator::Id(TypeExpr::Unit), LinTerm::One),
            LinTerm::Tensor(a, b) => {
                let (ca, va) = go(a);
                let (cb, vb) = go(b);
                (Combinator::tensor(ca, cb), LinTerm::tensor(va, vb))
            }
            LinTerm::Apply(f, s) => {
                let (cs, vs) = go(s);
                (Combinator::comp(f.clone(), cs), vs)
            }
        }
    }
    Ok(go(t))
}

/// The contractum of a rewrite rule at the root, if one applies.
fn contract(c: &Combinator, s: &LinTerm) -> Option<LinTerm> {
    use Combinator as C;
    use LinTerm as T;
    Some(match (c, s) {
        (C::Id(_), _) => s.clone(),
        (C::Comp(g, f), _) => T::apply((**g).clone(), T::apply((**f).clone(), s.clone())),
        (C::Tensor(f, g), T::Tensor(a, b)) => T::tensor(
            T::apply((**f).clone(), (**a).clone()),
            T::apply((**g).clone(), (**b).clone()),
        ),
        (C::Assoc(..), T::Tensor(ab, u)) => match &**ab {
            T::Tensor(a, b) => T::tensor((**a).clone(), T::tensor((**b).clone(), (**u).clone())),
            _ => return None,
        },
        (C::Unassoc(..), T::Tensor(a, bu)) => match &**bu {
            T::Tensor(b, u) => T::tensor(T::tensor((**a).clone(), (**b).clone()), (**u).clone()),
            _ => return None,
        },
        (C::Braid(..), T::Tensor(a, b)) => T::tensor((**b).clone(), (**a).clone()),
        (C::Left(_), T::Tensor(one, a)) if **one == T::One => (**a).clone(),
        (C::Unleft(_), _) => T::tensor(T::One, s.clone()),
        (C::Right(_), T::Tensor(a, one)) if **one == T::One => (**a).clone(),
        (C::Unright(_), _) => T::tensor(s.clone(), T::One),
        (C::Eval(..), T::Tensor(a, ft)) => match &**ft {
            T::Apply(C::Curry(f), t) => {
                T::apply((**f).clone(), T::tensor((**a).clone(), (**t).clone()))
            }
            _ => return None,
        },
        _ => return None,
    })
}

/// Every term reachable by one rewrite at one position, in left-to-right
/// position order.
pub fn rewrite_steps(t: &LinTerm) -> Vec<LinTerm> {
    let mut out = Vec::new();
    match t {
        LinTerm::Var(..) | LinTerm::One => {}
        LinTerm::Tensor(a, b) => {
            for a2 in rewrite_steps(a) {
                out.push(LinTerm::tensor(a2, (**b).clone()));
            }
            for b2 in rewrite_steps(b) {
                out.push(LinTerm::tensor((**a).clone(), b2));
            }
        }
        LinTerm::Apply(c, s) => {
            if let Some(r) = contract(c, s) {
                out.push(r);
            }
            for s2 in rewrite_steps(s) {
                out.push(LinTerm::apply(c.clone(), s2));
            }
        }
    }
    out
}

fn step_mut(t: &mut LinTerm) -> bool {
    match t {
        LinTerm::Var(..) | LinTerm::One => false,
        LinTerm::Tensor(a, b) => step_mut(a) || step_mut(b),
        LinTerm::Apply(c, s) => {
            if let Some(r) = contract(c, s) {
                *t = r;
                return true;
            }
            step_mut(s)
        }
    }
}

/// Applies the rewrite rules until none applies. Each rule removes a
/// combinator node, so this terminates.
pub fn lin_normalize(t: &LinTerm) -> LinTerm {
    let mut t = t.clone();
    while step_mut(&mut t) {}
    t
}

/// The basic term of type `ty` with a fresh variable `{prefix}{k}` at each
/// non-tensor, non-unit position and `1` at each `I`.
pub fn basic_term(ty: &LinType, prefix: &str) -> LinTerm {
    fn go(ty: &LinType, prefix: &str, k: &mut usize) -> LinTerm {
        match ty {
            TypeExpr::Tensor(a, b) => {
                let l = go(a, prefix, k);
                LinTerm::tensor(l, go(b, prefix, k))
            }
            TypeExpr::Unit => LinTerm::One,
            _ => {
                *k += 1;
                LinTerm::var(format!("{}{}", prefix, k), ty.clone())
            }
        }
    }
    go(ty, prefix, &mut 0)
}
