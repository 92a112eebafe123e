use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::untyped::fresh;
use super::{Equiv, LambdaError};
use crate::kernel::{Mode, Signature, TypeExpr};

/// Typed normalization gives up (as if out of fuel) past this many nodes.
pub const MAX_TYPED_SIZE: usize = 1 << 14;

/// Terms of the typed lambda calculus with products and a unit type.
/// Products are `Tensor` types and function types are `Hom` types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypedTerm {
    Var(String, TypeExpr),
    Basic(String, TypeExpr),
    App(Box<TypedTerm>, Box<TypedTerm>),
    Lam(String, TypeExpr, Box<TypedTerm>),
    PairT(Box<TypedTerm>, Box<TypedTerm>),
    P1(Box<TypedTerm>),
    P2(Box<TypedTerm>),
    UnitT,
}

impl TypedTerm {
    pub fn var(x: impl Into<String>, ty: TypeExpr) -> Self {
        TypedTerm::Var(x.into(), ty)
    }

    pub fn basic(c: impl Into<String>, ty: TypeExpr) -> Self {
        TypedTerm::Basic(c.into(), ty)
    }

    pub fn app(f: TypedTerm, a: TypedTerm) -> Self {
        TypedTerm::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: impl Into<String>, ty: TypeExpr, body: TypedTerm) -> Self {
        TypedTerm::Lam(x.into(), ty, Box::new(body))
    }

    pub fn pair(a: TypedTerm, b: TypedTerm) -> Self {
        TypedTerm::PairT(Box::new(a), Box::new(b))
    }

    pub fn p1(t: TypedTerm) -> Self {
        TypedTerm::P1(Box::new(t))
    }

    pub fn p2(t: TypedTerm) -> Self {
        TypedTerm::P2(Box::new(t))
    }

    pub fn size(&self) -> usize {
        match self {
            TypedTerm::Var(..) | TypedTerm::Basic(..) | TypedTerm::UnitT => 1,
            TypedTerm::App(a, b) | TypedTerm::PairT(a, b) => 1 + a.size() + b.size(),
            TypedTerm::Lam(_, _, b) | TypedTerm::P1(b) | TypedTerm::P2(b) => 1 + b.size(),
        }
    }

    /// Free variables with their annotated types (the last annotation wins on conflict).
    pub fn free_vars(&self) -> BTreeMap<String, TypeExpr> {
        let mut out = BTreeMap::new();
        self.each_free(&mut Vec::new(), &mut |x, t| {
            out.insert(x.to_string(), t.clone());
        });
        out
    }

    fn each_free(&self, bound: &mut Vec<String>, f: &mut dyn FnMut(&str, &TypeExpr)) {
        match self {
            TypedTerm::Var(x, t) => {
                if !bound.contains(x) {
                    f(x, t)
                }
            }
            TypedTerm::Basic(..) | TypedTerm::UnitT => {}
            TypedTerm::App(a, b) | TypedTerm::PairT(a, b) => {
                a.each_free(bound, f);
                b.each_free(bound, f);
            }
            TypedTerm::Lam(x, _, b) => {
                bound.push(x.clone());
                b.each_free(bound, f);
                bound.pop();
            }
            TypedTerm::P1(b) | TypedTerm::P2(b) => b.each_free(bound, f),
        }
    }

    fn free_names(&self) -> BTreeSet<String> {
        self.free_vars().into_keys().collect()
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            TypedTerm::Var(y, _) => x == y,
            TypedTerm::Basic(..) | TypedTerm::UnitT => false,
            TypedTerm::App(a, b) | TypedTerm::PairT(a, b) => a.occurs_free(x) || b.occurs_free(x),
            TypedTerm::Lam(y, _, b) => y != x && b.occurs_free(x),
            TypedTerm::P1(b) | TypedTerm::P2(b) => b.occurs_free(x),
        }
    }

    /// Type read off the annotations, assuming the term is well typed.
    pub fn type_of(&self) -> TypeExpr {
        match self {
            TypedTerm::Var(_, t) | TypedTerm::Basic(_, t) => t.clone(),
            TypedTerm::App(f, _) => match f.type_of() {
                TypeExpr::Hom(_, y) => *y,
                t => t,
            },
            TypedTerm::Lam(_, x, b) => TypeExpr::hom(x.clone(), b.type_of()),
            TypedTerm::PairT(a, b) => TypeExpr::tensor(a.type_of(), b.type_of()),
            TypedTerm::P1(u) => match u.type_of() {
                TypeExpr::Tensor(a, _) => *a,
                t => t,
            },
            TypedTerm::P2(u) => match u.type_of() {
                TypeExpr::Tensor(_, b) => *b,
                t => t,
            },
            TypedTerm::UnitT => TypeExpr::Unit,
        }
    }
}

impl fmt::Display for TypedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &TypedTerm, f: &mut fmt::Formatter<'_>, arg: bool, head: bool) -> fmt::Result {
            let m = Mode::CartesianClosed;
            match t {
                TypedTerm::Var(x, _) | TypedTerm::Basic(x, _) => f.write_str(x),
                TypedTerm::UnitT => f.write_str("()"),
                TypedTerm::PairT(a, b) => {
                    f.write_str("(")?;
                    go(a, f, false, false)?;
                    f.write_str(", ")?;
                    go(b, f, false, false)?;
                    f.write_str(")")
                }
                TypedTerm::Lam(x, ty, b) => {
                    if arg || head {
                        f.write_str("(")?;
                    }
                    write!(f, "\\{}:{}. ", x, ty.display_in(m))?;
                    go(b, f, false, false)?;
                    if arg || head {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                TypedTerm::App(..) | TypedTerm::P1(_) | TypedTerm::P2(_) => {
                    if arg {
                        f.write_str("(")?;
                    }
                    match t {
                        TypedTerm::App(g, a) => {
                            go(g, f, false, true)?;
                            f.write_str(" ")?;
                            go(a, f, true, false)?;
                        }
                        TypedTerm::P1(u) => {
                            f.write_str("p1 ")?;
                            go(u, f, true, false)?;
                        }
                        TypedTerm::P2(u) => {
                            f.write_str("p2 ")?;
                            go(u, f, true, false)?;
                        }
                        _ => unreachable!(),
                    }
                    if arg {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, f, false, false)
    }
}

/// Basic types, aliases and typed basic terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTheory {
    /// Basic types and aliases, in cartesian-closed mode.
    pub types: Signature,
    pub basics: Vec<(String, TypeExpr)>,
}

impl Default for LambdaTheory {
    fn default() -> Self {
        Self::new()
    }
}

impl LambdaTheory {
    pub fn new() -> Self {
        LambdaTheory {
            types: Signature::new(Mode::CartesianClosed),
            basics: Vec::new(),
        }
    }

    pub fn add_type(&mut self, name: &str) {
        self.types.add_object(name);
    }

    pub fn add_basic(&mut self, name: &str, ty: TypeExpr) {
        let mut names = Vec::new();
        ty.basics(&mut names);
        for n in names {
            self.types.add_object(&n);
        }
        self.basics.push((name.to_string(), ty));
    }

    pub fn basic(&self, name: &str) -> Option<&TypeExpr> {
        self.basics.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Cartesian-closed signature with a generator `c : 1 -> T` per basic term.
    pub fn signature(&self) -> Signature {
        let mut s = self.types.clone();
        for (n, t) in &self.basics {
            s.add_generator(n, TypeExpr::Unit, t.clone());
        }
        s
    }
}

fn show(t: &TypeExpr) -> String {
    format!("{}", t.display_in(Mode::CartesianClosed))
}

/// The type of `t`, checking every formation rule.
pub fn typecheck(t: &TypedTerm, th: &LambdaTheory) -> Result<TypeExpr, LambdaError> {
    let mut free: BTreeMap<String, TypeExpr> = BTreeMap::new();
    check(t, th, &mut Vec::new(), &mut free)
}

fn check(
    t: &TypedTerm,
    th: &LambdaTheory,
    env: &mut Vec<(String, TypeExpr)>,
    free: &mut BTreeMap<String, TypeExpr>,
) -> Result<TypeExpr, LambdaError> {
    match t {
        TypedTerm::Var(x, ty) => {
            let bound = env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, t)| t.clone());
            let expect = match bound {
                Some(b) => b,
                None => free.entry(x.clone()).or_insert_with(|| ty.clone()).clone(),
            };
            if expect != *ty {
                return Err(LambdaError::VarType {
                    name: x.clone(),
                    expected: show(&expect),
                    found: show(ty),
                });
            }
            Ok(ty.clone())
        }
        TypedTerm::Basic(c, ty) => match th.basic(c) {
            None => Err(LambdaError::UnknownBasic(c.clone())),
            Some(d) if d != ty => Err(LambdaError::VarType {
                name: c.clone(),
                expected: show(d),
                found: show(ty),
            }),
            Some(_) => Ok(ty.clone()),
        },
        TypedTerm::App(f, a) => {
            let tf = check(f, th, env, free)?;
            let ta = check(a, th, env, free)?;
            match tf {
                TypeExpr::Hom(x, y) if *x == ta => Ok(*y),
                TypeExpr::Hom(x, _) => Err(LambdaError::AppMismatch {
                    expected: show(&x),
                    found: show(&ta),
                }),
                other => Err(LambdaError::NotFunction(show(&other))),
            }
        }
        TypedTerm::Lam(x, ty, b) => {
            env.push((x.clone(), ty.clone()));
            let tb = check(b, th, env, free);
            env.pop();
            Ok(TypeExpr::hom(ty.clone(), tb?))
        }
        TypedTerm::PairT(a, b) => Ok(TypeExpr::tensor(
            check(a, th, env, free)?,
            check(b, th, env, free)?,
        )),
        TypedTerm::P1(u) | TypedTerm::P2(u) => match check(u, th, env, free)? {
            TypeExpr::Tensor(a, b) => Ok(if matches!(t, TypedTerm::P1(_)) {
                *a
            } else {
                *b
            }),
            other => Err(LambdaError::NotProduct(show(&other))),
        },
        TypedTerm::UnitT => Ok(TypeExpr::Unit),
    }
}

/// Capture-avoiding `t[s/x]`.
pub fn substitute_typed(t: &TypedTerm, x: &str, s: &TypedTerm) -> TypedTerm {
    let fv = s.free_names();
    subst(t, x, s, &fv)
}

fn subst(t: &TypedTerm, x: &str, s: &TypedTerm, fv: &BTreeSet<String>) -> TypedTerm {
    let go = |u: &TypedTerm| subst(u, x, s, fv);
    match t {
        TypedTerm::Var(y, _) if y == x => s.clone(),
        TypedTerm::Var(..) | TypedTerm::Basic(..) | TypedTerm::UnitT => t.clone(),
        TypedTerm::App(a, b) => TypedTerm::app(go(a), go(b)),
        TypedTerm::PairT(a, b) => TypedTerm::pair(go(a), go(b)),
        TypedTerm::P1(u) => TypedTerm::p1(go(u)),
        TypedTerm::P2(u) => TypedTerm::p2(go(u)),
        TypedTerm::Lam(y, ty, b) => {
            if y == x || !b.occurs_free(x) {
                t.clone()
            } else if fv.contains(y) {
                let mut avoid = fv.clone();
                avoid.extend(b.free_names());
                let z = fresh(y, &avoid);
                let zt = TypedTerm::Var(z.clone(), ty.clone());
                let b2 = subst(b, y, &zt, &BTreeSet::from([z.clone()]));
                TypedTerm::lam(z, ty.clone(), subst(&b2, x, s, fv))
            } else {
                TypedTerm::lam(y.clone(), ty.clone(), go(b))
            }
        }
    }
}

/// One leftmost-outermost beta or projection step.
fn step(t: &TypedTerm) -> Option<TypedTerm> {
    match t {
        TypedTerm::App(f, a) => {
            if let TypedTerm::Lam(x, _, b) = &**f {
                return Some(substitute_typed(b, x, a));
            }
            if let Some(f2) = step(f) {
                return Some(TypedTerm::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| TypedTerm::App(f.clone(), Box::new(a2)))
        }
        TypedTerm::P1(u) | TypedTerm::P2(u) => {
            let first = matches!(t, TypedTerm::P1(_));
            if let TypedTerm::PairT(a, b) = &**u {
                return Some(if first { (**a).clone() } else { (**b).clone() });
            }
            step(u).map(|u2| {
                if first {
                    TypedTerm::p1(u2)
                } else {
                    TypedTerm::p2(u2)
                }
            })
        }
        TypedTerm::PairT(a, b) => {
            if let Some(a2) = step(a) {
                return Some(TypedTerm::PairT(Box::new(a2), b.clone()));
            }
            step(b).map(|b2| TypedTerm::PairT(a.clone(), Box::new(b2)))
        }
        TypedTerm::Lam(x, ty, b) => step(b).map(|b2| TypedTerm::lam(x.clone(), ty.clone(), b2)),
        TypedTerm::Var(..) | TypedTerm::Basic(..) | TypedTerm::UnitT => None,
    }
}

/// Beta/projection normal form, or `None` when fuel runs out.
pub fn beta_normal(t: &TypedTerm, fuel: usize) -> Option<TypedTerm> {
    if t.size() > MAX_TYPED_SIZE {
        return None;
    }
    let mut cur = t.clone();
    for _ in 0..=fuel {
        match step(&cur) {
            None => return Some(cur),
            Some(n) => {
                if n.size() > MAX_TYPED_SIZE {
                    return None;
                }
                cur = n;
            }
        }
    }
    None
}

/// Eta-long form of a beta-normal term at type `ty`: functions become lambdas,
/// products become pairs and every term of type 1 becomes `()`.
fn long(t: TypedTerm, ty: &TypeExpr, avoid: &mut BTreeSet<String>) -> TypedTerm {
    match ty {
        TypeExpr::Unit => TypedTerm::UnitT,
        TypeExpr::Hom(a, b) => match t {
            TypedTerm::Lam(x, xt, body) => {
                avoid.insert(x.clone());
                TypedTerm::lam(x, xt, long(*body, b, avoid))
            }
            n => {
                let x = fresh("x", avoid);
                avoid.insert(x.clone());
                let arg = long(TypedTerm::Var(x.clone(), (**a).clone()), a, avoid);
                TypedTerm::lam(x, (**a).clone(), long(TypedTerm::app(n, arg), b, avoid))
            }
        },
        TypeExpr::Tensor(a, b) => match t {
            TypedTerm::PairT(l, r) => TypedTerm::pair(long(*l, a, avoid), long(*r, b, avoid)),
            n => TypedTerm::pair(
                long(TypedTerm::p1(n.clone()), a, avoid),
                long(TypedTerm::p2(n), b, avoid),
            ),
        },
        _ => neutral(t, avoid),
    }
}

fn neutral(t: TypedTerm, avoid: &mut BTreeSet<String>) -> TypedTerm {
    match t {
        TypedTerm::App(f, a) => {
            let dom = match f.type_of() {
                TypeExpr::Hom(x, _) => *x,
                other => other,
            };
            let f2 = neutral(*f, avoid);
            TypedTerm::app(f2, long(*a, &dom, avoid))
        }
        TypedTerm::P1(u) => TypedTerm::p1(neutral(*u, avoid)),
        TypedTerm::P2(u) => TypedTerm::p2(neutral(*u, avoid)),
        other => other,
    }
}

/// Renames binders by depth so alpha-equivalent terms are identical.
fn canonical(t: &TypedTerm) -> TypedTerm {
    fn go(t: &TypedTerm, env: &mut Vec<(String, String)>) -> TypedTerm {
        match t {
            TypedTerm::Var(x, ty) => match env.iter().rev().find(|(o, _)| o == x) {
                Some((_, n)) => TypedTerm::Var(n.clone(), ty.clone()),
                None => t.clone(),
            },
            TypedTerm::Basic(..) | TypedTerm::UnitT => t.clone(),
            TypedTerm::App(a, b) => TypedTerm::app(go(a, env), go(b, env)),
            TypedTerm::PairT(a, b) => TypedTerm::pair(go(a, env), go(b, env)),
            TypedTerm::P1(u) => TypedTerm::p1(go(u, env)),
            TypedTerm::P2(u) => TypedTerm::p2(go(u, env)),
            TypedTerm::Lam(x, ty, b) => {
                // `#` cannot occur in parsed names
                let n = format!("#{}", env.len());
                env.push((x.clone(), n.clone()));
                let r = TypedTerm::lam(n, ty.clone(), go(b, env));
                env.pop();
                r
            }
        }
    }
    go(t, &mut Vec::new())
}

/// Beta-normal eta-long form with binders renamed canonically, or `None` when fuel runs out.
pub fn normalize_typed(t: &TypedTerm, fuel: usize) -> Option<TypedTerm> {
    let b = beta_normal(t, fuel)?;
    let mut avoid: BTreeSet<String> = b.free_names();
    Some(canonical(&long(b, &t.type_of(), &mut avoid)))
}

/// Decides `t1 ~_S t2`.
pub fn equiv_typed(
    t1: &TypedTerm,
    t2: &TypedTerm,
    scope: &BTreeSet<String>,
    th: &LambdaTheory,
    fuel: usize,
) -> Result<Equiv, LambdaError> {
    let ty1 = typecheck(t1, th)?;
    let ty2 = typecheck(t2, th)?;
    if ty1 != ty2 {
        return Err(LambdaError::TypeMismatch {
            lhs: show(&ty1),
            rhs: show(&ty2),
        });
    }
    let (f1, f2) = (t1.free_vars(), t2.free_vars());
    for (x, ty) in f1.iter().chain(f2.iter()) {
        if !scope.contains(x) {
            return Err(LambdaError::FreeVariable(x.clone()));
        }
        for other in [&f1, &f2] {
            if let Some(o) = other.get(x) {
                if o != ty {
                    return Err(LambdaError::VarType {
                        name: x.clone(),
                        expected: show(o),
                        found: show(ty),
                    });
                }
            }
        }
    }
    let (Some(n1), Some(n2)) = (normalize_typed(t1, fuel), normalize_typed(t2, fuel)) else {
        return Ok(Equiv::Unknown(format!(
            "normalization ran out of fuel ({} steps)",
            fuel
        )));
    };
    Ok(if n1 == n2 {
        Equiv::Equal
    } else {
        Equiv::NotEqual
    })
}
