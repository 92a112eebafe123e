use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::typed::{equiv_typed, substitute_typed, typecheck, LambdaTheory, TypedTerm};
use super::untyped::fresh;
use super::{Equiv, LambdaError};
use crate::kernel::{infer_dom_cod, Mode, MorTerm, Signature, TypeExpr};

/// A morphism of the syntactic category: a variable `x : dom` and a term whose
/// only free variable is `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambekMor {
    pub var: String,
    pub dom: TypeExpr,
    pub body: TypedTerm,
    pub cod: TypeExpr,
}

/// The cartesian closed category of a typed lambda theory.
#[derive(Clone, Debug)]
pub struct LambekCategory<'a> {
    pub theory: &'a LambdaTheory,
    pub fuel: usize,
}

pub fn lambda_to_ccc(th: &LambdaTheory) -> LambekCategory<'_> {
    LambekCategory {
        theory: th,
        fuel: 10_000,
    }
}

impl LambekCategory<'_> {
    pub fn mor_of(&self, x: &str, dom: &TypeExpr, t: &TypedTerm) -> Result<LambekMor, LambdaError> {
        let cod = typecheck(t, self.theory)?;
        for (y, ty) in t.free_vars() {
            if y != x {
                return Err(LambdaError::FreeVariable(y));
            }
            if ty != *dom {
                return Err(LambdaError::VarType {
                    name: y,
                    expected: format!("{}", dom.display_in(Mode::CartesianClosed)),
                    found: format!("{}", ty.display_in(Mode::CartesianClosed)),
                });
            }
        }
        Ok(LambekMor {
            var: x.to_string(),
            dom: dom.clone(),
            body: t.clone(),
            cod,
        })
    }

    pub fn identity(&self, dom: &TypeExpr) -> LambekMor {
        LambekMor {
            var: "x".into(),
            dom: dom.clone(),
            body: TypedTerm::var("x", dom.clone()),
            cod: dom.clone(),
        }
    }

    /// `f` then `g`: the pair `(x, u[t/y])`.
    pub fn compose(&self, f: &LambekMor, g: &LambekMor) -> Result<LambekMor, LambdaError> {
        if f.cod != g.dom {
            return Err(LambdaError::TypeMismatch {
                lhs: format!("{}", f.cod.display_in(Mode::CartesianClosed)),
                rhs: format!("{}", g.dom.display_in(Mode::CartesianClosed)),
            });
        }
        Ok(LambekMor {
            var: f.var.clone(),
            dom: f.dom.clone(),
            body: substitute_typed(&g.body, &g.var, &f.body),
            cod: g.cod.clone(),
        })
    }

    /// `(x, t) = (x', t')` iff `t ~_{x} t'[x/x']`.
    pub fn equal(&self, f: &LambekMor, g: &LambekMor) -> Result<Equiv, LambdaError> {
        if f.dom != g.dom || f.cod != g.cod {
            return Ok(Equiv::NotEqual);
        }
        let renamed = substitute_typed(
            &g.body,
            &g.var,
            &TypedTerm::var(f.var.clone(), f.dom.clone()),
        );
        equiv_typed(
            &f.body,
            &renamed,
            &BTreeSet::from([f.var.clone()]),
            self.theory,
            self.fuel,
        )
    }
}

/// Context `y_n : A_n, ..., y_1 : A_1, x : X` as the object `A_n * (... * (A_1 * X))`.
struct Ctx {
    vars: Vec<(String, TypeExpr)>,
}

impl Ctx {
    fn ty(&self, upto: usize) -> TypeExpr {
        let mut t = self.vars[0].1.clone();
        for (_, a) in &self.vars[1..upto] {
            t = TypeExpr::tensor(a.clone(), t);
        }
        t
    }

    fn whole(&self) -> TypeExpr {
        self.ty(self.vars.len())
    }

    fn lookup(&self, x: &str) -> Option<MorTerm> {
        let i = self.vars.iter().rposition(|(y, _)| y == x)?;
        let n = self.vars.len();
        let mut m = MorTerm::Id(self.whole());
        for k in (i + 1..n).rev() {
            let rest = self.ty(k);
            m = m.then(MorTerm::Proj2(self.vars[k].1.clone(), rest));
        }
        if i > 0 {
            m = m.then(MorTerm::Proj1(self.vars[i].1.clone(), self.ty(i)));
        }
        Some(m)
    }
}

/// Compiles the pair `(x, t)` to a cartesian-closed morphism `X -> type(t)`.
///
/// Variables become projections out of the context, pairs `Pair` (`Dup` when
/// both sides are the same identity), application
/// `Pair(arg, fun) ; Ev` and abstraction `Curry`. Basic terms must be generators
/// `c : 1 -> T` of `sig`.
pub fn typed_to_kernel(
    x: &str,
    x_ty: &TypeExpr,
    t: &TypedTerm,
    sig: &Signature,
) -> Result<MorTerm, LambdaError> {
    if sig.mode != Mode::CartesianClosed {
        return Err(LambdaError::Mode(sig.mode));
    }
    let mut ctx = Ctx {
        vars: Vec::from([(x.to_string(), x_ty.clone())]),
    };
    compile(t, &mut ctx, sig).map(|(m, _)| m)
}

/// Compiles a closed term to a morphism `1 -> type(t)`.
pub fn closed_to_kernel(t: &TypedTerm, sig: &Signature) -> Result<MorTerm, LambdaError> {
    // `#` cannot be written in source, so no variable can refer to the context
    typed_to_kernel("#", &TypeExpr::Unit, t, sig)
}

fn compile(
    t: &TypedTerm,
    ctx: &mut Ctx,
    sig: &Signature,
) -> Result<(MorTerm, TypeExpr), LambdaError> {
    let g = ctx.whole();
    Ok(match t {
        TypedTerm::Var(x, ty) => (
            ctx.lookup(x)
                .ok_or_else(|| LambdaError::FreeVariable(x.clone()))?,
            ty.clone(),
        ),
        TypedTerm::Basic(c, ty) => match sig.generator(c) {
            Some(gen) if gen.dom == TypeExpr::Unit && gen.cod == *ty => (
                MorTerm::seq(MorTerm::Del(g), MorTerm::gen(c.clone())),
                ty.clone(),
            ),
            _ => return Err(LambdaError::UnmappedBasic(c.clone())),
        },
        TypedTerm::UnitT => (MorTerm::Del(g), TypeExpr::Unit),
        TypedTerm::PairT(a, b) => {
            let (ma, ta) = compile(a, ctx, sig)?;
            let (mb, tb) = compile(b, ctx, sig)?;
            let m = match (&ma, &mb) {
                (MorTerm::Id(x), MorTerm::Id(y)) if x == y => MorTerm::Dup(x.clone()),
                _ => MorTerm::pair(ma, mb),
            };
            (m, TypeExpr::tensor(ta, tb))
        }
        TypedTerm::P1(u) | TypedTerm::P2(u) => {
            let (mu, tu) = compile(u, ctx, sig)?;
            let TypeExpr::Tensor(a, b) = tu else {
                return Err(LambdaError::NotProduct(format!(
                    "{}",
                    tu.display_in(Mode::CartesianClosed)
                )));
            };
            if matches!(t, TypedTerm::P1(_)) {
                (MorTerm::seq(mu, MorTerm::Proj1(*a.clone(), *b)), *a)
            } else {
                (MorTerm::seq(mu, MorTerm::Proj2(*a, *b.clone())), *b)
            }
        }
        TypedTerm::App(f, a) => {
            let (mf, tf) = compile(f, ctx, sig)?;
            let (ma, _) = compile(a, ctx, sig)?;
            let TypeExpr::Hom(x, y) = tf else {
                return Err(LambdaError::NotFunction(format!(
                    "{}",
                    tf.display_in(Mode::CartesianClosed)
                )));
            };
            (
                MorTerm::seq(MorTerm::pair(ma, mf), MorTerm::Ev(*x, *y.clone())),
                *y,
            )
        }
        TypedTerm::Lam(y, a, b) => {
            ctx.vars.push((y.clone(), a.clone()));
            let r = compile(b, ctx, sig);
            ctx.vars.pop();
            let (mb, tb) = r?;
            (MorTerm::curry(mb), TypeExpr::hom(a.clone(), tb))
        }
    })
}

/// Reads a cartesian-closed morphism back as a term in the variable `input`.
///
/// Covers the structural constructors and generators `c : 1 -> T`; this inverts
/// [`typed_to_kernel`] up to the term equivalence.
pub fn kernel_to_typed(
    m: &MorTerm,
    input: &TypedTerm,
    sig: &Signature,
) -> Result<TypedTerm, LambdaError> {
    let dom =
        |f: &MorTerm| -> Result<(TypeExpr, TypeExpr), LambdaError> { Ok(infer_dom_cod(f, sig)?) };
    let fresh_var = |avoid: &TypedTerm| fresh("a", &avoid.free_vars().into_keys().collect());
    let i = input.clone();
    Ok(match m {
        MorTerm::Id(_) => i,
        MorTerm::Seq(f, h) => {
            let mid = kernel_to_typed(f, &i, sig)?;
            if matches!(mid, TypedTerm::Var(..)) {
                kernel_to_typed(h, &mid, sig)?
            } else {
                // bind the intermediate value so `h` can use it more than once
                let cod = dom(f)?.1;
                let v = fresh_var(&mid);
                let body = kernel_to_typed(h, &TypedTerm::var(v.clone(), cod.clone()), sig)?;
                TypedTerm::app(TypedTerm::lam(v, cod, body), mid)
            }
        }
        MorTerm::Par(f, h) => TypedTerm::pair(
            kernel_to_typed(f, &TypedTerm::p1(i.clone()), sig)?,
            kernel_to_typed(h, &TypedTerm::p2(i), sig)?,
        ),
        MorTerm::Assoc(..) => TypedTerm::pair(
            TypedTerm::p1(TypedTerm::p1(i.clone())),
            TypedTerm::pair(TypedTerm::p2(TypedTerm::p1(i.clone())), TypedTerm::p2(i)),
        ),
        MorTerm::Unassoc(..) => TypedTerm::pair(
            TypedTerm::pair(
                TypedTerm::p1(i.clone()),
                TypedTerm::p1(TypedTerm::p2(i.clone())),
            ),
            TypedTerm::p2(TypedTerm::p2(i)),
        ),
        MorTerm::LeftU(_) => TypedTerm::p2(i),
        MorTerm::UnleftU(_) => TypedTerm::pair(TypedTerm::UnitT, i),
        MorTerm::RightU(_) => TypedTerm::p1(i),
        MorTerm::UnrightU(_) => TypedTerm::pair(i, TypedTerm::UnitT),
        MorTerm::Braid(..) | MorTerm::BraidInv(..) => {
            TypedTerm::pair(TypedTerm::p2(i.clone()), TypedTerm::p1(i))
        }
        MorTerm::Dup(_) => TypedTerm::pair(i.clone(), i),
        MorTerm::Del(_) => TypedTerm::UnitT,
        MorTerm::Pair(f, h) => {
            TypedTerm::pair(kernel_to_typed(f, &i, sig)?, kernel_to_typed(h, &i, sig)?)
        }
        MorTerm::Proj1(..) => TypedTerm::p1(i),
        MorTerm::Proj2(..) => TypedTerm::p2(i),
        MorTerm::Ev(..) => TypedTerm::app(TypedTerm::p2(i.clone()), TypedTerm::p1(i)),
        MorTerm::Curry(f) => {
            let TypeExpr::Tensor(a, _) = dom(f)?.0 else {
                return Err(LambdaError::Unsupported(format!("{}", m)));
            };
            let v = fresh_var(&i);
            let arg = TypedTerm::pair(TypedTerm::var(v.clone(), (*a).clone()), i);
            TypedTerm::lam(v, *a, kernel_to_typed(f, &arg, sig)?)
        }
        MorTerm::Uncurry(f) => TypedTerm::app(
            kernel_to_typed(f, &TypedTerm::p2(i.clone()), sig)?,
            TypedTerm::p1(i),
        ),
        MorTerm::Name(f) => {
            let a = dom(f)?.0;
            let v = fresh_var(&i);
            TypedTerm::lam(
                v.clone(),
                a.clone(),
                kernel_to_typed(f, &TypedTerm::var(v, a), sig)?,
            )
        }
        MorTerm::Gen(c) => match sig.generator(c) {
            Some(g) if g.dom == TypeExpr::Unit => TypedTerm::basic(c.clone(), g.cod.clone()),
            _ => return Err(LambdaError::UnmappedBasic(c.clone())),
        },
        MorTerm::Cup(_) | MorTerm::Cap(_) => {
            return Err(LambdaError::Unsupported(format!("{}", m)))
        }
    })
}
