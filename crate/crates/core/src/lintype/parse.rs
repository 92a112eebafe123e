use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::syntax::{lin_typecheck, Combinator, LinTerm, LinType, BASIC_COMBINATORS};
use super::theory::{kernel_to_theory, theory_to_kernel, LinTheory};
use super::LinError;
use crate::kernel::{
    lex, parse_signature, type_atom_checked, type_checked, Cursor, Mode, Signature, Tok, TypeExpr,
    TypeScope,
};

/// A combinator before its basic combinators have their types.
enum Raw {
    Basic(String, Option<Vec<LinType>>),
    Known(Combinator),
    Comp(Box<Raw>, Box<Raw>),
    Tensor(Box<Raw>, Box<Raw>),
    Curry(Box<Raw>),
}

fn basic_name(n: &str) -> Option<&'static str> {
    if n == "ev" {
        return Some("eval");
    }
    BASIC_COMBINATORS.iter().copied().find(|b| *b == n)
}

fn arity(name: &str) -> usize {
    match name {
        "assoc" | "unassoc" => 3,
        "braid" | "eval" => 2,
        _ => 1,
    }
}

fn show(t: &LinType) -> String {
    format!("{}", t.display_in(Mode::ClosedSymmetric))
}

fn split(t: &LinType) -> Option<(LinType, LinType)> {
    match t {
        TypeExpr::Tensor(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    }
}

/// Subscripts of a basic combinator read off its domain.
fn infer(name: &str, dom: &LinType) -> Option<Vec<LinType>> {
    let v = |xs: &[&LinType]| Some(xs.iter().map(|t| (*t).clone()).collect());
    match name {
        "id" | "unleft" | "unright" => v(&[dom]),
        "braid" => split(dom).and_then(|(x, y)| v(&[&x, &y])),
        "assoc" => {
            let (xy, z) = split(dom)?;
            let (x, y) = split(&xy)?;
            v(&[&x, &y, &z])
        }
        "unassoc" => {
            let (x, yz) = split(dom)?;
            let (y, z) = split(&yz)?;
            v(&[&x, &y, &z])
        }
        "left" => match split(dom)? {
            (TypeExpr::Unit, x) => v(&[&x]),
            _ => None,
        },
        "right" => match split(dom)? {
            (x, TypeExpr::Unit) => v(&[&x]),
            _ => None,
        },
        "eval" => match split(dom)? {
            (x, TypeExpr::Hom(x2, y)) if *x2 == x => v(&[&x, &y]),
            _ => None,
        },
        _ => None,
    }
}

fn build(name: &str, ts: Vec<LinType>) -> Combinator {
    let mut it = ts.into_iter();
    let mut nx = || it.next().expect("arity checked");
    match name {
        "id" => Combinator::Id(nx()),
        "assoc" => Combinator::Assoc(nx(), nx(), nx()),
        "unassoc" => Combinator::Unassoc(nx(), nx(), nx()),
        "braid" => Combinator::Braid(nx(), nx()),
        "left" => Combinator::Left(nx()),
        "unleft" => Combinator::Unleft(nx()),
        "right" => Combinator::Right(nx()),
        "unright" => Combinator::Unright(nx()),
        _ => Combinator::Eval(nx(), nx()),
    }
}

/// Fills in missing subscripts, given the domain when it is known.
fn resolve(raw: Raw, dom: Option<&LinType>) -> Result<Combinator, LinError> {
    Ok(match raw {
        Raw::Known(c) => c,
        Raw::Basic(name, Some(ts)) => build(&name, ts),
        Raw::Basic(name, None) => {
            let Some(d) = dom else {
                return Err(LinError::Infer(format!(
                    "`{}` needs explicit types here, as in `{}[...]`",
                    name, name
                )));
            };
            let ts = infer(&name, d).ok_or_else(|| {
                LinError::Infer(format!("`{}` does not apply to type {}", name, show(d)))
            })?;
            build(&name, ts)
        }
        Raw::Comp(g, f) => {
            let f = resolve(*f, dom)?;
            let (_, mid) = f.dom_cod()?;
            Combinator::comp(resolve(*g, Some(&mid))?, f)
        }
        Raw::Tensor(f, g) => {
            let parts = dom.and_then(split);
            let (a, b) = match &parts {
                Some((a, b)) => (Some(a), Some(b)),
                None => (None, None),
            };
            Combinator::tensor(resolve(*f, a)?, resolve(*g, b)?)
        }
        Raw::Curry(f) => Combinator::curry(resolve(*f, None)?),
    })
}

struct P<'a> {
    th: &'a LinTheory,
    sig: Signature,
}

impl P<'_> {
    fn scope(&self) -> TypeScope<'_> {
        TypeScope {
            sig: &self.sig,
            free: false,
        }
    }

    /// `;` is diagrammatic composition, `∘` the applicative one.
    fn comb(&self, c: &mut Cursor) -> Result<Raw, LinError> {
        let mut acc = self.comp(c)?;
        while c.eat_sym(";") {
            let next = self.comp(c)?;
            acc = Raw::Comp(Box::new(next), Box::new(acc));
        }
        Ok(acc)
    }

    fn comp(&self, c: &mut Cursor) -> Result<Raw, LinError> {
        let g = self.tensor(c)?;
        if c.eat_sym("∘") {
            let f = self.comp(c)?;
            return Ok(Raw::Comp(Box::new(g), Box::new(f)));
        }
        Ok(g)
    }

    fn tensor(&self, c: &mut Cursor) -> Result<Raw, LinError> {
        let mut acc = self.catom(c)?;
        while c.eat_sym("*") {
            let r = self.catom(c)?;
            acc = Raw::Tensor(Box::new(acc), Box::new(r));
        }
        Ok(acc)
    }

    fn catom(&self, c: &mut Cursor) -> Result<Raw, LinError> {
        if c.eat_sym("(") {
            let r = self.comb(c)?;
            c.expect_sym(")")?;
            return Ok(r);
        }
        let n = c.ident()?;
        if n == "curry" {
            c.expect_sym("(")?;
            let r = self.comb(c)?;
            c.expect_sym(")")?;
            return Ok(Raw::Curry(Box::new(r)));
        }
        if let Some(b) = basic_name(&n) {
            if !c.eat_sym("[") {
                return Ok(Raw::Basic(b.into(), None));
            }
            let mut ts = Vec::new();
            loop {
                ts.push(type_checked(c, self.scope())?);
                if !c.eat_sym(",") {
                    break;
                }
            }
            c.expect_sym("]")?;
            if ts.len() != arity(b) {
                return Err(c.err(format!("`{}` takes {} types", b, arity(b))).into());
            }
            return Ok(Raw::Basic(b.into(), Some(ts)));
        }
        self.th
            .function(&n)
            .map(Raw::Known)
            .ok_or(LinError::Kernel(crate::kernel::KernelError::UnknownGenerator(n)))
    }

    fn sep(&self, c: &mut Cursor) -> bool {
        if c.eat_sym("*") {
            return true;
        }
        if c.is_sym("(")
            && matches!(c.peek_at(1), Some(Tok::Ident(x)) if x == "x")
            && c.peek_at(2) == Some(&Tok::Sym(")"))
        {
            c.bump();
            c.bump();
            c.bump();
            return true;
        }
        false
    }

    /// `s` or `s (x) t` up to a closing parenthesis.
    fn inner(&self, c: &mut Cursor) -> Result<LinTerm, LinError> {
        let s = self.term(c)?;
        if self.sep(c) {
            let t = self.term(c)?;
            return Ok(LinTerm::tensor(s, t));
        }
        Ok(s)
    }

    fn term(&self, c: &mut Cursor) -> Result<LinTerm, LinError> {
        match c.peek().cloned() {
            Some(Tok::Num(n)) if n == "1" => {
                c.bump();
                return Ok(LinTerm::One);
            }
            Some(Tok::Ident(x)) if c.peek_at(1) == Some(&Tok::Sym(":")) => {
                c.bump();
                c.bump();
                let ty = type_atom_checked(c, self.scope())?;
                return Ok(LinTerm::var(x, ty));
            }
            Some(Tok::Sym("(")) => {
                let mark = c.mark();
                c.bump();
                if let Ok(t) = self.inner(c) {
                    if c.eat_sym(")") {
                        return Ok(t);
                    }
                }
                c.reset(mark);
            }
            _ => {}
        }
        let raw = self.catom(c)?;
        c.expect_sym("(")?;
        let arg = self.inner(c)?;
        c.expect_sym(")")?;
        let dom = lin_typecheck(&arg)?;
        Ok(LinTerm::apply(resolve(raw, Some(&dom))?, arg))
    }
}

/// Parses a term such as `braid(x:X (x) f(y:Y (x) z:Z))`. Variables carry
/// their types; `(x)`, `*` and `⊗` all separate tensor factors. Basic
/// combinators without subscripts take them from their argument.
pub fn parse_lin_term(src: &str, th: &LinTheory) -> Result<LinTerm, LinError> {
    let p = P {
        th,
        sig: theory_to_kernel(th),
    };
    let mut c = Cursor::new(lex(src, 1)?);
    let t = p.term(&mut c)?;
    c.finish()?;
    lin_typecheck(&t)?;
    Ok(t)
}

/// Parses a combinator such as `braid[X, Y] ∘ (id[X] * f)` or the diagrammatic
/// `f ; g`. Subscripts are needed where the domain cannot be inferred.
pub fn parse_combinator(src: &str, th: &LinTheory) -> Result<Combinator, LinError> {
    let p = P {
        th,
        sig: theory_to_kernel(th),
    };
    let mut c = Cursor::new(lex(src, 1)?);
    let raw = p.comb(&mut c)?;
    c.finish()?;
    let comb = resolve(raw, None)?;
    comb.dom_cod()?;
    Ok(comb)
}

/// Reads a theory from the signature format; the mode must be at most
/// closed-symmetric.
pub fn parse_lin_theory(src: &str) -> Result<LinTheory, LinError> {
    kernel_to_theory(&parse_signature(src)?)
}
