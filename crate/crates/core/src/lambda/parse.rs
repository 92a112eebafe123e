use alloc::string::String;
use alloc::vec::Vec;

use super::typed::{LambdaTheory, TypedTerm};
use super::untyped::{church_encode, substitute, Term};
use super::LambdaError;
use crate::kernel::{lex, type_checked, Cursor, KernelError, Tok, TypeExpr, TypeScope};

const KEYWORDS: &[&str] = &["def", "basic", "obj", "alias", "p1", "p2"];

fn is_keyword(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Ident(w)) if KEYWORDS.contains(&w.as_str()) && w != "p1" && w != "p2")
}

fn starts_atom(t: Option<&Tok>) -> bool {
    match t {
        Some(Tok::Ident(_)) => !is_keyword(t),
        Some(Tok::Num(_)) => true,
        Some(Tok::Sym(s)) => matches!(*s, "(" | "\\"),
        _ => false,
    }
}

fn binder_name(c: &mut Cursor) -> Result<String, KernelError> {
    let x = c.ident()?;
    if KEYWORDS.contains(&x.as_str()) {
        return Err(c.err("keyword used as a variable"));
    }
    Ok(x)
}

struct Untyped {
    bound: Vec<String>,
}

impl Untyped {
    fn term(&mut self, c: &mut Cursor) -> Result<Term, LambdaError> {
        if c.eat_sym("\\") {
            let mut xs = Vec::new();
            while !c.is_sym(".") {
                xs.push(binder_name(c)?);
            }
            if xs.is_empty() {
                return Err(c.err("expected a bound variable").into());
            }
            c.expect_sym(".")?;
            let n = self.bound.len();
            self.bound.extend(xs.iter().cloned());
            let body = self.term(c);
            self.bound.truncate(n);
            return Ok(xs.into_iter().rev().fold(body?, |b, x| Term::lam(x, b)));
        }
        let mut acc = self.atom(c)?;
        while starts_atom(c.peek()) {
            let a = self.atom(c)?;
            acc = Term::app(acc, a);
        }
        Ok(acc)
    }

    fn atom(&mut self, c: &mut Cursor) -> Result<Term, LambdaError> {
        match c.peek().cloned() {
            Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str()) => {
                c.bump();
                Ok(Term::Var(x))
            }
            Some(Tok::Num(n)) => {
                c.bump();
                let k: u64 = n.parse().map_err(|_| c.err("numeral out of range"))?;
                Ok(church_encode(k))
            }
            Some(Tok::Sym("(")) => {
                c.bump();
                let t = self.term(c)?;
                c.expect_sym(")")?;
                Ok(t)
            }
            Some(Tok::Sym("\\")) => self.term(c),
            _ => Err(c.err("expected a term").into()),
        }
    }
}

fn expand(mut t: Term, defs: &[(String, Term)]) -> Term {
    for (name, body) in defs.iter().rev() {
        if t.occurs_free(name) {
            t = substitute(&t, name, body);
        }
    }
    t
}

/// Parses an untyped term. Numerals stand for Church numerals.
pub fn parse_untyped(src: &str) -> Result<Term, LambdaError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let t = Untyped { bound: Vec::new() }.term(&mut c)?;
    c.finish()?;
    Ok(t)
}

/// Parses `def NAME = term` declarations. Earlier definitions are expanded in later ones.
pub fn parse_untyped_file(src: &str) -> Result<Vec<(String, Term)>, LambdaError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let mut defs: Vec<(String, Term)> = Vec::new();
    while !c.at_end() {
        if !matches!(c.peek(), Some(Tok::Ident(w)) if w == "def") {
            return Err(c.err("expected `def`").into());
        }
        c.bump();
        let name = binder_name(&mut c)?;
        c.expect_sym("=")?;
        if defs.iter().any(|(d, _)| *d == name) {
            return Err(KernelError::Duplicate(name).into());
        }
        let t = Untyped { bound: Vec::new() }.term(&mut c)?;
        let t = expand(t, &defs);
        defs.push((name, t));
    }
    Ok(defs)
}

struct Typed<'a> {
    th: &'a LambdaTheory,
    defs: &'a [(String, TypedTerm)],
    bound: Vec<(String, TypeExpr)>,
}

impl Typed<'_> {
    fn ty(&self, c: &mut Cursor) -> Result<TypeExpr, LambdaError> {
        Ok(type_checked(
            c,
            TypeScope {
                sig: &self.th.types,
                free: false,
            },
        )?)
    }

    fn term(&mut self, c: &mut Cursor) -> Result<TypedTerm, LambdaError> {
        if c.eat_sym("\\") {
            let x = binder_name(c)?;
            c.expect_sym(":")?;
            let ty = self.ty(c)?;
            c.expect_sym(".")?;
            self.bound.push((x.clone(), ty.clone()));
            let body = self.term(c);
            self.bound.pop();
            return Ok(TypedTerm::lam(x, ty, body?));
        }
        let mut acc = self.atom(c)?;
        while starts_atom(c.peek())
            || matches!(c.peek(), Some(Tok::Ident(w)) if w == "p1" || w == "p2")
        {
            let a = self.atom(c)?;
            acc = TypedTerm::app(acc, a);
        }
        Ok(acc)
    }

    fn atom(&mut self, c: &mut Cursor) -> Result<TypedTerm, LambdaError> {
        match c.peek().cloned() {
            Some(Tok::Ident(w)) if w == "p1" || w == "p2" => {
                c.bump();
                let u = self.atom(c)?;
                Ok(if w == "p1" {
                    TypedTerm::p1(u)
                } else {
                    TypedTerm::p2(u)
                })
            }
            Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str()) => {
                c.bump();
                if let Some((_, ty)) = self.bound.iter().rev().find(|(y, _)| *y == x) {
                    return Ok(TypedTerm::var(x, ty.clone()));
                }
                if let Some((_, d)) = self.defs.iter().find(|(n, _)| *n == x) {
                    return Ok(d.clone());
                }
                if let Some(ty) = self.th.basic(&x) {
                    return Ok(TypedTerm::basic(x, ty.clone()));
                }
                Err(LambdaError::Unbound(x))
            }
            Some(Tok::Sym("(")) => {
                c.bump();
                if c.eat_sym(")") {
                    return Ok(TypedTerm::UnitT);
                }
                let a = self.term(c)?;
                if c.eat_sym(",") {
                    let b = self.term(c)?;
                    c.expect_sym(")")?;
                    return Ok(TypedTerm::pair(a, b));
                }
                c.expect_sym(")")?;
                Ok(a)
            }
            Some(Tok::Sym("\\")) => self.term(c),
            _ => Err(c.err("expected a term").into()),
        }
    }
}

/// Parses a typed term over `th`; every identifier must be bound or a basic term.
pub fn parse_typed(src: &str, th: &LambdaTheory) -> Result<TypedTerm, LambdaError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let t = Typed {
        th,
        defs: &[],
        bound: Vec::new(),
    }
    .term(&mut c)?;
    c.finish()?;
    Ok(t)
}

/// A typed source file: its theory and its definitions in order.
#[derive(Clone, Debug)]
pub struct TypedFile {
    pub theory: LambdaTheory,
    pub defs: Vec<(String, TypedTerm)>,
}

/// Parses `obj`, `alias N = T`, `basic c : T` and `def NAME = term` declarations.
pub fn parse_typed_file(src: &str) -> Result<TypedFile, LambdaError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let mut th = LambdaTheory::new();
    let mut defs: Vec<(String, TypedTerm)> = Vec::new();
    while !c.at_end() {
        let kw = match c.peek() {
            Some(Tok::Ident(w)) if is_keyword(Some(&Tok::Ident(w.clone()))) => w.clone(),
            _ => String::new(),
        };
        match kw.as_str() {
            "obj" => {
                c.bump();
                while let Some(Tok::Ident(n)) = c.peek().cloned() {
                    if KEYWORDS.contains(&n.as_str()) {
                        break;
                    }
                    c.bump();
                    th.add_type(&n);
                }
            }
            "alias" => {
                c.bump();
                let n = binder_name(&mut c)?;
                c.expect_sym("=")?;
                let ty = type_checked(
                    &mut c,
                    TypeScope {
                        sig: &th.types,
                        free: false,
                    },
                )?;
                if th.types.alias(&n).is_some() || th.types.has_object(&n) {
                    return Err(KernelError::Duplicate(n).into());
                }
                th.types.aliases.push((n, ty));
            }
            "basic" => {
                c.bump();
                let n = binder_name(&mut c)?;
                c.expect_sym(":")?;
                let ty = type_checked(
                    &mut c,
                    TypeScope {
                        sig: &th.types,
                        free: false,
                    },
                )?;
                if th.basic(&n).is_some() {
                    return Err(KernelError::Duplicate(n).into());
                }
                th.add_basic(&n, ty);
            }
            "def" => {
                c.bump();
                let name = binder_name(&mut c)?;
                c.expect_sym("=")?;
                if defs.iter().any(|(d, _)| *d == name) {
                    return Err(KernelError::Duplicate(name).into());
                }
                let t = Typed {
                    th: &th,
                    defs: &defs,
                    bound: Vec::new(),
                }
                .term(&mut c)?;
                defs.push((name, t));
            }
            _ => return Err(c.err("expected `obj`, `alias`, `basic` or `def`").into()),
        }
    }
    Ok(TypedFile { theory: th, defs })
}
