use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::infer::{check_ctor, check_type};
use super::signature::Signature;
use super::term::MorTerm;
use super::types::{Ctor, Mode, TypeExpr};
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMS: &[(&str, &str)] = &[
    ("|-", "|-"),
    ("->", "->"),
    ("-o", "-o"),
    ("⊢", "|-"),
    ("⊸", "-o"),
    ("⊗", "*"),
    ("∘", "∘"),
    ("λ", "\\"),
    ("*", "*"),
    (";", ";"),
    ("(", "("),
    (")", ")"),
    ("[", "["),
    ("]", "]"),
    (",", ","),
    ("^", "^"),
    (":", ":"),
    ("=", "="),
    (".", "."),
    ("\\", "\\"),
];

fn ident_start(c: char) -> bool {
    c.is_alphabetic() && c != 'λ' || c == '_'
}

fn ident_continue(c: char) -> bool {
    (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\''
}

/// Tokenizes `src`; `#` starts a comment running to end of line.
pub(crate) fn lex(src: &str, line0: usize) -> Result<Vec<Token>, KernelError> {
    let mut out = Vec::new();
    let mut line = line0;
    let mut col = 1;
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        let (l, cl) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            rest = &rest[1..];
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '#' {
            let end = rest.find('\n').unwrap_or(rest.len());
            rest = &rest[end..];
            continue;
        }
        if c == '"' {
            let body = &rest[1..];
            let end = body.find('"').ok_or(KernelError::Syntax {
                line: l,
                col: cl,
                msg: "unterminated string".into(),
            })?;
            let s = &body[..end];
            out.push(Token {
                tok: Tok::Str(s.to_string()),
                line: l,
                col: cl,
            });
            line += s.matches('\n').count();
            col += s.chars().count() + 2;
            rest = &body[end + 1..];
            continue;
        }
        if ident_start(c) {
            let end = rest
                .find(|ch: char| !ident_continue(ch))
                .unwrap_or(rest.len());
            out.push(Token {
                tok: Tok::Ident(rest[..end].to_string()),
                line: l,
                col: cl,
            });
            col += rest[..end].chars().count();
            rest = &rest[end..];
            continue;
        }
        if c.is_ascii_digit() {
            let end = rest
                .find(|ch: char| !ch.is_ascii_digit())
                .unwrap_or(rest.len());
            out.push(Token {
                tok: Tok::Num(rest[..end].to_string()),
                line: l,
                col: cl,
            });
            col += end;
            rest = &rest[end..];
            continue;
        }
        match SYMS.iter().find(|(s, _)| rest.starts_with(s)) {
            Some((s, canon)) => {
                out.push(Token {
                    tok: Tok::Sym(canon),
                    line: l,
                    col: cl,
                });
                col += s.chars().count();
                rest = &rest[s.len()..];
            }
            None => {
                return Err(KernelError::Syntax {
                    line: l,
                    col: cl,
                    msg: format!("unexpected character `{}`", c),
                })
            }
        }
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        let end = toks.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
        Cursor { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn mark(&self) -> usize {
        self.pos
    }

    pub fn reset(&mut self, mark: usize) {
        self.pos = mark;
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn err(&self, msg: impl Into<String>) -> KernelError {
        let (line, col) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end);
        KernelError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), KernelError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", s)))
        }
    }

    pub fn ident(&mut self) -> Result<String, KernelError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    pub fn finish(&self) -> Result<(), KernelError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

/// How basic names in type positions are resolved.
#[derive(Clone, Copy)]
pub(crate) struct TypeScope<'a> {
    pub sig: &'a Signature,
    /// Accept undeclared identifiers as basic types.
    pub free: bool,
}

pub(crate) fn type_expr(c: &mut Cursor, sc: TypeScope<'_>) -> Result<TypeExpr, KernelError> {
    let lhs = tensor_expr(c, sc)?;
    if c.eat_sym("-o") {
        let rhs = type_expr(c, sc)?;
        return Ok(TypeExpr::hom(lhs, rhs));
    }
    Ok(lhs)
}

fn tensor_expr(c: &mut Cursor, sc: TypeScope<'_>) -> Result<TypeExpr, KernelError> {
    let mut acc = postfix_expr(c, sc)?;
    while c.eat_sym("*") {
        let rhs = postfix_expr(c, sc)?;
        acc = TypeExpr::tensor(acc, rhs);
    }
    Ok(acc)
}

fn postfix_expr(c: &mut Cursor, sc: TypeScope<'_>) -> Result<TypeExpr, KernelError> {
    let mut t = prim_type(c, sc)?;
    while c.eat_sym("^") {
        t = TypeExpr::dual(t);
    }
    Ok(t)
}

fn prim_type(c: &mut Cursor, sc: TypeScope<'_>) -> Result<TypeExpr, KernelError> {
    match c.peek().cloned() {
        Some(Tok::Sym("(")) => {
            c.bump();
            let t = type_expr(c, sc)?;
            c.expect_sym(")")?;
            Ok(t)
        }
        Some(Tok::Num(n)) if n == "1" => {
            c.bump();
            Ok(TypeExpr::Unit)
        }
        Some(Tok::Ident(n)) => {
            c.bump();
            if n == "I" {
                return Ok(TypeExpr::Unit);
            }
            if let Some(a) = sc.sig.alias(&n) {
                return Ok(a.clone());
            }
            if sc.free || sc.sig.has_object(&n) {
                Ok(TypeExpr::Basic(n))
            } else {
                Err(KernelError::UnknownObject(n))
            }
        }
        _ => Err(c.err("expected a type")),
    }
}

/// Parses, gates by mode and normalizes a type.
pub(crate) fn type_checked(c: &mut Cursor, sc: TypeScope<'_>) -> Result<TypeExpr, KernelError> {
    let t = type_expr(c, sc)?;
    if sc.free {
        let mut s = sc.sig.clone();
        let mut names = Vec::new();
        t.basics(&mut names);
        for n in names {
            s.add_object(&n);
        }
        check_type(&t, &s)
    } else {
        check_type(&t, sc.sig)
    }
}

/// Parses a type without infix operators (a name, `I`, or a parenthesized type).
pub(crate) fn type_atom_checked(
    c: &mut Cursor,
    sc: TypeScope<'_>,
) -> Result<TypeExpr, KernelError> {
    let t = postfix_expr(c, sc)?;
    check_type(&t, sc.sig)
}

/// Parses a type over the objects and aliases of `sig`.
pub fn parse_type(src: &str, sig: &Signature) -> Result<TypeExpr, KernelError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let t = type_checked(&mut c, TypeScope { sig, free: false })?;
    c.finish()?;
    Ok(t)
}

/// Parses a type over `sig`, optionally accepting undeclared names as basic types.
pub(crate) fn parse_type_in(
    src: &str,
    sig: &Signature,
    free: bool,
) -> Result<TypeExpr, KernelError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let t = type_checked(&mut c, TypeScope { sig, free })?;
    c.finish()?;
    Ok(t)
}

/// Parses a type treating every identifier as a basic type.
pub fn parse_type_free(src: &str, mode: Mode) -> Result<TypeExpr, KernelError> {
    let sig = Signature::new(mode);
    let mut c = Cursor::new(lex(src, 1)?);
    let t = type_checked(
        &mut c,
        TypeScope {
            sig: &sig,
            free: true,
        },
    )?;
    c.finish()?;
    Ok(t)
}

/// Parses a morphism expression. Named terms of `sig` are expanded in place.
pub fn parse_mor(src: &str, sig: &Signature) -> Result<MorTerm, KernelError> {
    let mut c = Cursor::new(lex(src, 1)?);
    let t = mor_expr(&mut c, sig)?;
    c.finish()?;
    Ok(t)
}

pub(crate) fn mor_expr(c: &mut Cursor, sig: &Signature) -> Result<MorTerm, KernelError> {
    let mut acc = par_expr(c, sig)?;
    while c.eat_sym(";") {
        let rhs = par_expr(c, sig)?;
        acc = MorTerm::seq(acc, rhs);
    }
    Ok(acc)
}

fn par_expr(c: &mut Cursor, sig: &Signature) -> Result<MorTerm, KernelError> {
    let mut acc = mor_atom(c, sig)?;
    while c.eat_sym("*") {
        let rhs = mor_atom(c, sig)?;
        acc = MorTerm::par(acc, rhs);
    }
    Ok(acc)
}

fn keyword(name: &str) -> Option<(Ctor, usize, bool)> {
    // (constructor, arity, takes morphism arguments)
    Some(match name {
        "id" => (Ctor::Id, 1, false),
        "assoc" => (Ctor::Assoc, 3, false),
        "unassoc" => (Ctor::Unassoc, 3, false),
        "left" => (Ctor::LeftU, 1, false),
        "unleft" => (Ctor::UnleftU, 1, false),
        "right" => (Ctor::RightU, 1, false),
        "unright" => (Ctor::UnrightU, 1, false),
        "braid" => (Ctor::Braid, 2, false),
        "braidinv" => (Ctor::BraidInv, 2, false),
        "ev" => (Ctor::Ev, 2, false),
        "cup" => (Ctor::Cup, 1, false),
        "cap" => (Ctor::Cap, 1, false),
        "dup" => (Ctor::Dup, 1, false),
        "del" => (Ctor::Del, 1, false),
        "p1" => (Ctor::Proj1, 2, false),
        "p2" => (Ctor::Proj2, 2, false),
        "curry" => (Ctor::Curry, 1, true),
        "uncurry" => (Ctor::Uncurry, 1, true),
        "name" => (Ctor::Name, 1, true),
        "pair" => (Ctor::Pair, 2, true),
        _ => return None,
    })
}

fn mor_atom(c: &mut Cursor, sig: &Signature) -> Result<MorTerm, KernelError> {
    match c.peek().cloned() {
        Some(Tok::Sym("(")) => {
            c.bump();
            let t = mor_expr(c, sig)?;
            c.expect_sym(")")?;
            Ok(t)
        }
        Some(Tok::Ident(n)) => {
            let kw = keyword(&n)
                .filter(|(_, _, m)| c.peek_at(1) == Some(&Tok::Sym(if *m { "(" } else { "[" })));
            c.bump();
            let Some((ctor, arity, mor_args)) = kw else {
                if let Some(t) = sig.term(&n) {
                    return Ok(t.clone());
                }
                if sig.generator(&n).is_some() {
                    return Ok(MorTerm::Gen(n));
                }
                return Err(KernelError::UnknownGenerator(n));
            };
            check_ctor(ctor, sig.mode)?;
            if mor_args {
                c.expect_sym("(")?;
                let a = mor_expr(c, sig)?;
                let t = if ctor == Ctor::Pair {
                    c.expect_sym(",")?;
                    let b = mor_expr(c, sig)?;
                    MorTerm::pair(a, b)
                } else {
                    match ctor {
                        Ctor::Curry => MorTerm::curry(a),
                        Ctor::Uncurry => MorTerm::uncurry(a),
                        _ => MorTerm::name_of(a),
                    }
                };
                c.expect_sym(")")?;
                return Ok(t);
            }
            c.expect_sym("[")?;
            let mut ts = Vec::new();
            for i in 0..arity {
                if i > 0 {
                    c.expect_sym(",")?;
                }
                ts.push(type_checked(c, TypeScope { sig, free: false })?);
            }
            c.expect_sym("]")?;
            let mut it = ts.into_iter();
            let mut nx = || it.next().expect("arity checked");
            Ok(match ctor {
                Ctor::Id => MorTerm::Id(nx()),
                Ctor::Assoc => MorTerm::Assoc(nx(), nx(), nx()),
                Ctor::Unassoc => MorTerm::Unassoc(nx(), nx(), nx()),
                Ctor::LeftU => MorTerm::LeftU(nx()),
                Ctor::UnleftU => MorTerm::UnleftU(nx()),
                Ctor::RightU => MorTerm::RightU(nx()),
                Ctor::UnrightU => MorTerm::UnrightU(nx()),
                Ctor::Braid => MorTerm::Braid(nx(), nx()),
                Ctor::BraidInv => MorTerm::BraidInv(nx(), nx()),
                Ctor::Ev => MorTerm::Ev(nx(), nx()),
                Ctor::Cup => MorTerm::Cup(nx()),
                Ctor::Cap => MorTerm::Cap(nx()),
                Ctor::Dup => MorTerm::Dup(nx()),
                Ctor::Del => MorTerm::Del(nx()),
                Ctor::Proj1 => MorTerm::Proj1(nx(), nx()),
                _ => MorTerm::Proj2(nx(), nx()),
            })
        }
        _ => Err(c.err("expected a morphism")),
    }
}

/// Parses the line-oriented signature format. The mode defaults to symmetric and
/// may only be set before any declaration. Generator types may mention undeclared
/// objects; [`validate_signature`](super::validate_signature) reports those.
pub fn parse_signature(src: &str) -> Result<Signature, KernelError> {
    let mut sig = Signature::new(Mode::Symmetric);
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let mut words = text.split_whitespace();
        if words.next() == Some("mode") {
            let name = words.next().unwrap_or("");
            sig.mode = Mode::from_name(name).ok_or(KernelError::Syntax {
                line,
                col: 1,
                msg: format!("unknown mode `{}`", name),
            })?;
            if let Some(extra) = words.next() {
                return Err(KernelError::Syntax {
                    line,
                    col: 1,
                    msg: format!("unexpected `{}`", extra),
                });
            }
            continue;
        }
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(toks);
        let kw = c.ident()?;
        match kw.as_str() {
            "obj" => {
                while !c.at_end() {
                    let n = c.ident()?;
                    if n == "I" {
                        return Err(c.err("`I` is reserved for the unit"));
                    }
                    sig.objects.push(n);
                }
            }
            "alias" => {
                let n = c.ident()?;
                c.expect_sym("=")?;
                let t = type_checked(
                    &mut c,
                    TypeScope {
                        sig: &sig,
                        free: false,
                    },
                )?;
                sig.aliases.push((n, t));
            }
            "gen" => {
                let n = c.ident()?;
                c.expect_sym(":")?;
                let dom = type_checked(
                    &mut c,
                    TypeScope {
                        sig: &sig,
                        free: true,
                    },
                )?;
                c.expect_sym("->")?;
                let cod = type_checked(
                    &mut c,
                    TypeScope {
                        sig: &sig,
                        free: true,
                    },
                )?;
                sig.generators.push(super::Generator { name: n, dom, cod });
            }
            "term" => {
                let n = c.ident()?;
                c.expect_sym("=")?;
                let t = mor_expr(&mut c, &sig)?;
                sig.terms.push((n, t));
            }
            other => {
                return Err(KernelError::Syntax {
                    line,
                    col: 1,
                    msg: format!("unknown declaration `{}`", other),
                })
            }
        }
        c.finish()?;
    }
    Ok(sig)
}
