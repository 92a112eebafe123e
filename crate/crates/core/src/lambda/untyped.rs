use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::LambdaError;

/// Untyped lambda terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(Box<Term>, Box<Term>),
    Lam(String, Box<Term>),
}

/// Reduction stops with [`LambdaError::TooLarge`] once a term outgrows this many nodes.
pub const MAX_TERM_SIZE: usize = 1 << 12;

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: impl Into<String>, body: Term) -> Term {
        Term::Lam(x.into(), Box::new(body))
    }

    /// `f a1 a2 ...`
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, b) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            Term::Lam(y, b) => y != x && b.occurs_free(x),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, f: &mut fmt::Formatter<'_>, arg: bool, head: bool) -> fmt::Result {
            match t {
                Term::Var(x) => f.write_str(x),
                Term::Lam(x, b) => {
                    if arg || head {
                        f.write_str("(")?;
                    }
                    write!(f, "\\{}. ", x)?;
                    go(b, f, false, false)?;
                    if arg || head {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                Term::App(g, a) => {
                    if arg {
                        f.write_str("(")?;
                    }
                    go(g, f, false, true)?;
                    f.write_str(" ")?;
                    go(a, f, true, false)?;
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

/// `base`, `base'`, `base''`, ... : the first not in `avoid`.
pub(crate) fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut x = base.to_string();
    while avoid.contains(&x) {
        x.push('\'');
    }
    x
}

/// Capture-avoiding `t[s/x]`.
pub fn substitute(t: &Term, x: &str, s: &Term) -> Term {
    let fv = s.free_vars();
    subst(t, x, s, &fv).unwrap_or_else(|| t.clone())
}

/// `None` when `x` is not free in `t`.
fn subst(t: &Term, x: &str, s: &Term, fv: &BTreeSet<String>) -> Option<Term> {
    match t {
        Term::Var(y) => (y == x).then(|| s.clone()),
        Term::App(f, a) => match (subst(f, x, s, fv), subst(a, x, s, fv)) {
            (None, None) => None,
            (f2, a2) => Some(Term::app(
                f2.unwrap_or_else(|| (**f).clone()),
                a2.unwrap_or_else(|| (**a).clone()),
            )),
        },
        Term::Lam(y, b) => {
            if y == x {
                return None;
            }
            let b2 = subst(b, x, s, fv)?;
            if !fv.contains(y) {
                return Some(Term::lam(y.clone(), b2));
            }
            let mut avoid = fv.clone();
            avoid.extend(b.free_vars());
            let z = fresh(y, &avoid);
            let renamed = substitute(b, y, &Term::Var(z.clone()));
            Some(Term::lam(z, substitute(&renamed, x, s)))
        }
    }
}

/// Nameless form for alpha-equivalence: bound variables become de Bruijn indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Nameless {
    Bound(usize),
    Free(String),
    App(Box<Nameless>, Box<Nameless>),
    Lam(Box<Nameless>),
}

fn nameless(t: &Term, env: &mut Vec<String>) -> Nameless {
    match t {
        Term::Var(x) => match env.iter().rev().position(|y| y == x) {
            Some(i) => Nameless::Bound(i),
            None => Nameless::Free(x.clone()),
        },
        Term::App(f, a) => Nameless::App(Box::new(nameless(f, env)), Box::new(nameless(a, env))),
        Term::Lam(x, b) => {
            env.push(x.clone());
            let r = Nameless::Lam(Box::new(nameless(b, env)));
            env.pop();
            r
        }
    }
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    nameless(a, &mut Vec::new()) == nameless(b, &mut Vec::new())
}

/// Renames every binder by depth to `a`, `b`, ..., `z`, `a1`, ... skipping free names,
/// so alpha-equivalent terms become identical.
pub fn alpha_canonical(t: &Term) -> Term {
    let free = t.free_vars();
    let mut names: Vec<String> = Vec::new();
    fn name_at(d: usize, names: &mut Vec<String>, free: &BTreeSet<String>) -> String {
        let mut k = names.len();
        while names.len() <= d {
            let cand = if k < 26 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                format!("{}{}", (b'a' + (k % 26) as u8) as char, k / 26)
            };
            k += 1;
            if !free.contains(&cand) {
                names.push(cand);
            }
        }
        names[d].clone()
    }
    fn go(
        t: &Term,
        env: &mut Vec<(String, String)>,
        names: &mut Vec<String>,
        free: &BTreeSet<String>,
    ) -> Term {
        match t {
            Term::Var(x) => match env.iter().rev().find(|(o, _)| o == x) {
                Some((_, n)) => Term::Var(n.clone()),
                None => t.clone(),
            },
            Term::App(f, a) => Term::app(go(f, env, names, free), go(a, env, names, free)),
            Term::Lam(x, b) => {
                let n = name_at(env.len(), names, free);
                env.push((x.clone(), n.clone()));
                let r = Term::lam(n, go(b, env, names, free));
                env.pop();
                r
            }
        }
    }
    go(t, &mut Vec::new(), &mut names, &free)
}

/// One leftmost-outermost beta or eta step.
pub fn step(t: &Term) -> Option<Term> {
    let mut t = t.clone();
    step_mut(&mut t).then_some(t)
}

fn take(t: &mut Term) -> Term {
    core::mem::replace(t, Term::Var(String::new()))
}

/// Performs one leftmost-outermost step in place; false at a normal form.
pub(crate) fn step_mut(t: &mut Term) -> bool {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(x, b) = &**f {
                *t = substitute(b, x, a);
                return true;
            }
            step_mut(f) || step_mut(a)
        }
        Term::Lam(x, b) => {
            let eta = match &**b {
                Term::App(f, a) => matches!(&**a, Term::Var(y) if y == x) && !f.occurs_free(x),
                _ => false,
            };
            if eta {
                let Term::App(f, _) = &mut **b else {
                    unreachable!()
                };
                *t = take(f);
                return true;
            }
            step_mut(b)
        }
        Term::Var(_) => false,
    }
}

/// Normal-order beta/eta normalization. The result is alpha-canonical.
pub fn normalize_untyped(t: &Term, fuel: usize) -> Result<Term, LambdaError> {
    if t.size() > MAX_TERM_SIZE {
        return Err(LambdaError::TooLarge(t.size()));
    }
    let mut cur = t.clone();
    for _ in 0..fuel {
        if !step_mut(&mut cur) {
            return Ok(alpha_canonical(&cur));
        }
        let n = cur.size();
        if n > MAX_TERM_SIZE {
            return Err(LambdaError::TooLarge(n));
        }
    }
    if step(&cur).is_none() {
        return Ok(alpha_canonical(&cur));
    }
    Err(LambdaError::Fuel {
        steps: fuel,
        last: format!("{}", alpha_canonical(&cur)),
    })
}

/// `\f. \x. f (f (... x))` with `n` applications.
pub fn church_encode(n: u64) -> Term {
    let mut body = Term::var("x");
    for _ in 0..n {
        body = Term::app(Term::var("f"), body);
    }
    Term::lam("f", Term::lam("x", body))
}

/// Inverts [`church_encode`] up to alpha. The eta-reduced form of one, `\f. f`,
/// is not accepted.
pub fn church_decode(t: &Term) -> Result<u64, LambdaError> {
    let not = || LambdaError::NotNumeral(format!("{}", t));
    let Term::Lam(f, inner) = t else {
        return Err(not());
    };
    match &**inner {
        Term::Lam(x, body) if x != f => {
            let mut n = 0;
            let mut cur = &**body;
            loop {
                match cur {
                    Term::Var(y) if y == x => return Ok(n),
                    Term::App(g, a) if matches!(&**g, Term::Var(h) if h == f) => {
                        n += 1;
                        cur = a;
                    }
                    _ => return Err(not()),
                }
            }
        }
        _ => Err(not()),
    }
}

/// `\a. \b. \x. a (b x)`
pub fn times() -> Term {
    Term::lam(
        "a",
        Term::lam(
            "b",
            Term::lam(
                "x",
                Term::app(Term::var("a"), Term::app(Term::var("b"), Term::var("x"))),
            ),
        ),
    )
}

/// Decodes a beta/eta normal form, where the numeral one appears as `\f. f`.
pub fn church_decode_normal(t: &Term) -> Result<u64, LambdaError> {
    match church_decode(t) {
        Ok(n) => Ok(n),
        Err(e) => match t {
            Term::Lam(f, b) if matches!(&**b, Term::Var(y) if y == f) => Ok(1),
            _ => Err(e),
        },
    }
}
