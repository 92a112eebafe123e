use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::untyped::{Term, MAX_TERM_SIZE};
use super::LambdaError;

/// Combinatory logic terms over `I`, `K`, `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SkiTerm {
    I,
    K,
    S,
    Var(String),
    App(Box<SkiTerm>, Box<SkiTerm>),
}

impl SkiTerm {
    pub fn app(f: SkiTerm, a: SkiTerm) -> SkiTerm {
        SkiTerm::App(Box::new(f), Box::new(a))
    }

    pub fn var(x: impl Into<String>) -> SkiTerm {
        SkiTerm::Var(x.into())
    }

    pub fn apps(f: SkiTerm, args: impl IntoIterator<Item = SkiTerm>) -> SkiTerm {
        args.into_iter().fold(f, SkiTerm::app)
    }

    pub fn size(&self) -> usize {
        match self {
            SkiTerm::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    pub fn occurs(&self, x: &str) -> bool {
        match self {
            SkiTerm::Var(y) => x == y,
            SkiTerm::App(f, a) => f.occurs(x) || a.occurs(x),
            _ => false,
        }
    }

    /// The lambda term each combinator abbreviates.
    pub fn to_lambda(&self) -> Term {
        let v = Term::var;
        match self {
            SkiTerm::I => Term::lam("x", v("x")),
            SkiTerm::K => Term::lam("x", Term::lam("y", v("x"))),
            SkiTerm::S => Term::lam(
                "x",
                Term::lam(
                    "y",
                    Term::lam(
                        "z",
                        Term::app(Term::app(v("x"), v("z")), Term::app(v("y"), v("z"))),
                    ),
                ),
            ),
            SkiTerm::Var(x) => Term::Var(x.clone()),
            SkiTerm::App(f, a) => Term::app(f.to_lambda(), a.to_lambda()),
        }
    }

    /// Plain embedding of a lambda-free term; `None` if it contains a lambda.
    pub fn from_lambda(t: &Term) -> Option<SkiTerm> {
        match t {
            Term::Var(x) => Some(match x.as_str() {
                "I" => SkiTerm::I,
                "K" => SkiTerm::K,
                "S" => SkiTerm::S,
                _ => SkiTerm::Var(x.clone()),
            }),
            Term::App(f, a) => Some(SkiTerm::app(
                SkiTerm::from_lambda(f)?,
                SkiTerm::from_lambda(a)?,
            )),
            Term::Lam(..) => None,
        }
    }
}

impl fmt::Display for SkiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkiTerm::I => f.write_str("I"),
            SkiTerm::K => f.write_str("K"),
            SkiTerm::S => f.write_str("S"),
            SkiTerm::Var(x) => f.write_str(x),
            SkiTerm::App(g, a) => write!(f, "{}({})", g, a),
        }
    }
}

/// `[[u]]_x`
fn abstract_var(x: &str, u: SkiTerm) -> SkiTerm {
    if matches!(&u, SkiTerm::Var(y) if y == x) {
        return SkiTerm::I;
    }
    if !u.occurs(x) {
        return SkiTerm::app(SkiTerm::K, u);
    }
    match u {
        SkiTerm::App(a, b) => SkiTerm::apps(SkiTerm::S, [abstract_var(x, *a), abstract_var(x, *b)]),
        _ => unreachable!("only variables and applications mention a variable"),
    }
}

/// Abstraction elimination, innermost lambdas first. Free variables stay as variables.
pub fn ski_eliminate(t: &Term) -> SkiTerm {
    match t {
        Term::Var(x) => SkiTerm::Var(x.clone()),
        Term::App(f, a) => SkiTerm::app(ski_eliminate(f), ski_eliminate(a)),
        Term::Lam(x, b) => abstract_var(x, ski_eliminate(b)),
    }
}

/// One normal-order step.
pub fn ski_step(t: &SkiTerm) -> Option<SkiTerm> {
    let mut t = t.clone();
    ski_step_mut(&mut t).then_some(t)
}

fn take(t: &mut SkiTerm) -> SkiTerm {
    core::mem::replace(t, SkiTerm::I)
}

fn ski_step_mut(t: &mut SkiTerm) -> bool {
    let mut n = 0;
    let mut head = &*t;
    while let SkiTerm::App(f, _) = head {
        n += 1;
        head = f;
    }
    let need = match head {
        SkiTerm::I => 1,
        SkiTerm::K => 2,
        SkiTerm::S => 3,
        _ => usize::MAX,
    };
    if n >= need {
        // the redex is the application node `need` levels above the head
        let mut node = &mut *t;
        for _ in 0..n - need {
            let SkiTerm::App(f, _) = node else {
                unreachable!()
            };
            node = f;
        }
        let new = match (need, take(node)) {
            (1, SkiTerm::App(_, a)) => *a,
            (2, SkiTerm::App(ka, _)) => match *ka {
                SkiTerm::App(_, a) => *a,
                _ => unreachable!(),
            },
            (3, SkiTerm::App(sab, c)) => match *sab {
                SkiTerm::App(sa, b) => match *sa {
                    SkiTerm::App(_, a) => {
                        SkiTerm::app(SkiTerm::app(*a, (*c).clone()), SkiTerm::app(*b, *c))
                    }
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        *node = new;
        return true;
    }
    let mut args = Vec::new();
    let mut cur = t;
    while let SkiTerm::App(f, a) = cur {
        args.push(&mut **a);
        cur = f;
    }
    args.into_iter().rev().any(ski_step_mut)
}

/// Normal-order evaluation by `I a = a`, `K a b = a`, `S a b c = a c (b c)`.
pub fn ski_eval(t: &SkiTerm, fuel: usize) -> Result<SkiTerm, LambdaError> {
    if t.size() > MAX_TERM_SIZE {
        return Err(LambdaError::TooLarge(t.size()));
    }
    let mut cur = t.clone();
    for _ in 0..fuel {
        if !ski_step_mut(&mut cur) {
            return Ok(cur);
        }
        let n = cur.size();
        if n > MAX_TERM_SIZE {
            return Err(LambdaError::TooLarge(n));
        }
    }
    match ski_step(&cur) {
        None => Ok(cur),
        Some(_) => Err(LambdaError::Fuel {
            steps: fuel,
            last: format!("{}", cur),
        }),
    }
}
