use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::syntax::{basic_term, cpvp, lin_normalize, lin_typecheck, Combinator, LinTerm, LinType};
use super::theory::combinator_to_kernel;
use super::LinError;
use crate::kernel::{inverse, merge, permutation_term, Mode, MorTerm, Signature, TypeExpr};
use crate::rewrite::{eq_decide, EqConfig, EqVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinEquiv {
    Equal,
    /// The reason: a model separating the terms, or a mismatch of types or variables.
    NotEqual(String),
    Unknown(String),
}

fn show(t: &LinType) -> String {
    format!("{}", t.display_in(Mode::ClosedSymmetric))
}

/// Variable types of a basic term, left to right; `1` contributes nothing.
fn leaves(b: &LinTerm) -> Vec<(String, LinType)> {
    b.vars()
}

/// Structural isomorphism from the type of basic `b` to the right-nested
/// tensor of its variable types.
fn to_list(b: &LinTerm) -> MorTerm {
    match b {
        LinTerm::Tensor(l, r) => {
            let tl: Vec<LinType> = leaves(l).into_iter().map(|(_, t)| t).collect();
            let tr: Vec<LinType> = leaves(r).into_iter().map(|(_, t)| t).collect();
            to_list(l).tensor(to_list(r)).then(merge(&tl, &tr))
        }
        LinTerm::Var(_, t) => MorTerm::Id(t.clone()),
        _ => MorTerm::Id(TypeExpr::Unit),
    }
}

/// A structural map `sigma` with `sigma(from) ~ to`, for basic terms over the
/// same variables.
fn rearrange(from: &LinTerm, to: &LinTerm) -> MorTerm {
    let xs = leaves(from);
    let ys = leaves(to);
    let sources: Vec<usize> = ys
        .iter()
        .map(|(y, _)| xs.iter().position(|(x, _)| x == y).expect("same variables"))
        .collect();
    let tys: Vec<LinType> = xs.into_iter().map(|(_, t)| t).collect();
    to_list(from)
        .then(permutation_term(&tys, &sources))
        .then(inverse(&to_list(to)).expect("structural"))
}

/// The closed symmetric signature of the function symbols and types in use.
fn signature_for(terms: &[&LinTerm], extra: &[&LinType]) -> Result<Signature, LinError> {
    let mut sig = Signature::new(Mode::ClosedSymmetric);
    let mut fns = Vec::new();
    let mut tys: Vec<LinType> = extra.iter().map(|t| (*t).clone()).collect();
    for t in terms {
        t.functions(&mut fns);
        tys.extend(t.vars().into_iter().map(|(_, ty)| ty));
    }
    let mut names = Vec::new();
    for t in &tys {
        t.basics(&mut names);
    }
    for n in names {
        sig.add_object(&n);
    }
    let mut seen: BTreeMap<String, (LinType, LinType)> = BTreeMap::new();
    for (name, dom, cod) in fns {
        match seen.get(&name) {
            Some(ty) if *ty != (dom.clone(), cod.clone()) => return Err(LinError::Clash(name)),
            Some(_) => {}
            None => {
                sig.add_generator(&name, dom.clone(), cod.clone());
                seen.insert(name, (dom, cod));
            }
        }
    }
    Ok(sig)
}

/// Decides `t1 ~ t2` with the default equality configuration.
pub fn lin_equiv_terms(t1: &LinTerm, t2: &LinTerm) -> Result<LinEquiv, LinError> {
    lin_equiv_terms_with(t1, t2, &EqConfig::default())
}

/// Decides `t1 ~ t2`.
///
/// Terms of different types or over different variables are never related.
/// Otherwise both are brought to the form `cp(t)(vp(t))`, the second variable
/// part is rearranged into the first, and the combinator parts are compared in
/// the free closed symmetric monoidal category. Hom-typed results are first
/// applied to a fresh argument through `eval`.
pub fn lin_equiv_terms_with(
    t1: &LinTerm,
    t2: &LinTerm,
    cfg: &EqConfig,
) -> Result<LinEquiv, LinError> {
    let ty1 = lin_typecheck(t1)?;
    let ty2 = lin_typecheck(t2)?;
    if ty1 != ty2 {
        return Ok(LinEquiv::NotEqual(format!(
            "types differ: {} versus {}",
            show(&ty1),
            show(&ty2)
        )));
    }
    let v1: BTreeSet<(String, LinType)> = t1.vars().into_iter().collect();
    let v2: BTreeSet<(String, LinType)> = t2.vars().into_iter().collect();
    if v1 != v2 {
        return Ok(LinEquiv::NotEqual(
            "the terms contain different variables".into(),
        ));
    }
    if lin_normalize(t1) == lin_normalize(t2) {
        return Ok(LinEquiv::Equal);
    }
    let (c1, b1) = cpvp(t1)?;
    let (c2, b2) = cpvp(t2)?;
    let sig = signature_for(&[t1, t2], &[&ty1])?;
    let mut m1 = combinator_to_kernel(&c1);
    let mut m2 = rearrange(&b1, &b2).then(combinator_to_kernel(&c2));
    let mut cod = ty1;
    while let TypeExpr::Hom(x, y) = cod {
        let ev = MorTerm::Ev((*x).clone(), (*y).clone());
        m1 = MorTerm::par(MorTerm::Id((*x).clone()), m1).then(ev.clone());
        m2 = MorTerm::par(MorTerm::Id((*x).clone()), m2).then(ev);
        cod = *y;
    }
    Ok(match eq_decide(&m1, &m2, &sig, cfg)? {
        EqVerdict::Equal(_) => LinEquiv::Equal,
        EqVerdict::NotEqual(w) => LinEquiv::NotEqual(format!(
            "model {} separates the terms at basis input {}",
            w.model, w.input
        )),
        EqVerdict::Unknown(why) => LinEquiv::Unknown(why),
    })
}

/// Decides whether `f(t) ~ g(t)` for the canonical basic term `t` of the domain.
pub fn lin_equiv_combinators(f: &Combinator, g: &Combinator) -> Result<LinEquiv, LinError> {
    let (dom, _) = f.dom_cod()?;
    lin_equiv_combinators_at(f, g, &basic_term(&dom, "v"), &EqConfig::default())
}

/// Decides whether `f(b) ~ g(b)` for a given basic term `b`.
pub fn lin_equiv_combinators_at(
    f: &Combinator,
    g: &Combinator,
    b: &LinTerm,
    cfg: &EqConfig,
) -> Result<LinEquiv, LinError> {
    let (d1, c1) = f.dom_cod()?;
    let (d2, c2) = g.dom_cod()?;
    if d1 != d2 || c1 != c2 {
        return Err(LinError::TypeMismatch {
            lhs: format!("{} -> {}", show(&d1), show(&c1)),
            rhs: format!("{} -> {}", show(&d2), show(&c2)),
        });
    }
    if !b.is_basic() {
        return Err(LinError::Shape(format!("{} is not a basic term", b)));
    }
    let tb = lin_typecheck(b)?;
    if tb != d1 {
        return Err(LinError::Argument {
            comb: format!("{}", f),
            expected: show(&d1),
            found: show(&tb),
        });
    }
    lin_equiv_terms_with(
        &LinTerm::apply(f.clone(), b.clone()),
        &LinTerm::apply(g.clone(), b.clone()),
        cfg,
    )
}
