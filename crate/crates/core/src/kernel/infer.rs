use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::signature::Signature;
use super::term::MorTerm;
use super::types::{mode_allows, Ctor, Mode, TypeExpr};
use super::KernelError;

pub(crate) fn check_ctor(c: Ctor, mode: Mode) -> Result<(), KernelError> {
    if mode_allows(mode, c) {
        Ok(())
    } else {
        Err(KernelError::ModeViolation {
            ctor: c.name(),
            mode,
        })
    }
}

/// Checks that a type is well formed in the signature's mode and returns its normal form.
pub fn check_type(t: &TypeExpr, sig: &Signature) -> Result<TypeExpr, KernelError> {
    fn walk(t: &TypeExpr, sig: &Signature) -> Result<(), KernelError> {
        match t {
            TypeExpr::Basic(n) => {
                if sig.has_object(n) {
                    Ok(())
                } else {
                    Err(KernelError::UnknownObject(n.clone()))
                }
            }
            TypeExpr::Unit => Ok(()),
            TypeExpr::Tensor(l, r) => {
                walk(l, sig)?;
                walk(r, sig)
            }
            TypeExpr::Hom(l, r) => {
                check_ctor(Ctor::HomType, sig.mode)?;
                walk(l, sig)?;
                walk(r, sig)
            }
            TypeExpr::Dual(x) => {
                check_ctor(Ctor::DualType, sig.mode)?;
                walk(x, sig)
            }
        }
    }
    walk(t, sig)?;
    Ok(sig.normalize(t))
}

fn show(t: &TypeExpr, mode: Mode) -> String {
    t.display_in(mode).to_string()
}

fn same(a: &TypeExpr, b: &TypeExpr, mode: Mode) -> Result<(), KernelError> {
    if a == b {
        Ok(())
    } else {
        Err(KernelError::Mismatch {
            left: show(a, mode),
            right: show(b, mode),
        })
    }
}

fn hom(x: TypeExpr, y: TypeExpr, sig: &Signature) -> TypeExpr {
    sig.normalize(&TypeExpr::hom(x, y))
}

/// Splits a closed-mode hom type, reading `X^ * Y` as `X -o Y` in compact modes.
fn split_hom(t: &TypeExpr, sig: &Signature) -> Option<(TypeExpr, TypeExpr)> {
    match t {
        TypeExpr::Hom(x, y) => Some(((**x).clone(), (**y).clone())),
        TypeExpr::Tensor(dx, y) if sig.mode.caps().compact => Some((
            TypeExpr::dual((**dx).clone()).compact_normal(),
            (**y).clone(),
        )),
        _ => None,
    }
}

fn split_tensor(t: &TypeExpr) -> Option<(TypeExpr, TypeExpr)> {
    match t {
        TypeExpr::Tensor(x, y) => Some(((**x).clone(), (**y).clone())),
        _ => None,
    }
}

/// Domain and codomain of a term. Fails on mode violations, unknown names and
/// composition mismatches.
pub fn infer_dom_cod(t: &MorTerm, sig: &Signature) -> Result<(TypeExpr, TypeExpr), KernelError> {
    use MorTerm::*;
    let mode = sig.mode;
    check_ctor(t.ctor(), mode)?;
    let ty = |x: &TypeExpr| check_type(x, sig);
    let tn = TypeExpr::tensor;
    Ok(match t {
        Gen(n) => {
            let g = sig
                .generator(n)
                .ok_or_else(|| KernelError::UnknownGenerator(n.clone()))?;
            (ty(&g.dom)?, ty(&g.cod)?)
        }
        Id(x) => {
            let x = ty(x)?;
            (x.clone(), x)
        }
        Seq(f, g) => {
            let (a, b) = infer_dom_cod(f, sig)?;
            let (b2, c) = infer_dom_cod(g, sig)?;
            same(&b, &b2, mode)?;
            (a, c)
        }
        Par(f, g) => {
            let (a, b) = infer_dom_cod(f, sig)?;
            let (c, d) = infer_dom_cod(g, sig)?;
            (tn(a, c), tn(b, d))
        }
        Assoc(x, y, z) => {
            let (x, y, z) = (ty(x)?, ty(y)?, ty(z)?);
            (tn(tn(x.clone(), y.clone()), z.clone()), tn(x, tn(y, z)))
        }
        Unassoc(x, y, z) => {
            let (x, y, z) = (ty(x)?, ty(y)?, ty(z)?);
            (tn(x.clone(), tn(y.clone(), z.clone())), tn(tn(x, y), z))
        }
        LeftU(x) => {
            let x = ty(x)?;
            (tn(TypeExpr::Unit, x.clone()), x)
        }
        UnleftU(x) => {
            let x = ty(x)?;
            (x.clone(), tn(TypeExpr::Unit, x))
        }
        RightU(x) => {
            let x = ty(x)?;
            (tn(x.clone(), TypeExpr::Unit), x)
        }
        UnrightU(x) => {
            let x = ty(x)?;
            (x.clone(), tn(x, TypeExpr::Unit))
        }
        Braid(x, y) => {
            let (x, y) = (ty(x)?, ty(y)?);
            (tn(x.clone(), y.clone()), tn(y, x))
        }
        BraidInv(x, y) => {
            let (x, y) = (ty(x)?, ty(y)?);
            (tn(y.clone(), x.clone()), tn(x, y))
        }
        Curry(f) => {
            let (d, z) = infer_dom_cod(f, sig)?;
            let (x, y) = split_tensor(&d).ok_or_else(|| {
                KernelError::Shape(format!(
                    "curry needs a tensor domain, got {}",
                    show(&d, mode)
                ))
            })?;
            (y, hom(x, z, sig))
        }
        Uncurry(g) => {
            let (y, h) = infer_dom_cod(g, sig)?;
            let (x, z) = split_hom(&h, sig).ok_or_else(|| {
                KernelError::Shape(format!(
                    "uncurry needs a hom codomain, got {}",
                    show(&h, mode)
                ))
            })?;
            (tn(x, y), z)
        }
        Name(f) => {
            let (x, y) = infer_dom_cod(f, sig)?;
            (TypeExpr::Unit, hom(x, y, sig))
        }
        Ev(x, y) => {
            let (x, y) = (ty(x)?, ty(y)?);
            (tn(x.clone(), hom(x, y.clone(), sig)), y)
        }
        Cup(x) => {
            let x = ty(x)?;
            (
                TypeExpr::Unit,
                tn(TypeExpr::dual(x.clone()).compact_normal(), x),
            )
        }
        Cap(x) => {
            let x = ty(x)?;
            (
                tn(x.clone(), TypeExpr::dual(x).compact_normal()),
                TypeExpr::Unit,
            )
        }
        Dup(x) => {
            let x = ty(x)?;
            (x.clone(), tn(x.clone(), x))
        }
        Del(x) => (ty(x)?, TypeExpr::Unit),
        Pair(f, g) => {
            let (a, b) = infer_dom_cod(f, sig)?;
            let (a2, c) = infer_dom_cod(g, sig)?;
            same(&a, &a2, mode)?;
            (a, tn(b, c))
        }
        Proj1(x, y) => {
            let (x, y) = (ty(x)?, ty(y)?);
            (tn(x.clone(), y), x)
        }
        Proj2(x, y) => {
            let (x, y) = (ty(x)?, ty(y)?);
            (tn(x, y.clone()), y)
        }
    })
}

/// One signature-invariant violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

/// Lists every violated signature invariant; empty means valid.
pub fn validate_signature(sig: &Signature) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen: Vec<&str> = Vec::new();
    let names = sig
        .objects
        .iter()
        .map(|s| s.as_str())
        .chain(sig.aliases.iter().map(|(n, _)| n.as_str()))
        .chain(sig.generators.iter().map(|g| g.name.as_str()))
        .chain(sig.terms.iter().map(|(n, _)| n.as_str()));
    for n in names {
        if seen.contains(&n) {
            out.push(Violation {
                subject: n.into(),
                message: "duplicate name".into(),
            });
        } else {
            seen.push(n);
        }
    }
    for (n, t) in &sig.aliases {
        if let Err(e) = check_type(t, sig) {
            out.push(Violation {
                subject: n.clone(),
                message: e.to_string(),
            });
        }
    }
    for g in &sig.generators {
        for t in [&g.dom, &g.cod] {
            if let Err(e) = check_type(t, sig) {
                out.push(Violation {
                    subject: g.name.clone(),
                    message: e.to_string(),
                });
            }
        }
    }
    for (n, t) in &sig.terms {
        if let Err(e) = infer_dom_cod(t, sig) {
            out.push(Violation {
                subject: n.clone(),
                message: e.to_string(),
            });
        }
    }
    out
}
