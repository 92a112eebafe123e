use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::syntax::{Combinator, LinType};
use super::LinError;
use crate::kernel::{infer_dom_cod, Generator, Mode, MorTerm, Signature, TypeExpr};

/// A linear type theory: basic types, type equations given as aliases, and
/// function symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinTheory {
    pub basic_types: Vec<String>,
    pub aliases: Vec<(String, LinType)>,
    pub functions: Vec<Generator>,
}

impl LinTheory {
    pub fn new() -> Self {
        LinTheory::default()
    }

    pub fn add_type(&mut self, name: &str) {
        if !self.basic_types.iter().any(|t| t == name) {
            self.basic_types.push(name.into());
        }
    }

    pub fn add_function(&mut self, name: &str, dom: LinType, cod: LinType) {
        let mut names = Vec::new();
        dom.basics(&mut names);
        cod.basics(&mut names);
        for n in names {
            self.add_type(&n);
        }
        self.functions.push(Generator {
            name: name.into(),
            dom,
            cod,
        });
    }

    pub fn function(&self, name: &str) -> Option<Combinator> {
        self.functions
            .iter()
            .find(|g| g.name == name)
            .map(|g| Combinator::func(g.name.clone(), g.dom.clone(), g.cod.clone()))
    }
}

/// Kernel names of the structural morphisms and the basic combinators they are
/// identified with, plus composition.
pub const IDENTIFICATIONS: [(&str, &str); 10] = [
    ("1", "id"),
    ("a", "assoc"),
    ("a^-1", "unassoc"),
    ("b", "braid"),
    ("l", "left"),
    ("l^-1", "unleft"),
    ("r", "right"),
    ("r^-1", "unright"),
    ("ev", "eval"),
    ("g □ f", "g ∘ f"),
];

/// The closed symmetric monoidal signature presented by `th`: its basic types
/// as objects and its function symbols as generators.
pub fn theory_to_kernel(th: &LinTheory) -> Signature {
    let mut sig = Signature::new(Mode::ClosedSymmetric);
    for t in &th.basic_types {
        sig.add_object(t);
    }
    sig.aliases = th.aliases.clone();
    for g in &th.functions {
        sig.add_generator(&g.name, g.dom.clone(), g.cod.clone());
    }
    sig
}

/// Translation of a combinator to a kernel term with the same type.
pub fn combinator_to_kernel(c: &Combinator) -> MorTerm {
    use Combinator as C;
    match c {
        C::Fn { name, .. } => MorTerm::gen(name.clone()),
        C::Id(x) => MorTerm::Id(x.clone()),
        C::Assoc(x, y, z) => MorTerm::Assoc(x.clone(), y.clone(), z.clone()),
        C::Unassoc(x, y, z) => MorTerm::Unassoc(x.clone(), y.clone(), z.clone()),
        C::Braid(x, y) => MorTerm::Braid(x.clone(), y.clone()),
        C::Left(x) => MorTerm::LeftU(x.clone()),
        C::Unleft(x) => MorTerm::UnleftU(x.clone()),
        C::Right(x) => MorTerm::RightU(x.clone()),
        C::Unright(x) => MorTerm::UnrightU(x.clone()),
        C::Eval(x, y) => MorTerm::Ev(x.clone(), y.clone()),
        C::Comp(g, f) => MorTerm::seq(combinator_to_kernel(f), combinator_to_kernel(g)),
        C::Tensor(f, g) => MorTerm::par(combinator_to_kernel(f), combinator_to_kernel(g)),
        C::Curry(f) => MorTerm::curry(combinator_to_kernel(f)),
    }
}

/// The linear type theory of a closed symmetric monoidal signature. Modes below
/// closed-symmetric are accepted since their signatures present the same data.
pub fn kernel_to_theory(sig: &Signature) -> Result<LinTheory, LinError> {
    if !sig.mode.le(Mode::ClosedSymmetric) {
        return Err(LinError::Mode(sig.mode));
    }
    let mut th = LinTheory::new();
    for o in &sig.objects {
        th.add_type(o);
    }
    th.aliases = sig.aliases.clone();
    for g in &sig.generators {
        th.add_function(&g.name, sig.normalize(&g.dom), sig.normalize(&g.cod));
    }
    Ok(th)
}

/// Translation of a kernel term to a combinator, following the
/// identifications. Braid inverses become braids and `uncurry`/`name` are
/// expanded through `eval` and `curry`.
pub fn kernel_to_combinator(m: &MorTerm, sig: &Signature) -> Result<Combinator, LinError> {
    use Combinator as C;
    if !sig.mode.le(Mode::ClosedSymmetric) {
        return Err(LinError::Mode(sig.mode));
    }
    let norm = |t: &TypeExpr| sig.normalize(t);
    Ok(match m {
        MorTerm::Gen(n) => {
            let g = sig
                .generator(n)
                .ok_or_else(|| crate::kernel::KernelError::UnknownGenerator(n.clone()))?;
            C::func(n.clone(), norm(&g.dom), norm(&g.cod))
        }
        MorTerm::Id(x) => C::Id(norm(x)),
        MorTerm::Seq(f, g) => C::comp(kernel_to_combinator(g, sig)?, kernel_to_combinator(f, sig)?),
        MorTerm::Par(f, g) => {
            C::tensor(kernel_to_combinator(f, sig)?, kernel_to_combinator(g, sig)?)
        }
        MorTerm::Assoc(x, y, z) => C::Assoc(norm(x), norm(y), norm(z)),
        MorTerm::Unassoc(x, y, z) => C::Unassoc(norm(x), norm(y), norm(z)),
        MorTerm::LeftU(x) => C::Left(norm(x)),
        MorTerm::UnleftU(x) => C::Unleft(norm(x)),
        MorTerm::RightU(x) => C::Right(norm(x)),
        MorTerm::UnrightU(x) => C::Unright(norm(x)),
        MorTerm::Braid(x, y) => C::Braid(norm(x), norm(y)),
        MorTerm::BraidInv(x, y) => C::Braid(norm(y), norm(x)),
        MorTerm::Ev(x, y) => C::Eval(norm(x), norm(y)),
        MorTerm::Curry(f) => C::curry(kernel_to_combinator(f, sig)?),
        MorTerm::Uncurry(f) => {
            // f : Y -> X -o Z becomes eval ∘ (id_X ⊗ f) : X * Y -> Z
            let (_, h) = infer_dom_cod(f, sig)?;
            let TypeExpr::Hom(x, z) = h else {
                return Err(LinError::Shape(format!(
                    "uncurry needs a hom codomain, got {}",
                    h.display_in(sig.mode)
                )));
            };
            C::comp(
                C::Eval(*x.clone(), *z),
                C::tensor(C::Id(*x), kernel_to_combinator(f, sig)?),
            )
        }
        MorTerm::Name(f) => {
            // f : X -> Y becomes curry(f ∘ right_X) : I -> X -o Y
            let (x, _) = infer_dom_cod(f, sig)?;
            C::curry(C::comp(kernel_to_combinator(f, sig)?, C::Right(x)))
        }
        other => {
            return Err(LinError::Unsupported(format!(
                "{}",
                other.display_in(sig.mode)
            )))
        }
    })
}
