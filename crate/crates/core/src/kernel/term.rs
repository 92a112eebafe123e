use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use super::types::{Ctor, Mode, TypeExpr};

/// Morphism terms of the free category. `Seq(f, g)` is diagrammatic: first `f`, then `g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorTerm {
    Gen(String),
    Id(TypeExpr),
    Seq(Box<MorTerm>, Box<MorTerm>),
    Par(Box<MorTerm>, Box<MorTerm>),
    Assoc(TypeExpr, TypeExpr, TypeExpr),
    Unassoc(TypeExpr, TypeExpr, TypeExpr),
    LeftU(TypeExpr),
    UnleftU(TypeExpr),
    RightU(TypeExpr),
    UnrightU(TypeExpr),
    Braid(TypeExpr, TypeExpr),
    BraidInv(TypeExpr, TypeExpr),
    Curry(Box<MorTerm>),
    Uncurry(Box<MorTerm>),
    Ev(TypeExpr, TypeExpr),
    Cup(TypeExpr),
    Cap(TypeExpr),
    Dup(TypeExpr),
    Del(TypeExpr),
    Pair(Box<MorTerm>, Box<MorTerm>),
    Proj1(TypeExpr, TypeExpr),
    Proj2(TypeExpr, TypeExpr),
    Name(Box<MorTerm>),
}

impl MorTerm {
    pub fn gen(name: impl Into<String>) -> Self {
        MorTerm::Gen(name.into())
    }

    pub fn seq(f: MorTerm, g: MorTerm) -> Self {
        MorTerm::Seq(Box::new(f), Box::new(g))
    }

    pub fn par(f: MorTerm, g: MorTerm) -> Self {
        MorTerm::Par(Box::new(f), Box::new(g))
    }

    pub fn curry(f: MorTerm) -> Self {
        MorTerm::Curry(Box::new(f))
    }

    pub fn uncurry(f: MorTerm) -> Self {
        MorTerm::Uncurry(Box::new(f))
    }

    pub fn pair(f: MorTerm, g: MorTerm) -> Self {
        MorTerm::Pair(Box::new(f), Box::new(g))
    }

    pub fn name_of(f: MorTerm) -> Self {
        MorTerm::Name(Box::new(f))
    }

    /// Composition that drops identity factors.
    pub fn then(self, g: MorTerm) -> Self {
        match (&self, &g) {
            (MorTerm::Id(_), _) => g,
            (_, MorTerm::Id(_)) => self,
            _ => MorTerm::seq(self, g),
        }
    }

    /// Tensor that merges two identities into one.
    pub fn tensor(self, g: MorTerm) -> Self {
        match (self, g) {
            (MorTerm::Id(a), MorTerm::Id(b)) => MorTerm::Id(TypeExpr::tensor(a, b)),
            (f, g) => MorTerm::par(f, g),
        }
    }

    pub fn ctor(&self) -> Ctor {
        match self {
            MorTerm::Gen(_) => Ctor::Gen,
            MorTerm::Id(_) => Ctor::Id,
            MorTerm::Seq(..) => Ctor::Seq,
            MorTerm::Par(..) => Ctor::Par,
            MorTerm::Assoc(..) => Ctor::Assoc,
            MorTerm::Unassoc(..) => Ctor::Unassoc,
            MorTerm::LeftU(_) => Ctor::LeftU,
            MorTerm::UnleftU(_) => Ctor::UnleftU,
            MorTerm::RightU(_) => Ctor::RightU,
            MorTerm::UnrightU(_) => Ctor::UnrightU,
            MorTerm::Braid(..) => Ctor::Braid,
            MorTerm::BraidInv(..) => Ctor::BraidInv,
            MorTerm::Curry(_) => Ctor::Curry,
            MorTerm::Uncurry(_) => Ctor::Uncurry,
            MorTerm::Ev(..) => Ctor::Ev,
            MorTerm::Cup(_) => Ctor::Cup,
            MorTerm::Cap(_) => Ctor::Cap,
            MorTerm::Dup(_) => Ctor::Dup,
            MorTerm::Del(_) => Ctor::Del,
            MorTerm::Pair(..) => Ctor::Pair,
            MorTerm::Proj1(..) => Ctor::Proj1,
            MorTerm::Proj2(..) => Ctor::Proj2,
            MorTerm::Name(_) => Ctor::Name,
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            MorTerm::Seq(a, b) | MorTerm::Par(a, b) | MorTerm::Pair(a, b) => a.size() + b.size(),
            MorTerm::Curry(a) | MorTerm::Uncurry(a) | MorTerm::Name(a) => a.size(),
            _ => 0,
        }
    }

    /// True if the term is built only from identities, associators, unitors and braids.
    pub fn is_structural(&self) -> bool {
        match self {
            MorTerm::Id(_)
            | MorTerm::Assoc(..)
            | MorTerm::Unassoc(..)
            | MorTerm::LeftU(_)
            | MorTerm::UnleftU(_)
            | MorTerm::RightU(_)
            | MorTerm::UnrightU(_)
            | MorTerm::Braid(..)
            | MorTerm::BraidInv(..) => true,
            MorTerm::Seq(a, b) | MorTerm::Par(a, b) => a.is_structural() && b.is_structural(),
            _ => false,
        }
    }

    /// Visit every type annotation.
    pub fn for_each_type(&self, f: &mut dyn FnMut(&TypeExpr)) {
        match self {
            MorTerm::Gen(_) => {}
            MorTerm::Id(x)
            | MorTerm::LeftU(x)
            | MorTerm::UnleftU(x)
            | MorTerm::RightU(x)
            | MorTerm::UnrightU(x)
            | MorTerm::Cup(x)
            | MorTerm::Cap(x)
            | MorTerm::Dup(x)
            | MorTerm::Del(x) => f(x),
            MorTerm::Assoc(x, y, z) | MorTerm::Unassoc(x, y, z) => {
                f(x);
                f(y);
                f(z)
            }
            MorTerm::Braid(x, y)
            | MorTerm::BraidInv(x, y)
            | MorTerm::Ev(x, y)
            | MorTerm::Proj1(x, y)
            | MorTerm::Proj2(x, y) => {
                f(x);
                f(y)
            }
            MorTerm::Seq(a, b) | MorTerm::Par(a, b) | MorTerm::Pair(a, b) => {
                a.for_each_type(f);
                b.for_each_type(f)
            }
            MorTerm::Curry(a) | MorTerm::Uncurry(a) | MorTerm::Name(a) => a.for_each_type(f),
        }
    }

    /// Visit every constructor node, outermost first.
    pub fn for_each_node(&self, f: &mut dyn FnMut(&MorTerm)) {
        f(self);
        match self {
            MorTerm::Seq(a, b) | MorTerm::Par(a, b) | MorTerm::Pair(a, b) => {
                a.for_each_node(f);
                b.for_each_node(f)
            }
            MorTerm::Curry(a) | MorTerm::Uncurry(a) | MorTerm::Name(a) => a.for_each_node(f),
            _ => {}
        }
    }

    /// Rewrite every type annotation with `f`.
    pub fn map_types(&self, f: &dyn Fn(&TypeExpr) -> TypeExpr) -> MorTerm {
        use MorTerm::*;
        match self {
            Gen(n) => Gen(n.clone()),
            Id(x) => Id(f(x)),
            Seq(a, b) => MorTerm::seq(a.map_types(f), b.map_types(f)),
            Par(a, b) => MorTerm::par(a.map_types(f), b.map_types(f)),
            Pair(a, b) => MorTerm::pair(a.map_types(f), b.map_types(f)),
            Assoc(x, y, z) => Assoc(f(x), f(y), f(z)),
            Unassoc(x, y, z) => Unassoc(f(x), f(y), f(z)),
            LeftU(x) => LeftU(f(x)),
            UnleftU(x) => UnleftU(f(x)),
            RightU(x) => RightU(f(x)),
            UnrightU(x) => UnrightU(f(x)),
            Braid(x, y) => Braid(f(x), f(y)),
            BraidInv(x, y) => BraidInv(f(x), f(y)),
            Curry(a) => MorTerm::curry(a.map_types(f)),
            Uncurry(a) => MorTerm::uncurry(a.map_types(f)),
            Name(a) => MorTerm::name_of(a.map_types(f)),
            Ev(x, y) => Ev(f(x), f(y)),
            Cup(x) => Cup(f(x)),
            Cap(x) => Cap(f(x)),
            Dup(x) => Dup(f(x)),
            Del(x) => Del(f(x)),
            Proj1(x, y) => Proj1(f(x), f(y)),
            Proj2(x, y) => Proj2(f(x), f(y)),
        }
    }

    pub fn display_in(&self, mode: Mode) -> MorDisplay<'_> {
        MorDisplay { term: self, mode }
    }
}

pub struct MorDisplay<'a> {
    term: &'a MorTerm,
    mode: Mode,
}

impl MorDisplay<'_> {
    fn prec(t: &MorTerm) -> u8 {
        match t {
            MorTerm::Seq(..) => 0,
            MorTerm::Par(..) => 1,
            _ => 2,
        }
    }

    fn sub(&self, t: &MorTerm, f: &mut fmt::Formatter<'_>, paren: bool) -> fmt::Result {
        let d = MorDisplay {
            term: t,
            mode: self.mode,
        };
        if paren {
            write!(f, "({})", d)
        } else {
            write!(f, "{}", d)
        }
    }

    fn types(&self, kw: &str, ts: &[&TypeExpr], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", kw)?;
        for (i, t) in ts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", t.display_in(self.mode))?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for MorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MorTerm::*;
        match self.term {
            Gen(n) => f.write_str(n),
            Id(x) => self.types("id", &[x], f),
            Seq(a, b) => {
                self.sub(a, f, false)?;
                f.write_str(" ; ")?;
                self.sub(b, f, Self::prec(b) < 1)
            }
            Par(a, b) => {
                self.sub(a, f, Self::prec(a) < 1)?;
                f.write_str(" * ")?;
                self.sub(b, f, Self::prec(b) < 2)
            }
            Assoc(x, y, z) => self.types("assoc", &[x, y, z], f),
            Unassoc(x, y, z) => self.types("unassoc", &[x, y, z], f),
            LeftU(x) => self.types("left", &[x], f),
            UnleftU(x) => self.types("unleft", &[x], f),
            RightU(x) => self.types("right", &[x], f),
            UnrightU(x) => self.types("unright", &[x], f),
            Braid(x, y) => self.types("braid", &[x, y], f),
            BraidInv(x, y) => self.types("braidinv", &[x, y], f),
            Ev(x, y) => self.types("ev", &[x, y], f),
            Cup(x) => self.types("cup", &[x], f),
            Cap(x) => self.types("cap", &[x], f),
            Dup(x) => self.types("dup", &[x], f),
            Del(x) => self.types("del", &[x], f),
            Proj1(x, y) => self.types("p1", &[x, y], f),
            Proj2(x, y) => self.types("p2", &[x, y], f),
            Curry(a) => {
                f.write_str("curry")?;
                self.sub(a, f, true)
            }
            Uncurry(a) => {
                f.write_str("uncurry")?;
                self.sub(a, f, true)
            }
            Name(a) => {
                f.write_str("name")?;
                self.sub(a, f, true)
            }
            Pair(a, b) => {
                f.write_str("pair(")?;
                self.sub(a, f, false)?;
                f.write_str(", ")?;
                self.sub(b, f, false)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for MorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in(Mode::Symmetric).fmt(f)
    }
}
