use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Object expressions of the free categories.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeExpr {
    Basic(String),
    Unit,
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
    /// Internal hom `X -o Y` (right-closed convention).
    Hom(Box<TypeExpr>, Box<TypeExpr>),
    Dual(Box<TypeExpr>),
}

impl TypeExpr {
    pub fn basic(name: impl Into<String>) -> Self {
        TypeExpr::Basic(name.into())
    }

    pub fn tensor(l: TypeExpr, r: TypeExpr) -> Self {
        TypeExpr::Tensor(Box::new(l), Box::new(r))
    }

    pub fn hom(s: TypeExpr, t: TypeExpr) -> Self {
        TypeExpr::Hom(Box::new(s), Box::new(t))
    }

    pub fn dual(x: TypeExpr) -> Self {
        TypeExpr::Dual(Box::new(x))
    }

    /// Right-nested tensor of a list of factors; the empty list is the unit.
    pub fn tensor_all(items: &[TypeExpr]) -> Self {
        match items.split_last() {
            None => TypeExpr::Unit,
            Some((last, rest)) => rest
                .iter()
                .rev()
                .fold(last.clone(), |acc, x| TypeExpr::tensor(x.clone(), acc)),
        }
    }

    /// Tensor factors with units dropped, left to right.
    pub fn atoms(&self) -> Vec<TypeExpr> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<TypeExpr>) {
        match self {
            TypeExpr::Unit => {}
            TypeExpr::Tensor(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            other => out.push(other.clone()),
        }
    }

    pub fn mentions_hom(&self) -> bool {
        match self {
            TypeExpr::Hom(..) => true,
            TypeExpr::Tensor(l, r) => l.mentions_hom() || r.mentions_hom(),
            TypeExpr::Dual(x) => x.mentions_hom(),
            _ => false,
        }
    }

    pub fn mentions_dual(&self) -> bool {
        match self {
            TypeExpr::Dual(..) => true,
            TypeExpr::Tensor(l, r) | TypeExpr::Hom(l, r) => l.mentions_dual() || r.mentions_dual(),
            _ => false,
        }
    }

    /// Every basic name occurring in the expression.
    pub fn basics(&self, out: &mut Vec<String>) {
        match self {
            TypeExpr::Basic(n) => out.push(n.clone()),
            TypeExpr::Unit => {}
            TypeExpr::Tensor(l, r) | TypeExpr::Hom(l, r) => {
                l.basics(out);
                r.basics(out);
            }
            TypeExpr::Dual(x) => x.basics(out),
        }
    }

    /// Replace basic names according to `f` (used for metavariable instantiation).
    pub fn subst(&self, f: &dyn Fn(&str) -> Option<TypeExpr>) -> TypeExpr {
        match self {
            TypeExpr::Basic(n) => f(n).unwrap_or_else(|| self.clone()),
            TypeExpr::Unit => TypeExpr::Unit,
            TypeExpr::Tensor(l, r) => TypeExpr::tensor(l.subst(f), r.subst(f)),
            TypeExpr::Hom(l, r) => TypeExpr::hom(l.subst(f), r.subst(f)),
            TypeExpr::Dual(x) => TypeExpr::dual(x.subst(f)),
        }
    }

    /// Compact-mode canonical form: `X -o Y` becomes `X^ * Y`, duals are pushed
    /// onto basic names, `X^^ = X` and `I^ = I`.
    pub fn compact_normal(&self) -> TypeExpr {
        match self {
            TypeExpr::Basic(_) | TypeExpr::Unit => self.clone(),
            TypeExpr::Tensor(l, r) => TypeExpr::tensor(l.compact_normal(), r.compact_normal()),
            TypeExpr::Hom(l, r) => {
                TypeExpr::tensor(dualize(&l.compact_normal()), r.compact_normal())
            }
            TypeExpr::Dual(x) => dualize(&x.compact_normal()),
        }
    }

    pub fn display_in(&self, mode: Mode) -> TypeDisplay<'_> {
        TypeDisplay {
            ty: self,
            unit: if mode.caps().cartesian { "1" } else { "I" },
        }
    }
}

/// Dual of an expression already in compact normal form.
fn dualize(x: &TypeExpr) -> TypeExpr {
    match x {
        TypeExpr::Unit => TypeExpr::Unit,
        TypeExpr::Basic(_) => TypeExpr::dual(x.clone()),
        TypeExpr::Dual(inner) => (**inner).clone(),
        TypeExpr::Tensor(l, r) => TypeExpr::tensor(dualize(l), dualize(r)),
        TypeExpr::Hom(l, r) => TypeExpr::tensor(dualize(&dualize(l)), dualize(r)),
    }
}

pub struct TypeDisplay<'a> {
    ty: &'a TypeExpr,
    unit: &'static str,
}

impl TypeDisplay<'_> {
    fn write(&self, t: &TypeExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // precedence: 0 = hom, 1 = tensor, 2 = postfix/atom
        fn prec(t: &TypeExpr) -> u8 {
            match t {
                TypeExpr::Hom(..) => 0,
                TypeExpr::Tensor(..) => 1,
                _ => 2,
            }
        }
        let paren =
            |this: &Self, t: &TypeExpr, f: &mut fmt::Formatter<'_>, need: bool| -> fmt::Result {
                if need {
                    f.write_str("(")?;
                    this.write(t, f)?;
                    f.write_str(")")
                } else {
                    this.write(t, f)
                }
            };
        match t {
            TypeExpr::Basic(n) => f.write_str(n),
            TypeExpr::Unit => f.write_str(self.unit),
            TypeExpr::Tensor(l, r) => {
                paren(self, l, f, prec(l) < 1)?;
                f.write_str(" * ")?;
                paren(self, r, f, prec(r) < 2)
            }
            TypeExpr::Hom(l, r) => {
                paren(self, l, f, prec(l) < 1)?;
                f.write_str(" -o ")?;
                paren(self, r, f, false)
            }
            TypeExpr::Dual(x) => {
                paren(self, x, f, prec(x) < 2)?;
                f.write_str("^")
            }
        }
    }
}

impl fmt::Display for TypeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.ty, f)
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        TypeDisplay {
            ty: self,
            unit: "I",
        }
        .fmt(f)
    }
}

/// Structure available in a free category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Monoidal,
    Braided,
    Symmetric,
    Cartesian,
    ClosedMonoidal,
    ClosedBraided,
    ClosedSymmetric,
    CartesianClosed,
    CompactSymmetric,
}

/// The capabilities a mode grants. The chart order on modes is inclusion of
/// capability sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Caps {
    pub braided: bool,
    pub symmetric: bool,
    pub cartesian: bool,
    pub closed: bool,
    pub compact: bool,
}

impl Caps {
    pub fn subset_of(&self, other: &Caps) -> bool {
        (!self.braided || other.braided)
            && (!self.symmetric || other.symmetric)
            && (!self.cartesian || other.cartesian)
            && (!self.closed || other.closed)
            && (!self.compact || other.compact)
    }

    pub fn join(&self, other: &Caps) -> Caps {
        Caps {
            braided: self.braided || other.braided,
            symmetric: self.symmetric || other.symmetric,
            cartesian: self.cartesian || other.cartesian,
            closed: self.closed || other.closed,
            compact: self.compact || other.compact,
        }
    }
}

impl Mode {
    pub const ALL: [Mode; 9] = [
        Mode::Monoidal,
        Mode::Braided,
        Mode::Symmetric,
        Mode::Cartesian,
        Mode::ClosedMonoidal,
        Mode::ClosedBraided,
        Mode::ClosedSymmetric,
        Mode::CartesianClosed,
        Mode::CompactSymmetric,
    ];

    pub fn caps(self) -> Caps {
        let (b, s, ca, cl, co) = match self {
            Mode::Monoidal => (false, false, false, false, false),
            Mode::Braided => (true, false, false, false, false),
            Mode::Symmetric => (true, true, false, false, false),
            Mode::Cartesian => (true, true, true, false, false),
            Mode::ClosedMonoidal => (false, false, false, true, false),
            Mode::ClosedBraided => (true, false, false, true, false),
            Mode::ClosedSymmetric => (true, true, false, true, false),
            Mode::CartesianClosed => (true, true, true, true, false),
            Mode::CompactSymmetric => (true, true, false, true, true),
        };
        Caps {
            braided: b,
            symmetric: s,
            cartesian: ca,
            closed: cl,
            compact: co,
        }
    }

    /// Chart order: `self <= other`.
    pub fn le(self, other: Mode) -> bool {
        self.caps().subset_of(&other.caps())
    }

    /// Least mode whose capabilities include `caps`, if one exists.
    pub fn least_with(caps: Caps) -> Option<Mode> {
        Mode::ALL
            .iter()
            .copied()
            .filter(|m| caps.subset_of(&m.caps()))
            .min_by_key(|m| {
                let c = m.caps();
                [c.braided, c.symmetric, c.cartesian, c.closed, c.compact]
                    .iter()
                    .filter(|b| **b)
                    .count()
            })
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Monoidal => "monoidal",
            Mode::Braided => "braided",
            Mode::Symmetric => "symmetric",
            Mode::Cartesian => "cartesian",
            Mode::ClosedMonoidal => "closed-monoidal",
            Mode::ClosedBraided => "closed-braided",
            Mode::ClosedSymmetric => "closed-symmetric",
            Mode::CartesianClosed => "cartesian-closed",
            Mode::CompactSymmetric => "compact-symmetric",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Mode::ALL.iter().copied().find(|m| m.name() == s)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Constructor tags for types and morphism terms, used for mode gating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ctor {
    Gen,
    Id,
    Seq,
    Par,
    Assoc,
    Unassoc,
    LeftU,
    UnleftU,
    RightU,
    UnrightU,
    Braid,
    BraidInv,
    Curry,
    Uncurry,
    Ev,
    Cup,
    Cap,
    Dup,
    Del,
    Pair,
    Proj1,
    Proj2,
    Name,
    /// The `-o` type former.
    HomType,
    /// The `^` type former.
    DualType,
}

impl Ctor {
    pub const ALL: [Ctor; 25] = [
        Ctor::Gen,
        Ctor::Id,
        Ctor::Seq,
        Ctor::Par,
        Ctor::Assoc,
        Ctor::Unassoc,
        Ctor::LeftU,
        Ctor::UnleftU,
        Ctor::RightU,
        Ctor::UnrightU,
        Ctor::Braid,
        Ctor::BraidInv,
        Ctor::Curry,
        Ctor::Uncurry,
        Ctor::Ev,
        Ctor::Cup,
        Ctor::Cap,
        Ctor::Dup,
        Ctor::Del,
        Ctor::Pair,
        Ctor::Proj1,
        Ctor::Proj2,
        Ctor::Name,
        Ctor::HomType,
        Ctor::DualType,
    ];

    /// Capabilities the constructor needs.
    pub fn required(self) -> Caps {
        let mut c = Caps::default();
        match self {
            Ctor::Braid | Ctor::BraidInv => c.braided = true,
            Ctor::Curry | Ctor::Uncurry | Ctor::Ev | Ctor::Name | Ctor::HomType => c.closed = true,
            Ctor::Cup | Ctor::Cap | Ctor::DualType => {
                c.braided = true;
                c.symmetric = true;
                c.closed = true;
                c.compact = true;
            }
            Ctor::Dup | Ctor::Del | Ctor::Pair | Ctor::Proj1 | Ctor::Proj2 => {
                c.braided = true;
                c.symmetric = true;
                c.cartesian = true;
            }
            _ => {}
        }
        c
    }

    /// The least mode admitting the constructor.
    pub fn minimal_mode(self) -> Mode {
        Mode::least_with(self.required()).expect("every constructor has a minimal mode")
    }

    pub fn name(self) -> &'static str {
        match self {
            Ctor::Gen => "generator",
            Ctor::Id => "id",
            Ctor::Seq => ";",
            Ctor::Par => "*",
            Ctor::Assoc => "assoc",
            Ctor::Unassoc => "unassoc",
            Ctor::LeftU => "left",
            Ctor::UnleftU => "unleft",
            Ctor::RightU => "right",
            Ctor::UnrightU => "unright",
            Ctor::Braid => "braid",
            Ctor::BraidInv => "braidinv",
            Ctor::Curry => "curry",
            Ctor::Uncurry => "uncurry",
            Ctor::Ev => "ev",
            Ctor::Cup => "cup",
            Ctor::Cap => "cap",
            Ctor::Dup => "dup",
            Ctor::Del => "del",
            Ctor::Pair => "pair",
            Ctor::Proj1 => "p1",
            Ctor::Proj2 => "p2",
            Ctor::Name => "name",
            Ctor::HomType => "-o",
            Ctor::DualType => "^",
        }
    }
}

/// Whether mode `m` admits constructor `c`.
pub fn mode_allows(m: Mode, c: Ctor) -> bool {
    c.required().subset_of(&m.caps())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_edges() {
        assert!(mode_allows(Mode::Symmetric, Ctor::Braid));
        assert!(!mode_allows(Mode::Monoidal, Ctor::Braid));
        assert!(mode_allows(Mode::CartesianClosed, Ctor::Dup));
        assert!(!mode_allows(Mode::ClosedSymmetric, Ctor::Dup));
        assert!(!mode_allows(Mode::ClosedSymmetric, Ctor::Cup));
        assert!(mode_allows(Mode::CompactSymmetric, Ctor::Curry));
    }

    #[test]
    fn minimal_modes() {
        assert_eq!(Ctor::Braid.minimal_mode(), Mode::Braided);
        assert_eq!(Ctor::Dup.minimal_mode(), Mode::Cartesian);
        assert_eq!(Ctor::Curry.minimal_mode(), Mode::ClosedMonoidal);
        assert_eq!(Ctor::Cup.minimal_mode(), Mode::CompactSymmetric);
        assert_eq!(Ctor::Assoc.minimal_mode(), Mode::Monoidal);
    }

    #[test]
    fn mode_order_is_partial() {
        assert!(Mode::Monoidal.le(Mode::CompactSymmetric));
        assert!(Mode::Cartesian.le(Mode::CartesianClosed));
        assert!(!Mode::Cartesian.le(Mode::CompactSymmetric));
        assert!(!Mode::CompactSymmetric.le(Mode::CartesianClosed));
        for m in Mode::ALL {
            assert!(m.le(m));
            assert_eq!(Mode::from_name(m.name()), Some(m));
        }
    }

    #[test]
    fn compact_normalization() {
        let x = TypeExpr::basic("X");
        let y = TypeExpr::basic("Y");
        let h = TypeExpr::hom(x.clone(), y.clone());
        assert_eq!(
            h.compact_normal(),
            TypeExpr::tensor(TypeExpr::dual(x.clone()), y.clone())
        );
        let dd = TypeExpr::dual(TypeExpr::dual(x.clone()));
        assert_eq!(dd.compact_normal(), x);
    }

    #[test]
    fn atoms_drop_units() {
        let x = TypeExpr::basic("X");
        let t = TypeExpr::tensor(TypeExpr::tensor(x.clone(), TypeExpr::Unit), x.clone());
        assert_eq!(t.atoms(), alloc::vec![x.clone(), x]);
        assert_eq!(TypeExpr::tensor_all(&[]), TypeExpr::Unit);
    }
}
