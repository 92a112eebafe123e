//! Single-formula sequents of multiplicative intuitionistic linear logic,
//! proof trees, checking, and compilation of proofs to morphism terms.

mod sexpr;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::kernel::{mode_allows, Ctor, KernelError, Mode, MorTerm, Signature, TypeExpr};

pub use sexpr::{parse_proof, parse_proof_file, parse_proof_with, parse_sequent};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub lhs: TypeExpr,
    pub rhs: TypeExpr,
}

impl Sequent {
    pub fn new(lhs: TypeExpr, rhs: TypeExpr) -> Self {
        Sequent { lhs, rhs }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    I,
    Cut,
    Tensor,
    A,
    AInv,
    L,
    LInv,
    R,
    RInv,
    B,
    C,
    CInv,
    Ev,
    Alpha,
    AlphaInv,
    Icomp,
    /// Nonlogical axiom citing a signature generator.
    Gen(String),
    /// Open premise of a macro fragment.
    Hyp,
}

impl Rule {
    pub fn from_tag(tag: &str) -> Option<Rule> {
        Some(match tag {
            "i" => Rule::I,
            "cut" => Rule::Cut,
            "tensor" => Rule::Tensor,
            "a" => Rule::A,
            "a-inv" => Rule::AInv,
            "l" => Rule::L,
            "l-inv" => Rule::LInv,
            "r" => Rule::R,
            "r-inv" => Rule::RInv,
            "b" => Rule::B,
            "c" => Rule::C,
            "c-inv" => Rule::CInv,
            "ev" => Rule::Ev,
            "alpha" => Rule::Alpha,
            "alpha-inv" => Rule::AlphaInv,
            "icomp" => Rule::Icomp,
            _ => return None,
        })
    }

    pub fn tag(&self) -> &str {
        match self {
            Rule::I => "i",
            Rule::Cut => "cut",
            Rule::Tensor => "tensor",
            Rule::A => "a",
            Rule::AInv => "a-inv",
            Rule::L => "l",
            Rule::LInv => "l-inv",
            Rule::R => "r",
            Rule::RInv => "r-inv",
            Rule::B => "b",
            Rule::C => "c",
            Rule::CInv => "c-inv",
            Rule::Ev => "ev",
            Rule::Alpha => "alpha",
            Rule::AlphaInv => "alpha-inv",
            Rule::Icomp => "icomp",
            Rule::Gen(_) => "gen",
            Rule::Hyp => "hyp",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::I | Rule::Ev | Rule::Icomp | Rule::Gen(_) | Rule::Hyp => 0,
            Rule::Cut | Rule::Tensor => 2,
            _ => 1,
        }
    }

    pub fn is_macro(&self) -> bool {
        matches!(self, Rule::Ev | Rule::Alpha | Rule::AlphaInv | Rule::Icomp)
    }

    /// Structure the rule needs from the ambient category.
    fn ctor(&self) -> Option<Ctor> {
        match self {
            Rule::B => Some(Ctor::Braid),
            Rule::C | Rule::CInv | Rule::Ev | Rule::Icomp => Some(Ctor::Curry),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofTree {
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
    pub conclusion: Sequent,
}

impl ProofTree {
    pub fn new(rule: Rule, premises: Vec<ProofTree>, conclusion: Sequent) -> Self {
        ProofTree {
            rule,
            premises,
            conclusion,
        }
    }

    pub fn leaf(rule: Rule, conclusion: Sequent) -> Self {
        ProofTree {
            rule,
            premises: Vec::new(),
            conclusion,
        }
    }

    /// Number of rule applications, not counting open premises.
    pub fn size(&self) -> usize {
        let own = usize::from(self.rule != Rule::Hyp);
        own + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    fn fill_hyps(self, subs: &mut Vec<ProofTree>) -> ProofTree {
        if self.rule == Rule::Hyp && !subs.is_empty() {
            return subs.remove(0);
        }
        let premises = self
            .premises
            .into_iter()
            .map(|p| p.fill_hyps(subs))
            .collect();
        ProofTree {
            rule: self.rule,
            premises,
            conclusion: self.conclusion,
        }
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.rule.tag())?;
        if let Rule::Gen(n) = &self.rule {
            write!(f, " {}", n)?;
        }
        for p in &self.premises {
            write!(f, " {}", p)?;
        }
        write!(f, " \"{}\")", self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MillError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("unknown rule `{tag}` at {line}:{col}")]
    UnknownRule {
        tag: String,
        line: usize,
        col: usize,
    },
    #[error("rule `{tag}` takes {expected} premises, found {found} at {line}:{col}")]
    Arity {
        tag: String,
        expected: usize,
        found: usize,
        line: usize,
        col: usize,
    },
    #[error("macro `{0}`: {1}")]
    Macro(String, String),
    #[error("proof does not check: {0}")]
    Unchecked(ProofReport),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// One schema mismatch, located by the premise indices leading from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofViolation {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

impl fmt::Display for ProofViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.path {
            write!(f, ".{}", i)?;
        }
        write!(f, " ({}): {}", self.rule, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofReport {
    pub violations: Vec<ProofViolation>,
}

impl ProofReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

fn tensor(a: &TypeExpr, b: &TypeExpr) -> TypeExpr {
    TypeExpr::tensor(a.clone(), b.clone())
}

fn hom(a: &TypeExpr, b: &TypeExpr) -> TypeExpr {
    TypeExpr::hom(a.clone(), b.clone())
}

fn split(t: &TypeExpr) -> Option<(&TypeExpr, &TypeExpr)> {
    match t {
        TypeExpr::Tensor(l, r) => Some((l, r)),
        _ => None,
    }
}

fn split_hom(t: &TypeExpr) -> Option<(&TypeExpr, &TypeExpr)> {
    match t {
        TypeExpr::Hom(l, r) => Some((l, r)),
        _ => None,
    }
}

fn shape(what: &str, t: &TypeExpr) -> String {
    format!("expected {}, found {}", what, t)
}

/// The literal deduction a macro abbreviates, with metavariables bound in order:
/// `ev` (X, Y), `alpha` and `alpha-inv` (A, B, C, D), `icomp` (X, Y, Z).
/// The one premise of `alpha` and `alpha-inv` appears as an open `Hyp` leaf.
pub fn expand_macro(tag: &str, bindings: &[TypeExpr]) -> Result<ProofTree, MillError> {
    let rule = Rule::from_tag(tag)
        .filter(Rule::is_macro)
        .ok_or_else(|| MillError::Macro(tag.into(), "not a macro".into()))?;
    let need = match rule {
        Rule::Ev => 2,
        Rule::Icomp => 3,
        _ => 4,
    };
    if bindings.len() != need {
        return Err(MillError::Macro(
            tag.into(),
            format!("needs {} bindings, got {}", need, bindings.len()),
        ));
    }
    let b = bindings;
    let seq = Sequent::new;
    Ok(match rule {
        Rule::Ev => {
            let (x, y) = (&b[0], &b[1]);
            let h = hom(x, y);
            ProofTree::new(
                Rule::CInv,
                vec![ProofTree::leaf(Rule::I, seq(h.clone(), h.clone()))],
                seq(tensor(x, &h), y.clone()),
            )
        }
        Rule::Alpha => {
            let (a, bb, c, d) = (&b[0], &b[1], &b[2], &b[3]);
            let left = tensor(&tensor(a, bb), c);
            let right = tensor(a, &tensor(bb, c));
            let id = ProofTree::leaf(Rule::I, seq(left.clone(), left.clone()));
            let re = ProofTree::new(Rule::A, vec![id], seq(left.clone(), right.clone()));
            let hyp = ProofTree::leaf(Rule::Hyp, seq(right, d.clone()));
            ProofTree::new(Rule::Cut, vec![re, hyp], seq(left, d.clone()))
        }
        Rule::AlphaInv => {
            let (a, bb, c, d) = (&b[0], &b[1], &b[2], &b[3]);
            let left = tensor(&tensor(a, bb), c);
            let right = tensor(a, &tensor(bb, c));
            let id = ProofTree::leaf(Rule::I, seq(right.clone(), right.clone()));
            let re = ProofTree::new(Rule::AInv, vec![id], seq(right.clone(), left.clone()));
            let hyp = ProofTree::leaf(Rule::Hyp, seq(left, d.clone()));
            ProofTree::new(Rule::Cut, vec![re, hyp], seq(right, d.clone()))
        }
        Rule::Icomp => {
            let (x, y, z) = (&b[0], &b[1], &b[2]);
            let (xy, yz) = (hom(x, y), hom(y, z));
            let ev1 = ProofTree::leaf(Rule::Ev, seq(tensor(x, &xy), y.clone()));
            let idyz = ProofTree::leaf(Rule::I, seq(yz.clone(), yz.clone()));
            let t = ProofTree::new(
                Rule::Tensor,
                vec![ev1, idyz],
                seq(tensor(&tensor(x, &xy), &yz), tensor(y, &yz)),
            );
            let ev2 = ProofTree::leaf(Rule::Ev, seq(tensor(y, &yz), z.clone()));
            let cut = ProofTree::new(
                Rule::Cut,
                vec![t, ev2],
                seq(tensor(&tensor(x, &xy), &yz), z.clone()),
            );
            let ai = ProofTree::new(
                Rule::AlphaInv,
                vec![cut],
                seq(tensor(x, &tensor(&xy, &yz)), z.clone()),
            );
            ProofTree::new(Rule::C, vec![ai], seq(tensor(&xy, &yz), hom(x, z)))
        }
        _ => unreachable!(),
    })
}

/// Reads macro bindings off a node's conclusion and premises.
fn macro_bindings(p: &ProofTree) -> Result<Vec<TypeExpr>, String> {
    let c = &p.conclusion;
    match p.rule {
        Rule::Ev => {
            let (x, _) = split(&c.lhs).ok_or_else(|| shape("X * (X -o Y) on the left", &c.lhs))?;
            Ok(vec![x.clone(), c.rhs.clone()])
        }
        Rule::Alpha | Rule::AlphaInv => {
            let prem = &p.premises.first().ok_or("missing premise")?.conclusion;
            let (a, b, cc) = if p.rule == Rule::Alpha {
                let (a, bc) = split(&prem.lhs)
                    .ok_or_else(|| shape("A * (B * C) on the premise's left", &prem.lhs))?;
                let (b, cc) = split(bc)
                    .ok_or_else(|| shape("A * (B * C) on the premise's left", &prem.lhs))?;
                (a, b, cc)
            } else {
                let (ab, cc) = split(&prem.lhs)
                    .ok_or_else(|| shape("(A * B) * C on the premise's left", &prem.lhs))?;
                let (a, b) = split(ab)
                    .ok_or_else(|| shape("(A * B) * C on the premise's left", &prem.lhs))?;
                (a, b, cc)
            };
            Ok(vec![a.clone(), b.clone(), cc.clone(), prem.rhs.clone()])
        }
        Rule::Icomp => {
            let bad = || shape("(X -o Y) * (Y -o Z) on the left", &c.lhs);
            let (h1, h2) = split(&c.lhs).ok_or_else(bad)?;
            let (x, y) = split_hom(h1).ok_or_else(bad)?;
            let (_, z) = split_hom(h2).ok_or_else(bad)?;
            Ok(vec![x.clone(), y.clone(), z.clone()])
        }
        _ => Err("not a macro".into()),
    }
}

/// The deduction a macro node abbreviates, with open premises.
fn expansion(p: &ProofTree) -> Result<ProofTree, String> {
    let b = macro_bindings(p)?;
    expand_macro(p.rule.tag(), &b).map_err(|e| e.to_string())
}

fn hyps<'t>(t: &'t ProofTree, out: &mut Vec<&'t ProofTree>) {
    if t.rule == Rule::Hyp {
        out.push(t);
    }
    for q in &t.premises {
        hyps(q, out);
    }
}

struct Checker<'a> {
    sig: &'a Signature,
    /// Accept open premises (inside macro expansions).
    open: bool,
    out: Vec<ProofViolation>,
}

impl Checker<'_> {
    fn same(&self, a: &Sequent, b: &Sequent) -> bool {
        self.sig.normalize(&a.lhs) == self.sig.normalize(&b.lhs)
            && self.sig.normalize(&a.rhs) == self.sig.normalize(&b.rhs)
    }

    fn violation(&mut self, path: &[usize], p: &ProofTree, message: String) {
        self.out.push(ProofViolation {
            path: path.to_vec(),
            rule: p.rule.tag().to_string(),
            message,
        });
    }

    /// Expected conclusion of a non-macro node, given its premises.
    fn expected(&self, p: &ProofTree) -> Result<Sequent, String> {
        let c = &p.conclusion;
        let pr: Vec<&Sequent> = p.premises.iter().map(|q| &q.conclusion).collect();
        let seq = Sequent::new;
        Ok(match &p.rule {
            Rule::I => seq(c.lhs.clone(), c.lhs.clone()),
            Rule::Gen(name) => {
                let g = self
                    .sig
                    .generator(name)
                    .ok_or_else(|| format!("unknown generator `{}`", name))?;
                seq(g.dom.clone(), g.cod.clone())
            }
            Rule::Cut => {
                let (l, r) = (pr[0], pr[1]);
                if self.sig.normalize(&l.rhs) != self.sig.normalize(&r.lhs) {
                    return Err(format!(
                        "middle formulas differ: {} versus {}",
                        l.rhs, r.lhs
                    ));
                }
                seq(l.lhs.clone(), r.rhs.clone())
            }
            Rule::Tensor => seq(
                tensor(&pr[0].lhs, &pr[1].lhs),
                tensor(&pr[0].rhs, &pr[1].rhs),
            ),
            Rule::A => {
                let bad = || shape("premise right side (X * Y) * Z", &pr[0].rhs);
                let (xy, z) = split(&pr[0].rhs).ok_or_else(bad)?;
                let (x, y) = split(xy).ok_or_else(bad)?;
                seq(pr[0].lhs.clone(), tensor(x, &tensor(y, z)))
            }
            Rule::AInv => {
                let bad = || shape("premise right side X * (Y * Z)", &pr[0].rhs);
                let (x, yz) = split(&pr[0].rhs).ok_or_else(bad)?;
                let (y, z) = split(yz).ok_or_else(bad)?;
                seq(pr[0].lhs.clone(), tensor(&tensor(x, y), z))
            }
            Rule::L => match split(&pr[0].rhs) {
                Some((TypeExpr::Unit, y)) => seq(pr[0].lhs.clone(), y.clone()),
                _ => return Err(shape("premise right side I * Y", &pr[0].rhs)),
            },
            Rule::LInv => seq(pr[0].lhs.clone(), tensor(&TypeExpr::Unit, &pr[0].rhs)),
            Rule::R => match split(&pr[0].rhs) {
                Some((y, TypeExpr::Unit)) => seq(pr[0].lhs.clone(), y.clone()),
                _ => return Err(shape("premise right side Y * I", &pr[0].rhs)),
            },
            Rule::RInv => seq(pr[0].lhs.clone(), tensor(&pr[0].rhs, &TypeExpr::Unit)),
            Rule::B => {
                let (x, y) = split(&pr[0].rhs)
                    .ok_or_else(|| shape("premise right side X * Y", &pr[0].rhs))?;
                seq(pr[0].lhs.clone(), tensor(y, x))
            }
            Rule::C => {
                let (x, y) = split(&pr[0].lhs)
                    .ok_or_else(|| shape("premise left side X * Y", &pr[0].lhs))?;
                seq(y.clone(), hom(x, &pr[0].rhs))
            }
            Rule::CInv => {
                // X is read off the conclusion; the premise must then be Y |- X -o Z
                let (x, y) =
                    split(&c.lhs).ok_or_else(|| shape("conclusion left side X * Y", &c.lhs))?;
                let want = seq(y.clone(), hom(x, &c.rhs));
                if !self.same(&want, pr[0]) {
                    return Err(format!("premise should be {}, found {}", want, pr[0]));
                }
                c.clone()
            }
            Rule::Hyp if self.open => c.clone(),
            Rule::Hyp => return Err("open premise".into()),
            Rule::Ev | Rule::Alpha | Rule::AlphaInv | Rule::Icomp => unreachable!(),
        })
    }

    fn check(&mut self, p: &ProofTree, path: &mut Vec<usize>) {
        if p.premises.len() != p.rule.arity() {
            let m = format!(
                "expects {} premises, found {}",
                p.rule.arity(),
                p.premises.len()
            );
            self.violation(path, p, m);
            return;
        }
        if let Some(c) = p.rule.ctor() {
            if !mode_allows(self.sig.mode, c) {
                let m = format!("not available in {} mode", self.sig.mode);
                self.violation(path, p, m);
            }
        }
        if p.rule.is_macro() {
            self.check_macro(p, path);
        } else {
            match self.expected(p) {
                Ok(want) if self.same(&want, &p.conclusion) => {}
                Ok(want) => self.violation(
                    path,
                    p,
                    format!("conclusion should be {}, found {}", want, p.conclusion),
                ),
                Err(m) => self.violation(path, p, m),
            }
        }
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            self.check(q, path);
            path.pop();
        }
    }

    fn check_macro(&mut self, p: &ProofTree, path: &[usize]) {
        let e = match expansion(p) {
            Ok(e) => e,
            Err(m) => return self.violation(path, p, m),
        };
        if !self.same(&e.conclusion, &p.conclusion) {
            self.violation(
                path,
                p,
                format!(
                    "expansion concludes {}, node claims {}",
                    e.conclusion, p.conclusion
                ),
            );
        }
        let mut sub = Checker {
            sig: self.sig,
            open: true,
            out: Vec::new(),
        };
        sub.check(&e, &mut Vec::new());
        for v in sub.out {
            self.violation(path, p, format!("in its expansion at {}", v));
        }
        let mut open = Vec::new();
        hyps(&e, &mut open);
        for (h, q) in open.iter().zip(&p.premises) {
            if !self.same(&h.conclusion, &q.conclusion) {
                self.violation(
                    path,
                    p,
                    format!("premise should be {}, found {}", h.conclusion, q.conclusion),
                );
            }
        }
    }
}

/// Validates every node against its rule schema, expanding macros into their
/// deductions first. Generator leaves are checked against `sig`, and types are
/// compared in `sig`'s mode.
pub fn check_proof(p: &ProofTree, sig: &Signature) -> ProofReport {
    let mut c = Checker {
        sig,
        open: false,
        out: Vec::new(),
    };
    c.check(p, &mut Vec::new());
    ProofReport { violations: c.out }
}

fn compile(p: &ProofTree) -> Result<MorTerm, MillError> {
    let post = |s: MorTerm, f: MorTerm| MorTerm::seq(s, f);
    let bad = || MillError::Unchecked(ProofReport::default());
    let prem = |i: usize| compile(&p.premises[i]);
    let prhs = || &p.premises[0].conclusion.rhs;
    Ok(match &p.rule {
        Rule::I => MorTerm::Id(p.conclusion.lhs.clone()),
        Rule::Gen(n) => MorTerm::gen(n.clone()),
        Rule::Cut => MorTerm::seq(prem(0)?, prem(1)?),
        Rule::Tensor => MorTerm::par(prem(0)?, prem(1)?),
        Rule::A => {
            let (xy, z) = split(prhs()).ok_or_else(bad)?;
            let (x, y) = split(xy).ok_or_else(bad)?;
            post(prem(0)?, MorTerm::Assoc(x.clone(), y.clone(), z.clone()))
        }
        Rule::AInv => {
            let (x, yz) = split(prhs()).ok_or_else(bad)?;
            let (y, z) = split(yz).ok_or_else(bad)?;
            post(prem(0)?, MorTerm::Unassoc(x.clone(), y.clone(), z.clone()))
        }
        Rule::L => post(
            prem(0)?,
            MorTerm::LeftU(split(prhs()).ok_or_else(bad)?.1.clone()),
        ),
        Rule::LInv => post(prem(0)?, MorTerm::UnleftU(prhs().clone())),
        Rule::R => post(
            prem(0)?,
            MorTerm::RightU(split(prhs()).ok_or_else(bad)?.0.clone()),
        ),
        Rule::RInv => post(prem(0)?, MorTerm::UnrightU(prhs().clone())),
        Rule::B => {
            let (x, y) = split(prhs()).ok_or_else(bad)?;
            post(prem(0)?, MorTerm::Braid(x.clone(), y.clone()))
        }
        Rule::C => MorTerm::Curry(Box::new(prem(0)?)),
        Rule::CInv => MorTerm::Uncurry(Box::new(prem(0)?)),
        Rule::Ev | Rule::Alpha | Rule::AlphaInv | Rule::Icomp => {
            let e = expansion(p).map_err(|m| MillError::Macro(p.rule.tag().into(), m))?;
            compile(&e.fill_hyps(&mut p.premises.clone()))?
        }
        Rule::Hyp => return Err(bad()),
    })
}

/// Compiles a checked proof: identity to `Id`, cut to composition, the tensor
/// rule to `Par`, structural rules to post-composition with the structural
/// morphism, and currying to `Curry`/`Uncurry`.
pub fn proof_to_mor(p: &ProofTree, sig: &Signature) -> Result<MorTerm, MillError> {
    let report = check_proof(p, sig);
    if !report.is_valid() {
        return Err(MillError::Unchecked(report));
    }
    compile(p)
}

/// Every sequent reachable from `seeds` in at most `steps` rounds of applying
/// the unary rules, the reassociation macros, cut and the tensor rule to
/// sequents already reached. No axioms are added along the way.
pub fn forward_closure(seeds: &[Sequent], steps: usize, mode: Mode) -> BTreeSet<Sequent> {
    let sig = Signature::new(mode);
    let mut seen: BTreeSet<Sequent> = seeds.iter().cloned().collect();
    let unary = [
        Rule::A,
        Rule::AInv,
        Rule::L,
        Rule::LInv,
        Rule::R,
        Rule::RInv,
        Rule::B,
        Rule::C,
        Rule::CInv,
        Rule::Alpha,
        Rule::AlphaInv,
    ];
    for _ in 0..steps {
        let cur: Vec<Sequent> = seen.iter().cloned().collect();
        let mut next = Vec::new();
        for s in &cur {
            for r in &unary {
                if r.ctor().is_some_and(|c| !mode_allows(mode, c)) {
                    continue;
                }
                next.extend(apply_unary(r, s, &sig));
            }
            for t in &cur {
                next.push(Sequent::new(tensor(&s.lhs, &t.lhs), tensor(&s.rhs, &t.rhs)));
                if s.rhs == t.lhs {
                    next.push(Sequent::new(s.lhs.clone(), t.rhs.clone()));
                }
            }
        }
        seen.extend(next);
    }
    seen
}

fn apply_unary(r: &Rule, s: &Sequent, sig: &Signature) -> Vec<Sequent> {
    let c = Checker {
        sig,
        open: true,
        out: Vec::new(),
    };
    let dummy = |conclusion: Sequent| {
        ProofTree::new(
            r.clone(),
            vec![ProofTree::leaf(Rule::Hyp, s.clone())],
            conclusion,
        )
    };
    match r {
        Rule::CInv => {
            // the conclusion is determined by the premise's right side
            match split_hom(&s.rhs) {
                Some((x, z)) => vec![Sequent::new(tensor(x, &s.lhs), z.clone())],
                None => vec![],
            }
        }
        Rule::Alpha | Rule::AlphaInv => {
            let t = dummy(s.clone());
            match macro_bindings(&t) {
                Ok(b) => {
                    let (a, bb, cc, d) = (&b[0], &b[1], &b[2], &b[3]);
                    let lhs = if *r == Rule::Alpha {
                        tensor(&tensor(a, bb), cc)
                    } else {
                        tensor(a, &tensor(bb, cc))
                    };
                    vec![Sequent::new(lhs, d.clone())]
                }
                Err(_) => vec![],
            }
        }
        _ => c.expected(&dummy(s.clone())).into_iter().collect(),
    }
}
