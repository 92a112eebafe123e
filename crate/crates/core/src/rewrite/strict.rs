use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::{infer_dom_cod, MorTerm, Signature, TypeExpr};

use super::RewriteError;

/// A box placed on a contiguous run of wires.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockOp {
    Gen(String),
    /// `[a, b] -> [b, a]` when positive, `[b, a] -> [a, b]` otherwise. Only
    /// produced in modes without symmetry; symmetric modes use `Perm` layers.
    Crossing {
        positive: bool,
    },
    /// Inputs are the atoms of `x` followed by the hom atom `x -o y`.
    Ev {
        x: TypeExpr,
        y: TypeExpr,
    },
    /// Inputs are the curried-over atoms, output is the single atom `x -o z`.
    Curry {
        x: TypeExpr,
        z: TypeExpr,
        body: Box<StrictTerm>,
    },
    /// `I -> b^ * b` for a basic `b`.
    Cup(TypeExpr),
    /// `b * b^ -> I` for a basic `b`.
    Cap(TypeExpr),
    Dup,
    Del,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    /// Output wire `j` carries input wire `sources[j]`.
    Perm(Vec<usize>),
    Block {
        offset: usize,
        op: BlockOp,
        inputs: Vec<TypeExpr>,
        outputs: Vec<TypeExpr>,
    },
}

/// A term with associators and unitors erased: flat wire lists and a sequence of layers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StrictTerm {
    pub dom: Vec<TypeExpr>,
    pub cod: Vec<TypeExpr>,
    pub layers: Vec<Layer>,
}

impl StrictTerm {
    pub fn identity(wires: Vec<TypeExpr>) -> Self {
        StrictTerm {
            dom: wires.clone(),
            cod: wires,
            layers: Vec::new(),
        }
    }

    fn then(mut self, other: StrictTerm) -> Self {
        debug_assert_eq!(self.cod, other.dom);
        self.layers.extend(other.layers);
        self.cod = other.cod;
        self
    }

    fn block(op: BlockOp, inputs: Vec<TypeExpr>, outputs: Vec<TypeExpr>) -> Self {
        StrictTerm {
            dom: inputs.clone(),
            cod: outputs.clone(),
            layers: vec![Layer::Block {
                offset: 0,
                op,
                inputs,
                outputs,
            }],
        }
    }

    fn perm(dom: Vec<TypeExpr>, sources: Vec<usize>) -> Self {
        let cod = sources.iter().map(|&s| dom[s].clone()).collect();
        let layers = if sources.iter().enumerate().all(|(i, &s)| i == s) {
            Vec::new()
        } else {
            vec![Layer::Perm(sources)]
        };
        StrictTerm { dom, cod, layers }
    }

    /// Places `self` to the left of `other` (first `self`, then `other`).
    fn beside(self, other: StrictTerm) -> Self {
        let lout = self.cod.len();
        let rin = other.dom.len();
        let mut layers = Vec::new();
        for l in self.layers {
            layers.push(match l {
                Layer::Perm(p) => {
                    let w = p.len();
                    Layer::Perm(p.into_iter().chain(w..w + rin).collect())
                }
                b => b,
            });
        }
        for l in other.layers {
            layers.push(match l {
                Layer::Perm(p) => {
                    Layer::Perm((0..lout).chain(p.into_iter().map(|s| s + lout)).collect())
                }
                Layer::Block {
                    offset,
                    op,
                    inputs,
                    outputs,
                } => Layer::Block {
                    offset: offset + lout,
                    op,
                    inputs,
                    outputs,
                },
            });
        }
        let mut dom = self.dom;
        dom.extend(other.dom);
        let mut cod = self.cod;
        cod.extend(other.cod);
        StrictTerm { dom, cod, layers }
    }

    /// Whether every layer is a permutation or a generator box.
    pub fn is_symmetric_fragment(&self) -> bool {
        self.layers.iter().all(|l| {
            matches!(
                l,
                Layer::Perm(_)
                    | Layer::Block {
                        op: BlockOp::Gen(_),
                        ..
                    }
            )
        })
    }

    /// Number of layers, counting nested curry bodies.
    pub fn depth_size(&self) -> usize {
        self.layers
            .iter()
            .map(|l| match l {
                Layer::Block {
                    op: BlockOp::Curry { body, .. },
                    ..
                } => 1 + body.depth_size(),
                _ => 1,
            })
            .sum()
    }
}

fn dual_atom(a: &TypeExpr) -> TypeExpr {
    TypeExpr::dual(a.clone()).compact_normal()
}

/// Basic name under an atom of a compact-mode type, and whether the atom is dualized.
fn basic_of(a: &TypeExpr) -> (TypeExpr, bool) {
    match a {
        TypeExpr::Dual(b) => ((**b).clone(), true),
        _ => (a.clone(), false),
    }
}

struct Ctx<'a> {
    sig: &'a Signature,
    symmetric: bool,
    compact: bool,
}

impl Ctx<'_> {
    fn types(&self, t: &MorTerm) -> Result<(TypeExpr, TypeExpr), RewriteError> {
        Ok(infer_dom_cod(t, self.sig)?)
    }

    fn braid(&self, xs: &[TypeExpr], ys: &[TypeExpr], positive: bool) -> StrictTerm {
        // positive: xs ++ ys -> ys ++ xs
        let mut dom: Vec<TypeExpr> = xs.iter().chain(ys).cloned().collect();
        if self.symmetric {
            let (m, n) = (xs.len(), ys.len());
            let src = if positive {
                (m..m + n).chain(0..m).collect()
            } else {
                dom = ys.iter().chain(xs).cloned().collect();
                (n..n + m).chain(0..n).collect()
            };
            return StrictTerm::perm(dom, src);
        }
        let mut steps: Vec<(usize, TypeExpr, TypeExpr)> = Vec::new();
        let m = xs.len();
        for (j, y) in ys.iter().enumerate() {
            for i in (0..m).rev() {
                steps.push((i + j, xs[i].clone(), y.clone()));
            }
        }
        let mut t = StrictTerm::identity(dom.clone());
        if positive {
            let mut wires = dom;
            for (k, a, b) in steps {
                wires.swap(k, k + 1);
                t.layers.push(Layer::Block {
                    offset: k,
                    op: BlockOp::Crossing { positive: true },
                    inputs: vec![a.clone(), b.clone()],
                    outputs: vec![b, a],
                });
            }
            t.cod = wires;
        } else {
            let mut wires: Vec<TypeExpr> = ys.iter().chain(xs).cloned().collect();
            t.dom = wires.clone();
            for (k, a, b) in steps.into_iter().rev() {
                wires.swap(k, k + 1);
                t.layers.push(Layer::Block {
                    offset: k,
                    op: BlockOp::Crossing { positive: false },
                    inputs: vec![b.clone(), a.clone()],
                    outputs: vec![a, b],
                });
            }
            t.cod = wires;
        }
        t
    }

    /// `I -> X^ * X` on atom lists.
    fn cups(&self, xs: &[TypeExpr]) -> StrictTerm {
        let n = xs.len();
        let mut t = StrictTerm::identity(Vec::new());
        let mut wires: Vec<TypeExpr> = Vec::new();
        for a in xs {
            let (b, dual) = basic_of(a);
            let outs = vec![TypeExpr::dual(b.clone()), b.clone()];
            let blk = StrictTerm::block(BlockOp::Cup(b), Vec::new(), outs.clone());
            let placed = StrictTerm::identity(wires.clone()).beside(blk);
            t = t.then(placed);
            if dual {
                let w = wires.len();
                let mut src: Vec<usize> = (0..w + 2).collect();
                src.swap(w, w + 1);
                let p = StrictTerm::perm(t.cod.clone(), src);
                t = t.then(p);
            }
            wires = t.cod.clone();
        }
        // wires = [x1^, x1, x2^, x2, ...] -> [x1^..xn^, x1..xn]
        let src: Vec<usize> = (0..n)
            .map(|i| 2 * i)
            .chain((0..n).map(|i| 2 * i + 1))
            .collect();
        let p = StrictTerm::perm(wires, src);
        t.then(p)
    }

    /// `X * X^ -> I` on atom lists.
    fn caps(&self, xs: &[TypeExpr]) -> StrictTerm {
        let n = xs.len();
        let dom: Vec<TypeExpr> = xs.iter().cloned().chain(xs.iter().map(dual_atom)).collect();
        let src: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
        let mut t = StrictTerm::perm(dom, src);
        for a in xs {
            let (b, dual) = basic_of(a);
            let rest: Vec<TypeExpr> = t.cod[2..].to_vec();
            let mut step = StrictTerm::identity(t.cod.clone());
            if dual {
                let mut src: Vec<usize> = (0..t.cod.len()).collect();
                src.swap(0, 1);
                step = StrictTerm::perm(t.cod.clone(), src);
            }
            let ins = vec![b.clone(), TypeExpr::dual(b.clone())];
            let cap = StrictTerm::block(BlockOp::Cap(b), ins, Vec::new())
                .beside(StrictTerm::identity(rest));
            t = t.then(step).then(cap);
        }
        t
    }

    fn dups(&self, xs: &[TypeExpr]) -> StrictTerm {
        let n = xs.len();
        let mut t = StrictTerm::identity(xs.to_vec());
        for (i, a) in xs.iter().enumerate() {
            let left: Vec<TypeExpr> = t.cod[..2 * i].to_vec();
            let right: Vec<TypeExpr> = t.cod[2 * i + 1..].to_vec();
            let d = StrictTerm::block(BlockOp::Dup, vec![a.clone()], vec![a.clone(), a.clone()]);
            t = t.then(
                StrictTerm::identity(left)
                    .beside(d)
                    .beside(StrictTerm::identity(right)),
            );
        }
        let src: Vec<usize> = (0..n)
            .map(|i| 2 * i)
            .chain((0..n).map(|i| 2 * i + 1))
            .collect();
        let p = StrictTerm::perm(t.cod.clone(), src);
        t.then(p)
    }

    fn dels(&self, xs: &[TypeExpr]) -> StrictTerm {
        let mut t = StrictTerm::identity(xs.to_vec());
        for a in xs {
            let rest: Vec<TypeExpr> = t.cod[1..].to_vec();
            let d = StrictTerm::block(BlockOp::Del, vec![a.clone()], Vec::new());
            t = t.then(d.beside(StrictTerm::identity(rest)));
        }
        t
    }

    fn ev(&self, x: &TypeExpr, y: &TypeExpr) -> StrictTerm {
        let xs = x.atoms();
        if self.compact {
            let ys = y.atoms();
            return self.caps(&xs).beside(StrictTerm::identity(ys));
        }
        let mut ins = xs;
        ins.push(TypeExpr::hom(x.clone(), y.clone()));
        StrictTerm::block(
            BlockOp::Ev {
                x: x.clone(),
                y: y.clone(),
            },
            ins,
            y.atoms(),
        )
    }

    fn curry(&self, f: &MorTerm) -> Result<StrictTerm, RewriteError> {
        let (d, z) = self.types(f)?;
        let TypeExpr::Tensor(x, y) = d else {
            return Err(RewriteError::Shape("curry needs a tensor domain".into()));
        };
        let body = self.go(f)?;
        let ys = y.atoms();
        if self.compact {
            // Y -> X^ * X * Y -> X^ * Z
            let xs = x.atoms();
            let nx = xs.len();
            let mut t = self.cups(&xs).beside(StrictTerm::identity(ys));
            let dx: Vec<TypeExpr> = t.cod[..nx].to_vec();
            t = t.then(StrictTerm::identity(dx).beside(body));
            return Ok(t);
        }
        let out = vec![TypeExpr::hom((*x).clone(), z.clone())];
        Ok(StrictTerm::block(
            BlockOp::Curry {
                x: (*x).clone(),
                z,
                body: Box::new(body),
            },
            ys,
            out,
        ))
    }

    fn go(&self, t: &MorTerm) -> Result<StrictTerm, RewriteError> {
        use MorTerm::*;
        let (dom, cod) = self.types(t)?;
        Ok(match t {
            Gen(n) => StrictTerm::block(BlockOp::Gen(n.clone()), dom.atoms(), cod.atoms()),
            Id(_) | Assoc(..) | Unassoc(..) | LeftU(_) | UnleftU(_) | RightU(_) | UnrightU(_) => {
                StrictTerm::identity(dom.atoms())
            }
            Seq(f, g) => self.go(f)?.then(self.go(g)?),
            Par(f, g) => self.go(f)?.beside(self.go(g)?),
            Braid(x, y) => self.braid(&x.atoms(), &y.atoms(), true),
            BraidInv(x, y) => self.braid(&x.atoms(), &y.atoms(), false),
            Curry(f) => self.curry(f)?,
            Uncurry(g) => {
                let TypeExpr::Tensor(x, _) = &dom else {
                    unreachable!("uncurry domain is a tensor")
                };
                let inner = StrictTerm::identity(x.atoms()).beside(self.go(g)?);
                inner.then(self.ev(x, &cod))
            }
            Name(f) => {
                let (x, _) = self.types(f)?;
                let wrapped = MorTerm::seq(MorTerm::RightU(x), (**f).clone());
                self.curry(&wrapped)?
            }
            Ev(x, y) => self.ev(x, y),
            Cup(x) => self.cups(&x.atoms()),
            Cap(x) => self.caps(&x.atoms()),
            Dup(x) => self.dups(&x.atoms()),
            Del(x) => self.dels(&x.atoms()),
            Pair(f, g) => {
                let d = self.dups(&dom.atoms());
                d.then(self.go(f)?.beside(self.go(g)?))
            }
            Proj1(x, y) => StrictTerm::identity(x.atoms()).beside(self.dels(&y.atoms())),
            Proj2(x, y) => self
                .dels(&x.atoms())
                .beside(StrictTerm::identity(y.atoms())),
        })
    }
}

/// Erases associators and unitors and flattens wires into atom lists.
///
/// Braids become permutation layers in symmetric modes and crossing boxes
/// otherwise. Uncurrying, names, pairing and projections are desugared; in
/// compact modes currying and evaluation become cups and caps.
pub fn strictify(t: &MorTerm, sig: &Signature) -> Result<StrictTerm, RewriteError> {
    let caps = sig.mode.caps();
    let ctx = Ctx {
        sig,
        symmetric: caps.symmetric,
        compact: caps.compact,
    };
    ctx.go(t)
}

impl fmt::Display for StrictTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[TypeExpr]| -> fmt::Result {
            f.write_str("[")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", x)?;
            }
            f.write_str("]")
        };
        list(f, &self.dom)?;
        f.write_str(" ->")?;
        for l in &self.layers {
            match l {
                Layer::Perm(p) => {
                    f.write_str(" perm(")?;
                    for (i, s) in p.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" ")?;
                        }
                        write!(f, "{}", s + 1)?;
                    }
                    f.write_str(")")?;
                }
                Layer::Block { offset, op, .. } => {
                    let name = match op {
                        BlockOp::Gen(n) => n.clone(),
                        BlockOp::Crossing { positive: true } => "cross".into(),
                        BlockOp::Crossing { positive: false } => "uncross".into(),
                        BlockOp::Ev { .. } => "ev".into(),
                        BlockOp::Curry { body, .. } => alloc::format!("curry{{{}}}", body),
                        BlockOp::Cup(b) => alloc::format!("cup {}", b),
                        BlockOp::Cap(b) => alloc::format!("cap {}", b),
                        BlockOp::Dup => "dup".into(),
                        BlockOp::Del => "del".into(),
                    };
                    write!(f, " {}@{}", name, offset)?;
                }
            }
            f.write_str(";")?;
        }
        f.write_str(" ")?;
        list(f, &self.cod)
    }
}
