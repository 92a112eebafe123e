//! Strict concrete models: exact complex-rational matrices, finite sets with
//! function tables, and permutations of strands.

pub mod laws;
pub mod matrix;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::kernel::{infer_dom_cod, Ctor, KernelError, Mode, MorTerm, Signature, TypeExpr};
use crate::rewrite::strict::{BlockOp, Layer, StrictTerm};

pub use laws::{check_model_laws, LawReport, LawResult};
pub use matrix::{Matrix, Scalar};

/// Largest carrier a model will build.
pub const MAX_CARRIER: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelKind {
    Matrix,
    FinSet,
    Perm,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Matrix => "matrix",
            ModelKind::FinSet => "finset",
            ModelKind::Perm => "perm",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "matrix" => ModelKind::Matrix,
            "finset" => ModelKind::FinSet,
            "perm" => ModelKind::Perm,
            _ => return None,
        })
    }

    /// Whether terms built with `c` can be evaluated in this kind of model.
    pub fn supports(self, c: Ctor) -> bool {
        match self {
            ModelKind::Matrix => !matches!(
                c,
                Ctor::Dup | Ctor::Del | Ctor::Pair | Ctor::Proj1 | Ctor::Proj2
            ),
            ModelKind::FinSet => !matches!(c, Ctor::Cup | Ctor::Cap | Ctor::DualType),
            ModelKind::Perm => crate::kernel::mode_allows(Mode::Symmetric, c),
        }
    }

    /// Whether every constructor of `mode` is supported.
    pub fn covers(self, mode: Mode) -> bool {
        match self {
            ModelKind::Matrix => !mode.caps().cartesian,
            ModelKind::FinSet => !mode.caps().compact,
            ModelKind::Perm => mode.le(Mode::Symmetric),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total function between finite sets `0..dom` and `0..cod`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Func {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

/// Value of a term in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConcreteMor {
    Matrix(Matrix),
    Table(Func),
    /// One-line notation: strand `i` ends at position `p[i]`.
    Perm(Vec<usize>),
}

impl ConcreteMor {
    /// Number of basis inputs (columns, domain elements, strands).
    pub fn inputs(&self) -> usize {
        match self {
            ConcreteMor::Matrix(m) => m.cols,
            ConcreteMor::Table(f) => f.dom,
            ConcreteMor::Perm(p) => p.len(),
        }
    }

    pub fn outputs(&self) -> usize {
        match self {
            ConcreteMor::Matrix(m) => m.rows,
            ConcreteMor::Table(f) => f.cod,
            ConcreteMor::Perm(p) => p.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("generator `{0}` has no binding")]
    Unbound(String),
    #[error("object `{0}` has no carrier")]
    UnknownObject(String),
    #[error("`{ctor}` cannot be evaluated in a {kind} model")]
    Unsupported { ctor: &'static str, kind: ModelKind },
    #[error("binding for `{name}` has shape {actual:?}, expected {expected:?}")]
    Shape {
        name: String,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("binding for `{0}` is not a valid {1}")]
    Invalid(String, &'static str),
    #[error("carrier too large ({0} elements)")]
    TooLarge(usize),
    #[error("{0} models have no dagger")]
    NoDagger(ModelKind),
    #[error("domains or codomains differ")]
    TypeMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub name: String,
    pub kind: ModelKind,
    pub objects: BTreeMap<String, usize>,
    pub generators: BTreeMap<String, ConcreteMor>,
    /// Replacement units for basic objects (matrix models only).
    pub cups: BTreeMap<String, Matrix>,
}

impl Model {
    pub fn new(name: impl Into<String>, kind: ModelKind) -> Self {
        Model {
            name: name.into(),
            kind,
            objects: BTreeMap::new(),
            generators: BTreeMap::new(),
            cups: BTreeMap::new(),
        }
    }

    pub fn with_object(mut self, name: &str, size: usize) -> Self {
        self.objects.insert(name.to_string(), size);
        self
    }

    /// Carrier size of a type.
    pub fn size(&self, t: &TypeExpr) -> Result<usize, ModelError> {
        let n = match t {
            TypeExpr::Basic(b) => *self
                .objects
                .get(b)
                .ok_or_else(|| ModelError::UnknownObject(b.clone()))?,
            TypeExpr::Unit => match self.kind {
                ModelKind::Perm => 0,
                _ => 1,
            },
            TypeExpr::Tensor(a, b) => {
                let (a, b) = (self.size(a)?, self.size(b)?);
                match self.kind {
                    ModelKind::Perm => a + b,
                    _ => a.checked_mul(b).ok_or(ModelError::TooLarge(usize::MAX))?,
                }
            }
            TypeExpr::Hom(x, y) => {
                let (a, b) = (self.size(x)?, self.size(y)?);
                match self.kind {
                    ModelKind::Matrix => a * b,
                    ModelKind::FinSet => pow(b, a)?,
                    ModelKind::Perm => return Err(self.unsupported(Ctor::HomType)),
                }
            }
            TypeExpr::Dual(x) => match self.kind {
                ModelKind::Matrix => self.size(x)?,
                _ => return Err(self.unsupported(Ctor::DualType)),
            },
        };
        if n > MAX_CARRIER {
            return Err(ModelError::TooLarge(n));
        }
        Ok(n)
    }

    fn unsupported(&self, c: Ctor) -> ModelError {
        ModelError::Unsupported {
            ctor: c.name(),
            kind: self.kind,
        }
    }

    /// Binds a generator after checking its shape against the signature.
    pub fn bind(
        &mut self,
        name: &str,
        value: ConcreteMor,
        sig: &Signature,
    ) -> Result<(), ModelError> {
        let g = sig
            .generator(name)
            .ok_or_else(|| KernelError::UnknownGenerator(name.to_string()))?;
        let expected = (self.size(&g.cod)?, self.size(&g.dom)?);
        let actual = (value.outputs(), value.inputs());
        let ok_kind = matches!(
            (&value, self.kind),
            (ConcreteMor::Matrix(_), ModelKind::Matrix)
                | (ConcreteMor::Table(_), ModelKind::FinSet)
                | (ConcreteMor::Perm(_), ModelKind::Perm)
        );
        if !ok_kind {
            return Err(ModelError::Invalid(name.to_string(), self.kind.name()));
        }
        if expected != actual {
            return Err(ModelError::Shape {
                name: name.to_string(),
                expected,
                actual,
            });
        }
        match &value {
            ConcreteMor::Table(f)
                if f.table.len() != f.dom || f.table.iter().any(|&v| v >= f.cod) =>
            {
                return Err(ModelError::Invalid(name.to_string(), "function table"))
            }
            ConcreteMor::Perm(p) if !is_permutation(p) => {
                return Err(ModelError::Invalid(name.to_string(), "permutation"))
            }
            _ => {}
        }
        self.generators.insert(name.to_string(), value);
        Ok(())
    }

    /// Objects and generators of `sig` that lack a carrier or binding.
    pub fn missing(&self, sig: &Signature) -> Vec<String> {
        let mut out: Vec<String> = sig
            .objects
            .iter()
            .filter(|o| !self.objects.contains_key(*o))
            .cloned()
            .collect();
        out.extend(
            sig.generators
                .iter()
                .filter(|g| !self.generators.contains_key(&g.name))
                .map(|g| g.name.clone()),
        );
        out
    }

    /// Fills every missing carrier and binding of `sig` at random.
    pub fn randomize<R: Rng>(
        &mut self,
        sig: &Signature,
        rng: &mut R,
        max_size: usize,
    ) -> Result<(), ModelError> {
        let lo = if self.kind == ModelKind::Perm { 0 } else { 1 };
        for o in &sig.objects {
            if !self.objects.contains_key(o) {
                self.objects
                    .insert(o.clone(), rng.gen_range(lo..=max_size.max(lo)));
            }
        }
        for g in &sig.generators {
            if self.generators.contains_key(&g.name) {
                continue;
            }
            let (d, c) = (self.size(&g.dom)?, self.size(&g.cod)?);
            let v = match self.kind {
                ModelKind::Matrix => ConcreteMor::Matrix(random_matrix(rng, c, d)),
                ModelKind::FinSet => {
                    if c == 0 && d > 0 {
                        return Err(ModelError::Invalid(g.name.clone(), "function table"));
                    }
                    ConcreteMor::Table(Func {
                        dom: d,
                        cod: c,
                        table: (0..d).map(|_| rng.gen_range(0..c)).collect(),
                    })
                }
                ModelKind::Perm => {
                    if c != d {
                        return Err(ModelError::Shape {
                            name: g.name.clone(),
                            expected: (d, d),
                            actual: (c, d),
                        });
                    }
                    let mut p: Vec<usize> = (0..d).collect();
                    for i in (1..d).rev() {
                        p.swap(i, rng.gen_range(0..=i));
                    }
                    ConcreteMor::Perm(p)
                }
            };
            self.generators.insert(g.name.clone(), v);
        }
        Ok(())
    }

    fn identity(&self, n: usize) -> ConcreteMor {
        match self.kind {
            ModelKind::Matrix => ConcreteMor::Matrix(Matrix::identity(n)),
            ModelKind::FinSet => ConcreteMor::Table(Func {
                dom: n,
                cod: n,
                table: (0..n).collect(),
            }),
            ModelKind::Perm => ConcreteMor::Perm((0..n).collect()),
        }
    }

    /// Map sending input index `i` to `f(i)`; a basis permutation or function.
    fn mapping(&self, dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> ConcreteMor {
        match self.kind {
            ModelKind::Matrix => ConcreteMor::Matrix(Matrix::from_fn(cod, dom, f)),
            ModelKind::FinSet => ConcreteMor::Table(Func {
                dom,
                cod,
                table: (0..dom).map(f).collect(),
            }),
            ModelKind::Perm => ConcreteMor::Perm((0..dom).map(f).collect()),
        }
    }

    fn braid(&self, a: usize, b: usize) -> ConcreteMor {
        match self.kind {
            ModelKind::Perm => self.mapping(a + b, a + b, |i| if i < a { i + b } else { i - a }),
            _ => self.mapping(a * b, a * b, |k| (k % b) * a + k / b),
        }
    }

    fn cup(&self, x: &TypeExpr) -> Result<ConcreteMor, ModelError> {
        let atoms = x.compact_normal().atoms();
        if atoms
            .iter()
            .all(|a| !matches!(a, TypeExpr::Basic(b) if self.cups.contains_key(b)))
        {
            return Ok(ConcreteMor::Matrix(matrix::cup(self.size(x)?)));
        }
        let mut dims = Vec::new();
        let mut acc = Matrix::identity(1);
        for a in &atoms {
            let d = self.size(a)?;
            let c = match a {
                TypeExpr::Basic(b) => self.cups.get(b).cloned().unwrap_or_else(|| matrix::cup(d)),
                _ => matrix::cup(d),
            };
            acc = acc.kron(&c);
            dims.extend([d, d]);
        }
        let n = atoms.len();
        let src: Vec<usize> = (0..n)
            .map(|i| 2 * i)
            .chain((0..n).map(|i| 2 * i + 1))
            .collect();
        Ok(ConcreteMor::Matrix(
            matrix::permute_factors(&dims, &src).mul(&acc),
        ))
    }
}

fn pow(b: usize, e: usize) -> Result<usize, ModelError> {
    let mut r: usize = 1;
    for _ in 0..e {
        r = r
            .checked_mul(b)
            .filter(|&r| r <= MAX_CARRIER)
            .ok_or(ModelError::TooLarge(MAX_CARRIER + 1))?;
    }
    Ok(r)
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&i| i < p.len() && !core::mem::replace(&mut seen[i], true))
}

/// Entries `p/q + (p'/q')i` with `p` in `-2..=2` and `q` in `1..=3`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = matrix::scalar(
                (rng.gen_range(-2..=2), rng.gen_range(1..=3)),
                (rng.gen_range(-2..=2), rng.gen_range(1..=3)),
            );
            m.set(i, j, v);
        }
    }
    m
}

/// `f` then `g`.
pub fn compose(f: &ConcreteMor, g: &ConcreteMor) -> ConcreteMor {
    match (f, g) {
        (ConcreteMor::Matrix(f), ConcreteMor::Matrix(g)) => ConcreteMor::Matrix(g.mul(f)),
        (ConcreteMor::Table(f), ConcreteMor::Table(g)) => ConcreteMor::Table(Func {
            dom: f.dom,
            cod: g.cod,
            table: f.table.iter().map(|&i| g.table[i]).collect(),
        }),
        (ConcreteMor::Perm(f), ConcreteMor::Perm(g)) => {
            ConcreteMor::Perm(f.iter().map(|&i| g[i]).collect())
        }
        _ => panic!("composing values of different models"),
    }
}

pub fn tensor(f: &ConcreteMor, g: &ConcreteMor) -> ConcreteMor {
    match (f, g) {
        (ConcreteMor::Matrix(f), ConcreteMor::Matrix(g)) => ConcreteMor::Matrix(f.kron(g)),
        (ConcreteMor::Table(f), ConcreteMor::Table(g)) => ConcreteMor::Table(Func {
            dom: f.dom * g.dom,
            cod: f.cod * g.cod,
            table: (0..f.dom * g.dom)
                .map(|i| f.table[i / g.dom] * g.cod + g.table[i % g.dom])
                .collect(),
        }),
        (ConcreteMor::Perm(f), ConcreteMor::Perm(g)) => {
            let a = f.len();
            ConcreteMor::Perm(f.iter().copied().chain(g.iter().map(|&i| i + a)).collect())
        }
        _ => panic!("tensoring values of different models"),
    }
}

/// Conjugate transpose or inverse permutation.
pub fn dagger(m: &Model, c: &ConcreteMor) -> Result<ConcreteMor, ModelError> {
    match c {
        ConcreteMor::Matrix(a) => Ok(ConcreteMor::Matrix(a.dagger())),
        ConcreteMor::Perm(p) => {
            let mut inv = vec![0; p.len()];
            for (i, &j) in p.iter().enumerate() {
                inv[j] = i;
            }
            Ok(ConcreteMor::Perm(inv))
        }
        ConcreteMor::Table(_) => Err(ModelError::NoDagger(m.kind)),
    }
}

fn digits_get(h: usize, base: usize, len: usize, pos: usize) -> usize {
    let mut v = h;
    for _ in 0..len - 1 - pos {
        v /= base;
    }
    v % base
}

/// Curried form of `f : X * Y -> Z` as `Y -> (X -o Z)`.
fn curry_value(
    m: &Model,
    f: &ConcreteMor,
    dx: usize,
    dy: usize,
    dz: usize,
) -> Result<ConcreteMor, ModelError> {
    Ok(match f {
        ConcreteMor::Matrix(a) => {
            let mut out = Matrix::zeros(dx * dz, dy);
            for (z, col, v) in a.entries() {
                let (x, y) = (col / dy, col % dy);
                out.set(x * dz + z, y, v.clone());
            }
            ConcreteMor::Matrix(out)
        }
        ConcreteMor::Table(t) => {
            let h = pow(dz, dx)?;
            let table = (0..dy)
                .map(|y| (0..dx).fold(0, |acc, x| acc * dz + t.table[x * dy + y]))
                .collect();
            ConcreteMor::Table(Func {
                dom: dy,
                cod: h,
                table,
            })
        }
        ConcreteMor::Perm(_) => return Err(m.unsupported(Ctor::Curry)),
    })
}

fn uncurry_value(
    m: &Model,
    g: &ConcreteMor,
    dx: usize,
    dy: usize,
    dz: usize,
) -> Result<ConcreteMor, ModelError> {
    Ok(match g {
        ConcreteMor::Matrix(a) => {
            let mut out = Matrix::zeros(dz, dx * dy);
            for (row, y, v) in a.entries() {
                let (x, z) = (row / dz, row % dz);
                out.set(z, x * dy + y, v.clone());
            }
            ConcreteMor::Matrix(out)
        }
        ConcreteMor::Table(t) => ConcreteMor::Table(Func {
            dom: dx * dy,
            cod: dz,
            table: (0..dx * dy)
                .map(|i| digits_get(t.table[i % dy], dz, dx, i / dy))
                .collect(),
        }),
        ConcreteMor::Perm(_) => return Err(m.unsupported(Ctor::Uncurry)),
    })
}

fn ev_value(m: &Model, dx: usize, dy: usize) -> Result<ConcreteMor, ModelError> {
    Ok(match m.kind {
        ModelKind::Matrix => {
            let h = dx * dy;
            let mut out = Matrix::zeros(dy, dx * h);
            for x in 0..dx {
                for y in 0..dy {
                    out.set(y, x * h + x * dy + y, matrix::one());
                }
            }
            ConcreteMor::Matrix(out)
        }
        ModelKind::FinSet => {
            let h = pow(dy, dx)?;
            m.mapping(dx * h, dy, |i| digits_get(i % h, dy, dx, i / h))
        }
        ModelKind::Perm => return Err(m.unsupported(Ctor::Ev)),
    })
}

fn split_hom_type(t: &TypeExpr) -> Option<(TypeExpr, TypeExpr)> {
    match t {
        TypeExpr::Hom(x, z) => Some(((**x).clone(), (**z).clone())),
        TypeExpr::Tensor(dx, z) => match &**dx {
            TypeExpr::Dual(x) => Some(((**x).clone(), (**z).clone())),
            TypeExpr::Unit => Some((TypeExpr::Unit, (**z).clone())),
            _ => None,
        },
        _ => None,
    }
}

/// Evaluates a term. Structural isomorphisms are literal identities.
pub fn eval_mor(m: &Model, t: &MorTerm, sig: &Signature) -> Result<ConcreteMor, ModelError> {
    infer_dom_cod(t, sig)?;
    eval_checked(m, t, sig)
}

fn eval_checked(m: &Model, t: &MorTerm, sig: &Signature) -> Result<ConcreteMor, ModelError> {
    use MorTerm::*;
    if !m.kind.supports(t.ctor()) {
        return Err(m.unsupported(t.ctor()));
    }
    let sz = |x: &TypeExpr| m.size(x);
    Ok(match t {
        Gen(n) => m
            .generators
            .get(n)
            .cloned()
            .ok_or_else(|| ModelError::Unbound(n.clone()))?,
        Id(x) | LeftU(x) | UnleftU(x) | RightU(x) | UnrightU(x) => m.identity(sz(x)?),
        Assoc(x, y, z) | Unassoc(x, y, z) => m.identity(sz(&TypeExpr::tensor(
            TypeExpr::tensor(x.clone(), y.clone()),
            z.clone(),
        ))?),
        Seq(f, g) => compose(&eval_checked(m, f, sig)?, &eval_checked(m, g, sig)?),
        Par(f, g) => tensor(&eval_checked(m, f, sig)?, &eval_checked(m, g, sig)?),
        Braid(x, y) => m.braid(sz(x)?, sz(y)?),
        BraidInv(x, y) => m.braid(sz(y)?, sz(x)?),
        Curry(f) => {
            let (d, z) = infer_dom_cod(f, sig)?;
            let TypeExpr::Tensor(x, y) = &d else {
                return Err(ModelError::TypeMismatch);
            };
            curry_value(m, &eval_checked(m, f, sig)?, sz(x)?, sz(y)?, sz(&z)?)?
        }
        Name(f) => {
            let (x, y) = infer_dom_cod(f, sig)?;
            curry_value(m, &eval_checked(m, f, sig)?, sz(&x)?, 1, sz(&y)?)?
        }
        Uncurry(g) => {
            let (y, h) = infer_dom_cod(g, sig)?;
            let (x, z) = split_hom_type(&h).ok_or(ModelError::TypeMismatch)?;
            uncurry_value(m, &eval_checked(m, g, sig)?, sz(&x)?, sz(&y)?, sz(&z)?)?
        }
        Ev(x, y) => ev_value(m, sz(x)?, sz(y)?)?,
        Cup(x) => m.cup(x)?,
        Cap(x) => ConcreteMor::Matrix(matrix::cap(sz(x)?)),
        Dup(x) => {
            let d = sz(x)?;
            m.mapping(d, d * d, |i| i * d + i)
        }
        Del(x) => m.mapping(sz(x)?, 1, |_| 0),
        Pair(f, g) => {
            let (ConcreteMor::Table(a), ConcreteMor::Table(b)) =
                (eval_checked(m, f, sig)?, eval_checked(m, g, sig)?)
            else {
                return Err(m.unsupported(Ctor::Pair));
            };
            ConcreteMor::Table(Func {
                dom: a.dom,
                cod: a.cod * b.cod,
                table: (0..a.dom)
                    .map(|i| a.table[i] * b.cod + b.table[i])
                    .collect(),
            })
        }
        Proj1(x, y) => {
            let (a, b) = (sz(x)?, sz(y)?);
            m.mapping(a * b, a, |i| i / b)
        }
        Proj2(x, y) => {
            let (a, b) = (sz(x)?, sz(y)?);
            m.mapping(a * b, b, |i| i % b)
        }
    })
}

fn wire_size(m: &Model, ws: &[TypeExpr]) -> Result<usize, ModelError> {
    ws.iter()
        .try_fold(if m.kind == ModelKind::Perm { 0 } else { 1 }, |acc, w| {
            let s = m.size(w)?;
            Ok(if m.kind == ModelKind::Perm {
                acc + s
            } else {
                acc * s
            })
        })
}

/// Evaluates a strict layered term.
pub fn eval_strict(m: &Model, s: &StrictTerm, sig: &Signature) -> Result<ConcreteMor, ModelError> {
    let mut acc = m.identity(wire_size(m, &s.dom)?);
    let mut wires = s.dom.clone();
    for l in &s.layers {
        let step = match l {
            Layer::Perm(src) => {
                let sizes: Vec<usize> =
                    wires.iter().map(|w| m.size(w)).collect::<Result<_, _>>()?;
                let out = perm_value(m, &sizes, src);
                wires = src.iter().map(|&k| wires[k].clone()).collect();
                out
            }
            Layer::Block {
                offset,
                op,
                inputs,
                outputs,
            } => {
                let left = m.identity(wire_size(m, &wires[..*offset])?);
                let right = m.identity(wire_size(m, &wires[offset + inputs.len()..])?);
                let mid = block_value(m, op, inputs, outputs, sig)?;
                wires.splice(offset..&(offset + inputs.len()), outputs.iter().cloned());
                tensor(&tensor(&left, &mid), &right)
            }
        };
        acc = compose(&acc, &step);
    }
    Ok(acc)
}

fn perm_value(m: &Model, sizes: &[usize], src: &[usize]) -> ConcreteMor {
    match m.kind {
        ModelKind::Perm => {
            let starts: Vec<usize> = sizes
                .iter()
                .scan(0, |a, &s| {
                    let v = *a;
                    *a += s;
                    Some(v)
                })
                .collect();
            let mut out = vec![0; sizes.iter().sum()];
            let mut pos = 0;
            for &k in src {
                for j in 0..sizes[k] {
                    out[starts[k] + j] = pos;
                    pos += 1;
                }
            }
            ConcreteMor::Perm(out)
        }
        ModelKind::Matrix => ConcreteMor::Matrix(matrix::permute_factors(sizes, src)),
        ModelKind::FinSet => {
            let ConcreteMor::Matrix(p) = perm_value(&Model::new("", ModelKind::Matrix), sizes, src)
            else {
                unreachable!()
            };
            let n = p.cols;
            let mut table = vec![0; n];
            for (i, j, _) in p.entries() {
                table[j] = i;
            }
            ConcreteMor::Table(Func {
                dom: n,
                cod: n,
                table,
            })
        }
    }
}

fn block_value(
    m: &Model,
    op: &BlockOp,
    inputs: &[TypeExpr],
    outputs: &[TypeExpr],
    sig: &Signature,
) -> Result<ConcreteMor, ModelError> {
    Ok(match op {
        BlockOp::Gen(n) => m
            .generators
            .get(n)
            .cloned()
            .ok_or_else(|| ModelError::Unbound(n.clone()))?,
        BlockOp::Crossing { positive } => {
            let (a, b) = if *positive {
                (&inputs[0], &inputs[1])
            } else {
                (&outputs[0], &outputs[1])
            };
            if *positive {
                m.braid(m.size(a)?, m.size(b)?)
            } else {
                m.braid(m.size(b)?, m.size(a)?)
            }
        }
        BlockOp::Ev { x, y } => ev_value(m, m.size(x)?, m.size(y)?)?,
        BlockOp::Curry { x, z, body } => {
            let f = eval_strict(m, body, sig)?;
            curry_value(m, &f, m.size(x)?, wire_size(m, inputs)?, m.size(z)?)?
        }
        BlockOp::Cup(b) => m.cup(b)?,
        BlockOp::Cap(b) => ConcreteMor::Matrix(matrix::cap(m.size(b)?)),
        BlockOp::Dup => {
            let d = m.size(&inputs[0])?;
            m.mapping(d, d * d, |i| i * d + i)
        }
        BlockOp::Del => m.mapping(m.size(&inputs[0])?, 1, |_| 0),
    })
}

/// Outcome of comparing two terms in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// First basis input on which the two values differ.
    Refuted {
        input: usize,
    },
    Consistent,
}

/// First input index where two values differ.
pub fn first_difference(a: &ConcreteMor, b: &ConcreteMor) -> Option<usize> {
    match (a, b) {
        (ConcreteMor::Matrix(a), ConcreteMor::Matrix(b)) => (0..a.cols)
            .find(|&j| a.column(j) != b.column(j))
            .or(if a.rows != b.rows { Some(0) } else { None }),
        (ConcreteMor::Table(a), ConcreteMor::Table(b)) => {
            (0..a.dom).find(|&i| a.table[i] != b.table[i])
        }
        (ConcreteMor::Perm(a), ConcreteMor::Perm(b)) => (0..a.len()).find(|&i| a[i] != b[i]),
        _ => Some(0),
    }
}

/// Evaluates both sides and compares them exactly.
pub fn refute_eq(
    m: &Model,
    t1: &MorTerm,
    t2: &MorTerm,
    sig: &Signature,
) -> Result<Refutation, ModelError> {
    let (d1, c1) = infer_dom_cod(t1, sig)?;
    let (d2, c2) = infer_dom_cod(t2, sig)?;
    if d1 != d2 || c1 != c2 {
        return Err(ModelError::TypeMismatch);
    }
    let (a, b) = (eval_checked(m, t1, sig)?, eval_checked(m, t2, sig)?);
    Ok(match first_difference(&a, &b) {
        Some(input) => Refutation::Refuted { input },
        None => Refutation::Consistent,
    })
}

/// Whether a matrix value is zero everywhere.
pub fn is_zero(c: &ConcreteMor) -> bool {
    matches!(c, ConcreteMor::Matrix(a) if a.entries().all(|(_, _, v)| v.is_zero()))
}
