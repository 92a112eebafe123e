use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rosetta::kernel::{infer_dom_cod, Mode, MorTerm, Signature, TypeExpr};
use rosetta::models::{refute_eq, Model, ModelError, ModelKind, Refutation};
use rosetta::rewrite::coherence_axioms;

fn b(n: &str) -> TypeExpr {
    TypeExpr::basic(n)
}

fn tn(x: TypeExpr, y: TypeExpr) -> TypeExpr {
    TypeExpr::tensor(x, y)
}

/// Objects `A`, `B`; two parallel endomorphisms `p`, `q` of `A`; maps `f`, `g`
/// back and forth; a binary `h` and a state `u`.
pub fn mor_sig(mode: Mode) -> Signature {
    let mut s = Signature::with_objects(mode, &["A", "B"]);
    s.add_generator("p", b("A"), b("A"));
    s.add_generator("q", b("A"), b("A"));
    s.add_generator("f", b("A"), b("B"));
    s.add_generator("g", b("B"), b("A"));
    s.add_generator("h", tn(b("A"), b("B")), b("A"));
    s.add_generator("u", TypeExpr::Unit, b("A"));
    s
}

pub fn cod(t: &MorTerm, sig: &Signature) -> TypeExpr {
    infer_dom_cod(t, sig)
        .unwrap_or_else(|e| panic!("generated ill-typed {:?}: {}", t, e))
        .1
}

fn split(t: &TypeExpr) -> Option<(TypeExpr, TypeExpr)> {
    match t {
        TypeExpr::Tensor(x, y) => Some(((**x).clone(), (**y).clone())),
        _ => None,
    }
}

fn small(t: &TypeExpr) -> bool {
    t.atoms().len() < 4
}

/// A random small type usable in `mode`.
pub fn mor_type(rng: &mut ChaCha8Rng, mode: Mode) -> TypeExpr {
    let caps = mode.caps();
    loop {
        let t = match rng.gen_range(0..9) {
            0 | 1 => b("A"),
            2 => b("B"),
            3 => tn(b("A"), b("B")),
            4 => tn(b("A"), b("A")),
            5 => TypeExpr::Unit,
            6 => tn(TypeExpr::Unit, b("A")),
            7 if caps.closed && !caps.compact => TypeExpr::hom(b("A"), b("B")),
            8 if caps.compact => TypeExpr::dual(b("A")),
            _ => continue,
        };
        return t;
    }
}

fn leaves(sig: &Signature, d: &TypeExpr) -> Vec<MorTerm> {
    use MorTerm::*;
    let caps = sig.mode.caps();
    let mut out = vec![Id(d.clone())];
    for g in &sig.generators {
        if sig.normalize(&g.dom) == *d {
            out.push(MorTerm::gen(g.name.clone()));
        }
    }
    if let Some((x, y)) = split(d) {
        if caps.braided {
            out.push(Braid(x.clone(), y.clone()));
            out.push(BraidInv(y.clone(), x.clone()));
        }
        if let Some((p, q)) = split(&x) {
            out.push(Assoc(p, q, y.clone()));
        }
        if let Some((q, r)) = split(&y) {
            out.push(Unassoc(x.clone(), q, r));
        }
        if x == TypeExpr::Unit {
            out.push(LeftU(y.clone()));
        }
        if y == TypeExpr::Unit {
            out.push(RightU(x.clone()));
        }
        if let TypeExpr::Hom(s, t) = &y {
            if **s == x {
                out.push(Ev(x.clone(), (**t).clone()));
            }
        }
        if caps.cartesian {
            out.push(Proj1(x.clone(), y.clone()));
            out.push(Proj2(x.clone(), y.clone()));
        }
        if caps.compact && y == TypeExpr::dual(x.clone()).compact_normal() {
            out.push(Cap(x.clone()));
        }
    }
    if small(d) {
        out.push(UnleftU(d.clone()));
        out.push(UnrightU(d.clone()));
        if caps.cartesian {
            out.push(Dup(d.clone()));
        }
    }
    if caps.cartesian {
        out.push(Del(d.clone()));
    }
    if caps.compact && *d == TypeExpr::Unit {
        out.push(Cup(b("A")));
    }
    out
}

/// A random term of `sig`'s mode with domain `d`, of roughly `budget` nodes.
pub fn gen_mor(rng: &mut ChaCha8Rng, sig: &Signature, d: &TypeExpr, budget: usize) -> MorTerm {
    let caps = sig.mode.caps();
    let ls = leaves(sig, d);
    let leaf = |rng: &mut ChaCha8Rng| ls.choose(rng).unwrap().clone();
    if budget <= 1 {
        return leaf(rng);
    }
    match rng.gen_range(0..12) {
        0..=2 => leaf(rng),
        3..=6 => {
            let k = rng.gen_range(1..budget);
            let f = gen_mor(rng, sig, d, k);
            let mid = cod(&f, sig);
            let g = gen_mor(rng, sig, &mid, budget - k);
            f.then(g)
        }
        7 | 8 => match split(d) {
            Some((x, y)) => {
                let k = rng.gen_range(1..budget);
                let l = gen_mor(rng, sig, &x, k);
                MorTerm::par(l, gen_mor(rng, sig, &y, budget - k))
            }
            None => leaf(rng),
        },
        9 if caps.closed && small(d) => {
            let x = if rng.gen_bool(0.5) { b("A") } else { b("B") };
            MorTerm::curry(gen_mor(rng, sig, &tn(x, d.clone()), budget - 1))
        }
        10 if caps.closed && *d == TypeExpr::Unit => {
            let x = if rng.gen_bool(0.5) { b("A") } else { b("B") };
            MorTerm::name_of(gen_mor(rng, sig, &x, budget - 1))
        }
        10 if caps.closed && !caps.compact => match split(d) {
            Some((x, y)) => {
                let f = gen_mor(rng, sig, &y, budget - 1);
                match cod(&f, sig) {
                    TypeExpr::Hom(s, _) if *s == x => MorTerm::uncurry(f),
                    _ => MorTerm::par(MorTerm::Id(x), f),
                }
            }
            None => leaf(rng),
        },
        11 if caps.cartesian => {
            let k = rng.gen_range(1..budget);
            let l = gen_mor(rng, sig, d, k);
            MorTerm::pair(l, gen_mor(rng, sig, d, budget - k))
        }
        _ => leaf(rng),
    }
}

/// A term equal to `t` in every category of the signature's mode, obtained by
/// one equation applied at a random position.
pub fn equal_mor_variant(rng: &mut ChaCha8Rng, sig: &Signature, t: &MorTerm) -> MorTerm {
    match t {
        MorTerm::Seq(f, g) if rng.gen_bool(0.4) => {
            return if rng.gen_bool(0.5) {
                equal_mor_variant(rng, sig, f).then((**g).clone())
            } else {
                (**f).clone().then(equal_mor_variant(rng, sig, g))
            };
        }
        MorTerm::Par(f, g) if rng.gen_bool(0.4) => {
            return if rng.gen_bool(0.5) {
                MorTerm::par(equal_mor_variant(rng, sig, f), (**g).clone())
            } else {
                MorTerm::par((**f).clone(), equal_mor_variant(rng, sig, g))
            };
        }
        _ => {}
    }
    let caps = sig.mode.caps();
    let (d, c) = infer_dom_cod(t, sig).unwrap();
    let t = t.clone();
    for _ in 0..8 {
        let v = match rng.gen_range(0..13) {
            0 => MorTerm::Id(d.clone()).then(t.clone()),
            1 => t.clone().then(MorTerm::Id(c.clone())),
            2 => t
                .clone()
                .then(MorTerm::UnleftU(c.clone()))
                .then(MorTerm::LeftU(c.clone())),
            3 => MorTerm::UnrightU(d.clone())
                .then(MorTerm::RightU(d.clone()))
                .then(t.clone()),
            4 if caps.braided => match split(&c) {
                Some((x, y)) => t
                    .clone()
                    .then(MorTerm::Braid(x.clone(), y.clone()))
                    .then(MorTerm::BraidInv(x, y)),
                None => continue,
            },
            5 if caps.symmetric => match split(&d) {
                Some((x, y)) => MorTerm::Braid(x.clone(), y.clone())
                    .then(MorTerm::Braid(y, x))
                    .then(t.clone()),
                None => continue,
            },
            6 => match split(&c) {
                Some((xy, z)) => match split(&xy) {
                    Some((x, y)) => t
                        .clone()
                        .then(MorTerm::Assoc(x.clone(), y.clone(), z.clone()))
                        .then(MorTerm::Unassoc(x, y, z)),
                    None => continue,
                },
                None => continue,
            },
            7 => match &t {
                MorTerm::Seq(f, g) => match &**g {
                    MorTerm::Seq(g1, g2) => (**f).clone().then((**g1).clone()).then((**g2).clone()),
                    _ => match &**f {
                        MorTerm::Seq(f1, f2) => {
                            (**f1).clone().then((**f2).clone().then((**g).clone()))
                        }
                        _ => continue,
                    },
                },
                MorTerm::Par(f, g) => {
                    let (fd, fc) = infer_dom_cod(f, sig).unwrap();
                    let (gd, gc) = infer_dom_cod(g, sig).unwrap();
                    if rng.gen_bool(0.5) {
                        MorTerm::par((**f).clone(), MorTerm::Id(gd))
                            .then(MorTerm::par(MorTerm::Id(fc), (**g).clone()))
                    } else {
                        MorTerm::par(MorTerm::Id(fd), (**g).clone())
                            .then(MorTerm::par((**f).clone(), MorTerm::Id(gc)))
                    }
                }
                _ => continue,
            },
            // naturality of the braiding
            8 if caps.braided => match &t {
                MorTerm::Par(f, g) => {
                    let (fd, fc) = infer_dom_cod(f, sig).unwrap();
                    let (gd, gc) = infer_dom_cod(g, sig).unwrap();
                    MorTerm::Braid(fd, gd)
                        .then(MorTerm::par((**g).clone(), (**f).clone()))
                        .then(MorTerm::BraidInv(fc, gc))
                }
                _ => continue,
            },
            9 if caps.closed && !caps.compact => match &c {
                TypeExpr::Hom(x, y) => MorTerm::curry(
                    MorTerm::par(MorTerm::Id((**x).clone()), t.clone())
                        .then(MorTerm::Ev((**x).clone(), (**y).clone())),
                ),
                _ => continue,
            },
            10 if caps.cartesian => {
                if rng.gen_bool(0.5) {
                    MorTerm::Dup(d.clone())
                        .then(MorTerm::par(t.clone(), t.clone()))
                        .then(MorTerm::par(
                            MorTerm::Id(c.clone()),
                            MorTerm::Del(c.clone()),
                        ))
                        .then(MorTerm::RightU(c.clone()))
                } else {
                    t.clone()
                        .then(MorTerm::Dup(c.clone()))
                        .then(MorTerm::par(
                            MorTerm::Id(c.clone()),
                            MorTerm::Del(c.clone()),
                        ))
                        .then(MorTerm::RightU(c.clone()))
                }
            }
            11 if caps.compact && small(&c) => {
                let zz = coherence_axioms(sig.mode)
                    .into_iter()
                    .find(|a| a.name == "zigzag-1")
                    .unwrap();
                let (l, _) = zz.instantiate(&|_| Some(c.clone()));
                t.clone().then(l)
            }
            12 => return t.clone(),
            _ => continue,
        };
        return v;
    }
    t
}

/// A term with the same type as `t` that is usually different from it.
pub fn different_mor_variant(rng: &mut ChaCha8Rng, sig: &Signature, t: &MorTerm) -> MorTerm {
    fn swap(t: &MorTerm) -> Option<MorTerm> {
        match t {
            MorTerm::Gen(n) if n == "p" => Some(MorTerm::gen("q")),
            MorTerm::Gen(n) if n == "q" => Some(MorTerm::gen("p")),
            MorTerm::Seq(f, g) => swap(f)
                .map(|f2| f2.then((**g).clone()))
                .or_else(|| swap(g).map(|g2| (**f).clone().then(g2))),
            MorTerm::Par(f, g) => swap(f)
                .map(|f2| MorTerm::par(f2, (**g).clone()))
                .or_else(|| swap(g).map(|g2| MorTerm::par((**f).clone(), g2))),
            MorTerm::Pair(f, g) => swap(f)
                .map(|f2| MorTerm::pair(f2, (**g).clone()))
                .or_else(|| swap(g).map(|g2| MorTerm::pair((**f).clone(), g2))),
            MorTerm::Curry(f) => swap(f).map(MorTerm::curry),
            MorTerm::Uncurry(f) => swap(f).map(MorTerm::uncurry),
            MorTerm::Name(f) => swap(f).map(MorTerm::name_of),
            _ => None,
        }
    }
    let (d, c) = infer_dom_cod(t, sig).unwrap();
    match rng.gen_range(0..4) {
        0 => {
            if let Some(s) = swap(t) {
                return s;
            }
        }
        1 => {
            for _ in 0..20 {
                let budget = rng.gen_range(1..8);
                let other = gen_mor(rng, sig, &d, budget);
                if cod(&other, sig) == c {
                    return other;
                }
            }
        }
        2 if sig.mode.caps().braided => {
            if let Some((x, y)) = split(&c) {
                if x == y {
                    return t.clone().then(MorTerm::Braid(x, y));
                }
            }
        }
        _ => {}
    }
    if c == b("A") {
        t.clone().then(MorTerm::gen("p"))
    } else {
        swap(t).unwrap_or_else(|| t.clone())
    }
}

/// An instance of one of the mode's axioms placed in a random context: both
/// sides tensored with the same identity and followed by the same term.
pub fn axiom_pair(rng: &mut ChaCha8Rng, sig: &Signature) -> (MorTerm, MorTerm) {
    let axioms = coherence_axioms(sig.mode);
    let ax = axioms.choose(rng).unwrap();
    let tys: Vec<TypeExpr> = (0..4)
        .map(|_| match rng.gen_range(0..4) {
            0 | 1 => b("A"),
            2 => b("B"),
            _ => TypeExpr::Unit,
        })
        .collect();
    let (l, r) = ax.instantiate(&|n| match n {
        "W" => Some(tys[0].clone()),
        "X" => Some(tys[1].clone()),
        "Y" => Some(tys[2].clone()),
        _ => Some(tys[3].clone()),
    });
    let (mut l, mut r) = (l, r);
    if rng.gen_bool(0.3) {
        let z = mor_type(rng, sig.mode);
        l = MorTerm::par(MorTerm::Id(z.clone()), l);
        r = MorTerm::par(MorTerm::Id(z), r);
    }
    let c = cod(&l, sig);
    let budget = rng.gen_range(1..5);
    let s = gen_mor(rng, sig, &c, budget);
    (l.then(s.clone()), r.then(s))
}

/// A seeded pair of terms with equal endpoints: equal by construction, an
/// axiom instance in context, or usually different.
pub fn mor_pair(rng: &mut ChaCha8Rng, sig: &Signature) -> (MorTerm, MorTerm) {
    let d = mor_type(rng, sig.mode);
    let budget = rng.gen_range(1..8);
    let t = gen_mor(rng, sig, &d, budget);
    match rng.gen_range(0..10) {
        0..=3 => {
            let mut u = equal_mor_variant(rng, sig, &t);
            if rng.gen_bool(0.5) {
                u = equal_mor_variant(rng, sig, &u);
            }
            (t, u)
        }
        4 | 5 => axiom_pair(rng, sig),
        _ => {
            let u = different_mor_variant(rng, sig, &t);
            (t, u)
        }
    }
}

/// The natural model kind for `mode`: matrices unless the mode is cartesian.
pub fn model_kind(mode: Mode) -> ModelKind {
    if ModelKind::Matrix.covers(mode) {
        ModelKind::Matrix
    } else {
        ModelKind::FinSet
    }
}

/// A random model of `sig` with carriers of size at most `max`.
pub fn random_model(rng: &mut ChaCha8Rng, sig: &Signature, name: &str, max: usize) -> Model {
    let mut m = Model::new(name, model_kind(sig.mode));
    m.randomize(sig, rng, max).unwrap();
    m
}

/// Whether `m` agrees on `t1` and `t2`; `None` when a carrier is too large to
/// evaluate.
pub fn agrees(m: &Model, t1: &MorTerm, t2: &MorTerm, sig: &Signature) -> Option<bool> {
    match refute_eq(m, t1, t2, sig) {
        Ok(r) => Some(r == Refutation::Consistent),
        Err(ModelError::TooLarge(_)) => None,
        Err(e) => panic!("cannot evaluate in {}: {}", m.name, e),
    }
}
