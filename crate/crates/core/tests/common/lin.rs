use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rosetta::kernel::TypeExpr;
use rosetta::lintype::{parse_lin_theory, Combinator, LinTerm, LinTheory};

pub fn b(n: &str) -> TypeExpr {
    TypeExpr::basic(n)
}

/// Two basic types, two parallel endomorphisms of `A`, and a few maps that
/// mix tensors and homs.
pub fn lin_theory() -> LinTheory {
    parse_lin_theory(
        "mode closed-symmetric
         obj A B
         gen g : A -> A
         gen h : A -> A
         gen f : A * B -> A
         gen k : I -> B
         gen m : B -> A -o B
         gen n : A -o B -> B",
    )
    .unwrap()
}

fn small_type(rng: &mut ChaCha8Rng) -> TypeExpr {
    match rng.gen_range(0..6) {
        0 | 1 => b("A"),
        2 => b("B"),
        3 => TypeExpr::tensor(b("A"), b("B")),
        4 => TypeExpr::hom(b("A"), b("B")),
        _ => TypeExpr::Unit,
    }
}

fn tensor_parts(t: &TypeExpr) -> Option<(TypeExpr, TypeExpr)> {
    match t {
        TypeExpr::Tensor(a, b) => Some(((**a).clone(), (**b).clone())),
        _ => None,
    }
}

/// A random combinator with domain `dom`, of roughly `budget` nodes.
pub fn gen_comb(rng: &mut ChaCha8Rng, th: &LinTheory, dom: &TypeExpr, budget: usize) -> Combinator {
    let mut leaves: Vec<Combinator> = vec![Combinator::Id(dom.clone())];
    for g in &th.functions {
        if g.dom == *dom {
            leaves.push(Combinator::func(
                g.name.clone(),
                g.dom.clone(),
                g.cod.clone(),
            ));
        }
    }
    if let Some((x, y)) = tensor_parts(dom) {
        leaves.push(Combinator::Braid(x.clone(), y.clone()));
        if let Some((p, q)) = tensor_parts(&x) {
            leaves.push(Combinator::Assoc(p, q, y.clone()));
        }
        if let Some((q, r)) = tensor_parts(&y) {
            leaves.push(Combinator::Unassoc(x.clone(), q, r));
        }
        if x == TypeExpr::Unit {
            leaves.push(Combinator::Left(y.clone()));
        }
        if y == TypeExpr::Unit {
            leaves.push(Combinator::Right(x.clone()));
        }
        if let TypeExpr::Hom(p, q) = &y {
            if **p == x {
                leaves.push(Combinator::Eval(x.clone(), (**q).clone()));
            }
        }
    }
    if dom.atoms().len() < 4 {
        leaves.push(Combinator::Unleft(dom.clone()));
        leaves.push(Combinator::Unright(dom.clone()));
    }
    if budget <= 1 {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    match rng.gen_range(0..10) {
        0..=3 => leaves[rng.gen_range(0..leaves.len())].clone(),
        4..=6 => {
            let k = rng.gen_range(1..budget);
            let f = gen_comb(rng, th, dom, k);
            let (_, mid) = f.dom_cod().unwrap();
            let g = gen_comb(rng, th, &mid, budget - k);
            Combinator::comp(g, f)
        }
        7 | 8 => match tensor_parts(dom) {
            Some((x, y)) => {
                let k = rng.gen_range(1..budget);
                Combinator::tensor(gen_comb(rng, th, &x, k), gen_comb(rng, th, &y, budget - k))
            }
            None => leaves[rng.gen_range(0..leaves.len())].clone(),
        },
        _ => {
            let x = match rng.gen_range(0..3) {
                0 => b("A"),
                1 => b("B"),
                _ => TypeExpr::Unit,
            };
            let f = gen_comb(rng, th, &TypeExpr::tensor(x, dom.clone()), budget - 1);
            Combinator::curry(f)
        }
    }
}

/// A random well-typed linear term over fresh variables `x{next}`, `x{next+1}`, ...
pub fn gen_term(rng: &mut ChaCha8Rng, th: &LinTheory, budget: usize, next: &mut usize) -> LinTerm {
    let leaf = |rng: &mut ChaCha8Rng, next: &mut usize| {
        if rng.gen_range(0..5) == 0 {
            LinTerm::One
        } else {
            *next += 1;
            LinTerm::var(format!("x{}", *next - 1), small_type(rng))
        }
    };
    if budget <= 1 {
        return leaf(rng, next);
    }
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(1..budget);
            let s = gen_term(rng, th, k, next);
            LinTerm::tensor(s, gen_term(rng, th, budget - k, next))
        }
        _ => {
            let k = rng.gen_range(1..budget);
            let s = gen_term(rng, th, k, next);
            let ty = rosetta::lintype::lin_typecheck(&s).unwrap();
            LinTerm::apply(gen_comb(rng, th, &ty, budget - k), s)
        }
    }
}

/// A combinator equal to `c` by the equations of closed symmetric monoidal
/// categories.
pub fn equal_variant(rng: &mut ChaCha8Rng, c: &Combinator) -> Combinator {
    let (dom, cod) = c.dom_cod().unwrap();
    match rng.gen_range(0..6) {
        0 => Combinator::comp(c.clone(), Combinator::Id(dom)),
        1 => Combinator::comp(
            Combinator::Left(cod.clone()),
            Combinator::comp(Combinator::Unleft(cod), c.clone()),
        ),
        2 => match tensor_parts(&cod) {
            Some((x, y)) => Combinator::comp(
                Combinator::Braid(y.clone(), x.clone()),
                Combinator::comp(Combinator::Braid(x, y), c.clone()),
            ),
            None => Combinator::comp(Combinator::Id(cod), c.clone()),
        },
        3 => match &cod {
            TypeExpr::Hom(x, y) => Combinator::curry(Combinator::comp(
                Combinator::Eval((**x).clone(), (**y).clone()),
                Combinator::tensor(Combinator::Id((**x).clone()), c.clone()),
            )),
            _ => Combinator::comp(
                Combinator::Right(cod.clone()),
                Combinator::comp(Combinator::Unright(cod), c.clone()),
            ),
        },
        4 => match c {
            Combinator::Comp(g, f) => match &**f {
                Combinator::Comp(f1, f2) => Combinator::comp(
                    Combinator::comp((**g).clone(), (**f1).clone()),
                    (**f2).clone(),
                ),
                _ => c.clone(),
            },
            Combinator::Tensor(f, g) => {
                // (f * g) = (f * id) ∘ (id * g)
                let (fd, _) = f.dom_cod().unwrap();
                let (_, gc) = g.dom_cod().unwrap();
                Combinator::comp(
                    Combinator::tensor((**f).clone(), Combinator::Id(gc)),
                    Combinator::tensor(Combinator::Id(fd), (**g).clone()),
                )
            }
            _ => c.clone(),
        },
        _ => match tensor_parts(&dom) {
            Some((x, y)) => {
                // c = c ∘ braid ∘ braid
                Combinator::comp(
                    c.clone(),
                    Combinator::comp(
                        Combinator::Braid(y.clone(), x.clone()),
                        Combinator::Braid(x, y),
                    ),
                )
            }
            None => c.clone(),
        },
    }
}

/// A combinator usually different from `c`: a function symbol swapped for a
/// parallel one, or a braid inserted on equal factors.
pub fn different_variant(rng: &mut ChaCha8Rng, c: &Combinator) -> Combinator {
    fn swap(c: &Combinator) -> Option<Combinator> {
        match c {
            Combinator::Fn { name, dom, cod } if name == "g" || name == "h" => {
                let other = if name == "g" { "h" } else { "g" };
                Some(Combinator::func(other, dom.clone(), cod.clone()))
            }
            Combinator::Comp(g, f) => swap(f)
                .map(|f2| Combinator::comp((**g).clone(), f2))
                .or_else(|| swap(g).map(|g2| Combinator::comp(g2, (**f).clone()))),
            Combinator::Tensor(f, g) => swap(f)
                .map(|f2| Combinator::tensor(f2, (**g).clone()))
                .or_else(|| swap(g).map(|g2| Combinator::tensor((**f).clone(), g2))),
            Combinator::Curry(f) => swap(f).map(Combinator::curry),
            _ => None,
        }
    }
    if rng.gen_bool(0.5) {
        if let Some(s) = swap(c) {
            return s;
        }
    }
    let (_, cod) = c.dom_cod().unwrap();
    match tensor_parts(&cod) {
        Some((x, y)) if x == y => Combinator::comp(Combinator::Braid(x, y), c.clone()),
        _ if cod == b("A") => Combinator::comp(Combinator::func("g", b("A"), b("A")), c.clone()),
        _ => swap(c).unwrap_or_else(|| c.clone()),
    }
}
