use alloc::vec::Vec;

use super::term::MorTerm;
use super::types::TypeExpr;

/// Right-nested form of a type: its non-unit factors as `a * (b * (... * z))`.
pub fn rn(t: &TypeExpr) -> TypeExpr {
    TypeExpr::tensor_all(&t.atoms())
}

/// Structural isomorphism `t -> rn(t)` built from associators and unitors.
pub fn to_rn(t: &TypeExpr) -> MorTerm {
    match t {
        TypeExpr::Tensor(a, b) => {
            let step = to_rn(a).tensor(to_rn(b));
            step.then(merge(&a.atoms(), &b.atoms()))
        }
        _ => MorTerm::Id(t.clone()),
    }
}

/// `rn(l) * rn(r) -> rn(l ++ r)`.
pub(crate) fn merge(l: &[TypeExpr], r: &[TypeExpr]) -> MorTerm {
    let rr = TypeExpr::tensor_all(r);
    match l {
        [] => MorTerm::LeftU(rr),
        _ if r.is_empty() => MorTerm::RightU(TypeExpr::tensor_all(l)),
        [a] => MorTerm::Id(TypeExpr::tensor(a.clone(), rr)),
        [a, rest @ ..] => MorTerm::Assoc(a.clone(), TypeExpr::tensor_all(rest), rr)
            .then(MorTerm::Id(a.clone()).tensor(merge(rest, r))),
    }
}

/// Structural isomorphism `rn(t) -> t`.
pub fn from_rn(t: &TypeExpr) -> MorTerm {
    inverse(&to_rn(t)).expect("to_rn is structural")
}

/// Inverse of a term built from identities, associators, unitors and braids.
pub fn inverse(t: &MorTerm) -> Option<MorTerm> {
    use MorTerm::*;
    Some(match t {
        Id(x) => Id(x.clone()),
        Seq(f, g) => MorTerm::seq(inverse(g)?, inverse(f)?),
        Par(f, g) => MorTerm::par(inverse(f)?, inverse(g)?),
        Assoc(x, y, z) => Unassoc(x.clone(), y.clone(), z.clone()),
        Unassoc(x, y, z) => Assoc(x.clone(), y.clone(), z.clone()),
        LeftU(x) => UnleftU(x.clone()),
        UnleftU(x) => LeftU(x.clone()),
        RightU(x) => UnrightU(x.clone()),
        UnrightU(x) => RightU(x.clone()),
        Braid(x, y) => BraidInv(x.clone(), y.clone()),
        BraidInv(x, y) => Braid(x.clone(), y.clone()),
        _ => return None,
    })
}

/// Structural isomorphism between two types with the same factor list.
pub fn reassoc(from: &TypeExpr, to: &TypeExpr) -> Option<MorTerm> {
    if from.atoms() != to.atoms() {
        return None;
    }
    if from == to {
        return Some(MorTerm::Id(from.clone()));
    }
    Some(to_rn(from).then(from_rn(to)))
}

/// Swap of positions `k` and `k+1` on the right-nested list `xs`.
fn adjacent_swap(xs: &[TypeExpr], k: usize) -> MorTerm {
    if k > 0 {
        return MorTerm::Id(xs[0].clone()).tensor(adjacent_swap(&xs[1..], k - 1));
    }
    let (a, b) = (xs[0].clone(), xs[1].clone());
    if xs.len() == 2 {
        return MorTerm::Braid(a, b);
    }
    let rest = TypeExpr::tensor_all(&xs[2..]);
    MorTerm::Unassoc(a.clone(), b.clone(), rest.clone())
        .then(MorTerm::Braid(a.clone(), b.clone()).tensor(MorTerm::Id(rest.clone())))
        .then(MorTerm::Assoc(b, a, rest))
}

/// Symmetry `rn(xs) -> rn(ys)` with `ys[j] = xs[sources[j]]`, as adjacent braids.
pub fn permutation_term(xs: &[TypeExpr], sources: &[usize]) -> MorTerm {
    let n = xs.len();
    assert_eq!(sources.len(), n, "permutation length mismatch");
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = MorTerm::Id(TypeExpr::tensor_all(xs));
    for (j, &src) in sources.iter().enumerate() {
        let mut k = cur
            .iter()
            .position(|&s| s == src)
            .expect("sources is a permutation");
        while k > j {
            let tys: Vec<TypeExpr> = cur.iter().map(|&i| xs[i].clone()).collect();
            out = out.then(adjacent_swap(&tys, k - 1));
            cur.swap(k - 1, k);
            k -= 1;
        }
    }
    out
}
