//! Layered planar diagrams for modes without a symmetry.
//!
//! Blocks slide past each other when their wire ranges are disjoint. Crossings
//! are ordinary blocks; a crossing followed by its inverse cancels.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{reassoc, MorTerm, Signature, TypeExpr};

use super::strict::{BlockOp, Layer, StrictTerm};

fn parts(l: &Layer) -> (usize, usize, usize) {
    match l {
        Layer::Block {
            offset,
            inputs,
            outputs,
            ..
        } => (*offset, inputs.len(), outputs.len()),
        Layer::Perm(_) => panic!("permutation layer in a planar diagram"),
    }
}

fn with_offset(l: &Layer, off: usize) -> Layer {
    match l {
        Layer::Block {
            op,
            inputs,
            outputs,
            ..
        } => Layer::Block {
            offset: off,
            op: op.clone(),
            inputs: inputs.clone(),
            outputs: outputs.clone(),
        },
        p => p.clone(),
    }
}

/// `a` then `b` rewritten as `b'` then `a'` when the two touch disjoint wires.
fn swap(a: &Layer, b: &Layer) -> Option<(Layer, Layer)> {
    let (ao, ai, am) = parts(a);
    let (bo, bi, bm) = parts(b);
    if bo + bi <= ao {
        Some((b.clone(), with_offset(a, ao - bi + bm)))
    } else if bo >= ao + am {
        Some((with_offset(b, bo - am + ai), a.clone()))
    } else {
        None
    }
}

/// Moves layer `j` up to index `i < j`.
fn bubble_up(layers: &[Layer], j: usize, i: usize) -> Option<Vec<Layer>> {
    let mut out = layers.to_vec();
    for k in (i..j).rev() {
        let (b, a) = swap(&out[k], &out[k + 1])?;
        out[k] = b;
        out[k + 1] = a;
    }
    Some(out)
}

/// Moves layer `i` down to index `j > i`.
fn bubble_down(layers: &[Layer], i: usize, j: usize) -> Option<Vec<Layer>> {
    let mut out = layers.to_vec();
    for k in i..j {
        let (b, a) = swap(&out[k], &out[k + 1])?;
        out[k] = b;
        out[k + 1] = a;
    }
    Some(out)
}

/// Interchange normal form: repeatedly schedule, among the blocks that can be
/// slid to the front, the leftmost one. Curry bodies are normalized first.
pub fn canonical(s: &StrictTerm) -> StrictTerm {
    let mut layers: Vec<Layer> = s
        .layers
        .iter()
        .map(|l| match l {
            Layer::Block {
                offset,
                op: BlockOp::Curry { x, z, body },
                inputs,
                outputs,
            } => Layer::Block {
                offset: *offset,
                op: BlockOp::Curry {
                    x: x.clone(),
                    z: z.clone(),
                    body: Box::new(canonical(body)),
                },
                inputs: inputs.clone(),
                outputs: outputs.clone(),
            },
            other => other.clone(),
        })
        .collect();
    for start in 0..layers.len() {
        let mut best: Option<(Layer, Vec<Layer>)> = None;
        for j in start..layers.len() {
            if let Some(moved) = bubble_up(&layers[start..], j - start, 0) {
                let cand = moved[0].clone();
                let better = match &best {
                    None => true,
                    Some((b, _)) => (parts(&cand).0, &cand) < (parts(b).0, b),
                };
                if better {
                    best = Some((cand, moved));
                }
            }
        }
        let (_, moved) = best.expect("the first remaining layer is always movable");
        layers.splice(start.., moved);
    }
    StrictTerm {
        dom: s.dom.clone(),
        cod: s.cod.clone(),
        layers,
    }
}

fn try_cancel(layers: &mut Vec<Layer>) -> bool {
    for i in 0..layers.len() {
        let Layer::Block {
            offset: oi,
            op: BlockOp::Crossing { positive: pi },
            outputs: out_i,
            ..
        } = &layers[i]
        else {
            continue;
        };
        for j in i + 1..layers.len() {
            let Layer::Block {
                op: BlockOp::Crossing { positive: pj },
                ..
            } = &layers[j]
            else {
                continue;
            };
            if pi == pj {
                continue;
            }
            let Some(moved) = bubble_up(&layers[i + 1..], j - i - 1, 0) else {
                continue;
            };
            if let Layer::Block { offset, inputs, .. } = &moved[0] {
                if offset == oi && inputs == out_i {
                    let mut next: Vec<Layer> = layers[..i].to_vec();
                    next.extend(moved.into_iter().skip(1));
                    *layers = next;
                    return true;
                }
            }
        }
    }
    false
}

/// Producer `(layer, port)` of every wire just before layer `upto`; `None` for inputs.
fn producers(s: &StrictTerm, upto: usize) -> Vec<Option<(usize, usize)>> {
    let mut wires: Vec<Option<(usize, usize)>> = vec![None; s.dom.len()];
    for (k, l) in s.layers[..upto].iter().enumerate() {
        let (o, i, m) = parts(l);
        wires.splice(o..o + i, (0..m).map(|p| Some((k, p))));
    }
    wires
}

fn shift_into(body: &StrictTerm, base: usize) -> Vec<Layer> {
    body.layers
        .iter()
        .map(|l| with_offset(l, parts(l).0 + base))
        .collect()
}

fn try_beta(s: &mut StrictTerm) -> bool {
    for j in 0..s.layers.len() {
        let Layer::Block {
            offset,
            op: BlockOp::Ev { x, .. },
            inputs,
            ..
        } = &s.layers[j]
        else {
            continue;
        };
        let nx = inputs.len() - 1;
        let hom_at = offset + nx;
        let Some((i, 0)) = producers(s, j)[hom_at] else {
            continue;
        };
        if !matches!(&s.layers[i], Layer::Block { op: BlockOp::Curry { x: cx, .. }, .. } if cx == x)
        {
            continue;
        }
        let arranged = bubble_down(&s.layers, i, j - 1)
            .map(|v| (v, j - 1))
            .or_else(|| bubble_up(&s.layers, j, i + 1).map(|v| (v, i)));
        let Some((arranged, ci)) = arranged else {
            continue;
        };
        let ei = ci + 1;
        let Layer::Block {
            offset: co,
            op: BlockOp::Curry { body, .. },
            ..
        } = &arranged[ci]
        else {
            continue;
        };
        let Layer::Block { offset: eo, .. } = &arranged[ei] else {
            continue;
        };
        if *co != eo + nx {
            continue;
        }
        let inlined = shift_into(body, *eo);
        let mut layers: Vec<Layer> = arranged[..ci].to_vec();
        layers.extend(inlined);
        layers.extend(arranged[ei + 1..].iter().cloned());
        s.layers = layers;
        return true;
    }
    false
}

fn try_lift(s: &mut StrictTerm) -> bool {
    for i in 0..s.layers.len() {
        let Layer::Block {
            offset: c,
            op: BlockOp::Curry { x, z, body },
            inputs,
            outputs,
        } = &s.layers[i]
        else {
            continue;
        };
        let nx = x.atoms().len();
        for k in 0..body.layers.len() {
            let Some(moved) = bubble_up(&body.layers, k, 0) else {
                continue;
            };
            let (bo, bi, _) = parts(&moved[0]);
            if bo < nx {
                continue;
            }
            let Layer::Block { outputs: louts, .. } = &moved[0] else {
                unreachable!()
            };
            let rel = bo - nx;
            let mut ys = inputs.clone();
            ys.splice(rel..rel + bi, louts.iter().cloned());
            let mut bdom = body.dom.clone();
            bdom.splice(bo..bo + bi, louts.iter().cloned());
            let new_body = StrictTerm {
                dom: bdom,
                cod: body.cod.clone(),
                layers: moved[1..].to_vec(),
            };
            let lifted = with_offset(&moved[0], c + rel);
            let curry = Layer::Block {
                offset: *c,
                op: BlockOp::Curry {
                    x: x.clone(),
                    z: z.clone(),
                    body: Box::new(new_body),
                },
                inputs: ys,
                outputs: outputs.clone(),
            };
            s.layers.splice(i..i + 1, [lifted, curry]);
            return true;
        }
    }
    false
}

fn try_eta(s: &mut StrictTerm) -> bool {
    for i in 0..s.layers.len() {
        let Layer::Block {
            op: BlockOp::Curry { x, z, body },
            inputs,
            ..
        } = &s.layers[i]
        else {
            continue;
        };
        let [Layer::Block {
            offset: 0,
            op: BlockOp::Ev { x: ex, y: ey },
            ..
        }] = body.layers.as_slice()
        else {
            continue;
        };
        if ex == x && ey == z && inputs.len() == 1 && body.dom.len() == x.atoms().len() + 1 {
            s.layers.remove(i);
            return true;
        }
    }
    false
}

fn step(s: &mut StrictTerm) -> bool {
    if try_cancel(&mut s.layers) || try_beta(s) || try_lift(s) || try_eta(s) {
        return true;
    }
    for l in s.layers.iter_mut() {
        if let Layer::Block {
            op: BlockOp::Curry { body, .. },
            ..
        } = l
        {
            if step(body) {
                return true;
            }
        }
    }
    false
}

/// Rewrites to a fixpoint or until `fuel` is spent, then puts the result in
/// interchange normal form. Returns the form, the steps used and whether a
/// fixpoint was reached.
pub fn normalize(s: &StrictTerm, fuel: usize) -> (StrictTerm, usize, bool) {
    let mut cur = canonical(s);
    let mut used = 0;
    while used < fuel {
        if !step(&mut cur) {
            return (cur, used, true);
        }
        cur = canonical(&cur);
        used += 1;
    }
    let done = !step(&mut cur.clone());
    (cur, used, done)
}

/// `rn(left ++ ins ++ right) -> rn(left ++ outs ++ right)` running `node` in the middle.
pub(crate) fn place_at(
    node: MorTerm,
    left: &[TypeExpr],
    ins: &[TypeExpr],
    outs: &[TypeExpr],
    right: &[TypeExpr],
) -> MorTerm {
    let mid = |xs: &[TypeExpr]| {
        let core = if right.is_empty() {
            TypeExpr::tensor_all(xs)
        } else {
            TypeExpr::tensor(TypeExpr::tensor_all(xs), TypeExpr::tensor_all(right))
        };
        if left.is_empty() {
            core
        } else {
            TypeExpr::tensor(TypeExpr::tensor_all(left), core)
        }
    };
    let flat = |xs: &[TypeExpr]| {
        let all: Vec<TypeExpr> = left.iter().chain(xs).chain(right).cloned().collect();
        TypeExpr::tensor_all(&all)
    };
    let mut t = node;
    if !right.is_empty() {
        t = t.tensor(MorTerm::Id(TypeExpr::tensor_all(right)));
    }
    if !left.is_empty() {
        t = MorTerm::Id(TypeExpr::tensor_all(left)).tensor(t);
    }
    reassoc(&flat(ins), &mid(ins))
        .expect("same atoms")
        .then(t)
        .then(reassoc(&mid(outs), &flat(outs)).expect("same atoms"))
}

/// Reads a planar layered term back as a kernel term `dom -> cod`.
pub fn to_mor(s: &StrictTerm, dom: &TypeExpr, cod: &TypeExpr, sig: &Signature) -> MorTerm {
    let mut wires = s.dom.clone();
    let mut term = reassoc(dom, &TypeExpr::tensor_all(&wires)).expect("dom atoms");
    for l in &s.layers {
        let Layer::Block {
            offset,
            op,
            inputs,
            outputs,
        } = l
        else {
            panic!("permutation layer in a planar diagram")
        };
        let tin = TypeExpr::tensor_all(inputs);
        let tout = TypeExpr::tensor_all(outputs);
        let (core, d, c) = match op {
            BlockOp::Gen(n) => {
                let g = sig.generator(n).expect("generator in signature");
                (MorTerm::Gen(n.clone()), g.dom.clone(), g.cod.clone())
            }
            BlockOp::Crossing { positive: true } => {
                let (a, b) = (inputs[0].clone(), inputs[1].clone());
                (
                    MorTerm::Braid(a.clone(), b.clone()),
                    TypeExpr::tensor(a.clone(), b.clone()),
                    TypeExpr::tensor(b, a),
                )
            }
            BlockOp::Crossing { positive: false } => {
                let (a, b) = (outputs[0].clone(), outputs[1].clone());
                (
                    MorTerm::BraidInv(a.clone(), b.clone()),
                    TypeExpr::tensor(b.clone(), a.clone()),
                    TypeExpr::tensor(a, b),
                )
            }
            BlockOp::Ev { x, y } => (
                MorTerm::Ev(x.clone(), y.clone()),
                TypeExpr::tensor(x.clone(), TypeExpr::hom(x.clone(), y.clone())),
                y.clone(),
            ),
            BlockOp::Curry { x, z, body } => {
                let bdom = TypeExpr::tensor(x.clone(), tin.clone());
                (
                    MorTerm::curry(to_mor(body, &bdom, z, sig)),
                    tin.clone(),
                    TypeExpr::hom(x.clone(), z.clone()),
                )
            }
            other => panic!("{:?} has no planar reading", other),
        };
        let node = reassoc(&tin, &d)
            .expect("block inputs")
            .then(core)
            .then(reassoc(&c, &tout).expect("block outputs"));
        let right: Vec<TypeExpr> = wires[offset + inputs.len()..].to_vec();
        term = term.then(place_at(node, &wires[..*offset], inputs, outputs, &right));
        wires.splice(offset..&(offset + inputs.len()), outputs.iter().cloned());
    }
    term.then(reassoc(&TypeExpr::tensor_all(&wires), cod).expect("cod atoms"))
}

/// Letters of a free-group word: `k + 1` for generator `k`, negated for its inverse.
pub type Word = Vec<i32>;

fn push_reduced(w: &mut Word, letter: i32) {
    if w.last() == Some(&-letter) {
        w.pop();
    } else {
        w.push(letter);
    }
}

fn concat(parts: &[&Word]) -> Word {
    let mut out = Word::new();
    for p in parts {
        for &l in p.iter() {
            push_reduced(&mut out, l);
        }
    }
    out
}

fn inverse_word(w: &Word) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Action of a pure crossing diagram on the free group over its strands
/// (images of the generators). Faithful on braids, so two crossing-only
/// diagrams are equal iff their actions agree. `None` if the diagram has other
/// blocks or a word exceeds `limit` letters.
pub fn artin_action(s: &StrictTerm, limit: usize) -> Option<Vec<Word>> {
    let n = s.dom.len();
    let mut images: Vec<Word> = (0..n).map(|k| vec![k as i32 + 1]).collect();
    for l in &s.layers {
        let Layer::Block {
            offset: i,
            op: BlockOp::Crossing { positive },
            ..
        } = l
        else {
            return None;
        };
        let (a, b) = (images[*i].clone(), images[i + 1].clone());
        if *positive {
            images[*i] = concat(&[&a, &b, &inverse_word(&a)]);
            images[i + 1] = a;
        } else {
            images[*i] = b.clone();
            images[i + 1] = concat(&[&inverse_word(&b), &a, &b]);
        }
        if images[*i].len() > limit || images[i + 1].len() > limit {
            return None;
        }
    }
    Some(images)
}

/// Whether every block is a generator.
pub fn generators_only(s: &StrictTerm) -> bool {
    s.layers.iter().all(|l| {
        matches!(
            l,
            Layer::Block {
                op: BlockOp::Gen(_),
                ..
            }
        )
    })
}
