//! Open string-diagram graphs for modes with a symmetry.
//!
//! Wires are named by their source; permutations disappear into the wiring.
//! In cartesian modes wires may fan out or be dropped, and identical boxes on
//! identical wires are merged.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::kernel::{permutation_term, reassoc, MorTerm, Signature, TypeExpr};

use super::strict::{BlockOp, Layer, StrictTerm};
use super::RewriteError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Src {
    In(usize),
    Port(usize, usize),
}

#[derive(Clone, Debug)]
pub enum Op {
    Gen(String),
    Ev {
        x: TypeExpr,
        y: TypeExpr,
    },
    Curry {
        x: TypeExpr,
        z: TypeExpr,
        body: Box<Graph>,
    },
    Cup(TypeExpr),
    Cap(TypeExpr),
}

#[derive(Clone, Debug)]
pub struct Node {
    pub op: Op,
    pub ins: Vec<Src>,
    pub outs: Vec<TypeExpr>,
    alive: bool,
}

#[derive(Clone, Debug)]
pub struct Graph {
    pub inputs: Vec<TypeExpr>,
    pub nodes: Vec<Node>,
    pub outputs: Vec<Src>,
    pub sharing: bool,
}

/// Comparable description of a box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OpKey {
    Cap(TypeExpr),
    Cup(TypeExpr),
    Ev(TypeExpr, TypeExpr),
    Gen(String),
    Curry(TypeExpr, TypeExpr, Box<Desc>),
}

/// Canonical description of a graph: nodes in canonical order, sources
/// referring to canonical indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Desc {
    pub inputs: Vec<TypeExpr>,
    pub nodes: Vec<(OpKey, Vec<Src>, Vec<TypeExpr>)>,
    pub outputs: Vec<Src>,
}

/// Tie-break search budget for interchangeable boxes with no inputs.
const TIE_BUDGET: usize = 720;

impl Graph {
    pub fn from_strict(s: &StrictTerm, sharing: bool) -> Result<Graph, RewriteError> {
        let mut g = Graph {
            inputs: s.dom.clone(),
            nodes: Vec::new(),
            outputs: Vec::new(),
            sharing,
        };
        let mut wires: Vec<Src> = (0..s.dom.len()).map(Src::In).collect();
        for layer in &s.layers {
            match layer {
                Layer::Perm(p) => wires = p.iter().map(|&i| wires[i]).collect(),
                Layer::Block {
                    offset,
                    op,
                    inputs,
                    outputs,
                } => {
                    let k = *offset;
                    let ins: Vec<Src> = wires[k..k + inputs.len()].to_vec();
                    let op = match op {
                        BlockOp::Dup if sharing => {
                            wires.splice(k..k + 1, [ins[0], ins[0]]);
                            continue;
                        }
                        BlockOp::Del if sharing => {
                            wires.remove(k);
                            continue;
                        }
                        BlockOp::Gen(n) => Op::Gen(n.clone()),
                        BlockOp::Ev { x, y } => Op::Ev {
                            x: x.clone(),
                            y: y.clone(),
                        },
                        BlockOp::Curry { x, z, body } => Op::Curry {
                            x: x.clone(),
                            z: z.clone(),
                            body: Box::new(Graph::from_strict(body, sharing)?),
                        },
                        BlockOp::Cup(b) => Op::Cup(b.clone()),
                        BlockOp::Cap(b) => Op::Cap(b.clone()),
                        other => {
                            return Err(RewriteError::Unsupported(alloc::format!(
                                "{:?} has no graph form in this mode",
                                other
                            )))
                        }
                    };
                    let id = g.nodes.len();
                    g.nodes.push(Node {
                        op,
                        ins,
                        outs: outputs.clone(),
                        alive: true,
                    });
                    wires.splice(
                        k..k + inputs.len(),
                        (0..outputs.len()).map(|p| Src::Port(id, p)),
                    );
                }
            }
        }
        g.outputs = wires;
        g.compact();
        Ok(g)
    }

    fn for_each_src_mut(&mut self, f: &mut dyn FnMut(&mut Src)) {
        for n in self.nodes.iter_mut().filter(|n| n.alive) {
            n.ins.iter_mut().for_each(&mut *f);
        }
        self.outputs.iter_mut().for_each(f);
    }

    fn replace_src(&mut self, from: Src, to: Src) {
        self.for_each_src_mut(&mut |s| {
            if *s == from {
                *s = to
            }
        });
    }

    /// Topologically sorts live nodes, drops unreachable ones in sharing mode and
    /// merges identical boxes.
    pub fn compact(&mut self) {
        for n in self.nodes.iter_mut() {
            if let Op::Curry { body, .. } = &mut n.op {
                body.compact();
            }
        }
        if self.sharing {
            let mut live = vec![false; self.nodes.len()];
            let mut stack: Vec<usize> = self
                .outputs
                .iter()
                .filter_map(|s| match s {
                    Src::Port(n, _) => Some(*n),
                    _ => None,
                })
                .collect();
            while let Some(n) = stack.pop() {
                if live[n] || !self.nodes[n].alive {
                    continue;
                }
                live[n] = true;
                for s in &self.nodes[n].ins {
                    if let Src::Port(m, _) = s {
                        stack.push(*m);
                    }
                }
            }
            for (n, l) in self.nodes.iter_mut().zip(live) {
                n.alive &= l;
            }
        }
        // Kahn's algorithm, lowest index first
        let count = self.nodes.len();
        let mut indeg = vec![0usize; count];
        let mut users: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, n) in self.nodes.iter().enumerate().filter(|(_, n)| n.alive) {
            for s in &n.ins {
                if let Src::Port(m, _) = s {
                    indeg[i] += 1;
                    users[*m].push(i);
                }
            }
        }
        let mut ready: alloc::collections::BTreeSet<usize> = (0..count)
            .filter(|&i| self.nodes[i].alive && indeg[i] == 0)
            .collect();
        let mut order = Vec::new();
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for &u in &users[i] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    ready.insert(u);
                }
            }
        }
        debug_assert_eq!(
            order.len(),
            self.nodes.iter().filter(|n| n.alive).count(),
            "cyclic diagram"
        );
        let mut remap = vec![usize::MAX; count];
        let mut nodes: Vec<Node> = Vec::with_capacity(order.len());
        let mut seen: BTreeMap<(OpKey, Vec<Src>), usize> = BTreeMap::new();
        for i in order {
            let mut n = self.nodes[i].clone();
            for s in n.ins.iter_mut() {
                if let Src::Port(m, p) = *s {
                    *s = Src::Port(remap[m], p);
                }
            }
            if self.sharing {
                let key = (op_key(&n.op), n.ins.clone());
                if let Some(&j) = seen.get(&key) {
                    remap[i] = j;
                    continue;
                }
                seen.insert(key, nodes.len());
            }
            remap[i] = nodes.len();
            nodes.push(n);
        }
        for s in self.outputs.iter_mut() {
            if let Src::Port(m, p) = *s {
                *s = Src::Port(remap[m], p);
            }
        }
        self.nodes = nodes;
        if self.sharing {
            // merging can orphan nodes
            let before = self.nodes.len();
            let mut used = vec![false; before];
            for i in (0..before).rev() {
                let reach = self
                    .outputs
                    .iter()
                    .any(|s| matches!(s, Src::Port(m, _) if *m == i))
                    || used[i];
                if reach {
                    used[i] = true;
                    for s in self.nodes[i].ins.clone() {
                        if let Src::Port(m, _) = s {
                            used[m] = true;
                        }
                    }
                }
            }
            if used.iter().any(|u| !u) {
                for (n, u) in self.nodes.iter_mut().zip(used) {
                    n.alive = u;
                }
                self.compact();
            }
        }
    }

    fn depends_on(&self, src: Src, node: usize) -> bool {
        let mut stack = vec![src];
        let mut seen = vec![false; self.nodes.len()];
        while let Some(s) = stack.pop() {
            if let Src::Port(m, _) = s {
                if m == node {
                    return true;
                }
                if !seen[m] {
                    seen[m] = true;
                    stack.extend(self.nodes[m].ins.iter().copied());
                }
            }
        }
        false
    }

    fn try_beta(&mut self) -> bool {
        for e in 0..self.nodes.len() {
            let Op::Ev { .. } = self.nodes[e].op else {
                continue;
            };
            let Some(&Src::Port(c, 0)) = self.nodes[e].ins.last() else {
                continue;
            };
            let Op::Curry { body, .. } = &self.nodes[c].op else {
                continue;
            };
            let body = (**body).clone();
            let ev = self.nodes[e].clone();
            let cins = self.nodes[c].ins.clone();
            let n = ev.ins.len() - 1;
            let base = self.nodes.len();
            let map = |s: Src| match s {
                Src::In(i) if i < n => ev.ins[i],
                Src::In(i) => cins[i - n],
                Src::Port(m, p) => Src::Port(base + m, p),
            };
            for bn in &body.nodes {
                let mut nn = bn.clone();
                nn.ins = nn.ins.iter().map(|&s| map(s)).collect();
                self.nodes.push(nn);
            }
            self.nodes[e].alive = false;
            if !self.sharing {
                self.nodes[c].alive = false;
            }
            for (k, &o) in body.outputs.iter().enumerate() {
                self.replace_src(Src::Port(e, k), map(o));
            }
            self.compact();
            return true;
        }
        false
    }

    fn try_lift(&mut self) -> bool {
        for c in 0..self.nodes.len() {
            let Op::Curry { x, body, .. } = &self.nodes[c].op else {
                continue;
            };
            let n = x.atoms().len();
            let Some(k) = body
                .nodes
                .iter()
                .position(|bn| bn.ins.iter().all(|s| matches!(s, Src::In(j) if *j >= n)))
            else {
                continue;
            };
            let cins = self.nodes[c].ins.clone();
            let Op::Curry { body, .. } = &mut self.nodes[c].op else {
                unreachable!()
            };
            let lifted = body.nodes[k].clone();
            let outer = Node {
                op: lifted.op.clone(),
                ins: lifted
                    .ins
                    .iter()
                    .map(|s| match s {
                        Src::In(j) => cins[j - n],
                        _ => unreachable!(),
                    })
                    .collect(),
                outs: lifted.outs.clone(),
                alive: true,
            };
            let kid = self.nodes.len();
            let mut new_cins = cins;
            let Op::Curry { body, .. } = &mut self.nodes[c].op else {
                unreachable!()
            };
            for (p, ty) in lifted.outs.iter().enumerate() {
                let q = body.inputs.len();
                body.inputs.push(ty.clone());
                body.replace_src(Src::Port(k, p), Src::In(q));
                new_cins.push(Src::Port(kid, p));
            }
            body.nodes[k].alive = false;
            // prune unused curried-over inputs
            let mut used = vec![false; body.inputs.len()];
            for s in body
                .nodes
                .iter()
                .filter(|bn| bn.alive)
                .flat_map(|bn| bn.ins.iter())
                .chain(body.outputs.iter())
            {
                if let Src::In(j) = s {
                    used[*j] = true;
                }
            }
            let mut remap = vec![usize::MAX; used.len()];
            let mut inputs = Vec::new();
            let mut kept_cins = Vec::new();
            for j in 0..used.len() {
                if j < n || used[j] {
                    remap[j] = inputs.len();
                    inputs.push(body.inputs[j].clone());
                    if j >= n {
                        kept_cins.push(new_cins[j - n]);
                    }
                }
            }
            body.inputs = inputs;
            body.for_each_src_mut(&mut |s| {
                if let Src::In(j) = *s {
                    *s = Src::In(remap[j]);
                }
            });
            body.compact();
            self.nodes[c].ins = kept_cins;
            self.nodes.push(outer);
            self.compact();
            return true;
        }
        false
    }

    fn try_eta(&mut self) -> bool {
        for c in 0..self.nodes.len() {
            let Op::Curry { x, z, body } = &self.nodes[c].op else {
                continue;
            };
            let n = x.atoms().len();
            if body.nodes.len() != 1 {
                continue;
            }
            let e = &body.nodes[0];
            let Op::Ev { x: ex, y: ey } = &e.op else {
                continue;
            };
            if ex != x || ey != z {
                continue;
            }
            let xs_ok = (0..n).all(|i| e.ins[i] == Src::In(i));
            let Some(&Src::In(h)) = e.ins.last() else {
                continue;
            };
            let outs_ok = body.outputs.len() == e.outs.len()
                && body
                    .outputs
                    .iter()
                    .enumerate()
                    .all(|(k, s)| *s == Src::Port(0, k));
            if !xs_ok || h < n || !outs_ok || (!self.sharing && body.inputs.len() != n + 1) {
                continue;
            }
            let target = self.nodes[c].ins[h - n];
            self.nodes[c].alive = false;
            self.replace_src(Src::Port(c, 0), target);
            self.compact();
            return true;
        }
        false
    }

    fn try_yank(&mut self) -> bool {
        for k in 0..self.nodes.len() {
            let Op::Cap(_) = self.nodes[k].op else {
                continue;
            };
            let ins = self.nodes[k].ins.clone();
            for (link, other, keep_port) in [(1usize, 0usize, 1usize), (0, 1, 0)] {
                let Src::Port(u, p) = ins[link] else { continue };
                if !matches!(self.nodes[u].op, Op::Cup(_)) || p != 1 - link {
                    continue;
                }
                // cup port `keep_port` continues the straightened wire
                if ins[other] == Src::Port(u, keep_port) || self.depends_on(ins[other], u) {
                    continue;
                }
                self.nodes[k].alive = false;
                self.nodes[u].alive = false;
                self.replace_src(Src::Port(u, keep_port), ins[other]);
                self.compact();
                return true;
            }
        }
        false
    }

    /// One rewrite anywhere in the graph, outermost first.
    pub fn step(&mut self) -> bool {
        if self.try_beta() || self.try_lift() || self.try_eta() || self.try_yank() {
            return true;
        }
        for i in 0..self.nodes.len() {
            if let Op::Curry { body, .. } = &mut self.nodes[i].op {
                if body.step() {
                    body.compact();
                    self.compact();
                    return true;
                }
            }
        }
        false
    }

    /// Rewrites until no rule applies or `fuel` steps are spent. Returns the steps used
    /// and whether a fixpoint was reached.
    pub fn normalize(&mut self, fuel: usize) -> (usize, bool) {
        let mut used = 0;
        while used < fuel {
            if !self.step() {
                return (used, true);
            }
            used += 1;
        }
        let done = !self.clone().step();
        (used, done)
    }

    fn layers(&self) -> Vec<usize> {
        let mut layer = vec![0usize; self.nodes.len()];
        for i in 0..self.nodes.len() {
            let l = self.nodes[i]
                .ins
                .iter()
                .map(|s| match s {
                    Src::In(_) => 0,
                    Src::Port(m, _) => layer[*m],
                })
                .max()
                .unwrap_or(0);
            layer[i] = l + 1;
        }
        layer
    }

    /// Canonical description. The flag is false when interchangeable input-free
    /// boxes were too numerous to try every order; the description is then still
    /// a faithful picture of this graph but may differ from that of an isomorphic one.
    pub fn canonical(&self) -> (Desc, bool) {
        let mut exact = true;
        let keys: Vec<OpKey> = self
            .nodes
            .iter()
            .map(|n| match &n.op {
                Op::Curry { x, z, body } => {
                    let (d, e) = body.canonical();
                    exact &= e;
                    OpKey::Curry(x.clone(), z.clone(), Box::new(d))
                }
                other => op_key(other),
            })
            .collect();
        let layer = self.layers();
        // interchangeable input-free boxes with outputs
        let mut groups: BTreeMap<&OpKey, Vec<usize>> = BTreeMap::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.ins.is_empty() && !n.outs.is_empty() {
                groups.entry(&keys[i]).or_default().push(i);
            }
        }
        let groups: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() > 1).collect();
        let mut combos: usize = 1;
        for g in &groups {
            for k in 1..=g.len() {
                combos = combos.saturating_mul(k);
            }
        }
        if combos > TIE_BUDGET {
            exact = false;
            let rank: Vec<usize> = (0..self.nodes.len()).collect();
            return (self.describe(&keys, &layer, &rank), exact);
        }
        let mut perms: Vec<Vec<usize>> = groups.clone();
        let mut best: Option<Desc> = None;
        loop {
            let mut rank: Vec<usize> = (0..self.nodes.len()).collect();
            for (g, p) in groups.iter().zip(&perms) {
                for (slot, &node) in g.iter().zip(p) {
                    rank[node] = *slot;
                }
            }
            let d = self.describe(&keys, &layer, &rank);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
            // advance the odometer of per-group permutations
            let mut advanced = false;
            for p in perms.iter_mut() {
                if next_permutation(p) {
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        (best.expect("at least one ordering"), exact)
    }

    fn describe(&self, keys: &[OpKey], layer: &[usize], rank: &[usize]) -> Desc {
        let count = self.nodes.len();
        let mut canon = vec![usize::MAX; count];
        let mut order: Vec<usize> = Vec::with_capacity(count);
        let max_layer = layer.iter().copied().max().unwrap_or(0);
        for l in 1..=max_layer {
            let mut here: Vec<(OpKey, Vec<Src>, usize, usize)> = (0..count)
                .filter(|&i| layer[i] == l)
                .map(|i| {
                    let ins = self.nodes[i]
                        .ins
                        .iter()
                        .map(|s| match *s {
                            Src::Port(m, p) => Src::Port(canon[m], p),
                            other => other,
                        })
                        .collect();
                    (keys[i].clone(), ins, rank[i], i)
                })
                .collect();
            here.sort();
            for (_, _, _, i) in here {
                canon[i] = order.len();
                order.push(i);
            }
        }
        let map = |s: &Src| match *s {
            Src::Port(m, p) => Src::Port(canon[m], p),
            other => other,
        };
        Desc {
            inputs: self.inputs.clone(),
            nodes: order
                .iter()
                .map(|&i| {
                    (
                        keys[i].clone(),
                        self.nodes[i].ins.iter().map(map).collect(),
                        self.nodes[i].outs.clone(),
                    )
                })
                .collect(),
            outputs: self.outputs.iter().map(map).collect(),
        }
    }
}

fn op_key(op: &Op) -> OpKey {
    match op {
        Op::Gen(n) => OpKey::Gen(n.clone()),
        Op::Ev { x, y } => OpKey::Ev(x.clone(), y.clone()),
        Op::Cup(b) => OpKey::Cup(b.clone()),
        Op::Cap(b) => OpKey::Cap(b.clone()),
        Op::Curry { x, z, body } => {
            OpKey::Curry(x.clone(), z.clone(), Box::new(body.canonical().0))
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.sort();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl Desc {
    /// Strict layered form: each box is brought to the front of the wire list by a
    /// permutation, applied at offset zero, and a last permutation orders the outputs.
    pub fn to_strict(&self) -> StrictTerm {
        let mut wires: Vec<Src> = (0..self.inputs.len()).map(Src::In).collect();
        let mut types = self.inputs.clone();
        let mut layers = Vec::new();
        for (i, (key, ins, outs)) in self.nodes.iter().enumerate() {
            let mut src: Vec<usize> = ins
                .iter()
                .map(|s| wires.iter().position(|w| w == s).expect("wire"))
                .collect();
            let rest: Vec<usize> = (0..wires.len()).filter(|k| !src.contains(k)).collect();
            src.extend(rest);
            if src.iter().enumerate().any(|(k, &s)| k != s) {
                layers.push(Layer::Perm(src.clone()));
            }
            wires = src.iter().map(|&k| wires[k]).collect();
            types = src.iter().map(|&k| types[k].clone()).collect();
            let inputs: Vec<TypeExpr> = types[..ins.len()].to_vec();
            let op = match key {
                OpKey::Gen(n) => BlockOp::Gen(n.clone()),
                OpKey::Ev(x, y) => BlockOp::Ev {
                    x: x.clone(),
                    y: y.clone(),
                },
                OpKey::Cup(b) => BlockOp::Cup(b.clone()),
                OpKey::Cap(b) => BlockOp::Cap(b.clone()),
                OpKey::Curry(x, z, body) => BlockOp::Curry {
                    x: x.clone(),
                    z: z.clone(),
                    body: Box::new(body.to_strict()),
                },
            };
            layers.push(Layer::Block {
                offset: 0,
                op,
                inputs,
                outputs: outs.clone(),
            });
            wires.splice(0..ins.len(), (0..outs.len()).map(|p| Src::Port(i, p)));
            types.splice(0..ins.len(), outs.iter().cloned());
        }
        let src: Vec<usize> = self
            .outputs
            .iter()
            .map(|s| wires.iter().position(|w| w == s).expect("wire"))
            .collect();
        if src.len() != wires.len() || src.iter().enumerate().any(|(k, &s)| k != s) {
            layers.push(Layer::Perm(src.clone()));
        }
        let cod = src.iter().map(|&k| types[k].clone()).collect();
        StrictTerm {
            dom: self.inputs.clone(),
            cod,
            layers,
        }
    }

    /// Reads the description back as a term `dom -> cod`.
    pub fn to_mor(
        &self,
        dom: &TypeExpr,
        cod: &TypeExpr,
        sig: &Signature,
        sharing: bool,
    ) -> MorTerm {
        let mut wires: Vec<Src> = (0..self.inputs.len()).map(Src::In).collect();
        let mut types = self.inputs.clone();
        let mut term = reassoc(dom, &TypeExpr::tensor_all(&types)).expect("dom atoms");
        for (i, (key, ins, outs)) in self.nodes.iter().enumerate() {
            let later: Vec<Src> = self.nodes[i + 1..]
                .iter()
                .flat_map(|(_, s, _)| s.iter().copied())
                .chain(self.outputs.iter().copied())
                .collect();
            let (t, w, ty) = route(&wires, &types, ins, &later, sharing);
            term = term.then(t);
            wires = w;
            types = ty;
            let node = node_term(key, &types[..ins.len()], outs, sig, sharing);
            let rest: Vec<TypeExpr> = types[ins.len()..].to_vec();
            term = term.then(place(node, &types[..ins.len()], outs, &rest));
            wires.splice(0..ins.len(), (0..outs.len()).map(|p| Src::Port(i, p)));
            types.splice(0..ins.len(), outs.iter().cloned());
        }
        let (t, _, ty) = route(&wires, &types, &self.outputs, &[], sharing);
        term = term.then(t);
        term.then(reassoc(&TypeExpr::tensor_all(&ty), cod).expect("cod atoms"))
    }
}

/// Brings the wires `front` (in order) to the front of the list, keeping any wire
/// still needed by `later` behind them. In sharing mode wires are copied and
/// dropped as required.
fn route(
    wires: &[Src],
    types: &[TypeExpr],
    front: &[Src],
    later: &[Src],
    sharing: bool,
) -> (MorTerm, Vec<Src>, Vec<TypeExpr>) {
    let mut term = MorTerm::Id(TypeExpr::tensor_all(types));
    let (mut wires, mut types) = (wires.to_vec(), types.to_vec());
    if sharing {
        let counts: Vec<usize> = wires
            .iter()
            .map(|w| front.iter().filter(|s| *s == w).count() + usize::from(later.contains(w)))
            .collect();
        if counts.iter().any(|&c| c != 1) {
            term = term.then(copy_all(&types, &counts));
            let mut nw = Vec::new();
            let mut nt = Vec::new();
            for ((w, t), &c) in wires.iter().zip(&types).zip(&counts) {
                for _ in 0..c {
                    nw.push(*w);
                    nt.push(t.clone());
                }
            }
            wires = nw;
            types = nt;
        }
    }
    let mut taken = vec![false; wires.len()];
    let mut src = Vec::new();
    for s in front {
        let k = (0..wires.len())
            .find(|&k| !taken[k] && wires[k] == *s)
            .expect("wire available");
        taken[k] = true;
        src.push(k);
    }
    src.extend((0..wires.len()).filter(|&k| !taken[k]));
    if src.iter().enumerate().any(|(k, &s)| k != s) {
        term = term.then(permutation_term(&types, &src));
        wires = src.iter().map(|&k| wires[k]).collect();
        types = src.iter().map(|&k| types[k].clone()).collect();
    }
    (term, wires, types)
}

fn copies(k: usize, a: &TypeExpr) -> MorTerm {
    match k {
        0 => MorTerm::Del(a.clone()),
        1 => MorTerm::Id(a.clone()),
        2 => MorTerm::Dup(a.clone()),
        _ => MorTerm::Dup(a.clone()).then(MorTerm::Id(a.clone()).tensor(copies(k - 1, a))),
    }
}

fn copy_all(types: &[TypeExpr], counts: &[usize]) -> MorTerm {
    match types {
        [] => MorTerm::Id(TypeExpr::Unit),
        [a] => copies(counts[0], a),
        [a, rest @ ..] => {
            let head: Vec<TypeExpr> = vec![a.clone(); counts[0]];
            let tail: Vec<TypeExpr> = rest
                .iter()
                .zip(&counts[1..])
                .flat_map(|(t, &c)| core::iter::repeat_n(t.clone(), c))
                .collect();
            let mid = TypeExpr::tensor(TypeExpr::tensor_all(&head), TypeExpr::tensor_all(&tail));
            let all: Vec<TypeExpr> = head.iter().chain(&tail).cloned().collect();
            copies(counts[0], a)
                .tensor(copy_all(rest, &counts[1..]))
                .then(reassoc(&mid, &TypeExpr::tensor_all(&all)).expect("same atoms"))
        }
    }
}

fn node_term(
    key: &OpKey,
    ins: &[TypeExpr],
    outs: &[TypeExpr],
    sig: &Signature,
    sharing: bool,
) -> MorTerm {
    let tin = TypeExpr::tensor_all(ins);
    let tout = TypeExpr::tensor_all(outs);
    let (core, d, c) = match key {
        OpKey::Gen(n) => {
            let g = sig.generator(n).expect("generator in signature");
            (MorTerm::Gen(n.clone()), g.dom.clone(), g.cod.clone())
        }
        OpKey::Ev(x, y) => {
            let d = TypeExpr::tensor(x.clone(), TypeExpr::hom(x.clone(), y.clone()));
            (MorTerm::Ev(x.clone(), y.clone()), d, y.clone())
        }
        OpKey::Cup(b) => (
            MorTerm::Cup(b.clone()),
            TypeExpr::Unit,
            TypeExpr::tensor(TypeExpr::dual(b.clone()), b.clone()),
        ),
        OpKey::Cap(b) => (
            MorTerm::Cap(b.clone()),
            TypeExpr::tensor(b.clone(), TypeExpr::dual(b.clone())),
            TypeExpr::Unit,
        ),
        OpKey::Curry(x, z, body) => {
            let ys = TypeExpr::tensor_all(ins);
            let bdom = TypeExpr::tensor(x.clone(), ys.clone());
            let inner = body.to_mor(&bdom, z, sig, sharing);
            (
                MorTerm::curry(inner),
                ys,
                TypeExpr::hom(x.clone(), z.clone()),
            )
        }
    };
    reassoc(&tin, &d)
        .expect("box inputs")
        .then(core)
        .then(reassoc(&c, &tout).expect("box outputs"))
}

/// `rn(ins ++ rest) -> rn(outs ++ rest)` running `node` on the front wires.
fn place(node: MorTerm, ins: &[TypeExpr], outs: &[TypeExpr], rest: &[TypeExpr]) -> MorTerm {
    if rest.is_empty() {
        return node;
    }
    let r = TypeExpr::tensor_all(rest);
    let all_in: Vec<TypeExpr> = ins.iter().chain(rest).cloned().collect();
    let all_out: Vec<TypeExpr> = outs.iter().chain(rest).cloned().collect();
    let mid_in = TypeExpr::tensor(TypeExpr::tensor_all(ins), r.clone());
    let mid_out = TypeExpr::tensor(TypeExpr::tensor_all(outs), r.clone());
    reassoc(&TypeExpr::tensor_all(&all_in), &mid_in)
        .expect("same atoms")
        .then(node.tensor(MorTerm::Id(r)))
        .then(reassoc(&mid_out, &TypeExpr::tensor_all(&all_out)).expect("same atoms"))
}
