//! String diagrams of morphism terms as layered graphs, with JSON, DOT and SVG
//! renderings. Time runs down the page; wires of dual type point up.

use std::fmt::Write as _;

use serde::Serialize;

use rosetta::kernel::{infer_dom_cod, KernelError, Mode, MorTerm, Signature, TypeExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    Box,
    BraidCrossing,
    Cup,
    Cap,
    Dup,
    Del,
    InputPort,
    OutputPort,
    Clasp,
    Bubble,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Box => "box",
            NodeKind::BraidCrossing => "braid-crossing",
            NodeKind::Cup => "cup",
            NodeKind::Cap => "cap",
            NodeKind::Dup => "dup",
            NodeKind::Del => "del",
            NodeKind::InputPort => "input-port",
            NodeKind::OutputPort => "output-port",
            NodeKind::Clasp => "clasp",
            NodeKind::Bubble => "bubble",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Down,
    Up,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: usize,
    pub kind: NodeKind,
    pub label: String,
    /// Innermost bubble enclosing this node.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "type")]
    pub label: String,
    pub dir: Dir,
    #[serde(skip)]
    pub wire: TypeExpr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiagramGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub layers: Vec<Vec<usize>>,
}

impl DiagramGraph {
    pub fn count(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    pub fn incoming(&self, id: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.to == id)
    }

    pub fn outgoing(&self, id: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == id)
    }

    /// Wire types entering the output ports, left to right.
    pub fn output_types(&self) -> Vec<TypeExpr> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::OutputPort)
            .flat_map(|n| self.incoming(n.id).map(|e| e.wire.clone()))
            .collect()
    }

    /// Wire types leaving the input ports, left to right.
    pub fn input_types(&self) -> Vec<TypeExpr> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::InputPort)
            .flat_map(|n| self.outgoing(n.id).map(|e| e.wire.clone()))
            .collect()
    }
}

/// The wires a type is drawn with: its tensor factors, with internal homs
/// and duals expanded in compact modes.
pub fn wires_of(t: &TypeExpr, mode: Mode) -> Vec<TypeExpr> {
    if mode.caps().compact {
        t.compact_normal().atoms()
    } else {
        t.atoms()
    }
}

/// A dangling wire: the node it leaves and its type.
type Wire = (usize, TypeExpr);

struct Builder<'a> {
    sig: &'a Signature,
    mode: Mode,
    g: DiagramGraph,
    scope: Option<usize>,
}

impl Builder<'_> {
    fn wires(&self, t: &TypeExpr) -> Vec<TypeExpr> {
        wires_of(t, self.mode)
    }

    fn node(&mut self, kind: NodeKind, label: impl Into<String>) -> usize {
        let id = self.g.nodes.len();
        self.g.nodes.push(Node {
            id,
            kind,
            label: label.into(),
            inside: self.scope,
        });
        id
    }

    fn connect(&mut self, (from, wire): Wire, to: usize) {
        let dir = match wire {
            TypeExpr::Dual(_) => Dir::Up,
            _ => Dir::Down,
        };
        self.g.edges.push(Edge {
            from,
            to,
            label: wire.display_in(self.mode).to_string(),
            dir,
            wire,
        });
    }

    /// A node consuming `inputs` and emitting wires of the given types.
    fn op(
        &mut self,
        kind: NodeKind,
        label: &str,
        inputs: Vec<Wire>,
        out: Vec<TypeExpr>,
    ) -> Vec<Wire> {
        let n = self.node(kind, label);
        for w in inputs {
            self.connect(w, n);
        }
        out.into_iter().map(|t| (n, t)).collect()
    }

    /// Evaluation on `n` argument wires followed by a function wire.
    fn eval(&mut self, mut ws: Vec<Wire>, n: usize, cod: Vec<TypeExpr>) -> Vec<Wire> {
        if self.mode.caps().compact {
            let keep = ws.split_off(2 * n);
            self.op(NodeKind::Cap, "cap", ws, Vec::new());
            keep
        } else {
            self.op(NodeKind::Box, "ev", ws, cod)
        }
    }

    fn dom_cod(&self, t: &MorTerm) -> Result<(TypeExpr, TypeExpr), KernelError> {
        infer_dom_cod(t, self.sig)
    }

    fn build(&mut self, t: &MorTerm, mut ws: Vec<Wire>) -> Result<Vec<Wire>, KernelError> {
        use MorTerm::*;
        Ok(match t {
            Id(_) | Assoc(..) | Unassoc(..) | LeftU(_) | UnleftU(_) | RightU(_) | UnrightU(_) => ws,
            Seq(f, g) => {
                let mid = self.build(f, ws)?;
                self.build(g, mid)?
            }
            Par(f, g) => {
                let n = self.wires(&self.dom_cod(f)?.0).len();
                let rest = ws.split_off(n);
                let mut out = self.build(f, ws)?;
                out.extend(self.build(g, rest)?);
                out
            }
            Gen(name) => {
                let cod = self.wires(&self.dom_cod(t)?.1);
                self.op(NodeKind::Box, name, ws, cod)
            }
            Braid(..) | BraidInv(..) => {
                let cod = self.wires(&self.dom_cod(t)?.1);
                let label = if matches!(t, Braid(..)) {
                    "braid"
                } else {
                    "braidinv"
                };
                self.op(NodeKind::BraidCrossing, label, ws, cod)
            }
            Cup(_) => {
                let cod = self.wires(&self.dom_cod(t)?.1);
                self.op(NodeKind::Cup, "cup", ws, cod)
            }
            Cap(_) => self.op(NodeKind::Cap, "cap", ws, Vec::new()),
            Dup(x) => {
                let mut cod = self.wires(x);
                cod.extend(self.wires(x));
                self.op(NodeKind::Dup, "dup", ws, cod)
            }
            Del(_) => self.op(NodeKind::Del, "del", ws, Vec::new()),
            Proj1(x, _) => {
                let rest = ws.split_off(self.wires(x).len());
                self.op(NodeKind::Del, "del", rest, Vec::new());
                ws
            }
            Proj2(x, _) => {
                let rest = ws.split_off(self.wires(x).len());
                self.op(NodeKind::Del, "del", ws, Vec::new());
                rest
            }
            Pair(f, g) => {
                let dom = self.wires(&self.dom_cod(f)?.0);
                let mut cod = dom.clone();
                cod.extend(dom);
                let mut copies = self.op(NodeKind::Dup, "dup", ws, cod);
                let second = copies.split_off(copies.len() / 2);
                let mut out = self.build(f, copies)?;
                out.extend(self.build(g, second)?);
                out
            }
            Ev(x, _) => {
                let n = self.wires(x).len();
                let cod = self.wires(&self.dom_cod(t)?.1);
                self.eval(ws, n, cod)
            }
            Uncurry(f) => {
                let (fd, _) = self.dom_cod(f)?;
                let cod = self.wires(&self.dom_cod(t)?.1);
                let ys = ws.split_off(ws.len() - self.wires(&fd).len());
                let n = ws.len();
                ws.extend(self.build(f, ys)?);
                self.eval(ws, n, cod)
            }
            Curry(f) | Name(f) => {
                let (fd, _) = self.dom_cod(f)?;
                let x = match (t, fd) {
                    (Curry(_), TypeExpr::Tensor(x, _)) => *x,
                    (Curry(_), other) => {
                        return Err(KernelError::Shape(format!(
                            "curry of a map out of {:?}",
                            other
                        )))
                    }
                    (_, d) => d,
                };
                let xs = self.wires(&x);
                if self.mode.caps().compact {
                    let cod = self.wires(&TypeExpr::tensor(TypeExpr::dual(x.clone()), x));
                    let mut bent = self.op(NodeKind::Cup, "cup", Vec::new(), cod);
                    let mut inner = bent.split_off(bent.len() - xs.len());
                    inner.extend(ws);
                    bent.extend(self.build(f, inner)?);
                    bent
                } else {
                    let label = if matches!(t, Curry(_)) {
                        "curry"
                    } else {
                        "name"
                    };
                    let outer = self.scope;
                    let bubble = self.node(NodeKind::Bubble, label);
                    self.scope = Some(bubble);
                    let mut inner: Vec<Wire> = xs.into_iter().map(|x| (bubble, x)).collect();
                    inner.extend(ws);
                    let out = self.build(f, inner)?;
                    self.scope = outer;
                    let cod = self.dom_cod(t)?.1;
                    self.op(NodeKind::Clasp, "clasp", out, self.wires(&cod))
                }
            }
        })
    }
}

/// Exports a well-typed term as a layered diagram.
pub fn export_diagram(t: &MorTerm, sig: &Signature) -> Result<DiagramGraph, KernelError> {
    let (dom, _) = infer_dom_cod(t, sig)?;
    let mut b = Builder {
        sig,
        mode: sig.mode,
        g: DiagramGraph::default(),
        scope: None,
    };
    let inputs = b
        .wires(&dom)
        .into_iter()
        .map(|w| {
            let label = w.display_in(sig.mode).to_string();
            (b.node(NodeKind::InputPort, label), w)
        })
        .collect();
    for w in b.build(t, inputs)? {
        let label = w.1.display_in(sig.mode).to_string();
        let port = b.node(NodeKind::OutputPort, label);
        b.connect(w, port);
    }
    let mut g = b.g;
    g.layers = layering(&g);
    Ok(g)
}

/// Longest-path layering: input ports on top, output ports at the bottom.
fn layering(g: &DiagramGraph) -> Vec<Vec<usize>> {
    let mut level = vec![0usize; g.nodes.len()];
    for n in &g.nodes {
        if n.kind == NodeKind::InputPort {
            continue;
        }
        level[n.id] = 1 + g.incoming(n.id).map(|e| level[e.from]).max().unwrap_or(0);
    }
    let bottom = g
        .nodes
        .iter()
        .filter(|n| n.kind != NodeKind::OutputPort)
        .map(|n| level[n.id] + 1)
        .max()
        .unwrap_or(1);
    let mut layers = vec![Vec::new(); bottom + 1];
    for n in &g.nodes {
        let l = if n.kind == NodeKind::OutputPort {
            bottom
        } else {
            level[n.id]
        };
        layers[l].push(n.id);
    }
    layers.retain(|l| !l.is_empty());
    layers
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

impl Format {
    pub fn from_name(s: &str) -> Option<Format> {
        Some(match s {
            "json" => Format::Json,
            "dot" => Format::Dot,
            "svg" => Format::Svg,
            _ => return None,
        })
    }
}

pub fn render(g: &DiagramGraph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(g).expect("diagram graphs serialize");
            s.push('\n');
            s
        }
        Format::Dot => render_dot(g),
        Format::Svg => render_svg(g),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_dot(g: &DiagramGraph) -> String {
    let mut s =
        String::from("digraph diagram {\n  rankdir=TB;\n  node [fontname=\"monospace\"];\n");
    for n in &g.nodes {
        let shape = match n.kind {
            NodeKind::Box => "box",
            NodeKind::BraidCrossing => "circle",
            NodeKind::Cup => "invtrapezium",
            NodeKind::Cap => "trapezium",
            NodeKind::Dup => "triangle",
            NodeKind::Del => "doublecircle",
            NodeKind::InputPort | NodeKind::OutputPort => "plaintext",
            NodeKind::Clasp => "diamond",
            NodeKind::Bubble => "ellipse",
        };
        let style = if n.kind == NodeKind::Bubble {
            ", style=dashed"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "  n{} [shape={}, label=\"{}\"{}];",
            n.id,
            shape,
            dot_escape(&n.label),
            style
        );
    }
    for e in &g.edges {
        let dir = if e.dir == Dir::Up { ", dir=back" } else { "" };
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"{}\"{}];",
            e.from,
            e.to,
            dot_escape(&e.label),
            dir
        );
    }
    for l in &g.layers {
        let ids: Vec<String> = l.iter().map(|i| format!("n{};", i)).collect();
        let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join(" "));
    }
    s.push_str("}\n");
    s
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

const DX: usize = 90;
const DY: usize = 70;
const MARGIN: usize = 50;

fn render_svg(g: &DiagramGraph) -> String {
    let mut pos = vec![(0usize, 0usize); g.nodes.len()];
    for (l, layer) in g.layers.iter().enumerate() {
        for (i, &id) in layer.iter().enumerate() {
            pos[id] = (MARGIN + DX * i, MARGIN + DY * l);
        }
    }
    let widest = g.layers.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let (w, h) = (
        2 * MARGIN + DX * (widest - 1),
        2 * MARGIN + DY * (g.layers.len().max(1) - 1),
    );
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"monospace\" font-size=\"12\">"
    );
    for b in g.nodes.iter().filter(|n| n.kind == NodeKind::Bubble) {
        let members: Vec<usize> = g
            .nodes
            .iter()
            .filter(|n| encloses(g, b.id, n.id))
            .map(|n| n.id)
            .chain([b.id])
            .collect();
        let xs = members.iter().map(|&i| pos[i].0);
        let ys = members.iter().map(|&i| pos[i].1);
        let (x0, x1) = (xs.clone().min().unwrap() - 30, xs.max().unwrap() + 30);
        let (y0, y1) = (ys.clone().min().unwrap() - 20, ys.max().unwrap() + 20);
        let _ = writeln!(
            s,
            "  <rect class=\"bubble\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" rx=\"12\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>",
            x0,
            y0,
            x1 - x0,
            y1 - y0
        );
    }
    for e in &g.edges {
        let ((x1, y1), (x2, y2)) = (pos[e.from], pos[e.to]);
        let dash = if e.dir == Dir::Up {
            " stroke-dasharray=\"6 3\""
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "  <line class=\"wire {}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\"{dash}/>",
            if e.dir == Dir::Up { "up" } else { "down" }
        );
        let _ = writeln!(
            s,
            "  <text class=\"wire-label\" x=\"{}\" y=\"{}\">{}</text>",
            (x1 + x2) / 2 + 4,
            (y1 + y2) / 2,
            xml_escape(&e.label)
        );
    }
    for n in &g.nodes {
        let (x, y) = pos[n.id];
        let shape = match n.kind {
            NodeKind::Box => format!(
                "<rect x=\"{}\" y=\"{}\" width=\"60\" height=\"26\" fill=\"white\" stroke=\"black\"/>",
                x - 30,
                y - 13
            ),
            NodeKind::InputPort | NodeKind::OutputPort => {
                format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"black\"/>")
            }
            NodeKind::Bubble | NodeKind::Clasp => {
                format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"5\" fill=\"gray\"/>")
            }
            _ => format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"10\" fill=\"white\" stroke=\"black\"/>"),
        };
        let _ = writeln!(
            s,
            "  <g class=\"{}\" id=\"n{}\">{}<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text></g>",
            n.kind.name(),
            n.id,
            shape,
            x,
            y + 4,
            xml_escape(&n.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn encloses(g: &DiagramGraph, bubble: usize, mut id: usize) -> bool {
    while let Some(p) = g.nodes[id].inside {
        if p == bubble {
            return true;
        }
        id = p;
    }
    false
}
