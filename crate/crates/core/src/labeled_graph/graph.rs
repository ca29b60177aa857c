use super::label::Label;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// One curve from s to t.
    St,
    /// One curve per requested pair.
    Pairs(usize),
    /// One curve per named point, all ending at the anchor.
    Points(usize),
}

impl Mode {
    pub fn width(&self) -> usize {
        match *self {
            Mode::St => 1,
            Mode::Pairs(p) => p,
            Mode::Points(k) => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub u: usize,
    pub v: usize,
    pub label: Label,
}

impl LabeledEdge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Multigraph on obstacle ids `0..n` with labeled edges and self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMultigraph {
    pub n: usize,
    pub mode: Mode,
    pub edges: Vec<LabeledEdge>,
}

impl LabeledMultigraph {
    pub fn new(n: usize, mode: Mode) -> Self {
        LabeledMultigraph { n, mode, edges: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.mode.width()
    }

    /// Adds an edge unless one with the same (u, v, bits, mask) exists. Returns
    /// the index of the stored edge.
    pub fn add_edge(&mut self, u: usize, v: usize, label: Label) -> usize {
        assert_eq!(label.width, self.width(), "label width must match the graph mode");
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        let e = LabeledEdge { u, v, label: Label::masked(label.width, label.bits, label.mask) };
        if let Some(i) = self.edges.iter().position(|x| *x == e) {
            return i;
        }
        self.edges.push(e);
        self.edges.len() - 1
    }

    /// Adjacency lists of (edge index, neighbor), edges in index order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((i, e.v));
            if e.u != e.v {
                adj[e.v].push((i, e.u));
            }
        }
        adj
    }

    /// Same vertex set, keeping only edges with both ends in `keep`.
    pub fn induced(&self, keep: u64) -> LabeledMultigraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| keep >> e.u & 1 == 1 && keep >> e.v & 1 == 1)
            .copied()
            .collect();
        LabeledMultigraph { n: self.n, mode: self.mode, edges }
    }

    pub fn induced_on(&self, keep: &[usize]) -> LabeledMultigraph {
        self.induced(keep.iter().fold(0u64, |m, &i| m | 1 << i))
    }

    /// Removes every edge touching a vertex in `drop`.
    pub fn without(&self, drop: &[usize]) -> LabeledMultigraph {
        let keep = (0..self.n).filter(|v| !drop.contains(v)).fold(0u64, |m, i| m | 1 << i);
        self.induced(keep)
    }

    /// Vertices incident to at least one edge.
    pub fn support(&self) -> BTreeSet<usize> {
        self.edges.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    /// Every concrete edge variant `(u, v, bits, source edge)`.
    pub fn expanded(&self) -> Vec<(usize, usize, u64, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for b in e.label.resolutions() {
                out.push((e.u, e.v, b, i));
            }
        }
        out
    }

    /// DOT rendering: vertices are obstacle ids, labels are bit strings.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.label);
        }
        s.push_str("}\n");
        s
    }
}

/// 1-bit image of `g` on bit `i`; unconstrained bits become both parities.
pub fn project(g: &LabeledMultigraph, i: usize) -> LabeledMultigraph {
    assert!(i < g.width(), "bit index out of range");
    let mut out = LabeledMultigraph::new(g.n, Mode::St);
    for e in &g.edges {
        match e.label.bit(i) {
            Some(b) => {
                out.add_edge(e.u, e.v, Label::new(1, b as u64));
            }
            None => {
                out.add_edge(e.u, e.v, Label::new(1, 0));
                out.add_edge(e.u, e.v, Label::new(1, 1));
            }
        }
    }
    out
}

/// 1-bit image on the XOR of bits `i` and `j`: a cycle is odd here iff its
/// parities in `i` and `j` differ.
pub fn project_xor(g: &LabeledMultigraph, i: usize, j: usize) -> LabeledMultigraph {
    let mut out = LabeledMultigraph::new(g.n, Mode::St);
    for e in &g.edges {
        match (e.label.bit(i), e.label.bit(j)) {
            (Some(a), Some(b)) => {
                out.add_edge(e.u, e.v, Label::new(1, (a ^ b) as u64));
            }
            _ => {
                out.add_edge(e.u, e.v, Label::new(1, 0));
                out.add_edge(e.u, e.v, Label::new(1, 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_includes_mask() {
        let mut g = LabeledMultigraph::new(2, Mode::St);
        g.add_edge(1, 0, Label::new(1, 0));
        g.add_edge(0, 1, Label::new(1, 0));
        g.add_edge(0, 1, Label::new(1, 1));
        g.add_edge(0, 1, Label::masked(1, 0, 0));
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.edges[0].u, 0);
    }

    #[test]
    fn project_examples() {
        let mut g = LabeledMultigraph::new(2, Mode::Pairs(2));
        g.add_edge(0, 1, Label::new(2, 0b01));
        let p = project(&g, 0);
        assert_eq!(p.edges, vec![LabeledEdge { u: 0, v: 1, label: Label::new(1, 1) }]);

        let mut h = LabeledMultigraph::new(2, Mode::Pairs(2));
        h.add_edge(0, 1, Label::masked(2, 0b01, 0b01));
        h.add_edge(0, 1, Label::new(2, 0b11));
        let p = project(&h, 1);
        let labels: Vec<String> = p.edges.iter().map(|e| e.label.to_string()).collect();
        assert_eq!(labels, vec!["0", "1"]);
    }

    #[test]
    fn dot_uses_dots_for_free_bits() {
        let mut g = LabeledMultigraph::new(2, Mode::Points(3));
        g.add_edge(0, 1, Label::masked(3, 0b100, 0b101));
        assert!(g.to_dot().contains("0 -- 1 [label=\"0.1\"]"));
    }
}
