use crate::labeled_graph::{Label, LabeledMultigraph};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub const DEFAULT_WIDTH_CAP: usize = 12;

const NONE: u32 = u32::MAX;
// predecessor of the first step of a nonempty walk
const SOURCE: u32 = u32::MAX - 1;

/// `vertices[0] -edges[0]- vertices[1] - ... - vertices[r]`, with the label
/// resolution used on each edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledWalk {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub resolved: Vec<u64>,
}

impl LabeledWalk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn parity(&self) -> u64 {
        self.resolved.iter().fold(0, |a, b| a ^ b)
    }

    /// Checks the walk against `g` and returns its parity.
    pub fn check(&self, g: &LabeledMultigraph) -> Result<u64, Error> {
        let r = self.edges.len();
        if self.vertices.len() != r + 1 || self.resolved.len() != r {
            return Err(Error::SizeMismatch(self.vertices.len(), r + 1));
        }
        for t in 0..r {
            let e = self.edges[t];
            let ed = g.edges.get(e).ok_or(Error::EdgeNotInGraph(e))?;
            let (a, b) = (self.vertices[t], self.vertices[t + 1]);
            let ends_ok = (ed.u == a && ed.v == b) || (ed.u == b && ed.v == a);
            if !ends_ok || !ed.label.matches(self.resolved[t]) {
                return Err(Error::EdgeNotInGraph(e));
            }
        }
        Ok(self.parity())
    }
}

/// Fewest-edge walks for every (u, v, label) triple, from a BFS per source on
/// the state graph (vertex, accumulated label). Edges with free bits branch
/// over every resolution.
#[derive(Clone, Debug)]
pub struct WalkTable {
    n: usize,
    width: usize,
    nonempty: bool,
    dist: Vec<Vec<u32>>,
    // predecessor state, edge, resolution; edge NONE marks the empty walk
    prev: Vec<Vec<(u32, u32, u64)>>,
}

impl WalkTable {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when closed walks must use at least one edge.
    pub fn is_nonempty(&self) -> bool {
        self.nonempty
    }

    pub fn len(&self, u: usize, v: usize, l: u64) -> Option<usize> {
        let d = self.dist[u][v << self.width | l as usize];
        (d != NONE).then_some(d as usize)
    }

    pub fn walk(&self, u: usize, v: usize, l: u64) -> Option<LabeledWalk> {
        self.len(u, v, l)?;
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut resolved = Vec::new();
        let mut s = v << self.width | l as usize;
        loop {
            let (p, e, b) = self.prev[u][s];
            if e == NONE {
                break;
            }
            edges.push(e as usize);
            resolved.push(b);
            if p == SOURCE {
                vertices.push(u);
                break;
            }
            vertices.push(p as usize >> self.width);
            s = p as usize;
        }
        vertices.reverse();
        edges.reverse();
        resolved.reverse();
        Some(LabeledWalk { vertices, edges, resolved })
    }

    /// Shortest length over the concrete labels that agree with `l` on its mask.
    pub fn len_matching(&self, u: usize, v: usize, l: &Label) -> Option<(usize, u64)> {
        l.resolutions().into_iter().filter_map(|x| self.len(u, v, x).map(|d| (d, x))).min()
    }

    /// Every reachable entry as `(u, v, label, length)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64, usize)> + '_ {
        let w = self.width;
        (0..self.n).flat_map(move |u| {
            self.dist[u]
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != NONE)
                .map(move |(s, &d)| (u, s >> w, (s & ((1 << w) - 1)) as u64, d as usize))
        })
    }
}

fn build(g: &LabeledMultigraph, cap: usize, nonempty: bool) -> Result<WalkTable, Error> {
    let w = g.width();
    if w > cap {
        return Err(Error::WidthCapExceeded(w, cap));
    }
    let n = g.n;
    let states = n << w;
    let mut moves: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); n];
    for (e, ed) in g.edges.iter().enumerate() {
        for b in ed.label.resolutions() {
            moves[ed.u].push((e, ed.v, b));
            if !ed.is_loop() {
                moves[ed.v].push((e, ed.u, b));
            }
        }
    }
    let mut dist = Vec::with_capacity(n);
    let mut prev = Vec::with_capacity(n);
    for u in 0..n {
        let mut d = vec![NONE; states];
        let mut p = vec![(NONE, NONE, 0u64); states];
        let mut dq = VecDeque::new();
        let start = u << w;
        if nonempty {
            for &(e, x, b) in &moves[u] {
                let s = x << w | b as usize;
                if d[s] == NONE {
                    d[s] = 1;
                    p[s] = (SOURCE, e as u32, b);
                    dq.push_back(s);
                }
            }
        } else {
            d[start] = 0;
            dq.push_back(start);
        }
        while let Some(s) = dq.pop_front() {
            let (v, l) = (s >> w, (s & ((1 << w) - 1)) as u64);
            for &(e, x, b) in &moves[v] {
                let t = x << w | (l ^ b) as usize;
                if d[t] == NONE {
                    d[t] = d[s] + 1;
                    p[t] = (s as u32, e as u32, b);
                    dq.push_back(t);
                }
            }
        }
        dist.push(d);
        prev.push(p);
    }
    Ok(WalkTable { n, width: w, nonempty, dist, prev })
}

/// Shortest walks of every exact parity label; `(u, u, 0)` is the empty walk.
pub fn shortest_labeled_walks(g: &LabeledMultigraph, width_cap: usize) -> Result<WalkTable, Error> {
    build(g, width_cap, false)
}

/// Like [`shortest_labeled_walks`], but every walk uses at least one edge, so
/// `(u, u, l)` is the shortest closed walk of parity `l`.
pub fn shortest_nonempty_walks(g: &LabeledMultigraph, width_cap: usize) -> Result<WalkTable, Error> {
    build(g, width_cap, true)
}
