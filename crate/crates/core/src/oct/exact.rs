use crate::labeled_graph::LabeledMultigraph;
use crate::parity::detect_odd_cycle;
use crate::util::first_subset_by_size;
use std::collections::VecDeque;

/// Simple graph where every 0-labeled edge of the source is replaced by a
/// path through one synthetic node, so odd cycles correspond to odd-labeled
/// cycles. Original vertices keep their ids `0..n_original`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedGraph {
    pub n_original: usize,
    pub adj: Vec<Vec<usize>>,
    /// For each synthetic node, the source edge it subdivides.
    pub synthetic_of: Vec<usize>,
    /// Vertices carrying an odd self-loop; they belong to every solution.
    pub forced: Vec<usize>,
}

impl SubdividedGraph {
    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn is_synthetic(&self, v: usize) -> bool {
        v >= self.n_original
    }

    fn link(&mut self, a: usize, b: usize) {
        if !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }
}

/// Subdivides the 0-labeled edges of a 1-bit graph (bit 0). An edge whose
/// bit is free counts as both parities.
pub fn subdivide_zero_edges(g: &LabeledMultigraph) -> SubdividedGraph {
    let n = g.n;
    let mut sg = SubdividedGraph { n_original: n, adj: vec![Vec::new(); n], synthetic_of: Vec::new(), forced: Vec::new() };
    let mut zero_done: Vec<(usize, usize)> = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        let bit = e.label.bit(0);
        let (odd, even) = match bit {
            Some(b) => (b, !b),
            None => (true, true),
        };
        if e.is_loop() {
            if odd && !sg.forced.contains(&e.u) {
                sg.forced.push(e.u);
            }
            continue;
        }
        if odd {
            sg.link(e.u, e.v);
        }
        if even && !zero_done.contains(&(e.u, e.v)) {
            zero_done.push((e.u, e.v));
            let w = sg.adj.len();
            sg.adj.push(Vec::new());
            sg.synthetic_of.push(i);
            sg.link(e.u, w);
            sg.link(w, e.v);
        }
    }
    sg.forced.sort_unstable();
    for l in sg.adj.iter_mut() {
        l.sort_unstable();
    }
    sg
}

const INF: i64 = i64::MAX / 4;

struct Flow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: i64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments until the flow exceeds `limit`; returns the flow value, or
    /// `None` if an infinite path exists or the flow exceeds `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> Option<i64> {
        let mut flow = 0;
        loop {
            let mut prev = vec![usize::MAX; self.head.len()];
            let mut seen = vec![false; self.head.len()];
            seen[s] = true;
            let mut dq = VecDeque::from([s]);
            while let Some(x) = dq.pop_front() {
                if x == t {
                    break;
                }
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if !seen[y] && self.cap[a] > 0 {
                        seen[y] = true;
                        prev[y] = a;
                        dq.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return Some(flow);
            }
            let mut bottleneck = INF;
            let mut y = t;
            while y != s {
                let a = prev[y];
                bottleneck = bottleneck.min(self.cap[a]);
                y = self.to[a ^ 1];
            }
            if bottleneck >= INF {
                return None;
            }
            let mut y = t;
            while y != s {
                let a = prev[y];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                y = self.to[a ^ 1];
            }
            flow += bottleneck;
            if flow > limit {
                return None;
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut dq = VecDeque::from([s]);
        while let Some(x) = dq.pop_front() {
            for &a in &self.head[x] {
                let y = self.to[a];
                if !seen[y] && self.cap[a] > 0 {
                    seen[y] = true;
                    dq.push_back(y);
                }
            }
        }
        seen
    }
}

/// Minimum vertex set of `alive` nodes (originals only) separating `a0` from
/// `a1` (terminals themselves may be cut), if one of size ≤ `budget` exists.
fn min_vertex_cut(sg: &SubdividedGraph, alive: &[bool], a0: &[usize], a1: &[usize], budget: usize) -> Option<Vec<usize>> {
    let n = sg.num_nodes();
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut f = Flow::new(2 * n + 2);
    for v in 0..n {
        if !alive[v] {
            continue;
        }
        f.arc(2 * v, 2 * v + 1, if sg.is_synthetic(v) { INF } else { 1 });
        for &w in &sg.adj[v] {
            if alive[w] {
                f.arc(2 * v + 1, 2 * w, INF);
            }
        }
    }
    for &v in a0 {
        f.arc(src, 2 * v, INF);
    }
    for &v in a1 {
        f.arc(2 * v + 1, snk, INF);
    }
    f.max_flow(src, snk, budget as i64)?;
    let r = f.reachable(src);
    Some((0..n).filter(|&v| alive[v] && r[2 * v] && !r[2 * v + 1]).collect())
}

/// 2-coloring of the alive nodes; `None` if some component is not bipartite.
fn two_color(sg: &SubdividedGraph, alive: &[bool]) -> Option<Vec<u8>> {
    let n = sg.num_nodes();
    let mut col = vec![u8::MAX; n];
    for r in 0..n {
        if !alive[r] || col[r] != u8::MAX {
            continue;
        }
        col[r] = 0;
        let mut dq = VecDeque::from([r]);
        while let Some(v) = dq.pop_front() {
            for &w in &sg.adj[v] {
                if !alive[w] {
                    continue;
                }
                if col[w] == u8::MAX {
                    col[w] = 1 - col[v];
                    dq.push_back(w);
                } else if col[w] == col[v] {
                    return None;
                }
            }
        }
    }
    Some(col)
}

/// Given a transversal `z` of size k+1 of the present nodes, finds one of
/// size ≤ k or proves none exists.
fn compress(sg: &SubdividedGraph, present: &[bool], z: &[usize], k: usize) -> Option<Vec<usize>> {
    let mut rest = present.to_vec();
    for &v in z {
        rest[v] = false;
    }
    let pi = two_color(sg, &rest).expect("z is a transversal");
    let zl = z.len();
    for ymask in 0u64..(1 << zl) {
        let ysize = ymask.count_ones() as usize;
        if ysize > k {
            continue;
        }
        let w: Vec<usize> = (0..zl).filter(|&i| ymask >> i & 1 == 0).map(|i| z[i]).collect();
        for sigma in 0u64..(1 << w.len()) {
            let col = |i: usize| (sigma >> i & 1) as u8;
            let consistent = (0..w.len())
                .all(|i| (0..w.len()).all(|j| i == j || col(i) != col(j) || !sg.adj[w[i]].contains(&w[j])));
            if !consistent {
                continue;
            }
            let (mut a0, mut a1) = (Vec::new(), Vec::new());
            for (i, &wv) in w.iter().enumerate() {
                for &v in &sg.adj[wv] {
                    if rest[v] {
                        if pi[v] == 1 - col(i) {
                            a0.push(v);
                        } else {
                            a1.push(v);
                        }
                    }
                }
            }
            if let Some(cut) = min_vertex_cut(sg, &rest, &a0, &a1, k - ysize) {
                let mut sol: Vec<usize> = (0..zl).filter(|&i| ymask >> i & 1 == 1).map(|i| z[i]).collect();
                sol.extend(cut);
                sol.sort_unstable();
                return Some(sol);
            }
        }
    }
    None
}

/// Odd cycle transversal of size ≤ k among non-removed original vertices.
fn oct_within(sg: &SubdividedGraph, removed: &[bool], k: usize) -> Option<Vec<usize>> {
    let mut present = vec![false; sg.num_nodes()];
    let mut z: Vec<usize> = Vec::new();
    for v in 0..sg.n_original {
        if removed[v] {
            continue;
        }
        present[v] = true;
        for &w in &sg.adj[v] {
            if sg.is_synthetic(w) && sg.adj[w].iter().all(|&u| present[u]) {
                present[w] = true;
            }
        }
        z.push(v);
        if z.len() > k {
            z = compress(sg, &present, &z, k)?;
        }
    }
    Some(z)
}

/// Minimum set of at most `q` original vertices whose removal leaves no
/// odd-labeled cycle (bit 0), by iterative compression on the subdivided
/// graph; `None` if every such set is larger than `q`.
pub fn oct_exact(g: &LabeledMultigraph, q: usize) -> Option<Vec<usize>> {
    let sg = subdivide_zero_edges(g);
    if sg.forced.len() > q {
        return None;
    }
    let mut removed = vec![false; sg.n_original];
    for &v in &sg.forced {
        removed[v] = true;
    }
    for k in 0..=(q - sg.forced.len()) {
        if let Some(mut sol) = oct_within(&sg, &removed, k) {
            sol.extend(sg.forced.iter().copied());
            sol.sort_unstable();
            debug_assert!(detect_odd_cycle(&g.without(&sol)).is_none());
            return Some(sol);
        }
    }
    None
}

/// Smallest transversal by exhaustive search over subsets in order of size,
/// then lexicographically.
pub fn oct_brute_force(g: &LabeledMultigraph) -> Vec<usize> {
    first_subset_by_size(g.n, |c| detect_odd_cycle(&g.without(c)).is_none()).expect("deleting everything works")
}
