use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

/// Pattern multigraph for the PPM search, with a designated spanning forest.
///
/// Only chain-contracted structures are produced: every vertex has degree at
/// least 3, except the single vertex of a component that is one self-loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStar {
    pub n: usize,
    /// Edges `(u, v)` with `u <= v`; `u == v` is a self-loop.
    pub edges: Vec<(usize, usize)>,
    pub tree: Vec<bool>,
    /// Non-tree edges (E_0), as edge indices in ascending order.
    pub non_tree: Vec<usize>,
    /// `cycles[c][t]`: edge `t` lies on the fundamental cycle of `non_tree[c]`.
    pub cycles: Vec<Vec<bool>>,
}

impl HStar {
    /// Builds the structure with a BFS forest taken in vertex and edge order.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> HStar {
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let m = edges.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (t, &(u, v)) in edges.iter().enumerate() {
            if u != v {
                adj[u].push((t, v));
                adj[v].push((t, u));
            }
        }
        let mut tree = vec![false; m];
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        for r in 0..n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut dq = VecDeque::from([r]);
            while let Some(v) = dq.pop_front() {
                for &(t, w) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        tree[t] = true;
                        parent[w] = Some((v, t));
                        depth[w] = depth[v] + 1;
                        dq.push_back(w);
                    }
                }
            }
        }
        let non_tree: Vec<usize> = (0..m).filter(|&t| !tree[t]).collect();
        let cycles = non_tree
            .iter()
            .map(|&t| {
                let mut on = vec![false; m];
                on[t] = true;
                let (mut a, mut b) = edges[t];
                while a != b {
                    if depth[a] < depth[b] {
                        std::mem::swap(&mut a, &mut b);
                    }
                    let (p, e) = parent[a].expect("same component");
                    on[e] = true;
                    a = p;
                }
                on
            })
            .collect();
        HStar { n, edges, tree, non_tree, cycles }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn num_components(&self) -> usize {
        self.n + self.non_tree.len() - self.edges.len()
    }

    /// Checks the size bounds for `budget` and the structural invariants.
    pub fn check(&self, budget: usize) -> Result<(), String> {
        if self.n > 4 * budget || self.edges.len() > 5 * budget {
            return Err(format!("{} vertices / {} edges exceed the budget {budget}", self.n, self.edges.len()));
        }
        if self.non_tree.len() >= budget {
            return Err(format!("{} non-tree edges, budget {budget}", self.non_tree.len()));
        }
        for v in 0..self.n {
            let d = self.degree(v);
            let lone_loop = self.edges.iter().filter(|&&(a, b)| a == v || b == v).count() == 1
                && self.edges.contains(&(v, v));
            if d < 2 || (d == 2 && !lone_loop) {
                return Err(format!("vertex {v} has degree {d}"));
            }
        }
        let forest = self.tree.iter().filter(|&&t| t).count();
        if forest + self.num_components() != self.n {
            return Err("tree edges do not form a spanning forest".into());
        }
        Ok(())
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a.max(b)] = a.min(b);
    }
    (0..n).map(|x| find(&mut comp, x)).collect()
}

fn contracted(n: usize, edges: &[(usize, usize)]) -> bool {
    (0..n).all(|v| {
        let d: usize = edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum();
        d >= 3 || (d == 2 && edges.iter().filter(|&&(a, b)| a == v || b == v).count() == 1 && edges.contains(&(v, v)))
    })
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for perm in (0..n).permutations(n) {
        let mut es: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        if best.as_ref().map_or(true, |b| es < *b) {
            best = Some(es);
        }
    }
    best.unwrap_or_default()
}

/// All chain-contracted multigraphs with between 1 and `max_non_tree`
/// independent cycles, one representative per isomorphism class, ordered by
/// (vertices, edges, canonical edge list).
pub fn hstar_structures(max_non_tree: usize) -> Vec<HStar> {
    if max_non_tree == 0 {
        return Vec::new();
    }
    let r = max_non_tree;
    // a connected contracted component with c >= 2 cycles has at most 2c - 2
    // vertices; a lone loop has one
    let max_n = r.max(2 * r - 2);
    let mut found: BTreeSet<(usize, usize, Vec<(usize, usize)>)> = BTreeSet::new();
    for n in 1..=max_n {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        for m in 1..=(n - 1 + r) {
            for pick in (0..slots.len()).combinations_with_replacement(m) {
                let es: Vec<(usize, usize)> = pick.iter().map(|&i| slots[i]).collect();
                if !contracted(n, &es) {
                    continue;
                }
                let comp = components(n, &es);
                let c = comp.iter().enumerate().filter(|&(x, &r)| x == r).count();
                let cyc = m + c - n;
                if cyc == 0 || cyc > r {
                    continue;
                }
                found.insert((n, m, canonical(n, &es)));
            }
        }
    }
    found.into_iter().map(|(n, _, es)| HStar::from_edges(n, es)).collect()
}

/// Candidate patterns for `budget` points: contracted structures with fewer
/// than `budget` non-tree edges. Budget 0 and 1 give nothing.
pub fn enumerate_hstar(budget: usize) -> Vec<HStar> {
    hstar_structures(budget.saturating_sub(1))
}
