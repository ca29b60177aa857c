use super::hstar::{hstar_structures, HStar};
use super::walks::{LabeledWalk, WalkTable};
use crate::labeled_graph::LabeledMultigraph;
use crate::parity::is_well_behaved;
use serde::Serialize;

/// A realized chain structure: connector obstacles joined by labeled chains,
/// each chain realized by a shortest walk of its label.
#[derive(Clone, Debug, Serialize)]
pub struct ChainCandidate {
    pub skeleton: HStar,
    pub connectors: Vec<usize>,
    pub labels: Vec<u64>,
    pub walks: Vec<LabeledWalk>,
    /// Distinct obstacles of the realization, ascending.
    pub vertices: Vec<usize>,
}

impl ChainCandidate {
    pub fn graph(&self, g: &LabeledMultigraph) -> LabeledMultigraph {
        realized(g, self.walks.iter())
    }
}

fn realized<'a>(g: &LabeledMultigraph, walks: impl Iterator<Item = &'a LabeledWalk>) -> LabeledMultigraph {
    let mut used: Vec<usize> = walks.flat_map(|w| w.edges.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    LabeledMultigraph { n: g.n, mode: g.mode, edges: used.into_iter().map(|e| g.edges[e]).collect() }
}

struct Opt {
    label: u64,
    mask: u64,
    walk: LabeledWalk,
}

struct Search<'a> {
    g: &'a LabeledMultigraph,
    h: &'a HStar,
    opts: Vec<Vec<Opt>>,
    full: u64,
    bound: usize,
    pick: Vec<usize>,
    best: Option<(Vec<usize>, u64)>,
}

impl Search<'_> {
    fn dfs(&mut self, t: usize, mask: u64) {
        if mask.count_ones() as usize >= self.bound {
            return;
        }
        if t == self.opts.len() {
            let labels: Vec<u64> = self.pick.iter().enumerate().map(|(e, &i)| self.opts[e][i].label).collect();
            // an odd fundamental cycle of the skeleton maps to an odd closed walk
            let odd = self
                .h
                .cycles
                .iter()
                .map(|on| on.iter().zip(&labels).filter(|(&o, _)| o).fold(0, |a, (_, &l)| a ^ l))
                .fold(0, |a, c| a | c);
            let ok = odd == self.full || {
                let walks = self.pick.iter().enumerate().map(|(e, &i)| &self.opts[e][i].walk);
                is_well_behaved(&realized(self.g, walks))
            };
            if ok {
                self.bound = mask.count_ones() as usize;
                self.best = Some((self.pick.clone(), mask));
            }
            return;
        }
        for i in 0..self.opts[t].len() {
            self.pick[t] = i;
            let m = mask | self.opts[t][i].mask;
            self.dfs(t + 1, m);
        }
    }
}

/// Calls `f` with every injective map `0..len -> 0..n`, lexicographically.
fn for_each_injection(n: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, cur: &mut Vec<usize>, len: usize, f: &mut impl FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, len, f);
                cur.pop();
            }
        }
    }
    rec(n, &mut Vec::with_capacity(len), len, f);
}

/// Smallest well-behaved chain realization in a p-labeled graph: connector
/// sets with chain skeletons of at most `p` independent cycles, every chain
/// label, chains realized by shortest walks, sized by distinct obstacles.
/// `None` when even the whole graph is not well-behaved.
pub fn separate_point_pairs_graph(g: &LabeledMultigraph, table: &WalkTable) -> Option<ChainCandidate> {
    let p = g.width();
    if p == 0 {
        return Some(ChainCandidate {
            skeleton: HStar::from_edges(0, Vec::new()),
            connectors: Vec::new(),
            labels: Vec::new(),
            walks: Vec::new(),
            vertices: Vec::new(),
        });
    }
    if !is_well_behaved(g) {
        return None;
    }
    let full = (1u64 << p) - 1;
    let mut bound = g.n + 1;
    let mut best: Option<ChainCandidate> = None;
    for h in hstar_structures(p) {
        if h.n >= bound {
            continue;
        }
        for_each_injection(g.n, h.n, &mut |vc: &[usize]| {
            let opts: Vec<Vec<Opt>> = h
                .edges
                .iter()
                .map(|&(a, b)| {
                    (0..=full)
                        .filter_map(|l| {
                            let walk = table.walk(vc[a], vc[b], l)?;
                            let mask = walk.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
                            Some(Opt { label: l, mask, walk })
                        })
                        .collect()
                })
                .collect();
            if opts.iter().any(|o| o.is_empty()) {
                return;
            }
            let base = vc.iter().fold(0u64, |m, &v| m | 1 << v);
            let mut s = Search { g, h: &h, pick: vec![0; opts.len()], opts, full, bound, best: None };
            s.dfs(0, base);
            if let Some((pick, mask)) = s.best {
                bound = s.bound;
                let labels = pick.iter().enumerate().map(|(e, &i)| s.opts[e][i].label).collect();
                let walks = pick.iter().enumerate().map(|(e, &i)| s.opts[e][i].walk.clone()).collect();
                best = Some(ChainCandidate {
                    skeleton: h.clone(),
                    connectors: vc.to_vec(),
                    labels,
                    walks,
                    vertices: (0..g.n).filter(|&v| mask >> v & 1 == 1).collect(),
                });
            }
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeled_graph::{project, Label, Mode};
    use crate::parity::shortest_odd_cycle;
    use crate::pointsep::walks::shortest_nonempty_walks;

    #[test]
    fn one_pair_is_shortest_odd_cycle() {
        let mut g = LabeledMultigraph::new(5, Mode::Pairs(1));
        for (u, v, b) in [(0, 1, 1), (1, 2, 0), (2, 3, 0), (3, 0, 0), (1, 4, 0), (4, 3, 0), (2, 2, 0)] {
            g.add_edge(u, v, Label::new(1, b));
        }
        let t = shortest_nonempty_walks(&g, 12).unwrap();
        let c = separate_point_pairs_graph(&g, &t).unwrap();
        let (cyc, _) = shortest_odd_cycle(&project(&g, 0), &[1usize; 5]).unwrap();
        assert_eq!(c.vertices.len(), cyc.len());
        assert!(is_well_behaved(&c.graph(&g)));
    }

    #[test]
    fn two_pairs_cheaper_apart() {
        // two odd 2-cycles sharing vertex 4 beat a 4-cycle odd in both bits
        let mut g = LabeledMultigraph::new(7, Mode::Pairs(2));
        g.add_edge(0, 1, Label::new(2, 0b11));
        g.add_edge(1, 2, Label::new(2, 0b00));
        g.add_edge(2, 6, Label::new(2, 0b00));
        g.add_edge(0, 6, Label::new(2, 0b00));
        g.add_edge(3, 4, Label::new(2, 0b01));
        g.add_edge(3, 4, Label::new(2, 0b00));
        g.add_edge(4, 5, Label::new(2, 0b10));
        g.add_edge(4, 5, Label::new(2, 0b00));
        let t = shortest_nonempty_walks(&g, 12).unwrap();
        let c = separate_point_pairs_graph(&g, &t).unwrap();
        assert_eq!(c.vertices, vec![3, 4, 5]);
        let none = LabeledMultigraph::new(2, Mode::Pairs(1));
        assert!(separate_point_pairs_graph(&none, &shortest_nonempty_walks(&none, 12).unwrap()).is_none());
    }
}
