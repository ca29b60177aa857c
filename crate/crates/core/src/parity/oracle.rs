use super::partition::Partition;
use crate::labeled_graph::LabeledMultigraph;
use std::collections::BTreeSet;

/// Largest graph the exhaustive cycle enumeration accepts.
pub const ORACLE_MAX_VERTICES: usize = 10;

/// Parity vectors of all simple cycles of the expanded graph, where an edge
/// with free bits stands for one parallel edge per resolution. Exhaustive:
/// meant as a reference for small graphs.
pub fn simple_cycle_parities(g: &LabeledMultigraph) -> BTreeSet<u64> {
    assert!(g.n <= ORACLE_MAX_VERTICES, "exhaustive cycle enumeration is for tiny graphs");
    let ex = g.expanded();
    let mut adj: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); g.n];
    let mut out = BTreeSet::new();
    for (id, &(u, v, b, _)) in ex.iter().enumerate() {
        if u == v {
            out.insert(b);
        } else {
            adj[u].push((id, v, b));
            adj[v].push((id, u, b));
        }
    }
    // cycles through their smallest vertex `s`, all other vertices larger
    fn dfs(
        adj: &[Vec<(usize, usize, u64)>],
        s: usize,
        v: usize,
        first: usize,
        acc: u64,
        on: &mut Vec<bool>,
        out: &mut BTreeSet<u64>,
    ) {
        for &(id, w, b) in &adj[v] {
            if id == first {
                continue;
            }
            if w == s {
                out.insert(acc ^ b);
            } else if w > s && !on[w] {
                on[w] = true;
                dfs(adj, s, w, first, acc ^ b, on, out);
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n];
    for s in 0..g.n {
        for &(id, w, b) in &adj[s] {
            if w > s {
                on[w] = true;
                dfs(&adj, s, w, id, b, &mut on, &mut out);
                on[w] = false;
            }
        }
    }
    out
}

/// Meet of the parity partitions of all simple cycles.
pub fn brute_force_partition(g: &LabeledMultigraph) -> Partition {
    let k = g.width();
    simple_cycle_parities(g)
        .into_iter()
        .fold(Partition::one_block(k), |acc, b| acc.meet(&Partition::from_parity(k, b)).expect("same width"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeled_graph::{Label, Mode};

    #[test]
    fn small_cases() {
        let mut g = LabeledMultigraph::new(3, Mode::Points(2));
        g.add_edge(0, 1, Label::new(2, 0b01));
        g.add_edge(1, 2, Label::new(2, 0b10));
        assert!(simple_cycle_parities(&g).is_empty());
        g.add_edge(2, 0, Label::new(2, 0b00));
        assert_eq!(simple_cycle_parities(&g), BTreeSet::from([0b11]));
        g.add_edge(0, 1, Label::masked(2, 0, 0b10));
        // bit 0 free, variants 00 and 01: 2-cycles 01, 00, 01 and triangles 10, 11
        assert_eq!(simple_cycle_parities(&g), BTreeSet::from([0b00, 0b01, 0b10, 0b11]));
        assert_eq!(brute_force_partition(&g), Partition::discrete(2));
    }
}
