use super::partition::Partition;
use crate::labeled_graph::{project, Label, LabeledMultigraph};
use crate::Error;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::ops::Add;

/// A closed walk `vertices[0] -e0- vertices[1] - ... -e(r-1)- vertices[0]`
/// with one concrete resolution per edge label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCertificate {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub resolved: Vec<u64>,
    pub parity: Label,
}

impl CycleCertificate {
    fn from_walk(g: &LabeledMultigraph, vertices: Vec<usize>, edges: Vec<usize>, resolved: Vec<u64>) -> Self {
        let bits = resolved.iter().fold(0u64, |a, b| a ^ b);
        CycleCertificate { vertices, edges, resolved, parity: Label::new(g.width(), bits) }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Re-derives the parity from `g`, checking that the walk is closed and
    /// each resolution agrees with its edge label.
    pub fn check(&self, g: &LabeledMultigraph) -> Result<Label, Error> {
        let r = self.edges.len();
        if r == 0 || self.vertices.len() != r || self.resolved.len() != r {
            return Err(Error::SizeMismatch(self.vertices.len(), r));
        }
        let mut bits = 0u64;
        for t in 0..r {
            let e = self.edges[t];
            let ed = g.edges.get(e).ok_or(Error::EdgeNotInGraph(e))?;
            let (a, b) = (self.vertices[t], self.vertices[(t + 1) % r]);
            if !((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) || !ed.label.matches(self.resolved[t]) {
                return Err(Error::EdgeNotInGraph(e));
            }
            bits ^= self.resolved[t];
        }
        Ok(Label::new(g.width(), bits))
    }
}

/// XOR of the resolved labels along a certificate's walk.
pub fn parity_of(g: &LabeledMultigraph, walk: &CycleCertificate) -> Result<Label, Error> {
    walk.check(g)
}

/// Two-block partition of the bit positions by the walk's parity.
pub fn partition_of_cycle(g: &LabeledMultigraph, walk: &CycleCertificate) -> Result<Partition, Error> {
    let p = walk.check(g)?;
    Ok(Partition::from_parity(g.width(), p.bits))
}

/// Spanning forest by BFS from vertices in id order: (parent edge, potential).
struct Forest {
    parent: Vec<Option<(usize, usize)>>,
    pot: Vec<u64>,
    depth: Vec<usize>,
}

fn forest(g: &LabeledMultigraph) -> Forest {
    let adj = g.adjacency();
    let n = g.n;
    let mut parent = vec![None; n];
    let mut pot = vec![0u64; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut dq = VecDeque::from([r]);
        while let Some(v) = dq.pop_front() {
            for &(e, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    pot[w] = pot[v] ^ g.edges[e].label.bits;
                    depth[w] = depth[v] + 1;
                    dq.push_back(w);
                }
            }
        }
    }
    Forest { parent, pot, depth }
}

impl Forest {
    /// Tree path u → v as (vertices, edges); vertices include both ends.
    fn path(&self, mut u: usize, mut v: usize) -> (Vec<usize>, Vec<usize>) {
        let (mut up_v, mut up_e) = (vec![u], vec![]);
        let (mut dn_v, mut dn_e) = (vec![v], vec![]);
        while u != v {
            if self.depth[u] >= self.depth[v] {
                let (p, e) = self.parent[u].expect("same tree");
                up_e.push(e);
                up_v.push(p);
                u = p;
            } else {
                let (p, e) = self.parent[v].expect("same tree");
                dn_e.push(e);
                dn_v.push(p);
                v = p;
            }
        }
        dn_v.pop();
        up_v.extend(dn_v.into_iter().rev());
        up_e.extend(dn_e.into_iter().rev());
        (up_v, up_e)
    }
}

/// Finds a cycle whose bit-0 parity is odd, if any. Fully constrained edges
/// are compared against the spanning-forest path between their ends; an edge
/// whose bit is free is itself an odd 2-cycle (or odd loop).
pub fn detect_odd_cycle(g: &LabeledMultigraph) -> Option<CycleCertificate> {
    let f = forest(g);
    for (e, ed) in g.edges.iter().enumerate() {
        if ed.label.bit(0).is_none() {
            let b = ed.label.bits;
            return Some(if ed.is_loop() {
                CycleCertificate::from_walk(g, vec![ed.u], vec![e], vec![b | 1])
            } else {
                CycleCertificate::from_walk(g, vec![ed.u, ed.v], vec![e, e], vec![b, b | 1])
            });
        }
    }
    for (e, ed) in g.edges.iter().enumerate() {
        if (f.pot[ed.u] ^ f.pot[ed.v] ^ ed.label.bits) & 1 == 1 {
            if ed.is_loop() {
                return Some(CycleCertificate::from_walk(g, vec![ed.u], vec![e], vec![ed.label.bits]));
            }
            let (vs, mut es) = f.path(ed.u, ed.v);
            es.push(e);
            let resolved = es.iter().map(|&x| g.edges[x].label.bits).collect();
            return Some(CycleCertificate::from_walk(g, vs, es, resolved));
        }
    }
    None
}

/// Finds a cycle whose parity has an odd number of ones inside `bits`:
/// `1 << i` asks for odd parity in bit `i`, `1 << i | 1 << j` for a cycle
/// whose parities in `i` and `j` differ.
pub fn cycle_with_odd_bits(g: &LabeledMultigraph, bits: u64) -> Option<CycleCertificate> {
    for (e, ed) in g.edges.iter().enumerate() {
        let free = ed.label.free() & bits;
        if free != 0 {
            let b = ed.label.bits;
            let flip = free & free.wrapping_neg();
            return Some(if ed.is_loop() {
                let r = if (b & bits).count_ones() % 2 == 1 { b } else { b | flip };
                CycleCertificate::from_walk(g, vec![ed.u], vec![e], vec![r])
            } else {
                CycleCertificate::from_walk(g, vec![ed.u, ed.v], vec![e, e], vec![b, b | flip])
            });
        }
    }
    let f = forest(g);
    for (e, ed) in g.edges.iter().enumerate() {
        if ((f.pot[ed.u] ^ f.pot[ed.v] ^ ed.label.bits) & bits).count_ones() % 2 == 1 {
            if ed.is_loop() {
                return Some(CycleCertificate::from_walk(g, vec![ed.u], vec![e], vec![ed.label.bits]));
            }
            let (vs, mut es) = f.path(ed.u, ed.v);
            es.push(e);
            let resolved = es.iter().map(|&x| g.edges[x].label.bits).collect();
            return Some(CycleCertificate::from_walk(g, vs, es, resolved));
        }
    }
    None
}

/// Splits a closed walk at a repeated vertex, keeping an odd part, until the
/// walk is a simple cycle.
fn simplify(mut vs: Vec<usize>, mut es: Vec<usize>, mut rs: Vec<u64>) -> (Vec<usize>, Vec<usize>, Vec<u64>) {
    'outer: loop {
        let r = vs.len();
        for i in 0..r {
            for j in (i + 1)..r {
                if vs[i] == vs[j] {
                    let inner_odd = rs[i..j].iter().fold(0, |a, b| a ^ b) & 1 == 1;
                    if inner_odd {
                        vs = vs[i..j].to_vec();
                        es = es[i..j].to_vec();
                        rs = rs[i..j].to_vec();
                    } else {
                        vs.drain(i..j);
                        es.drain(i..j);
                        rs.drain(i..j);
                    }
                    continue 'outer;
                }
            }
        }
        return (vs, es, rs);
    }
}

/// Rotation and direction with the lexicographically smallest vertex list.
fn canonical(vs: Vec<usize>, es: Vec<usize>, rs: Vec<u64>) -> (Vec<usize>, Vec<usize>, Vec<u64>) {
    let r = vs.len();
    let mut best: Option<(Vec<usize>, Vec<usize>, Vec<u64>)> = None;
    for s in 0..r {
        let fwd_v: Vec<usize> = (0..r).map(|t| vs[(s + t) % r]).collect();
        let fwd_e: Vec<usize> = (0..r).map(|t| es[(s + t) % r]).collect();
        let fwd_r: Vec<u64> = (0..r).map(|t| rs[(s + t) % r]).collect();
        // reversed walk from vs[s]: vertices s, s-1, ...; edge between s-1-t and s-t
        let rev_v: Vec<usize> = (0..r).map(|t| vs[(s + r - t) % r]).collect();
        let rev_e: Vec<usize> = (0..r).map(|t| es[(s + 2 * r - t - 1) % r]).collect();
        let rev_r: Vec<u64> = (0..r).map(|t| rs[(s + 2 * r - t - 1) % r]).collect();
        for cand in [(fwd_v, fwd_e, fwd_r), (rev_v, rev_e, rev_r)] {
            if best.as_ref().map_or(true, |b| (&cand.0, &cand.1) < (&b.0, &b.1)) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty walk")
}

/// Minimum vertex-weight cycle with odd bit-0 parity, with weight counted
/// once per cycle vertex. Ties prefer fewer vertices, then the smaller
/// canonical vertex sequence.
pub fn shortest_odd_cycle<W>(g: &LabeledMultigraph, weights: &[W]) -> Option<(CycleCertificate, W)>
where
    W: Clone + PartialOrd + Zero + for<'a> Add<&'a W, Output = W>,
{
    assert_eq!(weights.len(), g.n, "one weight per vertex");
    let adj = g.adjacency();
    // doubled-graph transitions from (v, p): (edge, neighbor, resolved bits)
    let moves: Vec<Vec<(usize, usize, u64)>> = (0..g.n)
        .map(|v| {
            let mut out = Vec::new();
            for &(e, w) in &adj[v] {
                for b in g.edges[e].label.resolutions() {
                    out.push((e, w, b));
                }
            }
            out
        })
        .collect();
    let mut best: Option<(W, usize, Vec<usize>, Vec<usize>, Vec<u64>)> = None;
    for s in 0..g.n {
        if adj[s].is_empty() {
            continue;
        }
        let Some((vs, es, rs)) = odd_walk_from(g.n, &moves, weights, s) else { continue };
        let (vs, es, rs) = canonical_simple(vs, es, rs);
        let w = vs.iter().fold(W::zero(), |a, &v| a + &weights[v]);
        let better = match &best {
            None => true,
            Some((bw, bl, bv, ..)) => {
                w < *bw || (w == *bw && (vs.len() < *bl || (vs.len() == *bl && vs < *bv)))
            }
        };
        if better {
            best = Some((w, vs.len(), vs, es, rs));
        }
    }
    best.map(|(w, _, vs, es, rs)| (CycleCertificate::from_walk(g, vs, es, rs), w))
}

fn canonical_simple(vs: Vec<usize>, es: Vec<usize>, rs: Vec<u64>) -> (Vec<usize>, Vec<usize>, Vec<u64>) {
    let (vs, es, rs) = simplify(vs, es, rs);
    canonical(vs, es, rs)
}

/// Dijkstra (dense, O(V^2)) from (s,0) to (s,1) in the doubled graph.
fn odd_walk_from<W>(
    n: usize,
    moves: &[Vec<(usize, usize, u64)>],
    weights: &[W],
    s: usize,
) -> Option<(Vec<usize>, Vec<usize>, Vec<u64>)>
where
    W: Clone + PartialOrd + Zero + for<'a> Add<&'a W, Output = W>,
{
    let id = |v: usize, p: u64| 2 * v + p as usize;
    let mut dist: Vec<Option<(W, usize)>> = vec![None; 2 * n];
    let mut prev: Vec<Option<(usize, usize, u64)>> = vec![None; 2 * n];
    let mut done = vec![false; 2 * n];
    dist[id(s, 0)] = Some((W::zero(), 0));
    let target = id(s, 1);
    loop {
        let mut pick: Option<usize> = None;
        for x in 0..2 * n {
            if done[x] {
                continue;
            }
            if let Some((dx, hx)) = &dist[x] {
                let better = match pick {
                    None => true,
                    Some(y) => {
                        let (dy, hy) = dist[y].as_ref().unwrap();
                        dx < dy || (dx == dy && hx < hy)
                    }
                };
                if better {
                    pick = Some(x);
                }
            }
        }
        let x = pick?;
        done[x] = true;
        if x == target {
            break;
        }
        let (v, p) = (x / 2, (x % 2) as u64);
        let (dx, hx) = dist[x].clone().unwrap();
        for &(e, w, b) in &moves[v] {
            let y = id(w, p ^ (b & 1));
            if done[y] {
                continue;
            }
            let nd = dx.clone() + &weights[w];
            let better = match &dist[y] {
                None => true,
                Some((dy, hy)) => nd < *dy || (nd == *dy && hx + 1 < *hy),
            };
            if better {
                dist[y] = Some((nd, hx + 1));
                prev[y] = Some((x, e, b));
            }
        }
    }
    let mut vs = Vec::new();
    let mut es = Vec::new();
    let mut rs = Vec::new();
    let mut x = target;
    while let Some((px, e, b)) = prev[x] {
        vs.push(px / 2);
        es.push(e);
        rs.push(b);
        x = px;
        if x == id(s, 0) {
            break;
        }
    }
    vs.reverse();
    es.reverse();
    rs.reverse();
    Some((vs, es, rs))
}

/// Φ_G: meet of the parity partitions of all cycles, via a fundamental cycle
/// basis of the graph with free bits resolved to 0, plus one singleton split
/// for each bit that is free on some edge.
pub fn parity_partition(g: &LabeledMultigraph) -> Partition {
    let k = g.width();
    let f = forest(g);
    let mut acc = Partition::one_block(k);
    let mut free = 0u64;
    for (e, ed) in g.edges.iter().enumerate() {
        free |= ed.label.free();
        let par = f.pot[ed.u] ^ f.pot[ed.v] ^ ed.label.bits;
        let on_tree = f.parent[ed.v].map_or(false, |(_, pe)| pe == e) || f.parent[ed.u].map_or(false, |(_, pe)| pe == e);
        if !on_tree {
            acc = acc.meet(&Partition::from_parity(k, par)).expect("same width");
        }
    }
    for i in 0..k {
        if free >> i & 1 == 1 {
            acc = acc.meet(&Partition::from_parity(k, 1 << i)).expect("same width");
        }
    }
    acc
}

/// Every pair of `pairs` lies in different blocks of Φ_G.
#[allow(non_snake_case)]
pub fn is_P_good(g: &LabeledMultigraph, pairs: &[(usize, usize)]) -> bool {
    let phi = parity_partition(g);
    pairs.iter().all(|&(i, j)| !phi.same_block(i, j))
}

/// Every single-bit projection has an odd cycle.
pub fn is_well_behaved(g: &LabeledMultigraph) -> bool {
    (0..g.width()).all(|i| detect_odd_cycle(&project(g, i)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{q, Q};
    use crate::labeled_graph::Mode;

    fn g1(n: usize, es: &[(usize, usize, u64)]) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(n, Mode::St);
        for &(u, v, b) in es {
            g.add_edge(u, v, Label::new(1, b));
        }
        g
    }

    #[test]
    fn odd_bits_witnesses() {
        let mut g = LabeledMultigraph::new(3, Mode::Points(3));
        g.add_edge(0, 1, Label::new(3, 0b001));
        g.add_edge(1, 2, Label::new(3, 0b011));
        g.add_edge(0, 2, Label::new(3, 0b000));
        // cycle parity 0b010: bit 1 differs from bits 0 and 2
        let c = cycle_with_odd_bits(&g, 0b011).unwrap();
        assert_eq!(c.check(&g).unwrap().bits, 0b010);
        assert!(cycle_with_odd_bits(&g, 0b101).is_none());
        let mut h = LabeledMultigraph::new(2, Mode::Points(2));
        h.add_edge(1, 1, Label::masked(2, 0, 0b01));
        let c = cycle_with_odd_bits(&h, 0b11).unwrap();
        let p = c.check(&h).unwrap().bits;
        assert_ne!(p & 1, p >> 1 & 1);
    }

    #[test]
    fn triangles() {
        let odd = g1(3, &[(0, 1, 1), (1, 2, 0), (2, 0, 0)]);
        let c = detect_odd_cycle(&odd).unwrap();
        assert_eq!(c.check(&odd).unwrap().bits, 1);
        assert_eq!(c.len(), 3);
        assert!(detect_odd_cycle(&g1(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 0)])).is_none());
    }

    #[test]
    fn odd_self_loop() {
        let g = g1(2, &[(1, 1, 1)]);
        let c = detect_odd_cycle(&g).unwrap();
        assert_eq!(c.vertices, vec![1]);
        let w = vec![q(5), q(3)];
        let (c, wt) = shortest_odd_cycle(&g, &w).unwrap();
        assert_eq!(wt, q(3));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn parallel_pair_is_shortest() {
        let g = g1(3, &[(0, 1, 0), (0, 1, 1), (1, 2, 1), (2, 0, 0)]);
        let w: Vec<Q> = vec![q(1); 3];
        let (c, wt) = shortest_odd_cycle(&g, &w).unwrap();
        assert_eq!(wt, q(2));
        assert_eq!(c.vertices, vec![0, 1]);
        assert_eq!(c.check(&g).unwrap().bits, 1);
        let even = g1(2, &[(0, 1, 0)]);
        assert!(shortest_odd_cycle(&even, &[q(1), q(1)]).is_none());
    }

    #[test]
    fn parity_partition_examples() {
        let mut g = LabeledMultigraph::new(3, Mode::Pairs(2));
        g.add_edge(0, 1, Label::new(2, 0b01));
        g.add_edge(1, 2, Label::new(2, 0b00));
        g.add_edge(2, 0, Label::new(2, 0b00));
        assert_eq!(parity_partition(&g).to_string(), "{{0},{1}}");
        let mut forest = LabeledMultigraph::new(3, Mode::Pairs(2));
        forest.add_edge(0, 1, Label::new(2, 0b11));
        assert_eq!(parity_partition(&forest), Partition::one_block(2));
        assert!(!is_P_good(&forest, &[(0, 1)]));
        assert!(is_P_good(&g, &[(0, 1)]));
    }

    #[test]
    fn cycle_partition_examples() {
        let mut g = LabeledMultigraph::new(2, Mode::Pairs(2));
        let a = g.add_edge(0, 1, Label::new(2, 0b01));
        let b = g.add_edge(0, 1, Label::new(2, 0b10));
        let c = g.add_edge(0, 1, Label::new(2, 0b00));
        let w = CycleCertificate::from_walk(&g, vec![0, 1], vec![a, b], vec![0b01, 0b10]);
        assert_eq!(parity_of(&g, &w).unwrap().to_string(), "11");
        assert_eq!(partition_of_cycle(&g, &w).unwrap().to_string(), "{{0,1}}");
        let w = CycleCertificate::from_walk(&g, vec![0, 1], vec![a, c], vec![0b01, 0]);
        assert_eq!(partition_of_cycle(&g, &w).unwrap().to_string(), "{{0},{1}}");
        let bad = CycleCertificate::from_walk(&g, vec![0, 1], vec![a, 7], vec![0b01, 0]);
        assert!(matches!(parity_of(&g, &bad), Err(Error::EdgeNotInGraph(7))));
    }

    #[test]
    fn well_behaved_two_triangles() {
        let mut g = LabeledMultigraph::new(6, Mode::Pairs(2));
        for (u, v, b) in [(0, 1, 0b01), (1, 2, 0), (2, 0, 0), (3, 4, 0b10), (4, 5, 0), (5, 3, 0)] {
            g.add_edge(u, v, Label::new(2, b));
        }
        assert!(is_well_behaved(&g));
        assert!(!is_well_behaved(&g.induced_on(&[0, 1, 2])));
    }
}
