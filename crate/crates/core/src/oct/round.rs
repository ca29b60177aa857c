use super::lp::FractionalSolution;
use crate::geom::{qr, Q};
use crate::labeled_graph::LabeledMultigraph;
use crate::parity::detect_odd_cycle;
use crate::Error;
use num_traits::Zero;

/// Shortest distances from `c` among `alive` vertices, with edge length
/// d(u) + d(v).
fn distances(adj: &[Vec<usize>], d: &[Q], alive: &[bool], c: usize) -> Vec<Option<Q>> {
    let n = adj.len();
    let mut dist: Vec<Option<Q>> = vec![None; n];
    let mut done = vec![false; n];
    dist[c] = Some(Q::zero());
    loop {
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if done[v] || !alive[v] {
                continue;
            }
            if let Some(dv) = &dist[v] {
                if pick.map_or(true, |p| dv < dist[p].as_ref().unwrap()) {
                    pick = Some(v);
                }
            }
        }
        let Some(v) = pick else { break };
        done[v] = true;
        let dv = dist[v].clone().unwrap();
        for &w in &adj[v] {
            if !alive[w] || done[w] {
                continue;
            }
            let nd = &dv + &d[v] + &d[w];
            if dist[w].as_ref().map_or(true, |x| &nd < x) {
                dist[w] = Some(nd);
            }
        }
    }
    dist
}

/// Deterministic ball carving: repeatedly take the smallest uncovered
/// vertex c, make the ball {v : dist(c, v) < Δ/2 − d(v)/2} a cluster and put
/// its outer neighbors into X. Every component of the graph minus X then
/// has d-diameter below Δ.
pub fn low_diameter_decomposition(adj: &[Vec<usize>], d: &[Q], delta: &Q) -> Vec<usize> {
    let n = adj.len();
    let r = delta * qr(1, 2);
    let mut alive = vec![true; n];
    let mut cut = Vec::new();
    while let Some(c) = (0..n).find(|&v| alive[v]) {
        let dist = distances(adj, d, &alive, c);
        let ball: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && dist[v].as_ref().map_or(false, |x| x < &(&r - &d[v] * qr(1, 2))))
            .collect();
        if ball.is_empty() {
            cut.push(c);
            alive[c] = false;
            continue;
        }
        for &v in &ball {
            alive[v] = false;
        }
        for &v in &ball {
            for &w in &adj[v] {
                if alive[w] {
                    alive[w] = false;
                    cut.push(w);
                }
            }
        }
    }
    cut.sort_unstable();
    cut
}

/// Largest d-distance between two vertices of the same component of the
/// graph minus `cut`; the all-pairs check behind the decomposition tests.
pub fn max_component_diameter(adj: &[Vec<usize>], d: &[Q], cut: &[usize]) -> Q {
    let n = adj.len();
    let alive: Vec<bool> = (0..n).map(|v| !cut.contains(&v)).collect();
    let mut best = Q::zero();
    for c in 0..n {
        if !alive[c] {
            continue;
        }
        for x in distances(adj, d, &alive, c).into_iter().flatten() {
            if x > best {
                best = x;
            }
        }
    }
    best
}

/// Simple unlabeled graph underlying `g` (self-loops dropped).
pub fn underlying_simple(g: &LabeledMultigraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n];
    for e in &g.edges {
        if e.u != e.v && !adj[e.u].contains(&e.v) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    adj
}

/// Rounds a feasible LP solution: vertices with odd self-loops first, then a
/// diameter-1/2 decomposition of the rest with d = x. The result is checked
/// for leftover odd cycles before it is returned.
pub fn hit_odd_cycles_round(g: &LabeledMultigraph, x: &FractionalSolution) -> Result<Vec<usize>, Error> {
    let forced: Vec<usize> = g
        .edges
        .iter()
        .filter(|e| e.is_loop() && e.label.bit(0) != Some(false))
        .map(|e| e.u)
        .collect();
    let adj: Vec<Vec<usize>> = underlying_simple(g)
        .into_iter()
        .enumerate()
        .map(|(v, l)| if forced.contains(&v) { Vec::new() } else { l.into_iter().filter(|w| !forced.contains(w)).collect() })
        .collect();
    let mut out = low_diameter_decomposition(&adj, &x.x, &qr(1, 2));
    out.retain(|v| !forced.contains(v));
    out.extend(forced);
    out.sort_unstable();
    out.dedup();
    if detect_odd_cycle(&g.without(&out)).is_some() {
        return Err(Error::RoundingInfeasible);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::lp::{lp_hit_odd_cycles, LpArith};
    use super::*;
    use crate::geom::q;
    use crate::labeled_graph::{Label, Mode};

    #[test]
    fn path_decomposition_has_small_diameter() {
        let adj = vec![vec![1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3]];
        let d = vec![q(1); 5];
        let delta = qr(1, 2);
        let cut = low_diameter_decomposition(&adj, &d, &delta);
        assert!(max_component_diameter(&adj, &d, &cut) <= delta);
    }

    #[test]
    fn zero_metric_needs_no_cut() {
        let adj = vec![vec![1], vec![0, 2], vec![1]];
        assert!(low_diameter_decomposition(&adj, &[q(0), q(0), q(0)], &qr(1, 2)).is_empty());
        assert!(low_diameter_decomposition(&[vec![]], &[q(0)], &qr(1, 2)).is_empty());
    }

    #[test]
    fn round_triangle() {
        let mut g = LabeledMultigraph::new(3, Mode::St);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(u, v, Label::new(1, 1));
        }
        let sol = lp_hit_odd_cycles(&g, LpArith::Rational, 100).unwrap();
        let x = hit_odd_cycles_round(&g, &sol).unwrap();
        assert!(!x.is_empty() && x.len() <= 3);
    }
}
