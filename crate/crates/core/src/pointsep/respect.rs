use super::hstar::HStar;
use super::walks::WalkTable;
use crate::parity::{enumerate_coarsenings, Partition};
use serde::Serialize;
use std::collections::BTreeSet;

/// ξ: for each requested pair (by position in the pair list), the position in
/// `HStar::non_tree` of the edge whose fundamental cycle must split it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RespectMap(pub Vec<usize>);

fn splits(l: u64, (i, j): (usize, usize)) -> bool {
    (l >> i ^ l >> j) & 1 == 1
}

/// Parity of each fundamental cycle of `h` under an edge labeling.
pub fn cycle_parities(h: &HStar, labels: &[u64]) -> Vec<u64> {
    h.cycles
        .iter()
        .map(|on| on.iter().zip(labels).filter(|(&o, _)| o).fold(0, |a, (_, &l)| a ^ l))
        .collect()
}

pub fn respects(h: &HStar, labels: &[u64], xi: &RespectMap, pairs: &[(usize, usize)]) -> bool {
    let par = cycle_parities(h, labels);
    pairs.iter().zip(&xi.0).all(|(&p, &c)| splits(par[c], p))
}

/// The labeled pattern is P-good: every pair is split by some fundamental cycle.
pub fn labeling_is_p_good(h: &HStar, labels: &[u64], pairs: &[(usize, usize)]) -> bool {
    let par = cycle_parities(h, labels);
    pairs.iter().all(|&p| par.iter().any(|&c| splits(c, p)))
}

/// Cheapest labeling of `h` that respects `xi` when vertex `x` of `h` is
/// placed on obstacle `fv[x]` and each edge is realized by a shortest walk
/// from `table`. Returns the labels and the PPM cost
/// `|V| - |E| + sum of walk lengths`.
pub fn respect_dp(
    h: &HStar,
    xi: &RespectMap,
    pairs: &[(usize, usize)],
    fv: &[usize],
    table: &WalkTable,
) -> Option<(Vec<u64>, usize)> {
    let p = pairs.len();
    assert_eq!(xi.0.len(), p, "one target per pair");
    let states = 1usize << p;
    let full = states - 1;
    let w = table.width();
    let m = h.edges.len();
    // per edge: cheapest label for each split pattern it contributes
    let mut options: Vec<Vec<(usize, usize, u64)>> = Vec::with_capacity(m);
    for t in 0..m {
        let (a, b) = h.edges[t];
        let mut best: Vec<Option<(usize, u64)>> = vec![None; states];
        for l in 0..(1u64 << w) {
            let Some(len) = table.len(fv[a], fv[b], l) else { continue };
            let c = (0..p)
                .filter(|&q| h.cycles[xi.0[q]][t] && splits(l, pairs[q]))
                .fold(0usize, |acc, q| acc | 1 << q);
            if best[c].map_or(true, |(bl, _)| len < bl) {
                best[c] = Some((len, l));
            }
        }
        let opts: Vec<(usize, usize, u64)> =
            best.into_iter().enumerate().filter_map(|(c, x)| x.map(|(len, l)| (c, len, l))).collect();
        if opts.is_empty() {
            return None;
        }
        options.push(opts);
    }
    let mut dp: Vec<Option<usize>> = vec![None; states];
    dp[0] = Some(0);
    let mut back: Vec<Vec<Option<(usize, u64)>>> = Vec::with_capacity(m);
    for opts in &options {
        let mut next: Vec<Option<usize>> = vec![None; states];
        let mut bk: Vec<Option<(usize, u64)>> = vec![None; states];
        for phi in 0..states {
            let Some(cost) = dp[phi] else { continue };
            for &(c, len, l) in opts {
                let to = phi ^ c;
                if next[to].map_or(true, |x| cost + len < x) {
                    next[to] = Some(cost + len);
                    bk[to] = Some((phi, l));
                }
            }
        }
        dp = next;
        back.push(bk);
    }
    let total = dp[full]?;
    let mut labels = vec![0u64; m];
    let mut phi = full;
    for t in (0..m).rev() {
        let (prev, l) = back[t][phi].expect("reachable state has a predecessor");
        labels[t] = l;
        phi = prev;
    }
    Some((labels, h.n + total - m))
}

/// All finer-and-finer sequences `phi_1 >= ... >= phi_m` of partitions of
/// `0..k`, built backwards from the discrete partition by coarsening.
pub fn finer_and_finer_sequences(k: usize, m: usize) -> Vec<Vec<Partition>> {
    fn rec(t: usize, acc: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if t == 0 {
            let mut s = acc.clone();
            s.reverse();
            out.push(s);
            return;
        }
        let below = acc.last().expect("seeded").clone();
        for d in 0..below.num_blocks() {
            for phi in enumerate_coarsenings(&below, d) {
                acc.push(phi);
                rec(t - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = vec![Partition::discrete(k)];
    rec(m, &mut acc, &mut out);
    // drop the seed that closed each sequence
    out.into_iter().map(|mut s| {
        s.pop();
        s
    }).collect()
}

/// The ξ induced by a sequence: each pair goes to the first index whose
/// partition separates it. `None` if the last partition leaves a pair joined.
pub fn xi_of_sequence(seq: &[Partition], pairs: &[(usize, usize)]) -> Option<RespectMap> {
    pairs
        .iter()
        .map(|&(i, j)| seq.iter().position(|phi| !phi.same_block(i, j)))
        .collect::<Option<Vec<usize>>>()
        .map(RespectMap)
}

/// Family Ξ of respect maps for `h` such that every P-good labeling of `h`
/// respects one of them.
pub fn representative_family(h: &HStar, k: usize, pairs: &[(usize, usize)]) -> Vec<RespectMap> {
    let m = h.non_tree.len();
    if pairs.is_empty() {
        return vec![RespectMap(Vec::new())];
    }
    if m == 0 {
        return Vec::new();
    }
    let fam: BTreeSet<RespectMap> =
        finer_and_finer_sequences(k, m).iter().filter_map(|s| xi_of_sequence(s, pairs)).collect();
    fam.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeled_graph::{Label, LabeledMultigraph, Mode};
    use crate::pointsep::walks::shortest_nonempty_walks;

    fn two_cycle() -> HStar {
        HStar::from_edges(2, vec![(0, 1), (0, 1)])
    }

    #[test]
    fn family_examples() {
        let loop1 = HStar::from_edges(1, vec![(0, 0)]);
        assert_eq!(representative_family(&loop1, 2, &[(0, 1)]), vec![RespectMap(vec![0])]);
        assert_eq!(representative_family(&loop1, 2, &[]), vec![RespectMap(vec![])]);
        let theta = HStar::from_edges(2, vec![(0, 1), (0, 1), (0, 1)]);
        let fam = representative_family(&theta, 2, &[(0, 1)]);
        // direct: every 2-tuple of partitions of {0,1}, finer and finer, last one split
        let parts = [Partition::one_block(2), Partition::discrete(2)];
        let mut direct = BTreeSet::new();
        for a in &parts {
            for b in &parts {
                if b.is_finer_than(a) {
                    if let Some(x) = xi_of_sequence(&[a.clone(), b.clone()], &[(0, 1)]) {
                        direct.insert(x);
                    }
                }
            }
        }
        assert_eq!(fam, direct.into_iter().collect::<Vec<_>>());
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn sequence_counts() {
        // 5 partitions of {0,1,2}; comparable ordered pairs: 5 + 6 + 1
        assert_eq!(finer_and_finer_sequences(3, 1).len(), 5);
        assert_eq!(finer_and_finer_sequences(3, 2).len(), 12);
    }

    fn graph(n: usize, k: usize, es: &[(usize, usize, u64)]) -> LabeledMultigraph {
        let mut g = LabeledMultigraph::new(n, Mode::Points(k));
        for &(u, v, b) in es {
            g.add_edge(u, v, Label::new(k, b));
        }
        g
    }

    fn brute(h: &HStar, xi: &RespectMap, pairs: &[(usize, usize)], fv: &[usize], t: &WalkTable) -> Option<usize> {
        let m = h.edges.len();
        let nl = 1usize << t.width();
        let mut best: Option<usize> = None;
        for code in 0..nl.pow(m as u32) {
            let labels: Vec<u64> = (0..m).map(|e| ((code / nl.pow(e as u32)) % nl) as u64).collect();
            if !respects(h, &labels, xi, pairs) {
                continue;
            }
            let lens: Option<Vec<usize>> =
                (0..m).map(|e| t.len(fv[h.edges[e].0], fv[h.edges[e].1], labels[e])).collect();
            if let Some(ls) = lens {
                let c = h.n + ls.iter().sum::<usize>() - m;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        best
    }

    #[test]
    fn dp_matches_brute_force() {
        let g = graph(3, 2, &[(0, 1, 0b01), (1, 2, 0b00), (0, 2, 0b11), (0, 1, 0b10), (2, 2, 0b01)]);
        let t = shortest_nonempty_walks(&g, 12).unwrap();
        for h in [two_cycle(), HStar::from_edges(1, vec![(0, 0)]), HStar::from_edges(2, vec![(0, 1), (0, 1), (0, 1)])] {
            for pairs in [vec![], vec![(0, 1)]] {
                for xi in representative_family(&h, 2, &pairs) {
                    let mut fv = vec![0; h.n];
                    loop {
                        let got = respect_dp(&h, &xi, &pairs, &fv, &t);
                        assert_eq!(got.as_ref().map(|x| x.1), brute(&h, &xi, &pairs, &fv, &t));
                        if let Some((labels, _)) = got {
                            assert!(respects(&h, &labels, &xi, &pairs));
                        }
                        let Some(i) = (0..h.n).find(|&i| fv[i] + 1 < 3) else { break };
                        fv[i] += 1;
                        for x in fv.iter_mut().take(i) {
                            *x = 0;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unconstrained_takes_cheapest() {
        let g = graph(2, 2, &[(0, 1, 0b01), (0, 1, 0b00)]);
        let t = shortest_nonempty_walks(&g, 12).unwrap();
        let (labels, cost) = respect_dp(&two_cycle(), &RespectMap(vec![]), &[], &[0, 1], &t).unwrap();
        assert_eq!(labels, vec![0b00, 0b00]);
        assert_eq!(cost, 2);
    }

    #[test]
    fn infeasible_when_no_split_label() {
        // every walk has bits 0 and 1 equal, so no cycle can split the pair
        let g = graph(2, 2, &[(0, 1, 0b11), (0, 1, 0b00)]);
        let t = shortest_nonempty_walks(&g, 12).unwrap();
        assert_eq!(respect_dp(&two_cycle(), &RespectMap(vec![0]), &[(0, 1)], &[0, 1], &t), None);
    }
}
