use super::hstar::{hstar_structures, HStar};
use super::respect::{representative_family, respect_dp, RespectMap};
use super::walks::{LabeledWalk, WalkTable};
use crate::labeled_graph::LabeledMultigraph;
use rayon::prelude::*;
use serde::Serialize;

/// Parity-preserving mapping from a labeled pattern into the k-labeled graph.
#[derive(Clone, Debug, Serialize)]
pub struct Ppm {
    pub hstar: HStar,
    pub labels: Vec<u64>,
    pub fv: Vec<usize>,
    pub walks: Vec<LabeledWalk>,
    pub cost: usize,
}

impl Ppm {
    fn empty() -> Ppm {
        Ppm { hstar: HStar::from_edges(0, Vec::new()), labels: Vec::new(), fv: Vec::new(), walks: Vec::new(), cost: 0 }
    }

    /// Obstacles touched by the mapping, ascending.
    pub fn image_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.fv.iter().chain(self.walks.iter().flat_map(|w| &w.vertices)).copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// `g` restricted to the edges used by the walks.
    pub fn image_graph(&self, g: &LabeledMultigraph) -> LabeledMultigraph {
        let mut used: Vec<usize> = self.walks.iter().flat_map(|w| w.edges.iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        LabeledMultigraph { n: g.n, mode: g.mode, edges: used.into_iter().map(|e| g.edges[e]).collect() }
    }

    /// Walk ends match the vertex map, parities match the labels, and the
    /// cost is `|V| - |E| + sum of walk lengths`.
    pub fn check(&self, g: &LabeledMultigraph) -> Result<(), String> {
        let h = &self.hstar;
        if self.walks.len() != h.edges.len() || self.labels.len() != h.edges.len() || self.fv.len() != h.n {
            return Err("size mismatch".into());
        }
        for (t, w) in self.walks.iter().enumerate() {
            let (a, b) = h.edges[t];
            let par = w.check(g).map_err(|e| e.to_string())?;
            if w.is_empty() || w.vertices[0] != self.fv[a] || w.vertices[w.len()] != self.fv[b] {
                return Err(format!("walk {t} does not join the images of its ends"));
            }
            if par != self.labels[t] {
                return Err(format!("walk {t} has parity {par:b}, label {:b}", self.labels[t]));
            }
        }
        let sum: usize = self.walks.iter().map(|w| w.len()).sum();
        if self.cost != h.n + sum - h.edges.len() {
            return Err("cost formula".into());
        }
        Ok(())
    }
}

/// Calls `f` with every vertex map `0..len -> 0..n` in lexicographic order.
pub(crate) fn for_each_map(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 && len > 0 {
        return;
    }
    let mut fv = vec![0usize; len];
    loop {
        f(&fv);
        let Some(i) = (0..len).rev().find(|&i| fv[i] + 1 < n) else { return };
        fv[i] += 1;
        for x in fv.iter_mut().skip(i + 1) {
            *x = 0;
        }
    }
}

fn realize(h: &HStar, fv: &[usize], labels: Vec<u64>, cost: usize, table: &WalkTable) -> Ppm {
    let walks = h
        .edges
        .iter()
        .zip(&labels)
        .map(|(&(a, b), &l)| table.walk(fv[a], fv[b], l).expect("dp used an existing walk"))
        .collect();
    Ppm { hstar: h.clone(), labels, fv: fv.to_vec(), walks, cost }
}

fn best_for(h: &HStar, k: usize, pairs: &[(usize, usize)], table: &WalkTable) -> Option<(usize, Vec<usize>, Vec<u64>)> {
    let family: Vec<RespectMap> = representative_family(h, k, pairs);
    let mut best: Option<(usize, Vec<usize>, Vec<u64>)> = None;
    for_each_map(table.n(), h.n, |fv| {
        for xi in &family {
            if let Some((labels, cost)) = respect_dp(h, xi, pairs, fv, table) {
                if best.as_ref().map_or(true, |b| cost < b.0) {
                    best = Some((cost, fv.to_vec(), labels));
                }
            }
        }
    });
    best
}

/// Patterns searched for `k` points and `p` pairs: a minimal P-good subgraph
/// has fewer than `k` and at most `p` non-tree edges.
pub fn pattern_structures(k: usize, p: usize) -> Vec<HStar> {
    hstar_structures(k.saturating_sub(1).min(p))
}

/// Minimum-cost PPM over every pattern, respect map and vertex map. Patterns
/// are searched in parallel; ties go to the earliest pattern, then the
/// lexicographically first vertex map.
pub fn best_ppm(g: &LabeledMultigraph, pairs: &[(usize, usize)], table: &WalkTable) -> Option<Ppm> {
    if pairs.is_empty() {
        return Some(Ppm::empty());
    }
    let k = g.width();
    let structures = pattern_structures(k, pairs.len());
    let found: Vec<Option<(usize, Vec<usize>, Vec<u64>)>> =
        structures.par_iter().map(|h| best_for(h, k, pairs, table)).collect();
    let (idx, (cost, fv, labels)) = found
        .into_iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|x| (i, x)))
        .min_by_key(|(i, x)| (x.0, *i))?;
    Some(realize(&structures[idx], &fv, labels, cost, table))
}

/// Every PPM the search evaluates: the respect-DP optimum for each pattern,
/// respect map and vertex map. Meant for checking the cost laws on tiny inputs.
pub fn enumerate_ppms(g: &LabeledMultigraph, pairs: &[(usize, usize)], table: &WalkTable) -> Vec<Ppm> {
    let k = g.width();
    let mut out = Vec::new();
    for h in pattern_structures(k, pairs.len()) {
        let family = representative_family(&h, k, pairs);
        for_each_map(table.n(), h.n, |fv| {
            for xi in &family {
                if let Some((labels, cost)) = respect_dp(&h, xi, pairs, fv, table) {
                    out.push(realize(&h, fv, labels, cost, table));
                }
            }
        });
    }
    out
}
