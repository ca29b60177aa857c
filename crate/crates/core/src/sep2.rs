//! Minimum separator for a single pair (s, t).

use crate::arrangement::{mask_of, SeparationOracle};
use crate::geom::Scene;
use crate::labeled_graph::{build_labeled_graph, route_reference_curves_seeded, LabeledMultigraph, Mode};
use crate::parity::{shortest_odd_cycle, CycleCertificate};
use crate::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sep2Result {
    /// Point indices of s and t.
    pub pair: (usize, usize),
    pub separator: Vec<usize>,
    pub size: usize,
    /// Routing seed of the reference curve the cycle's edges refer to.
    pub seed: u64,
    /// Odd-labeled cycle of the 1-bit graph through exactly the separator.
    pub cycle: CycleCertificate,
}

fn st_graph(sc: &Scene, seed: u64) -> Result<LabeledMultigraph, Error> {
    let rc = route_reference_curves_seeded(sc, Mode::St, seed)?;
    build_labeled_graph(sc, &rc)
}

/// Smallest obstacle set separating s from t: the vertex set of a minimum
/// odd-labeled cycle under unit vertex weights.
pub fn min_st_separator(sc: &Scene, seed: u64) -> Result<Sep2Result, Error> {
    let g = st_graph(sc, seed)?;
    let pair = sc.st_pair().ok_or(Error::MissingPair)?;
    let (cycle, size) = shortest_odd_cycle(&g, &vec![1usize; g.n]).ok_or(Error::NoSeparatorExists)?;
    let mut separator = cycle.vertices.clone();
    separator.sort_unstable();
    separator.dedup();
    if separator.len() != size {
        return Err(Error::Internal(format!("odd cycle {:?} repeats a vertex", cycle.vertices)));
    }
    if !SeparationOracle::new(sc)?.separates(mask_of(&separator), pair.0, pair.1) {
        return Err(Error::Internal(format!("separator {separator:?} fails the geometric check")));
    }
    Ok(Sep2Result { pair, separator, size, seed, cycle })
}

/// Rebuilds the graph with the recorded seed and rechecks the cycle, its
/// parity, its vertex set and geometric separation.
pub fn verify_sep2(sc: &Scene, r: &Sep2Result) -> Result<(), String> {
    if sc.st_pair() != Some(r.pair) {
        return Err(format!("pair {:?} is not the scene's (s, t)", r.pair));
    }
    let g = st_graph(sc, r.seed).map_err(|e| e.to_string())?;
    let parity = r.cycle.check(&g).map_err(|e| format!("cycle: {e}"))?;
    if parity.bits & 1 != 1 {
        return Err("cycle is not odd".into());
    }
    let mut vs = r.cycle.vertices.clone();
    vs.sort_unstable();
    vs.dedup();
    if vs != r.separator || r.size != vs.len() || vs.len() != r.cycle.vertices.len() {
        return Err("cycle vertices do not match the separator".into());
    }
    let oracle = SeparationOracle::new(sc).map_err(|e| e.to_string())?;
    if !oracle.separates(mask_of(&r.separator), r.pair.0, r.pair.1) {
        return Err("separator does not separate s from t".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{scene_contain, scene_empty, scene_ring2};
    use crate::gen::ring;

    #[test]
    fn fixtures() {
        let r = min_st_separator(&scene_contain(), 0).unwrap();
        assert_eq!(r.size, 1);
        verify_sep2(&scene_contain(), &r).unwrap();
        let r = min_st_separator(&scene_ring2(), 0).unwrap();
        assert_eq!(r.separator, vec![0, 1]);
        verify_sep2(&scene_ring2(), &r).unwrap();
        assert!(matches!(min_st_separator(&scene_empty(), 0), Err(Error::NoSeparatorExists)));
    }

    #[test]
    fn ring_needs_every_block() {
        let sc = ring(5);
        let r = min_st_separator(&sc, 3).unwrap();
        assert_eq!(r.size, 5);
        verify_sep2(&sc, &r).unwrap();
        let mut bad = r.clone();
        bad.separator.pop();
        assert!(verify_sep2(&sc, &bad).is_err());
    }
}
