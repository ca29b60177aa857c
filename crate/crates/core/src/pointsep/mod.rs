//! Generalized points separation: exhaustive oracle, the chain-structure
//! search on p-labeled graphs and the pattern (PPM) search on k-labeled graphs.

mod brute;
mod hstar;
mod respect;
mod section5;
mod section6;
mod walks;

pub use brute::{brute_force_min_separator, DEFAULT_BRUTE_CAP};
pub use hstar::{enumerate_hstar, hstar_structures, HStar};
pub use respect::{
    cycle_parities, finer_and_finer_sequences, labeling_is_p_good, representative_family, respect_dp, respects,
    xi_of_sequence, RespectMap,
};
pub use section5::{separate_point_pairs_graph, ChainCandidate};
pub use section6::{best_ppm, enumerate_ppms, pattern_structures, Ppm};
pub use walks::{shortest_labeled_walks, shortest_nonempty_walks, LabeledWalk, WalkTable, DEFAULT_WIDTH_CAP};

use crate::arrangement::{mask_of, SeparationOracle};
use crate::geom::Scene;
use crate::labeled_graph::{build_labeled_graph, route_reference_curves_seeded, LabeledMultigraph, Mode};
use crate::parity::{cycle_with_odd_bits, is_P_good, is_well_behaved, parity_partition, CycleCertificate, Partition};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Size limits for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Obstacles for the exhaustive oracle.
    pub brute_n: usize,
    /// Obstacles for the chain-structure search.
    pub section5_n: usize,
    /// Requested pairs for the chain-structure search.
    pub pairs: usize,
    /// Points for the pattern search.
    pub points: usize,
    /// Label width of walk tables.
    pub width: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { brute_n: DEFAULT_BRUTE_CAP, section5_n: 10, pairs: 3, points: 3, width: DEFAULT_WIDTH_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Brute,
    Section5,
    Section6,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Brute => "brute",
            Strategy::Section5 => "section5",
            Strategy::Section6 => "section6",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "brute" => Ok(Strategy::Brute),
            "section5" => Ok(Strategy::Section5),
            "section6" => Ok(Strategy::Section6),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

/// A cycle of the certificate graph whose parity splits one requested pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub pair: (usize, usize),
    pub cycle: CycleCertificate,
}

/// Checkable evidence for a separator: the labeled graph induced on it (built
/// with the recorded mode and routing seed), its parity partition, and one
/// splitting cycle per pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsepCertificate {
    pub mode: Mode,
    pub seed: u64,
    pub induced: LabeledMultigraph,
    pub partition: Partition,
    pub witnesses: Vec<PairWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GpsResult {
    pub strategy: Strategy,
    pub pairs: Vec<(usize, usize)>,
    pub separator: Vec<usize>,
    /// PPM cost (pattern search) or realized size (chain search).
    pub cost: Option<usize>,
    pub certificate: PsepCertificate,
}

/// Every unordered pair of named points.
pub fn all_pairs(sc: &Scene) -> Vec<(usize, usize)> {
    let k = sc.points.len();
    (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).collect()
}

fn mode_for(strategy: Strategy, sc: &Scene, pairs: &[(usize, usize)]) -> (Scene, Mode) {
    match strategy {
        Strategy::Section5 => (sc.with_pairs(pairs.to_vec()), Mode::Pairs(pairs.len())),
        _ => (sc.clone(), Mode::Points(sc.points.len())),
    }
}

fn witness_bits(mode: Mode, idx: usize, pair: (usize, usize)) -> u64 {
    match mode {
        Mode::Pairs(_) => 1 << idx,
        _ => 1 << pair.0 | 1 << pair.1,
    }
}

fn labeled_graph(sc: &Scene, mode: Mode, seed: u64) -> Result<LabeledMultigraph, Error> {
    let rc = route_reference_curves_seeded(sc, mode, seed)?;
    build_labeled_graph(sc, &rc)
}

fn certify(
    g: &LabeledMultigraph,
    separator: &[usize],
    pairs: &[(usize, usize)],
    seed: u64,
) -> Result<PsepCertificate, Error> {
    let induced = g.induced_on(separator);
    let mut witnesses = Vec::new();
    for (idx, &pair) in pairs.iter().enumerate() {
        let cycle = cycle_with_odd_bits(&induced, witness_bits(g.mode, idx, pair))
            .ok_or_else(|| Error::Internal(format!("no cycle splits pair {pair:?}")))?;
        witnesses.push(PairWitness { pair, cycle });
    }
    Ok(PsepCertificate { mode: g.mode, seed, partition: parity_partition(&induced), induced, witnesses })
}

/// Minimum obstacle set separating every pair in `pairs` (point indices).
pub fn gps_solve(
    sc: &Scene,
    pairs: &[(usize, usize)],
    strategy: Strategy,
    seed: u64,
    caps: &Caps,
) -> Result<GpsResult, Error> {
    brute::check_pairs(sc, pairs)?;
    let (scene, mode) = mode_for(strategy, sc, pairs);
    let g = labeled_graph(&scene, mode, seed)?;
    let (separator, cost) = match strategy {
        Strategy::Brute => (brute_force_min_separator(sc, pairs, caps.brute_n)?, None),
        Strategy::Section5 => {
            if pairs.len() > caps.pairs {
                return Err(Error::CapExceeded { what: "pairs", value: pairs.len(), cap: caps.pairs });
            }
            if sc.n() > caps.section5_n {
                return Err(Error::CapExceeded { what: "obstacles", value: sc.n(), cap: caps.section5_n });
            }
            let table = shortest_nonempty_walks(&g, caps.width)?;
            let c = separate_point_pairs_graph(&g, &table).ok_or(Error::NoSeparatorExists)?;
            let size = c.vertices.len();
            (c.vertices, Some(size))
        }
        Strategy::Section6 => {
            let k = sc.points.len();
            if k > caps.points {
                return Err(Error::CapExceeded { what: "points", value: k, cap: caps.points });
            }
            if !is_P_good(&g, pairs) {
                return Err(Error::NoSeparatorExists);
            }
            let table = shortest_nonempty_walks(&g, caps.width)?;
            let f = best_ppm(&g, pairs, &table).ok_or(Error::NoSeparatorExists)?;
            (f.image_vertices(), Some(f.cost))
        }
    };
    let induced = g.induced_on(&separator);
    let criterion = match mode {
        Mode::Pairs(_) => pairs.is_empty() || is_well_behaved(&induced),
        _ => is_P_good(&induced, pairs),
    };
    if !criterion {
        return Err(Error::Internal(format!("separator {separator:?} fails the parity criterion")));
    }
    if !SeparationOracle::new(sc)?.separates_all(mask_of(&separator), pairs) {
        return Err(Error::Internal(format!("separator {separator:?} fails the geometric check")));
    }
    let certificate = certify(&g, &separator, pairs, seed)?;
    Ok(GpsResult { strategy, pairs: pairs.to_vec(), separator, cost, certificate })
}

/// Recomputes every claim of a result: the certificate graph against a fresh
/// build with the same mode and seed, the parity partition, each witness
/// cycle, and geometric separation of every pair.
pub fn verify_result(sc: &Scene, r: &GpsResult) -> Result<(), String> {
    let cert = &r.certificate;
    let (scene, mode) = mode_for(r.strategy, sc, &r.pairs);
    if mode != cert.mode {
        return Err(format!("certificate mode {:?}, expected {mode:?}", cert.mode));
    }
    let g = labeled_graph(&scene, mode, cert.seed).map_err(|e| e.to_string())?;
    let induced = g.induced_on(&r.separator);
    if induced != cert.induced {
        return Err("induced graph differs from a fresh build".into());
    }
    if parity_partition(&induced) != cert.partition {
        return Err("parity partition differs".into());
    }
    if cert.witnesses.len() != r.pairs.len() {
        return Err("one witness per pair expected".into());
    }
    for (idx, (w, &pair)) in cert.witnesses.iter().zip(&r.pairs).enumerate() {
        if w.pair != pair {
            return Err(format!("witness {idx} is for {:?}, expected {pair:?}", w.pair));
        }
        let par = w.cycle.check(&induced).map_err(|e| format!("witness {idx}: {e}"))?;
        if (par.bits & witness_bits(mode, idx, pair)).count_ones() % 2 != 1 {
            return Err(format!("witness {idx} does not split {pair:?}"));
        }
        if matches!(mode, Mode::Points(_)) && cert.partition.same_block(pair.0, pair.1) {
            return Err(format!("partition joins {pair:?}"));
        }
    }
    let oracle = SeparationOracle::new(sc).map_err(|e| e.to_string())?;
    if !oracle.separates_all(mask_of(&r.separator), &r.pairs) {
        return Err("separator does not separate every pair".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{scene_contain, scene_empty, scene_ring2};

    #[test]
    fn strategies_agree_on_ring2() {
        let sc = scene_ring2();
        for s in [Strategy::Brute, Strategy::Section5, Strategy::Section6] {
            let r = gps_solve(&sc, &[(0, 1)], s, 0, &Caps::default()).unwrap();
            assert_eq!(r.separator, vec![0, 1], "{s}");
            verify_result(&sc, &r).unwrap();
        }
    }

    #[test]
    fn contain_and_empty() {
        let r = gps_solve(&scene_contain(), &[(0, 1)], Strategy::Section6, 0, &Caps::default()).unwrap();
        assert_eq!(r.separator, vec![0]);
        for s in [Strategy::Brute, Strategy::Section5, Strategy::Section6] {
            assert!(matches!(
                gps_solve(&scene_empty(), &[(0, 1)], s, 0, &Caps::default()),
                Err(Error::NoSeparatorExists)
            ));
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let sc = scene_ring2();
        let mut r = gps_solve(&sc, &[(0, 1)], Strategy::Section6, 0, &Caps::default()).unwrap();
        r.separator = vec![0];
        assert!(verify_result(&sc, &r).is_err());
    }

    #[test]
    fn no_pairs_no_obstacles() {
        for s in [Strategy::Brute, Strategy::Section5, Strategy::Section6] {
            let r = gps_solve(&scene_ring2(), &[], s, 0, &Caps::default()).unwrap();
            assert!(r.separator.is_empty());
            verify_result(&scene_ring2(), &r).unwrap();
        }
    }

    #[test]
    fn strategy_names() {
        for s in [Strategy::Brute, Strategy::Section5, Strategy::Section6] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
    }
}
