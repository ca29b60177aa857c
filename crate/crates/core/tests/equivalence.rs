use sepgraph::arrangement::{ids_of, SeparationOracle};
use sepgraph::gen::GeneratorSpec;
use sepgraph::labeled_graph::{build_labeled_graph, project, route_reference_curves_seeded, Mode};
use sepgraph::parity::detect_odd_cycle;
use sepgraph::Scene;

fn corpus() -> Vec<(String, Scene)> {
    let mut out = Vec::new();
    for seed in 0..12u64 {
        let n = 2 + (seed as usize % 7);
        for spec in [GeneratorSpec::RandomRects { n, k: 2 }, GeneratorSpec::RandomStars { n, k: 2 }] {
            out.push((format!("{spec} seed {seed}"), spec.generate(seed)));
        }
    }
    for m in 3..=8 {
        out.push((format!("ring({m})"), GeneratorSpec::Ring { m }.generate(0)));
        out.push((format!("perturbed-ring({m})"), GeneratorSpec::PerturbedRing { m }.generate(m as u64)));
    }
    out.push(("grid(2,2)".into(), GeneratorSpec::Grid { w: 2, h: 2 }.generate(0)));
    out
}

#[test]
fn odd_cycles_match_geometric_separation() {
    for (name, sc) in corpus() {
        let oracle = SeparationOracle::new(&sc).unwrap();
        let (s, t) = sc.st_pair().unwrap();
        for seed in [0u64, 7] {
            let rc = route_reference_curves_seeded(&sc, Mode::St, seed).unwrap();
            let g = project(&build_labeled_graph(&sc, &rc).unwrap(), 0);
            for keep in 0..(1u64 << sc.n()) {
                let geo = oracle.separates(keep, s, t);
                let odd = detect_odd_cycle(&g.induced(keep)).is_some();
                assert_eq!(geo, odd, "{name}, routing seed {seed}, subset {:?}", ids_of(keep));
            }
        }
    }
}
