use proptest::prelude::*;
use sepgraph::arrangement::{mask_of, SeparationOracle};
use sepgraph::gen::{random_rects, GeneratorSpec};
use sepgraph::geom::{qr, Point, Q};
use sepgraph::labeled_graph::{project, Label, LabeledMultigraph, Mode};
use sepgraph::oct::{
    hit_odd_cycles_round, lp_hit_odd_cycles, low_diameter_decomposition, max_component_diameter, oct_brute_force,
    oct_exact, LpArith,
};
use sepgraph::parity::{
    brute_force_partition, detect_odd_cycle, is_P_good, parity_partition, shortest_odd_cycle, simple_cycle_parities,
    Partition,
};
use sepgraph::pointsep::{hstar_structures, labeling_is_p_good, representative_family, respects, RespectMap};
use sepgraph::Scene;
use std::collections::VecDeque;

type EdgeSpec = (usize, usize, u64, Option<usize>);

fn build(n: usize, width: usize, edges: &[EdgeSpec]) -> LabeledMultigraph {
    let mode = if width == 1 { Mode::St } else { Mode::Points(width) };
    let full = (1u64 << width) - 1;
    let mut g = LabeledMultigraph::new(n, mode);
    for &(u, v, bits, free) in edges {
        let mask = free.map_or(full, |i| full & !(1 << (i % width)));
        g.add_edge(u % n, v % n, Label::masked(width, bits, mask));
    }
    g
}

fn edges(max: usize, free: f64) -> impl Strategy<Value = Vec<EdgeSpec>> {
    prop::collection::vec((0..8usize, 0..8usize, any::<u64>(), prop::option::weighted(free, 0..4usize)), 0..max)
}

fn graph(max_n: usize, width: std::ops::RangeInclusive<usize>, max_e: usize, free: f64) -> impl Strategy<Value = LabeledMultigraph> {
    (1..=max_n, width, edges(max_e, free)).prop_map(|(n, w, es)| build(n, w, &es))
}

fn partition(k: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..k, k).prop_map(|ids| Partition::new(&ids))
}

/// Fewest vertices inducing an odd cycle, by subset enumeration.
fn min_odd_subset(g: &LabeledMultigraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for keep in 0..(1u64 << g.n) {
        let c = keep.count_ones() as usize;
        if best.map_or(true, |b| c < b) && detect_odd_cycle(&g.induced(keep)).is_some() {
            best = Some(c);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parity_partition_matches_cycle_enumeration(g in graph(6, 1..=4, 10, 0.15)) {
        prop_assert_eq!(parity_partition(&g), brute_force_partition(&g));
    }

    #[test]
    fn odd_cycle_detection_matches_enumeration(g in graph(7, 1..=3, 10, 0.1)) {
        let g1 = project(&g, 0);
        let brute = simple_cycle_parities(&g1).iter().any(|b| b & 1 == 1);
        let found = detect_odd_cycle(&g1);
        prop_assert_eq!(found.is_some(), brute);
        if let Some(c) = found {
            prop_assert_eq!(c.check(&g1).unwrap().bits & 1, 1);
        }
    }

    #[test]
    fn shortest_odd_cycle_is_smallest_odd_subgraph(g in graph(6, 1..=1, 10, 0.1)) {
        let found = shortest_odd_cycle(&g, &vec![1usize; g.n]);
        prop_assert_eq!(found.as_ref().map(|(_, w)| *w), min_odd_subset(&g));
        if let Some((c, w)) = found {
            prop_assert_eq!(c.vertices.len(), w);
            prop_assert_eq!(c.check(&g).unwrap().bits & 1, 1);
        }
    }

    #[test]
    fn p_good_matches_partition(g in graph(5, 2..=4, 9, 0.15)) {
        let phi = brute_force_partition(&g);
        let k = g.width();
        for i in 0..k {
            for j in (i + 1)..k {
                prop_assert_eq!(is_P_good(&g, &[(i, j)]), !phi.same_block(i, j));
            }
        }
    }

    #[test]
    fn meet_laws(k in 1..6usize, seed in any::<u64>()) {
        let mut rng = seed;
        let mut next = || { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (rng >> 33) as usize };
        let mut part = || Partition::new(&(0..k).map(|_| next() % k).collect::<Vec<_>>());
        let (a, b, c) = (part(), part(), part());
        let ab = a.meet(&b).unwrap();
        prop_assert_eq!(&ab, &b.meet(&a).unwrap());
        prop_assert_eq!(ab.meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert_eq!(&a.meet(&a).unwrap(), &a);
        prop_assert!(ab.is_finer_than(&a) && ab.is_finer_than(&b));
        if c.is_finer_than(&a) && c.is_finer_than(&b) {
            prop_assert!(c.is_finer_than(&ab));
        }
    }

    #[test]
    fn meet_with_parity_partitions(a in partition(4), bits in any::<u64>()) {
        let p = Partition::from_parity(4, bits);
        let m = a.meet(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(m.same_block(i, j), a.same_block(i, j) && (bits >> i ^ bits >> j) & 1 == 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oct_exact_matches_brute_force(g in graph(8, 1..=1, 14, 0.05)) {
        let exact = oct_exact(&g, g.n).unwrap();
        prop_assert_eq!(exact.len(), oct_brute_force(&g).len());
        prop_assert!(detect_odd_cycle(&g.without(&exact)).is_none());
        if !exact.is_empty() {
            prop_assert!(oct_exact(&g, exact.len() - 1).is_none());
        }
    }

    #[test]
    fn lp_bounds_and_rounding(g in graph(7, 1..=1, 12, 0.05)) {
        let opt = oct_brute_force(&g).len();
        let sol = lp_hit_odd_cycles(&g, LpArith::Rational, 500).unwrap();
        prop_assert!(sol.objective <= Q::from_integer(opt.into()));
        if let Some(w) = &sol.min_cycle_weight {
            prop_assert!(*w >= Q::from_integer(1.into()));
        }
        let x = hit_odd_cycles_round(&g, &sol).unwrap();
        prop_assert!(detect_odd_cycle(&g.without(&x)).is_none());
    }

    #[test]
    fn decomposition_diameter(
        n in 1..9usize,
        es in prop::collection::vec((0..9usize, 0..9usize), 0..16),
        ds in prop::collection::vec(0..5i64, 9),
        delta_q in 1..5i64,
    ) {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in es {
            let (u, v) = (u % n, v % n);
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let d: Vec<Q> = ds[..n].iter().map(|&x| qr(x, 4)).collect();
        let delta = qr(delta_q, 2);
        let cut = low_diameter_decomposition(&adj, &d, &delta);
        prop_assert!(max_component_diameter(&adj, &d, &cut) <= delta);
    }
}

/// Flood fill over a grid of `1/res` cells: separated if either point's cell
/// is covered or the cells are not 4-connected through uncovered cells.
/// Exact for axis-parallel rectangles with integer corners when `res` is odd
/// and points sit at half-integers.
fn raster_separates(sc: &Scene, keep: &[usize], a: usize, b: usize, res: i64) -> bool {
    let ints: Vec<i64> = sc
        .obstacles
        .iter()
        .flat_map(|o| o.ring.iter())
        .chain(sc.points.iter().map(|p| &p.p))
        .flat_map(|p| [p.x.floor().to_integer(), p.y.floor().to_integer()])
        .map(|v| i64::try_from(v).unwrap())
        .collect();
    let lo = ints.iter().min().unwrap() - 1;
    let hi = ints.iter().max().unwrap() + 2;
    let side = ((hi - lo) * res) as usize;
    let center = |i: usize, j: usize| {
        Point::new(qr(2 * (lo * res + i as i64) + 1, 2 * res), qr(2 * (lo * res + j as i64) + 1, 2 * res))
    };
    let blocked: Vec<Vec<bool>> = (0..side)
        .map(|i| (0..side).map(|j| keep.iter().any(|&o| sc.obstacles[o].contains(&center(i, j)))).collect())
        .collect();
    let cell = |p: &Point| {
        let f = |v: &Q| ((v - Q::from_integer(lo.into())) * Q::from_integer(res.into())).floor().to_integer();
        (usize::try_from(f(&p.x)).unwrap(), usize::try_from(f(&p.y)).unwrap())
    };
    let (sa, sb) = (cell(&sc.points[a].p), cell(&sc.points[b].p));
    if blocked[sa.0][sa.1] || blocked[sb.0][sb.1] {
        return true;
    }
    let mut seen = vec![vec![false; side]; side];
    let mut queue = VecDeque::from([sa]);
    seen[sa.0][sa.1] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == sb {
            return false;
        }
        let nbrs = [(i.wrapping_sub(1), j), (i + 1, j), (i, j.wrapping_sub(1)), (i, j + 1)];
        for (x, y) in nbrs {
            if x < side && y < side && !seen[x][y] && !blocked[x][y] {
                seen[x][y] = true;
                queue.push_back((x, y));
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_matches_raster_flood_fill(n in 1..6usize, seed in any::<u64>(), keep in any::<u64>()) {
        let sc = random_rects(n, 3, seed);
        let oracle = SeparationOracle::new(&sc).unwrap();
        let keep = keep & ((1 << n) - 1);
        let ids: Vec<usize> = (0..n).filter(|i| keep >> i & 1 == 1).collect();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            prop_assert_eq!(oracle.separates(keep, a, b), raster_separates(&sc, &ids, a, b, 3), "pair {:?}", (a, b));
        }
    }

    #[test]
    fn separation_is_monotone(n in 1..7usize, seed in any::<u64>(), keep in any::<u64>(), extra in any::<u64>()) {
        let sc = random_rects(n, 3, seed);
        let oracle = SeparationOracle::new(&sc).unwrap();
        let keep = keep & ((1 << n) - 1);
        let more = keep | (extra & ((1 << n) - 1));
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if oracle.separates(keep, a, b) {
                prop_assert!(oracle.separates(more, a, b));
            }
        }
        prop_assert!(oracle.separates_all(mask_of(&[]), &[]));
    }
}

/// Every labeling of every small pattern: P-good iff it respects some
/// function from pairs to non-tree edges, and iff it respects some member of
/// the representative family.
#[test]
fn respect_characterizes_p_good_labelings() {
    let mut checked = 0;
    for k in 2..=3usize {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).collect();
        for h in hstar_structures(2) {
            let m = h.edges.len();
            let e0 = h.non_tree.len();
            if m > 4 || e0 == 0 {
                continue;
            }
            let family = representative_family(&h, k, &pairs);
            let all_maps: Vec<RespectMap> = (0..e0.pow(pairs.len() as u32))
                .map(|mut c| {
                    RespectMap(
                        (0..pairs.len())
                            .map(|_| {
                                let x = c % e0;
                                c /= e0;
                                x
                            })
                            .collect(),
                    )
                })
                .collect();
            let labels_count = 1u64 << (k * m);
            for code in 0..labels_count {
                let labels: Vec<u64> = (0..m).map(|t| code >> (k * t) & ((1 << k) - 1)).collect();
                let good = labeling_is_p_good(&h, &labels, &pairs);
                let any_map = all_maps.iter().any(|xi| respects(&h, &labels, xi, &pairs));
                let in_family = family.iter().any(|xi| respects(&h, &labels, xi, &pairs));
                assert_eq!(good, any_map, "{h:?} {labels:?}");
                assert_eq!(good, in_family, "{h:?} {labels:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn generators_are_seed_deterministic() {
    for spec in ["random-rects(5,3)", "random-stars(4,2)", "random-bars(6,3)", "perturbed-ring(5)", "ring(6)"] {
        let spec: GeneratorSpec = spec.parse().unwrap();
        for seed in 0..3 {
            assert_eq!(spec.generate(seed).to_json_string(), spec.generate(seed).to_json_string());
        }
    }
}
