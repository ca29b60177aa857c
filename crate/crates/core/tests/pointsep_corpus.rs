use sepgraph::gen::small_psep_scene;
use sepgraph::pointsep::{all_pairs, brute_force_min_separator, gps_solve, verify_result, Caps, Strategy};
use sepgraph::{Error, Scene};
use std::time::Instant;

const SOLVABLE: usize = 15;
const UNSOLVABLE: usize = 5;

/// Seeded scenes with n <= 6 and k <= 3, keeping the first `SOLVABLE` ones
/// with an all-pairs separator and the first `UNSOLVABLE` without.
fn corpus(caps: &Caps) -> Vec<(Scene, Result<Vec<usize>, Error>)> {
    let (mut yes, mut no) = (Vec::new(), Vec::new());
    for seed in 0u64.. {
        if yes.len() >= SOLVABLE && no.len() >= UNSOLVABLE {
            break;
        }
        let sc = small_psep_scene(seed);
        match brute_force_min_separator(&sc, &all_pairs(&sc), caps.brute_n) {
            Ok(sep) if yes.len() < SOLVABLE => yes.push((sc, Ok(sep))),
            Err(Error::NoSeparatorExists) if no.len() < UNSOLVABLE => no.push((sc, Err(Error::NoSeparatorExists))),
            Ok(_) | Err(Error::NoSeparatorExists) => {}
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
    yes.extend(no);
    yes
}

#[test]
fn strategies_match_brute_force() {
    let caps = Caps::default();
    let t0 = Instant::now();
    let scenes = corpus(&caps);
    let mut nonempty = 0;
    for (i, (sc, want)) in scenes.iter().enumerate() {
        let pairs = all_pairs(sc);
        if matches!(want, Ok(w) if !w.is_empty()) {
            nonempty += 1;
        }
        for s in [Strategy::Section5, Strategy::Section6] {
            let got = gps_solve(sc, &pairs, s, 0, &caps);
            match (want, &got) {
                (Ok(w), Ok(r)) => {
                    assert_eq!(r.separator.len(), w.len(), "scene {i} {s}");
                    verify_result(sc, r).unwrap();
                }
                (Err(Error::NoSeparatorExists), Err(Error::NoSeparatorExists)) => {}
                _ => panic!("scene {i} {s}: brute {want:?} vs {:?}", got.map(|r| r.separator)),
            }
        }
    }
    assert!(nonempty >= SOLVABLE / 2, "only {nonempty} scenes need a nonempty separator");
    eprintln!("{} scenes, {nonempty} with nonempty separators, {:?}", scenes.len(), t0.elapsed());
}
