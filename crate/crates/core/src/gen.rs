//! Seeded scene generators.

use crate::geom::{qr, NamedPoint, Point, Scene};
use crate::labeled_graph::{Label, LabeledMultigraph, Mode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `m` trapezoidal blocks forming a closed ring around `s`.
    Ring { m: usize },
    /// `depth` concentric rings of `m` blocks; `t_l` sits just outside ring `l`.
    NestedRings { m: usize, depth: usize },
    /// `w` vertical and `h` horizontal thin bars crossing each other.
    Grid { w: usize, h: usize },
    /// `n` axis-parallel rectangles with distinct coordinates and `k` points.
    RandomRects { n: usize, k: usize },
    /// `n` star-shaped polygons and `k` points.
    RandomStars { n: usize, k: usize },
    /// A ring whose vertices are randomly displaced.
    PerturbedRing { m: usize },
    /// `n` thin horizontal and vertical bars and `k` points off every bar.
    RandomBars { n: usize, k: usize },
}

impl GeneratorSpec {
    pub fn generate(&self, seed: u64) -> Scene {
        match *self {
            GeneratorSpec::Ring { m } => ring(m),
            GeneratorSpec::NestedRings { m, depth } => nested_rings(m, depth),
            GeneratorSpec::Grid { w, h } => grid(w, h),
            GeneratorSpec::RandomRects { n, k } => random_rects(n, k, seed),
            GeneratorSpec::RandomStars { n, k } => random_stars(n, k, seed),
            GeneratorSpec::PerturbedRing { m } => perturbed_ring(m, seed),
            GeneratorSpec::RandomBars { n, k } => random_bars(n, k, seed),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Ring { m } => write!(f, "ring({m})"),
            GeneratorSpec::NestedRings { m, depth } => write!(f, "nested-rings({m},{depth})"),
            GeneratorSpec::Grid { w, h } => write!(f, "grid({w},{h})"),
            GeneratorSpec::RandomRects { n, k } => write!(f, "random-rects({n},{k})"),
            GeneratorSpec::RandomStars { n, k } => write!(f, "random-stars({n},{k})"),
            GeneratorSpec::PerturbedRing { m } => write!(f, "perturbed-ring({m})"),
            GeneratorSpec::RandomBars { n, k } => write!(f, "random-bars({n},{k})"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = String;

    /// Parses `family(a,b,...)`; the point count of random families defaults to 2.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => (s, ""),
        };
        let nums: Vec<usize> = args
            .split(',')
            .filter(|a| !a.trim().is_empty())
            .map(|a| a.trim().parse::<usize>().map_err(|e| format!("bad argument {a:?}: {e}")))
            .collect::<Result<_, _>>()?;
        let arg = |i: usize, default: Option<usize>| -> Result<usize, String> {
            nums.get(i).copied().or(default).ok_or_else(|| format!("{name} needs more arguments"))
        };
        let spec = match name {
            "ring" => GeneratorSpec::Ring { m: arg(0, None)? },
            "nested-rings" => GeneratorSpec::NestedRings { m: arg(0, None)?, depth: arg(1, None)? },
            "grid" => GeneratorSpec::Grid { w: arg(0, None)?, h: arg(1, None)? },
            "random-rects" => GeneratorSpec::RandomRects { n: arg(0, None)?, k: arg(1, Some(2))? },
            "random-stars" => GeneratorSpec::RandomStars { n: arg(0, None)?, k: arg(1, Some(2))? },
            "perturbed-ring" => GeneratorSpec::PerturbedRing { m: arg(0, None)? },
            "random-bars" => GeneratorSpec::RandomBars { n: arg(0, None)?, k: arg(1, Some(2))? },
            _ => return Err(format!("unknown generator family {name:?}")),
        };
        spec.check()?;
        Ok(spec)
    }
}

impl GeneratorSpec {
    fn check(&self) -> Result<(), String> {
        let ok = match *self {
            GeneratorSpec::Ring { m } | GeneratorSpec::PerturbedRing { m } => m >= 3,
            GeneratorSpec::NestedRings { m, depth } => m >= 3 && (1..=3).contains(&depth),
            GeneratorSpec::Grid { w, h } => w >= 2 && h >= 2,
            GeneratorSpec::RandomRects { n, k } | GeneratorSpec::RandomStars { n, k } => n >= 1 && k >= 2,
            GeneratorSpec::RandomBars { n, k } => n >= 3 && k >= 2 && (n - 1) * (n - 1) >= k,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("parameters out of range for {self}"))
        }
    }
}

fn named(name: &str, p: Point) -> NamedPoint {
    NamedPoint { name: name.to_string(), p }
}

fn polar(r: f64, a: f64) -> Point {
    Point::int((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
}

fn overlap_angle(m: usize) -> f64 {
    0.1 * 2.0 * PI / m as f64
}

fn ring_blocks(m: usize, r1: f64, r2: f64, phase: f64) -> Vec<Vec<Point>> {
    let step = 2.0 * PI / m as f64;
    let d = overlap_angle(m);
    (0..m)
        .map(|i| {
            let a = phase + step * i as f64 - d;
            let b = phase + step * (i + 1) as f64 + d;
            vec![polar(r1, a), polar(r2, a), polar(r2, b), polar(r1, b)]
        })
        .collect()
}

fn all_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))).collect()
}

/// `m ≥ 3` overlapping blocks whose union is an annulus around `s`; every
/// block is needed to separate `s` from `t`.
pub fn ring(m: usize) -> Scene {
    assert!(m >= 3, "ring needs at least 3 blocks");
    let blocks = ring_blocks(m, 1000.0, 2000.0, 0.0);
    let pts = vec![named("s", Point::int(0, 0)), named("t", Point::int(4001, 7))];
    Scene::new(blocks, pts, vec![(0, 1)], None)
}

/// Radii of level `l`: inner `1000 * 8^l`, outer twice that.
fn level_radii(l: usize) -> (f64, f64) {
    let r1 = 1000.0 * 8f64.powi(l as i32);
    (r1, 2.0 * r1)
}

/// Concentric rings; pair `(s, t_l)` is separated by exactly the `l`
/// innermost rings, so its optimum is `l * m`.
pub fn nested_rings(m: usize, depth: usize) -> Scene {
    assert!(m >= 3 && depth >= 1);
    let mut blocks = Vec::new();
    let phase = PI / (3.0 * m as f64);
    for l in 0..depth {
        let (r1, r2) = level_radii(l);
        blocks.extend(ring_blocks(m, r1, r2, phase * l as f64));
    }
    let half_span = PI / m as f64 + overlap_angle(m);
    let mut pts = vec![named("s", Point::int(0, 0))];
    for l in 1..=depth {
        let (_, prev_outer) = level_radii(l - 1);
        let r = if l < depth {
            let (next_inner, _) = level_radii(l);
            (prev_outer + next_inner * half_span.cos()) / 2.0
        } else {
            prev_outer * 1.5
        };
        pts.push(named(&format!("t{l}"), polar(r, 0.37)));
    }
    let pairs = (1..=depth).map(|l| (0, l)).collect();
    Scene::new(blocks, pts, pairs, None)
}

/// `w` vertical and `h` horizontal bars; `s` sits in the corner cell, whose
/// four bounding bars form the unique minimum separator.
pub fn grid(w: usize, h: usize) -> Scene {
    assert!(w >= 2 && h >= 2);
    let (w, h) = (w as i64, h as i64);
    let rect = |x0: i64, y0: i64, x1: i64, y1: i64| {
        vec![Point::int(x0, y0), Point::int(x1, y0), Point::int(x1, y1), Point::int(x0, y1)]
    };
    let mut blocks = Vec::new();
    for i in 0..w {
        blocks.push(rect(10 * i, -1, 10 * i + 1, 10 * (h - 1) + 2));
    }
    for j in 0..h {
        blocks.push(rect(-1, 10 * j, 10 * (w - 1) + 2, 10 * j + 1));
    }
    let pts = vec![named("s", Point::int(2, 2)), named("t", Point::int(-5, -5))];
    Scene::new(blocks, pts, vec![(0, 1)], None)
}

fn point_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| match i {
            0 => "s".to_string(),
            1 => "t".to_string(),
            _ => format!("a{i}"),
        })
        .collect()
}

/// Random rectangles with pairwise distinct coordinates in `[0, 4n)`; points
/// at half-integer positions, so nothing lies on a boundary. Pairs are all
/// pairs of points.
pub fn random_rects(n: usize, k: usize, seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = (4 * n) as i64;
    let mut xs: Vec<i64> = (0..span).collect();
    let mut ys: Vec<i64> = (0..span).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let blocks: Vec<Vec<Point>> = (0..n)
        .map(|i| {
            let (x0, x1) = (xs[2 * i].min(xs[2 * i + 1]), xs[2 * i].max(xs[2 * i + 1]));
            let (y0, y1) = (ys[2 * i].min(ys[2 * i + 1]), ys[2 * i].max(ys[2 * i + 1]));
            vec![Point::int(x0, y0), Point::int(x1, y0), Point::int(x1, y1), Point::int(x0, y1)]
        })
        .collect();
    let mut used = Vec::new();
    let pts = point_names(k)
        .into_iter()
        .map(|name| loop {
            let p = Point::new(
                qr(2 * rng.gen_range(-1..span + 1) + 1, 2),
                qr(2 * rng.gen_range(-1..span + 1) + 1, 2),
            );
            if !used.contains(&p) {
                used.push(p.clone());
                break named(&name, p);
            }
        })
        .collect();
    Scene::new(blocks, pts, all_pairs(k), None)
}

/// Random star-shaped polygons (5 to 8 vertices) around random centers;
/// resampled until the scene validates.
pub fn random_stars(n: usize, k: usize, seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extent = 12.0 * (n as f64).sqrt() + 10.0;
    loop {
        let mut blocks = Vec::new();
        for _ in 0..n {
            let cx = rng.gen_range(0.0..extent);
            let cy = rng.gen_range(0.0..extent);
            let m = rng.gen_range(5..=8);
            let mut angles: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let ring: Vec<Point> = angles
                .iter()
                .map(|&a| {
                    let r = rng.gen_range(2.0..9.0);
                    Point::new(
                        qr(((cx + r * a.cos()) * 64.0).round() as i64, 64),
                        qr(((cy + r * a.sin()) * 64.0).round() as i64, 64),
                    )
                })
                .collect();
            blocks.push(ring);
        }
        let pts = point_names(k)
            .into_iter()
            .map(|name| {
                let x = rng.gen_range(-2.0..extent + 2.0);
                let y = rng.gen_range(-2.0..extent + 2.0);
                named(&name, Point::new(qr((x * 128.0).round() as i64 * 2 + 1, 256), qr((y * 128.0).round() as i64 * 2 + 1, 256)))
            })
            .collect();
        let sc = Scene::new(blocks, pts, all_pairs(k), None);
        if sc.validate().is_empty() {
            return sc;
        }
    }
}

/// Nearly full-length thin bars forming a rough grid with points inside it: even-indexed bars are vertical, odd
/// ones horizontal. Bar sides sit at 0 or 1 mod 4 on distinct grid lines,
/// bar ends at 2 mod 4 and points at 3 mod 4, so no point is on a boundary
/// and no two boundaries overlap.
pub fn random_bars(n: usize, k: usize, seed: u64) -> Scene {
    assert!(n >= 3 && (n - 1) * (n - 1) >= k, "random_bars needs n >= 3 and room for {k} points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = n as i64;
    let mut xs: Vec<i64> = (0..span).collect();
    let mut ys: Vec<i64> = (0..span).collect();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let blocks: Vec<Vec<Point>> = (0..n)
        .map(|i| {
            let lo = 4 * rng.gen_range(-3..=1).max(-1) + 2;
            let hi = (4 * rng.gen_range(span - 2..=span + 2).min(span) + 2).max(lo + 4);
            let (x0, x1, y0, y1) = if i % 2 == 0 {
                (4 * xs[i], 4 * xs[i] + 1, lo, hi)
            } else {
                (lo, hi, 4 * ys[i], 4 * ys[i] + 1)
            };
            vec![Point::int(x0, y0), Point::int(x1, y0), Point::int(x1, y1), Point::int(x0, y1)]
        })
        .collect();
    let mut used = Vec::new();
    let pts = point_names(k)
        .into_iter()
        .map(|name| loop {
            let p = Point::int(4 * rng.gen_range(0..span - 1) + 3, 4 * rng.gen_range(0..span - 1) + 3);
            if !used.contains(&p) {
                used.push(p.clone());
                break named(&name, p);
            }
        })
        .collect();
    Scene::new(blocks, pts, all_pairs(k), None)
}

/// `ring(m)` with every vertex moved by up to 40 units; resampled until valid.
pub fn perturbed_ring(m: usize, seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = ring(m);
    loop {
        let blocks: Vec<Vec<Point>> = base
            .obstacles
            .iter()
            .map(|o| {
                o.ring
                    .iter()
                    .map(|p| p.offset(&qr(rng.gen_range(-40..=40), 1), &qr(rng.gen_range(-40..=40), 1)))
                    .collect()
            })
            .collect();
        let sc = Scene::new(blocks, base.points.clone(), base.pairs.clone(), None);
        if sc.validate().is_empty() {
            return sc;
        }
    }
}

/// Scene `seed` of the small multi-point corpus: `random-bars` with 4 to 6
/// bars and 2 or 3 points, except every fourth seed, which is `random-rects`
/// with 3 to 5 rectangles and 3 points.
pub fn small_psep_scene(seed: u64) -> Scene {
    if seed % 4 == 3 {
        random_rects(3 + (seed % 3) as usize, 3, seed)
    } else {
        random_bars(4 + (seed % 3) as usize, 2 + (seed / 4 % 2) as usize, seed)
    }
}

/// Random labeled multigraph on `n` vertices with `m` edges (self-loops and
/// parallel edges allowed). Each bit of each label is uniform and is left
/// free with probability `free`. Width 1 gives an (s, t)-mode graph.
pub fn random_labeled_graph(n: usize, m: usize, width: usize, free: f64, seed: u64) -> LabeledMultigraph {
    assert!(n >= 1 && (1..=64).contains(&width));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mode = if width == 1 { Mode::St } else { Mode::Points(width) };
    let mut g = LabeledMultigraph::new(n, mode);
    for _ in 0..m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let bits: u64 = rng.gen();
        let mut mask = 0u64;
        for i in 0..width {
            if !rng.gen_bool(free) {
                mask |= 1 << i;
            }
        }
        g.add_edge(u, v, Label::masked(width, bits, mask));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_scenes_validate() {
        let mut specs: Vec<GeneratorSpec> = (3..=8).map(|m| GeneratorSpec::Ring { m }).collect();
        specs.push(GeneratorSpec::NestedRings { m: 3, depth: 2 });
        specs.push(GeneratorSpec::NestedRings { m: 4, depth: 3 });
        specs.push(GeneratorSpec::Grid { w: 3, h: 2 });
        specs.push(GeneratorSpec::RandomRects { n: 7, k: 3 });
        specs.push(GeneratorSpec::RandomStars { n: 6, k: 2 });
        specs.push(GeneratorSpec::PerturbedRing { m: 5 });
        specs.push(GeneratorSpec::RandomBars { n: 6, k: 3 });
        for spec in specs {
            for seed in 0..3 {
                let sc = spec.generate(seed);
                assert_eq!(sc.validate(), vec![], "{spec} seed {seed}");
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["ring(4)", "nested-rings(3,2)", "grid(2,3)", "random-rects(5,3)", "random-stars(4,2)", "perturbed-ring(6)", "random-bars(5,3)"] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("ring(2)".parse::<GeneratorSpec>().is_err());
        assert!("blob(3)".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn deterministic() {
        let a = random_rects(6, 2, 9).to_json_string();
        let b = random_rects(6, 2, 9).to_json_string();
        assert_eq!(a, b);
    }
}
