use super::graph::Mode;
use crate::arrangement::{boundary_segments, Arrangement};
use crate::geom::{q, qr, segment_intersection, Intersection, Point, Polyline, Scene, Segment, Q};
use crate::Error;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

const MAX_ATTEMPTS: usize = 64;

/// Where a curve ends: a named point (by index) or the anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Terminal {
    Named(usize),
    Anchor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceCurveSet {
    pub mode: Mode,
    pub curves: Vec<Polyline>,
    pub ends: Vec<(Terminal, Terminal)>,
}

impl ReferenceCurveSet {
    /// Named points at the ends of curve `i`.
    pub fn named_ends(&self, i: usize) -> Vec<usize> {
        let (a, b) = self.ends[i];
        [a, b]
            .into_iter()
            .filter_map(|t| match t {
                Terminal::Named(k) => Some(k),
                Terminal::Anchor => None,
            })
            .collect()
    }
}

fn terminals(sc: &Scene, mode: Mode) -> Result<Vec<(Terminal, Terminal)>, Error> {
    Ok(match mode {
        Mode::St => {
            let (s, t) = sc.st_pair().ok_or(Error::MissingPair)?;
            vec![(Terminal::Named(s), Terminal::Named(t))]
        }
        Mode::Pairs(p) => {
            if p != sc.pairs.len() {
                return Err(Error::SizeMismatch(p, sc.pairs.len()));
            }
            sc.pairs.iter().map(|&(a, b)| (Terminal::Named(a), Terminal::Named(b))).collect()
        }
        Mode::Points(k) => {
            if k != sc.points.len() {
                return Err(Error::SizeMismatch(k, sc.points.len()));
            }
            (0..k).map(|i| (Terminal::Named(i), Terminal::Anchor)).collect()
        }
    })
}

/// The `c`-th fraction of 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
fn farey(c: usize) -> Q {
    let mut k = 0;
    let mut d: i64 = 2;
    loop {
        for n in 1..d {
            if n.gcd(&d) == 1 {
                if k == c {
                    return qr(n, d);
                }
                k += 1;
            }
        }
        d += 1;
    }
}

struct Router<'a> {
    arr: &'a Arrangement,
    order: Option<Vec<usize>>,
    seed: u64,
    edge_uses: BTreeMap<usize, usize>,
    sample_uses: BTreeMap<usize, usize>,
    /// Edges between each unordered face pair, ascending.
    between: BTreeMap<(usize, usize), Vec<usize>>,
}

impl<'a> Router<'a> {
    fn new(arr: &'a Arrangement, seed: u64) -> Self {
        let mut between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in 0..arr.edges.len() {
            let (l, r) = arr.edge_faces(e);
            if l != r {
                between.entry((l.min(r), l.max(r))).or_default().push(e);
            }
        }
        let order = (seed != 0).then(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..arr.num_faces()).collect();
            perm.shuffle(&mut rng);
            perm
        });
        Router { arr, order, seed, edge_uses: BTreeMap::new(), sample_uses: BTreeMap::new(), between }
    }

    /// Points just inside `f` and just inside `g` on either side of edge `e`.
    fn crossing(&mut self, e: usize, f: usize, g: usize) -> Option<(Point, Point)> {
        let arr = self.arr;
        let h = if arr.edge_faces(e).0 == f { 2 * e } else { 2 * e + 1 };
        let a = &arr.vertices[arr.half_edges[h].origin];
        let b = &arr.vertices[arr.half_edges[arr.half_edges[h].twin].origin];
        let uses = self.edge_uses.entry(e).or_insert(0);
        let t = farey(*uses + (self.seed % 7) as usize);
        *uses += 1;
        let x = a.lerp(b, &t);
        let (dx, dy) = b.sub(a);
        let (nx, ny) = (-dy, dx);
        let mut eps = qr(1, 4);
        for _ in 0..60 {
            let pin = x.offset(&(&nx * &eps), &(&ny * &eps));
            let pout = x.offset(&(-&nx * &eps), &(-&ny * &eps));
            let seg = Segment::new(pin.clone(), pout.clone());
            let clean = (0..arr.edges.len())
                .all(|o| o == e || segment_intersection(&seg, &arr.segment(o)) == Intersection::Empty);
            if clean && arr.locate(&pin).ok() == Some(f) && arr.locate(&pout).ok() == Some(g) {
                return Some((pin, pout));
            }
            eps = eps / q(2);
        }
        None
    }

    fn interior_point(&mut self, g: usize, entry: &Point) -> Point {
        let s = &self.arr.faces[g].sample;
        let u = self.sample_uses.entry(g).or_insert(0);
        let p = if *u == 0 { s.clone() } else { s.lerp(entry, &qr(1, 2 + *u as i64)) };
        *u += 1;
        p
    }

    fn route(&mut self, a: &Point, b: &Point) -> Result<Polyline, Error> {
        if a == b {
            return Err(Error::RoutingFailed("curve endpoints coincide".into()));
        }
        let fa = self.arr.locate(a)?;
        let fb = self.arr.locate(b)?;
        let path = self
            .arr
            .face_graph()
            .shortest_path(fa, fb, self.order.as_deref())
            .ok_or_else(|| Error::RoutingFailed("endpoints in disconnected faces".into()))?;
        let mut verts = vec![a.clone()];
        for (k, w) in path.windows(2).enumerate() {
            let (f, g) = (w[0], w[1]);
            let cands = &self.between[&(f.min(g), f.max(g))];
            let e = cands[(self.seed as usize + k) % cands.len()];
            let (pin, pout) = self
                .crossing(e, f, g)
                .ok_or_else(|| Error::RoutingFailed(format!("no clean crossing of edge {e}")))?;
            verts.push(pin);
            verts.push(pout.clone());
            if k + 2 < path.len() {
                verts.push(self.interior_point(g, &pout));
            }
        }
        verts.push(b.clone());
        verts.dedup();
        Ok(Polyline::new(verts))
    }
}

/// Routes the curves of `mode` with the default seed.
pub fn route_reference_curves(sc: &Scene, mode: Mode) -> Result<ReferenceCurveSet, Error> {
    route_reference_curves_seeded(sc, mode, 0)
}

/// Routes one curve per terminal pair through the face graph of the obstacle
/// arrangement. Different seeds change face tie-breaking and crossing
/// parameters. Curves failing the transversality checks are perturbed and
/// re-checked.
pub fn route_reference_curves_seeded(sc: &Scene, mode: Mode, seed: u64) -> Result<ReferenceCurveSet, Error> {
    let violations = sc.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidScene(violations));
    }
    let ends = terminals(sc, mode)?;
    let anchor = sc.effective_anchor();
    let pos = |t: Terminal| match t {
        Terminal::Named(i) => sc.points[i].p.clone(),
        Terminal::Anchor => anchor.clone(),
    };
    let arr = Arrangement::build(&boundary_segments(&sc.obstacles))?;
    let mut router = Router::new(&arr, seed);
    let mut curves = Vec::new();
    for &(a, b) in &ends {
        curves.push(router.route(&pos(a), &pos(b))?);
    }
    let mut rc = ReferenceCurveSet { mode, curves, ends };
    let (lo, hi) = sc.bbox();
    let diam = (&hi.x - &lo.x) + (&hi.y - &lo.y) + q(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut last = match validate_curves(sc, &rc, &arr) {
        Ok(()) => return Ok(rc),
        Err(msg) => msg,
    };
    let base = rc.curves.clone();
    for attempt in 0..MAX_ATTEMPTS {
        log::debug!("reference curves rejected ({last}); perturbing, attempt {attempt}");
        let scale = &diam / q(64) / q(1i64 << attempt.min(40));
        rc.curves = base.iter().map(|c| jitter(c, &scale, &mut rng)).collect();
        match validate_curves(sc, &rc, &arr) {
            Ok(()) => return Ok(rc),
            Err(msg) => last = msg,
        }
    }
    Err(Error::RoutingFailed(last))
}

fn jitter(c: &Polyline, scale: &Q, rng: &mut ChaCha8Rng) -> Polyline {
    let mut v = c.vertices.clone();
    if v.len() == 2 {
        let m = v[0].midpoint(&v[1]);
        v.insert(1, m);
    }
    let n = v.len();
    for p in v.iter_mut().take(n - 1).skip(1) {
        let dx = Q::new(rng.gen_range(-1000i64..=1000).into(), 1000.into()) * scale;
        let dy = Q::new(rng.gen_range(-1000i64..=1000).into(), 1000.into()) * scale;
        *p = p.offset(&dx, &dy);
    }
    v.dedup();
    Polyline::new(v)
}

/// Checks the transversality invariants of a curve set against the obstacle
/// arrangement `arr` of `sc`.
pub fn validate_curves(sc: &Scene, rc: &ReferenceCurveSet, arr: &Arrangement) -> Result<(), String> {
    let anchor = sc.effective_anchor();
    let arr_vertices: BTreeSet<&Point> = arr.vertices.iter().collect();
    let obstacle_edges: Vec<Segment> = (0..arr.edges.len()).map(|e| arr.segment(e)).collect();
    for (i, c) in rc.curves.iter().enumerate() {
        if !c.is_well_formed() {
            return Err(format!("curve {i} is degenerate"));
        }
        let own: Vec<usize> = rc.named_ends(i);
        let forbidden: Vec<&Point> = sc
            .obstacles
            .iter()
            .map(|o| &o.ref_point)
            .chain(sc.points.iter().enumerate().filter(|(k, _)| !own.contains(k)).map(|(_, p)| &p.p))
            .chain((rc.ends[i].1 != Terminal::Anchor).then_some(&anchor))
            .collect();
        for v in &c.vertices[1..c.vertices.len() - 1] {
            if arr.on_edge(v) {
                return Err(format!("curve {i} has a vertex on a boundary"));
            }
        }
        for s in c.segments() {
            if let Some(p) = forbidden.iter().find(|p| s.contains(p)) {
                return Err(format!("curve {i} passes through a reserved point {p:?}"));
            }
            for o in &obstacle_edges {
                match segment_intersection(&s, o) {
                    Intersection::Empty => {}
                    Intersection::Overlap(..) => return Err(format!("curve {i} overlaps a boundary")),
                    Intersection::Point(p) => {
                        if arr_vertices.contains(&p) || p == s.a || p == s.b {
                            return Err(format!("curve {i} touches the arrangement at a vertex"));
                        }
                    }
                }
            }
        }
    }
    let terminal_pos = |t: Terminal| match t {
        Terminal::Named(k) => sc.points[k].p.clone(),
        Terminal::Anchor => anchor.clone(),
    };
    // curve-curve: no overlaps and no shared vertices other than a common terminal
    let segs: Vec<(usize, usize, Segment)> = rc
        .curves
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.segments().enumerate().map(move |(k, s)| (i, k, s)))
        .collect();
    for x in 0..segs.len() {
        for y in (x + 1)..segs.len() {
            let (i, k, s) = &segs[x];
            let (j, l, t) = &segs[y];
            match segment_intersection(s, t) {
                Intersection::Empty => {}
                Intersection::Overlap(..) => return Err(format!("curves {i} and {j} overlap")),
                Intersection::Point(p) => {
                    let adjacent = i == j && l == &(k + 1);
                    if adjacent {
                        if p != t.a {
                            return Err(format!("curve {i} folds back on itself"));
                        }
                        continue;
                    }
                    let at_vertex = p == s.a || p == s.b || p == t.a || p == t.b;
                    if at_vertex {
                        let shared = i != j
                            && [rc.ends[*i].0, rc.ends[*i].1]
                                .into_iter()
                                .filter(|t| [rc.ends[*j].0, rc.ends[*j].1].contains(t))
                                .any(|t| terminal_pos(t) == p);
                        if !shared {
                            return Err(format!("curves {i} and {j} meet at a vertex"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{scene_empty, scene_ring2};

    #[test]
    fn farey_order() {
        let got: Vec<Q> = (0..5).map(farey).collect();
        assert_eq!(got, vec![qr(1, 2), qr(1, 3), qr(2, 3), qr(1, 4), qr(3, 4)]);
    }

    #[test]
    fn empty_scene_straight_segment() {
        let sc = scene_empty();
        let rc = route_reference_curves(&sc, Mode::St).unwrap();
        assert_eq!(rc.curves[0].vertices, vec![Point::int(0, 0), Point::int(5, 1)]);
    }

    #[test]
    fn ring2_curve_is_transverse() {
        let sc = scene_ring2();
        for seed in 0..5 {
            let rc = route_reference_curves_seeded(&sc, Mode::St, seed).unwrap();
            let c = &rc.curves[0];
            assert_eq!(c.first(), sc.point("s").unwrap());
            assert_eq!(c.last(), sc.point("t").unwrap());
            for o in &sc.obstacles {
                crate::geom::crossing_parity(c, &o.boundary()).unwrap();
            }
        }
    }

    #[test]
    fn points_mode_curves_share_only_anchor() {
        let sc = scene_ring2();
        let rc = route_reference_curves(&sc, Mode::Points(2)).unwrap();
        assert_eq!(rc.curves.len(), 2);
        let o = sc.effective_anchor();
        assert_eq!(rc.curves[0].last(), &o);
        assert_eq!(rc.curves[1].last(), &o);
    }
}
