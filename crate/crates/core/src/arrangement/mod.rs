//! Planar arrangements of provenance-tagged segments, point location, and the
//! geometric separation oracle.

mod oracle;
mod slab;

pub use oracle::{face_inside_union, ids_of, mask_of, separates_geometric, SeparationOracle};
pub use slab::{free_path, polyline_avoids, SlabMap};

use crate::geom::{
    angle_cmp, fmt_q, ring_area2, segment_intersection, winding_number, Intersection, Point,
    Segment, Q,
};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Source {
    Boundary(usize),
    Curve(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub source: Source,
    /// Index of the originating input segment.
    pub segment: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("input segments {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("input segment {0} has zero length")]
    Degenerate(usize),
    #[error("point lies on an arrangement edge or vertex")]
    OnBoundary,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    pub face: usize,
    pub edge: usize,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub prov: Provenance,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// One half-edge per boundary cycle.
    pub cycles: Vec<usize>,
    pub unbounded: bool,
    /// A point strictly inside the face.
    pub sample: Point,
}

/// Doubly connected edge list. Edge `e` owns half-edges `2e` (a→b) and `2e+1` (b→a).
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub vertices: Vec<Point>,
    pub edges: Vec<Edge>,
    pub half_edges: Vec<HalfEdge>,
    pub faces: Vec<Face>,
    /// Bounded faces: (outer cycle vertex ring, twice its area).
    outer: Vec<Option<(Vec<Point>, Q)>>,
    pub components: usize,
}

/// The unbounded face always has id 0.
pub const UNBOUNDED: usize = 0;

impl Arrangement {
    pub fn build(segments: &[(Segment, Provenance)]) -> Result<Arrangement, ArrangementError> {
        let n = segments.len();
        for (i, (s, _)) in segments.iter().enumerate() {
            if s.is_degenerate() {
                return Err(ArrangementError::Degenerate(i));
            }
        }
        let mut splits: Vec<Vec<Point>> = segments.iter().map(|(s, _)| vec![s.a.clone(), s.b.clone()]).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                match segment_intersection(&segments[i].0, &segments[j].0) {
                    Intersection::Empty => {}
                    Intersection::Overlap(..) => return Err(ArrangementError::Overlap(i, j)),
                    Intersection::Point(p) => {
                        splits[i].push(p.clone());
                        splits[j].push(p);
                    }
                }
            }
        }
        let mut vid: BTreeMap<Point, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, (s, prov)) in segments.iter().enumerate() {
            let mut pts: Vec<(Q, Point)> = splits[i].drain(..).map(|p| (s.param(&p), p)).collect();
            pts.sort_by(|a, b| a.0.cmp(&b.0));
            pts.dedup_by(|a, b| a.0 == b.0);
            let ids: Vec<usize> = pts
                .into_iter()
                .map(|(_, p)| {
                    *vid.entry(p.clone()).or_insert_with(|| {
                        vertices.push(p);
                        vertices.len() - 1
                    })
                })
                .collect();
            for w in ids.windows(2) {
                edges.push(Edge { a: w[0], b: w[1], prov: *prov });
            }
        }
        Ok(Self::from_edges(vertices, edges))
    }

    fn from_edges(vertices: Vec<Point>, edges: Vec<Edge>) -> Arrangement {
        let nv = vertices.len();
        let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(edges.len() * 2);
        for (e, ed) in edges.iter().enumerate() {
            half_edges.push(HalfEdge { origin: ed.a, twin: 2 * e + 1, next: usize::MAX, face: usize::MAX, edge: e });
            half_edges.push(HalfEdge { origin: ed.b, twin: 2 * e, next: usize::MAX, face: usize::MAX, edge: e });
        }
        let dest = |h: usize| half_edges[half_edges[h].twin].origin;
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..half_edges.len() {
            out[half_edges[h].origin].push(h);
        }
        let mut pos = vec![0usize; half_edges.len()];
        for (v, list) in out.iter_mut().enumerate() {
            let dirs: BTreeMap<usize, (Q, Q)> =
                list.iter().map(|&h| (h, vertices[dest(h)].sub(&vertices[v]))).collect();
            list.sort_by(|a, b| angle_cmp(&dirs[a], &dirs[b]));
            for (i, &h) in list.iter().enumerate() {
                pos[h] = i;
            }
        }
        let mut nexts = vec![0usize; half_edges.len()];
        for h in 0..half_edges.len() {
            let t = half_edges[h].twin;
            let v = half_edges[t].origin;
            let d = out[v].len();
            nexts[h] = out[v][(pos[t] + d - 1) % d];
        }
        for (h, nx) in nexts.into_iter().enumerate() {
            half_edges[h].next = nx;
        }

        // boundary cycles
        let mut cycle_of = vec![usize::MAX; half_edges.len()];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for h0 in 0..half_edges.len() {
            if cycle_of[h0] != usize::MAX {
                continue;
            }
            let c = cycles.len();
            let mut cyc = Vec::new();
            let mut h = h0;
            loop {
                cycle_of[h] = c;
                cyc.push(h);
                h = half_edges[h].next;
                if h == h0 {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let rings: Vec<Vec<Point>> = cycles
            .iter()
            .map(|c| c.iter().map(|&h| vertices[half_edges[h].origin].clone()).collect())
            .collect();
        let areas: Vec<Q> = rings.iter().map(|r| ring_area2(r)).collect();

        let mut arr = Arrangement {
            vertices,
            edges,
            half_edges,
            faces: vec![Face { cycles: Vec::new(), unbounded: true, sample: Point::int(0, 0) }],
            outer: vec![None],
            components: 0,
        };
        let mut cycle_face = vec![usize::MAX; cycles.len()];
        for (c, cyc) in cycles.iter().enumerate() {
            if areas[c].is_positive() {
                let f = arr.faces.len();
                let sample = arr.sample_left_of(cyc[0]);
                arr.faces.push(Face { cycles: vec![cyc[0]], unbounded: false, sample });
                arr.outer.push(Some((rings[c].clone(), areas[c].clone())));
                cycle_face[c] = f;
            }
        }
        for (c, cyc) in cycles.iter().enumerate() {
            if cycle_face[c] != usize::MAX {
                continue;
            }
            let p = arr.sample_left_of(cyc[0]);
            let f = arr.innermost(&p);
            arr.faces[f].cycles.push(cyc[0]);
            cycle_face[c] = f;
        }
        for (c, cyc) in cycles.iter().enumerate() {
            for &h in cyc {
                arr.half_edges[h].face = cycle_face[c];
            }
        }
        arr.faces[UNBOUNDED].sample = arr.far_point();
        arr.components = arr.count_components();
        arr
    }

    fn count_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len()).filter(|&v| find(&mut parent, v) == v).count()
    }

    fn far_point(&self) -> Point {
        let mut hi = Point::int(0, 0);
        for (i, v) in self.vertices.iter().enumerate() {
            if i == 0 || v.x > hi.x {
                hi.x = v.x.clone();
            }
            if i == 0 || v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        hi.offset(&crate::geom::q(1), &crate::geom::q(1))
    }

    /// A point strictly to the left of half-edge `h`, inside its face.
    fn sample_left_of(&self, h: usize) -> Point {
        let he = &self.half_edges[h];
        let a = &self.vertices[he.origin];
        let b = &self.vertices[self.half_edges[he.twin].origin];
        let m = a.midpoint(b);
        let (dx, dy) = b.sub(a);
        let n = (-dy, dx);
        let mut best: Option<Q> = None;
        for (e, ed) in self.edges.iter().enumerate() {
            if e == he.edge {
                continue;
            }
            if let Some(t) = ray_hit(&m, &n, &self.vertices[ed.a], &self.vertices[ed.b]) {
                if best.as_ref().map_or(true, |b| &t < b) {
                    best = Some(t);
                }
            }
        }
        let t = best.map(|t| t / crate::geom::q(2)).unwrap_or_else(|| crate::geom::q(1));
        m.offset(&(&n.0 * &t), &(&n.1 * &t))
    }

    /// Face containing `p`, assuming `p` is off every edge.
    fn innermost(&self, p: &Point) -> usize {
        let mut best: Option<(usize, &Q)> = None;
        for (f, o) in self.outer.iter().enumerate() {
            if let Some((ring, area)) = o {
                if winding_number(p, ring) != 0 && best.map_or(true, |(_, a)| area < a) {
                    best = Some((f, area));
                }
            }
        }
        best.map(|(f, _)| f).unwrap_or(UNBOUNDED)
    }

    pub fn on_edge(&self, p: &Point) -> bool {
        self.edges
            .iter()
            .any(|e| Segment::new(self.vertices[e.a].clone(), self.vertices[e.b].clone()).contains(p))
    }

    /// Face whose interior contains `p`.
    pub fn locate(&self, p: &Point) -> Result<usize, ArrangementError> {
        if self.on_edge(p) {
            return Err(ArrangementError::OnBoundary);
        }
        Ok(self.innermost(p))
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Faces left and right of edge `e` (left of a→b, left of b→a).
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        (self.half_edges[2 * e].face, self.half_edges[2 * e + 1].face)
    }

    pub fn segment(&self, e: usize) -> Segment {
        Segment::new(self.vertices[self.edges[e].a].clone(), self.vertices[self.edges[e].b].clone())
    }

    /// Half-edges leaving `v`.
    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        (0..self.half_edges.len()).filter(|&h| self.half_edges[h].origin == v).collect()
    }

    /// V − E + F − (1 + C); zero on a valid subdivision.
    pub fn euler_defect(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        let f = self.faces.len() as i64;
        v - e + f - 1 - self.components as i64
    }

    pub fn face_graph(&self) -> FaceGraph {
        let mut adj: BTreeMap<(usize, usize), BTreeSet<Provenance>> = BTreeMap::new();
        for (e, ed) in self.edges.iter().enumerate() {
            let (l, r) = self.edge_faces(e);
            if l != r {
                adj.entry((l.min(r), l.max(r))).or_default().insert(ed.prov);
            }
        }
        FaceGraph { faces: self.faces.len(), adj }
    }

    /// Outer boundary vertex ring of a bounded face.
    pub fn outer_ring(&self, f: usize) -> Option<&[Point]> {
        self.outer.get(f).and_then(|o| o.as_ref()).map(|(r, _)| r.as_slice())
    }

    pub fn cycle_vertices(&self, h0: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut h = h0;
        loop {
            out.push(self.half_edges[h].origin);
            h = self.half_edges[h].next;
            if h == h0 {
                break;
            }
        }
        out
    }

    pub fn dump(&self) -> ArrangementDump {
        let pt = |p: &Point| [fmt_q(&p.x), fmt_q(&p.y)];
        ArrangementDump {
            vertices: self.vertices.iter().map(pt).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDump { a: e.a, b: e.b, provenance: e.prov })
                .collect(),
            faces: self
                .faces
                .iter()
                .enumerate()
                .map(|(id, f)| FaceDump {
                    id,
                    unbounded: f.unbounded,
                    cycles: f.cycles.iter().map(|&h| self.cycle_vertices(h)).collect(),
                    sample: pt(&f.sample),
                })
                .collect(),
        }
    }
}

/// First positive ray parameter where `m + t·n` meets segment `p`–`q`.
fn ray_hit(m: &Point, n: &(Q, Q), p: &Point, q: &Point) -> Option<Q> {
    let (ex, ey) = q.sub(p);
    let denom = &n.0 * &ey - &n.1 * &ex;
    let (wx, wy) = p.sub(m);
    if denom.is_zero() {
        // parallel; only a collinear segment can be hit
        if !(&wx * &n.1 - &wy * &n.0).is_zero() {
            return None;
        }
        let nn = &n.0 * &n.0 + &n.1 * &n.1;
        let tp = (&wx * &n.0 + &wy * &n.1) / &nn;
        let (vx, vy) = q.sub(m);
        let tq = (&vx * &n.0 + &vy * &n.1) / &nn;
        let lo = if tp < tq { tp.clone() } else { tq.clone() };
        let hi = if tp < tq { tq } else { tp };
        if hi.is_positive() {
            return Some(if lo.is_positive() { lo } else { Q::zero() });
        }
        return None;
    }
    let t = (&wx * &ey - &wy * &ex) / &denom;
    let s = (&wx * &n.1 - &wy * &n.0) / &denom;
    if t.is_positive() && !s.is_negative() && s <= Q::from_integer(1.into()) {
        Some(t)
    } else {
        None
    }
}

/// Dual graph: faces adjacent across at least one edge, annotated with provenances.
#[derive(Clone, Debug)]
pub struct FaceGraph {
    pub faces: usize,
    pub adj: BTreeMap<(usize, usize), BTreeSet<Provenance>>,
}

impl FaceGraph {
    pub fn neighbors(&self, f: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .adj
            .keys()
            .filter_map(|&(a, b)| if a == f { Some(b) } else if b == f { Some(a) } else { None })
            .collect();
        v.sort_unstable();
        v
    }

    /// BFS path of faces; ties go to the smallest face id unless `order`
    /// supplies another rank per face.
    pub fn shortest_path(&self, from: usize, to: usize, order: Option<&[usize]>) -> Option<Vec<usize>> {
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); self.faces];
        for &(a, b) in self.adj.keys() {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        for l in nbrs.iter_mut() {
            match order {
                Some(o) => l.sort_by_key(|&f| o[f]),
                None => l.sort_unstable(),
            }
        }
        let mut prev = vec![usize::MAX; self.faces];
        let mut seen = vec![false; self.faces];
        seen[from] = true;
        let mut dq = VecDeque::from([from]);
        while let Some(f) = dq.pop_front() {
            if f == to {
                break;
            }
            for &g in &nbrs[f] {
                if !seen[g] {
                    seen[g] = true;
                    prev[g] = f;
                    dq.push_back(g);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = vec![to];
        let mut f = to;
        while f != from {
            f = prev[f];
            path.push(f);
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeDump {
    pub a: usize,
    pub b: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceDump {
    pub id: usize,
    pub unbounded: bool,
    pub cycles: Vec<Vec<usize>>,
    pub sample: [String; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementDump {
    pub vertices: Vec<[String; 2]>,
    pub edges: Vec<EdgeDump>,
    pub faces: Vec<FaceDump>,
}

/// Segments of obstacle boundaries tagged with their obstacle id.
pub fn boundary_segments<'a>(obstacles: impl IntoIterator<Item = &'a crate::geom::Obstacle>) -> Vec<(Segment, Provenance)> {
    let mut out = Vec::new();
    for o in obstacles {
        for (i, s) in o.edges().enumerate() {
            out.push((s, Provenance { source: Source::Boundary(o.id), segment: i }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{q, qr};

    fn prov(i: usize) -> Provenance {
        Provenance { source: Source::Boundary(0), segment: i }
    }

    fn segs(list: &[((i64, i64), (i64, i64))]) -> Vec<(Segment, Provenance)> {
        list.iter()
            .enumerate()
            .map(|(i, &(a, b))| (Segment::new(Point::int(a.0, a.1), Point::int(b.0, b.1)), prov(i)))
            .collect()
    }

    #[test]
    fn two_crossing_segments() {
        let arr = Arrangement::build(&segs(&[((0, 0), (2, 2)), ((0, 2), (2, 0))])).unwrap();
        assert_eq!((arr.vertices.len(), arr.edges.len(), arr.faces.len()), (5, 4, 1));
        assert_eq!(arr.euler_defect(), 0);
    }

    #[test]
    fn unit_square() {
        let arr = Arrangement::build(&segs(&[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))]))
            .unwrap();
        assert_eq!((arr.vertices.len(), arr.edges.len(), arr.faces.len()), (4, 4, 2));
        let c = Point::new(qr(1, 2), qr(1, 2));
        assert_eq!(arr.locate(&c).unwrap(), 1);
        assert_eq!(arr.locate(&Point::int(100, 100)).unwrap(), UNBOUNDED);
        assert_eq!(arr.locate(&Point::new(q(0), qr(1, 3))), Err(ArrangementError::OnBoundary));
    }

    #[test]
    fn bisected_square() {
        let arr = Arrangement::build(&segs(&[
            ((0, 0), (4, 0)),
            ((4, 0), (4, 4)),
            ((4, 4), (0, 4)),
            ((0, 4), (0, 0)),
            ((-1, 2), (5, 2)),
        ]))
        .unwrap();
        assert_eq!(arr.faces.len(), 3);
        assert_eq!(arr.euler_defect(), 0);
        let up = arr.locate(&Point::int(1, 3)).unwrap();
        let down = arr.locate(&Point::int(1, 1)).unwrap();
        assert_ne!(up, down);
        assert_ne!(up, UNBOUNDED);
        // the upper face's sample lies above the bisector
        assert!(arr.faces[up].sample.y > q(2));
        assert_eq!(arr.locate(&Point::int(3, 3)).unwrap(), up);
    }

    #[test]
    fn nested_squares_get_hole() {
        let mut s = segs(&[((0, 0), (10, 0)), ((10, 0), (10, 10)), ((10, 10), (0, 10)), ((0, 10), (0, 0))]);
        s.extend(segs(&[((3, 3), (6, 3)), ((6, 3), (6, 6)), ((6, 6), (3, 6)), ((3, 6), (3, 3))]));
        let arr = Arrangement::build(&s).unwrap();
        assert_eq!(arr.faces.len(), 3);
        assert_eq!(arr.components, 2);
        assert_eq!(arr.euler_defect(), 0);
        let ring = arr.locate(&Point::int(1, 1)).unwrap();
        let inner = arr.locate(&Point::int(4, 4)).unwrap();
        assert_ne!(ring, inner);
        assert_eq!(arr.faces[ring].cycles.len(), 2);
    }

    #[test]
    fn overlap_rejected() {
        let r = Arrangement::build(&segs(&[((0, 0), (2, 0)), ((1, 0), (3, 0))]));
        assert_eq!(r.err(), Some(ArrangementError::Overlap(0, 1)));
        let r = Arrangement::build(&segs(&[((0, 0), (0, 0))]));
        assert_eq!(r.err(), Some(ArrangementError::Degenerate(0)));
    }

    #[test]
    fn dangling_curve_inside_face() {
        let mut s = segs(&[((0, 0), (10, 0)), ((10, 0), (10, 10)), ((10, 10), (0, 10)), ((0, 10), (0, 0))]);
        s.extend(segs(&[((2, 2), (5, 5)), ((5, 5), (5, 12))]));
        let arr = Arrangement::build(&s).unwrap();
        assert_eq!(arr.euler_defect(), 0);
        assert_eq!(arr.faces.len(), 2);
    }
}
