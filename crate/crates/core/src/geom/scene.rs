use super::{
    approx_sqrt, fmt_q, parse_q, point_in_ring, q, qr, ring_area2, ring_is_simple,
    segment_intersection, Intersection, Location, Point, Polyline, Segment, Q,
};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPoint {
    pub name: String,
    pub p: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstacle {
    pub id: usize,
    /// Counterclockwise vertex ring; the closing vertex is implicit.
    pub ring: Vec<Point>,
    pub ref_point: Point,
}

impl Obstacle {
    /// Closed boundary polyline (first vertex repeated at the end).
    pub fn boundary(&self) -> Polyline {
        let mut v = self.ring.clone();
        v.push(self.ring[0].clone());
        Polyline::new(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.ring.len();
        (0..n).map(move |i| Segment::new(self.ring[i].clone(), self.ring[(i + 1) % n].clone()))
    }

    pub fn contains(&self, p: &Point) -> bool {
        point_in_ring(p, &self.ring) != Location::Outside
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub obstacles: Vec<Obstacle>,
    pub points: Vec<NamedPoint>,
    pub pairs: Vec<(usize, usize)>,
    pub anchor: Option<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Violation {
    NonDenseIds,
    DegeneratePolygon(usize),
    NonSimplePolygon(usize),
    PointOnBoundary(String, usize),
    AnchorOnBoundary(usize),
    OverlappingBoundaries(usize, usize),
    UnknownPoint(String),
    PairRepeatsPoint(String),
    DuplicatePointName(String),
    RefPointInvalid(usize),
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("malformed scene: {0}")]
    Parse(String),
    #[error("scene violates invariants: {0:?}")]
    Violations(Vec<Violation>),
}

impl Scene {
    /// Builds a scene, orienting every ring counterclockwise and choosing
    /// reference points. Geometric invariants are checked by [`Scene::validate`].
    pub fn new(
        rings: Vec<Vec<Point>>,
        points: Vec<NamedPoint>,
        pairs: Vec<(usize, usize)>,
        anchor: Option<Point>,
    ) -> Scene {
        let obstacles = rings
            .into_iter()
            .enumerate()
            .map(|(id, mut ring)| {
                if ring.len() > 1 && ring.first() == ring.last() {
                    ring.pop();
                }
                if ring_area2(&ring) < Q::zero() {
                    ring.reverse();
                }
                let ref_point = ring.first().cloned().unwrap_or_else(|| Point::int(0, 0));
                Obstacle { id, ring, ref_point }
            })
            .collect();
        let mut sc = Scene { obstacles, points, pairs, anchor };
        for i in 0..sc.obstacles.len() {
            if let Some(r) = sc.pick_ref_point(i) {
                sc.obstacles[i].ref_point = r;
            }
        }
        sc
    }

    pub fn n(&self) -> usize {
        self.obstacles.len()
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p.name == name)
    }

    pub fn point(&self, name: &str) -> Option<&Point> {
        self.points.iter().find(|p| p.name == name).map(|p| &p.p)
    }

    /// The (s, t) pair: the first listed pair, else the points named `s` and `t`.
    pub fn st_pair(&self) -> Option<(usize, usize)> {
        if let Some(&p) = self.pairs.first() {
            return Some(p);
        }
        Some((self.point_index("s")?, self.point_index("t")?))
    }

    /// The anchor `o`, or a deterministic point beyond the bounding box.
    pub fn effective_anchor(&self) -> Point {
        if let Some(a) = &self.anchor {
            return a.clone();
        }
        let (lo, hi) = self.bbox();
        let _ = lo;
        Point::new(&hi.x + qr(7, 3), &hi.y + qr(5, 3))
    }

    /// Bounding box over obstacle vertices, points and anchor.
    pub fn bbox(&self) -> (Point, Point) {
        let mut all: Vec<&Point> = self.obstacles.iter().flat_map(|o| o.ring.iter()).collect();
        all.extend(self.points.iter().map(|p| &p.p));
        if let Some(a) = &self.anchor {
            all.push(a);
        }
        if all.is_empty() {
            return (Point::int(0, 0), Point::int(1, 1));
        }
        let mut lo = all[0].clone();
        let mut hi = all[0].clone();
        for p in all {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    fn pick_ref_point(&self, i: usize) -> Option<Point> {
        let ring = &self.obstacles[i].ring;
        let n = ring.len();
        if n < 3 {
            return None;
        }
        let vi = (0..n).min_by(|&a, &b| ring[a].cmp(&ring[b]))?;
        let v = &ring[vi];
        let prev = &ring[(vi + n - 1) % n];
        let next = &ring[(vi + 1) % n];
        let (ax, ay) = prev.sub(v);
        let (bx, by) = next.sub(v);
        let na = approx_sqrt(&(&ax * &ax + &ay * &ay));
        let nb = approx_sqrt(&(&bx * &bx + &by * &by));
        let dx = &ax / &na + &bx / &nb;
        let dy = &ay / &na + &by / &nb;
        let mut lambda = qr(1, 2);
        for _ in 0..80 {
            let p = v.offset(&(&dx * &lambda), &(&dy * &lambda));
            let ok = point_in_ring(&p, ring) == Location::Inside
                && self
                    .obstacles
                    .iter()
                    .all(|o| o.id == i || point_in_ring(&p, &o.ring) != Location::Boundary)
                && self.points.iter().all(|np| np.p != p)
                && self.anchor.as_ref() != Some(&p);
            if ok {
                return Some(p);
            }
            lambda = lambda / q(2);
        }
        None
    }

    /// Every violated invariant, each naming the offending entities.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, o) in self.obstacles.iter().enumerate() {
            if o.id != i {
                out.push(Violation::NonDenseIds);
                break;
            }
        }
        let mut good = vec![true; self.n()];
        for o in &self.obstacles {
            if o.ring.len() < 3 || ring_area2(&o.ring).is_zero() {
                out.push(Violation::DegeneratePolygon(o.id));
                good[o.id] = false;
            } else if !ring_is_simple(&o.ring) {
                out.push(Violation::NonSimplePolygon(o.id));
                good[o.id] = false;
            }
        }
        let mut names: Vec<&str> = self.points.iter().map(|p| p.name.as_str()).collect();
        names.sort_unstable();
        for w in names.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::DuplicatePointName(w[0].to_string()));
            }
        }
        for np in &self.points {
            for o in &self.obstacles {
                if good[o.id] && point_in_ring(&np.p, &o.ring) == Location::Boundary {
                    out.push(Violation::PointOnBoundary(np.name.clone(), o.id));
                }
            }
        }
        if let Some(a) = &self.anchor {
            for o in &self.obstacles {
                if good[o.id] && point_in_ring(a, &o.ring) == Location::Boundary {
                    out.push(Violation::AnchorOnBoundary(o.id));
                }
            }
        }
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if good[i] && good[j] && boundaries_overlap(&self.obstacles[i], &self.obstacles[j]) {
                    out.push(Violation::OverlappingBoundaries(i, j));
                }
            }
        }
        for &(a, b) in &self.pairs {
            for idx in [a, b] {
                if idx >= self.points.len() {
                    out.push(Violation::UnknownPoint(format!("#{idx}")));
                }
            }
            if a == b && a < self.points.len() {
                out.push(Violation::PairRepeatsPoint(self.points[a].name.clone()));
            }
        }
        for o in &self.obstacles {
            if !good[o.id] {
                continue;
            }
            let r = &o.ref_point;
            let ok = point_in_ring(r, &o.ring) == Location::Inside
                && self
                    .obstacles
                    .iter()
                    .all(|x| x.id == o.id || point_in_ring(r, &x.ring) != Location::Boundary);
            if !ok {
                out.push(Violation::RefPointInvalid(o.id));
            }
        }
        out
    }

    pub fn from_json_str(s: &str) -> Result<Scene, SceneError> {
        let js: SceneJson = serde_json::from_str(s).map_err(|e| SceneError::Parse(e.to_string()))?;
        Scene::from_json(&js)
    }

    pub fn from_json(js: &SceneJson) -> Result<Scene, SceneError> {
        let coord = |v: &Value| -> Result<Q, SceneError> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(q)
                    .ok_or_else(|| SceneError::Parse(format!("non-integer number {n}; use \"num/den\""))),
                Value::String(s) => parse_q(s).ok_or_else(|| SceneError::Parse(format!("bad coordinate {s:?}"))),
                other => Err(SceneError::Parse(format!("bad coordinate {other}"))),
            }
        };
        let mut points = Vec::new();
        for p in &js.points {
            points.push(NamedPoint { name: p.name.clone(), p: Point::new(coord(&p.x)?, coord(&p.y)?) });
        }
        let mut obs: Vec<&ObstacleJson> = js.obstacles.iter().collect();
        obs.sort_by_key(|o| o.id);
        if obs.iter().enumerate().any(|(i, o)| o.id != i) {
            return Err(SceneError::Violations(vec![Violation::NonDenseIds]));
        }
        let mut rings = Vec::new();
        for o in obs {
            let mut ring = Vec::new();
            for [x, y] in &o.polygon {
                ring.push(Point::new(coord(x)?, coord(y)?));
            }
            rings.push(ring);
        }
        let mut pairs = Vec::new();
        let mut bad = Vec::new();
        for [a, b] in &js.pairs {
            let ia = points.iter().position(|p: &NamedPoint| &p.name == a);
            let ib = points.iter().position(|p: &NamedPoint| &p.name == b);
            match (ia, ib) {
                (Some(x), Some(y)) => pairs.push((x, y)),
                _ => {
                    for (n, i) in [(a, ia), (b, ib)] {
                        if i.is_none() {
                            bad.push(Violation::UnknownPoint(n.clone()));
                        }
                    }
                }
            }
        }
        if !bad.is_empty() {
            return Err(SceneError::Violations(bad));
        }
        let anchor = match &js.anchor {
            Some(a) => Some(Point::new(coord(&a.x)?, coord(&a.y)?)),
            None => None,
        };
        Ok(Scene::new(rings, points, pairs, anchor))
    }

    pub fn to_json(&self) -> SceneJson {
        let c = |v: &Q| Value::String(fmt_q(v));
        SceneJson {
            points: self
                .points
                .iter()
                .map(|p| PointJson { name: p.name.clone(), x: c(&p.p.x), y: c(&p.p.y) })
                .collect(),
            obstacles: self
                .obstacles
                .iter()
                .map(|o| ObstacleJson { id: o.id, polygon: o.ring.iter().map(|p| [c(&p.x), c(&p.y)]).collect() })
                .collect(),
            pairs: self
                .pairs
                .iter()
                .map(|&(a, b)| [self.points[a].name.clone(), self.points[b].name.clone()])
                .collect(),
            anchor: self.anchor.as_ref().map(|a| AnchorJson { name: None, x: c(&a.x), y: c(&a.y) }),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("scene serializes")
    }

    /// Copy with only the listed pairs (indices into `self.pairs` are not kept).
    pub fn with_pairs(&self, pairs: Vec<(usize, usize)>) -> Scene {
        Scene { pairs, ..self.clone() }
    }
}

fn boundaries_overlap(a: &Obstacle, b: &Obstacle) -> bool {
    for s in a.edges() {
        for t in b.edges() {
            if let Intersection::Overlap(..) = segment_intersection(&s, &t) {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub name: String,
    pub x: Value,
    pub y: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnchorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x: Value,
    pub y: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstacleJson {
    pub id: usize,
    pub polygon: Vec<[Value; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SceneJson {
    pub points: Vec<PointJson>,
    pub obstacles: Vec<ObstacleJson>,
    #[serde(default)]
    pub pairs: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<AnchorJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<Point> {
        vec![Point::int(x0, y0), Point::int(x1, y0), Point::int(x1, y1), Point::int(x0, y1)]
    }

    fn np(name: &str, x: i64, y: i64) -> NamedPoint {
        NamedPoint { name: name.into(), p: Point::int(x, y) }
    }

    #[test]
    fn point_on_boundary_reported() {
        let sc = Scene::new(vec![sq(0, 0, 4, 4)], vec![np("s", 0, 2), np("t", 9, 9)], vec![(0, 1)], None);
        assert_eq!(sc.validate(), vec![Violation::PointOnBoundary("s".into(), 0)]);
    }

    #[test]
    fn shared_segment_reported() {
        let sc = Scene::new(
            vec![sq(0, 0, 2, 2), sq(2, 1, 4, 3)],
            vec![np("s", 9, 9), np("t", 10, 9)],
            vec![(0, 1)],
            None,
        );
        assert_eq!(sc.validate(), vec![Violation::OverlappingBoundaries(0, 1)]);
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let mut r = sq(0, 0, 2, 2);
        r.reverse();
        let sc = Scene::new(vec![r], vec![], vec![], None);
        assert!(ring_area2(&sc.obstacles[0].ring) > Q::zero());
        assert_eq!(point_in_ring(&sc.obstacles[0].ref_point, &sc.obstacles[0].ring), Location::Inside);
    }

    #[test]
    fn json_roundtrip_and_shorthand() {
        let text = r#"{"points":[{"name":"s","x":1,"y":"1/2"},{"name":"t","x":"9","y":9}],
            "obstacles":[{"id":0,"polygon":[[0,0],[4,0],[4,4],[0,4]]}],"pairs":[["s","t"]]}"#;
        let sc = Scene::from_json_str(text).unwrap();
        assert_eq!(sc.points[0].p, Point::new(q(1), qr(1, 2)));
        let again = Scene::from_json_str(&sc.to_json_string()).unwrap();
        assert_eq!(sc, again);
    }

    #[test]
    fn non_dense_ids_rejected() {
        let text = r#"{"points":[],"obstacles":[{"id":1,"polygon":[[0,0],[4,0],[4,4]]}]}"#;
        assert!(matches!(Scene::from_json_str(text), Err(SceneError::Violations(_))));
    }
}
