//! Exact rational geometry: coordinates, predicates, polylines, and the scene model.

mod scene;

pub use scene::{NamedPoint, Obstacle, Scene, SceneError, SceneJson, Violation};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Exact coordinate. `BigRational` keeps numerator/denominator in lowest terms
/// with a positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"` or `"-n/d"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Canonical `num/den` rendering.
pub fn fmt_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn q_to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn sub(&self, o: &Point) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn lerp(&self, o: &Point, t: &Q) -> Point {
        Point {
            x: &self.x + (&o.x - &self.x) * t,
            y: &self.y + (&o.y - &self.y) * t,
        }
    }

    pub fn offset(&self, dx: &Q, dy: &Q) -> Point {
        Point { x: &self.x + dx, y: &self.y + dy }
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.lerp(o, &qr(1, 2))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (q_to_f64(&self.x), q_to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross(a: &Point, b: &Point, c: &Point) -> Q {
    let (bx, by) = b.sub(a);
    let (cx, cy) = c.sub(a);
    bx * cy - by * cx
}

fn sign(v: &Q) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of (b − a) × (c − a).
pub fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    sign(&cross(a, b, c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    fn bbox_disjoint(&self, o: &Segment) -> bool {
        let (ax0, ax1) = minmax(&self.a.x, &self.b.x);
        let (bx0, bx1) = minmax(&o.a.x, &o.b.x);
        if ax1 < bx0 || bx1 < ax0 {
            return true;
        }
        let (ay0, ay1) = minmax(&self.a.y, &self.b.y);
        let (by0, by1) = minmax(&o.a.y, &o.b.y);
        ay1 < by0 || by1 < ay0
    }

    /// True if `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p) == 0 && in_box(&self.a, &self.b, p)
    }

    /// Parameter of `p` along the segment, assuming `p` is on its line.
    pub fn param(&self, p: &Point) -> Q {
        let (dx, dy) = self.b.sub(&self.a);
        if !dx.is_zero() {
            (&p.x - &self.a.x) / dx
        } else {
            (&p.y - &self.a.y) / dy
        }
    }
}

fn minmax<'a>(a: &'a Q, b: &'a Q) -> (&'a Q, &'a Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let (x0, x1) = minmax(&a.x, &b.x);
    let (y0, y1) = minmax(&a.y, &b.y);
    &p.x >= x0 && &p.x <= x1 && &p.y >= y0 && &p.y <= y1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point),
    /// Collinear overlap of positive length, endpoints in lexicographic order.
    Overlap(Point, Point),
}

pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Intersection {
    if s1.bbox_disjoint(s2) {
        return Intersection::Empty;
    }
    let d1 = orient(&s2.a, &s2.b, &s1.a);
    let d2 = orient(&s2.a, &s2.b, &s1.b);
    let d3 = orient(&s1.a, &s1.b, &s2.a);
    let d4 = orient(&s1.a, &s1.b, &s2.b);
    if d1 == 0 && d2 == 0 {
        // collinear
        let mut pts: Vec<&Point> = Vec::new();
        for p in [&s2.a, &s2.b] {
            if s1.contains(p) {
                pts.push(p);
            }
        }
        for p in [&s1.a, &s1.b] {
            if s2.contains(p) {
                pts.push(p);
            }
        }
        pts.sort();
        pts.dedup();
        return match pts.len() {
            0 => Intersection::Empty,
            1 => Intersection::Point(pts[0].clone()),
            _ => Intersection::Overlap(pts[0].clone(), pts[pts.len() - 1].clone()),
        };
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return Intersection::Empty;
    }
    if d1 == 0 {
        return Intersection::Point(s1.a.clone());
    }
    if d2 == 0 {
        return Intersection::Point(s1.b.clone());
    }
    if d3 == 0 {
        return Intersection::Point(s2.a.clone());
    }
    if d4 == 0 {
        return Intersection::Point(s2.b.clone());
    }
    // proper crossing
    let c1 = cross(&s2.a, &s2.b, &s1.a);
    let c2 = cross(&s2.a, &s2.b, &s1.b);
    let t = &c1 / (&c1 - &c2);
    Intersection::Point(s1.a.lerp(&s1.b, &t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Self {
        Polyline { vertices }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.len() > 2 && self.vertices.first() == self.vertices.last()
    }

    /// At least two vertices and no zero-length segment.
    pub fn is_well_formed(&self) -> bool {
        self.vertices.len() >= 2 && self.vertices.windows(2).all(|w| w[0] != w[1])
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        self.vertices.last().expect("non-empty polyline")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Outside,
    Boundary,
    Inside,
}

/// Classifies `p` against the closed region bounded by a simple polygon given as
/// a vertex ring (no repeated closing vertex).
pub fn point_in_ring(p: &Point, ring: &[Point]) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        if Segment::new(a.clone(), b.clone()).contains(p) {
            return Location::Boundary;
        }
        // half-open crossing rule on the upward ray
        if (a.y > p.y) != (b.y > p.y) {
            let o = orient(a, b, p);
            let upward = b.y > a.y;
            if (upward && o > 0) || (!upward && o < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

pub fn point_in_region(p: &Point, ob: &Obstacle) -> Location {
    point_in_ring(p, &ob.ring)
}

/// Twice the signed area of a vertex ring (positive when counterclockwise).
pub fn ring_area2(ring: &[Point]) -> Q {
    let n = ring.len();
    let mut s = Q::zero();
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        s += &a.x * &b.y - &b.x * &a.y;
    }
    s
}

/// Winding number of a closed vertex cycle around `p`; `p` must not lie on it.
pub fn winding_number(p: &Point, cycle: &[Point]) -> i64 {
    let n = cycle.len();
    let mut w = 0;
    for i in 0..n {
        let a = &cycle[i];
        let b = &cycle[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// True if the ring has no self-intersections beyond adjacent edges meeting at
/// their shared vertex.
pub fn ring_is_simple(ring: &[Point]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let segs: Vec<Segment> = (0..n)
        .map(|i| Segment::new(ring[i].clone(), ring[(i + 1) % n].clone()))
        .collect();
    if segs.iter().any(|s| s.is_degenerate()) {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match segment_intersection(&segs[i], &segs[j]) {
                Intersection::Empty => {}
                Intersection::Overlap(..) => return false,
                Intersection::Point(p) => {
                    if !adjacent {
                        return false;
                    }
                    let shared = if j == i + 1 { &segs[i].b } else { &segs[i].a };
                    if &p != shared {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("curves are not transverse near {0:?}")]
    NotTransverse(Point),
}

/// Parity of the number of intersection points of two transverse polylines.
pub fn crossing_parity(c1: &Polyline, c2: &Polyline) -> Result<bool, GeomError> {
    let mut parity = false;
    let v1: Vec<&Point> = c1.vertices.iter().collect();
    let v2: Vec<&Point> = c2.vertices.iter().collect();
    for s1 in c1.segments() {
        for s2 in c2.segments() {
            match segment_intersection(&s1, &s2) {
                Intersection::Empty => {}
                Intersection::Overlap(a, _) => return Err(GeomError::NotTransverse(a)),
                Intersection::Point(p) => {
                    if v1.contains(&&p) || v2.contains(&&p) {
                        return Err(GeomError::NotTransverse(p));
                    }
                    parity = !parity;
                }
            }
        }
    }
    Ok(parity)
}

/// Compares direction vectors by angle in [0, 2π), counterclockwise from +x.
pub fn angle_cmp(a: &(Q, Q), b: &(Q, Q)) -> Ordering {
    fn half(v: &(Q, Q)) -> u8 {
        if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
            0
        } else {
            1
        }
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = &a.0 * &b.1 - &a.1 * &b.0;
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// A positive rational close to `sqrt(v)`, for building directions only.
pub fn approx_sqrt(v: &Q) -> Q {
    let f = q_to_f64(v).sqrt();
    let scaled = (f * 1024.0).round().max(1.0) as i64;
    qr(scaled, 1024)
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(1, -1)), -1);
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            segment_intersection(&seg((0, 0), (2, 0)), &seg((1, -1), (1, 1))),
            Intersection::Point(p(1, 0))
        );
        assert_eq!(
            segment_intersection(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))),
            Intersection::Empty
        );
        assert_eq!(
            segment_intersection(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Intersection::Overlap(p(1, 0), p(2, 0))
        );
    }

    #[test]
    fn intersection_at_fraction() {
        let r = segment_intersection(&seg((0, 0), (3, 1)), &seg((0, 1), (3, 0)));
        assert_eq!(r, Intersection::Point(Point::new(qr(3, 2), qr(1, 2))));
    }

    #[test]
    fn region_examples() {
        let sq = vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let c = Point::new(qr(1, 2), qr(1, 2));
        assert_eq!(point_in_ring(&c, &sq), Location::Inside);
        assert_eq!(point_in_ring(&p(5, 5), &sq), Location::Outside);
        assert_eq!(point_in_ring(&Point::new(q(0), qr(1, 2)), &sq), Location::Boundary);
        assert_eq!(point_in_ring(&p(1, 1), &sq), Location::Boundary);
    }

    #[test]
    fn parity_examples() {
        let v = Polyline::new(vec![p(1, -1), p(1, 1)]);
        let h = Polyline::new(vec![p(0, 0), p(2, 0)]);
        assert_eq!(crossing_parity(&v, &h), Ok(true));
        let d = Polyline::new(vec![p(5, 5), p(6, 6)]);
        assert_eq!(crossing_parity(&d, &h), Ok(false));
        // U shape dipping below the x axis twice
        let u = Polyline::new(vec![p(0, 1), p(1, -1), p(3, -1), p(4, 1)]);
        let line = Polyline::new(vec![p(-1, 0), p(5, 0)]);
        let mut hits = 0;
        for a in u.segments() {
            for b in line.segments() {
                if let Intersection::Point(_) = segment_intersection(&a, &b) {
                    hits += 1;
                }
            }
        }
        assert_eq!(hits, 2);
        assert_eq!(crossing_parity(&u, &line), Ok(false));
    }

    #[test]
    fn parity_rejects_vertex_touch() {
        let a = Polyline::new(vec![p(0, 0), p(1, 1), p(2, 0)]);
        let b = Polyline::new(vec![p(0, 1), p(2, 1)]);
        assert!(crossing_parity(&a, &b).is_err());
    }

    #[test]
    fn simple_rings() {
        assert!(ring_is_simple(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2)]));
        assert!(!ring_is_simple(&[p(0, 0), p(2, 2), p(2, 0), p(0, 2)]));
    }

    #[test]
    fn parse_roundtrip() {
        let v = parse_q("-6/4").unwrap();
        assert_eq!(fmt_q(&v), "-3/2");
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert!(parse_q("1/0").is_none());
    }

    #[test]
    fn angles_sorted_ccw() {
        let mut v = vec![(q(0), q(-1)), (q(-1), q(0)), (q(1), q(0)), (q(0), q(1))];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![(q(1), q(0)), (q(0), q(1)), (q(-1), q(0)), (q(0), q(-1))]);
    }
}
