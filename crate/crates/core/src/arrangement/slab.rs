//! Vertical slab decomposition of the free space around closed obstacles.
//!
//! Every cell is an open trapezoid, hence convex, so straight segments between
//! a cell's sample point and points on its vertical sides stay free.

use super::{boundary_segments, Arrangement};
use crate::geom::{q, qr, Obstacle, Point, Polyline, Q};
use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Cell {
    slab: usize,
    /// Bounding edge indices below/above (`None` = unbounded).
    lo: Option<usize>,
    hi: Option<usize>,
    sample: Point,
    free: bool,
}

/// Slab decomposition of the complement of a set of closed polygons.
#[derive(Clone, Debug)]
pub struct SlabMap {
    arr: Arrangement,
    xs: Vec<Q>,
    cells: Vec<Cell>,
    /// Cells per slab; slab `i` spans (xs[i-1], xs[i]) with sentinels at both ends.
    by_slab: Vec<Vec<usize>>,
    regions: Vec<Vec<Point>>,
}

impl SlabMap {
    /// `extra_x` adds critical abscissae (typically query points).
    pub fn new(obstacles: &[&Obstacle], extra_x: &[Q]) -> SlabMap {
        let arr = Arrangement::build(&boundary_segments(obstacles.iter().copied()))
            .expect("validated obstacles form an arrangement");
        let mut xs: Vec<Q> = arr.vertices.iter().map(|v| v.x.clone()).chain(extra_x.iter().cloned()).collect();
        xs.sort();
        xs.dedup();
        if xs.is_empty() {
            xs.push(q(0));
        }
        let regions: Vec<Vec<Point>> = obstacles.iter().map(|o| o.ring.clone()).collect();
        let mut map = SlabMap { arr, xs, cells: Vec::new(), by_slab: Vec::new(), regions };
        let slabs = map.xs.len() + 1;
        for s in 0..slabs {
            let xm = map.slab_mid(s);
            let mut crossing: Vec<(Q, usize)> = Vec::new();
            if s > 0 && s < map.xs.len() {
                for (e, ed) in map.arr.edges.iter().enumerate() {
                    let (a, b) = (&map.arr.vertices[ed.a], &map.arr.vertices[ed.b]);
                    let (x0, x1) = if a.x < b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
                    if x0 < &xm && &xm < x1 {
                        crossing.push((map.edge_y(e, &xm), e));
                    }
                }
            }
            crossing.sort();
            let mut ids = Vec::new();
            for j in 0..=crossing.len() {
                let lo = if j == 0 { None } else { Some(crossing[j - 1].1) };
                let hi = crossing.get(j).map(|c| c.1);
                let y = match (j, crossing.len()) {
                    (_, 0) => q(0),
                    (0, _) => &crossing[0].0 - q(1),
                    (j, n) if j == n => &crossing[n - 1].0 + q(1),
                    (j, _) => (&crossing[j - 1].0 + &crossing[j].0) / q(2),
                };
                let sample = Point::new(xm.clone(), y);
                let free = !map.covered(&sample);
                ids.push(map.cells.len());
                map.cells.push(Cell { slab: s, lo, hi, sample, free });
            }
            map.by_slab.push(ids);
        }
        map
    }

    fn covered(&self, p: &Point) -> bool {
        self.regions
            .iter()
            .any(|r| crate::geom::point_in_ring(p, r) != crate::geom::Location::Outside)
    }

    fn slab_mid(&self, s: usize) -> Q {
        let n = self.xs.len();
        if s == 0 {
            &self.xs[0] - q(1)
        } else if s == n {
            &self.xs[n - 1] + q(1)
        } else {
            (&self.xs[s - 1] + &self.xs[s]) * qr(1, 2)
        }
    }

    fn edge_y(&self, e: usize, x: &Q) -> Q {
        let ed = &self.arr.edges[e];
        let (a, b) = (&self.arr.vertices[ed.a], &self.arr.vertices[ed.b]);
        &a.y + (x - &a.x) * (&b.y - &a.y) / (&b.x - &a.x)
    }

    /// Open interval of a cell's side at abscissa `x` (`None` = infinite end).
    fn side(&self, c: usize, x: &Q) -> (Option<Q>, Option<Q>) {
        let cell = &self.cells[c];
        (cell.lo.map(|e| self.edge_y(e, x)), cell.hi.map(|e| self.edge_y(e, x)))
    }

    /// A free point on the line `x` strictly inside the open interval (lo, hi),
    /// avoiding obstacle vertices and vertical edges on that line.
    fn free_point_on_line(&self, x: &Q, lo: Option<Q>, hi: Option<Q>) -> Option<Point> {
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return None;
            }
        }
        let inside = |y: &Q| lo.as_ref().map_or(true, |l| y > l) && hi.as_ref().map_or(true, |h| y < h);
        let mut cuts: Vec<Q> = self
            .arr
            .vertices
            .iter()
            .filter(|v| &v.x == x && inside(&v.y))
            .map(|v| v.y.clone())
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut bounds: Vec<Option<Q>> = vec![lo.clone()];
        bounds.extend(cuts.into_iter().map(Some));
        bounds.push(hi.clone());
        for w in bounds.windows(2) {
            let y = match (&w[0], &w[1]) {
                (Some(a), Some(b)) => (a + b) * qr(1, 2),
                (Some(a), None) => a + q(1),
                (None, Some(b)) => b - q(1),
                (None, None) => q(0),
            };
            let p = Point::new(x.clone(), y);
            if !self.arr.on_edge(&p) && !self.covered(&p) {
                return Some(p);
            }
        }
        None
    }

    /// Slab index whose closure on the right is at `xs[i]`: slab `i`; on the left: slab `i+1`.
    fn line_index(&self, x: &Q) -> Option<usize> {
        self.xs.binary_search(x).ok()
    }

    fn cells_touching(&self, p: &Point) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(i) = self.line_index(&p.x) else { return out };
        for s in [i, i + 1] {
            for &c in &self.by_slab[s] {
                if !self.cells[c].free {
                    continue;
                }
                let (lo, hi) = self.side(c, &p.x);
                if lo.map_or(true, |l| p.y > l) && hi.map_or(true, |h| p.y < h) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Free polyline from `a` to `b`, or `None` when they are separated.
    /// Both abscissae must have been passed as `extra_x`.
    pub fn path(&self, a: &Point, b: &Point) -> Option<Polyline> {
        if self.covered(a) || self.covered(b) {
            return None;
        }
        if a == b {
            return Some(Polyline::new(vec![a.clone(), b.clone()]));
        }
        let starts = self.cells_touching(a);
        let goals = self.cells_touching(b);
        let nc = self.cells.len();
        let mut prev: Vec<Option<(usize, Point)>> = vec![None; nc];
        let mut seen = vec![false; nc];
        let mut dq = VecDeque::new();
        for &c in &starts {
            seen[c] = true;
            dq.push_back(c);
        }
        let mut hit = None;
        while let Some(c) = dq.pop_front() {
            if goals.contains(&c) {
                hit = Some(c);
                break;
            }
            let s = self.cells[c].slab;
            for (ns, x) in [(s.wrapping_sub(1), s.wrapping_sub(1)), (s + 1, s)] {
                if ns >= self.by_slab.len() || x >= self.xs.len() {
                    continue;
                }
                let x = &self.xs[x];
                for &d in &self.by_slab[ns] {
                    if seen[d] || !self.cells[d].free {
                        continue;
                    }
                    let (l1, h1) = self.side(c, x);
                    let (l2, h2) = self.side(d, x);
                    let lo = max_opt(l1, l2);
                    let hi = min_opt(h1, h2);
                    if let Some(p) = self.free_point_on_line(x, lo, hi) {
                        seen[d] = true;
                        prev[d] = Some((c, p));
                        dq.push_back(d);
                    }
                }
            }
        }
        let mut c = hit?;
        let mut rev = vec![b.clone(), self.cells[c].sample.clone()];
        while let Some((pc, p)) = prev[c].clone() {
            rev.push(p);
            rev.push(self.cells[pc].sample.clone());
            c = pc;
        }
        rev.push(a.clone());
        rev.reverse();
        rev.dedup();
        Some(Polyline::new(rev))
    }
}

fn max_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x > y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// A polyline from `a` to `b` that avoids every listed closed obstacle.
pub fn free_path(obstacles: &[&Obstacle], a: &Point, b: &Point) -> Option<Polyline> {
    let direct = Polyline::new(vec![a.clone(), b.clone()]);
    if a != b && polyline_avoids(&direct, obstacles) {
        return Some(direct);
    }
    SlabMap::new(obstacles, &[a.x.clone(), b.x.clone()]).path(a, b)
}

/// True if no point of the polyline lies in any listed closed obstacle.
pub fn polyline_avoids(line: &Polyline, obstacles: &[&Obstacle]) -> bool {
    use crate::geom::{segment_intersection, Intersection};
    for o in obstacles {
        if line.vertices.iter().any(|p| o.contains(p)) {
            return false;
        }
        for s in line.segments() {
            for e in o.edges() {
                if segment_intersection(&s, &e) != Intersection::Empty {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{scene_contain, scene_ring2};

    #[test]
    fn path_around_single_block() {
        let sc = scene_ring2();
        let a = &sc.obstacles[0];
        let s = sc.point("s").unwrap();
        let t = sc.point("t").unwrap();
        let line = free_path(&[a], s, t).expect("gap in the ring");
        assert_eq!(line.first(), s);
        assert_eq!(line.last(), t);
        assert!(polyline_avoids(&line, &[a]));
    }

    #[test]
    fn ring_blocks_path() {
        let sc = scene_ring2();
        let obs: Vec<&Obstacle> = sc.obstacles.iter().collect();
        assert!(free_path(&obs, sc.point("s").unwrap(), sc.point("t").unwrap()).is_none());
        let c = scene_contain();
        let obs: Vec<&Obstacle> = c.obstacles.iter().collect();
        assert!(free_path(&obs, c.point("s").unwrap(), c.point("t").unwrap()).is_none());
    }

    #[test]
    fn empty_scene_straight_line() {
        let a = Point::int(0, 0);
        let b = Point::int(3, 1);
        let line = free_path(&[], &a, &b).unwrap();
        assert!(polyline_avoids(&line, &[]));
        assert_eq!(line.first(), &a);
        assert_eq!(line.last(), &b);
    }
}
