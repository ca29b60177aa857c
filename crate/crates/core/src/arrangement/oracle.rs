use super::{boundary_segments, Arrangement, UNBOUNDED};
use crate::geom::{Obstacle, Point, Scene};
use crate::Error;
use std::collections::VecDeque;

/// True iff the sample point of `face` lies in one of the listed closed regions.
pub fn face_inside_union(arr: &Arrangement, face: usize, region: &[&Obstacle]) -> bool {
    if face == UNBOUNDED {
        return false;
    }
    let p = &arr.faces[face].sample;
    region.iter().any(|o| o.contains(p))
}

fn point_by_name<'a>(sc: &'a Scene, name: &str) -> Result<&'a Point, Error> {
    sc.point(name).ok_or_else(|| Error::UnknownPoint(name.to_string()))
}

/// Whether the obstacles in `keep` separate the named points `a` and `b`.
///
/// Builds the arrangement of the kept boundaries, drops faces covered by the
/// union, and checks whether the faces of `a` and `b` are still connected.
pub fn separates_geometric(sc: &Scene, keep: &[usize], a: &str, b: &str) -> Result<bool, Error> {
    let violations = sc.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidScene(violations));
    }
    let pa = point_by_name(sc, a)?;
    let pb = point_by_name(sc, b)?;
    let kept: Vec<&Obstacle> = keep.iter().map(|&i| &sc.obstacles[i]).collect();
    if kept.iter().any(|o| o.contains(pa) || o.contains(pb)) {
        return Ok(true);
    }
    let arr = Arrangement::build(&boundary_segments(kept.iter().copied()))?;
    let fa = arr.locate(pa)?;
    let fb = arr.locate(pb)?;
    let free: Vec<bool> = (0..arr.num_faces()).map(|f| !face_inside_union(&arr, f, &kept)).collect();
    Ok(!faces_connected(&arr, &free, fa, fb))
}

fn faces_connected(arr: &Arrangement, free: &[bool], from: usize, to: usize) -> bool {
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); arr.num_faces()];
    for e in 0..arr.edges.len() {
        let (l, r) = arr.edge_faces(e);
        if l != r && free[l] && free[r] {
            nbrs[l].push(r);
            nbrs[r].push(l);
        }
    }
    bfs(&nbrs, from, to)
}

fn bfs(nbrs: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; nbrs.len()];
    seen[from] = true;
    let mut dq = VecDeque::from([from]);
    while let Some(f) = dq.pop_front() {
        if f == to {
            return true;
        }
        for &g in &nbrs[f] {
            if !seen[g] {
                seen[g] = true;
                dq.push_back(g);
            }
        }
    }
    false
}

/// Answers many separation queries on one scene from a single arrangement of
/// all obstacle boundaries. Faces carry the bitmask of obstacles covering them.
#[derive(Clone, Debug)]
pub struct SeparationOracle {
    arr: Arrangement,
    face_cover: Vec<u64>,
    point_face: Vec<usize>,
    point_cover: Vec<u64>,
    links: Vec<(usize, usize)>,
}

impl SeparationOracle {
    pub fn new(sc: &Scene) -> Result<SeparationOracle, Error> {
        if sc.n() > 64 {
            return Err(Error::CapExceeded { what: "obstacles", value: sc.n(), cap: 64 });
        }
        let arr = Arrangement::build(&boundary_segments(&sc.obstacles))?;
        let cover_of = |p: &Point| -> u64 {
            sc.obstacles
                .iter()
                .filter(|o| o.contains(p))
                .fold(0u64, |m, o| m | (1u64 << o.id))
        };
        let face_cover: Vec<u64> = (0..arr.num_faces())
            .map(|f| if f == UNBOUNDED { 0 } else { cover_of(&arr.faces[f].sample) })
            .collect();
        let point_cover: Vec<u64> = sc.points.iter().map(|p| cover_of(&p.p)).collect();
        let mut point_face = Vec::new();
        for p in &sc.points {
            point_face.push(if arr.on_edge(&p.p) { usize::MAX } else { arr.locate(&p.p)? });
        }
        let mut links = Vec::new();
        for e in 0..arr.edges.len() {
            let (l, r) = arr.edge_faces(e);
            if l != r {
                links.push((l.min(r), l.max(r)));
            }
        }
        links.sort_unstable();
        links.dedup();
        Ok(SeparationOracle { arr, face_cover, point_face, point_cover, links })
    }

    /// Does the obstacle set `keep` (bitmask) separate points `i` and `j`?
    pub fn separates(&self, keep: u64, i: usize, j: usize) -> bool {
        if self.point_cover[i] & keep != 0 || self.point_cover[j] & keep != 0 {
            return true;
        }
        let (fa, fb) = (self.point_face[i], self.point_face[j]);
        if fa == fb {
            return false;
        }
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); self.arr.num_faces()];
        for &(l, r) in &self.links {
            if self.face_cover[l] & keep == 0 && self.face_cover[r] & keep == 0 {
                nbrs[l].push(r);
                nbrs[r].push(l);
            }
        }
        !bfs(&nbrs, fa, fb)
    }

    /// Separates every listed pair.
    pub fn separates_all(&self, keep: u64, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(i, j)| self.separates(keep, i, j))
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }
}

/// Bitmask of an id list.
pub fn mask_of(ids: &[usize]) -> u64 {
    ids.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// Ids in a bitmask, ascending.
pub fn ids_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}
