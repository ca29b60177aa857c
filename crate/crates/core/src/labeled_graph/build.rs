use super::graph::LabeledMultigraph;
use super::label::{full_mask, Label};
use super::routing::{ReferenceCurveSet, Terminal};
use crate::arrangement::{boundary_segments, face_inside_union, Arrangement, Provenance, Source};
use crate::geom::{Obstacle, Point, Scene, Segment};
use crate::Error;
use std::collections::{BTreeSet, VecDeque};

fn bbox(o: &Obstacle) -> (Point, Point) {
    let mut lo = o.ring[0].clone();
    let mut hi = o.ring[0].clone();
    for p in &o.ring {
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

fn boxes_meet(a: &(Point, Point), b: &(Point, Point)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

fn segment_box(s: &Segment) -> (Point, Point) {
    let lo = Point::new(s.a.x.clone().min(s.b.x.clone()), s.a.y.clone().min(s.b.y.clone()));
    let hi = Point::new(s.a.x.clone().max(s.b.x.clone()), s.a.y.clone().max(s.b.y.clone()));
    (lo, hi)
}

/// Builds the labeled intersection multigraph of `sc` for the curves in `rc`.
///
/// Self-loops record named points inside an obstacle. For each intersecting
/// pair (S, S'), a search over (face of S ∪ S', partial label) pairs yields
/// one edge per label reachable at ref(S') from ref(S). Curves with an end
/// in S ∪ S' are left unconstrained in those edges' masks.
pub fn build_labeled_graph(sc: &Scene, rc: &ReferenceCurveSet) -> Result<LabeledMultigraph, Error> {
    let width = rc.mode.width();
    if width > 64 {
        return Err(Error::WidthCapExceeded(width, 64));
    }
    let n = sc.n();
    let mut g = LabeledMultigraph::new(n, rc.mode);
    for o in &sc.obstacles {
        for i in 0..rc.curves.len() {
            if rc.named_ends(i).iter().any(|&k| o.contains(&sc.points[k].p)) {
                g.add_edge(o.id, o.id, Label::new(width, 1 << i));
            }
        }
    }
    let anchor = sc.effective_anchor();
    let boxes: Vec<(Point, Point)> = sc.obstacles.iter().map(bbox).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            if !boxes_meet(&boxes[a], &boxes[b]) {
                continue;
            }
            let (sa, sb) = (&sc.obstacles[a], &sc.obstacles[b]);
            let ends_in = |t: Terminal| {
                let p = match t {
                    Terminal::Named(k) => &sc.points[k].p,
                    Terminal::Anchor => &anchor,
                };
                sa.contains(p) || sb.contains(p)
            };
            let jset: Vec<usize> = (0..rc.curves.len())
                .filter(|&i| !ends_in(rc.ends[i].0) && !ends_in(rc.ends[i].1))
                .collect();
            let jmask = jset.iter().fold(0u64, |m, &i| m | 1 << i);
            for bits in pair_labels(sc, rc, a, b, &jset, &boxes)? {
                g.add_edge(a, b, Label::masked(width, bits, jmask & full_mask(width)));
            }
        }
    }
    Ok(g)
}

/// Labels (over the curves in `jset`) of walks inside S_a ∪ S_b from ref(S_a) to ref(S_b).
fn pair_labels(
    sc: &Scene,
    rc: &ReferenceCurveSet,
    a: usize,
    b: usize,
    jset: &[usize],
    boxes: &[(Point, Point)],
) -> Result<BTreeSet<u64>, Error> {
    let (sa, sb) = (&sc.obstacles[a], &sc.obstacles[b]);
    let mut segs = boundary_segments([sa, sb]);
    let ubox = (
        Point::new(boxes[a].0.x.clone().min(boxes[b].0.x.clone()), boxes[a].0.y.clone().min(boxes[b].0.y.clone())),
        Point::new(boxes[a].1.x.clone().max(boxes[b].1.x.clone()), boxes[a].1.y.clone().max(boxes[b].1.y.clone())),
    );
    // curve pieces away from the union cannot bound a face inside it
    for &i in jset {
        for (k, s) in rc.curves[i].segments().enumerate() {
            if boxes_meet(&segment_box(&s), &ubox) {
                segs.push((s, Provenance { source: Source::Curve(i), segment: k }));
            }
        }
    }
    let arr = Arrangement::build(&segs)?;
    let region = [sa, sb];
    let inside: Vec<bool> = (0..arr.num_faces()).map(|f| face_inside_union(&arr, f, &region)).collect();
    let nf = arr.num_faces();
    let mut nbrs: Vec<Vec<(usize, u64)>> = vec![Vec::new(); nf];
    for (e, ed) in arr.edges.iter().enumerate() {
        let (l, r) = arr.edge_faces(e);
        if !(inside[l] && inside[r]) {
            continue;
        }
        let theta = match ed.prov.source {
            Source::Curve(i) => 1u64 << i,
            Source::Boundary(_) => 0,
        };
        nbrs[l].push((r, theta));
        if l != r {
            nbrs[r].push((l, theta));
        }
    }
    // faces of the union touching only at a point are still connected there
    for v in 0..arr.vertices.len() {
        let out = arr.outgoing(v);
        if out.iter().any(|&h| matches!(arr.edges[arr.half_edges[h].edge].prov.source, Source::Curve(_))) {
            continue;
        }
        let fs: BTreeSet<usize> = out.iter().map(|&h| arr.half_edges[h].face).filter(|&f| inside[f]).collect();
        let fs: Vec<usize> = fs.into_iter().collect();
        for x in 0..fs.len() {
            for y in (x + 1)..fs.len() {
                nbrs[fs[x]].push((fs[y], 0));
                nbrs[fs[y]].push((fs[x], 0));
            }
        }
    }
    let fa = arr.locate(&sa.ref_point)?;
    let fb = arr.locate(&sb.ref_point)?;
    let mut seen: BTreeSet<(usize, u64)> = BTreeSet::new();
    let mut dq = VecDeque::new();
    seen.insert((fa, 0));
    dq.push_back((fa, 0u64));
    while let Some((f, l)) = dq.pop_front() {
        for &(g, th) in &nbrs[f] {
            let st = (g, l ^ th);
            if seen.insert(st) {
                dq.push_back(st);
            }
        }
    }
    Ok(seen.into_iter().filter(|&(f, _)| f == fb).map(|(_, l)| l).collect())
}
