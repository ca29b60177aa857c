//! Small canonical scenes used by tests, examples and the CLI.

use crate::geom::{NamedPoint, Point, Scene};

fn pts(list: &[(i64, i64)]) -> Vec<Point> {
    list.iter().map(|&(x, y)| Point::int(x, y)).collect()
}

fn named(name: &str, x: i64, y: i64) -> NamedPoint {
    NamedPoint { name: name.to_string(), p: Point::int(x, y) }
}

/// Two C-shaped blocks whose union is an annulus around `s`; `t` is outside.
pub fn scene_ring2() -> Scene {
    let a = pts(&[(-6, -6), (1, -6), (1, -3), (-3, -3), (-3, 3), (1, 3), (1, 6), (-6, 6)]);
    let b = pts(&[(-1, -5), (5, -5), (5, 5), (-1, 5), (-1, 2), (2, 2), (2, -2), (-1, -2)]);
    Scene::new(vec![a, b], vec![named("s", 0, 0), named("t", 10, 0)], vec![(0, 1)], None)
}

/// A square containing `s`.
pub fn scene_contain() -> Scene {
    let sq = pts(&[(-2, -2), (2, -2), (2, 2), (-2, 2)]);
    Scene::new(vec![sq], vec![named("s", 0, 0), named("t", 5, 0)], vec![(0, 1)], None)
}

/// No obstacles at all.
pub fn scene_empty() -> Scene {
    Scene::new(vec![], vec![named("s", 0, 0), named("t", 5, 1)], vec![(0, 1)], None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for sc in [scene_ring2(), scene_contain(), scene_empty()] {
            assert_eq!(sc.validate(), vec![]);
        }
    }
}
