use crate::arrangement::{mask_of, SeparationOracle};
use crate::geom::Scene;
use crate::util::first_subset_by_size;
use crate::Error;

pub const DEFAULT_BRUTE_CAP: usize = 15;

pub(crate) fn check_pairs(sc: &Scene, pairs: &[(usize, usize)]) -> Result<(), Error> {
    let violations = sc.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidScene(violations));
    }
    for &(i, j) in pairs {
        for x in [i, j] {
            if x >= sc.points.len() {
                return Err(Error::UnknownPoint(format!("#{x}")));
            }
        }
        if i == j {
            return Err(Error::UnknownPoint(format!("pair ({i}, {j}) repeats a point")));
        }
    }
    Ok(())
}

/// Smallest obstacle set separating every pair (point indices), by subsets
/// in order of size and then lexicographically.
pub fn brute_force_min_separator(sc: &Scene, pairs: &[(usize, usize)], cap: usize) -> Result<Vec<usize>, Error> {
    let n = sc.n();
    if n > cap {
        return Err(Error::CapExceeded { what: "obstacles", value: n, cap });
    }
    check_pairs(sc, pairs)?;
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let oracle = SeparationOracle::new(sc)?;
    let all: Vec<usize> = (0..n).collect();
    if !oracle.separates_all(mask_of(&all), pairs) {
        return Err(Error::NoSeparatorExists);
    }
    Ok(first_subset_by_size(n, |s| oracle.separates_all(mask_of(s), pairs)).expect("the full set separates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{scene_contain, scene_empty, scene_ring2};

    #[test]
    fn examples() {
        assert_eq!(brute_force_min_separator(&scene_ring2(), &[(0, 1)], 15).unwrap(), vec![0, 1]);
        assert_eq!(brute_force_min_separator(&scene_contain(), &[(0, 1)], 15).unwrap(), vec![0]);
        assert_eq!(brute_force_min_separator(&scene_ring2(), &[], 15).unwrap(), Vec::<usize>::new());
        assert!(matches!(brute_force_min_separator(&scene_empty(), &[(0, 1)], 15), Err(Error::NoSeparatorExists)));
        assert!(matches!(brute_force_min_separator(&scene_ring2(), &[(0, 1)], 1), Err(Error::CapExceeded { .. })));
    }
}
