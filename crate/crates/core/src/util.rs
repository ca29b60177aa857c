/// Advances `comb` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order; false after the last one.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in (i + 1)..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// First subset of `0..n` (by size, then lexicographically) satisfying `pred`.
pub(crate) fn first_subset_by_size(n: usize, mut pred: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    for size in 0..=n {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            if pred(&comb) {
                return Some(comb);
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        let mut c = vec![0, 1];
        loop {
            seen.push(c.clone());
            if !next_combination(&mut c, 4) {
                break;
            }
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
        assert_eq!(first_subset_by_size(3, |s| s.len() == 2 && s.contains(&2)), Some(vec![0, 2]));
    }
}
