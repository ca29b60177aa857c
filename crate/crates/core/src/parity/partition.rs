use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Partition of `0..k`, stored as block ids normalized by first appearance.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<usize>,
}

impl Partition {
    /// Normalizes arbitrary block ids.
    pub fn new(ids: &[usize]) -> Partition {
        let mut seen: Vec<usize> = Vec::new();
        let blocks = ids
            .iter()
            .map(|b| match seen.iter().position(|x| x == b) {
                Some(i) => i,
                None => {
                    seen.push(*b);
                    seen.len() - 1
                }
            })
            .collect();
        Partition { blocks }
    }

    pub fn from_parts(k: usize, parts: &[Vec<usize>]) -> Partition {
        let mut ids = vec![usize::MAX; k];
        for (b, part) in parts.iter().enumerate() {
            for &x in part {
                ids[x] = b;
            }
        }
        assert!(ids.iter().all(|&b| b != usize::MAX), "parts must cover 0..k");
        Partition::new(&ids)
    }

    /// The coarsest partition (a single block, or nothing when k = 0).
    pub fn one_block(k: usize) -> Partition {
        Partition { blocks: vec![0; k] }
    }

    pub fn discrete(k: usize) -> Partition {
        Partition { blocks: (0..k).collect() }
    }

    /// Bits equal to 0 versus bits equal to 1.
    pub fn from_parity(k: usize, bits: u64) -> Partition {
        let ids: Vec<usize> = (0..k).map(|i| (bits >> i & 1) as usize).collect();
        Partition::new(&ids)
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.blocks[i]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.blocks[i] == self.blocks[j]
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.blocks.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn is_finer_than(&self, other: &Partition) -> bool {
        self.size() == other.size()
            && (0..self.size()).all(|i| {
                (0..self.size()).all(|j| !self.same_block(i, j) || other.same_block(i, j))
            })
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition, Error> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let pairs: Vec<(usize, usize)> = self.blocks.iter().copied().zip(other.blocks.iter().copied()).collect();
        let mut keys: Vec<(usize, usize)> = Vec::new();
        let ids: Vec<usize> = pairs
            .iter()
            .map(|p| match keys.iter().position(|k| k == p) {
                Some(i) => i,
                None => {
                    keys.push(*p);
                    keys.len() - 1
                }
            })
            .collect();
        Ok(Partition::new(&ids))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts()
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// Common refinement of all inputs; the empty meet over ground size `k` is
/// the one-block partition.
pub fn partition_meet(ps: &[Partition]) -> Result<Partition, Error> {
    let Some(first) = ps.first() else {
        return Ok(Partition::one_block(0));
    };
    ps[1..].iter().try_fold(first.clone(), |acc, p| acc.meet(p))
}

fn meet_of(k: usize, ps: &[Partition], idx: impl Iterator<Item = usize>) -> Partition {
    idx.fold(Partition::one_block(k), |acc, i| acc.meet(&ps[i]).expect("sizes checked"))
}

/// An inclusion-minimal index set whose meet equals the meet of all inputs,
/// by greedy removal; such a set has fewer than `k` elements.
pub fn minimal_generating_subset(ps: &[Partition]) -> Result<Vec<usize>, Error> {
    let Some(first) = ps.first() else { return Ok(Vec::new()) };
    let k = first.size();
    if let Some(p) = ps.iter().find(|p| p.size() != k) {
        return Err(Error::SizeMismatch(k, p.size()));
    }
    let target = meet_of(k, ps, 0..ps.len());
    let mut t: Vec<usize> = (0..ps.len()).collect();
    let mut i = 0;
    while i < t.len() {
        let without: Vec<usize> = t.iter().copied().filter(|&x| x != t[i]).collect();
        if meet_of(k, ps, without.iter().copied()) == target {
            t = without;
        } else {
            i += 1;
        }
    }
    Ok(t)
}

/// All partitions obtained from `phi` by merging blocks until exactly
/// `|phi| - d` remain.
pub fn enumerate_coarsenings(phi: &Partition, d: usize) -> Vec<Partition> {
    let b = phi.num_blocks();
    if d > b || (d == b && b > 0) {
        return Vec::new();
    }
    let target = b - d;
    let mut out: BTreeSet<Partition> = BTreeSet::new();
    // restricted growth strings over the blocks of phi with exactly `target` groups
    let mut rgs = vec![0usize; b];
    fn rec(pos: usize, used: usize, target: usize, rgs: &mut Vec<usize>, phi: &Partition, out: &mut BTreeSet<Partition>) {
        let b = rgs.len();
        if used + (b - pos) < target {
            return;
        }
        if pos == b {
            if used == target {
                let ids: Vec<usize> = phi.block_ids().iter().map(|&x| rgs[x]).collect();
                out.insert(Partition::new(&ids));
            }
            return;
        }
        for g in 0..=used.min(target.saturating_sub(1)) {
            rgs[pos] = g;
            rec(pos + 1, used.max(g + 1), target, rgs, phi, out);
        }
    }
    rec(0, 0, target, &mut rgs, phi, &mut out);
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_examples() {
        let a = Partition::from_parts(3, &[vec![0, 1], vec![2]]);
        let b = Partition::from_parts(3, &[vec![0], vec![1, 2]]);
        assert_eq!(a.meet(&b).unwrap(), Partition::discrete(3));
        assert_eq!(a.meet(&a).unwrap(), a);
        assert_eq!(a.meet(&Partition::one_block(3)).unwrap(), a);
        assert!(a.meet(&Partition::one_block(2)).is_err());
    }

    #[test]
    fn display_and_parity() {
        assert_eq!(Partition::from_parity(2, 0b01).to_string(), "{{0},{1}}");
        assert_eq!(Partition::from_parity(2, 0b11).to_string(), "{{0,1}}");
        assert_eq!(Partition::from_parity(0, 0).num_blocks(), 0);
    }

    #[test]
    fn coarsenings() {
        let phi = Partition::discrete(3);
        assert_eq!(enumerate_coarsenings(&phi, 1).len(), 3);
        assert_eq!(enumerate_coarsenings(&phi, 0), vec![phi.clone()]);
        let two = Partition::discrete(2);
        assert_eq!(enumerate_coarsenings(&two, 1), vec![Partition::one_block(2)]);
        assert_eq!(enumerate_coarsenings(&Partition::discrete(4), 2).len(), 7);
    }

    #[test]
    fn generating_subset() {
        let ps = vec![
            Partition::from_parts(3, &[vec![0], vec![1, 2]]),
            Partition::from_parts(3, &[vec![0, 1], vec![2]]),
            Partition::from_parts(3, &[vec![0, 2], vec![1]]),
        ];
        let t = minimal_generating_subset(&ps).unwrap();
        assert!(t.len() < 3);
        let dup = vec![ps[0].clone(), ps[0].clone()];
        assert_eq!(minimal_generating_subset(&dup).unwrap().len(), 1);
        assert_eq!(minimal_generating_subset(&[Partition::one_block(3)]).unwrap(), Vec::<usize>::new());
    }
}
