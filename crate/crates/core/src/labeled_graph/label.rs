use serde::{Deserialize, Serialize};
use std::fmt;

/// Fixed-width parity vector with a mask of constrained positions.
///
/// Unconstrained positions always store 0 in `bits`. Bit `i` is rendered as the
/// `i`-th character of the display string, with `.` for unconstrained bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub width: usize,
    pub bits: u64,
    pub mask: u64,
}

pub(crate) fn full_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl Label {
    /// Fully constrained label.
    pub fn new(width: usize, bits: u64) -> Label {
        let m = full_mask(width);
        Label { width, bits: bits & m, mask: m }
    }

    pub fn masked(width: usize, bits: u64, mask: u64) -> Label {
        let mask = mask & full_mask(width);
        Label { width, bits: bits & mask, mask }
    }

    pub fn zero(width: usize) -> Label {
        Label::new(width, 0)
    }

    pub fn is_full(&self) -> bool {
        self.mask == full_mask(self.width)
    }

    /// `Some(bit)` when position `i` is constrained.
    pub fn bit(&self, i: usize) -> Option<bool> {
        if self.mask >> i & 1 == 1 {
            Some(self.bits >> i & 1 == 1)
        } else {
            None
        }
    }

    /// Free positions as a mask.
    pub fn free(&self) -> u64 {
        full_mask(self.width) & !self.mask
    }

    /// Does the concrete vector `v` agree with this label on its mask?
    pub fn matches(&self, v: u64) -> bool {
        (v ^ self.bits) & self.mask == 0
    }

    /// All concrete vectors compatible with this label, ascending.
    pub fn resolutions(&self) -> Vec<u64> {
        let free = self.free();
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            out.push(self.bits | sub);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        out.sort_unstable();
        out
    }

    pub fn parse(s: &str) -> Option<Label> {
        let width = s.chars().count();
        let mut bits = 0u64;
        let mut mask = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => mask |= 1 << i,
                '1' => {
                    mask |= 1 << i;
                    bits |= 1 << i;
                }
                '.' => {}
                _ => return None,
            }
        }
        Some(Label { width, bits, mask })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            let c = match self.bit(i) {
                Some(true) => '1',
                Some(false) => '0',
                None => '.',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({self})")
    }
}

/// Renders a concrete vector of `width` bits, bit 0 first.
pub fn bits_string(width: usize, v: u64) -> String {
    (0..width).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let l = Label::masked(3, 0b001, 0b101);
        assert_eq!(l.to_string(), "1.0");
        assert_eq!(Label::parse("1.0"), Some(l));
        assert_eq!(l.resolutions(), vec![0b001, 0b011]);
        assert!(l.matches(0b011));
        assert!(!l.matches(0b100));
    }

    #[test]
    fn unconstrained_bits_stored_as_zero() {
        let l = Label::masked(2, 0b11, 0b01);
        assert_eq!(l.bits, 0b01);
        assert_eq!(l.free(), 0b10);
    }
}
