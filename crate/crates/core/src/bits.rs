//! Growable packed bit vector used for exponent vectors and column
//! combinations.

use std::fmt;

const WORD_BITS: usize = 64;

/// A packed, growable bit vector over GF(2).
///
/// Trailing zero words are always trimmed, so two vectors with the same set
/// bits compare equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn new() -> Self {
        Self { words: Vec::new() }
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(ones: I) -> Self {
        let mut v = Self::new();
        for i in ones {
            v.toggle(i);
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.toggle(i);
        }
    }

    pub fn toggle(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % WORD_BITS);
        self.trim();
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Index of the lowest set bit.
    #[inline]
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Index of the highest set bit.
    #[inline]
    pub fn highest_one(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - last.leading_zeros() as usize))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
        self.trim();
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    #[inline]
    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl std::ops::BitXor for &BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toggle_and_trim() {
        let mut v = BitVec::new();
        v.toggle(130);
        assert_eq!(v.highest_one(), Some(130));
        assert_eq!(v.lowest_one(), Some(130));
        v.toggle(130);
        assert!(v.is_zero());
        assert_eq!(v, BitVec::new());
    }

    #[test]
    fn xor_and_iterate() {
        let a = BitVec::from_ones([0, 3, 64, 200]);
        let b = BitVec::from_ones([3, 200]);
        let c = &a ^ &b;
        assert_eq!(c.iter_ones().collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(c.count_ones(), 2);
        assert!(c.get(64));
        assert!(!c.get(3));
        assert!(!c.get(10_000));
    }
}
