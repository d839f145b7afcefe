//! Compact fixed-capacity bitsets over dense index ranges (edge ids, class ids).

use std::fmt;

/// A bitset over indices `0..capacity`. Binary operations require both
/// operands to have the same capacity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bitset {
    bits: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(bits: usize) -> Self {
        Bitset {
            bits,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(bits: usize, indices: I) -> Self {
        let mut s = Bitset::new(bits);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn full(bits: usize) -> Self {
        let mut s = Bitset::new(bits);
        for w in &mut s.words {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.bits % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.bits
    }

    pub fn insert(&mut self, i: u32) {
        debug_assert!((i as usize) < self.bits);
        self.words[i as usize / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: u32) {
        debug_assert!((i as usize) < self.bits);
        self.words[i as usize / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: u32) -> bool {
        (i as usize) < self.bits && self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn or_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.bits, other.bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.bits, other.bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn andnot_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.bits, other.bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn or(a: &Bitset, b: &Bitset) -> Bitset {
        let mut r = a.clone();
        r.or_assign(b);
        r
    }

    /// `support \ self`.
    pub fn complement_within(&self, support: &Bitset) -> Bitset {
        let mut r = support.clone();
        r.andnot_assign(self);
        r
    }

    pub fn and_count(&self, other: &Bitset) -> u32 {
        debug_assert_eq!(self.bits, other.bits);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.bits, other.bits);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest set index, if any.
    pub fn min_index(&self) -> Option<u32> {
        self.ones().next()
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.cur == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word_idx];
        }
        let tz = self.cur.trailing_zeros();
        self.cur &= self.cur - 1;
        Some((self.word_idx * 64) as u32 + tz)
    }
}
