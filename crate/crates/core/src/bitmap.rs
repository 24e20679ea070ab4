//! A fixed-length bit vector backed by `u64` words.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    /// Sets bits `start, start + step, …` below `len`.
    #[inline]
    pub fn set_stride(&mut self, start: usize, step: usize) {
        debug_assert!(step > 0);
        let mut i = start;
        while i < self.len {
            self.words[i >> 6] |= 1 << (i & 63);
            i += step;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Indices of clear bits, ascending.
    pub fn iter_zeros(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut inv = !w;
            if wi == self.words.len() - 1 && self.len % 64 != 0 {
                inv &= (1u64 << (self.len % 64)) - 1;
            }
            core::iter::from_fn(move || {
                if inv == 0 {
                    return None;
                }
                let tz = inv.trailing_zeros() as usize;
                inv &= inv - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    /// Appends `other` after the last bit of `self`.
    pub fn append(&mut self, other: &BitSet) {
        let shift = self.len % 64;
        let new_len = self.len + other.len;
        if shift == 0 {
            self.words.truncate(self.len / 64);
            self.words.extend_from_slice(&other.words);
        } else {
            for &w in &other.words {
                let last = self.words.len() - 1;
                self.words[last] |= w << shift;
                self.words.push(w >> (64 - shift));
            }
        }
        self.words.truncate(new_len.div_ceil(64));
        self.len = new_len;
        // Clear bits past the logical end so equality stays structural.
        if new_len % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (new_len % 64)) - 1;
            }
        }
    }
}

impl core::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "BitSet(len={}, ones={})", self.len, self.count_ones())
    }
}
