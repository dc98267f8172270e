//! Fixed-length bit vectors stored in machine words.
//!
//! Every automaton configuration and every transition mask in the crate is a
//! [`BitVector`]. Bit `i` lives in word `i / 64` at position `i % 64`, so a
//! left shift by one moves bit `i` to bit `i + 1`, carrying across words.
//! Bits at positions `>= len` are kept at zero after every mutation.
//!
//! [`MaskTable`] packs many same-length masks into one allocation; the hot
//! loops of the engines read table rows as raw word slices.

use std::fmt;

/// Width of a storage word in bits.
pub const WORD_BITS: usize = u64::BITS as usize;

/// Number of words needed to hold `len` bits.
#[inline]
pub const fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// All-one vector of `len` bits.
    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            words: vec![!0; words_for(len)],
            len,
        };
        v.normalize();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = usize>>(len: usize, bits: I) -> Self {
        let mut v = Self::zeros(len);
        for i in bits {
            v.set(i);
        }
        v
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Mutable access to the storage words. Callers must leave the bits above
    /// `len` clear; [`BitVector::normalize`] restores that if needed.
    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Copies the words into a fixed-size array; panics unless there are `N`.
    #[inline]
    pub fn to_array<const N: usize>(&self) -> [u64; N] {
        self.words[..].try_into().expect("word count mismatch")
    }

    /// Overwrites the words from a fixed-size array; panics unless there are `N`.
    #[inline]
    pub fn copy_from_array<const N: usize>(&mut self, words: &[u64; N]) {
        self.words.copy_from_slice(words);
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn clear_all(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in increasing order.
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

    pub fn and_assign(&mut self, other: &BitVector) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVector) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &BitVector) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.and_assign(other);
        r
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.or_assign(other);
        r
    }

    pub fn and_not(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.and_not_assign(other);
        r
    }

    pub fn not(&self) -> BitVector {
        let mut r = BitVector {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        r.normalize();
        r
    }

    /// Shift towards higher indices by one. Bit `len - 1` falls off, bit 0
    /// becomes zero.
    pub fn shl1_assign(&mut self) {
        let mut carry = 0;
        for w in self.words.iter_mut() {
            let next = *w >> (WORD_BITS - 1);
            *w = (*w << 1) | carry;
            carry = next;
        }
        self.normalize();
    }

    pub fn shl1(&self) -> BitVector {
        let mut r = self.clone();
        r.shl1_assign();
        r
    }

    /// Clear the unused high bits of the last word.
    #[inline]
    pub fn normalize(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    #[inline]
    fn check_len(&self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}]{{", self.len)?;
        for (n, i) in self.iter_ones().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A dense table of equal-length masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskTable {
    bits: usize,
    words_per_mask: usize,
    rows: usize,
    data: Vec<u64>,
}

impl MaskTable {
    pub fn new(rows: usize, bits: usize) -> Self {
        let words_per_mask = words_for(bits);
        MaskTable {
            bits,
            words_per_mask,
            rows,
            data: vec![0; rows * words_per_mask],
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Logical bit length of each mask.
    #[inline]
    pub fn bits(&self) -> usize {
        self.bits
    }

    #[inline]
    pub fn words_per_mask(&self) -> usize {
        self.words_per_mask
    }

    /// All rows back to back.
    #[inline]
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    /// Total storage in words.
    pub fn total_words(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        let s = r * self.words_per_mask;
        &self.data[s..s + self.words_per_mask]
    }

    #[inline]
    pub fn test(&self, r: usize, bit: usize) -> bool {
        debug_assert!(bit < self.bits);
        self.row(r)[bit / WORD_BITS] >> (bit % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, bit: usize) {
        assert!(bit < self.bits, "bit {bit} out of range for length {}", self.bits);
        let s = r * self.words_per_mask;
        self.data[s + bit / WORD_BITS] |= 1 << (bit % WORD_BITS);
    }

    /// Copy of row `r` as a standalone vector.
    pub fn get(&self, r: usize) -> BitVector {
        let mut v = BitVector::zeros(self.bits);
        v.words_mut().copy_from_slice(self.row(r));
        v
    }
}
