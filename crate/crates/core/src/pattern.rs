//! Patterns, alphabet remapping and the adjacent-pair swap transform.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest pattern accepted by [`enumerate_swapped_versions`]. The number of
/// swapped versions grows like the Fibonacci numbers.
pub const MAX_ENUMERATION_LEN: usize = 25;

/// A non-empty byte pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    bytes: Vec<u8>,
}

impl Pattern {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern { bytes })
    }

    #[inline]
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false; kept for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct symbols.
    pub fn sigma(&self) -> usize {
        let mut seen = [false; 256];
        self.bytes.iter().for_each(|&b| seen[b as usize] = true);
        seen.iter().filter(|&&s| s).count()
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({:?})", String::from_utf8_lossy(&self.bytes))
    }
}

impl TryFrom<&[u8]> for Pattern {
    type Error = Error;

    fn try_from(value: &[u8]) -> Result<Self> {
        Pattern::new(value)
    }
}

impl TryFrom<&str> for Pattern {
    type Error = Error;

    fn try_from(value: &str) -> Result<Self> {
        Pattern::new(value.as_bytes())
    }
}

/// Dense symbol codes for the symbols of a pattern.
///
/// Pattern symbols get codes `1..=sigma` in order of first occurrence; every
/// other byte maps to the sentinel code `0`. Engine tables are therefore
/// indexed by `sigma + 1` codes instead of 256.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMap {
    codes: [u16; 256],
    symbols: Vec<u8>,
}

impl CodeMap {
    pub const SENTINEL: usize = 0;

    pub fn new(pattern: &[u8]) -> Self {
        let mut codes = [0u16; 256];
        let mut symbols = Vec::new();
        for &b in pattern {
            if codes[b as usize] == 0 {
                symbols.push(b);
                codes[b as usize] = symbols.len() as u16;
            }
        }
        CodeMap { codes, symbols }
    }

    #[inline]
    pub fn code(&self, byte: u8) -> usize {
        self.codes[byte as usize] as usize
    }

    /// The symbol behind a non-sentinel code.
    pub fn decode(&self, code: usize) -> Option<u8> {
        code.checked_sub(1).and_then(|i| self.symbols.get(i)).copied()
    }

    /// Number of distinct pattern symbols.
    #[inline]
    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    /// Size of a code-indexed table, sentinel included.
    #[inline]
    pub fn table_size(&self) -> usize {
        self.symbols.len() + 1
    }

    pub fn encode(&self, bytes: &[u8]) -> Vec<usize> {
        bytes.iter().map(|&b| self.code(b)).collect()
    }
}

/// Swap every adjacent pair `(0,1), (2,3), ...`; an odd trailing symbol stays.
pub fn phi(s: &[u8]) -> Vec<u8> {
    let mut out = s.to_vec();
    for pair in out.chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    out
}

/// A pattern with its two shifted-pair transforms.
///
/// `p_even` is `P[0]` followed by `phi(P[1..])` and handles swaps that start
/// at odd positions; `p_odd` is `phi(P)` and handles swaps that start at even
/// positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTriple {
    pub p: Pattern,
    pub p_even: Pattern,
    pub p_odd: Pattern,
}

impl DerivedTriple {
    pub fn strings(&self) -> [&[u8]; 3] {
        [self.p.as_bytes(), self.p_even.as_bytes(), self.p_odd.as_bytes()]
    }
}

pub fn derive_even_odd(p: &Pattern) -> DerivedTriple {
    let bytes = p.as_bytes();
    let mut even = Vec::with_capacity(bytes.len());
    even.push(bytes[0]);
    even.extend(phi(&bytes[1..]));
    DerivedTriple {
        p: p.clone(),
        p_even: Pattern { bytes: even },
        p_odd: Pattern { bytes: phi(bytes) },
    }
}

/// All swapped versions of `p`: images under disjoint swaps of adjacent,
/// unequal symbols. The identity is always included.
pub fn enumerate_swapped_versions(p: &Pattern) -> Result<BTreeSet<Vec<u8>>> {
    if p.len() > MAX_ENUMERATION_LEN {
        return Err(Error::PatternTooLong {
            m: p.len(),
            max: MAX_ENUMERATION_LEN,
        });
    }
    let mut out = BTreeSet::new();
    let mut buf = p.as_bytes().to_vec();
    extend_versions(&mut buf, 0, &mut out);
    Ok(out)
}

fn extend_versions(buf: &mut Vec<u8>, i: usize, out: &mut BTreeSet<Vec<u8>>) {
    if i + 1 >= buf.len() {
        out.insert(buf.clone());
        return;
    }
    extend_versions(buf, i + 1, out);
    if buf[i] != buf[i + 1] {
        buf.swap(i, i + 1);
        extend_versions(buf, i + 2, out);
        buf.swap(i, i + 1);
    }
}
