//! 1-factorizations: factorizations whose factors never repeat a symbol.

use crate::error::{Error, Result};
use crate::pattern::DerivedTriple;

/// Length of the longest run of pairwise distinct symbols of `s` starting
/// at `start`.
pub fn one_len(s: &[u8], start: usize) -> usize {
    assert!(start < s.len(), "start {start} out of range for length {}", s.len());
    let mut seen = [false; 256];
    let mut i = 0;
    for &b in &s[start..] {
        if std::mem::replace(&mut seen[b as usize], true) {
            break;
        }
        i += 1;
    }
    i
}

/// Factor boundaries `0 = r_0 < r_1 < ... < r_k = len`. Factor `f` covers
/// positions `r_f..r_{f+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactorization {
    boundaries: Vec<usize>,
}

impl OneFactorization {
    /// Checks the boundaries against `s`.
    pub fn new(boundaries: Vec<usize>, s: &[u8]) -> Result<Self> {
        let f = OneFactorization { boundaries };
        f.validate(s)?;
        Ok(f)
    }

    fn from_boundaries_unchecked(boundaries: Vec<usize>) -> Self {
        OneFactorization { boundaries }
    }

    pub fn validate(&self, s: &[u8]) -> Result<()> {
        let b = &self.boundaries;
        if b.first() != Some(&0) || b.last() != Some(&s.len()) || b.len() < 2 {
            return Err(Error::InvalidFactorization(format!(
                "boundaries {b:?} must run from 0 to {}",
                s.len()
            )));
        }
        for (f, w) in b.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::InvalidFactorization(format!(
                    "factor {f} is empty or reversed ({}..{})",
                    w[0], w[1]
                )));
            }
            let mut seen = [false; 256];
            for &c in &s[w[0]..w[1]] {
                if std::mem::replace(&mut seen[c as usize], true) {
                    return Err(Error::InvalidFactorization(format!(
                        "factor {f} repeats symbol {:?}",
                        c as char
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of factors.
    #[inline]
    pub fn k(&self) -> usize {
        self.boundaries.len() - 1
    }

    #[inline]
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Length of the factorized string.
    #[inline]
    pub fn len(&self) -> usize {
        *self.boundaries.last().unwrap()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position range of factor `f`.
    pub fn range(&self, f: usize) -> std::ops::Range<usize> {
        self.boundaries[f]..self.boundaries[f + 1]
    }

    /// Factor index of every position.
    pub fn factor_of_positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for f in 0..self.k() {
            out.extend(std::iter::repeat_n(f, self.range(f).len()));
        }
        out
    }

    /// The factors of `s` as slices.
    pub fn factors<'a>(&self, s: &'a [u8]) -> Vec<&'a [u8]> {
        (0..self.k()).map(|f| &s[self.range(f)]).collect()
    }
}

/// Greedy left-to-right factorization with maximal factors; yields the
/// minimum number of factors.
pub fn greedy_one_factorization(s: &[u8]) -> OneFactorization {
    assert!(!s.is_empty(), "cannot factorize an empty string");
    let mut boundaries = vec![0];
    let mut pos = 0;
    while pos < s.len() {
        pos += one_len(s, pos);
        boundaries.push(pos);
    }
    OneFactorization::from_boundaries_unchecked(boundaries)
}

/// Shared boundaries that 1-factorize `P`, `P_e` and `P_o` at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCollection {
    pub factorization: OneFactorization,
    pub triple: DerivedTriple,
}

impl OneCollection {
    pub fn k(&self) -> usize {
        self.factorization.k()
    }

    pub fn boundaries(&self) -> &[usize] {
        self.factorization.boundaries()
    }

    /// Factors of each of the three strings.
    pub fn factors(&self) -> [Vec<&[u8]>; 3] {
        self.triple.strings().map(|s| self.factorization.factors(s))
    }
}

pub fn one_collection(triple: &DerivedTriple) -> OneCollection {
    let strings = triple.strings();
    let m = strings[0].len();
    assert!(strings.iter().all(|s| s.len() == m), "strings differ in length");
    let mut boundaries = vec![0];
    let mut pos = 0;
    while pos < m {
        pos += strings.iter().map(|s| one_len(s, pos)).min().unwrap();
        boundaries.push(pos);
    }
    OneCollection {
        factorization: OneFactorization::from_boundaries_unchecked(boundaries),
        triple: triple.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{derive_even_odd, Pattern};

    fn factors(s: &[u8], f: &OneFactorization) -> Vec<String> {
        f.factors(s)
            .into_iter()
            .map(|x| String::from_utf8(x.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn one_len_examples() {
        assert_eq!(one_len(b"cagca", 0), 3);
        assert_eq!(one_len(b"cagca", 3), 2);
        assert_eq!(one_len(b"aaa", 0), 1);
        assert_eq!(one_len(b"abcd", 1), 3);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(factors(b"cagca", &greedy_one_factorization(b"cagca")), ["cag", "ca"]);
        assert_eq!(factors(b"cgaac", &greedy_one_factorization(b"cgaac")), ["cga", "ac"]);
        assert_eq!(factors(b"accga", &greedy_one_factorization(b"accga")), ["ac", "cga"]);
        assert_eq!(greedy_one_factorization(b"abcd").k(), 1);
    }

    #[test]
    fn collection_of_cagca() {
        let c = one_collection(&derive_even_odd(&Pattern::try_from("cagca").unwrap()));
        assert_eq!(c.k(), 3);
        let [f1, f2, f3] = c.factors();
        assert_eq!(f1, [b"ca" as &[u8], b"g", b"ca"]);
        assert_eq!(f2, [b"cg" as &[u8], b"a", b"ac"]);
        assert_eq!(f3, [b"ac" as &[u8], b"c", b"ga"]);
    }

    #[test]
    fn collection_of_single_symbol() {
        let c = one_collection(&derive_even_odd(&Pattern::try_from("a").unwrap()));
        assert_eq!(c.boundaries(), [0, 1]);
    }

    #[test]
    fn validation_rejects_repeats() {
        assert!(OneFactorization::new(vec![0, 2, 3, 5], b"cagca").is_ok());
        assert!(matches!(
            OneFactorization::new(vec![0, 5], b"cagca"),
            Err(Error::InvalidFactorization(_))
        ));
        assert!(OneFactorization::new(vec![0, 3, 3, 5], b"cagca").is_err());
        assert!(OneFactorization::new(vec![0, 3], b"cagca").is_err());
    }

    #[test]
    fn positions_map_to_factors() {
        let f = OneFactorization::new(vec![0, 2, 3, 5], b"cagca").unwrap();
        assert_eq!(f.factor_of_positions(), [0, 0, 1, 2, 2]);
    }
}
