//! Reference searches used to cross-check the bit-parallel engines.

use std::collections::HashSet;

use crate::error::Result;
use crate::pattern::{enumerate_swapped_versions, Pattern};

/// Whether some swapped version of `p` equals `window` (`window.len() == m`).
///
/// Reachability over pattern prefixes: a prefix of length `i` extends by one
/// matched symbol or by a swapped pair. Swapping equal symbols is the
/// identity, so Def-style inequality checks are unnecessary here.
pub fn window_matches(window: &[u8], p: &[u8]) -> bool {
    let m = p.len();
    debug_assert_eq!(window.len(), m);
    let mut ok = vec![false; m + 1];
    ok[0] = true;
    for i in 0..m {
        if !ok[i] {
            continue;
        }
        if window[i] == p[i] {
            ok[i + 1] = true;
        }
        if i + 1 < m && window[i] == p[i + 1] && window[i + 1] == p[i] {
            ok[i + 2] = true;
        }
    }
    ok[m]
}

/// End positions of swap matches by per-window dynamic programming, O(nm).
pub fn oracle_dp_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    let m = p.len();
    if t.len() < m {
        return Vec::new();
    }
    t.windows(m)
        .enumerate()
        .filter(|(_, w)| window_matches(w, p.as_bytes()))
        .map(|(x, _)| x + m - 1)
        .collect()
}

/// End positions of swap matches by exact search for every swapped version.
///
/// Fails for patterns longer than [`crate::pattern::MAX_ENUMERATION_LEN`].
pub fn oracle_enum_search(t: &[u8], p: &Pattern) -> Result<Vec<usize>> {
    let versions = enumerate_swapped_versions(p)?;
    let m = p.len();
    if t.len() < m {
        return Ok(Vec::new());
    }
    let lookup: HashSet<&[u8]> = versions.iter().map(Vec::as_slice).collect();
    Ok(t.windows(m)
        .enumerate()
        .filter(|(_, w)| lookup.contains(w))
        .map(|(x, _)| x + m - 1)
        .collect())
}

/// Plain exact-match end positions.
pub fn naive_exact_search(t: &[u8], p: &[u8]) -> Vec<usize> {
    if t.len() < p.len() {
        return Vec::new();
    }
    t.windows(p.len())
        .enumerate()
        .filter(|(_, w)| *w == p)
        .map(|(x, _)| x + p.len() - 1)
        .collect()
}
