//! The swap automaton as an explicit NFA, simulated state by state.
//!
//! States `0..=m` form the spine of the prefix automaton (state `i` means
//! `i` pattern symbols have been read); states `m+1..2m-1` are auxiliary.
//! Auxiliary state `m + i` is entered from spine state `i - 1` by reading
//! `P[i]` and leaves to spine state `i + 1` by reading `P[i - 1]`, which
//! realizes the swap of positions `i - 1` and `i`.

use std::fmt::Write as _;

use crate::bitvec::BitVector;
use crate::pattern::Pattern;

#[derive(Clone, Debug)]
pub struct ExplicitSwapNfa {
    m: usize,
    pattern: Vec<u8>,
    /// Outgoing labelled edges per state, excluding the self-loop on state 0.
    edges: Vec<Vec<(u8, usize)>>,
}

pub fn build_explicit_swap_nfa(p: &Pattern) -> ExplicitSwapNfa {
    let bytes = p.as_bytes();
    let m = bytes.len();
    let mut edges = vec![Vec::new(); 2 * m];
    edges[0].push((bytes[0], 1));
    if m >= 2 {
        edges[0].push((bytes[1], m + 1));
    }
    for i in 1..m {
        edges[i].push((bytes[i], i + 1));
        if i + 1 < m {
            edges[i].push((bytes[i + 1], i + m + 1));
        }
    }
    for i in m + 1..2 * m {
        edges[i].push((bytes[i - m - 1], i - m + 1));
    }
    ExplicitSwapNfa {
        m,
        pattern: bytes.to_vec(),
        edges,
    }
}

impl ExplicitSwapNfa {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn final_state(&self) -> usize {
        self.m
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn out_edges(&self, state: usize) -> &[(u8, usize)] {
        &self.edges[state]
    }

    /// All edges as `(from, symbol, to)`, sorted; the state-0 self-loop is
    /// implicit and not listed.
    pub fn edge_list(&self) -> Vec<(usize, u8, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(from, es)| es.iter().map(move |&(c, to)| (from, c, to)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The initial configuration `{q0}`.
    pub fn initial(&self) -> BitVector {
        BitVector::from_bits(self.state_count(), [0])
    }

    /// Successor configuration after reading `c`. State 0 stays active.
    pub fn step(&self, active: &BitVector, c: u8) -> BitVector {
        let mut next = self.initial();
        for s in active.iter_ones() {
            for &(label, to) in &self.edges[s] {
                if label == c {
                    next.set(to);
                }
            }
        }
        next
    }

    /// Graphviz rendering with nodes `q0..q{2m-1}`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph swap_automaton {\n  rankdir=LR;\n");
        for q in 0..self.state_count() {
            let shape = if q == self.m { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(s, "  q0 -> q0 [label=\"Σ\"];");
        for (from, c, to) in self.edge_list() {
            let _ = writeln!(s, "  q{from} -> q{to} [label=\"{}\"];", dot_symbol(c));
        }
        s.push_str("}\n");
        s
    }
}

fn dot_symbol(c: u8) -> String {
    match c {
        b'"' => "\\\"".to_owned(),
        b'\\' => "\\\\".to_owned(),
        0x20..=0x7e => (c as char).to_string(),
        _ => format!("\\\\x{c:02x}"),
    }
}

/// Result of a full simulation.
#[derive(Clone, Debug)]
pub struct NfaRun {
    pub positions: Vec<usize>,
    /// Active-state set after each text symbol; `steps[j]` follows `t[j]`.
    pub steps: Vec<BitVector>,
}

/// Subset simulation over the whole text, keeping every configuration.
pub fn nfa_simulate(nfa: &ExplicitSwapNfa, t: &[u8]) -> NfaRun {
    let mut active = nfa.initial();
    let mut positions = Vec::new();
    let mut steps = Vec::with_capacity(t.len());
    for (j, &c) in t.iter().enumerate() {
        active = nfa.step(&active, c);
        if active.test(nfa.final_state()) {
            positions.push(j);
        }
        steps.push(active.clone());
    }
    NfaRun { positions, steps }
}

/// Match positions only.
pub fn nfa_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    let nfa = build_explicit_swap_nfa(p);
    let mut active = nfa.initial();
    let mut out = Vec::new();
    for (j, &c) in t.iter().enumerate() {
        active = nfa.step(&active, c);
        if active.test(nfa.final_state()) {
            out.push(j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::try_from(s).unwrap()
    }

    #[test]
    fn cagca_matches_figure() {
        let nfa = build_explicit_swap_nfa(&pat("cagca"));
        assert_eq!(nfa.state_count(), 10);
        let expected = vec![
            (0, b'a', 6),
            (0, b'c', 1),
            (1, b'a', 2),
            (1, b'g', 7),
            (2, b'c', 8),
            (2, b'g', 3),
            (3, b'a', 9),
            (3, b'c', 4),
            (4, b'a', 5),
            (6, b'c', 2),
            (7, b'a', 3),
            (8, b'g', 4),
            (9, b'c', 5),
        ];
        assert_eq!(nfa.edge_list(), expected);
    }

    #[test]
    fn two_symbol_pattern() {
        let nfa = build_explicit_swap_nfa(&pat("ab"));
        assert_eq!(nfa.state_count(), 4);
        assert_eq!(
            nfa.edge_list(),
            vec![(0, b'a', 1), (0, b'b', 3), (1, b'b', 2), (3, b'a', 2)]
        );
        let run = nfa_simulate(&nfa, b"ba");
        assert_eq!(run.positions, vec![1]);
        assert!(run.steps[0].test(3));
        assert!(run.steps[1].test(2));
    }

    #[test]
    fn single_symbol_pattern_is_spine_only() {
        let nfa = build_explicit_swap_nfa(&pat("a"));
        assert_eq!(nfa.state_count(), 2);
        assert_eq!(nfa.edge_list(), vec![(0, b'a', 1)]);
    }

    #[test]
    fn trace_cagac() {
        let nfa = build_explicit_swap_nfa(&pat("cagca"));
        let run = nfa_simulate(&nfa, b"cagac");
        assert!(run.steps[3].test(9));
        assert!(run.steps[4].test(5));
        assert_eq!(run.positions, vec![4]);
    }

    #[test]
    fn empty_text() {
        let nfa = build_explicit_swap_nfa(&pat("cagca"));
        let run = nfa_simulate(&nfa, b"");
        assert!(run.positions.is_empty());
        assert_eq!(nfa.initial().iter_ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn dot_has_all_nodes_and_edges() {
        let nfa = build_explicit_swap_nfa(&pat("cagca"));
        let dot = nfa.to_dot();
        for q in 0..10 {
            assert!(dot.contains(&format!("  q{q} [shape=")));
        }
        assert!(dot.contains("q0 -> q6 [label=\"a\"]"));
        assert!(dot.contains("q9 -> q5 [label=\"c\"]"));
        assert_eq!(dot.matches(" -> ").count(), 14);
    }
}
