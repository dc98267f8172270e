//! Classic bit-parallel engines over one bit per pattern position.
//!
//! Bit `p` of every vector stands for state `p + 1` of the corresponding
//! prefix automaton. [`ShiftAnd`] simulates the automaton of the pattern
//! alone; [`PlainSwapMatcher`] runs the automata of `P`, `P_e` and `P_o`
//! side by side and moves states between them through the cross-activation
//! sets `c1`, `c2`, `c3`.

use crate::bitvec::{BitVector, MaskTable, WORD_BITS};
use crate::pattern::{derive_even_odd, CodeMap, Pattern};

fn match_masks(s: &[u8], codes: &CodeMap) -> MaskTable {
    let mut t = MaskTable::new(codes.table_size(), s.len());
    for (p, &b) in s.iter().enumerate() {
        t.set(codes.code(b), p);
    }
    t
}

/// Shift-And for exact matching.
#[derive(Clone, Debug)]
pub struct ShiftAnd {
    codes: CodeMap,
    masks: MaskTable,
    m: usize,
}

impl ShiftAnd {
    pub fn new(p: &Pattern) -> Self {
        let codes = CodeMap::new(p.as_bytes());
        let masks = match_masks(p.as_bytes(), &codes);
        ShiftAnd {
            codes,
            masks,
            m: p.len(),
        }
    }

    pub fn initial(&self) -> BitVector {
        BitVector::zeros(self.m)
    }

    /// Reads one byte; returns whether a match ends here.
    #[inline]
    pub fn step(&self, d: &mut BitVector, byte: u8) -> bool {
        let mask = self.masks.row(self.codes.code(byte));
        let mut carry = 1u64;
        for (w, &b) in d.words_mut().iter_mut().zip(mask) {
            let next = *w >> (WORD_BITS - 1);
            *w = ((*w << 1) | carry) & b;
            carry = next;
        }
        d.test(self.m - 1)
    }

    pub fn search(&self, t: &[u8]) -> Vec<usize> {
        let mut d = self.initial();
        t.iter()
            .enumerate()
            .filter_map(|(j, &c)| self.step(&mut d, c).then_some(j))
            .collect()
    }
}

pub fn shift_and_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    ShiftAnd::new(p).search(t)
}

/// Match masks for the three automata plus position parity masks.
#[derive(Clone, Debug)]
pub struct PlainMasks {
    pub codes: CodeMap,
    pub b1: MaskTable,
    pub b2: MaskTable,
    pub b3: MaskTable,
    /// Bit `p` set iff `p` is even (state index `p + 1` odd).
    pub pos_even: BitVector,
    pub pos_odd: BitVector,
}

impl PlainMasks {
    pub fn new(p: &Pattern) -> Self {
        let triple = derive_even_odd(p);
        let codes = CodeMap::new(p.as_bytes());
        let [s1, s2, s3] = triple.strings();
        let m = p.len();
        PlainMasks {
            b1: match_masks(s1, &codes),
            b2: match_masks(s2, &codes),
            b3: match_masks(s3, &codes),
            pos_even: BitVector::from_bits(m, (0..m).step_by(2)),
            pos_odd: BitVector::from_bits(m, (1..m).step_by(2)),
            codes,
        }
    }

    pub fn m(&self) -> usize {
        self.pos_even.len()
    }

    /// Total words held by the three match-mask tables.
    pub fn table_words(&self) -> usize {
        self.b1.total_words() + self.b2.total_words() + self.b3.total_words()
    }
}

/// Configuration of the three simulated automata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainSwapState {
    pub d1: BitVector,
    pub d2: BitVector,
    pub d3: BitVector,
    pub c1: BitVector,
    pub c2: BitVector,
    pub c3: BitVector,
}

impl PlainSwapState {
    pub fn new(m: usize) -> Self {
        let z = BitVector::zeros(m);
        PlainSwapState {
            d1: z.clone(),
            d2: z.clone(),
            d3: z.clone(),
            c1: z.clone(),
            c2: z.clone(),
            c3: z,
        }
    }

    /// Whether the final state of the swap automaton is active.
    #[inline]
    pub fn accepts(&self) -> bool {
        let top = self.d1.len() - 1;
        self.d1.test(top) || self.c1.test(top)
    }

    /// In-place version of [`plain_swap_step`].
    #[inline]
    pub fn advance(&mut self, masks: &PlainMasks, code: usize) {
        let (b1, b2, b3) = (masks.b1.row(code), masks.b2.row(code), masks.b3.row(code));
        let ev = masks.pos_even.words();
        let od = masks.pos_odd.words();
        let (mut k1, mut k2, mut k3) = (1u64, 1u64, 1u64);
        let d1 = self.d1.words_mut();
        let d2 = self.d2.words_mut();
        let d3 = self.d3.words_mut();
        let c1 = self.c1.words_mut();
        let c2 = self.c2.words_mut();
        let c3 = self.c3.words_mut();
        let nw = d1.len();
        assert!(d2.len() == nw && d3.len() == nw && c1.len() == nw && c2.len() == nw);
        assert!(c3.len() == nw && b1.len() == nw && b2.len() == nw && b3.len() == nw);
        assert!(ev.len() == nw && od.len() == nw);
        for w in 0..nw {
            let x1 = d1[w] | c1[w];
            let x2 = d2[w] | c2[w];
            let x3 = d3[w] | c3[w];
            let n1 = ((x1 << 1) | k1) & b1[w];
            let n2 = ((x2 << 1) | k2) & b2[w];
            let n3 = ((x3 << 1) | k3) & b3[w];
            k1 = x1 >> (WORD_BITS - 1);
            k2 = x2 >> (WORD_BITS - 1);
            k3 = x3 >> (WORD_BITS - 1);
            d1[w] = n1;
            d2[w] = n2;
            d3[w] = n3;
            c2[w] = n1 & ev[w];
            c3[w] = n1 & od[w];
            c1[w] = (n2 & ev[w]) | (n3 & od[w]);
        }
    }
}

/// One symbol of the three-automaton simulation.
pub fn plain_swap_step(state: &PlainSwapState, masks: &PlainMasks, code: usize) -> PlainSwapState {
    let mut next = state.clone();
    next.advance(masks, code);
    next
}

/// Swap matcher over `O(sigma * ceil(m/w))` words of masks.
#[derive(Clone, Debug)]
pub struct PlainSwapMatcher {
    masks: PlainMasks,
}

impl PlainSwapMatcher {
    pub fn new(p: &Pattern) -> Self {
        PlainSwapMatcher {
            masks: PlainMasks::new(p),
        }
    }

    pub fn masks(&self) -> &PlainMasks {
        &self.masks
    }

    pub fn initial(&self) -> PlainSwapState {
        PlainSwapState::new(self.masks.m())
    }

    #[inline]
    pub fn step(&self, state: &mut PlainSwapState, byte: u8) -> bool {
        state.advance(&self.masks, self.masks.codes.code(byte));
        state.accepts()
    }

    pub fn search(&self, t: &[u8]) -> Vec<usize> {
        let mut st = self.initial();
        let mut out = Vec::new();
        self.scan(&mut st, t, |j| out.push(j));
        out
    }

    /// Feeds `t`, calling `on_match(j)` for each match ending at `t[j]`.
    pub fn scan(&self, st: &mut PlainSwapState, t: &[u8], mut on_match: impl FnMut(usize)) {
        match st.d1.words().len() {
            1 => self.scan_words::<1>(st, t, on_match),
            2 => self.scan_words::<2>(st, t, on_match),
            3 => self.scan_words::<3>(st, t, on_match),
            4 => self.scan_words::<4>(st, t, on_match),
            5 => self.scan_words::<5>(st, t, on_match),
            6 => self.scan_words::<6>(st, t, on_match),
            7 => self.scan_words::<7>(st, t, on_match),
            8 => self.scan_words::<8>(st, t, on_match),
            _ => {
                for (j, &c) in t.iter().enumerate() {
                    if self.step(st, c) {
                        on_match(j);
                    }
                }
            }
        }
    }

    /// [`Self::step`] unrolled over `N` words with the state held locally.
    fn scan_words<const N: usize>(&self, st: &mut PlainSwapState, t: &[u8], mut on_match: impl FnMut(usize)) {
        let mk = &self.masks;
        let ev: [u64; N] = mk.pos_even.to_array();
        let od: [u64; N] = mk.pos_odd.to_array();
        let (mut d1, mut d2, mut d3) = (st.d1.to_array::<N>(), st.d2.to_array::<N>(), st.d3.to_array::<N>());
        let (mut c1, mut c2, mut c3) = (st.c1.to_array::<N>(), st.c2.to_array::<N>(), st.c3.to_array::<N>());
        let top = mk.m() - 1;
        let (tw, tb) = (top / WORD_BITS, 1u64 << (top % WORD_BITS));
        let (r1, _) = mk.b1.data().as_chunks::<N>();
        let (r2, _) = mk.b2.data().as_chunks::<N>();
        let (r3, _) = mk.b3.data().as_chunks::<N>();
        for (j, &byte) in t.iter().enumerate() {
            let code = mk.codes.code(byte);
            let (b1, b2, b3) = (&r1[code], &r2[code], &r3[code]);
            let (mut k1, mut k2, mut k3) = (1u64, 1u64, 1u64);
            for w in 0..N {
                let x1 = d1[w] | c1[w];
                let x2 = d2[w] | c2[w];
                let x3 = d3[w] | c3[w];
                d1[w] = ((x1 << 1) | k1) & b1[w];
                d2[w] = ((x2 << 1) | k2) & b2[w];
                d3[w] = ((x3 << 1) | k3) & b3[w];
                k1 = x1 >> (WORD_BITS - 1);
                k2 = x2 >> (WORD_BITS - 1);
                k3 = x3 >> (WORD_BITS - 1);
                c2[w] = d1[w] & ev[w];
                c3[w] = d1[w] & od[w];
                c1[w] = (d2[w] & ev[w]) | (d3[w] & od[w]);
            }
            if (d1[tw] | c1[tw]) & tb != 0 {
                on_match(j);
            }
        }
        st.d1.copy_from_array(&d1);
        st.d2.copy_from_array(&d2);
        st.d3.copy_from_array(&d3);
        st.c1.copy_from_array(&c1);
        st.c2.copy_from_array(&c2);
        st.c3.copy_from_array(&c3);
    }

    /// Every intermediate state, for correspondence checks.
    pub fn trace(&self, t: &[u8]) -> Vec<PlainSwapState> {
        let mut st = self.initial();
        t.iter()
            .map(|&c| {
                self.step(&mut st, c);
                st.clone()
            })
            .collect()
    }
}

pub fn plain_swap_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    PlainSwapMatcher::new(p).search(t)
}
