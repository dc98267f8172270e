//! Pair-encoded prefix automata over a 1-factorization, and the swap engine
//! built from three of them.
//!
//! A configuration of the prefix automaton of a string `S` is stored as a
//! pair `(D, a)`: `a` is the last symbol read and bit `f` of the `k`-bit
//! vector `D` says that the state of factor `f` entered by `a` is active.
//! Because no factor repeats a symbol, that state is unique, so `k` bits
//! suffice where Shift-And needs `m`.
//!
//! The swap engine keeps three such configurations, for `P`, `P_e` and
//! `P_o`, over one shared factorization (the 1-collection) so that state `i`
//! of each automaton sits on the same bit. Cross-activations are computed
//! with per-symbol parity masks:
//!
//! * `c1` collects states of `P_e` / `P_o` that complete a swap. The pair
//!   `(c1, T[j-1])` is a valid configuration of the automaton of `P`.
//! * `c2` / `c3` collect states of `P` from which a swap may start. They
//!   keep the label `T[j]` and `P`'s positions, and are advanced through
//!   transfer tables that read the next symbol from `P_e` / `P_o`. The label
//!   `T[j-1]` would be wrong for them when the state of `P` was itself
//!   reached by completing a swap. Since both are `d1` under a parity mask
//!   of `T[j]`, the step loop folds that mask into the transfer tables and
//!   never stores them.

use crate::bitvec::{BitVector, MaskTable, WORD_BITS};
use crate::error::{Error, Result};
use crate::factorize::{greedy_one_factorization, one_collection, OneCollection, OneFactorization};
use crate::pattern::{derive_even_odd, CodeMap, DerivedTriple, Pattern};

const NO_ID: usize = usize::MAX;

/// Intra- and cross-factor transition masks indexed by a code pair.
///
/// Row `a * width + c`: bit `f` of `intra` is set when position `p` of
/// factor `f` holds `a` in the label string and position `p + 1`, still in
/// factor `f`, holds `c` in the target string. `cross` is the same for `p`
/// the last position of factor `f` and `p + 1` the first of factor `f + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTables {
    width: usize,
    pub intra: MaskTable,
    pub cross: MaskTable,
}

impl PairTables {
    fn build(label: &[u8], target: &[u8], fact: &OneFactorization, codes: &CodeMap) -> Self {
        debug_assert_eq!(label.len(), target.len());
        let width = codes.table_size();
        let k = fact.k();
        let mut intra = MaskTable::new(width * width, k);
        let mut cross = MaskTable::new(width * width, k);
        let factor_of = fact.factor_of_positions();
        for p in 0..label.len().saturating_sub(1) {
            let row = codes.code(label[p]) * width + codes.code(target[p + 1]);
            let f = factor_of[p];
            if factor_of[p + 1] == f {
                intra.set(row, f);
            } else {
                cross.set(row, f);
            }
        }
        PairTables { width, intra, cross }
    }

    #[inline]
    pub fn row(&self, a: usize, c: usize) -> usize {
        a * self.width + c
    }

    /// `(d & intra(a,c)) | ((d & cross(a,c)) << 1)`.
    pub fn apply(&self, d: &BitVector, a: usize, c: usize) -> BitVector {
        let mut out = BitVector::zeros(d.len());
        let r = self.row(a, c);
        or_pair_step(out.words_mut(), d.words(), self.intra.row(r), self.cross.row(r));
        out
    }
}

/// `out |= (d & intra) | ((d & cross) << 1)` across words.
#[inline]
fn or_pair_step(out: &mut [u64], d: &[u64], intra: &[u64], cross: &[u64]) {
    let mut carry = 0;
    for w in 0..out.len() {
        let y = d[w] & cross[w];
        out[w] |= (d[w] & intra[w]) | (y << 1) | carry;
        carry = y >> (WORD_BITS - 1);
    }
}

/// Size of one mask table, for space accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableShape {
    pub masks: usize,
    pub words_per_mask: usize,
}

impl From<&MaskTable> for TableShape {
    fn from(t: &MaskTable) -> Self {
        TableShape {
            masks: t.rows(),
            words_per_mask: t.words_per_mask(),
        }
    }
}

/// The prefix automaton of one string, encoded over a 1-factorization.
#[derive(Clone, Debug)]
pub struct EncodedAutomaton {
    k: usize,
    width: usize,
    len: usize,
    pairs: PairTables,
    init: MaskTable,
    /// `k * width` entries; position of symbol `c` in factor `f`.
    idtab: Vec<usize>,
    first_code: usize,
    last_code: usize,
}

pub fn build_encoded(
    s: &[u8],
    factorization: &OneFactorization,
    codes: &CodeMap,
) -> Result<EncodedAutomaton> {
    factorization.validate(s)?;
    if let Some(&b) = s.iter().find(|&&b| codes.code(b) == CodeMap::SENTINEL) {
        return Err(Error::InvalidFactorization(format!(
            "symbol {:?} has no code",
            b as char
        )));
    }
    let k = factorization.k();
    let width = codes.table_size();
    let mut init = MaskTable::new(width, k);
    init.set(codes.code(s[0]), 0);
    let mut idtab = vec![NO_ID; k * width];
    for f in 0..k {
        for p in factorization.range(f) {
            idtab[f * width + codes.code(s[p])] = p;
        }
    }
    Ok(EncodedAutomaton {
        k,
        width,
        len: s.len(),
        pairs: PairTables::build(s, s, factorization, codes),
        init,
        idtab,
        first_code: codes.code(s[0]),
        last_code: codes.code(s[s.len() - 1]),
    })
}

impl EncodedAutomaton {
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Length of the encoded string.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn last_code(&self) -> usize {
        self.last_code
    }

    pub fn first_code(&self) -> usize {
        self.first_code
    }

    pub fn pairs(&self) -> &PairTables {
        &self.pairs
    }

    pub fn intra(&self, a: usize, c: usize) -> BitVector {
        self.pairs.intra.get(self.pairs.row(a, c))
    }

    pub fn cross(&self, a: usize, c: usize) -> BitVector {
        self.pairs.cross.get(self.pairs.row(a, c))
    }

    pub fn init(&self, c: usize) -> BitVector {
        self.init.get(c)
    }

    pub fn intra_shape(&self) -> TableShape {
        (&self.pairs.intra).into()
    }

    pub fn cross_shape(&self) -> TableShape {
        (&self.pairs.cross).into()
    }

    /// Position of symbol `c` inside factor `f`.
    #[inline]
    pub fn id(&self, f: usize, c: usize) -> Option<usize> {
        match self.idtab[f * self.width + c] {
            NO_ID => None,
            p => Some(p),
        }
    }

    /// Positions `p` (state `p + 1`) active in the configuration `(d, label)`.
    pub fn decode(&self, d: &BitVector, label: usize) -> Vec<usize> {
        d.iter_ones().filter_map(|f| self.id(f, label)).collect()
    }

    /// Whether `(d, label)` contains the final state.
    #[inline]
    pub fn accepts(&self, d: &BitVector, label: usize) -> bool {
        label == self.last_code && d.test(self.k - 1)
    }

    #[inline]
    fn step_into(&self, out: &mut [u64], d: &[u64], a: usize, c: usize) {
        let r = self.pairs.row(a, c);
        or_pair_step(out, d, self.pairs.intra.row(r), self.pairs.cross.row(r));
        for (o, i) in out.iter_mut().zip(self.init.row(c)) {
            *o |= i;
        }
    }
}

/// Successor of the configuration `(d, a)` on reading `c`, labelled `c`.
pub fn encoded_prefix_step(d: &BitVector, a: usize, c: usize, aut: &EncodedAutomaton) -> BitVector {
    let mut out = BitVector::zeros(aut.k);
    aut.step_into(out.words_mut(), d.words(), a, c);
    out
}

/// Exact matcher on the encoded prefix automaton of the pattern.
#[derive(Clone, Debug)]
pub struct EncodedPrefixMatcher {
    codes: CodeMap,
    factorization: OneFactorization,
    aut: EncodedAutomaton,
}

/// State of [`EncodedPrefixMatcher`]: a configuration and its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixState {
    pub d: BitVector,
    pub label: usize,
}

impl EncodedPrefixMatcher {
    pub fn new(p: &Pattern) -> Self {
        let codes = CodeMap::new(p.as_bytes());
        let factorization = greedy_one_factorization(p.as_bytes());
        let aut = build_encoded(p.as_bytes(), &factorization, &codes)
            .expect("greedy factorization is always valid");
        EncodedPrefixMatcher {
            codes,
            factorization,
            aut,
        }
    }

    pub fn automaton(&self) -> &EncodedAutomaton {
        &self.aut
    }

    pub fn factorization(&self) -> &OneFactorization {
        &self.factorization
    }

    pub fn codes(&self) -> &CodeMap {
        &self.codes
    }

    pub fn initial(&self) -> PrefixState {
        PrefixState {
            d: BitVector::zeros(self.aut.k),
            label: CodeMap::SENTINEL,
        }
    }

    #[inline]
    pub fn step(&self, st: &mut PrefixState, byte: u8) -> bool {
        let c = self.codes.code(byte);
        let mut next = [0u64; 4];
        let words = st.d.words().len();
        if words <= next.len() {
            self.aut.step_into(&mut next[..words], st.d.words(), st.label, c);
            st.d.words_mut().copy_from_slice(&next[..words]);
        } else {
            st.d = encoded_prefix_step(&st.d, st.label, c, &self.aut);
        }
        st.label = c;
        self.aut.accepts(&st.d, c)
    }

    pub fn search(&self, t: &[u8]) -> Vec<usize> {
        let mut st = self.initial();
        t.iter()
            .enumerate()
            .filter_map(|(j, &c)| self.step(&mut st, c).then_some(j))
            .collect()
    }
}

pub fn encoded_prefix_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    EncodedPrefixMatcher::new(p).search(t)
}

/// Per-symbol parity masks of one encoded automaton.
///
/// Bit `f` of `ev(c)` is set when `c` sits at an even position `>= 2` of
/// factor `f`; position 0 is left out because state 1 of `P_e` and `P_o`
/// is reached directly from the initial state. `od(c)` marks odd positions.
#[derive(Clone, Debug)]
pub struct ParityMasks {
    ev: MaskTable,
    od: MaskTable,
}

impl ParityMasks {
    pub fn new(aut: &EncodedAutomaton) -> Self {
        let mut ev = MaskTable::new(aut.width, aut.k);
        let mut od = MaskTable::new(aut.width, aut.k);
        for f in 0..aut.k {
            for c in 0..aut.width {
                match aut.id(f, c) {
                    Some(p) if p % 2 == 1 => od.set(c, f),
                    Some(p) if p >= 2 => ev.set(c, f),
                    _ => {}
                }
            }
        }
        ParityMasks { ev, od }
    }

    pub fn ev(&self, c: usize) -> BitVector {
        self.ev.get(c)
    }

    pub fn od(&self, c: usize) -> BitVector {
        self.od.get(c)
    }
}

/// Space used by an [`EncodedSwapEngine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub sigma_p: usize,
    pub k: usize,
    pub words_per_mask: usize,
    pub intra: [TableShape; 3],
    pub cross: [TableShape; 3],
    pub transfer: [TableShape; 4],
    pub total_words: usize,
    /// Interleaved copy read by [`EncodedSwapEngine::scan`].
    pub packed_words: usize,
}

/// One word of every mask indexed by a code pair, interleaved so a step
/// touches one record per word.
#[derive(Clone, Copy, Debug, Default)]
struct PairWord {
    i1: u64,
    k1: u64,
    i2: u64,
    k2: u64,
    t2i: u64,
    t2k: u64,
    i3: u64,
    k3: u64,
    t3i: u64,
    t3k: u64,
}

/// One word of every mask indexed by a single code.
#[derive(Clone, Copy, Debug, Default)]
struct SymWord {
    n1: u64,
    n2: u64,
    n3: u64,
    ev2: u64,
    od3: u64,
}

/// Swap matcher on three pair-encoded automata.
#[derive(Clone, Debug)]
pub struct EncodedSwapEngine {
    codes: CodeMap,
    m: usize,
    collection: OneCollection,
    automata: [EncodedAutomaton; 3],
    parity: [ParityMasks; 3],
    /// From positions of `P` into `P_e` and `P_o` respectively.
    transfer: [PairTables; 2],
    /// The tables above, repacked for the step loop.
    pair_words: Vec<PairWord>,
    sym_words: Vec<SymWord>,
    words: usize,
}

/// Configuration of the swap engine after reading `T[..=j]`.
///
/// `d1..d3` are labelled by `last = T[j]`; `c1` by `prev = T[j-1]`.
/// The other two swap-completion vectors are `d1` restricted to one
/// parity and are recovered by [`EncodedSwapEngine::c2`] and
/// [`EncodedSwapEngine::c3`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapEngineState {
    pub d1: BitVector,
    pub d2: BitVector,
    pub d3: BitVector,
    pub c1: BitVector,
    pub last: usize,
    pub prev: usize,
}

pub fn build_swap_engine(p: &Pattern) -> EncodedSwapEngine {
    let triple = derive_even_odd(p);
    let collection = one_collection(&triple);
    let codes = CodeMap::new(p.as_bytes());
    let fact = &collection.factorization;
    let [s1, s2, s3] = triple.strings();
    let build = |s: &[u8]| build_encoded(s, fact, &codes).expect("1-collection is a valid factorization");
    let automata = [build(s1), build(s2), build(s3)];
    let parity = [
        ParityMasks::new(&automata[0]),
        ParityMasks::new(&automata[1]),
        ParityMasks::new(&automata[2]),
    ];
    let transfer = [
        PairTables::build(s1, s2, fact, &codes),
        PairTables::build(s1, s3, fact, &codes),
    ];
    let words = automata[0].pairs.intra.words_per_mask();
    let width = codes.table_size();
    let [a1, a2, a3] = &automata;
    let [p1, p2, p3] = &parity;
    let [x2, x3] = &transfer;
    let mut pair_words = Vec::with_capacity(width * width * words);
    for r in 0..width * width {
        let a = r / width;
        for w in 0..words {
            pair_words.push(PairWord {
                i1: a1.pairs.intra.row(r)[w],
                k1: a1.pairs.cross.row(r)[w],
                i2: a2.pairs.intra.row(r)[w],
                k2: a2.pairs.cross.row(r)[w],
                t2i: x2.intra.row(r)[w] & p1.ev.row(a)[w],
                t2k: x2.cross.row(r)[w] & p1.ev.row(a)[w],
                i3: a3.pairs.intra.row(r)[w],
                k3: a3.pairs.cross.row(r)[w],
                t3i: x3.intra.row(r)[w] & p1.od.row(a)[w],
                t3k: x3.cross.row(r)[w] & p1.od.row(a)[w],
            });
        }
    }
    let mut sym_words = Vec::with_capacity(width * words);
    for c in 0..width {
        for w in 0..words {
            sym_words.push(SymWord {
                n1: a1.init.row(c)[w],
                n2: a2.init.row(c)[w],
                n3: a3.init.row(c)[w],
                ev2: p2.ev.row(c)[w],
                od3: p3.od.row(c)[w],
            });
        }
    }
    EncodedSwapEngine {
        m: p.len(),
        codes,
        collection,
        automata,
        parity,
        transfer,
        pair_words,
        sym_words,
        words,
    }
}

impl EncodedSwapEngine {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.collection.k()
    }

    pub fn codes(&self) -> &CodeMap {
        &self.codes
    }

    pub fn collection(&self) -> &OneCollection {
        &self.collection
    }

    pub fn triple(&self) -> &DerivedTriple {
        &self.collection.triple
    }

    /// Automata for `P`, `P_e`, `P_o`.
    pub fn automata(&self) -> &[EncodedAutomaton; 3] {
        &self.automata
    }

    pub fn parity(&self) -> &[ParityMasks; 3] {
        &self.parity
    }

    pub fn transfer(&self) -> &[PairTables; 2] {
        &self.transfer
    }

    pub fn space(&self) -> SpaceReport {
        let shapes = |f: fn(&EncodedAutomaton) -> TableShape| {
            [f(&self.automata[0]), f(&self.automata[1]), f(&self.automata[2])]
        };
        let transfer = [
            (&self.transfer[0].intra).into(),
            (&self.transfer[0].cross).into(),
            (&self.transfer[1].intra).into(),
            (&self.transfer[1].cross).into(),
        ];
        let total_words = self
            .automata
            .iter()
            .map(|a| a.pairs.intra.total_words() + a.pairs.cross.total_words() + a.init.total_words())
            .chain(
                self.parity
                    .iter()
                    .map(|p| p.ev.total_words() + p.od.total_words()),
            )
            .chain(
                self.transfer
                    .iter()
                    .map(|t| t.intra.total_words() + t.cross.total_words()),
            )
            .sum();
        SpaceReport {
            sigma_p: self.codes.sigma(),
            k: self.k(),
            words_per_mask: self.automata[0].pairs.intra.words_per_mask(),
            intra: shapes(EncodedAutomaton::intra_shape),
            cross: shapes(EncodedAutomaton::cross_shape),
            transfer,
            total_words,
            packed_words: self.pair_words.len() * size_of::<PairWord>() / 8
                + self.sym_words.len() * size_of::<SymWord>() / 8,
        }
    }

    pub fn initial(&self) -> SwapEngineState {
        let z = BitVector::zeros(self.k());
        SwapEngineState {
            d1: z.clone(),
            d2: z.clone(),
            d3: z.clone(),
            c1: z.clone(),
            last: CodeMap::SENTINEL,
            prev: CodeMap::SENTINEL,
        }
    }

    /// Whether the final state is active in `st`.
    #[inline]
    pub fn accepts(&self, st: &SwapEngineState) -> bool {
        let [a1, a2, a3] = &self.automata;
        let c = st.last;
        let (w, bit) = ((self.k() - 1) / WORD_BITS, 1u64 << ((self.k() - 1) % WORD_BITS));
        if c == a1.last_code && st.d1.words()[w] & bit != 0 {
            return true;
        }
        // Only the derived string ending in the last symbol of P can finish a match.
        let (last, d) = if self.m % 2 == 1 { (a2.last_code, &st.d2) } else { (a3.last_code, &st.d3) };
        c == last && d.words()[w] & bit != 0
    }

    /// Reads code `c` in place.
    #[inline]
    pub fn advance(&self, st: &mut SwapEngineState, c: usize) {
        let nw = self.words;
        let width = self.codes.table_size();
        let r = (st.last * width + c) * nw;
        let rp = (st.prev * width + c) * nw;
        let cur = &self.pair_words[r..r + nw];
        let before = &self.pair_words[rp..rp + nw];
        let sym = &self.sym_words[c * nw..(c + 1) * nw];

        let d1 = st.d1.words_mut();
        let d2 = st.d2.words_mut();
        let d3 = st.d3.words_mut();
        let c1 = st.c1.words_mut();
        assert!(d1.len() == nw && d2.len() == nw && d3.len() == nw && c1.len() == nw);
        let (mut q1, mut q2, mut q3) = (0u64, 0u64, 0u64);
        for w in 0..nw {
            let (t, tp, s) = (&cur[w], &before[w], &sym[w]);
            let y1 = (d1[w] & t.k1) | (c1[w] & tp.k1);
            let y2 = (d2[w] & t.k2) | (d1[w] & t.t2k);
            let y3 = (d3[w] & t.k3) | (d1[w] & t.t3k);
            let e1 = (d1[w] & t.i1) | (c1[w] & tp.i1) | (y1 << 1) | q1 | s.n1;
            let e2 = (d2[w] & t.i2) | (d1[w] & t.t2i) | (y2 << 1) | q2 | s.n2;
            let e3 = (d3[w] & t.i3) | (d1[w] & t.t3i) | (y3 << 1) | q3 | s.n3;
            q1 = y1 >> (WORD_BITS - 1);
            q2 = y2 >> (WORD_BITS - 1);
            q3 = y3 >> (WORD_BITS - 1);
            d1[w] = e1;
            d2[w] = e2;
            d3[w] = e3;
            c1[w] = (e2 & s.ev2) | (e3 & s.od3);
        }
        st.prev = st.last;
        st.last = c;
    }

    #[inline]
    pub fn step(&self, st: &mut SwapEngineState, byte: u8) -> bool {
        self.advance(st, self.codes.code(byte));
        self.accepts(st)
    }

    pub fn search(&self, t: &[u8]) -> Vec<usize> {
        let mut st = self.initial();
        let mut out = Vec::new();
        self.scan(&mut st, t, |j| out.push(j));
        out
    }

    /// Feeds `t`, calling `on_match(j)` for each match ending at `t[j]`.
    pub fn scan(&self, st: &mut SwapEngineState, t: &[u8], mut on_match: impl FnMut(usize)) {
        match self.words {
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

    /// [`Self::advance`] unrolled over `N` words with the state held locally.
    fn scan_words<const N: usize>(&self, st: &mut SwapEngineState, t: &[u8], mut on_match: impl FnMut(usize)) {
        let width = self.codes.table_size();
        let [a1, a2, a3] = &self.automata;
        let top = self.k() - 1;
        let (tw, tb) = (top / WORD_BITS, 1u64 << (top % WORD_BITS));
        let (lx, via_d2) = if self.m % 2 == 1 { (a2.last_code, true) } else { (a3.last_code, false) };
        // Top bit to test in `d1` and in `d2` / `d3`, per symbol read.
        let final_bits: Vec<[u64; 2]> = (0..width)
            .map(|c| [if c == a1.last_code { tb } else { 0 }, if c == lx { tb } else { 0 }])
            .collect();
        let (mut d1, mut d2, mut d3) = (st.d1.to_array::<N>(), st.d2.to_array::<N>(), st.d3.to_array::<N>());
        let mut c1 = st.c1.to_array::<N>();
        let (mut last, mut prev) = (st.last, st.prev);
        let (pair_rows, _) = self.pair_words.as_chunks::<N>();
        let (sym_rows, _) = self.sym_words.as_chunks::<N>();
        for (j, &byte) in t.iter().enumerate() {
            let c = self.codes.code(byte);
            let (cur, before, sym) = (&pair_rows[last * width + c], &pair_rows[prev * width + c], &sym_rows[c]);
            let (mut q1, mut q2, mut q3) = (0u64, 0u64, 0u64);
            for w in 0..N {
                let (t, tp, s) = (&cur[w], &before[w], &sym[w]);
                // Initial transitions only ever set bit 0.
                let (n1, n2, n3) = if w == 0 { (s.n1, s.n2, s.n3) } else { (0, 0, 0) };
                let y1 = (d1[w] & t.k1) | (c1[w] & tp.k1);
                let y2 = (d2[w] & t.k2) | (d1[w] & t.t2k);
                let y3 = (d3[w] & t.k3) | (d1[w] & t.t3k);
                let e1 = (d1[w] & t.i1) | (c1[w] & tp.i1) | (y1 << 1) | q1 | n1;
                let e2 = (d2[w] & t.i2) | (d1[w] & t.t2i) | (y2 << 1) | q2 | n2;
                let e3 = (d3[w] & t.i3) | (d1[w] & t.t3i) | (y3 << 1) | q3 | n3;
                q1 = y1 >> (WORD_BITS - 1);
                q2 = y2 >> (WORD_BITS - 1);
                q3 = y3 >> (WORD_BITS - 1);
                d1[w] = e1;
                d2[w] = e2;
                d3[w] = e3;
                c1[w] = (e2 & s.ev2) | (e3 & s.od3);
            }
            prev = last;
            last = c;
            let dx = if via_d2 { d2[tw] } else { d3[tw] };
            let [g1, gx] = final_bits[c];
            if (d1[tw] & g1) | (dx & gx) != 0 {
                on_match(j);
            }
        }
        st.d1.copy_from_array(&d1);
        st.d2.copy_from_array(&d2);
        st.d3.copy_from_array(&d3);
        st.c1.copy_from_array(&c1);
        st.last = last;
        st.prev = prev;
    }

    pub fn trace(&self, t: &[u8]) -> Vec<SwapEngineState> {
        let mut st = self.initial();
        t.iter()
            .map(|&c| {
                self.step(&mut st, c);
                st.clone()
            })
            .collect()
    }

    /// Active states of the explicit swap automaton (`q0` included) that
    /// `st` represents: spine state `i` from `d1 | c1`, auxiliary state
    /// `m + i` from `d2` for even `i` and from `d3` for odd `i`.
    /// Swap completions into `P_e`, labelled by `last`.
    pub fn c2(&self, st: &SwapEngineState) -> BitVector {
        st.d1.and(&self.parity[0].ev(st.last))
    }

    /// Swap completions into `P_o`, labelled by `last`.
    pub fn c3(&self, st: &SwapEngineState) -> BitVector {
        st.d1.and(&self.parity[0].od(st.last))
    }

    pub fn decode_swap_states(&self, st: &SwapEngineState) -> BitVector {
        let m = self.m;
        let [a1, a2, a3] = &self.automata;
        let mut out = BitVector::from_bits(2 * m, [0]);
        for p in a1.decode(&st.d1, st.last).into_iter().chain(a1.decode(&st.c1, st.prev)) {
            out.set(p + 1);
        }
        for p in a2.decode(&st.d2, st.last) {
            let i = p + 1;
            if i % 2 == 0 && i < m {
                out.set(m + i);
            }
        }
        for p in a3.decode(&st.d3, st.last) {
            let i = p + 1;
            if i % 2 == 1 && i < m {
                out.set(m + i);
            }
        }
        out
    }
}

/// One symbol of the swap engine; `c` is the code of the symbol read.
pub fn encoded_swap_step(state: &SwapEngineState, c: usize, eng: &EncodedSwapEngine) -> SwapEngineState {
    let mut next = state.clone();
    eng.advance(&mut next, c);
    next
}

pub fn encoded_swap_search(t: &[u8], p: &Pattern) -> Vec<usize> {
    build_swap_engine(p).search(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::try_from(s).unwrap()
    }

    fn bits(k: usize, b: &[usize]) -> BitVector {
        BitVector::from_bits(k, b.iter().copied())
    }

    #[test]
    fn tables_for_cagca_collection() {
        let codes = CodeMap::new(b"cagca");
        let fact = OneFactorization::new(vec![0, 2, 3, 5], b"cagca").unwrap();
        let aut = build_encoded(b"cagca", &fact, &codes).unwrap();
        let (c, a, g) = (codes.code(b'c'), codes.code(b'a'), codes.code(b'g'));
        assert_eq!(aut.k(), 3);
        assert_eq!(aut.intra(c, a), bits(3, &[0, 2]));
        assert_eq!(aut.cross(a, g), bits(3, &[0]));
        assert_eq!(aut.cross(g, c), bits(3, &[1]));
        assert_eq!(aut.init(c), bits(3, &[0]));
        assert!(aut.init(a).is_zero());
        assert_eq!(aut.id(0, c), Some(0));
        assert_eq!(aut.id(0, a), Some(1));
        assert_eq!(aut.id(1, g), Some(2));
        assert_eq!(aut.id(2, c), Some(3));
        assert_eq!(aut.id(2, a), Some(4));
        assert_eq!(aut.id(1, c), None);
        for x in 0..4 {
            assert!(aut.intra(0, x).is_zero() && aut.intra(x, 0).is_zero());
            assert!(aut.cross(0, x).is_zero() && aut.cross(x, 0).is_zero());
        }
        assert!(aut.init(0).is_zero());
    }

    #[test]
    fn single_factor_has_no_cross() {
        let codes = CodeMap::new(b"abcd");
        let aut = build_encoded(b"abcd", &greedy_one_factorization(b"abcd"), &codes).unwrap();
        assert_eq!(aut.k(), 1);
        for a in 0..5 {
            for c in 0..5 {
                assert!(aut.cross(a, c).is_zero());
            }
        }
    }

    #[test]
    fn build_rejects_bad_factorization() {
        let codes = CodeMap::new(b"cagca");
        let fact = OneFactorization::new(vec![0, 3, 5], b"cagca").unwrap();
        assert!(build_encoded(b"cagca", &fact, &codes).is_ok());
        // Valid for "cagca" but not for "ccgaa".
        let err = build_encoded(b"ccgaa", &fact, &codes).unwrap_err();
        assert!(matches!(err, Error::InvalidFactorization(_)));
    }

    #[test]
    fn prefix_step_examples() {
        let codes = CodeMap::new(b"cagca");
        let fact = OneFactorization::new(vec![0, 2, 3, 5], b"cagca").unwrap();
        let aut = build_encoded(b"cagca", &fact, &codes).unwrap();
        let (c, a, g) = (codes.code(b'c'), codes.code(b'a'), codes.code(b'g'));
        let d = bits(3, &[0]);
        assert_eq!(encoded_prefix_step(&d, c, a, &aut), bits(3, &[0]));
        assert_eq!(encoded_prefix_step(&d, a, g, &aut), bits(3, &[1]));
        assert!(encoded_prefix_step(&BitVector::zeros(3), a, 0, &aut).is_zero());
    }

    #[test]
    fn prefix_search_examples() {
        assert_eq!(encoded_prefix_search(b"cagca", &pat("cagca")), vec![4]);
        assert_eq!(encoded_prefix_search(b"cagcagca", &pat("cagca")), vec![4, 7]);
        assert!(encoded_prefix_search(b"cag", &pat("cagca")).is_empty());
    }

    #[test]
    fn parity_masks_for_cagca() {
        let eng = build_swap_engine(&pat("cagca"));
        assert_eq!(eng.k(), 3);
        let codes = eng.codes();
        let (c, a, g) = (codes.code(b'c'), codes.code(b'a'), codes.code(b'g'));
        let pm1 = &eng.parity()[0];
        assert_eq!(pm1.ev(g), bits(3, &[1]));
        assert!(pm1.ev(c).is_zero());
        assert_eq!(pm1.od(c), bits(3, &[2]));
        assert_eq!(pm1.od(a), bits(3, &[0]));
        assert_eq!(pm1.ev(a), bits(3, &[2]));
    }

    #[test]
    fn small_engines() {
        let eng = build_swap_engine(&pat("a"));
        assert_eq!(eng.k(), 1);
        assert_eq!(eng.search(b"bab"), vec![1]);

        let eng = build_swap_engine(&pat("ab"));
        assert_eq!(eng.collection().boundaries(), [0, 2]);
        let trace = eng.trace(b"ba");
        assert!(trace[1].d3.test(0));
        assert_eq!(eng.search(b"ba"), vec![1]);
    }

    #[test]
    fn swap_step_trace_cagac() {
        let eng = build_swap_engine(&pat("cagca"));
        let trace = eng.trace(b"cagac");
        let last = &trace[4];
        assert!(last.d2.test(eng.k() - 1));
        assert_eq!(eng.triple().p_even.as_bytes()[4], b'c');
        assert!(eng.accepts(last));
        assert_eq!(eng.search(b"cagac"), vec![4]);
    }

    #[test]
    fn zero_state_with_absent_symbol_stays_zero() {
        let eng = build_swap_engine(&pat("cagca"));
        let s = encoded_swap_step(&eng.initial(), 0, &eng);
        assert!(s.d1.is_zero() && s.d2.is_zero() && s.d3.is_zero());
        assert!(s.c1.is_zero() && eng.c2(&s).is_zero() && eng.c3(&s).is_zero());
    }

    #[test]
    fn swap_after_completed_swap() {
        // Swap (0,1), keep 2, swap (3,4).
        assert_eq!(encoded_swap_search(b"baced", &pat("abcde")), vec![4]);
        assert_eq!(encoded_swap_search(b"xbacedx", &pat("abcde")), vec![5]);
    }

    #[test]
    fn swap_search_examples() {
        assert_eq!(encoded_swap_search(b"cagac", &pat("cagca")), vec![4]);
        let t = b"acgcagcaca";
        assert_eq!(
            encoded_swap_search(t, &pat("cagca")),
            crate::plain::plain_swap_search(t, &pat("cagca"))
        );
    }
}
