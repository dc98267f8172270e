//! Uniform front end over every search engine, with resumable scanning.

use std::borrow::Borrow;
use std::fmt;
use std::str::FromStr;

use crate::bitvec::BitVector;
use crate::encoded::{build_swap_engine, EncodedPrefixMatcher, EncodedSwapEngine, PrefixState, SwapEngineState};
use crate::error::Error;
use crate::nfa::{build_explicit_swap_nfa, ExplicitSwapNfa};
use crate::oracle::window_matches;
use crate::pattern::Pattern;
use crate::plain::{PlainSwapMatcher, PlainSwapState, ShiftAnd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineKind {
    OracleDp,
    Nfa,
    PlainSwap,
    EncodedSwap,
    ShiftAnd,
    EncodedPrefix,
}

impl EngineKind {
    pub const ALL: [EngineKind; 6] = [
        EngineKind::OracleDp,
        EngineKind::Nfa,
        EngineKind::PlainSwap,
        EngineKind::EncodedSwap,
        EngineKind::ShiftAnd,
        EngineKind::EncodedPrefix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::OracleDp => "oracle-dp",
            EngineKind::Nfa => "nfa",
            EngineKind::PlainSwap => "plain-swap",
            EngineKind::EncodedSwap => "encoded-swap",
            EngineKind::ShiftAnd => "shift-and",
            EngineKind::EncodedPrefix => "encoded-prefix",
        }
    }

    /// Swap matchers, as opposed to the exact matchers.
    pub fn matches_swaps(self) -> bool {
        !matches!(self, EngineKind::ShiftAnd | EngineKind::EncodedPrefix)
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        EngineKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownEngine(s.to_owned()))
    }
}

/// A compiled engine for one pattern. Immutable and shareable.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Engine {
    OracleDp(Pattern),
    Nfa(ExplicitSwapNfa),
    PlainSwap(PlainSwapMatcher),
    EncodedSwap(EncodedSwapEngine),
    ShiftAnd(ShiftAnd),
    EncodedPrefix(EncodedPrefixMatcher),
}

impl Engine {
    pub fn new(kind: EngineKind, p: &Pattern) -> Self {
        match kind {
            EngineKind::OracleDp => Engine::OracleDp(p.clone()),
            EngineKind::Nfa => Engine::Nfa(build_explicit_swap_nfa(p)),
            EngineKind::PlainSwap => Engine::PlainSwap(PlainSwapMatcher::new(p)),
            EngineKind::EncodedSwap => Engine::EncodedSwap(build_swap_engine(p)),
            EngineKind::ShiftAnd => Engine::ShiftAnd(ShiftAnd::new(p)),
            EngineKind::EncodedPrefix => Engine::EncodedPrefix(EncodedPrefixMatcher::new(p)),
        }
    }

    pub fn kind(&self) -> EngineKind {
        match self {
            Engine::OracleDp(_) => EngineKind::OracleDp,
            Engine::Nfa(_) => EngineKind::Nfa,
            Engine::PlainSwap(_) => EngineKind::PlainSwap,
            Engine::EncodedSwap(_) => EngineKind::EncodedSwap,
            Engine::ShiftAnd(_) => EngineKind::ShiftAnd,
            Engine::EncodedPrefix(_) => EngineKind::EncodedPrefix,
        }
    }

    pub fn pattern_len(&self) -> usize {
        match self {
            Engine::OracleDp(p) => p.len(),
            Engine::Nfa(n) => n.m(),
            Engine::PlainSwap(e) => e.masks().m(),
            Engine::EncodedSwap(e) => e.m(),
            Engine::ShiftAnd(e) => e.initial().len(),
            Engine::EncodedPrefix(e) => e.automaton().len(),
        }
    }

    pub fn scanner(&self) -> Scanner<&Engine> {
        Scanner::new(self)
    }

    fn initial_state(&self) -> ScanState {
        match self {
            Engine::OracleDp(_) => ScanState::Window(Vec::new()),
            Engine::Nfa(n) => ScanState::Nfa(n.initial()),
            Engine::PlainSwap(e) => ScanState::Plain(e.initial()),
            Engine::EncodedSwap(e) => ScanState::Encoded(e.initial()),
            Engine::ShiftAnd(e) => ScanState::ShiftAnd(e.initial()),
            Engine::EncodedPrefix(e) => ScanState::Prefix(e.initial()),
        }
    }

    /// End positions of all matches in `t`.
    pub fn search(&self, t: &[u8]) -> Vec<usize> {
        let mut out = Vec::new();
        self.scanner().feed(t, |j| out.push(j as usize));
        out
    }

    /// Number of matches in `t`.
    pub fn count(&self, t: &[u8]) -> usize {
        let mut n = 0;
        self.scanner().feed(t, |_| n += 1);
        n
    }
}

#[derive(Clone, Debug)]
enum ScanState {
    /// Last `m - 1` bytes seen.
    Window(Vec<u8>),
    Nfa(BitVector),
    Plain(PlainSwapState),
    Encoded(SwapEngineState),
    ShiftAnd(BitVector),
    Prefix(PrefixState),
}

/// Search state carried across input chunks.
///
/// `E` is anything that can lend the engine: `&Engine` for scoped use,
/// `Arc<Engine>` when the scanner has to own it.
#[derive(Clone, Debug)]
pub struct Scanner<E> {
    engine: E,
    state: ScanState,
    consumed: u64,
}

impl<E: Borrow<Engine>> Scanner<E> {
    pub fn new(engine: E) -> Self {
        let state = engine.borrow().initial_state();
        Scanner {
            engine,
            state,
            consumed: 0,
        }
    }

    pub fn engine(&self) -> &Engine {
        self.engine.borrow()
    }

    /// Back to the state before any input.
    pub fn reset(&mut self) {
        self.state = self.engine.borrow().initial_state();
        self.consumed = 0;
    }

    /// Total bytes fed so far.
    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    /// Feeds the next chunk; `on_match` receives absolute end positions.
    pub fn feed(&mut self, chunk: &[u8], mut on_match: impl FnMut(u64)) {
        let base = self.consumed;
        let mut emit = |j: usize, hit: bool| {
            if hit {
                on_match(base + j as u64)
            }
        };
        match (self.engine.borrow(), &mut self.state) {
            (Engine::OracleDp(p), ScanState::Window(tail)) => {
                let m = p.len();
                let mut buf = std::mem::take(tail);
                let old = buf.len();
                buf.extend_from_slice(chunk);
                for end in old.max(m - 1)..buf.len() {
                    let hit = window_matches(&buf[end + 1 - m..=end], p.as_bytes());
                    emit(end - old, hit);
                }
                let keep = buf.len().min(m - 1);
                buf.drain(..buf.len() - keep);
                *tail = buf;
            }
            (Engine::Nfa(nfa), ScanState::Nfa(active)) => {
                for (j, &c) in chunk.iter().enumerate() {
                    *active = nfa.step(active, c);
                    emit(j, active.test(nfa.final_state()));
                }
            }
            (Engine::PlainSwap(e), ScanState::Plain(st)) => e.scan(st, chunk, |j| emit(j, true)),
            (Engine::EncodedSwap(e), ScanState::Encoded(st)) => e.scan(st, chunk, |j| emit(j, true)),
            (Engine::ShiftAnd(e), ScanState::ShiftAnd(d)) => {
                for (j, &c) in chunk.iter().enumerate() {
                    emit(j, e.step(d, c));
                }
            }
            (Engine::EncodedPrefix(e), ScanState::Prefix(st)) => {
                for (j, &c) in chunk.iter().enumerate() {
                    emit(j, e.step(st, c));
                }
            }
            _ => unreachable!("scanner state does not match its engine"),
        }
        self.consumed += chunk.len() as u64;
    }
}
