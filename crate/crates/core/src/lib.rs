//! Pattern matching with swaps.
//!
//! A pattern `P` matches the text at end position `j` when some swapped
//! version of `P`, obtained by exchanging disjoint pairs of adjacent unequal
//! symbols, equals `T[j-m+1..=j]`.
//!
//! Engines, from slowest to fastest:
//!
//! * [`oracle`]: per-window dynamic programming and enumeration of all
//!   swapped versions.
//! * [`nfa`]: explicit subset simulation of the swap automaton.
//! * [`plain`]: bit-parallel simulation of the automata of `P`, `P_e` and
//!   `P_o` with one bit per pattern position.
//! * [`encoded`]: the same three automata encoded over a shared
//!   1-factorization with `k <= m` bits per vector and `O(sigma^2 k/w)`
//!   words of tables.
//!
//! ```
//! use swapmatch::{encoded_swap_search, Pattern};
//!
//! let p = Pattern::try_from("cagca").unwrap();
//! assert_eq!(encoded_swap_search(b"cagcacagac", &p), vec![4, 9]);
//! ```

pub mod bitvec;
pub mod cli;
pub mod encoded;
pub mod engine;
pub mod error;
pub mod factorize;
pub mod nfa;
pub mod oracle;
pub mod pattern;
pub mod plain;
pub mod verify;

pub use encoded::{
    build_encoded, build_swap_engine, encoded_prefix_search, encoded_prefix_step, encoded_swap_search,
    encoded_swap_step, EncodedAutomaton, EncodedPrefixMatcher, EncodedSwapEngine, ParityMasks,
    SwapEngineState,
};
pub use engine::{Engine, EngineKind, Scanner};
pub use error::{Error, Result};
pub use factorize::{greedy_one_factorization, one_collection, one_len, OneCollection, OneFactorization};
pub use nfa::{build_explicit_swap_nfa, nfa_search, nfa_simulate, ExplicitSwapNfa, NfaRun};
pub use oracle::{naive_exact_search, oracle_dp_search, oracle_enum_search};
pub use pattern::{derive_even_odd, enumerate_swapped_versions, phi, CodeMap, DerivedTriple, Pattern};
pub use plain::{
    plain_swap_search, plain_swap_step, shift_and_search, PlainMasks, PlainSwapMatcher, PlainSwapState,
    ShiftAnd,
};
