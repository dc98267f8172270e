//! Randomized cross-checks of every engine and of the structural properties
//! the encoded engine relies on.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitvec::BitVector;
use crate::encoded::{build_swap_engine, encoded_prefix_step, EncodedPrefixMatcher, EncodedSwapEngine, SwapEngineState};
use crate::factorize::{greedy_one_factorization, one_collection};
use crate::nfa::{build_explicit_swap_nfa, nfa_simulate};
use crate::oracle::{oracle_dp_search, oracle_enum_search};
use crate::pattern::{derive_even_odd, Pattern, MAX_ENUMERATION_LEN};
use crate::plain::{PlainSwapMatcher, PlainSwapState};

/// Deliberate engine defects used to check that the harness catches bugs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Encoded engine that never feeds the cross-activation sets back.
    DropCUnion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    EngineEquivalence,
    SwapStatesPlain,
    SwapStatesEncoded,
    PairEncoding,
    FactorBound,
    PositionMapping,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::EngineEquivalence => "engine equivalence",
            Check::SwapStatesPlain => "swap-automaton states vs plain decomposition",
            Check::SwapStatesEncoded => "swap-automaton states vs encoded decomposition",
            Check::PairEncoding => "pair encoding of the prefix automaton",
            Check::FactorBound => "1-collection size bound",
            Check::PositionMapping => "position mapping across the 1-collection",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub sigmas: Vec<usize>,
    pub m_max: usize,
    pub n: usize,
    pub iterations: usize,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            sigmas: vec![2, 4],
            m_max: 25,
            n: 2000,
            iterations: 200,
            seed: 1,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: Check,
    pub pattern: Vec<u8>,
    pub text: Vec<u8>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check failed: {}", self.check)?;
        writeln!(f, "pattern: {}", self.pattern.escape_ascii())?;
        writeln!(f, "text:    {}", self.text.escape_ascii())?;
        write!(f, "detail:  {}", self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub cases: usize,
    pub failure: Option<Counterexample>,
}

/// Symbols `a, b, ...` for small alphabets, raw bytes `0..sigma` otherwise.
pub fn alphabet(sigma: usize) -> Vec<u8> {
    assert!((1..=256).contains(&sigma), "alphabet size {sigma} out of range");
    if sigma <= 26 {
        (b'a'..b'a' + sigma as u8).collect()
    } else {
        (0..sigma).map(|b| b as u8).collect()
    }
}

pub fn random_string(rng: &mut impl Rng, alphabet: &[u8], len: usize) -> Vec<u8> {
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// A random swapped version of `p`.
pub fn random_swapped(rng: &mut impl Rng, p: &[u8]) -> Vec<u8> {
    let mut v = p.to_vec();
    let mut i = 0;
    while i + 1 < v.len() {
        if rng.gen_bool(0.4) {
            v.swap(i, i + 1);
            i += 2;
        } else {
            i += 1;
        }
    }
    v
}

/// Random text over `alphabet` with a few swapped occurrences of `p`
/// written in, so that positive cases are common for every alphabet size.
pub fn random_text_with_occurrences(rng: &mut impl Rng, alphabet: &[u8], p: &[u8], n: usize) -> Vec<u8> {
    let mut t = random_string(rng, alphabet, n);
    if n >= p.len() {
        let plants = rng.gen_range(0..=(n / (4 * p.len())).clamp(1, 16));
        for _ in 0..plants {
            let at = rng.gen_range(0..=n - p.len());
            let v = random_swapped(rng, p);
            t[at..at + p.len()].copy_from_slice(&v);
        }
    }
    t
}

fn plain_config(m: usize, st: &PlainSwapState) -> BitVector {
    let mut out = BitVector::from_bits(2 * m, [0]);
    for i in 1..=m {
        if st.d1.test(i - 1) || st.c1.test(i - 1) {
            out.set(i);
        }
    }
    for i in 1..m {
        let aux = if i % 2 == 0 { &st.d2 } else { &st.d3 };
        if aux.test(i - 1) {
            out.set(m + i);
        }
    }
    out
}

/// Per-step agreement between the explicit swap automaton and the plain
/// three-automaton decomposition.
pub fn check_swap_states_plain(p: &Pattern, t: &[u8]) -> Result<(), String> {
    let run = nfa_simulate(&build_explicit_swap_nfa(p), t);
    let trace = PlainSwapMatcher::new(p).trace(t);
    for (j, (want, st)) in run.steps.iter().zip(&trace).enumerate() {
        let got = plain_config(p.len(), st);
        if &got != want {
            return Err(format!("step {j}: nfa {want:?}, decomposition {got:?}"));
        }
    }
    Ok(())
}

/// Per-step agreement between the explicit swap automaton and the decoded
/// state of the encoded engine.
pub fn check_swap_states_encoded(p: &Pattern, t: &[u8]) -> Result<(), String> {
    let run = nfa_simulate(&build_explicit_swap_nfa(p), t);
    let eng = build_swap_engine(p);
    for (j, (want, st)) in run.steps.iter().zip(eng.trace(t)).enumerate() {
        let got = eng.decode_swap_states(&st);
        if &got != want {
            return Err(format!("step {j}: nfa {want:?}, encoded {got:?}"));
        }
    }
    Ok(())
}

/// Decoding the encoded prefix automaton reproduces the subset simulation
/// of the prefix automaton (initial state excluded).
pub fn check_pair_encoding(p: &Pattern, t: &[u8]) -> Result<(), String> {
    let pb = p.as_bytes();
    let m = pb.len();
    let matcher = EncodedPrefixMatcher::new(p);
    let mut st = matcher.initial();
    let mut active = vec![false; m + 1];
    for (j, &c) in t.iter().enumerate() {
        let mut next = vec![false; m + 1];
        for i in 1..=m {
            next[i] = active[i - 1] && pb[i - 1] == c;
        }
        next[1] = pb[0] == c;
        active = next;
        matcher.step(&mut st, c);
        let mut decoded = vec![false; m + 1];
        for pos in matcher.automaton().decode(&st.d, st.label) {
            decoded[pos + 1] = true;
        }
        if decoded[1..] != active[1..] {
            return Err(format!("step {j}: decoded states differ from the subset simulation"));
        }
    }
    Ok(())
}

/// `ceil(m / sigma_P) <= k' <= k <= min(3k' - 2, m)`.
pub fn check_factor_bound(p: &Pattern) -> Result<(), String> {
    let m = p.len();
    let k_prime = greedy_one_factorization(p.as_bytes()).k();
    let k = one_collection(&derive_even_odd(p)).k();
    let lower = m.div_ceil(p.sigma());
    let upper = (3 * k_prime - 2).min(m);
    if lower <= k && k_prime <= k && k <= upper {
        Ok(())
    } else {
        Err(format!("m={m} sigma_p={} k'={k_prime} k={k}", p.sigma()))
    }
}

/// For every factor `f` and position `j` of `f` with `j >= 1`: the symbol
/// of `P` at `j` and the symbol of `P_e` (j even) or `P_o` (j odd) at
/// `j - 1` sit at the same position, and symmetrically.
pub fn check_position_mapping(eng: &EncodedSwapEngine) -> Result<(), String> {
    let [s1, s2, s3] = eng.triple().strings();
    let [a1, a2, a3] = eng.automata();
    let codes = eng.codes();
    let fact = &eng.collection().factorization;
    for f in 0..fact.k() {
        for j in fact.range(f).filter(|&j| j >= 1) {
            let (other, aut) = if j % 2 == 0 { (s2, a2) } else { (s3, a3) };
            let lhs = a1.id(f, codes.code(s1[j]));
            let rhs = aut.id(f, codes.code(s1[j - 1]));
            if lhs != Some(j) || rhs != Some(j) {
                return Err(format!("factor {f}, position {j}: id1={lhs:?} id_other={rhs:?}"));
            }
            let lhs = aut.id(f, codes.code(other[j]));
            let rhs = a1.id(f, codes.code(other[j - 1]));
            if lhs != Some(j) || rhs != Some(j) {
                return Err(format!("factor {f}, position {j}: reverse id={lhs:?} id1={rhs:?}"));
            }
        }
    }
    Ok(())
}

fn faulty_search(eng: &EncodedSwapEngine, fault: Fault, t: &[u8]) -> Vec<usize> {
    match fault {
        Fault::DropCUnion => {
            let [a1, a2, a3] = eng.automata();
            let mut st: SwapEngineState = eng.initial();
            let mut out = Vec::new();
            for (j, &b) in t.iter().enumerate() {
                let c = eng.codes().code(b);
                st.d1 = encoded_prefix_step(&st.d1, st.last, c, a1);
                st.d2 = encoded_prefix_step(&st.d2, st.last, c, a2);
                st.d3 = encoded_prefix_step(&st.d3, st.last, c, a3);
                st.prev = st.last;
                st.last = c;
                if eng.accepts(&st) {
                    out.push(j);
                }
            }
            out
        }
    }
}

/// Runs every check on one case; the first failing check is returned.
pub fn check_case(p: &Pattern, t: &[u8], fault: Option<Fault>) -> Result<(), (Check, String)> {
    let expected = oracle_dp_search(t, p);
    let eng = build_swap_engine(p);
    let mut engines: Vec<(&str, Vec<usize>)> = Vec::new();
    if p.len() <= MAX_ENUMERATION_LEN {
        engines.push(("oracle-enum", oracle_enum_search(t, p).expect("length checked")));
    }
    engines.push(("nfa", nfa_simulate(&build_explicit_swap_nfa(p), t).positions));
    engines.push(("plain-swap", PlainSwapMatcher::new(p).search(t)));
    let encoded = match fault {
        None => eng.search(t),
        Some(f) => faulty_search(&eng, f, t),
    };
    engines.push(("encoded-swap", encoded));
    for (name, got) in engines {
        if got != expected {
            return Err((
                Check::EngineEquivalence,
                format!("{name} reported {got:?}, oracle-dp reported {expected:?}"),
            ));
        }
    }
    check_swap_states_plain(p, t).map_err(|e| (Check::SwapStatesPlain, e))?;
    check_swap_states_encoded(p, t).map_err(|e| (Check::SwapStatesEncoded, e))?;
    check_pair_encoding(p, t).map_err(|e| (Check::PairEncoding, e))?;
    check_factor_bound(p).map_err(|e| (Check::FactorBound, e))?;
    check_position_mapping(&eng).map_err(|e| (Check::PositionMapping, e))?;
    Ok(())
}

const SHRINK_BUDGET: usize = 4000;

/// Greedily deletes text and pattern symbols while the same check keeps
/// failing.
pub fn minimize(p: &[u8], t: &[u8], check: Check, fault: Option<Fault>) -> (Vec<u8>, Vec<u8>, String) {
    let mut budget = SHRINK_BUDGET;
    let mut fails = |p: &[u8], t: &[u8]| -> Option<String> {
        if budget == 0 {
            return None;
        }
        budget -= 1;
        let p = Pattern::new(p).ok()?;
        match check_case(&p, t, fault) {
            Err((c, detail)) if c == check => Some(detail),
            _ => None,
        }
    };
    let (mut p, mut t) = (p.to_vec(), t.to_vec());
    let mut detail = fails(&p, &t).unwrap_or_default();
    let mut chunk = t.len().max(1);
    while chunk >= 1 {
        let mut start = 0;
        while start < t.len() {
            let end = (start + chunk).min(t.len());
            let mut cand = t[..start].to_vec();
            cand.extend_from_slice(&t[end..]);
            if let Some(d) = fails(&p, &cand) {
                t = cand;
                detail = d;
            } else {
                start += chunk;
            }
        }
        if chunk == 1 {
            break;
        }
        chunk /= 2;
    }
    let mut i = 0;
    while i < p.len() && p.len() > 1 {
        let mut cand = p.clone();
        cand.remove(i);
        if let Some(d) = fails(&cand, &t) {
            p = cand;
            detail = d;
        } else {
            i += 1;
        }
    }
    (p, t, detail)
}

/// Generates `iterations` random cases and stops at the first failure.
pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = VerifyReport::default();
    if cfg.sigmas.is_empty() || cfg.m_max == 0 {
        return report;
    }
    for it in 0..cfg.iterations {
        let sigma = cfg.sigmas[it % cfg.sigmas.len()];
        let alpha = alphabet(sigma);
        let m = rng.gen_range(1..=cfg.m_max);
        let p = random_string(&mut rng, &alpha, m);
        let t = random_text_with_occurrences(&mut rng, &alpha, &p, cfg.n);
        report.cases += 1;
        let pattern = Pattern::new(p.clone()).expect("m >= 1");
        if let Err((check, _)) = check_case(&pattern, &t, cfg.fault) {
            let (pattern, text, detail) = minimize(&p, &t, check, cfg.fault);
            report.failure = Some(Counterexample {
                check,
                pattern,
                text,
                detail,
            });
            break;
        }
    }
    report
}
