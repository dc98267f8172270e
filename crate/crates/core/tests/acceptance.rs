//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use swapmatch::bitvec::{words_for, BitVector, WORD_BITS};
use swapmatch::cli::bench::run_bench;
use swapmatch::verify::{
    alphabet, check_factor_bound, check_swap_states_encoded, check_swap_states_plain, random_string,
    random_text_with_occurrences,
};
use swapmatch::{
    build_explicit_swap_nfa, build_swap_engine, derive_even_odd, encoded_prefix_search, greedy_one_factorization,
    naive_exact_search, nfa_simulate, one_collection, oracle_dp_search, oracle_enum_search, shift_and_search,
    EngineKind, Pattern, PlainSwapMatcher,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn pat(s: &[u8]) -> Pattern {
    Pattern::new(s.to_vec()).unwrap()
}

fn factors(s: &[u8], bounds: &[usize]) -> Vec<String> {
    bounds
        .windows(2)
        .map(|w| String::from_utf8_lossy(&s[w[0]..w[1]]).into_owned())
        .collect()
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let p = pat(b"cagca");
    let tr = derive_even_odd(&p);
    let mut bad = Vec::new();
    if (tr.p_even.as_bytes(), tr.p_odd.as_bytes()) != (&b"cgaac"[..], &b"accga"[..]) {
        bad.push("derived strings".to_string());
    }
    for (s, want) in [
        (&b"cagca"[..], vec!["cag", "ca"]),
        (b"cgaac", vec!["cga", "ac"]),
        (b"accga", vec!["ac", "cga"]),
    ] {
        let got = factors(s, greedy_one_factorization(s).boundaries());
        if got != want {
            bad.push(format!("greedy {}: {got:?}", String::from_utf8_lossy(s)));
        }
    }
    let col = one_collection(&tr);
    let want = [vec!["ca", "g", "ca"], vec!["cg", "a", "ac"], vec!["ac", "c", "ga"]];
    for (s, want) in tr.strings().into_iter().zip(want) {
        let got = factors(s, col.boundaries());
        if got != want {
            bad.push(format!("collection {}: {got:?}", String::from_utf8_lossy(s)));
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(1) {
        bad.push(format!("took {took:?}"));
    }
    if bad.is_empty() {
        Ok(format!("all exact, {took:?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn oracle_equivalence() -> Outcome {
    const CASES: usize = 10_000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sigmas = [2, 4, 20, 256];
    for i in 0..CASES {
        let alpha = alphabet(sigmas[i % sigmas.len()]);
        let m = rng.gen_range(1..=25);
        let p = random_string(&mut rng, &alpha, m);
        let t = random_text_with_occurrences(&mut rng, &alpha, &p, 2000);
        let p = Pattern::new(p).unwrap();
        let want = oracle_dp_search(&t, &p);
        let results = [
            ("oracle-enum", oracle_enum_search(&t, &p).unwrap()),
            ("nfa", nfa_simulate(&build_explicit_swap_nfa(&p), &t).positions),
            ("plain-swap", PlainSwapMatcher::new(&p).search(&t)),
            ("encoded-swap", build_swap_engine(&p).search(&t)),
        ];
        for (name, got) in results {
            if got != want {
                return Err(format!("case {i}: {name} differs for P={:?}", p.as_bytes().escape_ascii().to_string()));
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        return Err(format!("{CASES} cases agree but took {took:?}"));
    }
    Ok(format!("{CASES} cases, 0 discrepancies, {took:?}"))
}

fn swap_state_correspondence() -> Outcome {
    const CASES: usize = 600;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigmas = [2, 3, 4, 20];
    for i in 0..CASES {
        let alpha = alphabet(sigmas[i % sigmas.len()]);
        let m = rng.gen_range(1..=25);
        let p = random_string(&mut rng, &alpha, m);
        let t = random_text_with_occurrences(&mut rng, &alpha, &p, 500);
        let p = Pattern::new(p).unwrap();
        check_swap_states_plain(&p, &t).map_err(|e| format!("case {i} (plain): {e}"))?;
        check_swap_states_encoded(&p, &t).map_err(|e| format!("case {i} (encoded): {e}"))?;
    }
    Ok(format!("{CASES} cases, every step equal"))
}

fn factor_bound() -> Outcome {
    const CASES: usize = 6_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sigmas = [2, 4, 8, 26];
    for i in 0..CASES {
        let alpha = alphabet(sigmas[i % sigmas.len()]);
        let m = rng.gen_range(1..=512);
        let p = Pattern::new(random_string(&mut rng, &alpha, m)).unwrap();
        check_factor_bound(&p).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!("{CASES} patterns, 0 violations"))
}

fn prefix_automaton() -> Outcome {
    const CASES: usize = 2_400;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sigmas = [2, 4, 20, 256];
    let mut long = 0;
    let mut multiword = 0;
    for i in 0..CASES {
        let (alpha, m) = if i % 4 == 0 {
            (alphabet(4), rng.gen_range(300..=512))
        } else {
            (alphabet(sigmas[i % sigmas.len()]), rng.gen_range(1..=64))
        };
        let p = random_string(&mut rng, &alpha, m);
        let mut t = random_string(&mut rng, &alpha, 2000);
        for _ in 0..rng.gen_range(0..=3) {
            let at = rng.gen_range(0..=t.len() - m);
            t[at..at + m].copy_from_slice(&p);
        }
        let want = naive_exact_search(&t, &p);
        let p = Pattern::new(p).unwrap();
        if m >= 300 {
            long += 1;
            if greedy_one_factorization(p.as_bytes()).k() > WORD_BITS {
                multiword += 1;
            }
        }
        if shift_and_search(&t, &p) != want {
            return Err(format!("case {i}: shift-and differs"));
        }
        if encoded_prefix_search(&t, &p) != want {
            return Err(format!("case {i}: encoded-prefix differs"));
        }
    }
    if multiword == 0 {
        return Err("no case exercised more than one word".into());
    }
    Ok(format!("{CASES} cases ({long} with m >= 300, {multiword} multi-word), 0 discrepancies"))
}

fn space_accounting() -> Outcome {
    const CASES: usize = 300;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sigmas = [1, 2, 4, 20, 256];
    for i in 0..CASES {
        let alpha = alphabet(sigmas[i % sigmas.len()]);
        let m = rng.gen_range(1..=400);
        let p = Pattern::new(random_string(&mut rng, &alpha, m)).unwrap();
        let eng = build_swap_engine(&p);
        let sp = eng.space();
        let masks = (p.sigma() + 1).pow(2);
        let words = words_for(eng.k());
        let shapes = sp.intra.iter().chain(&sp.cross).chain(&sp.transfer);
        for s in shapes {
            if s.masks != masks || s.words_per_mask != words {
                return Err(format!(
                    "case {i}: {} masks x {} words, expected {masks} x {words}",
                    s.masks, s.words_per_mask
                ));
            }
        }
    }
    Ok(format!("{CASES} engines, every table (sigma_p+1)^2 masks of ceil(k/w) words"))
}

fn throughput() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dna = b"acgt";
    // Periodic, so every factor is as long as sigma_p allows: k' = 75, k = 76.
    let p = pat(&b"acgt".repeat(75));
    // Random text with a few swapped occurrences so the match counts are not trivially zero.
    let corpus = random_text_with_occurrences(&mut rng, dna, p.as_bytes(), 10_000_000);
    let eng = build_swap_engine(&p);
    let encoded_words = words_for(eng.k());
    let plain_words = words_for(p.len());
    let recs = run_bench(&[p], &corpus, &[EngineKind::PlainSwap, EngineKind::EncodedSwap], 3)
        .map_err(|e| e.to_string())?;
    let (plain, enc) = (&recs[0], &recs[1]);
    let speedup = plain.ns_per_byte / enc.ns_per_byte;
    let detail = format!(
        "k={} words {encoded_words} vs {plain_words}, plain {:.2} ns/B, encoded {:.2} ns/B, speedup {speedup:.2}x, matches {} / {}",
        enc.k, plain.ns_per_byte, enc.ns_per_byte, plain.matches, enc.matches
    );
    if encoded_words < plain_words && speedup >= 1.5 && plain.matches == enc.matches {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bitvec_model() -> Outcome {
    const OPS: usize = 120_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let lens = [1, 63, 64, 65, 130, 512];
    let mut done = 0;
    while done < OPS {
        let len = lens[done % lens.len()];
        let mut a = BitVector::zeros(len);
        let mut b = BitVector::zeros(len);
        let mut ma = vec![false; len];
        let mut mb = vec![false; len];
        for _ in 0..200 {
            let i = rng.gen_range(0..len);
            match rng.gen_range(0..9) {
                0 => {
                    a.set(i);
                    ma[i] = true;
                }
                1 => {
                    a.clear(i);
                    ma[i] = false;
                }
                2 => {
                    b.set(i);
                    mb[i] = true;
                }
                3 => {
                    a = a.and(&b);
                    ma.iter_mut().zip(&mb).for_each(|(x, y)| *x &= y);
                }
                4 => {
                    a = a.or(&b);
                    ma.iter_mut().zip(&mb).for_each(|(x, y)| *x |= y);
                }
                5 => {
                    a = a.and_not(&b);
                    ma.iter_mut().zip(&mb).for_each(|(x, y)| *x &= !y);
                }
                6 => {
                    a = a.not();
                    ma.iter_mut().for_each(|x| *x = !*x);
                }
                7 => {
                    a.shl1_assign();
                    ma.rotate_right(1);
                    ma[0] = false;
                }
                _ => {
                    std::mem::swap(&mut a, &mut b);
                    std::mem::swap(&mut ma, &mut mb);
                }
            }
            done += 1;
            let want: Vec<usize> = (0..len).filter(|&j| ma[j]).collect();
            let got: Vec<usize> = a.iter_ones().collect();
            if got != want || a.count_ones() != want.len() || a.test(i) != ma[i] || a.is_zero() != want.is_empty() {
                return Err(format!("length {len}, op {done}: {got:?} vs model {want:?}"));
            }
        }
    }
    Ok(format!("{done} ops over lengths {lens:?}, 0 discrepancies"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 worked examples", worked_examples),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 swap-state correspondence", swap_state_correspondence),
        ("4 factorization size bound", factor_bound),
        ("5 encoded prefix automaton", prefix_automaton),
        ("6 space accounting", space_accounting),
        ("7 throughput", throughput),
        ("8 bit-vector model", bitvec_model),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", 8 - failed, 8);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
