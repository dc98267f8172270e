use std::io::{self, Write};
use std::time::Instant;

use thiserror::Error;

use crate::engine::{Engine, EngineKind};
use crate::factorize::{greedy_one_factorization, one_collection};
use crate::pattern::{derive_even_odd, Pattern};

pub const CSV_HEADER: &str = "engine,n,m,sigma,k,k_prime,ns_per_byte,matches";

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub engine: EngineKind,
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub k: usize,
    pub k_prime: usize,
    /// Best time over the repeats.
    pub ns_per_byte: f64,
    pub matches: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum BenchError {
    #[error("engines disagree on {pattern}: {first} found {first_count}, {second} found {second_count}")]
    MatchMismatch {
        pattern: String,
        first: EngineKind,
        first_count: usize,
        second: EngineKind,
        second_count: usize,
    },
}

/// Times each engine on each pattern. Engines of the same class (swap or
/// exact) must report the same match count.
pub fn run_bench(
    patterns: &[Pattern],
    corpus: &[u8],
    engines: &[EngineKind],
    repeat: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for p in patterns {
        let k_prime = greedy_one_factorization(p.as_bytes()).k();
        let k = one_collection(&derive_even_odd(p)).k();
        let first = records.len();
        for &kind in engines {
            let engine = Engine::new(kind, p);
            let mut best = f64::INFINITY;
            let mut matches = 0;
            for _ in 0..repeat.max(1) {
                let start = Instant::now();
                matches = engine.count(corpus);
                best = best.min(start.elapsed().as_nanos() as f64);
            }
            let ns_per_byte = if corpus.is_empty() {
                0.0
            } else {
                best / corpus.len() as f64
            };
            let rec = BenchRecord {
                engine: kind,
                n: corpus.len(),
                m: p.len(),
                sigma: p.sigma(),
                k,
                k_prime,
                ns_per_byte,
                matches,
            };
            if let Some(prev) = records[first..]
                .iter()
                .find(|r: &&BenchRecord| r.engine.matches_swaps() == kind.matches_swaps())
            {
                if prev.matches != matches {
                    return Err(BenchError::MatchMismatch {
                        pattern: p.as_bytes().escape_ascii().to_string(),
                        first: prev.engine,
                        first_count: prev.matches,
                        second: kind,
                        second_count: matches,
                    });
                }
            }
            records.push(rec);
        }
    }
    Ok(records)
}

pub fn write_csv(records: &[BenchRecord], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.4},{}",
            r.engine, r.n, r.m, r.sigma, r.k, r.k_prime, r.ns_per_byte, r.matches
        )?;
    }
    Ok(())
}
