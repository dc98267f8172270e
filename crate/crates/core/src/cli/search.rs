use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use super::{EXIT_ERROR, EXIT_MATCH, EXIT_NO_MATCH};
use crate::engine::{Engine, EngineKind};
use crate::pattern::Pattern;

/// Input is consumed in chunks of this many bytes.
pub const CHUNK_SIZE: usize = 64 * 1024;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub pattern: Pattern,
    pub engine: EngineKind,
    /// Empty means standard input.
    pub inputs: Vec<PathBuf>,
    pub format: OutputFormat,
    pub count_only: bool,
    /// Report `j - m + 1` instead of the end position `j`.
    pub start_positions: bool,
}

#[derive(Serialize)]
struct JsonHit<'a> {
    file: &'a str,
    position: u64,
}

enum Hits {
    Positions(Vec<u64>),
    Count(u64),
}

impl Hits {
    fn len(&self) -> u64 {
        match self {
            Hits::Positions(p) => p.len() as u64,
            Hits::Count(n) => *n,
        }
    }
}

fn scan(engine: &Engine, mut reader: impl Read, count_only: bool) -> io::Result<Hits> {
    let mut scanner = engine.scanner();
    let mut buf = vec![0u8; CHUNK_SIZE];
    let mut positions = Vec::new();
    let mut count = 0u64;
    loop {
        let n = match reader.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        };
        if count_only {
            scanner.feed(&buf[..n], |_| count += 1);
        } else {
            scanner.feed(&buf[..n], |j| positions.push(j));
        }
    }
    Ok(if count_only {
        Hits::Count(count)
    } else {
        Hits::Positions(positions)
    })
}

/// Searches every input and prints hits in input order.
pub fn cmd_search(cfg: &SearchConfig, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let engine = Engine::new(cfg.engine, &cfg.pattern);
    let results: Vec<(String, io::Result<Hits>)> = if cfg.inputs.is_empty() {
        vec![("-".to_owned(), scan(&engine, stdin, cfg.count_only))]
    } else {
        cfg.inputs
            .par_iter()
            .map(|path| {
                let res = File::open(path).and_then(|f| scan(&engine, f, cfg.count_only));
                (path.display().to_string(), res)
            })
            .collect()
    };

    let multi = results.len() > 1;
    let shift = if cfg.start_positions {
        cfg.pattern.len() as u64 - 1
    } else {
        0
    };
    let mut total = 0u64;
    let mut failed = false;
    let mut json = Vec::new();
    let mut write = |out: &mut dyn Write| -> io::Result<()> {
        for (name, res) in &results {
            let hits = match res {
                Ok(h) => h,
                Err(e) => {
                    let _ = writeln!(err, "swapmatch: {name}: {e}");
                    failed = true;
                    continue;
                }
            };
            total += hits.len();
            match (hits, cfg.format) {
                (Hits::Count(n), _) if multi => writeln!(out, "{name}:{n}")?,
                (Hits::Count(n), _) => writeln!(out, "{n}")?,
                (Hits::Positions(ps), OutputFormat::Json) => {
                    json.extend(ps.iter().map(|&j| JsonHit {
                        file: name,
                        position: j - shift,
                    }));
                }
                (Hits::Positions(ps), OutputFormat::Text) => {
                    for &j in ps {
                        if multi {
                            writeln!(out, "{name}:{}", j - shift)?;
                        } else {
                            writeln!(out, "{}", j - shift)?;
                        }
                    }
                }
            }
        }
        if cfg.format == OutputFormat::Json && !cfg.count_only {
            serde_json::to_writer(&mut *out, &json)?;
            writeln!(out)?;
        }
        out.flush()
    };
    if let Err(e) = write(out) {
        let _ = writeln!(err, "swapmatch: write error: {e}");
        return EXIT_ERROR;
    }
    if failed {
        EXIT_ERROR
    } else if total > 0 {
        EXIT_MATCH
    } else {
        EXIT_NO_MATCH
    }
}
