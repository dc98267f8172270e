use std::io::{self, Write};

use crate::encoded::build_swap_engine;
use crate::factorize::greedy_one_factorization;
use crate::nfa::build_explicit_swap_nfa;
use crate::pattern::Pattern;

fn show(factors: &[&[u8]]) -> String {
    let parts: Vec<String> = factors.iter().map(|f| f.escape_ascii().to_string()).collect();
    format!("<{}>", parts.join(", "))
}

/// Prints the derived strings, both factorizations and table sizes, and
/// optionally the swap automaton in DOT.
pub fn cmd_inspect(p: &Pattern, dot: bool, out: &mut dyn Write) -> io::Result<()> {
    let eng = build_swap_engine(p);
    let triple = eng.triple();
    let greedy = greedy_one_factorization(p.as_bytes());
    let [f1, f2, f3] = eng.collection().factors();
    let space = eng.space();

    writeln!(out, "pattern     {}", p.as_bytes().escape_ascii())?;
    writeln!(out, "m           {}", p.len())?;
    writeln!(out, "sigma_p     {}", space.sigma_p)?;
    writeln!(out, "P_e         {}", triple.p_even.as_bytes().escape_ascii())?;
    writeln!(out, "P_o         {}", triple.p_odd.as_bytes().escape_ascii())?;
    writeln!(
        out,
        "greedy      k'={} {}",
        greedy.k(),
        show(&greedy.factors(p.as_bytes()))
    )?;
    writeln!(out, "collection  k={}", eng.k())?;
    writeln!(out, "  P         {}", show(&f1))?;
    writeln!(out, "  P_e       {}", show(&f2))?;
    writeln!(out, "  P_o       {}", show(&f3))?;
    writeln!(
        out,
        "tables      {} masks x {} words per intra/cross table; {} words total, {} packed",
        space.intra[0].masks, space.words_per_mask, space.total_words, space.packed_words
    )?;
    if dot {
        out.write_all(build_explicit_swap_nfa(p).to_dot().as_bytes())?;
    }
    Ok(())
}
