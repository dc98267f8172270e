//! Implementations behind the `swapmatch` subcommands. They write to the
//! given streams and return process exit codes so they can be driven from
//! tests.

pub mod bench;
pub mod inspect;
pub mod search;

pub use bench::{run_bench, write_csv, BenchError, BenchRecord};
pub use inspect::cmd_inspect;
pub use search::{cmd_search, OutputFormat, SearchConfig};

/// Exit status: at least one match / success.
pub const EXIT_MATCH: i32 = 0;
/// Exit status: no match / verification failure.
pub const EXIT_NO_MATCH: i32 = 1;
/// Exit status: usage or IO error.
pub const EXIT_ERROR: i32 = 2;
