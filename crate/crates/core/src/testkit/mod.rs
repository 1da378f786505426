//! Random instances and an exhaustive reference solver.

mod generator;
mod oracle;

pub use generator::{gen_instance, gen_poset_language, random_poset, universe_of_size, GenSpec};
pub use oracle::{min_cover_bruteforce, OracleLimits, DEFAULT_ORACLE_CAP};
