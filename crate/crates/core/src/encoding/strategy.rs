use crate::order::factorial;

/// Largest complement the naive method may enumerate by default.
pub const DEFAULT_NAIVE_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingStrategy {
    Moat,
    Naive,
}

impl EncodingStrategy {
    pub fn name(self) -> &'static str {
        match self {
            EncodingStrategy::Moat => "moat",
            EncodingStrategy::Naive => "naive",
        }
    }
}

/// `n! - set_size`, or `None` when `n!` overflows.
pub fn complement_size(set_size: usize, n: usize) -> Option<u128> {
    factorial(n).map(|f| f.saturating_sub(set_size as u128))
}

/// Falls back to the naive method only when the complement is strictly
/// smaller than the moat and within `naive_cap`.
pub fn choose_strategy(
    moat_size: usize,
    set_size: usize,
    n: usize,
    naive_cap: u64,
) -> EncodingStrategy {
    match complement_size(set_size, n) {
        Some(c) if c < moat_size as u128 && c <= naive_cap as u128 => EncodingStrategy::Naive,
        _ => EncodingStrategy::Moat,
    }
}
