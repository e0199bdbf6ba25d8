//! Reference values of `d_1[n, k]` over `F_4` under a non-symmetric
//! duality, `n <= 10`, used to annotate search tables.

/// One published cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KnownEntry {
    /// `None` when no one-rank hull code exists.
    pub d: Option<usize>,
    /// Marked optimal.
    pub optimal: bool,
    /// Marked as improving on every symmetric duality.
    pub improves_symmetric: bool,
}

// Tokens per row, k = 1, 2, ...: "-" none, "." prefix not marked optimal,
// "*" suffix improves on symmetric dualities.
const ROWS: [&str; 10] = [
    "- -",
    "2 1 1 -",
    "2 2 2 1 1 -",
    "4 3 3 3* 2 1 1 -",
    "4 4 4 4* .3 3* 2 1 1 -",
    "6 5 5 4 4 .3 3 2 2 1 1 -",
    "6 6 6 5 .4 4 .3 3 3 2 2 1 1 -",
    "8 7 6 6* .5 5* 4 4* 3 3 .2 2 2 1 1 -",
    "8 8 7 7* 6 .5 5 .4 4 .3 3 3 .2 2 2 1 1 -",
    "10 9 8 8* 7* 6 .5 .5 5* .4 4 .3 3 3* 2 2 2 1 1",
];

pub const KNOWN_MAX_N: usize = 10;

/// The reference cell for `(n, k)`, if the table has one.
pub fn known_f4_entry(n: usize, k: usize) -> Option<KnownEntry> {
    if n == 0 || k == 0 {
        return None;
    }
    let token = ROWS.get(n - 1)?.split(' ').nth(k - 1)?;
    if token == "-" {
        return Some(KnownEntry { d: None, optimal: true, improves_symmetric: false });
    }
    let optimal = !token.starts_with('.');
    let improves_symmetric = token.ends_with('*');
    let digits = token.trim_start_matches('.').trim_end_matches('*');
    Some(KnownEntry { d: digits.parse().ok(), optimal, improves_symmetric })
}
