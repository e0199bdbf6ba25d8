//! The `F_4` reference table lists `d_1[4, 4] = 3` and `d_1[5, 4] = 4` under
//! a non-symmetric duality. This checks both cells with an oracle built only
//! from the printed `+-1` character table of that duality: every code with
//! the listed parameters is found by direct search, and its dual is computed
//! by testing all `4^n` vectors against the character products.

use std::collections::BTreeSet;

use addhull_core::search::{d1_search, Mode, SearchSpec, Status};
use addhull_core::Duality;

/// `chi_a(b)` for a, b in the order 0, 1, w, w + 1.
const N1: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]];
/// Words of `F_4^n` packed two bits per coordinate.
type Word = u16;

fn coord(v: Word, t: usize) -> usize {
    ((v >> (2 * t)) & 3) as usize
}

fn weight(n: usize, v: Word) -> usize {
    (0..n).filter(|&t| coord(v, t) != 0).count()
}

fn pairing(n: usize, table: &[[i8; 4]; 4], u: Word, c: Word) -> i8 {
    (0..n).map(|t| table[coord(u, t)][coord(c, t)]).product()
}

/// All `k`-dimensional F_2-subspaces of F_4^n whose nonzero words have
/// weight at least `d`, as sorted word lists.
fn codes(n: usize, k: usize, d: usize) -> BTreeSet<Vec<Word>> {
    let top: Word = (1 << (2 * n)) - 1;
    let weight = |v| weight(n, v);
    let good: Vec<Word> = (1..=top).filter(|&v| weight(v) >= d).collect();
    let mut layer: BTreeSet<Vec<Word>> = BTreeSet::from([vec![0]]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for span in &layer {
            for &w in &good {
                if span.contains(&w) {
                    continue;
                }
                let mut grown: Vec<Word> = span.iter().flat_map(|&s| [s, s ^ w]).collect();
                if grown.iter().all(|&x| x == 0 || weight(x) >= d) {
                    grown.sort_unstable();
                    next.insert(grown);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Hull sizes of every code in `codes` under the table and its transpose.
fn hull_sizes(n: usize, codes: &BTreeSet<Vec<Word>>) -> BTreeSet<usize> {
    let top: Word = (1 << (2 * n)) - 1;
    let transposed: [[i8; 4]; 4] = core::array::from_fn(|a| core::array::from_fn(|b| N1[b][a]));
    let mut sizes = BTreeSet::new();
    for table in [N1, transposed] {
        for code in codes {
            let dual: Vec<Word> = (0..=top).filter(|&u| code.iter().all(|&c| pairing(n, &table, u, c) == 1)).collect();
            assert_eq!(dual.len() * code.len(), 1 << (2 * n));
            sizes.insert(code.iter().filter(|c| dual.binary_search(c).is_ok()).count());
        }
    }
    sizes
}

#[test]
fn no_distance_three_code_has_one_rank_hull() {
    let codes = codes(4, 4, 3);
    assert_eq!(codes.len(), 432);
    // Hulls of size 1 or 4 only: never the two words of a rank-one hull.
    assert_eq!(hull_sizes(4, &codes), BTreeSet::from([1, 4]));
}

#[test]
fn no_length_five_distance_four_code_has_one_rank_hull() {
    let codes = codes(5, 4, 4);
    assert!(!codes.is_empty());
    assert!(!hull_sizes(5, &codes).contains(&2));
}

#[test]
fn search_finds_two() {
    let n1 = Duality::from_rows(2, &[[1i64, 1], [0, 1]]).unwrap();
    let r = d1_search(SearchSpec::new(n1, 4, 4, Mode::Exhaustive)).unwrap();
    assert_eq!(r.status, Status::Exact(2));
}

#[test]
fn search_finds_three_at_length_five() {
    let n1 = Duality::from_rows(2, &[[1i64, 1], [0, 1]]).unwrap();
    let mut spec = SearchSpec::new(n1, 5, 4, Mode::Exhaustive);
    spec.budgets.subspaces = 1 << 27;
    assert_eq!(d1_search(spec).unwrap().status, Status::Exact(3));
}
