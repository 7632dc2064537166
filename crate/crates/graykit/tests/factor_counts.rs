//! The cycle factor's counts, frozen for every window up to the 17-cube,
//! and the closed formula for the number of short cycles per range.

use graykit::factor::{short_cycle_count, Factor};

/// Expected cycle counts per window: (m, l, total cycles, short cycles of
/// the widest short range 2(l-1), long cycles).
const COUNTS: &[(usize, usize, usize, usize, usize)] = &[
    (1, 2, 1, 0, 1),
    (2, 2, 1, 0, 1),
    (2, 3, 3, 2, 1),
    (3, 2, 1, 0, 1),
    (3, 3, 6, 5, 1),
    (3, 4, 10, 4, 1),
    (4, 2, 4, 0, 4),
    (4, 3, 17, 14, 3),
    (4, 4, 29, 14, 1),
    (4, 5, 35, 6, 1),
    (5, 2, 6, 0, 6),
    (5, 3, 46, 42, 4),
    (5, 4, 93, 48, 3),
    (5, 5, 118, 27, 1),
    (5, 6, 126, 8, 1),
    (6, 2, 19, 0, 19),
    (6, 3, 142, 132, 10),
    (6, 4, 307, 165, 10),
    (6, 5, 412, 110, 5),
    (6, 6, 452, 44, 1),
    (6, 7, 462, 10, 1),
    (7, 2, 49, 0, 49),
    (7, 3, 446, 429, 17),
    (7, 4, 1010, 572, 9),
    (7, 5, 1438, 429, 8),
    (7, 6, 1643, 208, 5),
    (7, 7, 1704, 65, 1),
    (7, 8, 1716, 12, 1),
    (8, 2, 150, 0, 150),
    (8, 3, 1475, 1430, 45),
    (8, 4, 3474, 2002, 42),
    (8, 5, 5113, 1638, 43),
    (8, 6, 6002, 910, 22),
    (8, 7, 6337, 350, 7),
    (8, 8, 6421, 90, 1),
    (8, 9, 6435, 14, 1),
];

#[test]
fn cycle_counts_match_the_frozen_table() {
    for &(m, l, total, widest_shorts, longs) in COUNTS {
        let st = Factor::build(2 * m + 1, l).stats();
        assert_eq!(st.total, total, "total for m={m} l={l}");
        assert_eq!(
            st.shorts.last().copied().unwrap_or(0),
            widest_shorts,
            "widest short range for m={m} l={l}"
        );
        assert_eq!(st.longs, longs, "long cycles for m={m} l={l}");
        assert_eq!(st.total, st.shorts.iter().sum::<usize>() + st.longs, "m={m} l={l}");
    }
}

#[test]
fn widest_window_distribution_is_exact() {
    let st = Factor::build(17, 9).stats();
    assert_eq!(st.total, 6435);
    assert_eq!(st.shorts, vec![1430, 2002, 1638, 910, 350, 90, 14]);
    assert_eq!(st.longs, 1);
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap()
}

#[test]
fn short_cycle_counts_follow_the_closed_formula() {
    for m in 1..=8usize {
        let st = Factor::build(2 * m + 1, m + 1).stats();
        for r in 2..=m {
            assert_eq!(st.shorts[r - 2] as u64, short_cycle_count(m, r), "m={m} r={r}");
        }
        // In the widest window, the count at the full range 2(m+1) is the
        // long-cycle count, and the formula still applies there.
        assert_eq!(st.longs as u64, short_cycle_count(m, m + 1), "m={m} full range");
        for r in 2..=m + 1 {
            let prod = (r as u128 - 1) * binom(2 * m as u64, (m + 1 - r) as u64) as u128;
            assert_eq!(prod % m as u128, 0, "m={m} r={r}: count must be integral");
            assert_eq!(
                short_cycle_count(m, r) as u128,
                prod / m as u128,
                "m={m} r={r}: fraction form of the count"
            );
        }
    }
}

#[test]
fn short_cycle_counts_are_window_independent() {
    let m = 5;
    for r in 2..=m {
        let mut counts = Vec::new();
        for l in r + 1..=m + 1 {
            let st = Factor::build(2 * m + 1, l).stats();
            counts.push(st.shorts[r - 2]);
        }
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "r={r}: {counts:?}");
    }
}
