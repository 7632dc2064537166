//! Hamilton cycles of the whole cube: the chain-ordering expansion with its
//! chain-containment guarantee, the 3-Gray property of the ordering, and
//! the reflected Gray code's flip distribution.

use graykit::chaingray::{expand_to_hamilton, lambda_recursive};
use graykit::scd::enumerate_chains;
use graykit::words::{brgc, Bits};

/// Asserts that `seq` is a Hamilton cycle of Q_n and returns the position
/// of every vertex by raw value.
fn check_cube_hamilton(seq: &[Bits], n: usize) -> Vec<usize> {
    assert_eq!(seq.len(), 1usize << n, "must visit every vertex of the {n}-cube");
    let mut pos = vec![usize::MAX; 1usize << n];
    for (k, v) in seq.iter().enumerate() {
        assert_eq!(v.len(), n);
        assert_eq!(pos[v.raw() as usize], usize::MAX, "duplicate vertex {v}");
        pos[v.raw() as usize] = k;
    }
    for k in 0..seq.len() {
        let d = seq[k].diff_positions(&seq[(k + 1) % seq.len()]);
        assert_eq!(d.len(), 1, "step {k}: {} -> {}", seq[k], seq[(k + 1) % seq.len()]);
    }
    pos
}

#[test]
fn expansion_is_a_hamilton_cycle_containing_every_chain() {
    for n in 2..=16 {
        let seq = expand_to_hamilton(n);
        let pos = check_cube_hamilton(&seq, n);
        let len = seq.len();
        for c in enumerate_chains(n) {
            let h = c.star_count();
            let idx: Vec<usize> =
                (0..=h).map(|i| pos[c.vertex_at(i).raw() as usize]).collect();
            let fwd = idx.windows(2).all(|w| (w[0] + 1) % len == w[1]);
            let bwd = idx.windows(2).all(|w| (w[1] + 1) % len == w[0]);
            assert!(
                fwd || bwd,
                "n={n}: chain {c} is not walked as one monotone stretch"
            );
        }
    }
}

#[test]
fn ordering_changes_at_most_three_positions_per_step() {
    for n in 2..=16 {
        let seq = lambda_recursive(n);
        for k in 0..seq.len() {
            let a = seq[k];
            let b = seq[(k + 1) % seq.len()];
            let diff = (1..=n).filter(|&i| a.get(i) != b.get(i)).count();
            assert!(diff <= 3, "n={n}: {a} -> {b} changes {diff} positions");
        }
    }
}

#[test]
fn reflected_code_lists_the_3_cube_in_the_textbook_order() {
    let got: Vec<String> = brgc(3).map(|v| v.to_string()).collect();
    assert_eq!(got, ["000", "001", "011", "010", "110", "111", "101", "100"]);
}

#[test]
fn reflected_code_flip_distribution_is_geometric() {
    for n in 2..=16 {
        let seq: Vec<Bits> = brgc(n).collect();
        check_cube_hamilton(&seq, n);
        let mut counts = vec![0u64; n + 1];
        for k in 0..seq.len() {
            let d = seq[k].diff_positions(&seq[(k + 1) % seq.len()]);
            counts[d[0]] += 1;
        }
        assert_eq!(counts[1], 2, "n={n}: leftmost position flips twice");
        for k in 2..=n {
            assert_eq!(counts[k], 1 << (k - 1), "n={n}: flips of position {k}");
        }
    }
}
