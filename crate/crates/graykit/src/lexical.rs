//! Lexical matchings between consecutive levels of the hypercube, and the
//! rotation map between minus-classes on a fixed level.
//!
//! Read a word x in {0,1}^n as a lattice path, 0 a down-step and 1 an
//! up-step (note: the opposite of the tree orientation in [`crate::words`]).
//! For the p-th lexical matching the path is first completed below the axis:
//! * going up (`lex_up`): if the path ends at height -1 or higher, append
//!   down-steps until it ends at height -1;
//! * going down (`lex_down`): if the path ends below height 1, append
//!   up-steps until it ends at height 1.
//!
//! Rank the down-steps of the completed path by the height of their top end,
//! highest first, ties broken right-to-left (down-steps) or left-to-right
//! (up-steps). Flipping the rank-p step, when it falls inside the original
//! word, gives the partner one level up (down). The two directions are
//! mutually inverse partial matchings, and the 0-th matching restricted to a
//! chain pair is exactly the decomposition's own chain edge.

use crate::scd::{chain_of, classify, Chain};
use crate::words::Bits;

/// Appends `k` copies of `bit` to `x` (completion steps live beyond `x.len()`).
fn extend(x: &Bits, k: usize, bit: u8) -> Bits {
    let mut out = *x;
    for _ in 0..k {
        out = out.push(bit);
    }
    out
}

/// Height after the prefix of length `j` (lattice orientation: 1 up, 0 down).
fn height(x: &Bits, j: usize) -> i32 {
    let mut h = 0i32;
    for i in 1..=j {
        h += if x.get(i) == 1 { 1 } else { -1 };
    }
    h
}

/// Down-step positions of `x`, ranked by top-end height (highest first),
/// ties right-to-left.
fn ranked_down_steps(x: &Bits) -> Vec<usize> {
    let mut steps: Vec<(i32, usize)> = Vec::new();
    let mut h = 0i32;
    for i in 1..=x.len() {
        if x.get(i) == 0 {
            steps.push((h, i)); // top end of a down-step is its start height
            h -= 1;
        } else {
            h += 1;
        }
    }
    steps.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    steps.into_iter().map(|(_, i)| i).collect()
}

/// Up-step positions of `x`, ranked by top-end height (highest first),
/// ties left-to-right.
fn ranked_up_steps(x: &Bits) -> Vec<usize> {
    let mut steps: Vec<(i32, usize)> = Vec::new();
    let mut h = 0i32;
    for i in 1..=x.len() {
        if x.get(i) == 1 {
            h += 1;
            steps.push((h, i)); // top end of an up-step is its end height
        } else {
            h -= 1;
        }
    }
    steps.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    steps.into_iter().map(|(_, i)| i).collect()
}

/// Partner of `x` one level up in the p-th lexical matching, if `x` is
/// matched there.
pub fn lex_up(p: usize, x: &Bits) -> Option<Bits> {
    let h_end = height(x, x.len());
    let completed = if h_end >= -1 { extend(x, (h_end + 1) as usize, 0) } else { *x };
    let ranked = ranked_down_steps(&completed);
    match ranked.get(p) {
        Some(&pos) if pos <= x.len() => Some(x.flip(pos)),
        _ => None,
    }
}

/// Partner of `y` one level down in the p-th lexical matching, if `y` is
/// matched there.
pub fn lex_down(p: usize, y: &Bits) -> Option<Bits> {
    let h_end = height(y, y.len());
    let completed = if h_end < 1 { extend(y, (1 - h_end) as usize, 1) } else { *y };
    let ranked = ranked_up_steps(&completed);
    match ranked.get(p) {
        Some(&pos) if pos <= y.len() => Some(y.flip(pos)),
        _ => None,
    }
}

/// The rotation map between minus-classes of the same chain length: for a
/// vertex `x` using `i` stars, with empty valley after the i-th star and
/// `1 < i < h`, the result uses `i - 1` stars, its (i-1)-th valley is empty,
/// and the old valley `u_{i-1}` reappears rotated one position later.
/// Together with the chain edge below `x` this forms one of the crossing
/// 2-edge paths that replace two chain edges on a level.
pub fn z_map(x: &Bits) -> Bits {
    let cls = classify(x);
    assert!(
        cls.i > 1 && cls.i < cls.h && !cls.plus,
        "rotation map needs a minus-class vertex with 1 < i < h, got {:?}",
        cls
    );
    let vs = chain_of(x).valleys();
    let i = cls.i;
    let mut new_vs = Vec::with_capacity(vs.len());
    new_vs.extend_from_slice(&vs[..i - 1]);
    new_vs.push(Bits::empty());
    new_vs.push(vs[i - 1].rot());
    new_vs.extend_from_slice(&vs[i + 1..]);
    let c = Chain::from_valleys(&new_vs);
    debug_assert!(c.is_valid());
    let z = c.vertex_at(i - 1);
    debug_assert_eq!(x.diff_positions(&z).len(), 1, "rotation partner must be a neighbor");
    z
}
