//! Fixed-length binary words packed into a `u64`, Dyck-word primitives, the
//! standard reflected Gray code, and the "pull" rewriting step on ordered
//! rooted trees encoded as Dyck words.
//!
//! Positions are 1-based and position 1 is the leftmost character, so the
//! numeric order of equal-length words coincides with lexicographic order.
//!
//! Two opposite height conventions appear in this crate and are kept apart
//! deliberately:
//! * lattice paths (see [`crate::lexical`]): 0 is a down-step, 1 is an up-step;
//! * ordered rooted trees (this module's pull machinery): 0 descends along a
//!   new edge, 1 ascends back. A Dyck word here is a word in which every
//!   prefix has at least as many 0s as 1s and the totals are equal; read as a
//!   tree, 0 opens a vertex and 1 closes the innermost open vertex.

use std::fmt;
use std::str::FromStr;

/// A binary word of length at most 63, packed into a `u64`.
///
/// Position `i` (1-based, leftmost first) is stored at bit `len - i`, so for
/// equal lengths the numeric value orders words lexicographically. The derived
/// `Ord` sorts by length first, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: u8,
    word: u64,
}

pub const MAX_BITS: usize = 63;

impl Bits {
    /// The empty word.
    pub fn empty() -> Self {
        Bits { len: 0, word: 0 }
    }

    /// The all-zeros word of length `len`.
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "word length {len} exceeds {MAX_BITS}");
        Bits { len: len as u8, word: 0 }
    }

    /// Builds a word from its length and packed value (position 1 is the most
    /// significant of the `len` low bits).
    pub fn from_raw(len: usize, word: u64) -> Self {
        assert!(len <= MAX_BITS, "word length {len} exceeds {MAX_BITS}");
        assert!(len == MAX_BITS || word < (1u64 << len), "value does not fit in {len} bits");
        Bits { len: len as u8, word }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The packed value; position 1 is the most significant of the low `len` bits.
    pub fn raw(&self) -> u64 {
        self.word
    }

    /// The bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range 1..={}", self.len());
        ((self.word >> (self.len() - i)) & 1) as u8
    }

    /// Returns a copy with the bit at 1-based position `i` set to `bit`.
    pub fn with_bit(&self, i: usize, bit: u8) -> Self {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range 1..={}", self.len());
        assert!(bit <= 1);
        let mask = 1u64 << (self.len() - i);
        let word = if bit == 1 { self.word | mask } else { self.word & !mask };
        Bits { len: self.len, word }
    }

    /// Returns a copy with the bit at 1-based position `i` flipped.
    pub fn flip(&self, i: usize) -> Self {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range 1..={}", self.len());
        Bits { len: self.len, word: self.word ^ (1u64 << (self.len() - i)) }
    }

    /// Number of 1s.
    pub fn level(&self) -> usize {
        self.word.count_ones() as usize
    }

    /// Appends one bit on the right.
    pub fn push(&self, bit: u8) -> Self {
        assert!(bit <= 1);
        assert!(self.len() < MAX_BITS, "word length would exceed {MAX_BITS}");
        Bits { len: self.len + 1, word: (self.word << 1) | bit as u64 }
    }

    /// Concatenation `self . other`.
    pub fn concat(&self, other: &Bits) -> Self {
        let len = self.len() + other.len();
        assert!(len <= MAX_BITS, "word length {len} exceeds {MAX_BITS}");
        Bits { len: len as u8, word: (self.word << other.len()) | other.word }
    }

    /// The subword at 1-based positions `i..=j` (empty when `j < i`).
    pub fn slice(&self, i: usize, j: usize) -> Self {
        if j < i {
            return Bits::empty();
        }
        assert!(i >= 1 && j <= self.len(), "range {i}..={j} out of range 1..={}", self.len());
        let n = j - i + 1;
        let shifted = self.word >> (self.len() - j);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Bits { len: n as u8, word: shifted & mask }
    }

    /// Reverses the word and complements every bit.
    pub fn rev_comp(&self) -> Self {
        let mut out = Bits::empty();
        for i in (1..=self.len()).rev() {
            out = out.push(1 - self.get(i));
        }
        out
    }

    /// 1-based positions where `self` and `other` differ.
    pub fn diff_positions(&self, other: &Bits) -> Vec<usize> {
        assert_eq!(self.len, other.len, "words must have equal length");
        let mut delta = self.word ^ other.word;
        let mut out = Vec::new();
        while delta != 0 {
            let b = 63 - delta.leading_zeros() as usize;
            out.push(self.len() - b);
            delta ^= 1u64 << b;
        }
        out
    }

    /// True if every prefix has at least as many 0s as 1s and the totals are
    /// equal (the tree/Dyck orientation used by this module).
    pub fn is_dyck(&self) -> bool {
        let mut depth: i32 = 0;
        for i in 1..=self.len() {
            depth += if self.get(i) == 0 { 1 } else { -1 };
            if depth < 0 {
                return false;
            }
        }
        depth == 0
    }

    /// Splits a nonempty Dyck word at the first return to depth zero:
    /// `x = 0 u 1 v` with `u`, `v` Dyck words.
    pub fn left_factorize(&self) -> (Bits, Bits) {
        assert!(!self.is_empty() && self.is_dyck(), "left_factorize needs a nonempty Dyck word");
        let mut depth: i32 = 0;
        for i in 1..=self.len() {
            depth += if self.get(i) == 0 { 1 } else { -1 };
            if depth == 0 {
                return (self.slice(2, i - 1), self.slice(i + 1, self.len()));
            }
        }
        unreachable!("balanced word must return to depth zero");
    }

    /// Splits a nonempty Dyck word around the partner of its final 1:
    /// `x = u 0 v 1` with `u`, `v` Dyck words.
    pub fn right_factorize(&self) -> (Bits, Bits) {
        assert!(!self.is_empty() && self.is_dyck(), "right_factorize needs a nonempty Dyck word");
        let mut depth: i32 = 0;
        for i in (1..=self.len()).rev() {
            depth += if self.get(i) == 1 { 1 } else { -1 };
            if depth == 0 {
                return (self.slice(1, i - 1), self.slice(i + 1, self.len() - 1));
            }
        }
        unreachable!("balanced word must return to depth zero");
    }

    /// Tree rotation on Dyck words: `0 u 1 v` becomes `u 0 v 1`; the empty
    /// word is a fixed point.
    pub fn rot(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        let (u, v) = self.left_factorize();
        u.concat(&Bits::from_raw(1, 0)).concat(&v).push(1)
    }

    /// Inverse of [`Bits::rot`]: `u 0 v 1` becomes `0 u 1 v`.
    pub fn rot_inv(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        let (u, v) = self.right_factorize();
        Bits::from_raw(1, 0).concat(&u).push(1).concat(&v)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

/// Error returned when parsing a binary word fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError(pub String);

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid binary word: {}", self.0)
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for Bits {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > MAX_BITS {
            return Err(ParseBitsError(format!("length {} exceeds {MAX_BITS}", s.len())));
        }
        let mut word = 0u64;
        for c in s.chars() {
            match c {
                '0' => word <<= 1,
                '1' => word = (word << 1) | 1,
                _ => return Err(ParseBitsError(format!("unexpected character {c:?} in {s:?}"))),
            }
        }
        Ok(Bits { len: s.len() as u8, word })
    }
}

/// Convenience constructor for literals in tests and examples.
pub fn bits(s: &str) -> Bits {
    s.parse().expect("valid binary literal")
}

/// The `i`-th word (0-based) of the reflected Gray code on `n` bits, read
/// most significant bit first.
pub fn brgc_word(n: usize, i: u64) -> Bits {
    assert!(n >= 1 && n <= MAX_BITS);
    assert!(i < (1u64 << n));
    Bits::from_raw(n, i ^ (i >> 1))
}

/// The full reflected Gray code on `n` bits as an iterator over 2^n words.
/// Consecutive words (cyclically) differ in exactly one position.
pub fn brgc(n: usize) -> impl Iterator<Item = Bits> {
    assert!(n >= 1 && n <= 25, "reflected Gray code enumeration supports n <= 25");
    (0..(1u64 << n)).map(move |i| brgc_word(n, i))
}

/// Largest `j < len` with depth `0`; the root's rightmost subtree occupies
/// positions `last_zero+1 ..= len`.
fn last_zero(t: &Bits) -> usize {
    assert!(!t.is_empty());
    let mut depth = 0i32;
    let mut last = 0usize;
    for i in 1..t.len() {
        depth += if t.get(i) == 0 { 1 } else { -1 };
        if depth == 0 {
            last = i;
        }
    }
    last
}

/// Valid pull sites of the tree `t`, in increasing position order.
///
/// A site is the position `a` of a block `011` whose leading 0 opens a
/// pending (leaf) rightmost child `r` of a non-root vertex `q` lying inside
/// the root's rightmost subtree. Pulling at `a` detaches `r` from `q` and
/// reattaches it to `q`'s parent, directly to the right of the edge down to
/// `q`; on the word this swaps the characters at positions `a` and `a+1`.
pub fn pull_sites(t: &Bits) -> Vec<usize> {
    assert!(t.is_dyck(), "pull sites are defined on Dyck words");
    if t.len() < 4 {
        return Vec::new();
    }
    let lz = last_zero(t);
    let mut out = Vec::new();
    let mut depth = 0i32;
    for i in 1..=t.len() {
        let before = depth;
        depth += if t.get(i) == 0 { 1 } else { -1 };
        if i > lz
            && before >= 1
            && i + 2 <= t.len()
            && t.get(i) == 0
            && t.get(i + 1) == 1
            && t.get(i + 2) == 1
        {
            out.push(i);
        }
    }
    out
}

/// Applies the pull at site `a` (swaps characters `a` and `a+1`, rewriting
/// the block `011` to `101`). Panics if `a` is not a valid site.
pub fn pull(t: &Bits, a: usize) -> Bits {
    assert!(pull_sites(t).contains(&a), "position {a} is not a valid pull site of {t}");
    t.with_bit(a, 1).with_bit(a + 1, 0)
}

/// The structural decomposition of a tree around a pull site:
/// `t = u0p . 0 u[0] 0 u[1] ... 0 u[d] . 011 . v[d-1] 1 ... v[0] 1`,
/// where `u0p` is the part of the word before the root's rightmost subtree,
/// the `d+1` indexed 0s open the ancestors of the pulled leaf inside that
/// subtree (the last of them is its parent `q`), and the `v` parts are the
/// subtrees hanging right of the path back up from `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullParts {
    pub site: usize,
    pub d: usize,
    /// Prefix before the rightmost subtree (a sequence of complete subtrees).
    pub u0p: Bits,
    /// `d + 1` Dyck words: `us[k]` follows the `(k+1)`-th ancestor opening.
    pub us: Vec<Bits>,
    /// `d` Dyck words: `vs[k]` precedes the 1 closing the `(k+1)`-th ancestor.
    pub vs: Vec<Bits>,
}

/// Decomposes `t` around the pull site `a`. Panics if `a` is not valid.
pub fn pull_parts(t: &Bits, a: usize) -> PullParts {
    assert!(pull_sites(t).contains(&a), "position {a} is not a valid pull site of {t}");
    let lz = last_zero(t);
    let u0p = t.slice(1, lz);
    // Openings still unmatched just before position a are the ancestors of
    // the pulled leaf within the rightmost subtree.
    let mut stack: Vec<usize> = Vec::new();
    for i in lz + 1..a {
        if t.get(i) == 0 {
            stack.push(i);
        } else {
            stack.pop().expect("depth stays positive before a valid site");
        }
    }
    let d = stack.len() - 1;
    let mut us = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let from = stack[k] + 1;
        let to = if k < d { stack[k + 1] - 1 } else { a - 1 };
        us.push(t.slice(from, to));
    }
    // Matching close position for each ancestor opening.
    let mut closes = vec![0usize; d + 1];
    {
        let mut open: Vec<usize> = Vec::new();
        for i in lz + 1..=t.len() {
            if t.get(i) == 0 {
                open.push(i);
            } else {
                let o = open.pop().expect("balanced word");
                if let Some(k) = stack.iter().position(|&p| p == o) {
                    closes[k] = i;
                }
            }
        }
    }
    assert_eq!(closes[d], a + 2, "the pulled leaf's parent closes right after the block");
    let mut vs = Vec::with_capacity(d);
    for k in 0..d {
        // vs[k] precedes the 1 closing stack[k] and follows the 1 closing
        // stack[k+1] (or the 011 block itself for the innermost part).
        let from = if k < d - 1 { closes[k + 1] + 1 } else { a + 3 };
        let to = closes[k] - 1;
        vs.push(t.slice(from, to));
    }
    let parts = PullParts { site: a, d, u0p, us, vs };
    debug_assert_eq!(reassemble(&parts, false), *t);
    parts
}

/// Rebuilds the word from its parts; with `pulled` the `011` block is
/// replaced by `101`, which is exactly the pull rewrite.
pub fn reassemble(p: &PullParts, pulled: bool) -> Bits {
    let mut t = p.u0p;
    for u in &p.us {
        t = t.push(0).concat(u);
    }
    t = if pulled { t.push(1).push(0).push(1) } else { t.push(0).push(1).push(1) };
    for v in p.vs.iter().rev() {
        t = t.concat(v).push(1);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_positions_are_one_based_from_the_left() {
        let x = bits("0110");
        assert_eq!((x.get(1), x.get(2), x.get(3), x.get(4)), (0, 1, 1, 0));
        assert_eq!(x.flip(1), bits("1110"));
        assert_eq!(x.flip(4), bits("0111"));
        assert_eq!(x.level(), 2);
        assert_eq!(x.to_string(), "0110");
    }

    #[test]
    fn ordering_is_length_then_lexicographic() {
        let mut v = vec![bits("10"), bits("0011"), bits("01"), bits("0101")];
        v.sort();
        let shown: Vec<String> = v.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, ["01", "10", "0011", "0101"]);
    }

    #[test]
    fn slice_and_concat_roundtrip() {
        let x = bits("0100111");
        assert_eq!(x.slice(2, 4), bits("100"));
        assert_eq!(x.slice(3, 2), Bits::empty());
        assert_eq!(x.slice(1, 3).concat(&x.slice(4, 7)), x);
    }

    #[test]
    fn dyck_recognition() {
        assert!(bits("0011").is_dyck());
        assert!(bits("0101").is_dyck());
        assert!(Bits::empty().is_dyck());
        assert!(!bits("0110").is_dyck());
        assert!(!bits("001").is_dyck());
        assert!(!bits("10").is_dyck());
    }

    #[test]
    fn factorizations_split_at_first_return_and_final_partner() {
        // 0 u 1 v with u = 01, v = 01
        let x = bits("001101");
        let (u, v) = x.left_factorize();
        assert_eq!((u, v), (bits("01"), bits("01")));
        // u 0 v 1 with u = 0011, v = 0
        let (u, v) = x.right_factorize();
        assert_eq!((u, v), (bits("0011"), Bits::empty()));
    }

    #[test]
    fn rot_moves_the_first_block_interior_out() {
        assert_eq!(bits("001101").rot(), bits("010011"));
        assert_eq!(bits("0011").rot(), bits("0101"));
        assert_eq!(bits("0101").rot(), bits("0011"));
        assert_eq!(Bits::empty().rot(), Bits::empty());
        // rot and rot_inv are inverse on all Dyck words of length up to 12
        for len in (0..=12usize).step_by(2) {
            for w in 0u64..(1 << len) {
                let x = Bits::from_raw(len, w);
                if x.is_dyck() {
                    assert_eq!(x.rot().rot_inv(), x);
                    assert_eq!(x.rot_inv().rot(), x);
                    assert!(x.rot().is_dyck());
                }
            }
        }
    }

    #[test]
    fn rev_comp_is_an_involution_and_maps_dyck_to_dyck() {
        let x = bits("001011");
        assert_eq!(x.rev_comp(), bits("001011").rev_comp());
        assert_eq!(x.rev_comp().rev_comp(), x);
        assert!(x.rev_comp().is_dyck());
    }

    #[test]
    fn reflected_gray_code_small_case() {
        let words: Vec<String> = brgc(3).map(|b| b.to_string()).collect();
        assert_eq!(words, ["000", "001", "011", "010", "110", "111", "101", "100"]);
    }

    #[test]
    fn reflected_gray_code_adjacent_words_differ_once() {
        for n in 1..=10 {
            let all: Vec<Bits> = brgc(n).collect();
            assert_eq!(all.len(), 1 << n);
            for i in 0..all.len() {
                let j = (i + 1) % all.len();
                assert_eq!(all[i].diff_positions(&all[j]).len(), 1);
            }
        }
    }

    #[test]
    fn pull_site_and_rewrite_match_the_worked_example() {
        let t = bits("00110011");
        assert_eq!(pull_sites(&t), vec![6]);
        assert_eq!(pull(&t, 6), bits("00110101"));
        let p = pull_parts(&t, 6);
        assert_eq!(p.d, 0);
        assert_eq!(p.u0p, bits("0011"));
        assert_eq!(p.us, vec![Bits::empty()]);
        assert!(p.vs.is_empty());
        assert_eq!(reassemble(&p, true), bits("00110101"));
    }

    #[test]
    fn pull_sites_lie_in_the_rightmost_subtree_below_the_root() {
        // Root with two children; the rightmost subtree is 001011 with one
        // inner vertex. Only the trailing leaf's edge can be pulled: the
        // block 011 at position 6. The block 0..1 at position 3 opens the
        // inner vertex itself (not a pending leaf), and nothing in the first
        // subtree 01 qualifies because it sits left of the rightmost subtree.
        let t = bits("01001011");
        assert_eq!(pull_sites(&t), vec![6]);
        assert_eq!(pull(&t, 6), bits("01001101"));
        let p = pull_parts(&t, 6);
        assert_eq!(p.d, 0);
        assert_eq!(p.u0p, bits("01"));
        assert_eq!(p.us, vec![bits("01")]);
        assert!(p.vs.is_empty());
    }

    #[test]
    fn every_pull_preserves_balance_and_moves_one_edge_up() {
        for len in (4..=14usize).step_by(2) {
            for w in 0u64..(1 << len) {
                let t = Bits::from_raw(len, w);
                if !t.is_dyck() {
                    continue;
                }
                for a in pull_sites(&t) {
                    let t2 = pull(&t, a);
                    assert!(t2.is_dyck(), "pull broke balance: {t} at {a} -> {t2}");
                    assert_eq!(t.diff_positions(&t2), vec![a, a + 1]);
                    let parts = pull_parts(&t, a);
                    assert_eq!(reassemble(&parts, true), t2);
                    assert!(parts.u0p.is_dyck());
                    assert!(parts.us.iter().all(Bits::is_dyck));
                    assert!(parts.vs.iter().all(Bits::is_dyck));
                }
            }
        }
    }
}
