//! The Greene-Kleitman symmetric chain decomposition (SCD) of the hypercube.
//!
//! Match the characters of a word x in {0,1}^n like parentheses: 0 opens,
//! 1 closes the nearest unmatched 0 to its left. The unmatched characters
//! form a (possibly empty) block of 1s followed by a block of 0s. The chain
//! through x is obtained by keeping all matched characters fixed and sweeping
//! the unmatched ones through 1^i 0^(h-i) for i = 0..h; this partitions
//! {0,1}^n into chains that are symmetric around the middle level and skip no
//! level in between.
//!
//! A chain is written over the alphabet {0, 1, *} with the unmatched
//! positions as stars. Reading between consecutive stars splits a chain into
//! h+1 star-free segments, its valleys, `C = u_0 * u_1 * ... * u_h`; each
//! valley is a Dyck word (every prefix has at least as many 0s as 1s).

use crate::words::{Bits, MAX_BITS};
use std::fmt;
use std::str::FromStr;

/// One chain symbol. The derived order matches ASCII: `*` < `0` < `1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sym {
    Star = 0,
    Zero = 1,
    One = 2,
}

impl Sym {
    pub fn as_char(self) -> char {
        match self {
            Sym::Star => '*',
            Sym::Zero => '0',
            Sym::One => '1',
        }
    }
}

/// Maximum chain length (symbols) supported by the packed representation.
pub const MAX_CHAIN: usize = 31;

/// A chain of the decomposition, packed 2 bits per symbol.
///
/// Position `i` (1-based, leftmost first) sits at bit offset `2*(len-i)`, so
/// the derived `Ord` compares by length first, then lexicographically with
/// `*` < `0` < `1` (ASCII order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    len: u8,
    packed: u64,
}

impl Chain {
    /// The all-stars chain of length `len`.
    pub fn stars(len: usize) -> Self {
        assert!(len <= MAX_CHAIN, "chain length {len} exceeds {MAX_CHAIN}");
        Chain { len: len as u8, packed: 0 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The symbol at 1-based position `i`.
    pub fn get(&self, i: usize) -> Sym {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range 1..={}", self.len());
        match (self.packed >> (2 * (self.len() - i))) & 0b11 {
            0 => Sym::Star,
            1 => Sym::Zero,
            2 => Sym::One,
            _ => unreachable!("invalid symbol code"),
        }
    }

    /// Returns a copy with position `i` set to `sym`.
    pub fn with(&self, i: usize, sym: Sym) -> Self {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range 1..={}", self.len());
        let off = 2 * (self.len() - i);
        let cleared = self.packed & !(0b11u64 << off);
        Chain { len: self.len, packed: cleared | ((sym as u64) << off) }
    }

    /// Number of stars.
    pub fn star_count(&self) -> usize {
        (1..=self.len()).filter(|&i| self.get(i) == Sym::Star).count()
    }

    /// 1-based positions of the stars, left to right.
    pub fn star_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.get(i) == Sym::Star).collect()
    }

    /// The valleys `u_0, ..., u_h`: maximal star-free segments between
    /// consecutive stars (including before the first and after the last).
    pub fn valleys(&self) -> Vec<Bits> {
        let mut out = Vec::new();
        let mut cur = Bits::empty();
        for i in 1..=self.len() {
            match self.get(i) {
                Sym::Star => {
                    out.push(cur);
                    cur = Bits::empty();
                }
                Sym::Zero => cur = cur.push(0),
                Sym::One => cur = cur.push(1),
            }
        }
        out.push(cur);
        out
    }

    /// Builds a chain from its valleys: `u_0 * u_1 * ... * u_h`.
    pub fn from_valleys(valleys: &[Bits]) -> Self {
        assert!(!valleys.is_empty());
        let mut c = Chain { len: 0, packed: 0 };
        for (k, u) in valleys.iter().enumerate() {
            if k > 0 {
                c = c.append(Sym::Star);
            }
            for i in 1..=u.len() {
                c = c.append(if u.get(i) == 0 { Sym::Zero } else { Sym::One });
            }
        }
        c
    }

    fn append(&self, sym: Sym) -> Self {
        assert!(self.len() < MAX_CHAIN, "chain length would exceed {MAX_CHAIN}");
        Chain { len: self.len + 1, packed: (self.packed << 2) | sym as u64 }
    }

    /// True if every star-free segment is a Dyck word, i.e. the 0/1 symbols
    /// are fully matched when stars are skipped and no 1 closes across a star.
    pub fn is_valid(&self) -> bool {
        let mut depth = 0i32;
        for i in 1..=self.len() {
            match self.get(i) {
                Sym::Star => {
                    if depth != 0 {
                        return false;
                    }
                }
                Sym::Zero => depth += 1,
                Sym::One => {
                    depth -= 1;
                    if depth < 0 {
                        return false;
                    }
                }
            }
        }
        depth == 0
    }

    /// The vertex with the first `i` stars set to 1 and the rest to 0.
    pub fn vertex_at(&self, i: usize) -> Bits {
        assert!(i <= self.star_count(), "star index {i} exceeds chain length {}", self.star_count());
        assert!(self.len() <= MAX_BITS);
        let mut x = Bits::zeros(self.len());
        let mut seen = 0usize;
        for p in 1..=self.len() {
            let bit = match self.get(p) {
                Sym::Zero => 0,
                Sym::One => 1,
                Sym::Star => {
                    seen += 1;
                    u8::from(seen <= i)
                }
            };
            if bit == 1 {
                x = x.with_bit(p, 1);
            }
        }
        x
    }

    /// The chain's lowest vertex (all stars 0).
    pub fn bottom(&self) -> Bits {
        self.vertex_at(0)
    }

    /// The chain's highest vertex (all stars 1).
    pub fn top(&self) -> Bits {
        self.vertex_at(self.star_count())
    }

    /// All vertices, bottom to top.
    pub fn vertices(&self) -> Vec<Bits> {
        (0..=self.star_count()).map(|i| self.vertex_at(i)).collect()
    }

    /// Chain kind by emptiness of the first and last valley.
    pub fn kind(&self) -> ChainKind {
        let vs = self.valleys();
        let first = !vs.first().unwrap().is_empty();
        let last = !vs.last().unwrap().is_empty();
        match (first, last) {
            (false, false) => ChainKind::MinusMinus,
            (true, false) => ChainKind::PlusMinus,
            (false, true) => ChainKind::MinusPlus,
            (true, true) => ChainKind::PlusPlus,
        }
    }

    /// Matching partner of the 0 or 1 at position `i` (stars skipped), if any.
    pub fn partner(&self, i: usize) -> Option<usize> {
        assert!(i >= 1 && i <= self.len());
        let mut stack: Vec<usize> = Vec::new();
        for p in 1..=self.len() {
            match self.get(p) {
                Sym::Star => {}
                Sym::Zero => stack.push(p),
                Sym::One => {
                    let o = stack.pop()?;
                    if o == i || p == i {
                        return Some(if o == i { p } else { o });
                    }
                }
            }
        }
        None
    }

    /// Matches the first two stars into a 01-pair.
    pub fn first_pair_matched(&self) -> Self {
        let stars = self.star_positions();
        assert!(stars.len() >= 2, "need at least two stars");
        self.with(stars[0], Sym::Zero).with(stars[1], Sym::One)
    }

    /// Matches the last two stars into a 01-pair.
    pub fn last_pair_matched(&self) -> Self {
        let stars = self.star_positions();
        assert!(stars.len() >= 2, "need at least two stars");
        self.with(stars[stars.len() - 2], Sym::Zero).with(stars[stars.len() - 1], Sym::One)
    }

    /// Unmatches the pair anchored at position 1: requires the chain to start
    /// with a matched 0; that 0 and its partner become the first two stars.
    /// Inverse of [`Chain::first_pair_matched`] on chains starting with a star.
    pub fn first_pair_unmatched(&self) -> Self {
        assert_eq!(self.get(1), Sym::Zero, "chain must start with a matched 0");
        let j = self.partner(1).expect("leading 0 of a valid chain is matched");
        self.with(1, Sym::Star).with(j, Sym::Star)
    }

    /// Unmatches the pair anchored at the final position: requires the chain
    /// to end with a matched 1; that 1 and its partner become the last two
    /// stars. Inverse of [`Chain::last_pair_matched`] on chains ending with a star.
    pub fn last_pair_unmatched(&self) -> Self {
        let n = self.len();
        assert_eq!(self.get(n), Sym::One, "chain must end with a matched 1");
        let i = self.partner(n).expect("trailing 1 of a valid chain is matched");
        self.with(i, Sym::Star).with(n, Sym::Star)
    }

    /// The chains obtained by matching two consecutive stars `k, k+1`
    /// (1-based star indices), for every `k`; each has two stars fewer.
    pub fn children(&self) -> Vec<Chain> {
        let stars = self.star_positions();
        let h = stars.len();
        let mut out = Vec::new();
        for k in 1..h {
            out.push(self.with(stars[k - 1], Sym::Zero).with(stars[k], Sym::One));
        }
        out
    }

    /// The chains obtained by unmatching one outermost matched pair of one
    /// valley into two consecutive stars; each has two stars more. Inverse
    /// relation of [`Chain::children`].
    pub fn parents(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut open_at = 0usize;
        for p in 1..=self.len() {
            match self.get(p) {
                Sym::Star => {}
                Sym::Zero => {
                    depth += 1;
                    if depth == 1 {
                        open_at = p;
                    }
                }
                Sym::One => {
                    depth -= 1;
                    if depth == 0 {
                        out.push(self.with(open_at, Sym::Star).with(p, Sym::Star));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            write!(f, "{}", self.get(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain({self})")
    }
}

/// Error returned when parsing a chain fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseChainError(pub String);

impl fmt::Display for ParseChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid chain: {}", self.0)
    }
}

impl std::error::Error for ParseChainError {}

impl FromStr for Chain {
    type Err = ParseChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > MAX_CHAIN {
            return Err(ParseChainError(format!("length {} exceeds {MAX_CHAIN}", s.len())));
        }
        let mut c = Chain { len: 0, packed: 0 };
        for ch in s.chars() {
            c = match ch {
                '*' => c.append(Sym::Star),
                '0' => c.append(Sym::Zero),
                '1' => c.append(Sym::One),
                _ => return Err(ParseChainError(format!("unexpected character {ch:?} in {s:?}"))),
            };
        }
        if !c.is_valid() {
            return Err(ParseChainError(format!("{s:?} is not a valid chain")));
        }
        Ok(c)
    }
}

/// Convenience constructor for literals in tests and examples.
pub fn chain(s: &str) -> Chain {
    s.parse().expect("valid chain literal")
}

/// Chain kind: does the first/last valley contain any symbols?
/// Displayed in sign notation, e.g. `[+-]` for nonempty first, empty last.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ChainKind {
    MinusMinus,
    PlusMinus,
    MinusPlus,
    PlusPlus,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChainKind::MinusMinus => "[--]",
            ChainKind::PlusMinus => "[+-]",
            ChainKind::MinusPlus => "[-+]",
            ChainKind::PlusPlus => "[++]",
        };
        f.write_str(s)
    }
}

/// Where a vertex sits inside its chain: the chain has `h` stars, the vertex
/// uses the first `i` of them as 1s, and `plus` records whether the valley
/// immediately after the i-th star is nonempty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VertexClass {
    pub h: usize,
    pub i: usize,
    pub plus: bool,
}

/// The chain through the vertex `x`: matched characters kept, unmatched ones
/// replaced by stars.
pub fn chain_of(x: &Bits) -> Chain {
    assert!(x.len() <= MAX_CHAIN);
    let mut c = Chain::stars(x.len());
    let mut stack: Vec<usize> = Vec::new();
    for i in 1..=x.len() {
        if x.get(i) == 0 {
            stack.push(i);
        } else if let Some(j) = stack.pop() {
            c = c.with(j, Sym::Zero).with(i, Sym::One);
        }
    }
    debug_assert!(c.is_valid());
    c
}

/// The chain factorization of a vertex: the valley words `u_0..u_h` of its
/// chain plus the count `i` of unmatched 1s, so that
/// `x = u_0 1 u_1 ... u_{i-1} 1 u_i 0 u_{i+1} ... 0 u_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFactorization {
    pub us: Vec<Bits>,
    pub i: usize,
}

/// Decomposes `x` into its chain factorization.
pub fn chain_factorization(x: &Bits) -> ChainFactorization {
    let c = chain_of(x);
    let i = classify(x).i;
    debug_assert_eq!(c.vertex_at(i), *x);
    ChainFactorization { us: c.valleys(), i }
}

/// Classifies `x` within its chain; see [`VertexClass`].
pub fn classify(x: &Bits) -> VertexClass {
    let c = chain_of(x);
    let h = c.star_count();
    let stars = c.star_positions();
    let i = stars.iter().filter(|&&p| x.get(p) == 1).count();
    debug_assert!(stars.iter().take(i).all(|&p| x.get(p) == 1), "unmatched 1s precede unmatched 0s");
    let plus = !c.valleys()[i].is_empty();
    VertexClass { h, i, plus }
}

/// Level of the vertex at star index `i` on a chain with `h` stars in Q_n:
/// `(n - h) / 2 + i`.
pub fn level_at(n: usize, h: usize, i: usize) -> usize {
    debug_assert_eq!((n - h) % 2, 0);
    (n - h) / 2 + i
}

/// All chains of the decomposition of Q_n, longest first, ties in ASCII
/// lexicographic order (`*` < `0` < `1`).
pub fn enumerate_chains(n: usize) -> Vec<Chain> {
    assert!(n >= 1 && n <= 24, "chain enumeration supports 1 <= n <= 24");
    let mut out = Vec::new();
    for w in 0..(1u64 << n) {
        let x = Bits::from_raw(n, w);
        // Each chain is collected exactly once, at its bottom vertex.
        let c = chain_of(&x);
        let stars = c.star_positions();
        if stars.iter().all(|&p| x.get(p) == 0) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| b.star_count().cmp(&a.star_count()).then(a.cmp(b)));
    out
}
