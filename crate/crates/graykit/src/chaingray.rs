//! Cyclic 3-Gray ordering of the symmetric chain decomposition, generated
//! recursively or looplessly, and its expansion into a Hamilton cycle of the
//! whole cube.
//!
//! The ordering lists the chains of the parenthesis-matching decomposition so
//! that consecutive chains (cyclically) differ in at most three string
//! positions and can be joined top-to-top and bottom-to-bottom alternatingly.
//! The loopless generators maintain the current chain in a handful of arrays
//! and spend a bounded constant number of array writes per emitted chain.

use crate::scd::{Chain, Sym};
use crate::words::Bits;

/// Wraps a chain in a star on each side: `C -> *C*`.
fn wrap(c: &Chain) -> Chain {
    let mut w = Chain::stars(c.len() + 2);
    for i in 1..=c.len() {
        w = w.with(i + 1, c.get(i));
    }
    w
}

/// Brackets a starless chain: `C -> 0C1`.
fn nest(c: &Chain) -> Chain {
    debug_assert_eq!(c.star_count(), 0);
    let mut w = Chain::stars(c.len() + 2).with(1, Sym::Zero);
    for i in 1..=c.len() {
        w = w.with(i + 1, c.get(i));
    }
    w.with(c.len() + 2, Sym::One)
}

/// The descendant group of `c` in dimension `n`: the chains of Q_n derived
/// from the chain `c` of Q_{n-2}, in generation order.
fn descendant_group(n: usize, c: &Chain) -> Vec<Chain> {
    let w = wrap(c);
    let h = c.star_count();
    if n % 2 == 0 {
        if h >= 2 {
            let fw = w.first_pair_matched();
            let lw = w.last_pair_matched();
            vec![w, fw, lw.first_pair_matched(), lw]
        } else {
            vec![w, nest(c)]
        }
    } else if h >= 3 {
        let fw = w.first_pair_matched();
        let lw = w.last_pair_matched();
        vec![w, lw, fw.last_pair_matched(), fw]
    } else {
        vec![w, w.last_pair_matched(), w.first_pair_matched()]
    }
}

fn lambda(n: usize) -> Vec<Chain> {
    if n == 0 {
        return vec![Chain::stars(0)];
    }
    if n == 1 {
        return vec![Chain::stars(1)];
    }
    let mut out = Vec::new();
    for c in lambda(n - 2) {
        let mut group = descendant_group(n, &c);
        // A group is traversed forward when its origin's length is two less
        // than n modulo 4, and backwards otherwise.
        if (c.star_count() + 2) % 4 != n % 4 {
            group.reverse();
        }
        out.extend(group);
    }
    out
}

/// The full cyclic chain ordering of Q_n by the two-dimensional recursion.
/// Starts at the all-star chain; contains every chain exactly once.
pub fn lambda_recursive(n: usize) -> Vec<Chain> {
    assert!((2..=24).contains(&n), "recursive ordering supports 2 <= n <= 24");
    lambda(n)
}

/// Chain operations of the loopless generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    /// Match the first two stars.
    F,
    /// Match the last two stars.
    L,
    FInv,
    LInv,
    /// `LInv` then `F`, bridging the last two descendants (odd case).
    G,
    /// `FInv` then `L`.
    GInv,
}

/// Array state of the loopless generators. The current chain lives in
/// `c[1..=n]`; `p` holds matched partners, `s`/`t` the next/previous star
/// positions, and `d`, `l`, `b`, `o`, `q` drive the recursion bookkeeping
/// per even dimension (even input) or odd dimension (odd input).
pub struct GeneratorState {
    n: usize,
    m: usize,
    odd: bool,
    pub c: Vec<Sym>,
    pub p: Vec<usize>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub d: Vec<usize>,
    pub l: Vec<usize>,
    /// `true` = the descendant group of a long origin (four/three chains).
    pub b: Vec<bool>,
    /// `true` = forward traversal of the next descendant group.
    pub o: Vec<bool>,
    pub q: Vec<Op>,
    mutations: u64,
    done: bool,
}

impl GeneratorState {
    /// Initialized state visiting the all-star chain first.
    pub fn new(n: usize) -> GeneratorState {
        assert!((1..=30).contains(&n), "loopless generation supports 1 <= n <= 30");
        let odd = n % 2 == 1;
        let m = n / 2;
        let mut st = GeneratorState {
            n,
            m,
            odd,
            c: vec![Sym::Star; n + 1],
            p: vec![0; n + 1],
            s: (0..=n + 1).map(|i| i + 1).collect(),
            t: (0..=n + 1).map(|i| i.saturating_sub(1)).collect(),
            d: (0..=m).collect(),
            l: vec![0; m + 1],
            b: vec![true; m + 1],
            o: vec![true; m + 1],
            q: vec![Op::F; m + 1],
            mutations: 0,
            done: false,
        };
        st.s.truncate(n + 1);
        for i in 1..=m {
            st.l[i] = if odd { 2 * i + 1 } else { 2 * i };
            st.q[i] = if odd { Op::L } else { Op::F };
        }
        if m >= 1 {
            // Dimension 2 (or 3) descends from a starless (length-1) origin.
            st.b[1] = false;
        }
        st
    }

    /// The currently visited chain.
    pub fn chain(&self) -> Chain {
        let mut c = Chain::stars(self.n);
        for i in 1..=self.n {
            c = c.with(i, self.c[i]);
        }
        c
    }

    /// Primitive array writes spent by the last [`GeneratorState::advance`].
    pub fn last_step_mutations(&self) -> u64 {
        self.mutations
    }

    /// Rightmost position of the active window in dimension `i`.
    fn end(&self, i: usize) -> usize {
        if self.odd {
            self.m + i + 1
        } else {
            self.m + i
        }
    }

    fn matchfirst(&mut self, i: usize) {
        let a = self.m - i + 1;
        let b = self.s[a];
        let g = self.s[b];
        self.c[a] = Sym::Zero;
        self.c[b] = Sym::One;
        self.p[a] = b;
        self.p[b] = a;
        self.s[a - 1] = g;
        self.t[g] = a - 1;
        self.mutations += 6;
    }

    fn matchfirst_inv(&mut self, i: usize) {
        let a = self.m - i + 1;
        let b = self.p[a];
        let g = self.s[a - 1];
        self.c[a] = Sym::Star;
        self.c[b] = Sym::Star;
        self.s[a - 1] = a;
        self.s[a] = b;
        self.s[b] = g;
        self.t[g] = b;
        self.t[b] = a;
        self.t[a] = a - 1;
        self.mutations += 8;
    }

    fn matchlast(&mut self, i: usize) {
        let a = self.end(i);
        let b = self.t[a];
        let g = self.t[b];
        self.c[b] = Sym::Zero;
        self.c[a] = Sym::One;
        self.p[b] = a;
        self.p[a] = b;
        self.s[g] = a + 1;
        self.t[a + 1] = g;
        self.mutations += 6;
    }

    fn matchlast_inv(&mut self, i: usize) {
        let a = self.end(i);
        let b = self.p[a];
        let g = self.t[a + 1];
        self.c[b] = Sym::Star;
        self.c[a] = Sym::Star;
        self.s[g] = b;
        self.s[b] = a;
        self.s[a] = a + 1;
        self.t[a + 1] = a;
        self.t[a] = b;
        self.t[b] = g;
        self.mutations += 8;
    }

    /// Moves to the next chain of the ordering; `false` once the cycle is
    /// complete (the all-star chain would repeat).
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        self.mutations = 0;
        let i = self.d[self.m];
        if i == 0 {
            self.done = true;
            return false;
        }
        if self.odd {
            self.advance_odd(i);
        } else {
            self.advance_even(i);
        }
        true
    }

    fn advance_even(&mut self, i: usize) {
        match self.q[i] {
            Op::L => self.matchlast(i),
            Op::LInv => self.matchlast_inv(i),
            Op::F => {
                if self.s[self.m - i + 1] <= self.m + i {
                    self.matchfirst(i);
                } else {
                    self.matchlast_inv(i + 1);
                    self.matchfirst(i);
                    self.matchlast(i + 1);
                }
            }
            Op::FInv => {
                if i == self.m || self.c[self.m - i] == Sym::Star {
                    self.matchfirst_inv(i);
                } else {
                    self.matchlast_inv(i + 1);
                    self.matchfirst_inv(i);
                    self.matchlast(i + 1);
                }
            }
            Op::G | Op::GInv => unreachable!("bridging operations are odd-only"),
        }
        let q = self.q[i];
        if matches!(q, Op::F | Op::L) {
            self.l[i] -= 2;
        } else {
            self.l[i] += 2;
        }
        self.d[self.m] = self.m;
        self.mutations += 2;
        if !self.b[i] {
            // Last descendant of a starless origin reached.
            self.d[i] = self.d[i - 1];
            self.d[i - 1] = i - 1;
            self.l[i] = if self.o[i] { 2 } else { 4 };
            self.b[i] = true;
            self.o[i] = !self.o[i];
            self.q[i] = Op::F;
            self.mutations += 6;
        } else if q != Op::FInv {
            // More descendants of a starred origin remain.
            self.q[i] = if matches!(q, Op::L | Op::LInv) {
                Op::FInv
            } else if self.o[i] {
                Op::L
            } else {
                Op::LInv
            };
            self.mutations += 1;
        } else {
            // Last descendant of a starred origin reached.
            self.d[i] = self.d[i - 1];
            self.d[i - 1] = i - 1;
            let j = self.d[i];
            if j > 0 && matches!(self.q[j], Op::F | Op::L) {
                self.l[i] -= 2;
            } else {
                self.l[i] += 2;
            }
            if self.l[i] == 0 {
                self.b[i] = false;
                self.q[i] = Op::FInv;
                self.mutations += 2;
            } else if self.l[i] == 2 && !self.o[i] {
                self.b[i] = false;
                self.q[i] = Op::F;
                self.mutations += 2;
            } else {
                self.q[i] = Op::F;
                self.mutations += 1;
            }
            self.o[i] = !self.o[i];
            self.mutations += 4;
        }
    }

    fn advance_odd(&mut self, i: usize) {
        match self.q[i] {
            Op::L => self.matchlast(i),
            Op::LInv => self.matchlast_inv(i),
            Op::F => self.matchfirst(i),
            Op::FInv => self.matchfirst_inv(i),
            Op::G => {
                self.matchlast_inv(i);
                self.matchfirst(i);
                if i != self.m {
                    self.matchfirst(i + 1);
                }
            }
            Op::GInv => {
                if i == self.m {
                    self.matchfirst_inv(i);
                    self.matchlast(i);
                } else {
                    self.matchfirst_inv(i + 1);
                    self.matchfirst_inv(i);
                    self.matchlast(i);
                }
            }
        }
        let q = self.q[i];
        if matches!(q, Op::F | Op::L) {
            self.l[i] -= 2;
            self.mutations += 1;
        } else if matches!(q, Op::FInv | Op::LInv) {
            self.l[i] += 2;
            self.mutations += 1;
        }
        self.d[self.m] = self.m;
        self.mutations += 1;
        if !self.b[i] && matches!(q, Op::L | Op::GInv) {
            // Descendants of a length-1 origin remain.
            self.q[i] = if q == Op::L { Op::G } else { Op::LInv };
            self.mutations += 1;
        } else if !self.b[i] && matches!(q, Op::G | Op::LInv) {
            // Last descendant of a length-1 origin reached.
            self.d[i] = self.d[i - 1];
            self.d[i - 1] = i - 1;
            let j = self.d[i];
            if j > 0 && matches!(self.q[j], Op::F | Op::L | Op::G) {
                self.l[i] -= 2;
            } else {
                self.l[i] += 2;
            }
            self.mutations += 3;
            if self.l[i] == 1 {
                self.q[i] = Op::GInv;
                self.mutations += 1;
            } else if self.l[i] == 3 && i >= 2 && self.q[i - 1] == Op::LInv {
                self.b[i] = true;
                self.o[i] = false;
                self.q[i] = Op::L;
                self.mutations += 3;
            } else if self.l[i] == 3 {
                self.q[i] = Op::L;
                self.mutations += 1;
            } else {
                self.b[i] = true;
                self.q[i] = Op::L;
                self.o[i] = !self.o[i];
                self.mutations += 3;
            }
        } else if q != Op::LInv {
            // More descendants of a longer origin remain.
            self.q[i] = if matches!(q, Op::F | Op::FInv) {
                Op::LInv
            } else if self.o[i] {
                Op::F
            } else {
                Op::FInv
            };
            self.mutations += 1;
        } else {
            // Last descendant of a longer origin reached.
            self.d[i] = self.d[i - 1];
            self.d[i - 1] = i - 1;
            let j = self.d[i];
            if j > 0 && matches!(self.q[j], Op::F | Op::L | Op::G) {
                self.l[i] -= 2;
            } else {
                self.l[i] += 2;
            }
            self.mutations += 3;
            if self.l[i] == 1 {
                self.b[i] = false;
                self.q[i] = Op::GInv;
                self.mutations += 2;
            } else if self.l[i] == 3 && !self.o[i] {
                self.b[i] = false;
                self.q[i] = Op::L;
                self.mutations += 2;
            } else {
                self.q[i] = Op::L;
                self.mutations += 1;
            }
            self.o[i] = !self.o[i];
            self.mutations += 1;
        }
    }
}

/// Streaming iterator over the chain ordering.
pub struct LooplessChains {
    state: GeneratorState,
    first: bool,
}

impl Iterator for LooplessChains {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if self.first {
            self.first = false;
            return Some(self.state.chain());
        }
        if self.state.advance() {
            Some(self.state.chain())
        } else {
            None
        }
    }
}

/// Loopless generator for any dimension 1..=30.
pub fn loopless(n: usize) -> LooplessChains {
    LooplessChains { state: GeneratorState::new(n), first: true }
}

/// Loopless generator, even dimensions.
pub fn loopless_even(n: usize) -> LooplessChains {
    assert!(n % 2 == 0, "dimension must be even, got {n}");
    loopless(n)
}

/// Loopless generator, odd dimensions.
pub fn loopless_odd(n: usize) -> LooplessChains {
    assert!(n % 2 == 1, "dimension must be odd, got {n}");
    loopless(n)
}

/// `true` if the ordering traverses `c` bottom-to-top: exactly the chains
/// whose length is congruent to `n` modulo 4 (the all-star chain goes up).
pub fn direction_up(c: &Chain, n: usize) -> bool {
    debug_assert_eq!(c.len(), n);
    c.star_count() % 4 == n % 4
}

/// Expands the chain ordering into a Hamilton cycle of the whole cube Q_n:
/// each chain is walked fully, upwards or downwards per [`direction_up`],
/// and every junction between consecutive chains is a single bit flip
/// (asserted). `n = 1` degenerates to the two-vertex listing 0, 1.
pub fn expand_to_hamilton(n: usize) -> Vec<Bits> {
    assert!((1..=25).contains(&n), "cube expansion supports 1 <= n <= 25");
    let mut seq: Vec<Bits> = Vec::with_capacity(1usize << n);
    for c in loopless(n) {
        let h = c.star_count();
        let first = seq.len();
        if direction_up(&c, n) {
            for i in 0..=h {
                seq.push(c.vertex_at(i));
            }
        } else {
            for i in (0..=h).rev() {
                seq.push(c.vertex_at(i));
            }
        }
        if first > 0 {
            assert_eq!(
                seq[first - 1].diff_positions(&seq[first]).len(),
                1,
                "junction into chain {c} must be a cube edge"
            );
        }
    }
    assert_eq!(seq.len(), 1usize << n, "expansion must cover the cube");
    assert_eq!(
        seq[seq.len() - 1].diff_positions(&seq[0]).len(),
        1,
        "wraparound junction must be a cube edge"
    );
    seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scd::{chain, enumerate_chains};

    #[test]
    fn small_orderings_match_the_recursion_by_hand() {
        assert_eq!(lambda_recursive(2), vec![chain("**"), chain("01")]);
        assert_eq!(lambda_recursive(3), vec![chain("***"), chain("*01"), chain("01*")]);
        assert_eq!(
            lambda_recursive(4),
            ["****", "01**", "0101", "**01", "0011", "*01*"].map(chain).to_vec()
        );
        let want5 = [
            "*****", "***01", "01*01", "01***", "0101*", "*0011", "**01*", "0011*", "*0101",
            "*01**",
        ];
        assert_eq!(lambda_recursive(5), want5.map(chain).to_vec());
    }

    #[test]
    fn ordering_contains_every_chain_once() {
        for n in 2..=10 {
            let mut got: Vec<Chain> = lambda_recursive(n);
            got.sort();
            let mut want = enumerate_chains(n);
            want.sort();
            assert_eq!(got, want, "n={n}");
        }
    }

    #[test]
    fn loopless_equals_recursive() {
        for n in 2..=12 {
            let got: Vec<Chain> = loopless(n).collect();
            assert_eq!(got, lambda_recursive(n), "n={n}");
        }
        assert_eq!(loopless(1).collect::<Vec<_>>(), vec![chain("*")]);
    }

    #[test]
    fn consecutive_chains_differ_in_at_most_three_positions() {
        for n in 2..=11 {
            let seq = lambda_recursive(n);
            for k in 0..seq.len() {
                let a = seq[k];
                let b = seq[(k + 1) % seq.len()];
                let diff = (1..=n).filter(|&i| a.get(i) != b.get(i)).count();
                assert!(diff <= 3, "n={n}: {a} -> {b} differs in {diff} positions");
            }
        }
    }

    #[test]
    fn mutation_counter_is_small_and_flat() {
        for n in [2usize, 7, 12, 16] {
            let mut st = GeneratorState::new(n);
            let mut max = 0;
            while st.advance() {
                max = max.max(st.last_step_mutations());
            }
            assert!(max <= 64, "n={n}: {max} mutations in one step");
        }
    }

    #[test]
    fn expansion_is_a_hamilton_cycle_of_the_cube() {
        assert_eq!(
            expand_to_hamilton(2),
            ["00", "10", "11", "01"].map(crate::words::bits).to_vec()
        );
        for n in 2..=10 {
            let seq = expand_to_hamilton(n);
            let mut seen = vec![false; 1 << n];
            for v in &seq {
                assert!(!seen[v.raw() as usize]);
                seen[v.raw() as usize] = true;
            }
        }
    }
}
