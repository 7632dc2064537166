//! A 2-factor on the middle `2l` levels of an odd-dimensional hypercube.
//!
//! For odd n = 2m+1 and 2 <= l <= m+1, the subgraph of Q_n induced by levels
//! m+1-l ..= m+l has a 2-factor assembled from three kinds of edges:
//!
//! * chain edges and a few first-rank lexical edges on the chains of length
//!   at most 2l-3, which close those chains into cycles ("short" chains are
//!   fully inside the window);
//! * for the taller chains (length >= 2l-1, which poke out of the window),
//!   bands of chain edges and first-rank lexical edges; band k occupies the
//!   classes at offset 2(k-1) and 2(k-1)+1 above each tall chain's lowest
//!   in-window vertex and decomposes into vertex-disjoint paths;
//! * rotation edges pairing up the path ends on the chains of length exactly
//!   2l-1, two classes at a time.
//!
//! Every vertex in the window ends up with degree exactly 2, and the factor's
//! cycles are either "short" (they visit fewer than 2l levels; such a cycle
//! lives on the chains around one chain of length 3 <= h <= 2l-3 and spans
//! h+1 levels) or "long" (they span all 2l levels).

use crate::lexical::{lex_down, lex_up, z_map};
use crate::scd::{chain_of, classify, Chain};
use crate::words::Bits;
use std::collections::HashMap;

/// Validates the window parameters: n odd, n >= 3, 2 <= l <= (n+1)/2.
pub fn check_params(n: usize, l: usize) {
    assert!(n % 2 == 1 && n >= 3, "dimension must be odd and at least 3, got {n}");
    assert!(n <= 17, "factor construction supports n <= 17, got {n}");
    assert!(
        (2..=(n + 1) / 2).contains(&l),
        "half-width must satisfy 2 <= l <= (n+1)/2, got l={l} for n={n}"
    );
}

/// Which part of the construction an edge belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeTag {
    /// Chain edge on a chain of length <= 2l-3.
    ChainShort,
    /// First-rank lexical edge between the two middle classes of the
    /// length-1 chains (the only rung the chain edge does not provide).
    MiddlePair,
    /// First-rank lexical edge from the top of a chain of length h <= 2l-5
    /// up onto the top of a chain of length h+2.
    TopHook,
    /// First-rank lexical edge from the bottom of a chain of length h <= 2l-5
    /// down onto the bottom of a chain of length h+2.
    BottomHook,
    /// First-rank lexical edge from the top class of the length-(2l-3)
    /// chains up onto the top of the length-(2l-1) chains (band l's cap).
    TopCap,
    /// First-rank lexical edge from the bottom class of the length-(2l-3)
    /// chains down onto the bottom of the length-(2l-1) chains (band 1's cap).
    BottomCap,
    /// Chain edge on a tall chain, belonging to band k.
    ChainTall(u8),
    /// First-rank lexical edge going up two chain lengths within band k.
    UpTall(u8),
    /// First-rank lexical edge going down two chain lengths within band k.
    DownTall(u8),
    /// Rotation edge pairing path ends on the length-(2l-1) chains.
    Rotation,
}

impl EdgeTag {
    /// Band number for band edges (the caps belong to bands 1 and l).
    pub fn band(&self, l: usize) -> Option<usize> {
        match *self {
            EdgeTag::TopCap => Some(l),
            EdgeTag::BottomCap => Some(1),
            EdgeTag::ChainTall(k) | EdgeTag::UpTall(k) | EdgeTag::DownTall(k) => Some(k as usize),
            _ => None,
        }
    }
}

/// One factor edge; `lower` is the endpoint on the smaller level.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FactorEdge {
    pub lower: Bits,
    pub upper: Bits,
    pub tag: EdgeTag,
}

fn thread_count() -> usize {
    std::env::var("GRAYKIT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .map(|t| t.clamp(1, 64))
        .unwrap_or(1)
}

/// Emits the factor edges for vertices with packed value in `lo..hi`.
/// Each edge is emitted at exactly one designated endpoint, so the full
/// sweep produces every edge exactly once.
fn emit_range(n: usize, l: usize, lo: u64, hi: u64) -> Vec<FactorEdge> {
    let m = (n - 1) / 2;
    let mut out = Vec::new();
    let up0 = |x: &Bits| lex_up(0, x).expect("chain edge exists below the chain top");
    let up1 = |x: &Bits| lex_up(1, x).expect("first-rank upward partner exists");
    let down1 = |x: &Bits| lex_down(1, x).expect("first-rank downward partner exists");
    for w in lo..hi {
        let x = Bits::from_raw(n, w);
        let level = x.level();
        if level < m + 1 - l || level > m + l {
            continue;
        }
        let cls = classify(&x);
        let (h, i, plus) = (cls.h, cls.i, cls.plus);
        if h <= 2 * l - 3 {
            if i < h {
                out.push(FactorEdge { lower: x, upper: up0(&x), tag: EdgeTag::ChainShort });
            }
            if h == 1 && i == 0 && !plus {
                out.push(FactorEdge { lower: x, upper: up1(&x), tag: EdgeTag::MiddlePair });
            }
            if plus && i == h {
                if h + 5 <= 2 * l {
                    out.push(FactorEdge { lower: x, upper: up1(&x), tag: EdgeTag::TopHook });
                } else {
                    out.push(FactorEdge { lower: x, upper: up1(&x), tag: EdgeTag::TopCap });
                }
            }
            if plus && i == 0 {
                if h + 5 <= 2 * l {
                    out.push(FactorEdge { lower: down1(&x), upper: x, tag: EdgeTag::BottomHook });
                } else {
                    out.push(FactorEdge { lower: down1(&x), upper: x, tag: EdgeTag::BottomCap });
                }
            }
        } else {
            // Tall chain: h >= 2l-1. The lowest in-window class is j, and
            // d = i - j in 0..=2l-1 indexes the window classes bottom-up.
            let j = (h - (2 * l - 1)) / 2;
            let d = i - j;
            debug_assert!(d <= 2 * l - 1);
            if d % 2 == 0 {
                let k = (d / 2 + 1) as u8;
                out.push(FactorEdge { lower: x, upper: up0(&x), tag: EdgeTag::ChainTall(k) });
                if plus {
                    out.push(FactorEdge { lower: x, upper: up1(&x), tag: EdgeTag::UpTall(k) });
                }
            } else if plus {
                let k = ((d + 1) / 2) as u8;
                out.push(FactorEdge { lower: down1(&x), upper: x, tag: EdgeTag::DownTall(k) });
            }
            if h == 2 * l - 1 && !plus && d % 2 == 0 && d >= 2 {
                out.push(FactorEdge { lower: z_map(&x), upper: x, tag: EdgeTag::Rotation });
            }
        }
    }
    out
}

/// Builds the full edge list of the 2-factor, sharded across
/// `GRAYKIT_THREADS` threads (default 1) with a deterministic merge.
pub fn build_edges(n: usize, l: usize) -> Vec<FactorEdge> {
    check_params(n, l);
    let total = 1u64 << n;
    let t = thread_count().min(total as usize);
    if t == 1 {
        return emit_range(n, l, 0, total);
    }
    let chunk = total.div_ceil(t as u64);
    let mut parts: Vec<Vec<FactorEdge>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..t)
            .map(|idx| {
                let lo = chunk * idx as u64;
                let hi = (lo + chunk).min(total);
                scope.spawn(move || emit_range(n, l, lo, hi))
            })
            .collect();
        parts = handles.into_iter().map(|h| h.join().expect("worker thread panicked")).collect();
    });
    parts.concat()
}

/// One cycle of the factor, listed from its lexicographically smallest vertex
/// towards the smaller of that vertex's two neighbors.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub vertices: Vec<Bits>,
    /// Number of levels the cycle visits (top level - bottom level + 1).
    pub span: usize,
}

impl Cycle {
    /// Long cycles span all 2l levels of the window; short ones span fewer.
    pub fn is_long(&self, l: usize) -> bool {
        self.span == 2 * l
    }
}

/// The assembled 2-factor with its adjacency and cycle decomposition.
pub struct Factor {
    pub n: usize,
    pub l: usize,
    pub edges: Vec<FactorEdge>,
    /// Two neighbors per vertex word; `u64::MAX` marks an empty slot.
    adj: Vec<[u64; 2]>,
    pub cycles: Vec<Cycle>,
    /// Cycle index per vertex word; `u32::MAX` outside the window.
    cycle_id: Vec<u32>,
}

impl Factor {
    pub fn build(n: usize, l: usize) -> Factor {
        let edges = build_edges(n, l);
        Self::from_edges(n, l, edges)
    }

    fn from_edges(n: usize, l: usize, edges: Vec<FactorEdge>) -> Factor {
        let size = 1usize << n;
        let mut adj = vec![[u64::MAX; 2]; size];
        let mut attach = |v: u64, other: u64| {
            let slots = &mut adj[v as usize];
            let slot = slots.iter_mut().find(|s| **s == u64::MAX);
            let slot = slot.unwrap_or_else(|| panic!("vertex {v:b} exceeds degree 2"));
            *slot = other;
        };
        for e in &edges {
            debug_assert_eq!(e.lower.level() + 1, e.upper.level(), "factor edge must climb one level");
            debug_assert_eq!(e.lower.diff_positions(&e.upper).len(), 1, "factor edge must be a cube edge");
            attach(e.lower.raw(), e.upper.raw());
            attach(e.upper.raw(), e.lower.raw());
        }
        let m = (n - 1) / 2;
        let mut cycles = Vec::new();
        let mut cycle_id = vec![u32::MAX; size];
        for w in 0..size as u64 {
            let x = Bits::from_raw(n, w);
            let level = x.level();
            if level < m + 1 - l || level > m + l {
                assert_eq!(adj[w as usize], [u64::MAX; 2], "edge attached outside the window");
                continue;
            }
            assert!(
                adj[w as usize].iter().all(|&s| s != u64::MAX),
                "vertex {x} in the window has degree < 2"
            );
            if cycle_id[w as usize] != u32::MAX {
                continue;
            }
            let id = cycles.len() as u32;
            let mut vertices = Vec::new();
            let (mut lo_level, mut hi_level) = (usize::MAX, 0usize);
            // Start at the smallest unvisited vertex (ascending scan makes it
            // the smallest on its cycle) and walk towards its smaller neighbor.
            let mut prev = w;
            let mut cur = w;
            loop {
                cycle_id[cur as usize] = id;
                let v = Bits::from_raw(n, cur);
                lo_level = lo_level.min(v.level());
                hi_level = hi_level.max(v.level());
                vertices.push(v);
                let [a, b] = adj[cur as usize];
                let next = if cur == w && prev == w {
                    a.min(b)
                } else if a == prev {
                    b
                } else {
                    a
                };
                prev = cur;
                cur = next;
                if cur == w {
                    break;
                }
            }
            cycles.push(Cycle { vertices, span: hi_level - lo_level + 1 });
        }
        Factor { n, l, edges, adj, cycles, cycle_id }
    }

    /// Index into [`Factor::cycles`] of the cycle through `x`.
    pub fn cycle_of(&self, x: &Bits) -> usize {
        let id = self.cycle_id[x.raw() as usize];
        assert!(id != u32::MAX, "vertex {x} is outside the window");
        id as usize
    }

    /// The two factor neighbors of `x`.
    pub fn neighbors(&self, x: &Bits) -> [Bits; 2] {
        let [a, b] = self.adj[x.raw() as usize];
        assert!(a != u64::MAX && b != u64::MAX, "vertex {x} is outside the window");
        [Bits::from_raw(self.n, a), Bits::from_raw(self.n, b)]
    }

    /// Starting from a vertex on the top class of the length-(2l-3) chains,
    /// walks the factor cycle in the direction of the upward lexical edge
    /// until the next such vertex. Reference implementation for
    /// [`long_cycle_successor`].
    pub fn next_top_by_walk(&self, x: &Bits) -> Bits {
        assert!(is_chain_top_class(x, self.l), "walk must start on the top class");
        let mut prev = *x;
        let mut cur = lex_up(1, x).expect("top-class vertices have an upward cap edge");
        while !is_chain_top_class(&cur, self.l) {
            let [a, b] = self.neighbors(&cur);
            let next = if a == prev { b } else { a };
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Cycle counts: `(total, shorts by span r for 2r = 4..=2l-2, longs)`.
    pub fn stats(&self) -> FactorStats {
        let mut shorts = vec![0usize; if self.l >= 3 { self.l - 2 } else { 0 }];
        let mut longs = 0usize;
        for c in &self.cycles {
            if c.is_long(self.l) {
                longs += 1;
            } else {
                assert!(c.span % 2 == 0 && c.span >= 4, "short cycle spans {} levels", c.span);
                let r = c.span / 2;
                shorts[r - 2] += 1;
            }
        }
        FactorStats { total: self.cycles.len(), shorts, longs }
    }
}

/// Cycle counts of a factor; `shorts[r-2]` counts the short cycles spanning
/// `2r` levels, for r = 2 ..= l-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStats {
    pub total: usize,
    pub shorts: Vec<usize>,
    pub longs: usize,
}

/// Number of short cycles spanning 2r levels, for any window with l > r:
/// `C(2m-1, m-r+1) - C(2m-1, m-r)`. At r = m+1 the same expression gives 1,
/// counting the single cycle of the widest window.
pub fn short_cycle_count(m: usize, r: usize) -> u64 {
    assert!(r >= 2 && r <= m + 1);
    binom(2 * m - 1, m + 1 - r) - if r == m + 1 { 0 } else { binom(2 * m - 1, m - r) }
}

pub(crate) fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits in u64")
}

/// True if `x` sits on the top class of the length-(2l-3) chains with a
/// nonempty final valley (the class whose trees index the long cycles).
pub fn is_chain_top_class(x: &Bits, l: usize) -> bool {
    let cls = classify(x);
    cls.h == 2 * l - 3 && cls.i == cls.h && cls.plus
}

/// Decomposition of a top-class vertex `x = u_0 1 u_1 1 ... u_{2l-4} 1 [v 0 w 1]`;
/// as a tree (with 2l-3 zeros prepended) the `us` and `v` are the subtrees
/// left of the rightmost root child, and `w` hangs below that child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineParts {
    pub us: Vec<Bits>,
    pub v: Bits,
    pub w: Bits,
}

/// Splits a top-class vertex into its spine parts. Panics off-class.
pub fn spine_parts(x: &Bits, l: usize) -> SpineParts {
    assert!(is_chain_top_class(x, l), "vertex {x} is not on the top class");
    let vs = chain_of(x).valleys();
    let h = 2 * l - 3;
    let (v, w) = vs[h].right_factorize();
    SpineParts { us: vs[..h].to_vec(), v, w }
}

/// The rightmost root subtree is a single pending edge (`w` empty).
pub fn is_right_empty(x: &Bits, l: usize) -> bool {
    spine_parts(x, l).w.is_empty()
}

/// Everything outside the leftmost spine hangs inside the rightmost root
/// subtree (`us` and `v` all empty, `w` not).
pub fn is_right_full(x: &Bits, l: usize) -> bool {
    let p = spine_parts(x, l);
    p.us.iter().all(Bits::is_empty) && p.v.is_empty() && !p.w.is_empty()
}

/// Shared core of the two closed-form maps: the next top-class vertex's
/// valley list in the "heavy" case (`w` nonempty), which is also the valley
/// list of the bottom-class vertex closing the upper detour in all cases.
fn rotated_valleys(p: &SpineParts) -> Vec<Bits> {
    let mut vs: Vec<Bits> = p.us.clone();
    vs.push(p.v);
    let top = vs.len() - 1; // = 2l - 3
    let mut out = Vec::with_capacity(top + 2);
    let zero = Bits::zeros(1);
    let one = zero.flip(1);
    out.push(zero.concat(&vs[0]).concat(&one).concat(&vs[1].rot()));
    for (k, u) in vs.iter().enumerate().skip(2) {
        out.push(if k % 2 == 0 { *u } else { u.rot() });
    }
    out.push(p.w);
    out
}

/// The next top-class vertex along the long cycle through `x`, leaving `x`
/// by its upward cap edge, in closed form. Validated against
/// [`Factor::next_top_by_walk`].
///
/// With `x = u_0 1 ... u_{2l-4} 1 [v 0 w 1]`: if `w` is nonempty (a "heavy"
/// step) the parts reassemble as `0 u_0 1 rot(u_1), u_2, rot(u_3), ..., w`
/// joined by 1s; if `w` is empty (a "light" step, a rotation of the whole
/// tree) they reassemble as `(), u_0, rot(u_1), ..., u_{2l-4} 0 rot(v) 1`
/// joined by 1s.
pub fn long_cycle_successor(x: &Bits, l: usize) -> Bits {
    let p = spine_parts(x, l);
    let valleys = if !p.w.is_empty() {
        rotated_valleys(&p)
    } else {
        let mut vs: Vec<Bits> = p.us.clone();
        vs.push(p.v);
        let top = vs.len() - 1;
        let mut out = Vec::with_capacity(top + 2);
        out.push(Bits::empty());
        for (k, u) in vs.iter().enumerate().take(top - 1) {
            out.push(if k % 2 == 0 { *u } else { u.rot() });
        }
        let b = vs[top - 1].push(0).concat(&vs[top].rot()).push(1);
        out.push(b);
        out
    };
    let c = Chain::from_valleys(&valleys);
    debug_assert!(c.is_valid());
    let y = c.top();
    debug_assert!(is_chain_top_class(&y, l));
    y
}

/// Closed form for the far end of the factor's excursion through the upper
/// part of the window: starting at a top-class vertex and leaving upward, the
/// factor returns to the bottom class of the length-(2l-3) chains at exactly
/// this vertex. Validated against [`BandIndex::upper_detour_end_by_walk`].
pub fn upper_detour_end(x: &Bits, l: usize) -> Bits {
    let p = spine_parts(x, l);
    let c = Chain::from_valleys(&rotated_valleys(&p));
    debug_assert!(c.is_valid());
    let y = c.bottom();
    let cls = classify(&y);
    debug_assert!(cls.h == 2 * l - 3 && cls.i == 0 && cls.plus);
    y
}

/// Closed form for the far end of the band path starting at `x`, dispatching
/// on the class of `x`:
/// * top class of length-(2l-3) chains: band l, ends two classes below the
///   top of the length-(2l-1) chains;
/// * bottom class of length-(2l-3) chains: band 1, ends one class above the
///   bottom of the length-(2l-1) chains;
/// * length-(2l-1) chains, odd class index 2k-1, empty next valley: band k,
///   ends one class below.
pub fn band_path_end(x: &Bits, l: usize) -> Bits {
    let cls = classify(x);
    let h = 2 * l - 3;
    if cls.h == h && cls.i == h && cls.plus {
        let p = spine_parts(x, l);
        // u_0, ..., u_{2l-4}, v, (), w with the first 2l-2 stars set to 1.
        let mut valleys = p.us.clone();
        valleys.push(p.v);
        valleys.push(Bits::empty());
        valleys.push(p.w);
        let c = Chain::from_valleys(&valleys);
        debug_assert!(c.is_valid());
        return c.vertex_at(2 * l - 2);
    }
    if cls.h == h && cls.i == 0 && cls.plus {
        let vs = chain_of(x).valleys();
        let (v, w) = vs[0].left_factorize();
        // v, (), w, u_1, ..., u_{2l-3} with only the first star set to 1.
        let mut valleys = vec![v, Bits::empty(), w];
        valleys.extend_from_slice(&vs[1..]);
        let c = Chain::from_valleys(&valleys);
        debug_assert!(c.is_valid());
        return c.vertex_at(1);
    }
    assert!(
        cls.h == 2 * l - 1 && cls.i % 2 == 1 && cls.i >= 3 && !cls.plus,
        "no band path starts at {x} (class {cls:?})"
    );
    let vs = chain_of(x).valleys();
    let i = cls.i;
    // Swap the empty valley one slot earlier: ..., u_{2k-3}, (), u_{2k-2}, u_{2k}, ...
    let mut valleys = Vec::with_capacity(vs.len());
    valleys.extend_from_slice(&vs[..i - 1]);
    valleys.push(Bits::empty());
    valleys.push(vs[i - 1]);
    valleys.extend_from_slice(&vs[i + 1..]);
    let c = Chain::from_valleys(&valleys);
    debug_assert!(c.is_valid());
    c.vertex_at(i - 1)
}

/// Walk-based access to the band paths and rotation edges of a factor,
/// the reference implementation the closed forms are tested against.
pub struct BandIndex {
    n: usize,
    l: usize,
    band_adj: HashMap<u64, Vec<u64>>,
    rotation_down: HashMap<u64, u64>,
}

impl BandIndex {
    pub fn new(n: usize, l: usize, edges: &[FactorEdge]) -> BandIndex {
        let mut band_adj: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut rotation_down = HashMap::new();
        for e in edges {
            if e.tag.band(l).is_some() {
                band_adj.entry(e.lower.raw()).or_default().push(e.upper.raw());
                band_adj.entry(e.upper.raw()).or_default().push(e.lower.raw());
            } else if e.tag == EdgeTag::Rotation {
                rotation_down.insert(e.upper.raw(), e.lower.raw());
            }
        }
        BandIndex { n, l, band_adj, rotation_down }
    }

    /// Follows band edges from a degree-1 vertex to the other path end.
    pub fn path_end_by_walk(&self, x: &Bits) -> Bits {
        let nbrs = &self.band_adj[&x.raw()];
        assert_eq!(nbrs.len(), 1, "band walk must start at a path end");
        let mut prev = x.raw();
        let mut cur = nbrs[0];
        loop {
            let nbrs = &self.band_adj[&cur];
            match nbrs.len() {
                1 => return Bits::from_raw(self.n, cur),
                2 => {
                    let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                    prev = cur;
                    cur = next;
                }
                d => panic!("band degree {d} at {cur:b}"),
            }
        }
    }

    /// Follows the factor from a top-class vertex up through the bands and
    /// rotation edges back down to a bottom-class vertex.
    pub fn upper_detour_end_by_walk(&self, x: &Bits) -> Bits {
        assert!(is_chain_top_class(x, self.l));
        let mut cur = self.path_end_by_walk(x);
        loop {
            let down = self.rotation_down[&cur.raw()];
            cur = self.path_end_by_walk(&Bits::from_raw(self.n, down));
            if classify(&cur).h == 2 * self.l - 3 {
                return cur;
            }
        }
    }
}
