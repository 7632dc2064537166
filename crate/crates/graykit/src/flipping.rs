//! Edge-disjoint 4-cycles and 6-cycles used to join the factor's cycles.
//!
//! A chain and one of its children (two consecutive stars matched into a
//! 01-pair) span several 4-cycles in the cube, each using one chain edge on
//! either side plus two parallel cross edges. Toggling such a 4-cycle against
//! the factor (which contains both chain edges) merges the two cycles through
//! those chains. A deterministic selection picks one 4-cycle per
//! gluing-chain arc so that all picked 4-cycles are pairwise edge-disjoint.
//!
//! Near the top of the window, pairs of trees related by a "pull" (see
//! [`crate::words::pull`]) give rise to 6-cycles spanning the top two levels;
//! these merge long cycles and are likewise pairwise edge-disjoint.

use crate::factor::is_chain_top_class;
use crate::scd::{chain_of, enumerate_chains, Chain, ChainKind, Sym};
use crate::words::{pull_parts, pull_sites, Bits};
use std::collections::HashMap;

/// A 4-cycle between a chain and one of its children.
///
/// `vertices` in cyclic order: two consecutive vertices of the parent chain,
/// then their translates on the child chain. `parent_edge` and `child_edge`
/// are 1-based chain edge indices (edge j joins the vertices using j-1 and j
/// stars).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCycle {
    pub parent: Chain,
    pub child: Chain,
    pub k: usize,
    pub parent_edge: usize,
    pub child_edge: usize,
    pub vertices: [Bits; 4],
}

impl FourCycle {
    pub fn edges(&self) -> [(Bits, Bits); 4] {
        let v = &self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }
}

/// The 4-cycle sitting at parent chain edge `j`, between `parent` and its
/// child obtained by matching stars `k, k+1`. Requires `j` outside `{k, k+1}`
/// (the parent edges consumed by the matched pair have no 4-cycle).
pub fn four_cycle(parent: &Chain, k: usize, j: usize) -> FourCycle {
    let stars = parent.star_positions();
    let h = stars.len();
    assert!((1..=h.saturating_sub(1)).contains(&k), "child index {k} out of range");
    assert!((1..=h).contains(&j) && j != k && j != k + 1, "parent edge {j} unusable for child {k}");
    let child = parent.with(stars[k - 1], Sym::Zero).with(stars[k], Sym::One);
    let x = parent.vertex_at(j - 1);
    let x2 = parent.vertex_at(j);
    // Crossing coordinate: the second matched star if the edge sits below the
    // pair, the first if above.
    let gamma = if j < k { stars[k] } else { stars[k - 1] };
    let y = x.flip(gamma);
    let y2 = x2.flip(gamma);
    let child_edge = if j < k { j } else { j - 2 };
    debug_assert_eq!(chain_of(&y), child);
    debug_assert_eq!(chain_of(&y2), child);
    debug_assert_eq!(child.vertex_at(child_edge - 1), y);
    debug_assert_eq!(child.vertex_at(child_edge), y2);
    FourCycle { parent: *parent, child, k, parent_edge: j, child_edge, vertices: [x, x2, y2, y] }
}

/// For a chain of length `h >= 5` and a forbidden edge `p`, selects one
/// parent edge `e(i)` for every child index `i = 1..h-1` such that the values
/// `e(i)` are pairwise distinct, avoid `p`, and avoid `{i, i+1}` (so the
/// 4-cycle at `e(i)` exists). Values before `p` in the cyclic order
/// `3, 4, ..., h, 1, 2` use offset 2, later ones offset 3; both claimed
/// properties are asserted on every call.
pub fn select_child_edges(h: usize, p: usize) -> Vec<usize> {
    assert!(h >= 5, "selection needs chains of length at least 5");
    assert!((1..=h).contains(&p), "forbidden edge {p} out of range");
    let mu = |x: usize| ((x - 1) % h) + 1;
    let threshold = mu(p + h - 2); // position of p in the value sequence 3,4,...,h,1,2
    let e: Vec<usize> = (1..h).map(|i| if i < threshold { mu(i + 2) } else { mu(i + 3) }).collect();
    let mut seen = vec![false; h + 1];
    for (idx, &ei) in e.iter().enumerate() {
        let i = idx + 1;
        assert!(ei != p, "selection hit the forbidden edge (h={h}, p={p}, i={i})");
        assert!(ei != i && ei != i + 1, "selection hit the matched pair (h={h}, p={p}, i={i})");
        assert!(!seen[ei], "selection repeated edge {ei} (h={h}, p={p})");
        seen[ei] = true;
    }
    e
}

/// An arc of the gluing forest: `tail` is a child of `head` obtained by
/// matching stars `k, k+1`.
#[derive(Clone, Debug)]
pub struct GlueArc {
    pub source: Chain,
    pub tail: Chain,
    pub head: Chain,
    pub k: usize,
}

/// The gluing chain of a both-ends-empty chain `c` of length 3 <= h <= 2l-3:
/// `c` itself while `h < 2l-3`; at the boundary length the chain is shortened
/// by absorbing a star pair into its first or last nonempty end.
pub fn glue(c: &Chain, l: usize) -> Chain {
    glue_arc(c, l).tail
}

/// The gluing chain of `c` together with its designated parent: the parent
/// re-splits the first nonempty interior valley of `c` (as it appears inside
/// the gluing chain) at its first block, and the arc records which star pair
/// of the parent recovers the gluing chain.
pub fn glue_arc(c: &Chain, l: usize) -> GlueArc {
    let vs = c.valleys();
    let h = vs.len() - 1;
    assert_eq!(c.kind(), ChainKind::MinusMinus, "gluing is defined on both-ends-empty chains");
    assert!(h >= 3 && h <= 2 * l - 3, "gluing needs 3 <= length <= 2l-3, got {h}");
    let i = (1..h)
        .find(|&i| !vs[i].is_empty())
        .expect("a both-ends-empty chain shorter than the word has a nonempty interior valley");
    let zero = Bits::zeros(1);
    let one = zero.flip(1);
    // Build the gluing chain's valleys and locate the valley slot and offset
    // at which vs[i] occurs inside it.
    let (g_valleys, slot, off): (Vec<Bits>, usize, usize) = if h < 2 * l - 3 {
        (vs.clone(), i, 0)
    } else if vs[1].is_empty() {
        // Absorb the front: a = 0 u_1 1 u_2 starts the shorter chain.
        let a = zero.concat(&vs[1]).concat(&one).concat(&vs[2]);
        let mut g = vec![a];
        g.extend_from_slice(&vs[3..h]);
        g.push(Bits::empty());
        if i == 2 {
            (g, 0, 2 + vs[1].len())
        } else {
            (g, i - 2, 0)
        }
    } else {
        // Absorb the back: b = u_{h-2} 0 u_{h-1} 1 ends the shorter chain.
        let b = vs[h - 2].concat(&zero).concat(&vs[h - 1]).concat(&one);
        let mut g = vec![Bits::empty()];
        g.extend_from_slice(&vs[1..h - 2]);
        g.push(b);
        (g, 1, 0)
    };
    let tail = Chain::from_valleys(&g_valleys);
    assert!(tail.is_valid());
    let target = vs[i];
    let val = g_valleys[slot];
    assert_eq!(val.slice(off + 1, off + target.len()), target, "tracked occurrence mismatch");
    let alpha = val.slice(1, off);
    let beta = val.slice(off + target.len() + 1, val.len());
    let (v, w) = target.left_factorize();
    let mut p_valleys = g_valleys[..slot].to_vec();
    p_valleys.push(alpha);
    p_valleys.push(v);
    p_valleys.push(w.concat(&beta));
    p_valleys.extend_from_slice(&g_valleys[slot + 1..]);
    let head = Chain::from_valleys(&p_valleys);
    assert!(head.is_valid());
    let k = slot + 1;
    assert_eq!(
        head.children().get(k - 1),
        Some(&tail),
        "parent's star pair {k} must recover the gluing chain"
    );
    GlueArc { source: *c, tail, head, k }
}

/// Builds the edge-disjoint 4-cycle set of the window: one 4-cycle per
/// both-ends-empty chain of length 3 ..= 2l-3, selected along the gluing
/// forest so that no two share an edge and none uses the edge of its own
/// node's upward 4-cycle.
pub fn build_four_cycles(n: usize, l: usize) -> Vec<FourCycle> {
    assert!(n % 2 == 1 && n >= 3, "dimension must be odd, got {n}");
    assert!((2..=(n + 1) / 2).contains(&l), "bad half-width {l} for n={n}");
    if l == 2 {
        return Vec::new();
    }
    let mut arcs: Vec<GlueArc> = Vec::new();
    for c in enumerate_chains(n) {
        let h = c.star_count();
        if c.kind() == ChainKind::MinusMinus && (3..=2 * l - 3).contains(&h) {
            arcs.push(glue_arc(&c, l));
        }
    }
    let mut tails: HashMap<Chain, usize> = HashMap::new();
    let mut by_head: HashMap<Chain, Vec<usize>> = HashMap::new();
    for (idx, arc) in arcs.iter().enumerate() {
        assert!(tails.insert(arc.tail, idx).is_none(), "gluing must be injective");
        by_head.entry(arc.head).or_default().push(idx);
    }
    // Roots are heads that are nobody's tail; their forbidden edge is
    // arbitrary (no upward 4-cycle constrains them), fixed to the last edge.
    let mut queue: Vec<(Chain, usize)> = by_head
        .keys()
        .filter(|head| !tails.contains_key(head))
        .map(|head| (*head, head.star_count()))
        .collect();
    queue.sort(); // deterministic processing order
    let mut out = Vec::with_capacity(arcs.len());
    while let Some((head, forbidden)) = queue.pop() {
        let h = head.star_count();
        let selection = if h >= 5 { Some(select_child_edges(h, forbidden)) } else { None };
        let mut used_k = Vec::new();
        for &idx in &by_head[&head] {
            let arc = &arcs[idx];
            assert!(!used_k.contains(&arc.k), "two arcs into {head} share star pair {}", arc.k);
            used_k.push(arc.k);
            let j = match &selection {
                Some(e) => e[arc.k - 1],
                // Length 3: the unique edge outside the matched pair.
                None => {
                    if arc.k == 1 {
                        3
                    } else {
                        1
                    }
                }
            };
            let fc = four_cycle(&head, arc.k, j);
            debug_assert_eq!(fc.child, arc.tail);
            if by_head.contains_key(&arc.tail) {
                queue.push((arc.tail, fc.child_edge));
            }
            out.push(fc);
        }
    }
    assert_eq!(out.len(), arcs.len(), "every gluing arc must receive a 4-cycle");
    out
}

/// The decomposition of a flippable pair around its pull site, in vertex
/// coordinates (the spine prefix of `2l-3` zeros stripped off the front).
#[derive(Clone, Debug)]
pub struct FlipPair {
    /// Number of proper ancestors of the pulled leaf's parent inside the
    /// rightmost root subtree.
    pub d: usize,
    /// Prefix of the vertex word before the rightmost subtree (not a
    /// balanced word in general: the spine's opening zeros are stripped).
    pub u0: Bits,
    /// `d + 1` subtree words left of the pulled leaf, outermost first.
    pub us: Vec<Bits>,
    /// `d` subtree words right of the pulled leaf, outermost first.
    pub vs: Vec<Bits>,
    /// Pull site in the tree word (1-based, spine included).
    pub site: usize,
}

/// The tree word of a top-class vertex: `2l-3` spine zeros then the vertex.
pub fn tree_of(x: &Bits, l: usize) -> Bits {
    assert!(is_chain_top_class(x, l), "trees correspond to top-class vertices");
    Bits::zeros(2 * l - 3).concat(x)
}

/// Vertex of a tree word (strips the spine prefix).
pub fn vertex_of(t: &Bits, l: usize) -> Bits {
    let x = t.slice(2 * l - 2, t.len());
    assert!(is_chain_top_class(&x, l), "tree word must carry the spine prefix");
    x
}

/// Checks whether `y`'s tree arises from `x`'s by one pull, and if so
/// returns the decomposition around the pull site.
pub fn flippable_parts(x: &Bits, y: &Bits, l: usize) -> Option<FlipPair> {
    if !is_chain_top_class(x, l) || !is_chain_top_class(y, l) {
        return None;
    }
    let tx = tree_of(x, l);
    let ty = tree_of(y, l);
    let diff = tx.diff_positions(&ty);
    if diff.len() != 2 || diff[1] != diff[0] + 1 {
        return None;
    }
    let a = diff[0];
    if tx.get(a) != 0 || ty.get(a) != 1 || !pull_sites(&tx).contains(&a) {
        return None;
    }
    let parts = pull_parts(&tx, a);
    let spine = 2 * l - 3;
    debug_assert!((1..=spine).all(|i| parts.u0p.get(i) == 0), "spine stays left of the site");
    Some(FlipPair {
        d: parts.d,
        u0: parts.u0p.slice(spine + 1, parts.u0p.len()),
        us: parts.us,
        vs: parts.vs,
        site: a,
    })
}

/// All vertices reachable from `x` by one pull on its tree.
pub fn pull_successors(x: &Bits, l: usize) -> Vec<Bits> {
    let tx = tree_of(x, l);
    pull_sites(&tx)
        .into_iter()
        .map(|a| {
            let ty = crate::words::pull(&tx, a);
            vertex_of(&ty, l)
        })
        .collect()
}

/// The 6-cycle attached to a flippable pair, spanning the top two levels.
#[derive(Clone, Debug)]
pub struct SixCycle {
    /// Pattern with three stars; substituting 001, 011, 010, 110, 100, 101
    /// (in this cyclic order) yields the six vertices.
    pub base: Vec<Sym>,
    pub vertices: [Bits; 6],
}

impl SixCycle {
    pub fn edges(&self) -> [(Bits, Bits); 6] {
        let v = &self.vertices;
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[4]), (v[4], v[5]), (v[5], v[0])]
    }

    pub fn pattern_string(&self) -> String {
        self.base.iter().map(|s| s.as_char()).collect()
    }
}

/// Builds the 6-cycle of a flippable pair `(x, y)`:
/// `u_0 1u_1 ... 1u_d * u_{d+1} ** 1 0v_d ... 0v_1` with the three stars
/// swept through the six weight-1-or-2 words in an order that closes a cycle.
pub fn six_cycle(x: &Bits, y: &Bits, l: usize) -> SixCycle {
    let p = flippable_parts(x, y, l).expect("pair must be flippable");
    let mut base: Vec<Sym> = Vec::new();
    let push_bits = |base: &mut Vec<Sym>, b: &Bits| {
        for i in 1..=b.len() {
            base.push(if b.get(i) == 0 { Sym::Zero } else { Sym::One });
        }
    };
    push_bits(&mut base, &p.u0);
    for k in 1..=p.d {
        base.push(Sym::One);
        push_bits(&mut base, &p.us[k - 1]);
    }
    base.push(Sym::Star);
    push_bits(&mut base, &p.us[p.d]);
    base.push(Sym::Star);
    base.push(Sym::Star);
    base.push(Sym::One);
    for k in (1..=p.d).rev() {
        base.push(Sym::Zero);
        push_bits(&mut base, &p.vs[k - 1]);
    }
    let n = x.len();
    assert_eq!(base.len(), n, "pattern must have full word length");
    let stars: Vec<usize> =
        base.iter().enumerate().filter(|(_, s)| **s == Sym::Star).map(|(i, _)| i + 1).collect();
    assert_eq!(stars.len(), 3);
    let skeleton = {
        let mut w = Bits::zeros(n);
        for (i, s) in base.iter().enumerate() {
            if *s == Sym::One {
                w = w.with_bit(i + 1, 1);
            }
        }
        w
    };
    const ORDER: [[u8; 3]; 6] = [[0, 0, 1], [0, 1, 1], [0, 1, 0], [1, 1, 0], [1, 0, 0], [1, 0, 1]];
    let vertices: Vec<Bits> = ORDER
        .iter()
        .map(|fill| {
            let mut w = skeleton;
            for (pos, bit) in stars.iter().zip(fill) {
                w = w.with_bit(*pos, *bit);
            }
            w
        })
        .collect();
    let vertices: [Bits; 6] = vertices.try_into().unwrap();
    for i in 0..6 {
        assert_eq!(
            vertices[i].diff_positions(&vertices[(i + 1) % 6]).len(),
            1,
            "six-cycle steps must be cube edges"
        );
    }
    let m = (n - 1) / 2;
    for v in &vertices {
        let lv = v.level();
        assert!(lv == m + l - 1 || lv == m + l, "six-cycle must span the top two levels");
    }
    SixCycle { base, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scd::chain;
    use crate::words::bits;

    #[test]
    fn four_cycle_below_and_above_the_matched_pair() {
        // Parent ***** (length 5), child with stars 3,4 matched.
        let parent = chain("*****");
        let fc = four_cycle(&parent, 3, 1);
        assert_eq!(fc.child, chain("**01*"));
        assert_eq!(fc.parent_edge, 1);
        assert_eq!(fc.child_edge, 1);
        // Edge 1 of the parent joins 00000 and 10000; crossing coordinate is
        // the second matched star (position 4).
        assert_eq!(
            fc.vertices,
            [bits("00000"), bits("10000"), bits("10010"), bits("00010")]
        );
        let fc = four_cycle(&parent, 1, 4);
        assert_eq!(fc.child, chain("01***"));
        assert_eq!(fc.child_edge, 2);
        assert_eq!(
            fc.vertices,
            [bits("11100"), bits("11110"), bits("01110"), bits("01100")]
        );
    }

    #[test]
    fn four_cycle_edges_really_are_cube_edges() {
        for n in [5usize, 7] {
            for parent in enumerate_chains(n) {
                let h = parent.star_count();
                for k in 1..h {
                    for j in 1..=h {
                        if j == k || j == k + 1 {
                            continue;
                        }
                        let fc = four_cycle(&parent, k, j);
                        for (a, b) in fc.edges() {
                            assert_eq!(a.diff_positions(&b).len(), 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn child_edge_selection_avoids_everything_it_must() {
        // The assertions inside select_child_edges carry the test.
        for h in (5..=17usize).step_by(2) {
            for p in 1..=h {
                let e = select_child_edges(h, p);
                assert_eq!(e.len(), h - 1);
            }
        }
        // A wrap-around instance, spelled out.
        assert_eq!(select_child_edges(5, 3), vec![4, 5, 1, 2]);
        assert_eq!(select_child_edges(5, 1), vec![3, 4, 5, 2]);
        assert_eq!(select_child_edges(5, 2), vec![3, 4, 5, 1]);
    }

    #[test]
    fn gluing_keeps_short_chains_and_shortens_boundary_ones() {
        // Interior length: the chain itself; the parent re-splits the first
        // nonempty interior valley at its first block.
        let arc = glue_arc(&chain("*0011*01*"), 4);
        assert_eq!(arc.tail, chain("*0011*01*"));
        assert_eq!(arc.head, chain("**01**01*"));
        assert_eq!(arc.k, 2);
        // Boundary length with empty first interior valley.
        let arc = glue_arc(&chain("**0011*"), 3);
        assert_eq!(arc.tail, chain("010011*"));
        assert_eq!(arc.head, chain("01*01**"));
        assert_eq!(arc.k, 1);
        // Boundary length with nonempty first interior valley.
        let arc = glue_arc(&chain("*0011**"), 3);
        assert_eq!(arc.tail.star_count(), 1);
        assert_eq!(arc.head.star_count(), 3);
        assert!(arc.head.children().contains(&arc.tail));
    }

    #[test]
    fn four_cycle_set_sizes_follow_the_chain_counts() {
        for (n, l) in [(5usize, 3usize), (7, 3), (7, 4), (9, 3), (9, 4), (9, 5)] {
            let count = enumerate_chains(n)
                .into_iter()
                .filter(|c| {
                    c.kind() == ChainKind::MinusMinus
                        && (3..=2 * l - 3).contains(&c.star_count())
                })
                .count();
            assert_eq!(build_four_cycles(n, l).len(), count);
        }
        assert!(build_four_cycles(7, 2).is_empty());
    }

    #[test]
    fn flippable_pair_decomposition_matches_the_worked_example() {
        let x = bits("0110011");
        let y = bits("0110101");
        let p = flippable_parts(&x, &y, 2).expect("pair is flippable");
        assert_eq!(p.d, 0);
        assert_eq!(p.u0, bits("011"));
        assert_eq!(p.us, vec![Bits::empty()]);
        assert!(p.vs.is_empty());
        assert_eq!(p.site, 6);
        assert!(flippable_parts(&y, &x, 2).is_none(), "pulls are one-way");
        assert_eq!(pull_successors(&x, 2), vec![y]);
    }

    #[test]
    fn six_cycle_matches_the_worked_example() {
        let x = bits("0110011");
        let y = bits("0110101");
        let c6 = six_cycle(&x, &y, 2);
        assert_eq!(c6.pattern_string(), "011***1");
        assert_eq!(c6.vertices[0], x);
        assert_eq!(c6.vertices[2], y);
    }
}
