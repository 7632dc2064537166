//! Joining the factor's cycles into one verified Hamilton cycle.
//!
//! The 4-cycle set merges every short cycle into a cycle of full span. The
//! remaining long cycles are joined through 6-cycles: an auxiliary multigraph
//! gets one node per long cycle and one edge per flippable pair of top-class
//! vertices, a spanning tree is picked by breadth-first search from the cycle
//! through the special vertex, and the symmetric difference of the factor
//! with all chosen 4- and 6-cycles is the Hamilton cycle.

use crate::factor::{
    binom, is_chain_top_class, is_right_empty, is_right_full, long_cycle_successor, Factor,
};
use crate::flipping::{
    build_four_cycles, pull_successors, six_cycle, tree_of, vertex_of, SixCycle,
};
use crate::words::{pull, pull_parts, pull_sites, Bits};
use std::collections::{HashMap, HashSet, VecDeque};

/// The distinguished top-class vertex `1^{2l-3} 0 (01)^{m-l+1} 1`: its tree
/// is the spine plus a star centered at the root's rightmost child. The
/// breadth-first search of the joining step starts at its cycle.
pub fn special_vertex(n: usize, l: usize) -> Bits {
    assert!(n % 2 == 1 && n >= 3, "dimension must be odd, got {n}");
    let m = (n - 1) / 2;
    assert!((2..=m + 1).contains(&l), "bad half-width {l} for n={n}");
    let mut x = Bits::empty();
    for _ in 0..2 * l - 3 {
        x = x.push(1);
    }
    x = x.push(0);
    for _ in 0..m + 1 - l {
        x = x.push(0).push(1);
    }
    x = x.push(1);
    assert_eq!(x.len(), n);
    assert!(is_chain_top_class(&x, l));
    x
}

/// The special vertex's tree word (spine prefix included).
pub fn special_tree(n: usize, l: usize) -> Bits {
    tree_of(&special_vertex(n, l), l)
}

/// One auxiliary edge: the long cycles through `x` and `y` (as node indices
/// `a` and `b`) can be merged through the 6-cycle of the flippable pair.
#[derive(Clone, Debug)]
pub struct AuxEdge {
    pub a: usize,
    pub b: usize,
    pub x: Bits,
    pub y: Bits,
}

/// Multigraph on the long cycles of a factor; `edges` sorted by `(x, y)`.
pub struct AuxGraph {
    /// Factor cycle indices of the long cycles, ascending; node `i` of the
    /// graph is the long cycle `longs[i]`.
    pub longs: Vec<usize>,
    pub edges: Vec<AuxEdge>,
    /// Node whose cycle contains the special vertex.
    pub root: usize,
}

/// Builds the auxiliary multigraph: for every top-class vertex `x` and every
/// pull-successor `y` of its tree, an edge between the cycles through `x`
/// and `y`.
pub fn build_aux_graph(factor: &Factor) -> AuxGraph {
    let (n, l) = (factor.n, factor.l);
    let m = (n - 1) / 2;
    let longs: Vec<usize> = factor
        .cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_long(l))
        .map(|(i, _)| i)
        .collect();
    let node_of: HashMap<usize, usize> =
        longs.iter().enumerate().map(|(node, &cid)| (cid, node)).collect();
    let mut edges = Vec::new();
    for w in 0..(1u64 << n) {
        let x = Bits::from_raw(n, w);
        if x.level() != m + l - 1 || !is_chain_top_class(&x, l) {
            continue;
        }
        let a = *node_of.get(&factor.cycle_of(&x)).expect("top-class vertices lie on long cycles");
        for y in pull_successors(&x, l) {
            let b = *node_of
                .get(&factor.cycle_of(&y))
                .expect("pulled top-class vertices lie on long cycles");
            edges.push(AuxEdge { a, b, x, y });
        }
    }
    edges.sort_by(|p, q| (p.x, p.y).cmp(&(q.x, q.y)));
    let root = node_of[&factor.cycle_of(&special_vertex(n, l))];
    AuxGraph { longs, edges, root }
}

/// Picks the joining 6-cycles: a breadth-first spanning tree of the
/// auxiliary graph rooted at the special vertex's cycle, scanning each
/// node's incident edges in `(x, y)` order so parallel edges resolve to the
/// lexicographically smallest pair. Panics if the graph is disconnected
/// (the construction would be wrong, not the input).
pub fn spanning_six_cycles(aux: &AuxGraph, l: usize) -> Vec<SixCycle> {
    let nodes = aux.longs.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (i, e) in aux.edges.iter().enumerate() {
        incident[e.a].push(i);
        if e.b != e.a {
            incident[e.b].push(i);
        }
    }
    let mut visited = vec![false; nodes];
    let mut chosen = Vec::new();
    let mut queue = VecDeque::new();
    visited[aux.root] = true;
    queue.push_back(aux.root);
    while let Some(u) = queue.pop_front() {
        for &ei in &incident[u] {
            let e = &aux.edges[ei];
            let v = if e.a == u { e.b } else { e.a };
            if !visited[v] {
                visited[v] = true;
                chosen.push(ei);
                queue.push_back(v);
            }
        }
    }
    assert!(visited.iter().all(|&b| b), "auxiliary graph must be connected");
    assert_eq!(chosen.len(), nodes - 1);
    let six: Vec<SixCycle> =
        chosen.iter().map(|&ei| six_cycle(&aux.edges[ei].x, &aux.edges[ei].y, l)).collect();
    let mut used: HashSet<(u64, u64)> = HashSet::new();
    for c in &six {
        for (a, b) in c.edges() {
            let key = (a.raw().min(b.raw()), a.raw().max(b.raw()));
            assert!(used.insert(key), "chosen 6-cycles must be pairwise edge-disjoint");
        }
    }
    six
}

/// Builds the Hamilton cycle of the middle `2l` levels of the `n`-cube:
/// the symmetric difference of the factor with the 4-cycle set and the
/// spanning 6-cycles, returned as a cyclic vertex sequence starting at the
/// lexicographically smallest vertex, travelling towards its smaller
/// neighbor. The result is self-verified before it is returned.
pub fn hamilton(n: usize, l: usize) -> Vec<Bits> {
    let factor = Factor::build(n, l);
    let four = build_four_cycles(n, l);
    let aux = build_aux_graph(&factor);
    let six = spanning_six_cycles(&aux, l);
    let norm = |a: &Bits, b: &Bits| (a.raw().min(b.raw()), a.raw().max(b.raw()));
    let mut edges: Vec<(u64, u64)> =
        Vec::with_capacity(factor.edges.len() + 4 * four.len() + 6 * six.len());
    for e in &factor.edges {
        edges.push(norm(&e.lower, &e.upper));
    }
    for fc in &four {
        for (a, b) in fc.edges() {
            edges.push(norm(&a, &b));
        }
    }
    for sc in &six {
        for (a, b) in sc.edges() {
            edges.push(norm(&a, &b));
        }
    }
    edges.sort_unstable();
    // Symmetric difference by parity: every edge appears once (kept) or
    // twice (cancelled); a third copy would mean two flip cycles collided.
    let mut kept: Vec<(u64, u64)> = Vec::new();
    let mut i = 0;
    while i < edges.len() {
        if i + 1 < edges.len() && edges[i + 1] == edges[i] {
            assert!(
                i + 2 >= edges.len() || edges[i + 2] != edges[i],
                "an edge was toggled more than twice"
            );
            i += 2;
        } else {
            kept.push(edges[i]);
            i += 1;
        }
    }
    let mut adj: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(a, b) in &kept {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let m = (n - 1) / 2;
    let expected: usize = (m + 1 - l..=m + l).map(|k| binom(n, k) as usize).sum();
    assert_eq!(adj.len(), expected, "joined graph must touch every window vertex");
    for nb in adj.values() {
        assert_eq!(nb.len(), 2, "joined graph must be 2-regular");
    }
    let start = *adj.keys().min().unwrap();
    let mut seq = Vec::with_capacity(expected);
    let mut prev = u64::MAX;
    let mut cur = start;
    loop {
        seq.push(Bits::from_raw(n, cur));
        let nb = &adj[&cur];
        let next =
            if prev == u64::MAX { nb[0].min(nb[1]) } else if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
        if cur == start {
            break;
        }
    }
    if let Err(why) = verify_hamilton(&seq, n, l) {
        panic!("constructed cycle failed verification: {why}");
    }
    seq
}

/// Checks that `seq` is a Hamilton cycle of the middle `2l` levels of the
/// `n`-cube: full count, one appearance per vertex, levels inside the
/// window, and cyclically consecutive vertices at Hamming distance 1. The
/// error carries the first violation.
pub fn verify_hamilton(seq: &[Bits], n: usize, l: usize) -> Result<(), String> {
    if n % 2 == 0 || n < 3 {
        return Err(format!("dimension must be odd and at least 3, got {n}"));
    }
    let m = (n - 1) / 2;
    if !(2..=m + 1).contains(&l) {
        return Err(format!("half-width {l} out of range 2..={} for n={n}", m + 1));
    }
    let expected: usize = (m + 1 - l..=m + l).map(|k| binom(n, k) as usize).sum();
    if seq.len() != expected {
        return Err(format!("expected {expected} vertices, got {}", seq.len()));
    }
    let mut seen: HashSet<u64> = HashSet::with_capacity(seq.len());
    for (idx, v) in seq.iter().enumerate() {
        if v.len() != n {
            return Err(format!("vertex {idx} has length {}, want {n}", v.len()));
        }
        let lv = v.level();
        if lv < m + 1 - l || lv > m + l {
            return Err(format!(
                "vertex {idx} ({v}) lies on level {lv}, outside {}..={}",
                m + 1 - l,
                m + l
            ));
        }
        if !seen.insert(v.raw()) {
            return Err(format!("vertex {idx} ({v}) appears more than once"));
        }
    }
    for i in 0..seq.len() {
        let a = &seq[i];
        let b = &seq[(i + 1) % seq.len()];
        let d = a.diff_positions(b).len();
        if d != 1 {
            return Err(format!("step {i}: {a} -> {b} flips {d} bits, want 1"));
        }
    }
    Ok(())
}

/// One step of the canonicalization walk on tree words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Replace the tree by its light-rotation image (the tree of the next
    /// top-class vertex along the long cycle); only valid on right-empty
    /// trees.
    LightRotation,
    /// Pull at the given site.
    Pull(usize),
}

/// Applies one move to a tree word.
pub fn apply_move(t: &Bits, l: usize, mv: Move) -> Bits {
    match mv {
        Move::LightRotation => {
            let x = vertex_of(t, l);
            assert!(is_right_empty(&x, l), "light rotations act on right-empty trees");
            tree_of(&long_cycle_successor(&x, l), l)
        }
        Move::Pull(site) => pull(t, site),
    }
}

/// An explicit walk witnessing connectivity of the auxiliary graph: a move
/// sequence (pulls and light rotations) carrying the tree `t` to the special
/// tree. Rotations stay on one long cycle; pulls cross auxiliary edges.
///
/// Dispatch per step: a right-full tree flattens its rightmost subtree into
/// a star by pulls below the subtree root; a right-empty tree takes a light
/// rotation; any other tree pulls its rightmost leaf up towards the root.
pub fn canonicalize_to_s(t: &Bits, l: usize) -> Vec<Move> {
    let n = t.len() + 3 - 2 * l;
    let s = special_tree(n, l);
    let mut cur = *t;
    let _ = vertex_of(&cur, l); // validates the shape
    let bound = 20 * t.len() * t.len() + 100;
    let mut moves = Vec::new();
    while cur != s {
        assert!(moves.len() <= bound, "canonicalization exceeded its move bound");
        let x = vertex_of(&cur, l);
        let mv = if is_right_full(&x, l) {
            let site = pull_sites(&cur)
                .into_iter()
                .find(|&a| pull_parts(&cur, a).d >= 1)
                .expect("a right-full tree other than s has a leaf below depth one");
            Move::Pull(site)
        } else if is_right_empty(&x, l) {
            Move::LightRotation
        } else {
            let site =
                *pull_sites(&cur).last().expect("a tree that is not right-empty has a pull site");
            Move::Pull(site)
        };
        cur = apply_move(&cur, l, mv);
        moves.push(mv);
    }
    moves
}
