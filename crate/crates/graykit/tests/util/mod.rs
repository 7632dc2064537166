//! Shared checkers for the integration suites: band paths of a factor,
//! flipping-cycle contracts, and cycle counting on edge sets.
//!
//! Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use graykit::factor::{is_chain_top_class, Factor};
use graykit::flipping::{build_four_cycles, pull_successors, six_cycle};
use graykit::words::Bits;

pub fn norm(a: &Bits, b: &Bits) -> (u64, u64) {
    let (x, y) = (a.raw(), b.raw());
    (x.min(y), x.max(y))
}

pub fn toggle(set: &mut HashSet<(u64, u64)>, e: (u64, u64)) {
    if !set.remove(&e) {
        set.insert(e);
    }
}

/// All vertices of Q_n whose trees index the long cycles: the top class of
/// the length-(2l-3) chains, sitting one level below the window top.
pub fn top_class(n: usize, l: usize) -> Vec<Bits> {
    let m = (n - 1) / 2;
    (0..1u64 << n)
        .map(|raw| Bits::from_raw(n, raw))
        .filter(|x| x.level() == m + l - 1 && is_chain_top_class(x, l))
        .collect()
}

/// Maximal paths formed by the factor edges between the top two window
/// levels, keyed by the raw value of their top-class start vertex.
pub fn band_paths(f: &Factor) -> HashMap<u64, Vec<Bits>> {
    let m = (f.n - 1) / 2;
    let top = m + f.l - 1;
    let mut adj: HashMap<u64, Vec<Bits>> = HashMap::new();
    for e in &f.edges {
        if e.lower.level() == top {
            adj.entry(e.lower.raw()).or_default().push(e.upper);
            adj.entry(e.upper.raw()).or_default().push(e.lower);
        }
    }
    let mut out = HashMap::new();
    for x in top_class(f.n, f.l) {
        let ns = &adj[&x.raw()];
        assert_eq!(ns.len(), 1, "path start {x} must have one in-band neighbor");
        let mut path = vec![x, ns[0]];
        loop {
            let cur = path[path.len() - 1];
            let prev = path[path.len() - 2];
            let next: Vec<&Bits> =
                adj[&cur.raw()].iter().filter(|v| v.raw() != prev.raw()).collect();
            match next.len() {
                0 => break,
                1 => path.push(*next[0]),
                k => panic!("band vertex {cur} has {} neighbors", k + 1),
            }
        }
        out.insert(x.raw(), path);
    }
    out
}

fn path_edges(path: &[Bits]) -> Vec<(u64, u64)> {
    path.windows(2).map(|w| norm(&w[0], &w[1])).collect()
}

/// Walks the degree-<=2 edge set from `start` (which must have degree 1)
/// and returns the visited vertices in order, ending at the far endpoint.
fn walk_path(edges: &HashSet<(u64, u64)>, start: u64) -> Vec<u64> {
    let mut adj: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    assert_eq!(adj[&start].len(), 1, "walk start must have degree 1");
    let mut path = vec![start, adj[&start][0]];
    loop {
        let cur = path[path.len() - 1];
        let prev = path[path.len() - 2];
        let next: Vec<u64> = adj[&cur].iter().copied().filter(|&v| v != prev).collect();
        match next.len() {
            0 => break,
            1 => path.push(next[0]),
            _ => panic!("walk hit a branching vertex"),
        }
    }
    path
}

/// Checks the intersection and rerouting contract of every flipping 6-cycle
/// of the (n, l) factor against the band paths it flips:
/// two non-incident shared edges with the start path, one with the target
/// path, and a symmetric difference that swaps the two path ends. Also
/// checks pairwise edge-disjointness and, per start vertex, that the shared
/// edge pairs of different 6-cycles occupy disjoint stretches of the path.
pub fn check_six_cycle_contracts(n: usize, l: usize) {
    let f = Factor::build(n, l);
    let paths = band_paths(&f);
    let mut all_edges: HashSet<(u64, u64)> = HashSet::new();
    for x in top_class(n, l) {
        let px = &paths[&x.raw()];
        let pxe = path_edges(px);
        let mut spans: Vec<(usize, usize)> = Vec::new();
        for y in pull_successors(&x, l) {
            let c6 = six_cycle(&x, &y, l);
            let c6e: HashSet<(u64, u64)> =
                c6.edges().iter().map(|(a, b)| norm(a, b)).collect();
            for &e in &c6e {
                assert!(all_edges.insert(e), "6-cycles must be pairwise edge-disjoint");
            }

            let shared_x: Vec<usize> =
                (0..pxe.len()).filter(|&i| c6e.contains(&pxe[i])).collect();
            assert_eq!(shared_x.len(), 2, "({x},{y}): 2 shared edges on the start path");
            assert!(
                shared_x[1] - shared_x[0] >= 2,
                "({x},{y}): shared edges must not touch"
            );
            spans.push((shared_x[0], shared_x[1]));

            let py = &paths[&y.raw()];
            let pye = path_edges(py);
            let shared_y: Vec<usize> =
                (0..pye.len()).filter(|&i| c6e.contains(&pye[i])).collect();
            assert_eq!(shared_y.len(), 1, "({x},{y}): 1 shared edge on the target path");

            let mut flipped: HashSet<(u64, u64)> = pxe.iter().copied().collect();
            for e in pye.iter().copied() {
                assert!(flipped.insert(e), "the two paths are edge-disjoint");
            }
            for &e in &c6e {
                toggle(&mut flipped, e);
            }
            let from_x = walk_path(&flipped, x.raw());
            let from_y = walk_path(&flipped, y.raw());
            assert_eq!(*from_x.last().unwrap(), py.last().unwrap().raw());
            assert_eq!(*from_y.last().unwrap(), px.last().unwrap().raw());
            let mut got: Vec<u64> = from_x.iter().chain(&from_y).copied().collect();
            let mut want: Vec<u64> =
                px.iter().chain(py.iter()).map(|v| v.raw()).collect();
            got.sort_unstable();
            want.sort_unstable();
            assert_eq!(got, want, "rerouting must preserve the vertex set");
        }
        spans.sort_unstable();
        for w in spans.windows(2) {
            assert!(
                w[0].1 < w[1].0,
                "edge pairs of different 6-cycles must not interleave on one path"
            );
        }
    }
}

/// Checks that the selected flipping 4-cycles are pairwise edge-disjoint and
/// stay strictly below the top window level.
pub fn check_four_cycles_disjoint(n: usize, l: usize) {
    let m = (n - 1) / 2;
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    for fc in build_four_cycles(n, l) {
        for (a, b) in fc.edges() {
            assert!(seen.insert(norm(&a, &b)), "4-cycles must be pairwise edge-disjoint");
            assert!(
                a.level().max(b.level()) <= m + l - 1,
                "4-cycles must avoid the top window level"
            );
        }
    }
}

/// Number of cycles in an edge set in which every vertex has degree 2.
pub fn count_cycles(edges: &HashSet<(u64, u64)>) -> usize {
    let mut adj: HashMap<u64, Vec<u64>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen: HashSet<u64> = HashSet::new();
    let mut cycles = 0;
    for &v in adj.keys() {
        if seen.contains(&v) {
            continue;
        }
        cycles += 1;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if !seen.insert(u) {
                continue;
            }
            assert_eq!(adj[&u].len(), 2, "cycle-count input must be 2-regular");
            stack.extend(&adj[&u]);
        }
    }
    cycles
}
