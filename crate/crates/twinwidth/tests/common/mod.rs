//! Shared fixtures and independent oracles for the integration suites.

#![allow(dead_code)]

use std::collections::HashSet;
use twinwidth::bitset::Bitset;
use twinwidth::decomposition::BranchDecomposition;
use twinwidth::graph::Graph;
use twinwidth::sequence::{ContractionSequence, Partition};

/// 7-vertex graph with a known width-2 contraction sequence (a..g = 0..6).
pub fn demo7() -> Graph {
    Graph::from_edges(
        7,
        [
            (0, 1),
            (0, 3),
            (0, 5),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 6),
            (4, 6),
            (5, 6),
        ],
    )
    .unwrap()
}

/// The witnessing 2-sequence for [`demo7`].
pub fn demo7_sequence() -> ContractionSequence {
    ContractionSequence::new(7, [(4, 5), (0, 3), (1, 7), (8, 6), (2, 9), (10, 11)]).unwrap()
}

pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .unwrap()
}

/// All graphs on `n` vertices, one per subset of the possible edges.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    (0u64..(1 << pairs.len()))
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

/// All set partitions of `0..n`.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
        if v == n {
            let sets: Vec<Bitset> = blocks
                .iter()
                .map(|b| Bitset::from_indices(n, b.iter().copied()))
                .collect();
            out.push(Partition::from_parts(n, sets).unwrap());
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(v);
            rec(v + 1, n, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![v]);
        rec(v + 1, n, blocks, out);
        blocks.pop();
    }
    rec(0, n, &mut blocks, &mut out);
    out
}

/// All full contraction sequences on `n` vertices. Keep `n` tiny.
pub fn all_full_sequences(n: usize) -> Vec<ContractionSequence> {
    let mut out = Vec::new();
    let mut live: Vec<usize> = (0..n).collect();
    let mut steps = Vec::new();
    fn rec(
        n: usize,
        live: &mut Vec<usize>,
        steps: &mut Vec<(usize, usize)>,
        out: &mut Vec<ContractionSequence>,
    ) {
        if live.len() == 1 {
            out.push(ContractionSequence::new(n, steps.clone()).unwrap());
            return;
        }
        let fresh = n + steps.len();
        for i in 0..live.len() {
            for j in (i + 1)..live.len() {
                let (u, v) = (live[i], live[j]);
                live.remove(j);
                live.remove(i);
                live.push(fresh);
                steps.push((u, v));
                rec(n, live, steps, out);
                steps.pop();
                live.pop();
                live.insert(i, u);
                live.insert(j, v);
            }
        }
    }
    rec(n, &mut live, &mut steps, &mut out);
    out
}

/// Independent boolean-width oracle for one cut: enumerate all subsets of
/// the side `x` and count distinct neighborhoods on the other side.
pub fn brute_force_cut_width(g: &Graph, x: &Bitset) -> f64 {
    let n = g.n();
    let mut y = Bitset::full(n);
    y.difference_with(x);
    let xs: Vec<usize> = x.iter().collect();
    assert!(xs.len() <= 20, "oracle is exponential in the cut side");
    let mut seen = HashSet::new();
    for mask in 0u64..(1 << xs.len()) {
        let mut nb = Bitset::new(n);
        for (i, &u) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                nb.union_with(g.neighbors(u));
            }
        }
        nb.intersect_with(&y);
        seen.insert(nb);
    }
    (seen.len() as f64).log2()
}

/// Brute-force boolean-width of a whole decomposition.
pub fn brute_force_bd_width(g: &Graph, t: &BranchDecomposition) -> f64 {
    let sets = t.leaf_sets(g.n());
    let mut best = 0f64;
    for (node, set) in sets.iter().enumerate() {
        if node == t.root() {
            continue;
        }
        best = best.max(brute_force_cut_width(g, set));
    }
    best
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
