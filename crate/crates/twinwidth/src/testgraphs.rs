//! Shared graph fixtures and enumerators used by the unit tests.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::sequence::{ContractionSequence, Partition};

/// 7-vertex graph with a known width-2 contraction sequence, used as a
/// worked example across the crate. Vertices a..g are 0..6.
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

/// The witnessing 2-sequence for [`demo7`]: ef, ad, b+ef, ad+g, c+bef,
/// then the final merge.
pub fn demo7_sequence() -> ContractionSequence {
    ContractionSequence::new(7, [(4, 5), (0, 3), (1, 7), (8, 6), (2, 9), (10, 11)]).unwrap()
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

/// All set partitions of `0..n`, as `Partition` values.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
        if v == n {
            let sets: Vec<Bitset> = blocks
                .iter()
                .map(|b| {
                    let mut s = Bitset::new(n);
                    for &x in b {
                        s.insert(x);
                    }
                    s
                })
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

/// All full contraction sequences on `n` vertices (grows like a double
/// factorial; keep `n` tiny).
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerator_counts() {
        assert_eq!(all_graphs(3).len(), 8);
        assert_eq!(all_graphs(4).len(), 64);
        // Bell numbers 1, 2, 5, 15, 52
        assert_eq!(all_partitions(1).len(), 1);
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(5).len(), 52);
        // sequences: products of C(i, 2)
        assert_eq!(all_full_sequences(3).len(), 3);
        assert_eq!(all_full_sequences(4).len(), 18);
    }

    #[test]
    fn demo_sequence_is_full() {
        assert!(demo7_sequence().is_full());
        assert_eq!(demo7().m(), 13);
    }
}
