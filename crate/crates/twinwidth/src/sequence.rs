//! Partitions of a vertex set and contraction sequences.
//!
//! A contraction sequence is an ordered list of part merges; the k-th step
//! (1-based) always creates the fresh part id `n + k - 1` in 0-based id
//! space, so sequence files are canonical and replayable. Replaying a
//! sequence yields the trigraph and the induced partition after any number
//! of steps.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::trigraph::{LoopConvention, Trigraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be nonempty")]
    EmptyPart,
    #[error("parts must be pairwise disjoint")]
    Overlap,
    #[error("parts must cover all vertices")]
    Incomplete,
    #[error("part id {0} is not live")]
    DeadPart(usize),
    #[error("cannot merge a part with itself (id {0})")]
    SamePart(usize),
    #[error("fresh id {0} is already taken or out of capacity")]
    BadFreshId(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("step {step}: part id {id} is not live")]
    DeadPart { step: usize, id: usize },
    #[error("step {step}: cannot contract a part with itself")]
    SamePart { step: usize },
    #[error("a sequence on {n} vertices allows at most {max} steps, got {got}")]
    TooManySteps { n: usize, max: usize, got: usize },
    #[error("sequence is for {expected} vertices but the graph has {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("operation requires a full sequence ({got} of {need} steps)")]
    NotFull { got: usize, need: usize },
    #[error("prefix length {k} exceeds the {len} steps of the sequence")]
    PrefixTooLong { k: usize, len: usize },
}

/// A labeled partition of the vertices `0..n` of a base graph. Part ids
/// live in the same id space as trigraph vertices.
#[derive(Clone, Debug)]
pub struct Partition {
    n: usize,
    cap: usize,
    parts: Vec<Option<Bitset>>,
    live: Bitset,
    vertex_part: Vec<usize>,
}

impl Partition {
    /// The partition into singletons; part `i` holds vertex `i`. Capacity
    /// leaves room for the fresh ids of a full contraction sequence.
    pub fn singletons(n: usize) -> Partition {
        assert!(n >= 1);
        let cap = 2 * n - 1;
        let mut parts = vec![None; cap];
        let mut live = Bitset::new(cap);
        for (v, slot) in parts.iter_mut().enumerate().take(n) {
            *slot = Some(Bitset::singleton(n, v));
            live.insert(v);
        }
        Partition {
            n,
            cap,
            parts,
            live,
            vertex_part: (0..n).collect(),
        }
    }

    /// Builds a partition from explicit part contents; part ids are
    /// assigned `0..k` in the given order.
    pub fn from_parts(n: usize, part_sets: Vec<Bitset>) -> Result<Partition, PartitionError> {
        let cap = (2 * n - 1).max(part_sets.len());
        let mut seen = Bitset::new(n);
        let mut parts = vec![None; cap];
        let mut live = Bitset::new(cap);
        let mut vertex_part = vec![usize::MAX; n];
        for (id, set) in part_sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(PartitionError::EmptyPart);
            }
            let mut sized = Bitset::new(n);
            for v in set.iter() {
                if v >= n {
                    return Err(PartitionError::Incomplete);
                }
                sized.insert(v);
                vertex_part[v] = id;
            }
            if sized.intersects(&seen) {
                return Err(PartitionError::Overlap);
            }
            seen.union_with(&sized);
            parts[id] = Some(sized);
            live.insert(id);
        }
        if seen.count() != n {
            return Err(PartitionError::Incomplete);
        }
        Ok(Partition {
            n,
            cap,
            parts,
            live,
            vertex_part,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn part_count(&self) -> usize {
        self.live.count()
    }

    pub fn live(&self) -> &Bitset {
        &self.live
    }

    pub fn live_parts(&self) -> impl Iterator<Item = usize> + '_ {
        self.live.iter()
    }

    pub fn part(&self, id: usize) -> Option<&Bitset> {
        self.parts.get(id).and_then(|p| p.as_ref())
    }

    pub fn part_of_vertex(&self, v: usize) -> usize {
        self.vertex_part[v]
    }

    pub fn is_singleton(&self, id: usize) -> bool {
        self.part(id).map(|s| s.count() == 1).unwrap_or(false)
    }

    pub fn merge(&mut self, a: usize, b: usize, new_id: usize) -> Result<(), PartitionError> {
        if a == b {
            return Err(PartitionError::SamePart(a));
        }
        for p in [a, b] {
            if p >= self.cap || !self.live.contains(p) {
                return Err(PartitionError::DeadPart(p));
            }
        }
        if new_id >= self.cap || self.live.contains(new_id) || self.parts[new_id].is_some() {
            return Err(PartitionError::BadFreshId(new_id));
        }
        let pa = self.parts[a].take().unwrap();
        let pb = self.parts[b].take().unwrap();
        let merged = pa.union(&pb);
        for v in merged.iter() {
            self.vertex_part[v] = new_id;
        }
        self.parts[new_id] = Some(merged);
        self.live.remove(a);
        self.live.remove(b);
        self.live.insert(new_id);
        Ok(())
    }
}

/// An ordered list of contractions on an `n`-vertex graph. Step k merges
/// two live parts into fresh part `n + k` (1-based k creates id `n+k` in
/// the 1-based file convention; internally ids are 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionSequence {
    n: usize,
    steps: Vec<(usize, usize)>,
}

impl ContractionSequence {
    /// Validates liveness of every referenced part. Steps are normalized
    /// so that the smaller id comes first.
    pub fn new<I>(n: usize, steps: I) -> Result<ContractionSequence, SequenceError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n >= 1);
        let steps: Vec<(usize, usize)> = steps
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        if steps.len() > n - 1 {
            return Err(SequenceError::TooManySteps {
                n,
                max: n - 1,
                got: steps.len(),
            });
        }
        let mut live = vec![false; n + steps.len()];
        live[..n].fill(true);
        for (i, &(u, v)) in steps.iter().enumerate() {
            let step = i + 1;
            if u == v {
                return Err(SequenceError::SamePart { step });
            }
            for id in [u, v] {
                if id >= n + i || !live[id] {
                    return Err(SequenceError::DeadPart { step, id });
                }
            }
            live[u] = false;
            live[v] = false;
            live[n + i] = true;
        }
        Ok(ContractionSequence { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Full sequences perform `n - 1` contractions, ending on one part.
    pub fn is_full(&self) -> bool {
        self.steps.len() == self.n - 1
    }

    /// The fresh part id created by 0-based step index `i`.
    pub fn fresh_id(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn prefix(&self, k: usize) -> Result<ContractionSequence, SequenceError> {
        if k > self.steps.len() {
            return Err(SequenceError::PrefixTooLong {
                k,
                len: self.steps.len(),
            });
        }
        Ok(ContractionSequence {
            n: self.n,
            steps: self.steps[..k].to_vec(),
        })
    }
}

/// Step-by-step replay of a sequence on a graph, tracking the trigraph and
/// the induced partition together.
pub struct Replay<'a> {
    seq: &'a ContractionSequence,
    trigraph: Trigraph,
    partition: Partition,
    done: usize,
}

impl<'a> Replay<'a> {
    pub fn new(
        g: &Graph,
        seq: &'a ContractionSequence,
        convention: LoopConvention,
    ) -> Result<Replay<'a>, SequenceError> {
        if seq.n() != g.n() {
            return Err(SequenceError::SizeMismatch {
                expected: seq.n(),
                got: g.n(),
            });
        }
        Ok(Replay {
            seq,
            trigraph: Trigraph::from_graph(g, convention),
            partition: Partition::singletons(g.n()),
            done: 0,
        })
    }

    pub fn trigraph(&self) -> &Trigraph {
        &self.trigraph
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn steps_done(&self) -> usize {
        self.done
    }

    pub fn remaining(&self) -> usize {
        self.seq.len() - self.done
    }

    /// Performs the next contraction; returns `(u, v, fresh)` or `None`
    /// once the sequence is exhausted. Sequences are validated at
    /// construction, so stepping cannot fail.
    pub fn step(&mut self) -> Option<(usize, usize, usize)> {
        if self.done == self.seq.len() {
            return None;
        }
        let (u, v) = self.seq.steps()[self.done];
        let fresh = self.seq.fresh_id(self.done);
        self.trigraph = self
            .trigraph
            .contract(u, v, fresh)
            .expect("validated sequence replays cleanly");
        self.partition
            .merge(u, v, fresh)
            .expect("validated sequence replays cleanly");
        self.done += 1;
        Some((u, v, fresh))
    }
}

/// Trigraph and induced partition after the first `k` contractions.
pub fn apply_sequence(
    g: &Graph,
    seq: &ContractionSequence,
    k: usize,
    convention: LoopConvention,
) -> Result<(Trigraph, Partition), SequenceError> {
    if k > seq.len() {
        return Err(SequenceError::PrefixTooLong { k, len: seq.len() });
    }
    let mut replay = Replay::new(g, seq, convention)?;
    while replay.steps_done() < k {
        replay.step();
    }
    Ok((replay.trigraph, replay.partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs::{demo7, demo7_sequence};
    use crate::trigraph::quotient;

    #[test]
    fn singleton_partition() {
        let p = Partition::singletons(4);
        assert_eq!(p.part_count(), 4);
        assert!(p.is_singleton(2));
        assert_eq!(p.part_of_vertex(3), 3);
    }

    #[test]
    fn from_parts_validates() {
        let overlap = vec![
            [0, 1].into_iter().collect::<Bitset>(),
            [1, 2].into_iter().collect(),
        ];
        assert_eq!(
            Partition::from_parts(3, overlap).unwrap_err(),
            PartitionError::Overlap
        );
        let incomplete = vec![[0, 1].into_iter().collect::<Bitset>()];
        assert_eq!(
            Partition::from_parts(3, incomplete).unwrap_err(),
            PartitionError::Incomplete
        );
    }

    #[test]
    fn sequence_validation() {
        assert!(ContractionSequence::new(3, [(0, 1), (2, 3)]).is_ok());
        assert_eq!(
            ContractionSequence::new(3, [(0, 1), (0, 3)]).unwrap_err(),
            SequenceError::DeadPart { step: 2, id: 0 }
        );
        assert_eq!(
            ContractionSequence::new(2, [(0, 0)]).unwrap_err(),
            SequenceError::SamePart { step: 1 }
        );
        assert_eq!(
            ContractionSequence::new(2, [(0, 1), (1, 2)]).unwrap_err(),
            SequenceError::TooManySteps {
                n: 2,
                max: 1,
                got: 2
            }
        );
    }

    #[test]
    fn apply_prefixes_of_demo7() {
        let g = demo7();
        let s = demo7_sequence();
        assert!(s.is_full());

        let (t0, p0) = apply_sequence(&g, &s, 0, LoopConvention::WithoutLoops).unwrap();
        assert_eq!(t0.vertex_count(), 7);
        assert_eq!(p0.part_count(), 7);

        // after two steps the trigraph matches the quotient by {ad}{b}{c}{ef}{g}
        let (t2, p2) = apply_sequence(&g, &s, 2, LoopConvention::WithoutLoops).unwrap();
        assert_eq!(t2.vertex_count(), 5);
        let q = quotient(&g, &p2, LoopConvention::WithoutLoops);
        for u in p2.live_parts() {
            for v in p2.live_parts() {
                if u != v {
                    assert_eq!(t2.is_black(u, v), q.is_black(u, v));
                    assert_eq!(t2.is_red(u, v), q.is_red(u, v));
                }
            }
        }
        assert!(t2.is_red(8, 7) && t2.is_red(8, 6));

        let (t_full, p_full) =
            apply_sequence(&g, &s, s.len(), LoopConvention::WithoutLoops).unwrap();
        assert_eq!(t_full.vertex_count(), 1);
        assert_eq!(p_full.part_count(), 1);
    }

    #[test]
    fn replay_rejects_size_mismatch() {
        let g = demo7();
        let s = ContractionSequence::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            Replay::new(&g, &s, LoopConvention::WithoutLoops),
            Err(SequenceError::SizeMismatch { .. })
        ));
    }
}
