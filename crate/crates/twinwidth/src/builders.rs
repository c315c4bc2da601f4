//! Sequence builders: exhaustive exact search over partition states,
//! a greedy heuristic, the bounded-merged-degree builder, and partial
//! sequences toward a total-degree target.

use crate::graph::Graph;
use crate::sequence::{ContractionSequence, Partition};
use crate::trigraph::Trigraph;
use crate::widths::{measure_value, sequence_width, Measure};
use std::collections::HashMap;
use thiserror::Error;

/// Exact search keys partitions as sorted mask vectors, so the vertex
/// count is limited by the mask width. Budgets guard the state space well
/// before this bound matters.
pub const EXACT_MAX_VERTICES: usize = 16;

pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("exact search supports at most {max} vertices, got {got}")]
    TooLarge { got: usize, max: usize },
}

#[derive(Clone, Debug)]
pub struct BuildReport {
    pub sequence: ContractionSequence,
    /// Width of `sequence` under the requested measure, re-verified by
    /// replay.
    pub achieved_width: usize,
    /// Partition states evaluated (exact mode only).
    pub nodes_explored: usize,
    /// False when a budget ran out and the result is only an upper bound.
    pub complete: bool,
}

/// Rule restricting which pairs a builder may contract, as a function of
/// the current trigraph's total graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairPredicate {
    AnyPair,
    /// False twins (equal total neighborhoods) or adjacent in the total
    /// graph. Contracting such a pair is a vertex deletion or a minor, so
    /// it preserves planarity in particular.
    TwinsOrAdjacent,
}

impl PairPredicate {
    pub fn admissible(&self, t: &Trigraph, u: usize, v: usize) -> bool {
        match self {
            PairPredicate::AnyPair => true,
            PairPredicate::TwinsOrAdjacent => {
                let nu = t.total_neighbors(u);
                if nu.contains(v) {
                    return true;
                }
                nu == t.total_neighbors(v)
            }
        }
    }
}

/// canonical partition -> (best achievable width, merge indices used)
type ExactMemo = HashMap<Vec<u32>, (usize, Option<(usize, usize)>)>;

struct ExactSearch {
    adj_masks: Vec<u32>,
    measure: Measure,
    memo: ExactMemo,
    nodes: usize,
    budget: usize,
}

impl ExactSearch {
    fn pair_class(&self, a: u32, b: u32) -> (bool, bool) {
        // (black, red) between two parts given as vertex masks
        let bsize = b.count_ones() as usize;
        let mut edges = 0usize;
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            edges += (self.adj_masks[v] & b).count_ones() as usize;
        }
        let want = (a.count_ones() as usize) * bsize;
        (edges == want, edges > 0 && edges < want)
    }

    fn not_homogeneous_to(&self, a: u32, b: u32) -> bool {
        // some vertex of b sees part of a but not all of it
        let mut rest = b;
        while rest != 0 {
            let y = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let seen = self.adj_masks[y] & a;
            if seen != 0 && seen != a {
                return true;
            }
        }
        false
    }

    fn state_width(&self, parts: &[u32]) -> usize {
        let k = parts.len();
        let mut red = vec![0u32; k]; // red adjacency between part indices
        for i in 0..k {
            for j in (i + 1)..k {
                let (_, is_red) = self.pair_class(parts[i], parts[j]);
                if is_red {
                    red[i] |= 1 << j;
                    red[j] |= 1 << i;
                }
            }
        }
        match self.measure {
            Measure::Degree => (0..k)
                .map(|i| red[i].count_ones() as usize)
                .max()
                .unwrap_or(0),
            Measure::Oriented => {
                let mut best = 0;
                for i in 0..k {
                    let mut deg = 0;
                    let mut rest = red[i];
                    while rest != 0 {
                        let j = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        if self.not_homogeneous_to(parts[i], parts[j]) {
                            deg += 1;
                        }
                    }
                    best = best.max(deg);
                }
                best
            }
            Measure::Component => {
                let mut seen = 0u32;
                let mut best = 0;
                for start in 0..k {
                    if seen >> start & 1 == 1 {
                        continue;
                    }
                    let mut comp = 1u32 << start;
                    loop {
                        let mut grown = comp;
                        let mut rest = comp;
                        while rest != 0 {
                            let i = rest.trailing_zeros() as usize;
                            rest &= rest - 1;
                            grown |= red[i];
                        }
                        if grown == comp {
                            break;
                        }
                        comp = grown;
                    }
                    seen |= comp;
                    best = best.max(comp.count_ones() as usize);
                }
                best
            }
            Measure::Total => {
                let pairs: usize = (0..k).map(|i| red[i].count_ones() as usize).sum::<usize>() / 2;
                let loops = parts.iter().filter(|p| p.count_ones() > 1).count();
                pairs + loops
            }
        }
    }

    /// Best achievable width from `state` to the single-part state,
    /// including the width of `state` itself. `None` when the node budget
    /// runs out.
    fn solve(&mut self, state: &Vec<u32>) -> Option<usize> {
        if let Some(&(w, _)) = self.memo.get(state) {
            return Some(w);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let here = self.state_width(state);
        if state.len() == 1 {
            self.memo.insert(state.clone(), (here, None));
            return Some(here);
        }
        let mut children = Vec::with_capacity(state.len() * (state.len() - 1) / 2);
        for i in 0..state.len() {
            for j in (i + 1)..state.len() {
                let mut child: Vec<u32> = Vec::with_capacity(state.len() - 1);
                let merged = state[i] | state[j];
                for (idx, &p) in state.iter().enumerate() {
                    if idx != i && idx != j {
                        child.push(p);
                    }
                }
                let pos = child.partition_point(|&p| p < merged);
                child.insert(pos, merged);
                let w = self.state_width(&child);
                children.push((w, (i, j), child));
            }
        }
        children.sort_by_key(|a| (a.0, a.1));
        let mut best = usize::MAX;
        let mut best_merge = None;
        for (child_width, merge, child) in children {
            // the completion through this child is at least child_width
            if child_width >= best {
                break;
            }
            let f = self.solve(&child)?;
            if f < best {
                best = f;
                best_merge = Some(merge);
            }
        }
        let f = here.max(best);
        self.memo.insert(state.clone(), (f, best_merge));
        Some(f)
    }
}

/// Minimum width over all contraction sequences, by memoized depth-first
/// search over canonical partition encodings with branch-and-bound on the
/// per-state width. When the node budget runs out the greedy result is
/// returned instead, flagged incomplete.
pub fn exact_width(g: &Graph, m: Measure, node_budget: usize) -> Result<BuildReport, BuildError> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(BuildError::TooLarge {
            got: n,
            max: EXACT_MAX_VERTICES,
        });
    }
    let incumbent = greedy_sequence(g, m);
    if n == 1 {
        return Ok(BuildReport {
            nodes_explored: 1,
            ..incumbent
        });
    }
    let adj_masks: Vec<u32> = (0..n)
        .map(|u| {
            let mut mask = 0u32;
            for v in g.neighbors(u).iter() {
                mask |= 1 << v;
            }
            mask
        })
        .collect();
    let mut search = ExactSearch {
        adj_masks,
        measure: m,
        memo: HashMap::new(),
        nodes: 0,
        budget: node_budget,
    };
    let start: Vec<u32> = (0..n).map(|v| 1u32 << v).collect();
    match search.solve(&start) {
        None => Ok(BuildReport {
            nodes_explored: search.nodes,
            complete: false,
            ..incumbent
        }),
        Some(width) => {
            let mut mask_to_id: HashMap<u32, usize> = (0..n).map(|v| (1u32 << v, v)).collect();
            let mut state = start;
            let mut steps = Vec::with_capacity(n - 1);
            while state.len() > 1 {
                let (_, merge) = search.memo[&state];
                let (i, j) = merge.expect("non-terminal state has a best merge");
                let (ma, mb) = (state[i], state[j]);
                steps.push((mask_to_id[&ma], mask_to_id[&mb]));
                let merged = ma | mb;
                mask_to_id.insert(merged, n + steps.len() - 1);
                let mut next: Vec<u32> = state
                    .iter()
                    .copied()
                    .filter(|&p| p != ma && p != mb)
                    .collect();
                let pos = next.partition_point(|&p| p < merged);
                next.insert(pos, merged);
                state = next;
            }
            let sequence = ContractionSequence::new(n, steps).expect("search emits live merges");
            let achieved = sequence_width(g, &sequence, m).expect("search sequence replays");
            debug_assert_eq!(achieved, width);
            Ok(BuildReport {
                sequence,
                achieved_width: achieved,
                nodes_explored: search.nodes,
                complete: true,
            })
        }
    }
}

/// Full sequence built by always contracting the live pair whose
/// contraction minimizes the immediate step width, ties broken by the
/// lexicographically smallest id pair.
pub fn greedy_sequence(g: &Graph, m: Measure) -> BuildReport {
    let n = g.n();
    let mut tri = Trigraph::from_graph(g, m.convention());
    let mut part = Partition::singletons(n);
    let mut steps = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let fresh = n + k;
        let live: Vec<usize> = tri.live().iter().collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &u) in live.iter().enumerate() {
            for &v in live.iter().skip(i + 1) {
                let cand = tri.contract(u, v, fresh).expect("live pair");
                let value = match m {
                    Measure::Oriented => {
                        let mut p = part.clone();
                        p.merge(u, v, fresh).expect("live pair");
                        measure_value(g, m, &p, &cand)
                    }
                    _ => measure_value(g, m, &part, &cand),
                };
                if best.is_none_or(|(bw, _, _)| value < bw) {
                    best = Some((value, u, v));
                }
            }
        }
        let (_, u, v) = best.expect("at least one live pair");
        tri = tri.contract(u, v, fresh).expect("live pair");
        part.merge(u, v, fresh).expect("live pair");
        steps.push((u, v));
    }
    let sequence = ContractionSequence::new(n, steps).expect("greedy merges are live");
    let achieved_width = sequence_width(g, &sequence, m).expect("greedy sequence replays");
    BuildReport {
        sequence,
        achieved_width,
        nodes_explored: 0,
        complete: true,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no admissible pair keeps the merged degree within {d} at step {step}")]
pub struct Stuck {
    /// 1-based index of the contraction that could not be performed.
    pub step: usize,
    pub d: usize,
    /// Smallest merged total degree over the admissible pairs, when any
    /// admissible pair exists at all.
    pub min_merged_degree: Option<usize>,
}

/// Builds a full sequence by repeatedly contracting a predicate-admissible
/// pair whose merged vertex has total degree at most `d`, preferring the
/// smallest resulting degree and breaking ties lexicographically. Every
/// step of the result has red out-degree at most `d`: red edges are a
/// subset of the total graph, and contractions only add out-arcs at the
/// merged vertex.
pub fn contractible_sequence(
    g: &Graph,
    d: usize,
    pred: PairPredicate,
) -> Result<BuildReport, Stuck> {
    let n = g.n();
    let mut tri = Trigraph::from_graph(g, crate::trigraph::LoopConvention::WithoutLoops);
    let mut steps = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let live: Vec<usize> = tri.live().iter().collect();
        let mut best: Option<(usize, usize, usize)> = None;
        let mut min_admissible: Option<usize> = None;
        for (i, &u) in live.iter().enumerate() {
            let nu = tri.total_neighbors(u);
            for &v in live.iter().skip(i + 1) {
                if !pred.admissible(&tri, u, v) {
                    continue;
                }
                let mut merged = nu.union(&tri.total_neighbors(v));
                merged.remove(u);
                merged.remove(v);
                let deg = merged.count();
                min_admissible = Some(min_admissible.map_or(deg, |m| m.min(deg)));
                if deg <= d && best.is_none_or(|(bd, _, _)| deg < bd) {
                    best = Some((deg, u, v));
                }
            }
        }
        match best {
            Some((_, u, v)) => {
                tri = tri.contract(u, v, n + k).expect("live pair");
                steps.push((u, v));
            }
            None => {
                return Err(Stuck {
                    step: k + 1,
                    d,
                    min_merged_degree: min_admissible,
                })
            }
        }
    }
    let sequence = ContractionSequence::new(n, steps).expect("builder merges are live");
    let achieved_width =
        sequence_width(g, &sequence, Measure::Oriented).expect("builder sequence replays");
    Ok(BuildReport {
        sequence,
        achieved_width,
        nodes_explored: 0,
        complete: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialStop {
    /// The total graph reached maximum degree at most the target.
    DegreeTarget,
    /// No contraction could keep the red degree within the bound.
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct PartialReport {
    pub report: BuildReport,
    pub stop: PartialStop,
}

/// Greedy partial sequence keeping every part's red degree at most `d`,
/// stopping as soon as the total graph has maximum degree at most
/// `delta` (or when no admissible contraction remains). Among admissible
/// pairs the merged vertex's red degree is minimized, then its total
/// degree, ties lexicographic.
pub fn partial_sequence_to_degree(g: &Graph, d: usize, delta: usize) -> PartialReport {
    let n = g.n();
    let mut tri = Trigraph::from_graph(g, crate::trigraph::LoopConvention::WithoutLoops);
    let mut steps = Vec::new();
    let stop;
    loop {
        let live: Vec<usize> = tri.live().iter().collect();
        if live.iter().map(|&u| tri.total_degree(u)).max().unwrap_or(0) <= delta {
            stop = PartialStop::DegreeTarget;
            break;
        }
        let fresh = n + steps.len();
        let mut best: Option<((usize, usize), usize, usize)> = None;
        for (i, &u) in live.iter().enumerate() {
            for &v in live.iter().skip(i + 1) {
                let cand = tri.contract(u, v, fresh).expect("live pair");
                let red_max = cand
                    .live()
                    .iter()
                    .map(|w| cand.red_neighbors(w).count())
                    .max()
                    .unwrap_or(0);
                if red_max > d {
                    continue;
                }
                let key = (cand.red_neighbors(fresh).count(), cand.total_degree(fresh));
                if best.is_none_or(|(bk, _, _)| key < bk) {
                    best = Some((key, u, v));
                }
            }
        }
        match best {
            Some((_, u, v)) => {
                tri = tri.contract(u, v, fresh).expect("live pair");
                steps.push((u, v));
            }
            None => {
                stop = PartialStop::Exhausted;
                break;
            }
        }
    }
    let sequence = ContractionSequence::new(n, steps).expect("builder merges are live");
    let achieved_width =
        sequence_width(g, &sequence, Measure::Degree).expect("partial sequence replays");
    let complete = sequence.is_full();
    PartialReport {
        report: BuildReport {
            sequence,
            achieved_width,
            nodes_explored: 0,
            complete,
        },
        stop,
    }
}

/// Maximum total-graph degree after replaying a (partial) sequence; test
/// and report helper for the degree-target builder.
pub fn final_total_degree(
    g: &Graph,
    s: &ContractionSequence,
) -> Result<usize, crate::sequence::SequenceError> {
    let (tri, _) = crate::sequence::apply_sequence(
        g,
        s,
        s.len(),
        crate::trigraph::LoopConvention::WithoutLoops,
    )?;
    Ok(tri
        .live()
        .iter()
        .map(|u| tri.total_degree(u))
        .max()
        .unwrap_or(0))
}
