//! The four step widths of a partitioned graph and sequence verification.
//!
//! For a partition P of V(G) the quotient trigraph yields four numbers:
//! the maximum red out-degree (oriented), the maximum red degree, the
//! maximum red component size, and the total red edge count. Oriented and
//! degree widths drop red loops; component and total widths keep them,
//! with loops counting as degree 1 and as one edge each. A sequence's
//! width under a measure is the maximum over all its states, the initial
//! all-singleton state included.

use crate::graph::Graph;
use crate::sequence::{ContractionSequence, Partition, Replay, SequenceError};
use crate::trigraph::{directed_red, is_homogeneous_to, quotient, LoopConvention, Trigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Oriented,
    Degree,
    Component,
    Total,
}

impl Measure {
    /// The loop convention bound to the measure; not caller-selectable.
    pub fn convention(self) -> LoopConvention {
        match self {
            Measure::Oriented | Measure::Degree => LoopConvention::WithoutLoops,
            Measure::Component | Measure::Total => LoopConvention::WithLoops,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Oriented => "oriented",
            Measure::Degree => "degree",
            Measure::Component => "component",
            Measure::Total => "total",
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepWidths {
    pub oriented: usize,
    pub degree: usize,
    pub component: usize,
    pub total: usize,
}

impl StepWidths {
    pub fn get(&self, m: Measure) -> usize {
        match m {
            Measure::Oriented => self.oriented,
            Measure::Degree => self.degree,
            Measure::Component => self.component,
            Measure::Total => self.total,
        }
    }
}

fn quotient_widths(g: &Graph, p: &Partition, uniform_loops: bool) -> StepWidths {
    let q = quotient(g, p, LoopConvention::WithLoops);
    let d = directed_red(g, p);
    let mut oriented = 0;
    let mut degree = 0;
    for u in q.live().iter() {
        let looped = uniform_loops && q.has_loop(u);
        degree = degree.max(q.red_neighbors(u).count() + looped as usize);
        // with loops, a non-singleton part is not homogeneous to itself,
        // so its loop is an out-arc
        oriented = oriented.max(d.out_degree(u) + looped as usize);
    }
    let component = q
        .red_components()
        .iter()
        .map(|c| c.count())
        .max()
        .unwrap_or(0);
    let total = q.red_pair_count() + q.loop_count();
    StepWidths {
        oriented,
        degree,
        component,
        total,
    }
}

/// The four step widths, each under its own loop convention.
pub fn step_widths(g: &Graph, p: &Partition) -> StepWidths {
    quotient_widths(g, p, false)
}

/// All four step widths computed with red loops, making the chain
/// `oriented <= degree <= component` (and `component <= total` as soon as
/// any red edge or loop exists) hold literally.
pub fn step_widths_with_loops(g: &Graph, p: &Partition) -> StepWidths {
    quotient_widths(g, p, true)
}

fn trigraph_measure(t: &Trigraph) -> (usize, usize, usize) {
    let mut degree = 0;
    for u in t.live().iter() {
        degree = degree.max(t.red_neighbors(u).count());
    }
    let component = t
        .red_components()
        .iter()
        .map(|c| c.count())
        .max()
        .unwrap_or(0);
    let total = t.red_pair_count() + t.loop_count();
    (degree, component, total)
}

fn oriented_value(g: &Graph, p: &Partition, t: &Trigraph) -> usize {
    let mut best = 0;
    for x in t.live().iter() {
        let px = p.part(x).expect("live part");
        let mut deg = 0;
        for y in t.red_neighbors(x).iter() {
            let py = p.part(y).expect("live part");
            if !is_homogeneous_to(g, px, py).expect("disjoint parts") {
                deg += 1;
            }
        }
        best = best.max(deg);
    }
    best
}

pub(crate) fn measure_value(g: &Graph, m: Measure, p: &Partition, t: &Trigraph) -> usize {
    let (degree, component, total) = match m {
        Measure::Oriented => return oriented_value(g, p, t),
        _ => trigraph_measure(t),
    };
    match m {
        Measure::Degree => degree,
        Measure::Component => component,
        Measure::Total => total,
        Measure::Oriented => unreachable!(),
    }
}

/// Width of one candidate sequence under a measure: the maximum of the
/// per-state values over the whole (possibly partial) replay.
pub fn sequence_width(
    g: &Graph,
    s: &ContractionSequence,
    m: Measure,
) -> Result<usize, SequenceError> {
    let mut replay = Replay::new(g, s, m.convention())?;
    let mut width = measure_value(g, m, replay.partition(), replay.trigraph());
    while replay.step().is_some() {
        width = width.max(measure_value(g, m, replay.partition(), replay.trigraph()));
    }
    Ok(width)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based contraction index; 0 means the initial all-singleton state
    /// (only reachable for the component measure with d = 0).
    pub step: usize,
    /// Parts witnessing the violating value.
    pub parts: Vec<usize>,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    Ok { width: usize },
    Violation(Violation),
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok { .. })
    }
}

fn offending_parts(g: &Graph, m: Measure, p: &Partition, t: &Trigraph, value: usize) -> Vec<usize> {
    match m {
        Measure::Degree => t
            .live()
            .iter()
            .filter(|&u| t.red_neighbors(u).count() == value)
            .collect(),
        Measure::Oriented => {
            let mut out = Vec::new();
            for x in t.live().iter() {
                let px = p.part(x).expect("live part");
                let deg = t
                    .red_neighbors(x)
                    .iter()
                    .filter(|&y| {
                        !is_homogeneous_to(g, px, p.part(y).expect("live part"))
                            .expect("disjoint parts")
                    })
                    .count();
                if deg == value {
                    out.push(x);
                }
            }
            out
        }
        Measure::Component => t
            .red_components()
            .iter()
            .find(|c| c.count() == value)
            .map(|c| c.iter().collect())
            .unwrap_or_default(),
        Measure::Total => t
            .live()
            .iter()
            .filter(|&u| !t.red_neighbors(u).is_empty() || t.has_loop(u))
            .collect(),
    }
}

/// Checks that a sequence stays within width `d` under a measure,
/// reporting the first violating contraction otherwise. Replay problems
/// (bad sizes, dead parts) surface as errors, distinct from violations.
pub fn verify_sequence(
    g: &Graph,
    s: &ContractionSequence,
    d: usize,
    m: Measure,
) -> Result<VerifyOutcome, SequenceError> {
    let mut replay = Replay::new(g, s, m.convention())?;
    let mut width = 0;
    loop {
        let value = measure_value(g, m, replay.partition(), replay.trigraph());
        width = width.max(value);
        if value > d {
            let parts = offending_parts(g, m, replay.partition(), replay.trigraph(), value);
            return Ok(VerifyOutcome::Violation(Violation {
                step: replay.steps_done(),
                parts,
                value,
            }));
        }
        if replay.step().is_none() {
            break;
        }
    }
    Ok(VerifyOutcome::Ok { width })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::Bitset;
    use crate::testgraphs::{demo7, demo7_sequence};

    #[test]
    fn singleton_partition_widths() {
        let g = demo7();
        let p = Partition::singletons(g.n());
        let w = step_widths(&g, &p);
        assert_eq!(
            w,
            StepWidths {
                oriented: 0,
                degree: 0,
                component: 1,
                total: 0
            }
        );
    }

    #[test]
    fn demo7_partition_widths() {
        let g = demo7();
        let parts = vec![
            [0, 3].into_iter().collect::<Bitset>(),
            [1, 4, 5].into_iter().collect(),
            Bitset::singleton(7, 2),
            Bitset::singleton(7, 6),
        ];
        let p = Partition::from_parts(7, parts).unwrap();
        assert_eq!(step_widths(&g, &p).degree, 2);
    }

    #[test]
    fn p4_with_loops() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let parts = vec![
            [0, 1].into_iter().collect::<Bitset>(),
            Bitset::singleton(4, 2),
            Bitset::singleton(4, 3),
        ];
        let p = Partition::from_parts(4, parts).unwrap();
        let w = step_widths(&p4, &p);
        assert_eq!(w.total, 2); // red ab·c plus the loop on ab
        assert_eq!(w.component, 2);
        assert_eq!(w.degree, 1);
        assert_eq!(w.oriented, 1);
    }

    #[test]
    fn demo7_sequence_widths() {
        let g = demo7();
        let s = demo7_sequence();
        assert_eq!(sequence_width(&g, &s, Measure::Degree).unwrap(), 2);
        assert!(sequence_width(&g, &s, Measure::Oriented).unwrap() <= 2);
    }

    #[test]
    fn twin_sequence_has_width_zero() {
        // K4 contracted along twins never shows a red edge
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = ContractionSequence::new(4, [(0, 1), (2, 4), (3, 5)]).unwrap();
        assert_eq!(sequence_width(&k4, &s, Measure::Degree).unwrap(), 0);
        assert!(verify_sequence(&k4, &s, 0, Measure::Degree)
            .unwrap()
            .is_ok());
    }

    #[test]
    fn verify_demo7() {
        let g = demo7();
        let s = demo7_sequence();
        assert_eq!(
            verify_sequence(&g, &s, 2, Measure::Degree).unwrap(),
            VerifyOutcome::Ok { width: 2 }
        );
        match verify_sequence(&g, &s, 1, Measure::Degree).unwrap() {
            VerifyOutcome::Violation(v) => {
                assert_eq!(v.step, 1); // the e,f contraction
                assert_eq!(v.value, 2);
                assert!(v.parts.contains(&7));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn verify_with_achieved_width_is_ok() {
        let g = demo7();
        let s = demo7_sequence();
        for m in [
            Measure::Oriented,
            Measure::Degree,
            Measure::Component,
            Measure::Total,
        ] {
            let w = sequence_width(&g, &s, m).unwrap();
            assert!(verify_sequence(&g, &s, w, m).unwrap().is_ok());
            if w > 0 {
                assert!(!verify_sequence(&g, &s, w - 1, m).unwrap().is_ok());
            }
        }
    }
}
