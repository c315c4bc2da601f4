//! q-coloring by dynamic programming over a contraction sequence of
//! bounded component width.
//!
//! Each red component carries the complete set of its coloring profiles:
//! maps from its parts to the exact nonempty color sets some proper
//! coloring of the induced original subgraph uses on them. A contraction
//! fuses at most d + 1 parts' worth of components; profiles combine when
//! no black edge between distinct fusing components shares a color. The
//! graph is q-colorable iff the final single component keeps a profile.
//! Profiles are positive by construction, so an empty set anywhere decides
//! the instance immediately.

use crate::graph::Graph;
use crate::sequence::{ContractionSequence, Replay, SequenceError};
use crate::trigraph::LoopConvention;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("sequence exceeds component width {d} (value {value} at contraction {step})")]
    WidthExceeded { d: usize, step: usize, value: usize },
    #[error("the solver needs a full sequence")]
    NotFull,
    #[error("at most {max} colors supported, got {got}")]
    TooManyColors { got: usize, max: usize },
    #[error("brute-force cap exceeded: n <= {max_n} and q <= {max_q}")]
    OracleCap { max_n: usize, max_q: usize },
    #[error(transparent)]
    Replay(#[from] SequenceError),
}

pub const MAX_COLORS: usize = 16;

/// Result of a solver run. `max_combinations` is the largest number of
/// profile combinations examined at any single contraction; it never
/// exceeds (2^q - 1)^(d+1).
#[derive(Clone, Debug)]
pub struct ColoringOutcome {
    pub colorable: bool,
    pub max_combinations: u64,
    /// A proper coloring (colors `1..=q` indexed by vertex) when requested
    /// and the graph is colorable.
    pub coloring: Option<Vec<u8>>,
}

type ColorMask = u16;
type Assignment = Vec<ColorMask>;

#[derive(Clone, Debug)]
struct Component {
    /// Sorted live part ids.
    parts: Vec<usize>,
    /// Original vertices, sorted, backing the witness layout.
    vertices: Vec<usize>,
    /// Assignments (masks aligned with `parts`) to optional witnesses
    /// (colors aligned with `vertices`).
    profiles: BTreeMap<Assignment, Option<Vec<u8>>>,
}

/// The stepped solver; exposed so tests can inspect per-component profile
/// sets against direct enumeration.
pub struct ColoringDp<'a> {
    graph: &'a Graph,
    replay: Replay<'a>,
    witnesses: bool,
    /// Components keyed by their smallest part id.
    components: BTreeMap<usize, Component>,
    part_comp: Vec<usize>,
    pub max_combinations: u64,
    dead: bool,
}

impl<'a> ColoringDp<'a> {
    pub fn new(
        g: &'a Graph,
        s: &'a ContractionSequence,
        q: usize,
        witnesses: bool,
    ) -> Result<ColoringDp<'a>, ColoringError> {
        if q > MAX_COLORS {
            return Err(ColoringError::TooManyColors {
                got: q,
                max: MAX_COLORS,
            });
        }
        if !s.is_full() {
            return Err(ColoringError::NotFull);
        }
        let replay = Replay::new(g, s, LoopConvention::WithLoops)?;
        let mut components = BTreeMap::new();
        let mut part_comp = vec![usize::MAX; replay.trigraph().capacity()];
        #[allow(clippy::needless_range_loop)]
        for v in 0..g.n() {
            let mut profiles = BTreeMap::new();
            for c in 0..q {
                let witness = witnesses.then(|| vec![c as u8 + 1]);
                profiles.insert(vec![(1 as ColorMask) << c], witness);
            }
            components.insert(
                v,
                Component {
                    parts: vec![v],
                    vertices: vec![v],
                    profiles,
                },
            );
            part_comp[v] = v;
        }
        Ok(ColoringDp {
            graph: g,
            replay,
            witnesses,
            components,
            part_comp,
            max_combinations: 0,
            dead: q == 0,
        })
    }

    pub fn components(
        &self,
    ) -> impl Iterator<Item = (&[usize], &BTreeMap<Assignment, Option<Vec<u8>>>)> {
        self.components
            .values()
            .map(|c| (c.parts.as_slice(), &c.profiles))
    }

    pub fn finished(&self) -> bool {
        self.dead || self.replay.remaining() == 0
    }

    /// Runs one contraction worth of profile updates. Returns false when
    /// the run is over (all steps done or an empty profile set appeared).
    pub fn step(&mut self) -> bool {
        if self.finished() {
            return false;
        }
        let before = self.replay.trigraph().clone();
        let (u, v, z) = self.replay.step().expect("steps remain");
        let after = self.replay.trigraph();

        // fused components: those of u, v and of every red neighbor of z
        let mut fused_keys: Vec<usize> = Vec::new();
        for part in [u, v].into_iter().chain(after.red_neighbors(z).iter()) {
            let key = self.part_comp[part];
            if !fused_keys.contains(&key) {
                fused_keys.push(key);
            }
        }
        fused_keys.sort_unstable();
        let fused: Vec<Component> = fused_keys
            .iter()
            .map(|k| self.components.remove(k).expect("tracked component"))
            .collect();

        // positions of u and v inside their components
        let locate = |part: usize| -> (usize, usize) {
            for (ci, comp) in fused.iter().enumerate() {
                if let Ok(pi) = comp.parts.binary_search(&part) {
                    return (ci, pi);
                }
            }
            unreachable!("contracted part belongs to a fused component")
        };
        let (ua, ui) = locate(u);
        let (vb, vi) = locate(v);

        // black edges between distinct fusing components, in the trigraph
        // before the contraction
        let mut conflicts: Vec<(usize, usize, usize, usize)> = Vec::new();
        for ci in 0..fused.len() {
            for cj in (ci + 1)..fused.len() {
                for (pi, &p) in fused[ci].parts.iter().enumerate() {
                    for (pj, &r) in fused[cj].parts.iter().enumerate() {
                        if before.is_black(p, r) {
                            conflicts.push((ci, pi, cj, pj));
                        }
                    }
                }
            }
        }

        // layout of the merged component
        let mut parts: Vec<usize> = Vec::new();
        let mut vertices: Vec<usize> = Vec::new();
        for comp in &fused {
            parts.extend(comp.parts.iter().copied());
            vertices.extend(comp.vertices.iter().copied());
        }
        parts.retain(|&p| p != u && p != v);
        parts.push(z);
        parts.sort_unstable();
        vertices.sort_unstable();
        let zpos = parts.binary_search(&z).unwrap();
        // old (component, part index) → new assignment slot
        let mut slot: Vec<Vec<Option<usize>>> = Vec::with_capacity(fused.len());
        for comp in &fused {
            let row = comp
                .parts
                .iter()
                .map(|&p| {
                    if p == u || p == v {
                        None
                    } else {
                        Some(parts.binary_search(&p).unwrap())
                    }
                })
                .collect();
            slot.push(row);
        }
        let vslot: Vec<Vec<usize>> = fused
            .iter()
            .map(|comp| {
                comp.vertices
                    .iter()
                    .map(|&w| vertices.binary_search(&w).unwrap())
                    .collect()
            })
            .collect();

        // odometer over the cartesian product of the fused profile sets
        type ProfileRef<'a> = (&'a Assignment, &'a Option<Vec<u8>>);
        let lists: Vec<Vec<ProfileRef<'_>>> =
            fused.iter().map(|c| c.profiles.iter().collect()).collect();
        let mut profiles: BTreeMap<Assignment, Option<Vec<u8>>> = BTreeMap::new();
        let mut combos = 0u64;
        if lists.iter().all(|l| !l.is_empty()) {
            let mut idx = vec![0usize; lists.len()];
            'product: loop {
                combos += 1;
                let pick: Vec<&(&Assignment, &Option<Vec<u8>>)> =
                    idx.iter().zip(&lists).map(|(&i, l)| &l[i]).collect();
                let ok = conflicts
                    .iter()
                    .all(|&(ci, pi, cj, pj)| pick[ci].0[pi] & pick[cj].0[pj] == 0);
                if ok {
                    let mut assignment: Assignment = vec![0; parts.len()];
                    for (ci, _) in fused.iter().enumerate() {
                        for (&mask, &s) in pick[ci].0.iter().zip(&slot[ci]) {
                            if let Some(s) = s {
                                assignment[s] = mask;
                            }
                        }
                    }
                    assignment[zpos] = pick[ua].0[ui] | pick[vb].0[vi];
                    if let std::collections::btree_map::Entry::Vacant(e) =
                        profiles.entry(assignment)
                    {
                        let witness = self.witnesses.then(|| {
                            let mut w = vec![0u8; vertices.len()];
                            for (ci, comp) in fused.iter().enumerate() {
                                let source = pick[ci].1.as_ref().expect("witness mode");
                                for vi in 0..comp.vertices.len() {
                                    w[vslot[ci][vi]] = source[vi];
                                }
                            }
                            w
                        });
                        #[cfg(debug_assertions)]
                        if let Some(w) = &witness {
                            check_stored_profile(
                                self.graph,
                                self.replay.partition(),
                                &parts,
                                e.key(),
                                &vertices,
                                w,
                            );
                        }
                        e.insert(witness);
                    }
                }
                // advance the odometer
                for k in (0..idx.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < lists[k].len() {
                        continue 'product;
                    }
                    idx[k] = 0;
                    if k == 0 {
                        break 'product;
                    }
                }
            }
        }
        self.max_combinations = self.max_combinations.max(combos);

        if profiles.is_empty() {
            self.dead = true;
            return false;
        }
        let key = parts[0];
        for &p in &parts {
            self.part_comp[p] = key;
        }
        self.components.insert(
            key,
            Component {
                parts,
                vertices,
                profiles,
            },
        );
        true
    }

    fn run(&mut self) -> bool {
        while self.step() {}
        if self.dead {
            return false;
        }
        self.components.values().all(|c| !c.profiles.is_empty())
    }

    fn extract(&self) -> Option<Vec<u8>> {
        if self.dead {
            return None;
        }
        let comp = self.components.values().next()?;
        let (_, witness) = comp.profiles.iter().next()?;
        let witness = witness.as_ref()?;
        let mut coloring = vec![0u8; self.graph.n()];
        for (i, &v) in comp.vertices.iter().enumerate() {
            coloring[v] = witness[i];
        }
        Some(coloring)
    }
}

/// Debug-mode soundness check on every stored profile: the witness is a
/// proper coloring of the induced subgraph and realizes the assignment's
/// color set on every part.
#[cfg(debug_assertions)]
fn check_stored_profile(
    g: &Graph,
    partition: &crate::sequence::Partition,
    parts: &[usize],
    assignment: &[ColorMask],
    vertices: &[usize],
    witness: &[u8],
) {
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
            debug_assert!(
                !g.adjacent(u, v) || witness[i] != witness[j],
                "witness colors an edge monochromatically"
            );
        }
    }
    for (pi, &part) in parts.iter().enumerate() {
        let members = partition.part(part).expect("live part");
        let mut used: ColorMask = 0;
        for (i, &u) in vertices.iter().enumerate() {
            if members.contains(u) {
                used |= 1 << (witness[i] - 1);
            }
        }
        debug_assert_eq!(used, assignment[pi], "witness does not realize the profile");
    }
}

fn verify_width(g: &Graph, s: &ContractionSequence, d: usize) -> Result<(), ColoringError> {
    let mut replay = Replay::new(g, s, LoopConvention::WithLoops)?;
    loop {
        let value = replay
            .trigraph()
            .red_components()
            .iter()
            .map(|c| c.count())
            .max()
            .unwrap_or(0);
        if value > d {
            return Err(ColoringError::WidthExceeded {
                d,
                step: replay.steps_done(),
                value,
            });
        }
        if replay.step().is_none() {
            return Ok(());
        }
    }
}

/// Decides q-colorability along a sequence of component width at most `d`
/// (checked up front; exceeding it is an error, not a degraded run).
pub fn q_coloring(
    g: &Graph,
    s: &ContractionSequence,
    q: usize,
    d: usize,
) -> Result<ColoringOutcome, ColoringError> {
    verify_width(g, s, d)?;
    if q == 0 {
        return Ok(ColoringOutcome {
            colorable: false,
            max_combinations: 0,
            coloring: None,
        });
    }
    let mut dp = ColoringDp::new(g, s, q, false)?;
    let colorable = dp.run();
    Ok(ColoringOutcome {
        colorable,
        max_combinations: dp.max_combinations,
        coloring: None,
    })
}

/// Like [`q_coloring`], additionally assembling a proper coloring from the
/// profile witnesses. The coloring is re-verified before returning.
pub fn q_coloring_extract(
    g: &Graph,
    s: &ContractionSequence,
    q: usize,
    d: usize,
) -> Result<ColoringOutcome, ColoringError> {
    verify_width(g, s, d)?;
    if q == 0 {
        return Ok(ColoringOutcome {
            colorable: false,
            max_combinations: 0,
            coloring: None,
        });
    }
    let mut dp = ColoringDp::new(g, s, q, true)?;
    let colorable = dp.run();
    let coloring = colorable.then(|| {
        let c = dp.extract().expect("colorable runs keep a witness");
        assert!(
            is_proper_coloring(g, &c, q),
            "extracted witness must be proper"
        );
        c
    });
    Ok(ColoringOutcome {
        colorable,
        max_combinations: dp.max_combinations,
        coloring,
    })
}

pub fn is_proper_coloring(g: &Graph, coloring: &[u8], q: usize) -> bool {
    if coloring.len() != g.n() {
        return false;
    }
    if coloring.iter().any(|&c| c == 0 || c as usize > q) {
        return false;
    }
    g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

pub const ORACLE_MAX_N: usize = 12;
pub const ORACLE_MAX_Q: usize = 4;

/// Brute-force q-colorability by backtracking enumeration, with the first
/// vertex pinned to color 1. Independent of the sequence-driven solver;
/// capped at n <= 12, q <= 4.
pub fn chromatic_oracle(g: &Graph, q: usize) -> Result<bool, ColoringError> {
    if g.n() > ORACLE_MAX_N || q > ORACLE_MAX_Q {
        return Err(ColoringError::OracleCap {
            max_n: ORACLE_MAX_N,
            max_q: ORACLE_MAX_Q,
        });
    }
    if q == 0 {
        return Ok(false);
    }
    let n = g.n();
    let mut colors = vec![0u8; n];
    fn assign(g: &Graph, colors: &mut Vec<u8>, v: usize, q: usize) -> bool {
        if v == colors.len() {
            return true;
        }
        let limit = if v == 0 { 1 } else { q };
        for c in 1..=limit as u8 {
            if g.neighbors(v).iter().any(|w| colors[w] == c && w < v) {
                continue;
            }
            colors[v] = c;
            if assign(g, colors, v + 1, q) {
                return true;
            }
            colors[v] = 0;
        }
        false
    }
    Ok(assign(g, &mut colors, 0, q))
}
