//! Trigraphs: graphs whose edges are black (definite) or red (error),
//! with optional red loops on contracted vertices.
//!
//! A trigraph's vertices are part ids. Lifting a graph gives the all-black
//! trigraph on parts `0..n`; contracting parts `u, v` into a fresh id keeps
//! an edge black only when both endpoints agreed on it and turns every
//! other incident edge red. Iterating contractions from the lift agrees
//! with quotienting by the induced partition.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::sequence::Partition;
use thiserror::Error;

/// Whether non-singleton parts carry a red loop. Component and total
/// widths are computed with loops, oriented and plain twin-width without.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopConvention {
    WithLoops,
    WithoutLoops,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractionError {
    #[error("cannot contract a part with itself (id {0})")]
    SamePart(usize),
    #[error("part id {0} is not live")]
    DeadPart(usize),
    #[error("fresh id {0} is already taken or out of capacity")]
    BadFreshId(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomogeneityError {
    #[error("vertex sets must be nonempty")]
    EmptySet,
    #[error("distinct vertex sets must be disjoint")]
    Overlap,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Trigraph {
    cap: usize,
    convention: LoopConvention,
    live: Bitset,
    born: Bitset,
    black: Vec<Bitset>,
    red: Vec<Bitset>,
    loops: Bitset,
}

impl Trigraph {
    /// Lifts a graph to the all-black trigraph on parts `0..n`, with
    /// capacity for the `n - 1` contractions of a full sequence.
    pub fn from_graph(g: &Graph, convention: LoopConvention) -> Trigraph {
        let n = g.n();
        let cap = 2 * n - 1;
        let mut black = Vec::with_capacity(cap);
        for u in 0..n {
            let mut row = Bitset::new(cap);
            for v in g.neighbors(u).iter() {
                row.insert(v);
            }
            black.push(row);
        }
        black.resize(cap, Bitset::new(cap));
        let mut live = Bitset::new(cap);
        for u in 0..n {
            live.insert(u);
        }
        Trigraph {
            cap,
            convention,
            born: live.clone(),
            live,
            black,
            red: vec![Bitset::new(cap); cap],
            loops: Bitset::new(cap),
        }
    }

    pub fn convention(&self) -> LoopConvention {
        self.convention
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn live(&self) -> &Bitset {
        &self.live
    }

    pub fn vertex_count(&self) -> usize {
        self.live.count()
    }

    pub fn is_live(&self, p: usize) -> bool {
        p < self.cap && self.live.contains(p)
    }

    pub fn is_black(&self, u: usize, v: usize) -> bool {
        self.black[u].contains(v)
    }

    pub fn is_red(&self, u: usize, v: usize) -> bool {
        self.red[u].contains(v)
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.loops.contains(u)
    }

    pub fn black_neighbors(&self, u: usize) -> &Bitset {
        &self.black[u]
    }

    pub fn red_neighbors(&self, u: usize) -> &Bitset {
        &self.red[u]
    }

    /// Black and red neighbors together (the total graph's row). Loops are
    /// not part of the total graph.
    pub fn total_neighbors(&self, u: usize) -> Bitset {
        self.black[u].union(&self.red[u])
    }

    pub fn total_degree(&self, u: usize) -> usize {
        self.black[u].count() + self.red[u].count()
    }

    /// Number of red edges between distinct parts.
    pub fn red_pair_count(&self) -> usize {
        let total: usize = self.live.iter().map(|u| self.red[u].count()).sum();
        total / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.count()
    }

    /// Contracts live parts `u != v` into `new_id`, returning the new
    /// trigraph. Every edge `new_id–x` is black iff both `u–x` and `v–x`
    /// were black, red if either endpoint had any other edge to `x`.
    pub fn contract(
        &self,
        u: usize,
        v: usize,
        new_id: usize,
    ) -> Result<Trigraph, ContractionError> {
        if u == v {
            return Err(ContractionError::SamePart(u));
        }
        for p in [u, v] {
            if !self.is_live(p) {
                return Err(ContractionError::DeadPart(p));
            }
        }
        if new_id >= self.cap || self.born.contains(new_id) {
            return Err(ContractionError::BadFreshId(new_id));
        }

        let mut t = self.clone();
        let mut new_black = self.black[u].intersection(&self.black[v]);
        new_black.remove(u);
        new_black.remove(v);
        let mut touched = self.black[u].union(&self.black[v]);
        touched.union_with(&self.red[u]);
        touched.union_with(&self.red[v]);
        touched.remove(u);
        touched.remove(v);
        let new_red = touched.difference(&new_black);

        for x in touched.iter() {
            t.black[x].remove(u);
            t.black[x].remove(v);
            t.red[x].remove(u);
            t.red[x].remove(v);
            if new_black.contains(x) {
                t.black[x].insert(new_id);
            } else {
                t.red[x].insert(new_id);
            }
        }
        t.black[u].clear();
        t.black[v].clear();
        t.red[u].clear();
        t.red[v].clear();
        t.black[new_id] = new_black;
        t.red[new_id] = new_red;
        t.live.remove(u);
        t.live.remove(v);
        t.live.insert(new_id);
        t.born.insert(new_id);
        t.loops.remove(u);
        t.loops.remove(v);
        if self.convention == LoopConvention::WithLoops {
            t.loops.insert(new_id);
        }
        Ok(t)
    }

    /// Connected components of the red graph, ordered by smallest member
    /// id. Loops do not affect connectivity; red-isolated live parts form
    /// singleton components.
    pub fn red_components(&self) -> Vec<Bitset> {
        let mut seen = Bitset::new(self.cap);
        let mut comps = Vec::new();
        for start in self.live.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Bitset::new(self.cap);
            let mut stack = vec![start];
            seen.insert(start);
            comp.insert(start);
            while let Some(p) = stack.pop() {
                for q in self.red[p].iter() {
                    if !seen.contains(q) {
                        seen.insert(q);
                        comp.insert(q);
                        stack.push(q);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }
}

impl std::fmt::Debug for Trigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut blacks = Vec::new();
        let mut reds = Vec::new();
        for u in self.live.iter() {
            for v in self.black[u].iter() {
                if v > u {
                    blacks.push((u, v));
                }
            }
            for v in self.red[u].iter() {
                if v > u {
                    reds.push((u, v));
                }
            }
        }
        write!(
            f,
            "Trigraph(live={:?}, black={:?}, red={:?}, loops={:?})",
            self.live, blacks, reds, self.loops
        )
    }
}

/// Whether `x` and `y` see each other completely or not at all.
///
/// For `x == y` (as sets) the answer follows the singleton rule: a set is
/// homogeneous with itself exactly when it has one element.
pub fn is_homogeneous(g: &Graph, x: &Bitset, y: &Bitset) -> Result<bool, HomogeneityError> {
    if x.is_empty() || y.is_empty() {
        return Err(HomogeneityError::EmptySet);
    }
    if x == y {
        return Ok(x.count() == 1);
    }
    if x.intersects(y) {
        return Err(HomogeneityError::Overlap);
    }
    let want = x.count() * y.count();
    let mut edges = 0;
    for u in x.iter() {
        edges += g.neighbors(u).count_intersection(y);
    }
    Ok(edges == 0 || edges == want)
}

/// Whether `y` is homogeneous to `x`: every vertex of `x` sees all of `y`
/// or none of it, i.e. `y` is a module in the subgraph induced by
/// `x ∪ y`.
pub fn is_homogeneous_to(g: &Graph, y: &Bitset, x: &Bitset) -> Result<bool, HomogeneityError> {
    if x.is_empty() || y.is_empty() {
        return Err(HomogeneityError::EmptySet);
    }
    if x.intersects(y) {
        return Err(HomogeneityError::Overlap);
    }
    let ysize = y.count();
    for u in x.iter() {
        let seen = g.neighbors(u).count_intersection(y);
        if seen != 0 && seen != ysize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quotient trigraph of a partition: black between completely joined
/// parts, red between non-homogeneous ones, and under `WithLoops` a red
/// loop on every non-singleton part.
pub fn quotient(g: &Graph, p: &Partition, convention: LoopConvention) -> Trigraph {
    let cap = p.capacity();
    let mut t = Trigraph {
        cap,
        convention,
        live: Bitset::new(cap),
        born: Bitset::new(cap),
        black: vec![Bitset::new(cap); cap],
        red: vec![Bitset::new(cap); cap],
        loops: Bitset::new(cap),
    };
    let parts: Vec<usize> = p.live_parts().collect();
    for &id in &parts {
        t.live.insert(id);
        t.born.insert(id);
        let members = p.part(id).expect("live part");
        if convention == LoopConvention::WithLoops && members.count() > 1 {
            t.loops.insert(id);
        }
    }
    for (i, &a) in parts.iter().enumerate() {
        let pa = p.part(a).unwrap();
        let ca = pa.count();
        for &b in parts.iter().skip(i + 1) {
            let pb = p.part(b).unwrap();
            let mut edges = 0;
            for u in pa.iter() {
                edges += g.neighbors(u).count_intersection(pb);
            }
            if edges == ca * pb.count() {
                t.black[a].insert(b);
                t.black[b].insert(a);
            } else if edges > 0 {
                t.red[a].insert(b);
                t.red[b].insert(a);
            }
        }
    }
    t
}

/// Quotient with red edges oriented: the arc `(x, y)` is present when
/// `{x, y}` is red and part `x` is not homogeneous to part `y` (some
/// vertex of `y` sees part of `x` but not all of it). Red edges may be
/// oriented both ways. Loops are not represented as arcs.
#[derive(Clone, Debug)]
pub struct DirectedTrigraph {
    cap: usize,
    live: Bitset,
    black: Vec<Bitset>,
    out_arcs: Vec<Bitset>,
}

impl DirectedTrigraph {
    pub fn live(&self) -> &Bitset {
        &self.live
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.out_arcs[x].contains(y)
    }

    pub fn is_black(&self, u: usize, v: usize) -> bool {
        self.black[u].contains(v)
    }

    pub fn out_neighbors(&self, x: usize) -> &Bitset {
        &self.out_arcs[x]
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out_arcs[x].count()
    }

    pub fn max_out_degree(&self) -> usize {
        self.live
            .iter()
            .map(|x| self.out_degree(x))
            .max()
            .unwrap_or(0)
    }
}

pub fn directed_red(g: &Graph, p: &Partition) -> DirectedTrigraph {
    let q = quotient(g, p, LoopConvention::WithoutLoops);
    let cap = q.cap;
    let mut out_arcs = vec![Bitset::new(cap); cap];
    for x in q.live.iter() {
        let px = p.part(x).unwrap();
        for y in q.red[x].iter() {
            let py = p.part(y).unwrap();
            // x → y when x is not homogeneous to y.
            if !is_homogeneous_to(g, px, py).expect("parts are disjoint and nonempty") {
                out_arcs[x].insert(y);
            }
        }
    }
    DirectedTrigraph {
        cap,
        live: q.live.clone(),
        black: q.black.clone(),
        out_arcs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Partition;
    use crate::testgraphs::demo7;

    #[test]
    fn lift_is_identity_on_edges() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let t = Trigraph::from_graph(&k3, LoopConvention::WithoutLoops);
        assert_eq!(t.vertex_count(), 3);
        assert!(t.is_black(0, 1) && t.is_black(0, 2) && t.is_black(1, 2));
        assert_eq!(t.red_pair_count(), 0);

        let empty = Graph::from_edges(4, []).unwrap();
        let t = Trigraph::from_graph(&empty, LoopConvention::WithoutLoops);
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.red_pair_count(), 0);

        let d = demo7();
        let t = Trigraph::from_graph(&d, LoopConvention::WithoutLoops);
        let blacks: usize = t.live().iter().map(|u| t.black_neighbors(u).count()).sum();
        assert_eq!(blacks / 2, 13);
    }

    #[test]
    fn contract_demo7_e_f() {
        // Contracting e (4) and f (5): red to a and d, black to b, c, g.
        let g = demo7();
        let t = Trigraph::from_graph(&g, LoopConvention::WithoutLoops);
        let t = t.contract(4, 5, 7).unwrap();
        assert!(t.is_red(7, 0) && t.is_red(7, 3));
        assert!(t.is_black(7, 1) && t.is_black(7, 2) && t.is_black(7, 6));
        assert_eq!(t.red_pair_count(), 2);
        // the rest of the trigraph is untouched
        assert!(t.is_black(0, 1) && t.is_black(3, 6) && !t.is_black(0, 2));
    }

    #[test]
    fn contract_false_twins_stays_black() {
        // P3 a–b–c: a and c are false twins, so ac·b stays black.
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let t = Trigraph::from_graph(&p3, LoopConvention::WithoutLoops);
        let t = t.contract(0, 2, 3).unwrap();
        assert!(t.is_black(3, 1));
        assert_eq!(t.red_pair_count(), 0);
    }

    #[test]
    fn contract_k2_to_point() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let t = Trigraph::from_graph(&k2, LoopConvention::WithoutLoops);
        let t = t.contract(0, 1, 2).unwrap();
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.red_pair_count(), 0);
        assert_eq!(t.loop_count(), 0);
    }

    #[test]
    fn contract_rejects_bad_ids() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let t = Trigraph::from_graph(&k2, LoopConvention::WithoutLoops);
        assert_eq!(t.contract(0, 0, 2), Err(ContractionError::SamePart(0)));
        let t2 = t.contract(0, 1, 2).unwrap();
        assert_eq!(t2.contract(0, 2, 1), Err(ContractionError::DeadPart(0)));
        assert_eq!(t.contract(0, 1, 1), Err(ContractionError::BadFreshId(1)));
    }

    #[test]
    fn homogeneous_pairs() {
        let g = demo7();
        let a = Bitset::singleton(7, 0);
        let b = Bitset::singleton(7, 1);
        assert!(is_homogeneous(&g, &a, &b).unwrap());

        // C4 0–1–2–3–0: {0,2} vs {1,3} is complete bipartite.
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let x = Bitset::from_indices(4, [0, 2]);
        let y = Bitset::from_indices(4, [1, 3]);
        assert!(is_homogeneous(&c4, &x, &y).unwrap());

        // P4 0–1–2–3: {0,1} vs {2} has one edge and one non-edge.
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let x = Bitset::from_indices(4, [0, 1]);
        let mut y = Bitset::new(4);
        y.insert(2);
        assert!(!is_homogeneous(&p4, &x, &y).unwrap());

        // self case
        assert!(is_homogeneous(&p4, &y, &y).unwrap());
        assert!(!is_homogeneous(&p4, &x, &x).unwrap());

        let overlapping = Bitset::from_indices(4, [1, 2]);
        assert_eq!(
            is_homogeneous(&p4, &x, &overlapping),
            Err(HomogeneityError::Overlap)
        );
    }

    #[test]
    fn homogeneous_to_is_directed() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        // singleton is always a module
        let single = Bitset::singleton(4, 0);
        let rest = Bitset::from_indices(4, [1, 3]);
        assert!(is_homogeneous_to(&p4, &single, &rest).unwrap());
        // {0,3} is not homogeneous to {1}: 0–1 edge, 3–1 non-edge
        let y = Bitset::from_indices(4, [0, 3]);
        let x = Bitset::singleton(4, 1);
        assert!(!is_homogeneous_to(&p4, &y, &x).unwrap());

        // star center 0, leaves 1..3: two leaves are homogeneous to the center
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaves = Bitset::from_indices(4, [1, 2]);
        let center = Bitset::singleton(4, 0);
        assert!(is_homogeneous_to(&star, &leaves, &center).unwrap());
    }

    #[test]
    fn quotient_of_singletons_is_lift() {
        let g = demo7();
        let p = Partition::singletons(g.n());
        let q = quotient(&g, &p, LoopConvention::WithoutLoops);
        let t = Trigraph::from_graph(&g, LoopConvention::WithoutLoops);
        for u in 0..7 {
            for v in 0..7 {
                if u != v {
                    assert_eq!(q.is_black(u, v), t.is_black(u, v));
                    assert!(!q.is_red(u, v));
                }
            }
        }
    }

    #[test]
    fn quotient_demo7_partition() {
        // Parts {a,d}, {b,e,f}, {c}, {g}: red ad·bef, ad·g, bef·g, black bef·c.
        let g = demo7();
        let parts = vec![
            [0, 3].into_iter().collect::<Bitset>(),
            [1, 4, 5].into_iter().collect(),
            Bitset::singleton(7, 2),
            Bitset::singleton(7, 6),
        ];
        let p = Partition::from_parts(7, parts).unwrap();
        let q = quotient(&g, &p, LoopConvention::WithoutLoops);
        assert!(q.is_red(0, 1) && q.is_red(0, 3) && q.is_red(1, 3));
        assert!(q.is_black(1, 2));
        assert!(!q.is_black(0, 2) && !q.is_red(0, 2));
        assert_eq!(q.red_pair_count(), 3);
    }

    #[test]
    fn coarsest_quotient_with_loops() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let p = Partition::from_parts(2, vec![[0, 1].into_iter().collect()]).unwrap();
        let q = quotient(&k2, &p, LoopConvention::WithLoops);
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.loop_count(), 1);
        assert_eq!(q.red_pair_count(), 0);
    }

    #[test]
    fn directed_red_orientation() {
        let g = demo7();
        let p = Partition::singletons(g.n());
        let d = directed_red(&g, &p);
        assert_eq!(d.max_out_degree(), 0);

        // P4 with parts {a,b}, {c}, {d}: arc ab → c but not c → ab.
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut p = Partition::singletons(4);
        p.merge(0, 1, 4).unwrap();
        let d = directed_red(&p4, &p);
        assert!(d.has_arc(4, 2));
        assert!(!d.has_arc(2, 4));
    }

    #[test]
    fn red_components_grouping() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let t = Trigraph::from_graph(&g, LoopConvention::WithoutLoops);
        assert_eq!(t.red_components().len(), 5);

        // demo7 after contracting e,f then a,d: one red component {ad, ef, g}.
        let g = demo7();
        let t = Trigraph::from_graph(&g, LoopConvention::WithoutLoops);
        let t = t.contract(4, 5, 7).unwrap().contract(0, 3, 8).unwrap();
        let comps = t.red_components();
        assert_eq!(comps.len(), 3);
        let sizes: Vec<usize> = comps.iter().map(|c| c.count()).collect();
        assert_eq!(sizes, vec![1, 1, 3]);
        let big = comps.iter().find(|c| c.count() == 3).unwrap();
        assert_eq!(big.iter().collect::<Vec<_>>(), vec![6, 7, 8]);
    }

    #[test]
    fn red_triangle_is_one_component() {
        // Pair up 6 vertices so that each merge sees the others one-sidedly:
        // after three contractions the quotient is a red triangle.
        let g = Graph::from_edges(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
        let t = Trigraph::from_graph(&g, LoopConvention::WithoutLoops)
            .contract(0, 1, 6)
            .unwrap()
            .contract(2, 3, 7)
            .unwrap()
            .contract(4, 5, 8)
            .unwrap();
        assert!(t.is_red(6, 7) && t.is_red(7, 8) && t.is_red(6, 8));
        let comps = t.red_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].count(), 3);
    }
}
