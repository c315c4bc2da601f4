//! Branch decompositions, boolean-width of cuts, and the constructive
//! conversions between decompositions and contraction sequences.
//!
//! A branch decomposition is a rooted tree whose leaves biject with the
//! vertices; each tree edge induces the vertex bipartition of the leaves
//! below it. The boolean-width of a cut (X, Y) is log2 of the number of
//! distinct neighborhoods N(S) ∩ Y over S ⊆ X. Decompositions of
//! boolean-width d convert into sequences of component width at most
//! 2^(d+1), and sequences of component width d convert back into
//! decompositions of boolean-width at most 2^d; the linear variants trade
//! total width against linear boolean-width at the analogous bounds.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::sequence::{ContractionSequence, Replay};
use crate::trigraph::{LoopConvention, Trigraph};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BdError {
    #[error("decomposition has no root or multiple roots")]
    BadRoot,
    #[error("node {0} is unreachable from the root")]
    Disconnected(usize),
    #[error("leaves must biject with the graph vertices")]
    LeafMismatch,
    #[error("node {node} has arity {arity}, not allowed here")]
    BadArity { node: usize, arity: usize },
    #[error("parent index {0} out of range")]
    BadParent(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutError {
    #[error("cut must split the vertex set into two nonempty sides")]
    TrivialCut,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvertError {
    #[error("conversion requires a full sequence")]
    NotFull,
    #[error("decomposition exceeds boolean-width {d} at contraction {step}: {reason}")]
    WidthExceeded {
        d: usize,
        step: usize,
        reason: String,
    },
    #[error("decomposition is not linear")]
    NotLinear,
    #[error("invalid decomposition: {0}")]
    Bd(#[from] BdError),
    #[error("replay failed: {0}")]
    Replay(#[from] crate::sequence::SequenceError),
    #[error("sequence/graph size mismatch")]
    SizeMismatch,
}

/// Rooted branch decomposition. Leaves carry graph vertices; internal
/// non-root nodes have two children and the root has two or three (a
/// one-vertex graph is a single leaf root).
#[derive(Clone, Debug)]
pub struct BranchDecomposition {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    leaf_vertex: Vec<Option<usize>>,
    root: usize,
    linear: bool,
}

impl BranchDecomposition {
    pub fn new(
        parent: Vec<Option<usize>>,
        leaf_vertex: Vec<Option<usize>>,
        linear: bool,
    ) -> Result<BranchDecomposition, BdError> {
        let count = parent.len();
        if leaf_vertex.len() != count {
            return Err(BdError::LeafMismatch);
        }
        let mut children = vec![Vec::new(); count];
        let mut root = None;
        for (node, &p) in parent.iter().enumerate() {
            match p {
                None => {
                    if root.replace(node).is_some() {
                        return Err(BdError::BadRoot);
                    }
                }
                Some(q) => {
                    if q >= count {
                        return Err(BdError::BadParent(q));
                    }
                    children[q].push(node);
                }
            }
        }
        let root = root.ok_or(BdError::BadRoot)?;
        let bd = BranchDecomposition {
            parent,
            children,
            leaf_vertex,
            root,
            linear,
        };
        // reachability doubles as the acyclicity check
        let mut seen = vec![false; count];
        let mut stack = vec![root];
        seen[root] = true;
        let mut visited = 1;
        while let Some(x) = stack.pop() {
            for &c in &bd.children[x] {
                if !seen[c] {
                    seen[c] = true;
                    visited += 1;
                    stack.push(c);
                }
            }
        }
        if visited != count {
            let missing = seen.iter().position(|&s| !s).unwrap();
            return Err(BdError::Disconnected(missing));
        }
        Ok(bd)
    }

    /// Checks the finished-decomposition shape against a graph on `n`
    /// vertices: leaf bijection, binary internal nodes, root arity 2 or 3.
    pub fn validate(&self, n: usize) -> Result<(), BdError> {
        let mut seen = vec![false; n];
        let mut leaves = 0;
        for node in 0..self.node_count() {
            match self.leaf_vertex[node] {
                Some(v) => {
                    if v >= n || seen[v] || !self.children[node].is_empty() {
                        return Err(BdError::LeafMismatch);
                    }
                    seen[v] = true;
                    leaves += 1;
                }
                None => {
                    let arity = self.children[node].len();
                    let ok = if node == self.root {
                        (2..=3).contains(&arity)
                    } else {
                        arity == 2
                    };
                    if !ok {
                        return Err(BdError::BadArity { node, arity });
                    }
                }
            }
        }
        if leaves != n {
            return Err(BdError::LeafMismatch);
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    pub fn leaf_vertex(&self, node: usize) -> Option<usize> {
        self.leaf_vertex[node]
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.leaf_vertex[node].is_some()
    }

    pub fn linear_flag(&self) -> bool {
        self.linear
    }

    /// Vertices under each node (the root's set is all of `0..n`).
    pub fn leaf_sets(&self, n: usize) -> Vec<Bitset> {
        let mut sets = vec![Bitset::new(n); self.node_count()];
        for node in self.postorder() {
            if let Some(v) = self.leaf_vertex[node] {
                sets[node].insert(v);
            } else {
                let mut acc = Bitset::new(n);
                for &c in &self.children[node] {
                    acc.union_with(&sets[c]);
                }
                sets[node] = acc;
            }
        }
        sets
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.node_count()];
        for node in self.preorder() {
            if let Some(p) = self.parent[node] {
                depth[node] = depth[p] + 1;
            }
        }
        depth
    }

    fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            order.push(x);
            stack.extend(self.children[x].iter().copied());
        }
        order
    }

    fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Whether the internal nodes form a path (ignoring the rooting).
    pub fn is_linear_structure(&self) -> bool {
        let internals: Vec<usize> = (0..self.node_count())
            .filter(|&x| !self.is_leaf(x))
            .collect();
        if internals.len() <= 1 {
            return true;
        }
        let mut degree: HashMap<usize, usize> = HashMap::new();
        for &x in &internals {
            if let Some(p) = self.parent[x] {
                if !self.is_leaf(p) {
                    *degree.entry(x).or_default() += 1;
                    *degree.entry(p).or_default() += 1;
                }
            }
        }
        internals
            .iter()
            .all(|x| degree.get(x).copied().unwrap_or(0) <= 2)
    }

    /// Natural linear decomposition of a vertex order: a caterpillar whose
    /// suffix cuts realize the prefixes of the order.
    pub fn caterpillar(order: &[usize]) -> BranchDecomposition {
        let n = order.len();
        assert!(n >= 1);
        if n == 1 {
            return BranchDecomposition::new(vec![None], vec![Some(order[0])], true).unwrap();
        }
        if n == 2 {
            return BranchDecomposition::new(
                vec![None, Some(0), Some(0)],
                vec![None, Some(order[0]), Some(order[1])],
                true,
            )
            .unwrap();
        }
        // internal path p_0..p_{n-3}; p_0 is the root and carries the two
        // first leaves, every later p_i one more, the last one two
        let internal_count = n - 2;
        let mut parent: Vec<Option<usize>> = Vec::new();
        let mut leaf_vertex: Vec<Option<usize>> = Vec::new();
        for i in 0..internal_count {
            parent.push(if i == 0 { None } else { Some(i - 1) });
            leaf_vertex.push(None);
        }
        let mut attach = vec![(0, order[0]), (0, order[1])];
        for (i, &v) in order.iter().enumerate().take(n - 1).skip(2) {
            attach.push((i - 1, v));
        }
        attach.push((internal_count - 1, order[n - 1]));
        for (node, v) in attach {
            parent.push(Some(node));
            leaf_vertex.push(Some(v));
        }
        BranchDecomposition::new(parent, leaf_vertex, true).unwrap()
    }

    /// Balanced binary decomposition splitting the id range in halves；
    /// handy as a generic decomposition for tests and examples.
    pub fn balanced(n: usize) -> BranchDecomposition {
        assert!(n >= 1);
        let mut parent: Vec<Option<usize>> = Vec::new();
        let mut leaf_vertex: Vec<Option<usize>> = Vec::new();
        fn build(
            lo: usize,
            hi: usize,
            par: Option<usize>,
            parent: &mut Vec<Option<usize>>,
            leaf_vertex: &mut Vec<Option<usize>>,
        ) -> usize {
            let node = parent.len();
            parent.push(par);
            leaf_vertex.push(None);
            if hi - lo == 1 {
                leaf_vertex[node] = Some(lo);
                return node;
            }
            let mid = (lo + hi) / 2;
            build(lo, mid, Some(node), parent, leaf_vertex);
            build(mid, hi, Some(node), parent, leaf_vertex);
            node
        }
        build(0, n, None, &mut parent, &mut leaf_vertex);
        BranchDecomposition::new(parent, leaf_vertex, false).unwrap()
    }
}

/// Distinct neighborhood traces and the union-closure size of one cut.
#[derive(Clone, Debug, PartialEq)]
pub struct CutProfile {
    /// Number of distinct traces N(x) ∩ Y over x ∈ X.
    pub distinct_neighborhoods: usize,
    /// Subsets of Y of the form N(S) ∩ Y for S ⊆ X; exact when `exact`,
    /// otherwise a lower bound reached before the cap.
    pub union_closure_size: usize,
    pub exact: bool,
}

impl CutProfile {
    pub fn boolean_width(&self) -> Option<f64> {
        self.exact.then(|| (self.union_closure_size as f64).log2())
    }

    /// Bounds from the distinct-trace count q: the width is at least
    /// log2(q) and at most q.
    pub fn bracket(&self) -> (f64, f64) {
        let q = self.distinct_neighborhoods as f64;
        (q.log2(), q)
    }
}

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// Closes the neighborhood traces of `x` under union, starting from the
/// empty set, stopping exact once the closure is complete or giving up at
/// `cap` elements.
pub fn cut_profile(g: &Graph, x: &Bitset, cap: usize) -> Result<CutProfile, CutError> {
    let n = g.n();
    let size = x.count();
    if size == 0 || size == n {
        return Err(CutError::TrivialCut);
    }
    let mut y = Bitset::full(n);
    y.difference_with(x);
    let mut traces: Vec<Bitset> = x.iter().map(|u| g.neighbors(u).intersection(&y)).collect();
    traces.sort();
    traces.dedup();
    let q = traces.len();

    let empty = Bitset::new(n);
    let mut closure: HashSet<Bitset> = HashSet::new();
    closure.insert(empty.clone());
    let mut queue = vec![empty];
    while let Some(s) = queue.pop() {
        for t in &traces {
            let u = s.union(t);
            if !closure.contains(&u) {
                closure.insert(u.clone());
                if closure.len() > cap {
                    return Ok(CutProfile {
                        distinct_neighborhoods: q,
                        union_closure_size: closure.len(),
                        exact: false,
                    });
                }
                queue.push(u);
            }
        }
    }
    Ok(CutProfile {
        distinct_neighborhoods: q,
        union_closure_size: closure.len(),
        exact: true,
    })
}

/// Boolean-width of a decomposition: the maximum over its tree edges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoolWidth {
    Exact(f64),
    /// Some cut's closure passed the cap; only bounds are known.
    Bracket {
        lo: f64,
        hi: f64,
    },
}

impl BoolWidth {
    pub fn upper(&self) -> f64 {
        match *self {
            BoolWidth::Exact(w) => w,
            BoolWidth::Bracket { hi, .. } => hi,
        }
    }

    pub fn lower(&self) -> f64 {
        match *self {
            BoolWidth::Exact(w) => w,
            BoolWidth::Bracket { lo, .. } => lo,
        }
    }
}

pub fn bd_boolean_width(
    g: &Graph,
    t: &BranchDecomposition,
    cap: usize,
) -> Result<BoolWidth, BdError> {
    t.validate(g.n())?;
    let sets = t.leaf_sets(g.n());
    let mut lo = 0f64;
    let mut hi = 0f64;
    let mut all_exact = true;
    for (node, set) in sets.iter().enumerate() {
        if node == t.root() {
            continue;
        }
        let profile = cut_profile(g, set, cap).expect("tree cuts are nontrivial");
        match profile.boolean_width() {
            Some(w) => {
                lo = lo.max(w);
                hi = hi.max(w);
            }
            None => {
                all_exact = false;
                lo = lo.max((profile.union_closure_size as f64).log2());
                hi = hi.max(profile.distinct_neighborhoods as f64);
            }
        }
    }
    Ok(if all_exact {
        BoolWidth::Exact(hi)
    } else {
        BoolWidth::Bracket { lo, hi }
    })
}

fn pow2(d: usize) -> usize {
    1usize.checked_shl(d as u32).unwrap_or(usize::MAX / 4)
}

/// Mutable tree state for the decomposition-to-sequence direction.
struct Surgery {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    leaf_part: Vec<Option<usize>>,
    root: usize,
}

impl Surgery {
    fn from_bd(t: &BranchDecomposition) -> Surgery {
        let mut s = Surgery {
            parent: t.parent.clone(),
            children: t.children.clone(),
            leaf_part: t.leaf_vertex.clone(),
            root: t.root,
        };
        // A ternary root becomes binary by pairing two children under a
        // fresh node; the added cut equals the remaining child's cut, so
        // no new bipartitions appear.
        if s.children[s.root].len() == 3 {
            let mut kids = s.children[s.root].clone();
            kids.sort();
            let (b, c) = (kids[1], kids[2]);
            let fresh = s.parent.len();
            s.parent.push(Some(s.root));
            s.children.push(vec![b, c]);
            s.leaf_part.push(None);
            s.parent[b] = Some(fresh);
            s.parent[c] = Some(fresh);
            s.children[s.root] = vec![kids[0], fresh];
        }
        s
    }

    fn alive_nodes(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            order.push(x);
            stack.extend(self.children[x].iter().copied());
        }
        order
    }

    /// Removes the leaf holding `part` and splices its parent away.
    fn delete_leaf(&mut self, part: usize) {
        let node = self
            .alive_nodes()
            .into_iter()
            .find(|&x| self.leaf_part[x] == Some(part))
            .expect("live part has a leaf");
        let p = self.parent[node].expect("leaves below the root");
        self.children[p].retain(|&c| c != node);
        if self.children[p].len() == 1 {
            let sibling = self.children[p][0];
            match self.parent[p] {
                Some(gp) => {
                    self.parent[sibling] = Some(gp);
                    let slot = self.children[gp].iter().position(|&c| c == p).unwrap();
                    self.children[gp][slot] = sibling;
                }
                None => {
                    self.parent[sibling] = None;
                    self.root = sibling;
                }
            }
        }
    }

    fn relabel_leaf(&mut self, old_part: usize, new_part: usize) {
        for x in self.alive_nodes() {
            if self.leaf_part[x] == Some(old_part) {
                self.leaf_part[x] = Some(new_part);
                return;
            }
        }
        panic!("live part has a leaf");
    }

    /// Per alive node: the set of live parts below it, plus depths.
    fn part_sets(&self, cap: usize) -> (Vec<usize>, Vec<Bitset>, Vec<usize>) {
        let order = self.alive_nodes();
        let mut sets = vec![Bitset::new(cap); self.parent.len()];
        let mut depth = vec![0usize; self.parent.len()];
        for &x in &order {
            if let Some(p) = self.parent[x] {
                depth[x] = depth[p] + 1;
            }
        }
        for &x in order.iter().rev() {
            if let Some(part) = self.leaf_part[x] {
                sets[x].insert(part);
            } else {
                let mut acc = Bitset::new(cap);
                for &c in &self.children[x] {
                    acc.union_with(&sets[c]);
                }
                sets[x] = acc;
            }
        }
        (order, sets, depth)
    }
}

/// Converts a decomposition of boolean-width at most `d` into a full
/// sequence of component width at most 2^(d+1).
///
/// While more than 2^(d+1) parts remain, the deepest node whose leaf set
/// has at least 2^d + 1 parts is selected; two of its parts share their
/// black neighborhood outside the subtree (pigeonhole on at most 2^d
/// traces) and are contracted, the tree shrinking by one leaf. Red edges
/// stay confined inside selected subtrees, so red components never exceed
/// 2^(d+1) parts; the final 2^(d+1) parts are contracted in ascending id
/// order. A missing trace pair or a red edge crossing a large cut means
/// the width precondition fails, which is reported as an error.
pub fn bd_to_sequence(
    g: &Graph,
    t: &BranchDecomposition,
    d: usize,
) -> Result<ContractionSequence, ConvertError> {
    t.validate(g.n())?;
    let n = g.n();
    let mut tri = Trigraph::from_graph(g, LoopConvention::WithLoops);
    let cap = tri.capacity();
    let mut surgery = Surgery::from_bd(t);
    let mut steps: Vec<(usize, usize)> = Vec::new();
    let floor = pow2(d) + 1;
    let ceiling = pow2(d + 1);

    while tri.vertex_count() > ceiling {
        let step = steps.len() + 1;
        let (order, sets, depth) = surgery.part_sets(cap);

        // invariant check: every cut of at least 2^d + 1 parts is all-black
        for &node in &order {
            if node == surgery.root || sets[node].count() < floor {
                continue;
            }
            let mut outside = tri.live().clone();
            outside.difference_with(&sets[node]);
            for p in sets[node].iter() {
                if tri.red_neighbors(p).intersects(&outside) {
                    return Err(ConvertError::WidthExceeded {
                        d,
                        step,
                        reason: format!("red edge crosses the cut below node {node}"),
                    });
                }
            }
        }

        let v = order
            .iter()
            .copied()
            .filter(|&x| x != surgery.root && sets[x].count() >= floor)
            .min_by_key(|&x| {
                (
                    std::cmp::Reverse(depth[x]),
                    sets[x].count(),
                    sets[x].first().unwrap_or(usize::MAX),
                )
            })
            .expect("a deepest node of at least 2^d + 1 parts exists while the tree is large");
        debug_assert!(sets[v].count() <= ceiling);

        let mut outside = tri.live().clone();
        outside.difference_with(&sets[v]);
        let parts: Vec<usize> = sets[v].iter().collect();
        let mut pair = None;
        'outer: for (i, &x) in parts.iter().enumerate() {
            let tx = tri.black_neighbors(x).intersection(&outside);
            for &y in parts.iter().skip(i + 1) {
                if tri.black_neighbors(y).intersection(&outside) == tx {
                    pair = Some((x, y));
                    break 'outer;
                }
            }
        }
        let (x, y) = pair.ok_or(ConvertError::WidthExceeded {
            d,
            step,
            reason: "no two parts share their neighborhood outside the selected subtree".into(),
        })?;

        let fresh = n + steps.len();
        tri = tri.contract(x, y, fresh).expect("live pair");
        steps.push((x, y));
        surgery.delete_leaf(y);
        surgery.relabel_leaf(x, fresh);
    }

    // at most 2^(d+1) parts left: any order keeps components small
    while tri.vertex_count() > 1 {
        let mut live = tri.live().iter();
        let a = live.next().unwrap();
        let b = live.next().unwrap();
        let fresh = n + steps.len();
        tri = tri.contract(a, b, fresh).expect("live pair");
        steps.push((a, b));
    }

    Ok(ContractionSequence::new(n, steps).expect("surgery emits live merges"))
}

/// Converts a full sequence of component width `d` into a decomposition of
/// boolean-width at most 2^d, by maintaining a star at the root whose
/// subtrees are the red components and merging them with binary combs as
/// components fuse.
pub fn sequence_to_bd(
    g: &Graph,
    s: &ContractionSequence,
) -> Result<BranchDecomposition, ConvertError> {
    if s.n() != g.n() {
        return Err(ConvertError::SizeMismatch);
    }
    if !s.is_full() {
        return Err(ConvertError::NotFull);
    }
    let n = g.n();

    // arena: 0 is the star root, 1..=n the vertex leaves
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut leaf_vertex: Vec<Option<usize>> = vec![None];
    let mut min_vertex: Vec<usize> = vec![usize::MAX];
    for v in 0..n {
        parent.push(Some(0));
        children.push(Vec::new());
        leaf_vertex.push(Some(v));
        min_vertex.push(v);
        children[0].push(v + 1);
    }
    // subtree root of each live part's red component
    let mut comp_node: HashMap<usize, usize> = (0..n).map(|v| (v, v + 1)).collect();

    let mut replay = Replay::new(g, s, LoopConvention::WithLoops)?;
    while let Some((u, v, z)) = replay.step() {
        let tri = replay.trigraph();
        let comp = tri
            .red_components()
            .into_iter()
            .find(|c| c.contains(z))
            .expect("fresh part is live");
        let mut fused: Vec<usize> = Vec::new();
        for part in comp.iter().filter(|&p| p != z).chain([u, v]) {
            let node = comp_node[&part];
            if !fused.contains(&node) {
                fused.push(node);
            }
        }
        let top = if fused.len() == 1 {
            fused[0]
        } else {
            fused.sort_by_key(|&node| min_vertex[node]);
            children[0].retain(|c| !fused.contains(c));
            let mut top = fused[0];
            for &next in &fused[1..] {
                let comb = parent.len();
                parent.push(None);
                children.push(vec![top, next]);
                leaf_vertex.push(None);
                min_vertex.push(min_vertex[top].min(min_vertex[next]));
                parent[top] = Some(comb);
                parent[next] = Some(comb);
                top = comb;
            }
            parent[top] = Some(0);
            children[0].push(top);
            top
        };
        for part in comp.iter() {
            comp_node.insert(part, top);
        }
        comp_node.remove(&u);
        comp_node.remove(&v);
        comp_node.insert(z, top);

        // structure invariants: star root over one subtree per component,
        // all other internal nodes binary
        debug_assert_eq!(children[0].len(), tri.red_components().len());
        debug_assert!((1..parent.len())
            .all(|x| leaf_vertex[x].is_some() || children[x].len() == 2 || parent[x].is_none()));
    }

    // the star root now has a single child: drop it and re-root
    debug_assert_eq!(children[0].len(), 1);
    let new_root = children[0][0];
    parent[new_root] = None;

    // compact the arena, skipping the old star root
    let alive: Vec<usize> = {
        let mut order = Vec::new();
        let mut stack = vec![new_root];
        while let Some(x) = stack.pop() {
            order.push(x);
            stack.extend(children[x].iter().copied());
        }
        order
    };
    let mut remap: HashMap<usize, usize> = HashMap::new();
    for (i, &x) in alive.iter().enumerate() {
        remap.insert(x, i);
    }
    let parent_out: Vec<Option<usize>> = alive
        .iter()
        .map(|&x| parent[x].map(|p| remap[&p]))
        .collect();
    let leaf_out: Vec<Option<usize>> = alive.iter().map(|&x| leaf_vertex[x]).collect();
    Ok(BranchDecomposition::new(parent_out, leaf_out, false)?)
}

/// Leaf order along the internal path of a linear decomposition.
fn linear_leaf_order(t: &BranchDecomposition, n: usize) -> Result<Vec<usize>, ConvertError> {
    if !t.is_linear_structure() {
        return Err(ConvertError::NotLinear);
    }
    let internals: Vec<usize> = (0..t.node_count()).filter(|&x| !t.is_leaf(x)).collect();
    if internals.is_empty() {
        // single leaf
        return Ok(vec![t
            .leaf_vertex(t.root())
            .ok_or(BdError::LeafMismatch)?]);
    }
    // adjacency of internal nodes along the unrooted path
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &x in &internals {
        adj.entry(x).or_default();
        if let Some(p) = t.parent(x) {
            if !t.is_leaf(p) {
                adj.entry(x).or_default().push(p);
                adj.entry(p).or_default().push(x);
            }
        }
    }
    let leaf_children = |x: usize| -> Vec<usize> {
        let mut vs: Vec<usize> = t
            .children(x)
            .iter()
            .filter_map(|&c| t.leaf_vertex(c))
            .collect();
        vs.sort();
        vs
    };
    let mut endpoints: Vec<usize> = internals
        .iter()
        .copied()
        .filter(|x| adj[x].len() <= 1)
        .collect();
    endpoints.sort_by_key(|&x| leaf_children(x).first().copied().unwrap_or(usize::MAX));
    let start = endpoints[0];
    let mut order = Vec::with_capacity(n);
    let mut prev = None;
    let mut here = start;
    loop {
        order.extend(leaf_children(here));
        let next = adj[&here].iter().copied().find(|&x| Some(x) != prev);
        match next {
            Some(nx) => {
                prev = Some(here);
                here = nx;
            }
            None => break,
        }
    }
    if order.len() != n {
        return Err(ConvertError::Bd(BdError::LeafMismatch));
    }
    Ok(order)
}

/// Converts a linear decomposition of boolean-width at most `d` into a
/// full sequence of total width at most 2^d + 1 + C(2^d + 1, 2).
///
/// The suffix window of 2^d + 1 leaves is the unique minimal subtree with
/// that many leaves, so by pigeonhole two of its parts trace equally onto
/// the prefix and can be contracted. Red edges stay inside the sliding
/// window (of at most 2^d + 1 live parts, loops included on those parts
/// only), which gives the bound; contracting the deepest equal-trace pair
/// keeps a twin-rich graph growing one part instead of several.
pub fn linear_bd_to_sequence(
    g: &Graph,
    t: &BranchDecomposition,
    d: usize,
) -> Result<ContractionSequence, ConvertError> {
    t.validate(g.n())?;
    let n = g.n();
    let window = pow2(d) + 1;
    let mut ord = linear_leaf_order(t, n)?;
    let mut tri = Trigraph::from_graph(g, LoopConvention::WithLoops);
    let cap = tri.capacity();
    let mut steps: Vec<(usize, usize)> = Vec::new();

    while ord.len() > 1 {
        let step = steps.len() + 1;
        let count = ord.len();
        let wstart = count.saturating_sub(window);
        let mut prefix_mask = Bitset::new(cap);
        for &p in &ord[..wstart] {
            prefix_mask.insert(p);
        }
        // red edges must live inside the window
        for &p in &ord[..wstart] {
            if !tri.red_neighbors(p).is_empty() {
                return Err(ConvertError::WidthExceeded {
                    d,
                    step,
                    reason: format!("red edge touches part {p} outside the suffix window"),
                });
            }
        }
        let mut pair = None;
        'outer: for j in (wstart..count).rev() {
            let ty = tri.black_neighbors(ord[j]).intersection(&prefix_mask);
            for i in (wstart..j).rev() {
                if tri.black_neighbors(ord[i]).intersection(&prefix_mask) == ty {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = pair.ok_or(ConvertError::WidthExceeded {
            d,
            step,
            reason: "no two window parts share their neighborhood on the prefix".into(),
        })?;
        let fresh = n + steps.len();
        let (x, y) = (ord[i], ord[j]);
        tri = tri.contract(x, y, fresh).expect("live pair");
        steps.push((x, y));
        ord[i] = fresh;
        ord.remove(j);
    }

    Ok(ContractionSequence::new(n, steps).expect("window merges are live"))
}

/// Converts a full sequence of total width `d` into a linear decomposition
/// of boolean-width at most 2^d: vertices are ordered by the contraction
/// step that first absorbed them into a non-singleton part, and the
/// caterpillar of that order is returned.
pub fn sequence_to_linear_bd(
    g: &Graph,
    s: &ContractionSequence,
) -> Result<BranchDecomposition, ConvertError> {
    if s.n() != g.n() {
        return Err(ConvertError::SizeMismatch);
    }
    if !s.is_full() {
        return Err(ConvertError::NotFull);
    }
    let n = g.n();
    if n == 1 {
        return Ok(BranchDecomposition::caterpillar(&[0]));
    }
    let mut contents: Vec<Bitset> = (0..n).map(|v| Bitset::singleton(n, v)).collect();
    contents.resize(2 * n - 1, Bitset::new(n));
    let mut entry = vec![usize::MAX; n];
    for (k, &(u, v)) in s.steps().iter().enumerate() {
        let merged = contents[u].union(&contents[v]);
        for w in merged.iter() {
            if entry[w] == usize::MAX {
                entry[w] = k;
            }
        }
        contents[n + k] = merged;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (entry[v], v));
    Ok(BranchDecomposition::caterpillar(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::testgraphs::{demo7, demo7_sequence};
    use crate::widths::{sequence_width, verify_sequence, Measure};

    /// Independent boolean-width oracle: enumerate every subset of the cut
    /// side and count the distinct neighborhoods on the other side.
    pub(crate) fn brute_force_cut_width(g: &Graph, x: &Bitset) -> f64 {
        let n = g.n();
        let mut y = Bitset::full(n);
        y.difference_with(x);
        let xs: Vec<usize> = x.iter().collect();
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

    pub(crate) fn brute_force_bd_width(g: &Graph, t: &BranchDecomposition) -> f64 {
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

    #[test]
    fn cut_profile_basics() {
        // complete join across the cut: closure {∅, Y}
        let g = generate::biclique(3, 3);
        let x = Bitset::from_indices(6, [0, 1, 2]);
        let p = cut_profile(&g, &x, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(p.boolean_width(), Some(1.0));

        // no crossing edges
        let g2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let x2 = Bitset::from_indices(4, [0, 1]);
        let p2 = cut_profile(&g2, &x2, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(p2.boolean_width(), Some(0.0));

        // perfect matching of size 4: closure has 2^4 elements
        let g3 = Graph::from_edges(8, (0..4).map(|i| (i, i + 4))).unwrap();
        let x3 = Bitset::from_indices(8, [0, 1, 2, 3]);
        let p3 = cut_profile(&g3, &x3, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(p3.union_closure_size, 16);
        assert_eq!(p3.boolean_width(), Some(4.0));

        let full = Bitset::full(8);
        assert_eq!(cut_profile(&g3, &full, 10), Err(CutError::TrivialCut));
    }

    #[test]
    fn profile_bracket_holds() {
        for seed in 0..20 {
            let g = generate::erdos_renyi(8, 0.5, seed);
            for mask in 1u64..255 {
                let mut x = Bitset::new(8);
                for b in 0..8 {
                    if mask >> b & 1 == 1 {
                        x.insert(b);
                    }
                }
                let p = cut_profile(&g, &x, DEFAULT_CLOSURE_CAP).unwrap();
                let w = p.boolean_width().unwrap();
                let (lo, hi) = p.bracket();
                assert!(lo <= w + 1e-9 && w <= hi + 1e-9);
            }
        }
    }

    #[test]
    fn bd_width_matches_brute_force() {
        for seed in 0..10 {
            let g = generate::erdos_renyi(8, 0.45, seed);
            let t = BranchDecomposition::balanced(8);
            let w = match bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap() {
                BoolWidth::Exact(w) => w,
                other => panic!("expected exact width, got {other:?}"),
            };
            assert!((w - brute_force_bd_width(&g, &t)).abs() < 1e-9);
        }
    }

    #[test]
    fn bd_width_of_cliques_is_one() {
        let g = generate::clique(6);
        let t = BranchDecomposition::balanced(6);
        assert_eq!(
            bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap(),
            BoolWidth::Exact(1.0)
        );
    }

    #[test]
    fn bd_width_of_path_caterpillar_is_one() {
        let g = generate::path(6);
        let order: Vec<usize> = (0..6).collect();
        let t = BranchDecomposition::caterpillar(&order);
        assert!(t.is_linear_structure());
        assert_eq!(
            bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap(),
            BoolWidth::Exact(1.0)
        );
    }

    #[test]
    fn closure_cap_yields_bracket() {
        let g = generate::erdos_renyi(10, 0.5, 1);
        let x = Bitset::from_indices(10, 0..5);
        let p = cut_profile(&g, &x, 2).unwrap();
        assert!(!p.exact);
        assert!(p.union_closure_size > 2);
        let (lo, hi) = p.bracket();
        assert!(lo <= hi);
    }

    #[test]
    fn k8_converts_within_component_bound() {
        let g = generate::clique(8);
        let t = BranchDecomposition::balanced(8);
        let s = bd_to_sequence(&g, &t, 1).unwrap();
        assert!(s.is_full());
        let w = sequence_width(&g, &s, Measure::Component).unwrap();
        assert!(w <= 4, "component width {w} exceeds 2^(d+1)");
    }

    #[test]
    fn single_edge_converts() {
        let g = generate::path(2);
        let t = BranchDecomposition::balanced(2);
        let s = bd_to_sequence(&g, &t, 0).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn grid_converts_within_component_bound() {
        let g = generate::grid(4, 4);
        let t = BranchDecomposition::balanced(16);
        let w = match bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap() {
            BoolWidth::Exact(w) => w.ceil() as usize,
            BoolWidth::Bracket { hi, .. } => hi.ceil() as usize,
        };
        let s = bd_to_sequence(&g, &t, w).unwrap();
        let comp = sequence_width(&g, &s, Measure::Component).unwrap();
        assert!(comp <= pow2(w + 1), "{comp} > 2^({w}+1)");
    }

    #[test]
    fn twin_sequence_on_k4_converts_to_narrow_bd() {
        let g = generate::clique(4);
        let s = ContractionSequence::new(4, [(0, 1), (2, 4), (3, 5)]).unwrap();
        let d = sequence_width(&g, &s, Measure::Component).unwrap();
        assert_eq!(d, 1);
        let t = sequence_to_bd(&g, &s).unwrap();
        t.validate(4).unwrap();
        let w = brute_force_bd_width(&g, &t);
        assert!(w <= pow2(d) as f64);
        assert!((w - 1.0).abs() < 1e-9);
    }

    #[test]
    fn demo7_sequence_roundtrips_through_bd() {
        let g = demo7();
        let s = demo7_sequence();
        let d = sequence_width(&g, &s, Measure::Component).unwrap();
        let t = sequence_to_bd(&g, &s).unwrap();
        t.validate(7).unwrap();
        assert!(brute_force_bd_width(&g, &t) <= pow2(d) as f64);
    }

    #[test]
    fn single_edge_sequence_to_bd() {
        let g = generate::path(2);
        let s = ContractionSequence::new(2, [(0, 1)]).unwrap();
        let t = sequence_to_bd(&g, &s).unwrap();
        assert_eq!(t.node_count(), 3);
        t.validate(2).unwrap();
    }

    #[test]
    fn linear_forward_p6() {
        let g = generate::path(6);
        let order: Vec<usize> = (0..6).collect();
        let t = BranchDecomposition::caterpillar(&order);
        let s = linear_bd_to_sequence(&g, &t, 1).unwrap();
        let w = sequence_width(&g, &s, Measure::Total).unwrap();
        assert!(w <= 6, "total width {w} exceeds 2^d + 1 + C(2^d+1, 2)");
    }

    #[test]
    fn linear_forward_clique_total_width_one() {
        let g = generate::clique(7);
        let order: Vec<usize> = (0..7).collect();
        let t = BranchDecomposition::caterpillar(&order);
        let s = linear_bd_to_sequence(&g, &t, 1).unwrap();
        assert!(sequence_width(&g, &s, Measure::Total).unwrap() <= 1);
    }

    #[test]
    fn linear_forward_single_vertex() {
        let g = Graph::from_edges(1, []).unwrap();
        let t = BranchDecomposition::caterpillar(&[0]);
        let s = linear_bd_to_sequence(&g, &t, 0).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn linear_reverse_path_order() {
        let g = generate::path(4);
        let s = ContractionSequence::new(4, [(0, 1), (4, 2), (5, 3)]).unwrap();
        let t = sequence_to_linear_bd(&g, &s).unwrap();
        assert!(t.is_linear_structure() && t.linear_flag());
        assert_eq!(linear_leaf_order(&t, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn linear_reverse_single_edge() {
        let g = generate::path(2);
        let s = ContractionSequence::new(2, [(0, 1)]).unwrap();
        let t = sequence_to_linear_bd(&g, &s).unwrap();
        assert_eq!(t.node_count(), 3);
        t.validate(2).unwrap();
    }

    #[test]
    fn linear_reverse_respects_bound() {
        for seed in 0..10 {
            let g = generate::erdos_renyi(8, 0.4, seed);
            let s = crate::builders::greedy_sequence(&g, Measure::Total).sequence;
            let d = sequence_width(&g, &s, Measure::Total).unwrap();
            let t = sequence_to_linear_bd(&g, &s).unwrap();
            let w = brute_force_bd_width(&g, &t);
            assert!(
                w <= pow2(d) as f64 + 1e-9,
                "linear boolean-width {w} > 2^{d} (seed {seed})"
            );
        }
    }

    #[test]
    fn conversion_rejects_partial_sequences() {
        let g = generate::path(4);
        let s = ContractionSequence::new(4, [(0, 1)]).unwrap();
        assert!(matches!(sequence_to_bd(&g, &s), Err(ConvertError::NotFull)));
        assert!(matches!(
            sequence_to_linear_bd(&g, &s),
            Err(ConvertError::NotFull)
        ));
    }

    #[test]
    fn forward_conversion_detects_underestimated_width() {
        // a 4x4 grid has boolean-width well above 0 on a balanced tree
        let g = generate::grid(4, 4);
        let t = BranchDecomposition::balanced(16);
        assert!(matches!(
            bd_to_sequence(&g, &t, 0),
            Err(ConvertError::WidthExceeded { .. })
        ));
    }

    /// Boolean-width of a cut never increases when a vertex is deleted.
    #[test]
    fn cut_width_monotone_under_vertex_deletion() {
        for seed in 0..8 {
            let g = generate::erdos_renyi(8, 0.5, seed);
            let x = Bitset::from_indices(8, [0, 2, 4, 6]);
            let before = brute_force_cut_width(&g, &x);
            for gone in 0..8usize {
                let keep: Vec<usize> = (0..8).filter(|&v| v != gone).collect();
                let relabel: Vec<Option<usize>> = {
                    let mut map = vec![None; 8];
                    for (new, &old) in keep.iter().enumerate() {
                        map[old] = Some(new);
                    }
                    map
                };
                let edges = g
                    .edges()
                    .into_iter()
                    .filter_map(|(u, v)| Some((relabel[u]?, relabel[v]?)));
                let h = Graph::from_edges(7, edges).unwrap();
                let xs = Bitset::from_indices(7, x.iter().filter_map(|v| relabel[v]));
                if xs.is_empty() || xs.count() == 7 {
                    continue;
                }
                let after = brute_force_cut_width(&h, &xs);
                assert!(after <= before + 1e-9, "deleting {gone} raised the width");
            }
        }
    }

    #[test]
    fn verify_sequences_from_conversion() {
        let g = demo7();
        let t = BranchDecomposition::balanced(7);
        let w = match bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap() {
            BoolWidth::Exact(w) => w.ceil() as usize,
            BoolWidth::Bracket { hi, .. } => hi.ceil() as usize,
        };
        let s = bd_to_sequence(&g, &t, w).unwrap();
        assert!(verify_sequence(&g, &s, pow2(w + 1), Measure::Component)
            .unwrap()
            .is_ok());
    }
}
