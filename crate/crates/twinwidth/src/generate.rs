//! Deterministic instance generators for tests, corpora and the CLI.

use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

pub fn clique(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))).unwrap()
}

/// Complete bipartite graph with sides `0..a` and `a..a+b`.
pub fn biclique(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// `w x h` grid; vertex (i, j) is `i * h + j`.
pub fn grid(w: usize, h: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..w {
        for j in 0..h {
            let v = i * h + j;
            if j + 1 < h {
                edges.push((v, v + 1));
            }
            if i + 1 < w {
                edges.push((v, v + h));
            }
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

/// Grid with both diagonals added in every facial square, turning each
/// cell into a K4.
pub fn grid_with_diagonals(w: usize, h: usize) -> Graph {
    let mut edges = grid(w, h).edges();
    for i in 0..w.saturating_sub(1) {
        for j in 0..h.saturating_sub(1) {
            let v = i * h + j;
            edges.push((v, v + h + 1));
            edges.push((v + 1, v + h));
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

/// G(n, p) with a fixed seed.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Replaces every vertex of `base` by a clique module of `k` vertices;
/// adjacent modules are completely joined. Vertex `v` of the base becomes
/// `v*k .. (v+1)*k`.
pub fn blowup(base: &Graph, k: usize) -> Graph {
    assert!(k >= 1);
    let n = base.n() * k;
    let mut edges = Vec::new();
    for v in 0..base.n() {
        for a in 0..k {
            for b in (a + 1)..k {
                edges.push((v * k + a, v * k + b));
            }
        }
    }
    for (u, v) in base.edges() {
        for a in 0..k {
            for b in 0..k {
                edges.push((u * k + a, v * k + b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// The icosahedron: two apexes over a pentagonal antiprism. 12 vertices,
/// 30 edges, 5-regular, planar.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    // apex 0 over ring 1..=5, apex 11 under ring 6..=10
    for i in 0..5 {
        let a = 1 + i;
        let a_next = 1 + (i + 1) % 5;
        let b = 6 + i;
        let b_next = 6 + (i + 1) % 5;
        edges.push((0, a));
        edges.push((11, b));
        edges.push((a, a_next));
        edges.push((b, b_next));
        edges.push((a, b));
        edges.push((a, b_next));
    }
    Graph::from_edges(12, edges).unwrap()
}

/// Random stacked planar triangulation: starting from a triangle, each new
/// vertex is placed inside a random face and joined to its three corners.
pub fn planar_triangulation(n: usize, seed: u64) -> Graph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces = vec![[0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        edges.push((a, v));
        edges.push((b, v));
        edges.push((c, v));
        faces.push([a, b, v]);
        faces.push([a, c, v]);
        faces.push([b, c, v]);
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random cograph built from a random cotree of unions and joins.
pub fn random_cograph(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    build_cotree(&mut rng, 0, n, &mut edges);
    Graph::from_edges(n, edges).unwrap()
}

fn build_cotree(rng: &mut ChaCha8Rng, lo: usize, hi: usize, edges: &mut Vec<(usize, usize)>) {
    let n = hi - lo;
    if n <= 1 {
        return;
    }
    let split = lo + rng.gen_range(1..n);
    build_cotree(rng, lo, split, edges);
    build_cotree(rng, split, hi, edges);
    if rng.gen_bool(0.5) {
        // join
        for u in lo..split {
            for v in split..hi {
                edges.push((u, v));
            }
        }
    }
}
