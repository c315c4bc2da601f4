//! Cross-module structural invariants, checked exhaustively on small
//! vertex counts and by seeded sampling a size up.

mod common;

use common::{all_full_sequences, all_graphs};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twinwidth::bitset::Bitset;
use twinwidth::generate;
use twinwidth::graph::Graph;
use twinwidth::sequence::{ContractionSequence, Partition, Replay};
use twinwidth::trigraph::{directed_red, is_homogeneous_to, quotient, LoopConvention, Trigraph};

fn trigraphs_agree(a: &Trigraph, b: &Trigraph) -> bool {
    if a.live() != b.live() {
        return false;
    }
    let parts: Vec<usize> = a.live().iter().collect();
    for (i, &x) in parts.iter().enumerate() {
        if a.has_loop(x) != b.has_loop(x) {
            return false;
        }
        for &y in parts.iter().skip(i + 1) {
            if a.is_black(x, y) != b.is_black(x, y) || a.is_red(x, y) != b.is_red(x, y) {
                return false;
            }
        }
    }
    true
}

fn check_contract_quotient_agreement(g: &Graph, s: &ContractionSequence) {
    for convention in [LoopConvention::WithoutLoops, LoopConvention::WithLoops] {
        let mut replay = Replay::new(g, s, convention).unwrap();
        loop {
            let q = quotient(g, replay.partition(), convention);
            assert!(
                trigraphs_agree(replay.trigraph(), &q),
                "contract/quotient disagree: {:?} vs {:?} (graph {:?})",
                replay.trigraph(),
                q,
                g
            );
            if replay.step().is_none() {
                break;
            }
        }
    }
}

#[test]
fn iterated_contract_equals_quotient_exhaustive() {
    for n in 2..=4 {
        for g in all_graphs(n) {
            for s in all_full_sequences(n) {
                check_contract_quotient_agreement(&g, &s);
            }
        }
    }
    // n = 5 exhaustively over graphs, sampling sequences
    let sequences = all_full_sequences(5);
    let mut rng = StdRng::seed_from_u64(2024);
    for g in all_graphs(5) {
        for _ in 0..6 {
            let s = &sequences[rng.gen_range(0..sequences.len())];
            check_contract_quotient_agreement(&g, s);
        }
    }
}

#[test]
fn iterated_contract_equals_quotient_sampled_larger() {
    let mut rng = StdRng::seed_from_u64(7);
    for n in [6usize, 7] {
        for _ in 0..40 {
            let g = generate::erdos_renyi(n, rng.gen_range(0.2..0.8), rng.gen());
            let s = random_full_sequence(n, &mut rng);
            check_contract_quotient_agreement(&g, &s);
        }
    }
}

fn random_full_sequence(n: usize, rng: &mut StdRng) -> ContractionSequence {
    let mut live: Vec<usize> = (0..n).collect();
    let mut steps = Vec::new();
    while live.len() > 1 {
        let i = rng.gen_range(0..live.len());
        let mut j = rng.gen_range(0..live.len() - 1);
        if j >= i {
            j += 1;
        }
        let (u, v) = (live[i], live[j]);
        live.retain(|&x| x != u && x != v);
        live.push(n + steps.len());
        steps.push((u, v));
    }
    ContractionSequence::new(n, steps).unwrap()
}

/// Contracting two parts never changes edges between two other parts.
#[test]
fn contraction_is_local() {
    let mut rng = StdRng::seed_from_u64(99);
    for n in 2..=5 {
        for g in all_graphs(n) {
            let s = random_full_sequence(n, &mut rng);
            let mut replay = Replay::new(&g, &s, LoopConvention::WithLoops).unwrap();
            loop {
                let before = replay.trigraph().clone();
                let Some((u, v, z)) = replay.step() else {
                    break;
                };
                let after = replay.trigraph();
                for x in after.live().iter().filter(|&x| x != z) {
                    for y in after.live().iter().filter(|&y| y != z && y > x) {
                        assert_eq!(before.is_black(x, y), after.is_black(x, y));
                        assert_eq!(before.is_red(x, y), after.is_red(x, y));
                    }
                    assert_eq!(before.has_loop(x), after.has_loop(x));
                    let _ = (u, v);
                }
            }
        }
    }
}

/// In the directed quotient, every arc present after a contraction but
/// absent before leaves the contracted part. Exhaustive over all 5-vertex
/// graphs and all first contractions, then sampled deeper.
#[test]
fn new_arcs_leave_the_contracted_part() {
    for g in all_graphs(5) {
        let p0 = Partition::singletons(5);
        let d0 = directed_red(&g, &p0);
        for u in 0..5 {
            for v in (u + 1)..5 {
                let mut p = p0.clone();
                p.merge(u, v, 5).unwrap();
                let d1 = directed_red(&g, &p);
                for x in d1.live().iter() {
                    for y in d1.live().iter().filter(|&y| y != x) {
                        if d1.has_arc(x, y) && x != 5 && y != 5 && !d0.has_arc(x, y) {
                            panic!("fresh arc {x}->{y} does not leave the new part");
                        }
                        // arcs into the new part must already have existed
                        // toward one of the merged parts
                        if y == 5 && d1.has_arc(x, y) {
                            assert!(
                                d0.has_arc(x, u) || d0.has_arc(x, v),
                                "arc {x}->new appeared without a predecessor"
                            );
                        }
                    }
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..30 {
        let n = 6;
        let g = generate::erdos_renyi(n, rng.gen_range(0.2..0.8), rng.gen());
        let s = random_full_sequence(n, &mut rng);
        let mut replay = Replay::new(&g, &s, LoopConvention::WithoutLoops).unwrap();
        loop {
            let p_before = replay.partition().clone();
            let d_before = directed_red(&g, &p_before);
            let Some((u, v, z)) = replay.step() else {
                break;
            };
            let d_after = directed_red(&g, replay.partition());
            for x in d_after.live().iter() {
                for y in d_after.live().iter().filter(|&y| y != x) {
                    if !d_after.has_arc(x, y) || x == z {
                        continue;
                    }
                    let existed = if y == z {
                        d_before.has_arc(x, u) || d_before.has_arc(x, v)
                    } else {
                        d_before.has_arc(x, y)
                    };
                    assert!(existed, "fresh arc {x}->{y} with tail not at the new part");
                }
            }
        }
    }
}

/// Under the loop convention, every non-loop red edge of a quotient has
/// an endpoint with a red loop (a red edge needs a non-singleton part).
#[test]
fn red_edges_have_a_looped_endpoint() {
    let mut rng = StdRng::seed_from_u64(31);
    for n in 2..=5 {
        for g in all_graphs(n) {
            let s = random_full_sequence(n, &mut rng);
            let mut replay = Replay::new(&g, &s, LoopConvention::WithLoops).unwrap();
            loop {
                let t = replay.trigraph();
                for x in t.live().iter() {
                    for y in t.red_neighbors(x).iter() {
                        assert!(
                            t.has_loop(x) || t.has_loop(y),
                            "red edge {x}-{y} between two singleton parts"
                        );
                    }
                }
                if replay.step().is_none() {
                    break;
                }
            }
        }
    }
}

/// If z is homogeneous to x and to x' (disjoint), it is homogeneous to
/// their union.
#[test]
fn homogeneity_is_monotone_under_union() {
    let mut rng = StdRng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 2000 {
        let n = rng.gen_range(4..9);
        let g = generate::erdos_renyi(n, rng.gen_range(0.2..0.8), rng.gen());
        let mut assign = vec![0u8; n];
        for a in assign.iter_mut() {
            *a = rng.gen_range(0..4);
        }
        let pick = |k: u8| Bitset::from_indices(n, (0..n).filter(|&v| assign[v] == k));
        let (z, x, xp) = (pick(0), pick(1), pick(2));
        if z.is_empty() || x.is_empty() || xp.is_empty() {
            continue;
        }
        checked += 1;
        let to_x = is_homogeneous_to(&g, &z, &x).unwrap();
        let to_xp = is_homogeneous_to(&g, &z, &xp).unwrap();
        if to_x && to_xp {
            let both = x.union(&xp);
            assert!(
                is_homogeneous_to(&g, &z, &both).unwrap(),
                "union broke homogeneity"
            );
        }
    }
}
