//! q-coloring driven by a contraction sequence of bounded component
//! width, cross-checked against brute force, with witness extraction.
//!
//!     cargo run --example coloring

use twinwidth::builders::greedy_sequence;
use twinwidth::coloring::{chromatic_oracle, is_proper_coloring, q_coloring, q_coloring_extract};
use twinwidth::generate;
use twinwidth::widths::{sequence_width, Measure};
use twinwidth::Graph;

fn main() {
    let petersen = Graph::from_edges(
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
    .unwrap();

    let s = greedy_sequence(&petersen, Measure::Component).sequence;
    let d = sequence_width(&petersen, &s, Measure::Component).unwrap();
    println!("Petersen graph, greedy sequence of component width {d}");

    for q in 1..=4 {
        let out = q_coloring(&petersen, &s, q, d).unwrap();
        let brute = chromatic_oracle(&petersen, q).unwrap();
        println!(
            "  q = {q}: {} (oracle agrees: {}, worst contraction examined {} profile combos)",
            if out.colorable { "YES" } else { "NO" },
            out.colorable == brute,
            out.max_combinations
        );
    }

    let out = q_coloring_extract(&petersen, &s, 3, d).unwrap();
    let coloring = out.coloring.expect("3-colorable");
    assert!(is_proper_coloring(&petersen, &coloring, 3));
    println!("  a proper 3-coloring: {coloring:?}");

    let blown = generate::blowup(&generate::cycle(5), 3);
    let s = greedy_sequence(&blown, Measure::Component).sequence;
    let d = sequence_width(&blown, &s, Measure::Component).unwrap();
    // chromatic number of C5 blown up by cliques of 3 is 8
    for q in [7, 8] {
        let out = q_coloring(&blown, &s, q, d).unwrap();
        println!(
            "  C5 blowup x3 (n = {}), q = {q}: {}",
            blown.n(),
            if out.colorable { "YES" } else { "NO" }
        );
    }
}
