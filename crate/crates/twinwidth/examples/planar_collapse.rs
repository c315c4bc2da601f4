//! Planar graphs always offer a twins-or-adjacent pair whose merge has
//! degree at most 9, so the bounded-degree builder collapses them fully
//! while the red out-degree stays at most 9 at every step.
//!
//!     cargo run --release --example planar_collapse

use twinwidth::builders::{contractible_sequence, PairPredicate};
use twinwidth::generate;
use twinwidth::widths::{verify_sequence, Measure, VerifyOutcome};

fn main() {
    let corpus = [
        ("6x6 grid".to_string(), generate::grid(6, 6)),
        ("10x10 grid".to_string(), generate::grid(10, 10)),
        ("icosahedron".to_string(), generate::icosahedron()),
        (
            "random triangulation (n=40)".to_string(),
            generate::planar_triangulation(40, 1),
        ),
    ];
    for (name, g) in corpus {
        match contractible_sequence(&g, 9, PairPredicate::TwinsOrAdjacent) {
            Ok(report) => {
                let check = verify_sequence(&g, &report.sequence, 9, Measure::Oriented).unwrap();
                let verdict = match check {
                    VerifyOutcome::Ok { width } => format!("oriented width {width} <= 9"),
                    VerifyOutcome::Violation(v) => format!("VIOLATION at step {}", v.step),
                };
                println!(
                    "{name}: {} steps, achieved oriented width {}, verifier: {}",
                    report.sequence.len(),
                    report.achieved_width,
                    verdict
                );
            }
            Err(stuck) => println!("{name}: stuck at step {}", stuck.step),
        }
    }

    // a non-planar contrast: K7 has no merge of degree <= 4
    let k7 = generate::clique(7);
    match contractible_sequence(&k7, 4, PairPredicate::TwinsOrAdjacent) {
        Ok(_) => println!("K7 with d=4: collapsed (merged degrees stay at 5)"),
        Err(stuck) => println!(
            "K7 with d=4: stuck at step {} (best merged degree {:?})",
            stuck.step, stuck.min_merged_degree
        ),
    }
}
