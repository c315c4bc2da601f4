//! Replay a contraction sequence step by step, printing the four width
//! measures of every intermediate trigraph, then verify it against a
//! degree bound.
//!
//!     cargo run --example verify_sequence

use twinwidth::sequence::{ContractionSequence, Replay};
use twinwidth::trigraph::LoopConvention;
use twinwidth::widths::{step_widths, verify_sequence, Measure, VerifyOutcome};
use twinwidth::Graph;

fn main() {
    // 7 vertices a..g; contracting ef, ad, b+ef, ad+g, c+bef, then the
    // rest keeps the red degree at 2 throughout.
    let g = Graph::from_edges(
        7,
        [
            (0, 1),
            (0, 3),
            (0, 5),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 6),
            (4, 6),
            (5, 6),
        ],
    )
    .unwrap();
    let s =
        ContractionSequence::new(7, [(4, 5), (0, 3), (1, 7), (8, 6), (2, 9), (10, 11)]).unwrap();

    println!("step   merge        oriented degree component total");
    let mut replay = Replay::new(&g, &s, LoopConvention::WithLoops).unwrap();
    loop {
        let w = step_widths(&g, replay.partition());
        let label = match replay.steps_done() {
            0 => "start".to_string(),
            k => {
                let (u, v) = s.steps()[k - 1];
                format!("{} + {}", u + 1, v + 1)
            }
        };
        println!(
            "{:>4}   {:<12} {:>8} {:>6} {:>9} {:>5}",
            replay.steps_done(),
            label,
            w.oriented,
            w.degree,
            w.component,
            w.total
        );
        if replay.step().is_none() {
            break;
        }
    }

    for d in [2, 1] {
        match verify_sequence(&g, &s, d, Measure::Degree).unwrap() {
            VerifyOutcome::Ok { width } => println!("d = {d}: ok (width {width})"),
            VerifyOutcome::Violation(v) => println!(
                "d = {d}: violated at step {} with red degree {} (parts {:?})",
                v.step, v.value, v.parts
            ),
        }
    }
}
