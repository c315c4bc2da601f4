//! Exhaustive minimum twin-width versus the greedy upper bound on a batch
//! of random graphs.
//!
//!     cargo run --release --example exact_vs_greedy

use twinwidth::builders::{exact_width, greedy_sequence, DEFAULT_NODE_BUDGET};
use twinwidth::generate;
use twinwidth::widths::Measure;

fn main() {
    println!("  n    p   exact greedy nodes");
    let mut gaps = 0;
    for seed in 0..30u64 {
        let n = 5 + (seed % 3) as usize;
        let p = 0.2 + 0.2 * (seed % 4) as f64;
        let g = generate::erdos_renyi(n, p, seed);
        let exact = exact_width(&g, Measure::Degree, DEFAULT_NODE_BUDGET).unwrap();
        let greedy = greedy_sequence(&g, Measure::Degree);
        if greedy.achieved_width > exact.achieved_width {
            gaps += 1;
        }
        println!(
            "{:>3} {:>5.2} {:>6} {:>6} {:>6}",
            n, p, exact.achieved_width, greedy.achieved_width, exact.nodes_explored
        );
    }
    println!("greedy was suboptimal on {gaps} of 30 graphs");

    // structured families where the answer is known
    let k6 = generate::clique(6);
    println!(
        "K6 exact: {}",
        exact_width(&k6, Measure::Degree, DEFAULT_NODE_BUDGET)
            .unwrap()
            .achieved_width
    );
    let p7 = generate::path(7);
    println!(
        "P7 exact: {}",
        exact_width(&p7, Measure::Degree, DEFAULT_NODE_BUDGET)
            .unwrap()
            .achieved_width
    );
}
