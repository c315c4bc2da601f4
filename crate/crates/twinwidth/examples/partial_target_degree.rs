//! Partial contraction sequences: stop once the total graph is sparse
//! instead of contracting down to a single vertex. A blowup of C5
//! collapses module by module, with no red edge ever appearing, until the
//! plain 5-cycle remains.
//!
//!     cargo run --example partial_target_degree

use twinwidth::builders::{final_total_degree, partial_sequence_to_degree, PartialStop};
use twinwidth::generate;

fn main() {
    let base = generate::cycle(5);
    let g = generate::blowup(&base, 4);
    println!("C5 blowup x4: n = {}, m = {}", g.n(), g.m());

    let out = partial_sequence_to_degree(&g, 0, 2);
    let stop = match out.stop {
        PartialStop::DegreeTarget => "total degree target reached",
        PartialStop::Exhausted => "no admissible contraction left",
    };
    println!(
        "partial sequence with red degree <= 0 toward max total degree 2: {} steps ({stop})",
        out.report.sequence.len()
    );
    println!(
        "  red width along the way: {}, final total-graph degree: {}",
        out.report.achieved_width,
        final_total_degree(&g, &out.report.sequence).unwrap()
    );

    // a denser target that cannot be met twin-freely
    let grid = generate::grid(4, 4);
    let out = partial_sequence_to_degree(&grid, 0, 2);
    println!(
        "4x4 grid with red degree <= 0: stops after {} steps ({:?})",
        out.report.sequence.len(),
        out.stop
    );
    let out = partial_sequence_to_degree(&grid, 2, 3);
    println!(
        "4x4 grid with red degree <= 2 toward degree 3: {} steps, red width {}, final degree {}",
        out.report.sequence.len(),
        out.report.achieved_width,
        final_total_degree(&grid, &out.report.sequence).unwrap()
    );
}
