//! Branch decompositions and contraction sequences converted both ways,
//! with the width bounds checked on the way through:
//! boolean-width d  ->  component width 2^(d+1), and component width d
//! ->  boolean-width 2^d (linear variants trade total width instead).
//!
//!     cargo run --example decomposition_roundtrip

use twinwidth::builders::greedy_sequence;
use twinwidth::decomposition::{
    bd_boolean_width, bd_to_sequence, linear_bd_to_sequence, sequence_to_bd, sequence_to_linear_bd,
    BoolWidth, BranchDecomposition, DEFAULT_CLOSURE_CAP,
};
use twinwidth::generate;
use twinwidth::widths::{sequence_width, Measure};

fn main() {
    let g = generate::grid(3, 3);
    let t = BranchDecomposition::balanced(g.n());
    let bw = match bd_boolean_width(&g, &t, DEFAULT_CLOSURE_CAP).unwrap() {
        BoolWidth::Exact(w) => w,
        BoolWidth::Bracket { hi, .. } => hi,
    };
    let d = bw.ceil() as usize;
    println!("3x3 grid, balanced decomposition: boolean-width {bw:.3} (d = {d})");

    let s = bd_to_sequence(&g, &t, d).unwrap();
    let comp = sequence_width(&g, &s, Measure::Component).unwrap();
    println!(
        "  -> sequence of component width {comp} (bound 2^(d+1) = {})",
        1 << (d + 1)
    );

    let back = sequence_to_bd(&g, &s).unwrap();
    let bw_back = match bd_boolean_width(&g, &back, DEFAULT_CLOSURE_CAP).unwrap() {
        BoolWidth::Exact(w) => w,
        BoolWidth::Bracket { hi, .. } => hi,
    };
    println!(
        "  -> back to a decomposition of boolean-width {bw_back:.3} (bound 2^{comp} = {})",
        1u64 << comp
    );

    // the linear pair, on a path where everything is tight
    let p = generate::path(8);
    let order: Vec<usize> = (0..8).collect();
    let lt = BranchDecomposition::caterpillar(&order);
    let lbw = match bd_boolean_width(&p, &lt, DEFAULT_CLOSURE_CAP).unwrap() {
        BoolWidth::Exact(w) => w,
        BoolWidth::Bracket { hi, .. } => hi,
    };
    let ld = lbw.ceil() as usize;
    let ls = linear_bd_to_sequence(&p, &lt, ld).unwrap();
    let total = sequence_width(&p, &ls, Measure::Total).unwrap();
    let k = (1usize << ld) + 1;
    println!(
        "P8, path-order caterpillar: linear boolean-width {lbw:.3}, total width {total} (bound {})",
        k + k * (k - 1) / 2
    );

    let gs = greedy_sequence(&p, Measure::Total);
    let lback = sequence_to_linear_bd(&p, &gs.sequence).unwrap();
    println!(
        "P8 greedy total-width-{} sequence -> linear decomposition ({} nodes, linear: {})",
        gs.achieved_width,
        lback.node_count(),
        lback.is_linear_structure()
    );
}
