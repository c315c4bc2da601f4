//! Contraction sequences of graphs and the width measures they induce.
//!
//! Iteratively merging two vertices until one remains, while marking
//! non-homogeneous pairs with red error edges, defines a family of graph
//! widths: twin-width (max red degree), oriented twin-width (max red
//! out-degree), component twin-width (max red component size) and total
//! twin-width (red edge count). This crate provides the trigraph
//! machinery, verifiers and builders for such sequences, constructive
//! conversions to and from branch decompositions via boolean-width, a
//! q-coloring solver driven by a bounded-component-width sequence, and the
//! corner/mixed-minor calculus of 0/1 matrices.
//!
//! Start with the runnable examples (`cargo run --example verify_sequence`)
//! or the `twinwidth` binary for the file-based command line interface.

pub mod bitset;
pub mod builders;
pub mod coloring;
pub mod decomposition;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod sequence;
pub mod trigraph;
pub mod widths;

#[cfg(test)]
pub(crate) mod testgraphs;

pub use bitset::Bitset;
pub use builders::{
    contractible_sequence, exact_width, greedy_sequence, partial_sequence_to_degree, BuildReport,
    PairPredicate, PartialReport, PartialStop,
};
pub use coloring::{chromatic_oracle, q_coloring, q_coloring_extract, ColoringOutcome};
pub use decomposition::{
    bd_boolean_width, bd_to_sequence, cut_profile, linear_bd_to_sequence, sequence_to_bd,
    sequence_to_linear_bd, BoolWidth, BranchDecomposition, CutProfile,
};
pub use graph::Graph;
pub use sequence::{apply_sequence, ContractionSequence, Partition, Replay};
pub use trigraph::{
    directed_red, is_homogeneous, is_homogeneous_to, quotient, DirectedTrigraph, LoopConvention,
    Trigraph,
};
pub use widths::{
    sequence_width, step_widths, step_widths_with_loops, verify_sequence, Measure, StepWidths,
    VerifyOutcome, Violation,
};
