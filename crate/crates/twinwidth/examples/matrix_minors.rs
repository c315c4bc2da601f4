//! The 0/1-matrix side: error values, corners, mixed minors, and the
//! brute-force matrix twin-width in free and symmetric modes.
//!
//!     cargo run --example matrix_minors

use twinwidth::generate;
use twinwidth::matrix::{
    error_value, find_corner, has_t_mixed_minor, is_mixed, matrix_twin_width_exact,
    matrix_twin_width_symmetric, Matrix, MatrixPartition, TwwResult, DEFAULT_TWW_BUDGET,
};

fn show(r: TwwResult) -> String {
    match r {
        TwwResult::Exact(w) => w.to_string(),
        TwwResult::Bracket { lo, hi } => format!("in {lo}..={hi}"),
    }
}

fn main() {
    let checkerboard = Matrix::from_rows(vec![
        vec![0, 1, 0, 1],
        vec![1, 0, 1, 0],
        vec![0, 1, 0, 1],
        vec![1, 0, 1, 0],
    ])
    .unwrap();
    println!("checkerboard 4x4:");
    println!("  mixed: {}", is_mixed(&checkerboard, 0..4, 0..4));
    println!("  corner at {:?}", find_corner(&checkerboard, 0..4, 0..4));
    for t in 1..=3 {
        println!(
            "  has {t}-mixed minor: {}",
            has_t_mixed_minor(&checkerboard, t).unwrap()
        );
    }
    let halves = MatrixPartition::new(
        &checkerboard,
        vec![vec![0, 1], vec![2, 3]],
        vec![vec![0, 1], vec![2, 3]],
    )
    .unwrap();
    println!(
        "  error value of the 2x2 block division: {}",
        error_value(&checkerboard, &halves)
    );

    let identity = Matrix::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap();
    println!(
        "2x2 identity twin-width: {} (every first merge already costs 2)",
        show(matrix_twin_width_exact(&identity, DEFAULT_TWW_BUDGET).unwrap())
    );

    let p4 = Matrix::adjacency(&generate::path(4), &[0, 1, 2, 3]);
    println!(
        "P4 adjacency: free {} / symmetric {}",
        show(matrix_twin_width_exact(&p4, DEFAULT_TWW_BUDGET).unwrap()),
        show(matrix_twin_width_symmetric(&p4, DEFAULT_TWW_BUDGET).unwrap())
    );

    let c5 = Matrix::adjacency(&generate::cycle(5), &[0, 1, 2, 3, 4]);
    println!(
        "C5 adjacency: symmetric {} (budget 3 gives {})",
        show(matrix_twin_width_symmetric(&c5, DEFAULT_TWW_BUDGET).unwrap()),
        show(matrix_twin_width_symmetric(&c5, 3).unwrap()),
    );
}
