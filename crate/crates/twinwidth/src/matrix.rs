//! The 0/1-matrix calculus: error values of partitions, vertical /
//! horizontal / mixed zones, corners, t-mixed minors, and brute-force
//! matrix twin-width on tiny matrices.
//!
//! A zone is vertical when every column is constant (m[i][j] = m[i+1][j]),
//! horizontal when every row is, and mixed when it is neither; a matrix is
//! mixed iff it contains a corner, a contiguous 2x2 mixed submatrix. The
//! error value of a partition is the largest number of non-constant zones
//! met by any one row or column part, and the matrix twin-width is the
//! least error value sustainable over a full contraction sequence of row
//! and column partitions.

use crate::graph::Graph;
use std::collections::HashMap;
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix data must be rectangular")]
    NotRectangular,
    #[error("matrix must be nonempty")]
    Empty,
    #[error("partition does not cover the index set exactly once")]
    BadPartition,
    #[error("operation requires a division (contiguous parts)")]
    NotDivision,
    #[error("need exactly {want} parts per side, got {rows} x {cols}")]
    WrongArity {
        want: usize,
        rows: usize,
        cols: usize,
    },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("symmetric mode needs a square symmetric matrix")]
    NotSymmetric,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Result<Matrix, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::NotRectangular);
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Matrix, MatrixError> {
        let r = rows.len();
        if r == 0 {
            return Err(MatrixError::Empty);
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::NotRectangular);
        }
        Matrix::new(r, c, rows.concat())
    }

    pub fn constant(rows: usize, cols: usize, value: u8) -> Matrix {
        Matrix::new(rows, cols, vec![value; rows * cols]).unwrap()
    }

    /// Adjacency matrix of a graph with rows and columns in `order`.
    pub fn adjacency(g: &Graph, order: &[usize]) -> Matrix {
        let n = order.len();
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = g.adjacent(order[i], order[j]) as u8;
            }
        }
        Matrix::new(n, n, data).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Simultaneous row/column relabeling: entry (i, j) of the result is
    /// entry (perm[i], perm[j]) of `self`. Requires a square matrix.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        assert_eq!(self.rows, self.cols);
        assert_eq!(perm.len(), self.rows);
        let n = self.rows;
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        Matrix::new(n, n, data).unwrap()
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A pair of a row-partition and a column-partition. Parts are arbitrary
/// index subsets; a division has every part contiguous.
#[derive(Clone, Debug)]
pub struct MatrixPartition {
    pub row_parts: Vec<Vec<usize>>,
    pub col_parts: Vec<Vec<usize>>,
}

impl MatrixPartition {
    pub fn new(
        m: &Matrix,
        row_parts: Vec<Vec<usize>>,
        col_parts: Vec<Vec<usize>>,
    ) -> Result<MatrixPartition, MatrixError> {
        validate_side(&row_parts, m.rows())?;
        validate_side(&col_parts, m.cols())?;
        Ok(MatrixPartition {
            row_parts,
            col_parts,
        })
    }

    pub fn finest(m: &Matrix) -> MatrixPartition {
        MatrixPartition {
            row_parts: (0..m.rows()).map(|i| vec![i]).collect(),
            col_parts: (0..m.cols()).map(|j| vec![j]).collect(),
        }
    }

    pub fn coarsest(m: &Matrix) -> MatrixPartition {
        MatrixPartition {
            row_parts: vec![(0..m.rows()).collect()],
            col_parts: vec![(0..m.cols()).collect()],
        }
    }

    pub fn is_division(&self) -> bool {
        side_is_division(&self.row_parts) && side_is_division(&self.col_parts)
    }
}

fn validate_side(parts: &[Vec<usize>], n: usize) -> Result<(), MatrixError> {
    let mut seen = vec![false; n];
    let mut count = 0;
    for part in parts {
        if part.is_empty() {
            return Err(MatrixError::BadPartition);
        }
        for &i in part {
            if i >= n || seen[i] {
                return Err(MatrixError::BadPartition);
            }
            seen[i] = true;
            count += 1;
        }
    }
    if count != n {
        return Err(MatrixError::BadPartition);
    }
    Ok(())
}

fn side_is_division(parts: &[Vec<usize>]) -> bool {
    parts.iter().all(|part| {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

fn zone_is_constant(m: &Matrix, rows: &[usize], cols: &[usize]) -> bool {
    let first = m.get(rows[0], cols[0]);
    rows.iter()
        .all(|&i| cols.iter().all(|&j| m.get(i, j) == first))
}

/// Maximum over all row and column parts of the number of non-constant
/// zones that part meets.
pub fn error_value(m: &Matrix, p: &MatrixPartition) -> usize {
    let mut worst = 0;
    let mut col_counts = vec![0usize; p.col_parts.len()];
    for rp in &p.row_parts {
        let mut row_count = 0;
        for (cj, cp) in p.col_parts.iter().enumerate() {
            if !zone_is_constant(m, rp, cp) {
                row_count += 1;
                col_counts[cj] += 1;
            }
        }
        worst = worst.max(row_count);
    }
    worst.max(col_counts.into_iter().max().unwrap_or(0))
}

/// Neither vertical (all columns constant) nor horizontal (all rows
/// constant) on the given contiguous ranges.
pub fn is_mixed(m: &Matrix, rows: Range<usize>, cols: Range<usize>) -> bool {
    let vertical = rows
        .clone()
        .take(rows.len().saturating_sub(1))
        .all(|i| cols.clone().all(|j| m.get(i, j) == m.get(i + 1, j)));
    if vertical {
        return false;
    }
    let horizontal = rows.clone().all(|i| {
        cols.clone()
            .take(cols.len().saturating_sub(1))
            .all(|j| m.get(i, j) == m.get(i, j + 1))
    });
    !horizontal
}

/// Top-left position of some contiguous 2x2 mixed submatrix inside the
/// ranges, scanning row-major. A zone has a corner iff it is mixed.
pub fn find_corner(m: &Matrix, rows: Range<usize>, cols: Range<usize>) -> Option<(usize, usize)> {
    for i in rows.start..rows.end.saturating_sub(1) {
        for j in cols.start..cols.end.saturating_sub(1) {
            if is_mixed(m, i..i + 2, j..j + 2) {
                return Some((i, j));
            }
        }
    }
    None
}

fn division_ranges(parts: &[Vec<usize>]) -> Vec<Range<usize>> {
    let mut ranges: Vec<Range<usize>> = parts
        .iter()
        .map(|p| {
            let lo = *p.iter().min().unwrap();
            let hi = *p.iter().max().unwrap();
            lo..hi + 1
        })
        .collect();
    ranges.sort_by_key(|r| r.start);
    ranges
}

/// Whether a t x t division witnesses a t-mixed minor: every zone mixed.
pub fn check_t_mixed_minor(
    m: &Matrix,
    division: &MatrixPartition,
    t: usize,
) -> Result<bool, MatrixError> {
    if !division.is_division() {
        return Err(MatrixError::NotDivision);
    }
    if division.row_parts.len() != t || division.col_parts.len() != t {
        return Err(MatrixError::WrongArity {
            want: t,
            rows: division.row_parts.len(),
            cols: division.col_parts.len(),
        });
    }
    let rows = division_ranges(&division.row_parts);
    let cols = division_ranges(&division.col_parts);
    Ok(rows
        .iter()
        .all(|r| cols.iter().all(|c| is_mixed(m, r.clone(), c.clone()))))
}

pub const MINOR_MAX_DIM: usize = 12;

fn compositions(n: usize, t: usize) -> Vec<Vec<Range<usize>>> {
    // all splits of 0..n into t contiguous nonempty parts
    let mut out = Vec::new();
    let mut cuts = Vec::with_capacity(t - 1);
    fn rec(
        next: usize,
        n: usize,
        t: usize,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Vec<Range<usize>>>,
    ) {
        if cuts.len() == t - 1 {
            let mut ranges = Vec::with_capacity(t);
            let mut lo = 0;
            for &c in cuts.iter() {
                ranges.push(lo..c);
                lo = c;
            }
            ranges.push(lo..n);
            out.push(ranges);
            return;
        }
        let remaining = t - 1 - cuts.len();
        for c in next..=(n - remaining) {
            cuts.push(c);
            rec(c + 1, n, t, cuts, out);
            cuts.pop();
        }
    }
    if t >= 1 && t <= n {
        rec(1, n, t, &mut cuts, &mut out);
    }
    out
}

/// Brute force over all t-part divisions of both sides.
pub fn has_t_mixed_minor(m: &Matrix, t: usize) -> Result<bool, MatrixError> {
    if m.rows() > MINOR_MAX_DIM || m.cols() > MINOR_MAX_DIM {
        return Err(MatrixError::CapExceeded(format!(
            "minor search capped at {MINOR_MAX_DIM}x{MINOR_MAX_DIM}"
        )));
    }
    if t == 0 {
        return Ok(true);
    }
    if t > m.rows() || t > m.cols() {
        return Ok(false);
    }
    let row_divisions = compositions(m.rows(), t);
    let col_divisions = compositions(m.cols(), t);
    for rd in &row_divisions {
        for cd in &col_divisions {
            if rd
                .iter()
                .all(|r| cd.iter().all(|c| is_mixed(m, r.clone(), c.clone())))
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub const TWW_MAX_DIM_SUM: usize = 10;
pub const DEFAULT_TWW_BUDGET: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwwResult {
    Exact(usize),
    /// Budget ran out; the value lies in `lo..=hi`.
    Bracket {
        lo: usize,
        hi: usize,
    },
}

impl TwwResult {
    pub fn upper(&self) -> usize {
        match *self {
            TwwResult::Exact(w) => w,
            TwwResult::Bracket { hi, .. } => hi,
        }
    }
}

type SideKey = Vec<u16>;

struct MatrixSearch<'a> {
    m: &'a Matrix,
    memo: HashMap<(SideKey, SideKey), usize>,
    nodes: usize,
    budget: usize,
}

impl MatrixSearch<'_> {
    fn error_of(&self, rows: &[u16], cols: &[u16]) -> usize {
        let row_sets: Vec<Vec<usize>> = rows.iter().map(|&mask| mask_indices(mask)).collect();
        let col_sets: Vec<Vec<usize>> = cols.iter().map(|&mask| mask_indices(mask)).collect();
        let p = MatrixPartition {
            row_parts: row_sets,
            col_parts: col_sets,
        };
        error_value(self.m, &p)
    }

    fn solve(&mut self, rows: SideKey, cols: SideKey) -> Option<usize> {
        if let Some(&w) = self.memo.get(&(rows.clone(), cols.clone())) {
            return Some(w);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let here = self.error_of(&rows, &cols);
        if rows.len() == 1 && cols.len() == 1 {
            self.memo.insert((rows, cols), here);
            return Some(here);
        }
        let mut children: Vec<(usize, SideKey, SideKey)> = Vec::new();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                let r = merge_side(&rows, i, j);
                let w = self.error_of(&r, &cols);
                children.push((w, r, cols.clone()));
            }
        }
        for i in 0..cols.len() {
            for j in (i + 1)..cols.len() {
                let c = merge_side(&cols, i, j);
                let w = self.error_of(&rows, &c);
                children.push((w, rows.clone(), c));
            }
        }
        children.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
        let mut best = usize::MAX;
        for (w, r, c) in children {
            if w >= best {
                break;
            }
            let f = self.solve(r, c)?;
            best = best.min(f);
        }
        let f = here.max(best);
        self.memo.insert((rows, cols), f);
        Some(f)
    }

    /// Symmetric mode: row and column merges come in mirrored pairs, and
    /// the intermediate rows-merged state still counts toward the width.
    fn solve_symmetric(&mut self, side: SideKey) -> Option<usize> {
        let key = (side.clone(), side.clone());
        if let Some(&w) = self.memo.get(&key) {
            return Some(w);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let here = self.error_of(&side, &side);
        if side.len() == 1 {
            self.memo.insert(key, here);
            return Some(here);
        }
        let mut children: Vec<(usize, usize, SideKey)> = Vec::new();
        for i in 0..side.len() {
            for j in (i + 1)..side.len() {
                let next = merge_side(&side, i, j);
                let mid = self.error_of(&next, &side);
                let landing = self.error_of(&next, &next);
                children.push((mid.max(landing), mid, next));
            }
        }
        children.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
        let mut best = usize::MAX;
        for (floor, mid, next) in children {
            if floor >= best {
                break;
            }
            let f = self.solve_symmetric(next)?;
            best = best.min(mid.max(f));
        }
        let f = here.max(best);
        self.memo.insert(key, f);
        Some(f)
    }
}

fn mask_indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|b| mask >> b & 1 == 1).collect()
}

fn merge_side(side: &[u16], i: usize, j: usize) -> SideKey {
    let merged = side[i] | side[j];
    let mut out: Vec<u16> = side
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, &m)| m)
        .collect();
    out.push(merged);
    out.sort_unstable();
    out
}

fn greedy_matrix_bound(m: &Matrix, symmetric: bool) -> usize {
    // cheap incumbent: always take the merge of least immediate error
    let mut rows: SideKey = (0..m.rows()).map(|i| 1u16 << i).collect();
    let mut cols: SideKey = (0..m.cols()).map(|j| 1u16 << j).collect();
    let search = MatrixSearch {
        m,
        memo: HashMap::new(),
        nodes: 0,
        budget: 0,
    };
    let mut worst = search.error_of(&rows, &cols);
    while rows.len() > 1 || cols.len() > 1 {
        let mut best: Option<(usize, SideKey, SideKey)> = None;
        if symmetric {
            for i in 0..rows.len() {
                for j in (i + 1)..rows.len() {
                    let r = merge_side(&rows, i, j);
                    let w = search.error_of(&r, &rows).max(search.error_of(&r, &r));
                    if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                        best = Some((w, r.clone(), r));
                    }
                }
            }
        } else {
            if rows.len() > 1 {
                for i in 0..rows.len() {
                    for j in (i + 1)..rows.len() {
                        let r = merge_side(&rows, i, j);
                        let w = search.error_of(&r, &cols);
                        if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                            best = Some((w, r, cols.clone()));
                        }
                    }
                }
            }
            if cols.len() > 1 {
                for i in 0..cols.len() {
                    for j in (i + 1)..cols.len() {
                        let c = merge_side(&cols, i, j);
                        let w = search.error_of(&rows, &c);
                        if best.as_ref().is_none_or(|(bw, _, _)| w < *bw) {
                            best = Some((w, rows.clone(), c));
                        }
                    }
                }
            }
        }
        let (w, r, c) = best.expect("merges remain");
        worst = worst.max(w);
        rows = r;
        cols = c;
    }
    worst
}

/// Exact matrix twin-width by memoized search over partition pairs, rows
/// and columns contracted independently. Capped at rows + cols <= 10; on
/// budget exhaustion a bracket is returned whose upper side comes from a
/// greedy completion.
pub fn matrix_twin_width_exact(m: &Matrix, budget: usize) -> Result<TwwResult, MatrixError> {
    if m.rows() + m.cols() > TWW_MAX_DIM_SUM {
        return Err(MatrixError::CapExceeded(format!(
            "twin-width search capped at rows + cols <= {TWW_MAX_DIM_SUM}"
        )));
    }
    let rows: SideKey = (0..m.rows()).map(|i| 1u16 << i).collect();
    let cols: SideKey = (0..m.cols()).map(|j| 1u16 << j).collect();
    let mut search = MatrixSearch {
        m,
        memo: HashMap::new(),
        nodes: 0,
        budget,
    };
    match search.solve(rows, cols) {
        Some(w) => Ok(TwwResult::Exact(w)),
        None => Ok(TwwResult::Bracket {
            lo: forced_lower_bound(m, false),
            hi: greedy_matrix_bound(m, false),
        }),
    }
}

/// Every sequence visits the coarsest partition and some first merge, so
/// both bound the twin-width from below.
fn forced_lower_bound(m: &Matrix, symmetric: bool) -> usize {
    let rows: SideKey = (0..m.rows()).map(|i| 1u16 << i).collect();
    let cols: SideKey = (0..m.cols()).map(|j| 1u16 << j).collect();
    let probe = MatrixSearch {
        m,
        memo: HashMap::new(),
        nodes: 0,
        budget: 0,
    };
    let coarse_rows: SideKey = vec![rows.iter().fold(0, |a, b| a | b)];
    let coarse_cols: SideKey = vec![cols.iter().fold(0, |a, b| a | b)];
    let coarse = probe.error_of(&coarse_rows, &coarse_cols);
    let mut first = usize::MAX;
    if symmetric {
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                let r = merge_side(&rows, i, j);
                first = first.min(probe.error_of(&r, &rows));
            }
        }
    } else {
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                first = first.min(probe.error_of(&merge_side(&rows, i, j), &cols));
            }
        }
        for i in 0..cols.len() {
            for j in (i + 1)..cols.len() {
                first = first.min(probe.error_of(&rows, &merge_side(&cols, i, j)));
            }
        }
    }
    if first == usize::MAX {
        first = 0;
    }
    coarse.max(first)
}

/// Matrix twin-width over symmetric sequences only: rows and columns are
/// contracted simultaneously. For adjacency matrices this mirrors graph
/// contraction sequences (with the diagonal playing the loop role).
pub fn matrix_twin_width_symmetric(m: &Matrix, budget: usize) -> Result<TwwResult, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    if m.rows() > TWW_MAX_DIM_SUM {
        return Err(MatrixError::CapExceeded(format!(
            "symmetric twin-width search capped at n <= {TWW_MAX_DIM_SUM}"
        )));
    }
    let side: SideKey = (0..m.rows()).map(|i| 1u16 << i).collect();
    let mut search = MatrixSearch {
        m,
        memo: HashMap::new(),
        nodes: 0,
        budget,
    };
    match search.solve_symmetric(side) {
        Some(w) => Ok(TwwResult::Exact(w)),
        None => Ok(TwwResult::Bracket {
            lo: forced_lower_bound(m, true),
            hi: greedy_matrix_bound(m, true),
        }),
    }
}
