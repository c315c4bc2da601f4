//! Text formats for graphs, sequences, branch decompositions and
//! matrices.
//!
//! All formats are line-based with 1-based ids and `#` comments:
//!
//! - graph: `p <n> <m>` then `m` lines `e <u> <v>`
//! - sequence: `s <n> <k>` then `k` lines `c <u> <v>`; the i-th line
//!   implicitly creates part `n + i`
//! - decomposition: `t <nodes>`, lines `n <id> <parent|0>` (0 marks the
//!   root) and `l <id> <parent> <vertex>`, plus an optional `lin` line
//! - matrix: `m <r> <c>` then `r` rows of symbols
//!
//! Serializers emit newline-terminated, byte-deterministic text. Parsers
//! report the offending line on malformed input.

use crate::decomposition::BranchDecomposition;
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::sequence::ContractionSequence;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

/// Content lines with their 1-based positions, comments and blanks
/// skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const K: usize>(
    line_no: usize,
    rest: &[&str],
    what: &str,
) -> Result<[usize; K], ParseError> {
    if rest.len() != K {
        return err(line_no, format!("expected {K} fields after '{what}'"));
    }
    let mut out = [0usize; K];
    for (slot, tok) in out.iter_mut().zip(rest) {
        match tok.parse::<usize>() {
            Ok(v) => *slot = v,
            Err(_) => return err(line_no, format!("'{tok}' is not a number")),
        }
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = match lines.next() {
        Some(l) => l,
        None => return err(0, "empty input, expected 'p <n> <m>'"),
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"p") {
        return err(line_no, "expected header 'p <n> <m>'");
    }
    let [n, m] = parse_fields(line_no, &toks[1..], "p")?;
    if n == 0 {
        return err(line_no, "graph needs at least one vertex");
    }
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = 0;
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() != Some(&"e") {
            return err(line_no, "expected edge line 'e <u> <v>'");
        }
        let [u, v] = parse_fields(line_no, &toks[1..], "e")?;
        if u == 0 || v == 0 || u > n || v > n {
            return err(line_no, format!("vertex ids must lie in 1..={n}"));
        }
        if u == v {
            return err(line_no, "loop edges are not allowed");
        }
        edges.push(((u - 1, v - 1), line_no));
        edge_lines += 1;
    }
    if edge_lines != m {
        return err(0, format!("header promises {m} edges, found {edge_lines}"));
    }
    let mut seen = std::collections::HashSet::new();
    for &((u, v), line_no) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return err(line_no, "duplicate edge");
        }
    }
    Graph::from_edges(n, edges.into_iter().map(|(e, _)| e)).map_err(|e| ParseError {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_sequence(text: &str) -> Result<ContractionSequence, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = match lines.next() {
        Some(l) => l,
        None => return err(0, "empty input, expected 's <n> <k>'"),
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"s") {
        return err(line_no, "expected header 's <n> <k>'");
    }
    let [n, k] = parse_fields(line_no, &toks[1..], "s")?;
    if n == 0 {
        return err(line_no, "sequences need at least one vertex");
    }
    if k > n.saturating_sub(1) {
        return err(
            line_no,
            format!("at most {} steps fit on {n} vertices", n - 1),
        );
    }
    let mut steps = Vec::with_capacity(k);
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.first() != Some(&"c") {
            return err(line_no, "expected contraction line 'c <u> <v>'");
        }
        let [u, v] = parse_fields(line_no, &toks[1..], "c")?;
        let highest = n + steps.len();
        if u == 0 || v == 0 || u > highest || v > highest {
            return err(
                line_no,
                format!("part ids must lie in 1..={highest} at this step"),
            );
        }
        steps.push(((u - 1, v - 1), line_no));
    }
    if steps.len() != k {
        return err(
            0,
            format!("header promises {k} steps, found {}", steps.len()),
        );
    }
    ContractionSequence::new(n, steps.iter().map(|&(s, _)| s)).map_err(|e| {
        let bad_line = match &e {
            crate::sequence::SequenceError::DeadPart { step, .. }
            | crate::sequence::SequenceError::SamePart { step } => {
                steps.get(step - 1).map(|&(_, l)| l).unwrap_or(0)
            }
            _ => 0,
        };
        ParseError {
            line: bad_line,
            msg: e.to_string(),
        }
    })
}

pub fn serialize_sequence(s: &ContractionSequence) -> String {
    let mut out = format!("s {} {}\n", s.n(), s.len());
    for &(u, v) in s.steps() {
        out.push_str(&format!("c {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<BranchDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = match lines.next() {
        Some(l) => l,
        None => return err(0, "empty input, expected 't <nodes>'"),
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"t") {
        return err(line_no, "expected header 't <nodes>'");
    }
    let [count] = parse_fields(line_no, &toks[1..], "t")?;
    if count == 0 {
        return err(line_no, "decompositions need at least one node");
    }
    let mut parent: Vec<Option<Option<usize>>> = vec![None; count];
    let mut leaf_vertex: Vec<Option<usize>> = vec![None; count];
    let mut linear = false;
    let mut seen_lines = 0;
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            Some(&"lin") => {
                linear = true;
                continue;
            }
            Some(&"n") => {
                let [id, par] = parse_fields(line_no, &toks[1..], "n")?;
                if id == 0 || id > count {
                    return err(line_no, format!("node ids must lie in 1..={count}"));
                }
                if parent[id - 1].is_some() {
                    return err(line_no, format!("node {id} defined twice"));
                }
                if par > count {
                    return err(line_no, format!("parent ids must lie in 0..={count}"));
                }
                parent[id - 1] = Some(if par == 0 { None } else { Some(par - 1) });
            }
            Some(&"l") => {
                let [id, par, vertex] = parse_fields(line_no, &toks[1..], "l")?;
                if id == 0 || id > count {
                    return err(line_no, format!("node ids must lie in 1..={count}"));
                }
                if parent[id - 1].is_some() {
                    return err(line_no, format!("node {id} defined twice"));
                }
                if par == 0 || par > count {
                    return err(line_no, "leaves need a real parent");
                }
                if vertex == 0 {
                    return err(line_no, "vertex ids are 1-based");
                }
                parent[id - 1] = Some(Some(par - 1));
                leaf_vertex[id - 1] = Some(vertex - 1);
            }
            _ => {
                return err(
                    line_no,
                    "expected 'n <id> <parent|0>' or 'l <id> <parent> <vertex>'",
                )
            }
        }
        seen_lines += 1;
    }
    if seen_lines != count {
        return err(
            0,
            format!("header promises {count} nodes, found {seen_lines}"),
        );
    }
    let parent: Vec<Option<usize>> = parent.into_iter().map(|p| p.unwrap()).collect();
    let bd = BranchDecomposition::new(parent, leaf_vertex, linear).map_err(|e| ParseError {
        line: 0,
        msg: e.to_string(),
    })?;
    if linear && !bd.is_linear_structure() {
        return err(0, "flagged 'lin' but the internal nodes do not form a path");
    }
    Ok(bd)
}

pub fn serialize_decomposition(t: &BranchDecomposition) -> String {
    let mut out = format!("t {}\n", t.node_count());
    for node in 0..t.node_count() {
        let parent = t.parent(node).map(|p| p + 1).unwrap_or(0);
        match t.leaf_vertex(node) {
            Some(v) => out.push_str(&format!("l {} {} {}\n", node + 1, parent, v + 1)),
            None => out.push_str(&format!("n {} {}\n", node + 1, parent)),
        }
    }
    if t.linear_flag() {
        out.push_str("lin\n");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut lines = content_lines(text);
    let (line_no, header) = match lines.next() {
        Some(l) => l,
        None => return err(0, "empty input, expected 'm <r> <c>'"),
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"m") {
        return err(line_no, "expected header 'm <r> <c>'");
    }
    let [r, c] = parse_fields(line_no, &toks[1..], "m")?;
    if r == 0 || c == 0 {
        return err(line_no, "matrix must be nonempty");
    }
    let mut data = Vec::with_capacity(r * c);
    let mut rows_seen = 0;
    for (line_no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != c {
            return err(
                line_no,
                format!("expected {c} symbols, found {}", toks.len()),
            );
        }
        for tok in toks {
            match tok.parse::<u8>() {
                Ok(v) => data.push(v),
                Err(_) => return err(line_no, format!("'{tok}' is not a symbol in 0..=255")),
            }
        }
        rows_seen += 1;
    }
    if rows_seen != r {
        return err(0, format!("header promises {r} rows, found {rows_seen}"));
    }
    Matrix::new(r, c, data).map_err(|e| ParseError {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn serialize_matrix(m: &Matrix) -> String {
    let mut out = format!("m {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
