//! Instance builders: cyclic Latin squares, the row/column/symbol encoding of
//! a Latin square, the incidence hypergraph of an edge-coloring problem, and
//! disjoint unions of complete bipartite graphs.
//!
//! B-vertex layout is fixed so that emitted hypergraph files are reproducible:
//! - square encodings put column `c` at `c` and symbol `s` at `n + s`;
//! - incidence hypergraphs put `(v, color)` at `color * n_vertices + v`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::enumeration::{per_entry_transversal_counts, CountOptions};
use crate::error::{Error, Result};
use crate::hypercore::{content_lines, parse_numbers, BipartiteHypergraph, Edge};

/// Largest order for which per-entry transversal counting runs by default.
pub const DEFAULT_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let cells: Vec<usize> = rows.into_iter().flatten().collect();
        check_latin(n, &cells).map_err(|(_, reason)| Error::Invalid(reason))?;
        Ok(LatinSquare { n, cells })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[usize] {
        &self.cells[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Parses `n` followed by `n` rows of `n` symbols in `0..n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing order"))?;
        let n = match parse_numbers(header_line, header)?[..] {
            [n] => n,
            _ => return Err(Error::parse(header_line, "header must be the order `n`")),
        };
        if n == 0 {
            return Err(Error::parse(header_line, "empty order"));
        }
        let mut cells = Vec::with_capacity(n * n);
        let mut row_lines = Vec::with_capacity(n);
        for (line_no, line) in lines.by_ref() {
            let row = parse_numbers(line_no, line)?;
            if row_lines.len() == n {
                return Err(Error::parse(line_no, format!("more than {n} rows")));
            }
            if row.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("expected {n} symbols, found {}", row.len()),
                ));
            }
            row_lines.push(line_no);
            cells.extend(row);
        }
        if row_lines.len() != n {
            return Err(Error::parse(
                header_line,
                format!("expected {n} rows, found {}", row_lines.len()),
            ));
        }
        check_latin(n, &cells).map_err(|(r, reason)| Error::parse(row_lines[r], reason))?;
        Ok(LatinSquare { n, cells })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }
}

/// On failure returns the offending row and a reason.
fn check_latin(n: usize, cells: &[usize]) -> std::result::Result<(), (usize, String)> {
    for r in 0..n {
        let mut seen = vec![false; n];
        for c in 0..n {
            let s = cells[r * n + c];
            if s >= n {
                return Err((r, format!("symbol {s} out of range at ({r},{c})")));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err((r, format!("row {r} repeats symbol {s}")));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for r in 0..n {
            let s = cells[r * n + c];
            if std::mem::replace(&mut seen[s], true) {
                return Err((r, format!("column {c} repeats symbol {s}")));
            }
        }
    }
    Ok(())
}

/// Set of `(row, column)` cells.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellSet(pub BTreeSet<(usize, usize)>);

impl CellSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.0.contains(&(row, col))
    }

    pub fn insert(&mut self, row: usize, col: usize) -> bool {
        self.0.insert((row, col))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.0.iter()
    }

    /// Every cell of a `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn rectangle(r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        CellSet(
            (r0..r0 + rows)
                .flat_map(|r| (c0..c0 + cols).map(move |c| (r, c)))
                .collect(),
        )
    }
}

impl FromIterator<(usize, usize)> for CellSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        CellSet(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformHypergraph {
    k: usize,
    n_vertices: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n_vertices: usize,
    pub edge_count: usize,
    pub k: usize,
    /// Maximum vertex degree.
    pub d: usize,
    /// Common degree if every vertex has the same degree.
    pub regular: Option<usize>,
    pub delta2: usize,
}

impl UniformHypergraph {
    pub fn new(k: usize, n_vertices: usize, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("edge size k must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (i, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::Invalid(format!(
                    "uniformity: edge {i} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("edge {i} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::Invalid(format!("edge {i} uses vertex {v} out of range")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::Invalid(format!("duplicate edge {i}")));
            }
        }
        Ok(UniformHypergraph {
            k,
            n_vertices,
            edges,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for v in self.edges.iter().flatten() {
            deg[*v] += 1;
        }
        deg
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn codegree_max(&self) -> usize {
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &self.edges {
            for (i, &u) in e.iter().enumerate() {
                for &w in &e[i + 1..] {
                    *pairs.entry((u, w)).or_default() += 1;
                }
            }
        }
        pairs.values().copied().max().unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            n_vertices: self.n_vertices,
            edge_count: self.edges.len(),
            k: self.k,
            d: self.degrees().into_iter().max().unwrap_or(0),
            regular: self.regular_degree(),
            delta2: self.codegree_max(),
        }
    }

    /// Parses `k n_vertices edge_count` followed by one sorted k-set per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let [k, n_vertices, edge_count] = parse_numbers(header_line, header)?[..] else {
            return Err(Error::parse(header_line, "header must be `k n_vertices edge_count`"));
        };
        let mut edges = Vec::with_capacity(edge_count);
        for (line_no, line) in lines.by_ref() {
            let e = parse_numbers(line_no, line)?;
            if e.len() != k {
                return Err(Error::parse(
                    line_no,
                    format!("uniformity: expected {k} vertices, found {}", e.len()),
                ));
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(line_no, "vertices must be strictly increasing"));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::parse(line_no, format!("vertex {v} out of range")));
            }
            edges.push(e);
        }
        if edges.len() != edge_count {
            return Err(Error::parse(
                header_line,
                format!("header declares {edge_count} edges, found {}", edges.len()),
            ));
        }
        Self::new(k, n_vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.k, self.n_vertices, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }
}

pub fn cayley_cyclic(n: usize) -> Result<LatinSquare> {
    if n == 0 {
        return Err(Error::EmptyOrder);
    }
    let cells = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    Ok(LatinSquare { n, cells })
}

/// Rows become A; columns and symbols become B. One edge per cell not in
/// `excluded`, in row-major cell order.
pub fn ls_to_hypergraph(l: &LatinSquare, excluded: &CellSet) -> Result<BipartiteHypergraph> {
    let n = l.n;
    if let Some(&(r, c)) = excluded.iter().find(|&&(r, c)| r >= n || c >= n) {
        return Err(Error::Invalid(format!("excluded cell ({r},{c}) outside order {n}")));
    }
    let edges = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !excluded.contains(r, c))
        .map(|(r, c)| Edge::new(r, [c, n + l.get(r, c)]))
        .collect();
    BipartiteHypergraph::new(2, n, 2 * n, edges)
}

/// Cells that lie on no transversal, found by exhaustive per-entry counting.
pub fn transversal_free_entries(
    l: &LatinSquare,
    max_order: usize,
    opts: &CountOptions,
) -> Result<CellSet> {
    if l.n > max_order {
        return Err(Error::TooLarge {
            what: "order",
            value: l.n,
            limit: max_order,
        });
    }
    let counts = per_entry_transversal_counts(l, opts)?;
    Ok((0..l.n)
        .flat_map(|r| (0..l.n).map(move |c| (r, c)))
        .filter(|&(r, c)| counts[r][c].is_zero())
        .collect())
}

pub fn pruned_hypergraph(
    l: &LatinSquare,
    max_order: usize,
    opts: &CountOptions,
) -> Result<BipartiteHypergraph> {
    let free = transversal_free_entries(l, max_order, opts)?;
    ls_to_hypergraph(l, &free)
}

/// A = edges of `g`; B = `V(g) x [q]`. Edges are grouped by A-vertex, colors
/// ascending within each group.
pub fn incidence_hypergraph(g: &UniformHypergraph, q: usize) -> Result<BipartiteHypergraph> {
    let nv = g.n_vertices;
    let edges = g
        .edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            (0..q).map(move |color| Edge::new(i, e.iter().map(|&v| color * nv + v).collect::<Vec<_>>()))
        })
        .collect();
    BipartiteHypergraph::new(g.k, g.edges.len(), q * nv, edges)
}

/// Disjoint union of `copies` copies of `K_{d,d}`. Copy `j` occupies vertices
/// `2dj .. 2d(j+1)`, left side first.
pub fn kdd_union(d: usize, copies: usize) -> Result<UniformHypergraph> {
    if d == 0 || copies == 0 {
        return Err(Error::Invalid("d and copies must be positive".into()));
    }
    let mut edges = Vec::with_capacity(d * d * copies);
    for j in 0..copies {
        let base = 2 * d * j;
        for left in 0..d {
            for right in 0..d {
                edges.push(vec![base + left, base + d + right]);
            }
        }
    }
    UniformHypergraph::new(2, 2 * d * copies, edges)
}
