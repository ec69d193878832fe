//! Bipartite hypergraphs with one A-vertex per edge, their matchings, and the
//! statistics that feed the counting bound.
//!
//! Vertices on the two sides are indexed independently from 0. An edge is an
//! A-vertex together with `k` distinct B-vertices, so every edge has `k + 1`
//! vertices in total.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: Vec<usize>,
}

impl Edge {
    pub fn new(a: usize, b: impl Into<Vec<usize>>) -> Self {
        Edge { a, b: b.into() }
    }

    pub fn contains_b(&self, v: usize) -> bool {
        self.b.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct BipartiteHypergraph {
    k: usize,
    a_count: usize,
    b_count: usize,
    edges: Vec<Edge>,
    id: u64,
}

impl PartialEq for BipartiteHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.a_count == other.a_count
            && self.b_count == other.b_count
            && self.edges == other.edges
    }
}

impl Eq for BipartiteHypergraph {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Uniformity { edge: usize, found: usize },
    RepeatedB { edge: usize, vertex: usize },
    UnsortedB { edge: usize },
    DuplicateEdge { edge: usize, first: usize },
    AOutOfRange { edge: usize, vertex: usize },
    BOutOfRange { edge: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uniformity { edge, found } => {
                write!(f, "uniformity: edge {edge} has {found} B-vertices")
            }
            Violation::RepeatedB { edge, vertex } => {
                write!(f, "repeated B-vertex: edge {edge} lists b{vertex} twice")
            }
            Violation::UnsortedB { edge } => {
                write!(f, "unsorted B-vertices: edge {edge}")
            }
            Violation::DuplicateEdge { edge, first } => {
                write!(f, "duplicate edge: edge {edge} repeats edge {first}")
            }
            Violation::AOutOfRange { edge, vertex } => {
                write!(f, "A index out of range: edge {edge} uses a{vertex}")
            }
            Violation::BOutOfRange { edge, vertex } => {
                write!(f, "B index out of range: edge {edge} uses b{vertex}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// No edge contains this A-vertex, so no A-perfect matching exists.
    UncoveredA(usize),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UncoveredA(a) => write!(f, "A-vertex a{a} lies in no edge"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl BipartiteHypergraph {
    /// Builds a hypergraph, sorting each B-list and rejecting any violation.
    pub fn new(k: usize, a_count: usize, b_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &mut edges {
            e.b.sort_unstable();
        }
        let h = Self::from_edges_unchecked(k, a_count, b_count, edges);
        let report = h.validate();
        match report.violations.first() {
            None => Ok(h),
            Some(v) => Err(Error::Invalid(v.to_string())),
        }
    }

    /// Stores the edges exactly as given. Use [`validate`](Self::validate)
    /// before handing the result to any counting routine.
    pub fn from_edges_unchecked(k: usize, a_count: usize, b_count: usize, edges: Vec<Edge>) -> Self {
        let mut hasher = DefaultHasher::new();
        (k, a_count, b_count, &edges).hash(&mut hasher);
        BipartiteHypergraph {
            k,
            a_count,
            b_count,
            edges,
            id: hasher.finish(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// Content fingerprint; matchings carry it to stay bound to their host.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn validate(&self) -> ValidationReport {
        validate_hypergraph(self)
    }

    /// Edge indices grouped by A-vertex, in edge-list order.
    pub fn edges_by_a(&self) -> Vec<Vec<usize>> {
        let mut by_a = vec![Vec::new(); self.a_count];
        for (i, e) in self.edges.iter().enumerate() {
            by_a[e.a].push(i);
        }
        by_a
    }

    /// Disjoint union; the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &BipartiteHypergraph) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::Invalid(format!(
                "cannot join k={} with k={}",
                self.k, other.k
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            a: e.a + self.a_count,
            b: e.b.iter().map(|&v| v + self.b_count).collect(),
        }));
        Self::new(
            self.k,
            self.a_count + other.a_count,
            self.b_count + other.b_count,
            edges,
        )
    }

    /// Parses the text format: a header `k a_count b_count edge_count`, then
    /// one `a b_1 .. b_k` line per edge. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields = parse_numbers(header_line, header)?;
        let [k, a_count, b_count, edge_count] = fields[..] else {
            return Err(Error::parse(
                header_line,
                "header must be `k a_count b_count edge_count`",
            ));
        };
        let mut edges = Vec::with_capacity(edge_count);
        for (line_no, line) in lines.by_ref() {
            let nums = parse_numbers(line_no, line)?;
            if nums.len() != k + 1 {
                return Err(Error::parse(
                    line_no,
                    format!("uniformity: expected {} indices, found {}", k + 1, nums.len()),
                ));
            }
            let b = nums[1..].to_vec();
            if let Some(w) = b.windows(2).find(|w| w[0] >= w[1]) {
                let reason = if w[0] == w[1] {
                    format!("repeated B-vertex {}", w[0])
                } else {
                    "B indices must be strictly increasing".to_string()
                };
                return Err(Error::parse(line_no, reason));
            }
            if nums[0] >= a_count {
                return Err(Error::parse(line_no, format!("A index {} out of range", nums[0])));
            }
            if let Some(&v) = b.iter().find(|&&v| v >= b_count) {
                return Err(Error::parse(line_no, format!("B index {v} out of range")));
            }
            edges.push(Edge::new(nums[0], b));
        }
        if edges.len() != edge_count {
            return Err(Error::parse(
                header_line,
                format!("header declares {edge_count} edges, found {}", edges.len()),
            ));
        }
        Self::new(k, a_count, b_count, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.k,
            self.a_count,
            self.b_count,
            self.edges.len()
        );
        for e in &self.edges {
            write!(out, "{}", e.a).unwrap();
            for v in &e.b {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Yields `(1-based line number, trimmed content)` for non-blank lines,
/// with `#` comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    })
}

pub(crate) fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

pub fn validate_hypergraph(h: &BipartiteHypergraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen: HashMap<&Edge, usize> = HashMap::new();
    let mut covered = vec![false; h.a_count];
    for (i, e) in h.edges.iter().enumerate() {
        if e.b.len() != h.k {
            report.violations.push(Violation::Uniformity {
                edge: i,
                found: e.b.len(),
            });
        }
        let mut distinct = HashSet::new();
        for &v in &e.b {
            if !distinct.insert(v) {
                report.violations.push(Violation::RepeatedB { edge: i, vertex: v });
            }
        }
        if distinct.len() == e.b.len() && e.b.windows(2).any(|w| w[0] > w[1]) {
            report.violations.push(Violation::UnsortedB { edge: i });
        }
        if e.a >= h.a_count {
            report.violations.push(Violation::AOutOfRange {
                edge: i,
                vertex: e.a,
            });
        } else {
            covered[e.a] = true;
        }
        for &v in &e.b {
            if v >= h.b_count {
                report.violations.push(Violation::BOutOfRange { edge: i, vertex: v });
            }
        }
        if let Some(&first) = seen.get(e) {
            report
                .violations
                .push(Violation::DuplicateEdge { edge: i, first });
        } else {
            seen.insert(e, i);
        }
    }
    report.warnings.extend(
        covered
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(a, _)| Warning::UncoveredA(a)),
    );
    report
}

/// A set of pairwise-disjoint edges of one hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    edge_indices: Vec<usize>,
    host_id: u64,
}

impl Matching {
    /// Checks index ranges and pairwise disjointness against `host`.
    pub fn new(host: &BipartiteHypergraph, mut edge_indices: Vec<usize>) -> Result<Self> {
        edge_indices.sort_unstable();
        edge_indices.dedup();
        let mut used_a = HashSet::new();
        let mut used_b = HashSet::new();
        for &i in &edge_indices {
            let e = host
                .edges
                .get(i)
                .ok_or_else(|| Error::Invalid(format!("edge index {i} out of range")))?;
            if !used_a.insert(e.a) || !e.b.iter().all(|&v| used_b.insert(v)) {
                return Err(Error::Invalid(format!("edge {i} overlaps an earlier edge")));
            }
        }
        Ok(Matching {
            edge_indices,
            host_id: host.id,
        })
    }

    /// Builds an A-perfect matching from `assignment[a] = edge index of X_a`.
    pub fn from_assignment(host: &BipartiteHypergraph, assignment: &[usize]) -> Result<Self> {
        let m = Self::new(host, assignment.to_vec())?;
        if !m.is_a_perfect(host) {
            return Err(Error::NotAPerfect);
        }
        Ok(m)
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn host_id(&self) -> u64 {
        self.host_id
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn is_a_perfect(&self, host: &BipartiteHypergraph) -> bool {
        self.host_id == host.id
            && self.edge_indices.len() == host.a_count
            && self.assignment(host).iter().all(Option::is_some)
    }

    /// `X_a` for each A-vertex, if covered.
    pub fn assignment(&self, host: &BipartiteHypergraph) -> Vec<Option<usize>> {
        let mut x = vec![None; host.a_count];
        for &i in &self.edge_indices {
            x[host.edges[i].a] = Some(i);
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    /// Average degree over A.
    pub q_avg: Ratio<u64>,
    /// Maximum degree over B.
    pub d_max_b: u64,
    /// Maximum codegree over all unordered vertex pairs.
    pub delta2: u64,
    /// `b_count / a_count`; reported as 0 when A is empty.
    pub rho: Ratio<u64>,
    pub min_a_degree: u64,
}

impl DegreeStats {
    pub fn q_avg_f64(&self) -> f64 {
        self.q_avg.to_f64().unwrap_or(f64::NAN)
    }

    pub fn rho_f64(&self) -> f64 {
        self.rho.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn degree_stats(h: &BipartiteHypergraph) -> DegreeStats {
    let mut deg_a = vec![0u64; h.a_count];
    let mut deg_b = vec![0u64; h.b_count];
    // A-vertex a is keyed as a, B-vertex b as a_count + b.
    let mut pair_count: HashMap<(usize, usize), u64> = HashMap::new();
    for e in &h.edges {
        deg_a[e.a] += 1;
        for (i, &u) in e.b.iter().enumerate() {
            deg_b[u] += 1;
            *pair_count.entry((e.a, h.a_count + u)).or_default() += 1;
            for &w in &e.b[i + 1..] {
                let key = (h.a_count + u.min(w), h.a_count + u.max(w));
                *pair_count.entry(key).or_default() += 1;
            }
        }
    }
    let total = h.edges.len() as u64;
    let (q_avg, rho) = if h.a_count == 0 {
        (Ratio::zero(), Ratio::zero())
    } else {
        (
            Ratio::new(total, h.a_count as u64),
            Ratio::new(h.b_count as u64, h.a_count as u64),
        )
    };
    DegreeStats {
        q_avg,
        d_max_b: deg_b.iter().copied().max().unwrap_or(0),
        delta2: pair_count.values().copied().max().unwrap_or(0),
        rho,
        min_a_degree: deg_a.iter().copied().min().unwrap_or(0),
    }
}

/// Who covers what under a fixed A-perfect matching.
#[derive(Debug, Clone)]
pub struct CoverMap<'h> {
    host: &'h BipartiteHypergraph,
    x_of_a: Vec<usize>,
    owner_of_b: Vec<Option<usize>>,
}

impl<'h> CoverMap<'h> {
    pub fn new(host: &'h BipartiteHypergraph, x: &Matching) -> Result<Self> {
        if x.host_id != host.id {
            return Err(Error::ForeignMatching);
        }
        let assignment = x.assignment(host);
        let x_of_a: Vec<usize> = assignment
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(Error::NotAPerfect)?;
        Ok(Self::from_assignment(host, x_of_a))
    }

    /// Trusts `x_of_a` to be an A-perfect matching of `host`.
    pub(crate) fn from_assignment(host: &'h BipartiteHypergraph, x_of_a: Vec<usize>) -> Self {
        let mut owner_of_b = vec![None; host.b_count];
        for (a, &ei) in x_of_a.iter().enumerate() {
            for &v in &host.edges[ei].b {
                owner_of_b[v] = Some(a);
            }
        }
        CoverMap {
            host,
            x_of_a,
            owner_of_b,
        }
    }

    pub fn x_of(&self, a: usize) -> usize {
        self.x_of_a[a]
    }

    pub fn owner_of_b(&self, v: usize) -> Option<usize> {
        self.owner_of_b[v]
    }

    /// `|{a' != a : X_a' meets e}|` for an edge `e` through `a`.
    pub fn exponent(&self, a: usize, e: usize) -> Result<usize> {
        let edge = &self.host.edges[e];
        if edge.a != a {
            return Err(Error::EdgeNotIncident);
        }
        Ok(self.exponent_unchecked(edge))
    }

    pub(crate) fn exponent_unchecked(&self, edge: &Edge) -> usize {
        let mut owners: Vec<usize> = edge
            .b
            .iter()
            .filter_map(|&v| self.owner_of_b[v])
            .filter(|&o| o != edge.a)
            .collect();
        owners.sort_unstable();
        owners.dedup();
        owners.len()
    }

    pub fn is_in_s(&self, e: usize) -> bool {
        let edge = &self.host.edges[e];
        let mut owners: Vec<usize> = edge.b.iter().filter_map(|&v| self.owner_of_b[v]).collect();
        owners.sort_unstable();
        owners
            .windows(2)
            .any(|w| w[0] == w[1] && self.x_of_a[w[0]] != e)
    }

    pub fn is_in_t(&self, e: usize) -> bool {
        self.host.edges[e]
            .b
            .iter()
            .any(|&v| self.owner_of_b[v].is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEdgeReport {
    pub s_edges: BTreeSet<usize>,
    pub t_edges: BTreeSet<usize>,
    /// `|S_a(X)|`, indexed by A-vertex.
    pub per_a_s: Vec<usize>,
    /// `|T_a(X)|`, indexed by A-vertex.
    pub per_a_t: Vec<usize>,
}

pub fn bad_edge_sets(h: &BipartiteHypergraph, x: &Matching) -> Result<BadEdgeReport> {
    let cover = CoverMap::new(h, x)?;
    Ok(bad_edges_for(&cover))
}

pub(crate) fn bad_edges_for(cover: &CoverMap<'_>) -> BadEdgeReport {
    let h = cover.host;
    let mut report = BadEdgeReport {
        s_edges: BTreeSet::new(),
        t_edges: BTreeSet::new(),
        per_a_s: vec![0; h.a_count],
        per_a_t: vec![0; h.a_count],
    };
    for (i, e) in h.edges.iter().enumerate() {
        if cover.is_in_s(i) {
            report.s_edges.insert(i);
            report.per_a_s[e.a] += 1;
        }
        if cover.is_in_t(i) {
            report.t_edges.insert(i);
            report.per_a_t[e.a] += 1;
        }
    }
    report
}

pub fn incidence_exponent(h: &BipartiteHypergraph, x: &Matching, a: usize, e: usize) -> Result<usize> {
    if e >= h.edges.len() {
        return Err(Error::Invalid(format!("edge index {e} out of range")));
    }
    CoverMap::new(h, x)?.exponent(a, e)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::constructions::{cayley_cyclic, ls_to_hypergraph, CellSet};

    fn h3() -> BipartiteHypergraph {
        ls_to_hypergraph(&cayley_cyclic(3).unwrap(), &CellSet::default()).unwrap()
    }

    #[test]
    fn smallest_instance_is_valid() {
        assert!(h1().validate().is_valid());
    }

    #[test]
    fn repeated_b_vertex_is_reported() {
        let h = BipartiteHypergraph::from_edges_unchecked(2, 1, 2, vec![Edge::new(0, [0, 0])]);
        let report = h.validate();
        assert_eq!(
            report.violations,
            vec![Violation::RepeatedB { edge: 0, vertex: 0 }]
        );
        assert!(report.violations[0].to_string().starts_with("repeated B-vertex"));
    }

    #[test]
    fn wrong_edge_size_is_a_uniformity_violation() {
        let h = BipartiteHypergraph::from_edges_unchecked(2, 1, 3, vec![Edge::new(0, [0, 1, 2])]);
        let report = h.validate();
        assert_eq!(
            report.violations,
            vec![Violation::Uniformity { edge: 0, found: 3 }]
        );
        assert!(report.violations[0].to_string().starts_with("uniformity"));
    }

    #[test]
    fn duplicates_and_ranges_are_reported() {
        let h = BipartiteHypergraph::from_edges_unchecked(
            1,
            1,
            2,
            vec![Edge::new(0, [1]), Edge::new(0, [1]), Edge::new(3, [5])],
        );
        let v = h.validate().violations;
        assert!(v.contains(&Violation::DuplicateEdge { edge: 1, first: 0 }));
        assert!(v.contains(&Violation::AOutOfRange { edge: 2, vertex: 3 }));
        assert!(v.contains(&Violation::BOutOfRange { edge: 2, vertex: 5 }));
        assert!(BipartiteHypergraph::new(1, 1, 2, vec![Edge::new(0, [1]), Edge::new(0, [1])]).is_err());
    }

    #[test]
    fn uncovered_a_vertex_is_a_warning() {
        let h = BipartiteHypergraph::new(2, 2, 2, vec![Edge::new(0, [0, 1])]).unwrap();
        let report = h.validate();
        assert!(report.is_valid());
        assert_eq!(report.warnings, vec![Warning::UncoveredA(1)]);
    }

    #[test]
    fn stats_of_cyclic_three() {
        let s = degree_stats(&h3());
        assert_eq!(s.q_avg, Ratio::from_integer(3));
        assert_eq!(s.d_max_b, 3);
        assert_eq!(s.delta2, 1);
        assert_eq!(s.rho, Ratio::from_integer(2));
        assert_eq!(s.min_a_degree, 3);
    }

    #[test]
    fn stats_of_single_edge() {
        let s = degree_stats(&h1());
        assert_eq!(s.q_avg, Ratio::from_integer(1));
        assert_eq!((s.d_max_b, s.delta2), (1, 1));
        assert_eq!(s.rho, Ratio::from_integer(2));
    }

    #[test]
    fn codegree_counts_shared_b_pairs() {
        assert_eq!(degree_stats(&hs()).delta2, 2);
    }

    #[test]
    fn empty_hypergraph_stats() {
        let h = BipartiteHypergraph::new(2, 3, 6, vec![]).unwrap();
        let s = degree_stats(&h);
        assert!(s.q_avg.is_zero());
        assert_eq!(s.delta2, 0);
    }

    #[test]
    fn bad_edges_of_hs() {
        let h = hs();
        let x = Matching::new(&h, vec![0, 1]).unwrap();
        let r = bad_edge_sets(&h, &x).unwrap();
        assert_eq!(r.s_edges, BTreeSet::from([2]));
        assert!(r.t_edges.is_empty());
        assert_eq!(r.per_a_s, vec![0, 1]);
    }

    #[test]
    fn bad_edges_of_ht() {
        let h = ht();
        let x = Matching::new(&h, vec![0]).unwrap();
        let r = bad_edge_sets(&h, &x).unwrap();
        assert!(r.s_edges.is_empty());
        assert_eq!(r.t_edges, BTreeSet::from([1]));
        assert_eq!(r.per_a_t, vec![1]);
    }

    #[test]
    fn no_bad_edges_in_cyclic_three() {
        let h = h3();
        // The three transversals of Z_3 are the "broken diagonals" c = r + j.
        for shift in 0..3 {
            let cells: Vec<usize> = (0..3).map(|r| r * 3 + (r + shift) % 3).collect();
            let x = Matching::from_assignment(&h, &cells).unwrap();
            let r = bad_edge_sets(&h, &x).unwrap();
            assert!(r.s_edges.is_empty() && r.t_edges.is_empty());
        }
    }

    #[test]
    fn bad_edges_require_perfect_matching() {
        let h = hs();
        let x = Matching::new(&h, vec![0]).unwrap();
        assert!(matches!(bad_edge_sets(&h, &x), Err(Error::NotAPerfect)));
        let other = h1();
        let foreign = Matching::new(&other, vec![0]).unwrap();
        assert!(bad_edge_sets(&h, &foreign).is_err());
    }

    #[test]
    fn exponents_on_cyclic_three() {
        let h = h3();
        let diagonal: Vec<usize> = (0..3).map(|r| r * 3 + r).collect();
        let x = Matching::from_assignment(&h, &diagonal).unwrap();
        assert_eq!(incidence_exponent(&h, &x, 0, diagonal[0]).unwrap(), 0);
        // Cell (0,1) holds symbol 1: column 1 is X_{r1}, symbol 1 is X_{r2}'s.
        assert_eq!(incidence_exponent(&h, &x, 0, 1).unwrap(), 2);
        assert!(matches!(
            incidence_exponent(&h, &x, 1, 1),
            Err(Error::EdgeNotIncident)
        ));
    }

    #[test]
    fn exponent_in_hs() {
        let h = hs();
        let x = Matching::new(&h, vec![0, 1]).unwrap();
        assert_eq!(incidence_exponent(&h, &x, 1, 2).unwrap(), 1);
    }

    #[test]
    fn text_round_trip() {
        let h = hs();
        let parsed = BipartiteHypergraph::parse(&h.to_text()).unwrap();
        assert_eq!(parsed, h);
        assert_eq!(parsed.id(), h.id());
    }

    #[test]
    fn parse_rejects_bad_lines() {
        let err = BipartiteHypergraph::parse("2 1 3 1\n0 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = BipartiteHypergraph::parse("# c\n2 1 3 2\n0 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = BipartiteHypergraph::parse("2 1 3 1\n0 1 1\n").unwrap_err();
        assert!(err.to_string().contains("repeated B-vertex"));
        let ok = BipartiteHypergraph::parse("# hs\n2 1 3 1  # header\n\n0 1 2\n").unwrap();
        assert_eq!(ok.edges().len(), 1);
    }
}
