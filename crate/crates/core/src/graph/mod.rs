//! Undirected simple graphs on `0..n` with one bitset row per vertex.
//!
//! Common-neighbour counting is an AND of two rows followed by a popcount,
//! which is what makes exhaustive all-pairs scans cheap at the sizes used here.

mod orbits;
mod perm;
mod search;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

pub use orbits::{orbits_on, Item, ItemKind};
pub use perm::{PermGroup, VertexPermutation};
pub use search::{automorphism_search, DEFAULT_SEARCH_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("common neighbours of a vertex with itself are not defined (vertex {0})")]
    SameVertex(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("parts do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("permutation of degree {found} applied to a graph on {expected} vertices")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("graph on {n} vertices exceeds the search bound {bound}")]
    SizeBoundExceeded { n: usize, bound: usize },
    #[error("group order does not fit in 128 bits")]
    OrderOverflow,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph {{ n: {}, edges: {} }}", self.n, self.edge_count())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Regular(usize),
    NotRegular { u: usize, degree_u: usize, v: usize, degree_v: usize },
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Graph { n, words, rows: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge_unchecked(u, (u + 1) % n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::IndexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(u))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbours(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    #[inline]
    pub(crate) fn common_count_unchecked(&self, u: usize, v: usize) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbour_count(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self.common_count_unchecked(u, v))
    }

    /// The common neighbours of `u` and `v`, ascending.
    pub fn common_neighbours(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.common_neighbour_count(u, v)?;
        let joint: Vec<u64> = self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        Ok(bits(&joint).collect())
    }

    pub fn regularity(&self) -> Regularity {
        let Some(d0) = (self.n > 0).then(|| self.degree(0)) else {
            return Regularity::Regular(0);
        };
        for v in 1..self.n {
            let d = self.degree(v);
            if d != d0 {
                return Regularity::NotRegular { u: 0, degree_u: d0, v, degree_v: d };
            }
        }
        Regularity::Regular(d0)
    }

    /// Subgraph induced by `vs`, with `map[i]` the original index of new vertex `i`.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if vs.is_empty() {
            return Err(GraphError::EmptySet);
        }
        for &v in vs {
            self.check_vertex(v)?;
        }
        let mut map = vs.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut sub = Graph::empty(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    sub.add_edge_unchecked(i, j);
                }
            }
        }
        Ok((sub, map))
    }

    /// Every part independent and every pair from different parts adjacent.
    pub fn is_complete_multipartite(&self, parts: &[Vec<usize>]) -> Result<bool> {
        let mut part_of = vec![usize::MAX; self.n];
        for (p, part) in parts.iter().enumerate() {
            for &v in part {
                self.check_vertex(v)?;
                if part_of[v] != usize::MAX {
                    return Err(GraphError::NotAPartition(format!("vertex {v} appears twice")));
                }
                part_of[v] = p;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(GraphError::NotAPartition(format!("vertex {v} is not covered")));
        }
        Ok((0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_edge(u, v) == (part_of[u] != part_of[v]))))
    }

    /// The image graph `p(g)`, with `p(u) ~ p(v)` iff `u ~ v`.
    pub fn relabel(&self, p: &VertexPermutation) -> Result<Graph> {
        if p.degree() != self.n {
            return Err(GraphError::DegreeMismatch { expected: self.n, found: p.degree() });
        }
        let mut out = Graph::empty(self.n);
        for (u, v) in self.edges() {
            out.add_edge_unchecked(p.apply(u), p.apply(v));
        }
        Ok(out)
    }

    pub fn is_automorphism(&self, p: &VertexPermutation) -> Result<bool> {
        if p.degree() != self.n {
            return Err(GraphError::DegreeMismatch { expected: self.n, found: p.degree() });
        }
        Ok(self.is_automorphism_map(p.as_slice()))
    }

    /// Edge preservation suffices: a bijection maps the edge set injectively
    /// into itself, hence onto it.
    pub(crate) fn is_automorphism_map(&self, map: &[usize]) -> bool {
        (0..self.n).all(|u| self.degree(map[u]) == self.degree(u))
            && self.edges().all(|(u, v)| self.has_edge(map[u], map[v]))
    }

    /// Line-oriented edge list: `vertices N` then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) =
            lines.next().ok_or(GraphError::ParseError { line: 0, message: "missing `vertices N` header".into() })?;
        let n: usize =
            header.strip_prefix("vertices").map(str::trim).and_then(|t| t.parse().ok()).ok_or_else(|| {
                GraphError::ParseError { line, message: format!("expected `vertices N`, found `{header}`") }
            })?;
        let mut g = Graph::empty(n);
        for (line, l) in lines {
            let parse_err = || GraphError::ParseError { line, message: format!("expected `u v`, found `{l}`") };
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
            let (Some(Ok(u)), Some(Ok(v)), None) = (it.next(), it.next(), it.next()) else {
                return Err(parse_err());
            };
            g.add_edge(u, v).map_err(|e| GraphError::ParseError { line, message: e.to_string() })?;
        }
        Ok(g)
    }

    pub fn write_edge_list(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_edge_list())
            .map_err(|e| GraphError::Io { path: path.display().to_string(), message: e.to_string() })
    }

    pub fn read_edge_list(path: &Path) -> Result<Graph> {
        let text = fs::read_to_string(path)
            .map_err(|e| GraphError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Graph::from_edge_list(&text)
    }
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * WORD + b)
        })
    })
}
