//! Undirected skeleta and the structural statistics computed on them.
//!
//! Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v`, sorted and
//! duplicate-free, so the position of an edge in [`UndirectedGraph::edges`] is a
//! stable identity. Orientations elsewhere in the crate index edges by it.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::GraphError;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Global clustering coefficient, or a marker for graphs with no 2-paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clustering {
    Defined(Ratio<u64>),
    /// The graph has no connected triple; the coefficient is reported as zero.
    Undefined,
}

impl Clustering {
    pub fn value(&self) -> Ratio<u64> {
        match self {
            Clustering::Defined(r) => *r,
            Clustering::Undefined => Ratio::from_integer(0),
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Clustering::Defined(_))
    }
}

impl UndirectedGraph {
    /// Builds a graph, normalising each pair to `(min, max)` and removing duplicates.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(UndirectedGraph { n, edges: canon })
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        UndirectedGraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Position of the edge `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_index(u, v).is_some()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Dense boolean adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let mut m = vec![false; self.n * self.n];
        for &(u, v) in &self.edges {
            m[u * self.n + v] = true;
            m[v * self.n + u] = true;
        }
        m
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> UndirectedGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        UndirectedGraph::new(vertices.len(), edges).expect("induced subgraph stays in range")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<UndirectedGraph, GraphError> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if perm.len() != self.n || check.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(GraphError::NotAPermutation);
        }
        UndirectedGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn triangle_count(&self) -> u64 {
        let m = self.adjacency_matrix();
        let n = self.n;
        let mut count = 0;
        for &(u, v) in &self.edges {
            for w in (v + 1)..n {
                if m[u * n + w] && m[v * n + w] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle_count() == 0
    }

    /// Number of paths of length two, counted by centre: `sum C(deg v, 2)`.
    pub fn two_path_count(&self) -> u64 {
        self.degrees()
            .iter()
            .map(|&d| (d as u64) * (d as u64).saturating_sub(1) / 2)
            .sum()
    }

    /// Triples `{i, j, k}` with `i - j - k` present and `{i, k}` absent.
    pub fn count_induced_3paths(&self) -> u64 {
        let m = self.adjacency_matrix();
        let n = self.n;
        let adj = self.adjacency();
        let mut count = 0;
        for nbrs in &adj {
            for (a, &i) in nbrs.iter().enumerate() {
                for &k in &nbrs[a + 1..] {
                    if !m[i * n + k] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// `3 * triangles / 2-paths`, exact.
    pub fn clustering_coefficient(&self) -> Clustering {
        let paths = self.two_path_count();
        if paths == 0 {
            return Clustering::Undefined;
        }
        Clustering::Defined(Ratio::new(3 * self.triangle_count(), paths))
    }

    /// Maximum degree and average degree `2|E| / n`.
    pub fn degree_stats(&self) -> Result<(usize, Ratio<u64>), GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let max = self.degrees().into_iter().max().unwrap_or(0);
        Ok((max, Ratio::new(2 * self.edges.len() as u64, self.n as u64)))
    }

    /// Parses the edge-list text format: a `n <count>` header, then one `u v` pair per line.
    /// `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let first = fields.next().unwrap_or("");
            let second = fields.next();
            if fields.next().is_some() {
                return Err(GraphError::Parse { line: line_no, message: "too many fields".into() });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("not a vertex count or index: {s:?}"),
                })
            };
            match (n, first, second) {
                (None, "n", Some(count)) => n = Some(parse(count)?),
                (None, _, _) => {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "expected header `n <count>`".into(),
                    })
                }
                (Some(_), u, Some(v)) => edges.push((parse(u)?, parse(v)?)),
                (Some(_), _, None) => {
                    return Err(GraphError::Parse { line: line_no, message: "expected `u v`".into() })
                }
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, message: "missing header `n <count>`".into() })?;
        UndirectedGraph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
    pub fn from_graph6(line: &str) -> Result<Self, GraphError> {
        let s = line.trim_end_matches(['\n', '\r']);
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        let bad = |m: &str| GraphError::Graph6(m.to_string());
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(GraphError::Graph6(format!("byte {b} outside 63..=126")));
        }
        let (n, body) = match bytes {
            [] => return Err(bad("empty input")),
            [126, 126, rest @ ..] => {
                if rest.len() < 6 {
                    return Err(bad("truncated 36-bit vertex count"));
                }
                let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                (n, &rest[6..])
            }
            [126, rest @ ..] => {
                if rest.len() < 3 {
                    return Err(bad("truncated 18-bit vertex count"));
                }
                let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
                (n, &rest[3..])
            }
            [first, rest @ ..] => ((first - 63) as usize, rest),
        };
        let nbits = n * n.saturating_sub(1) / 2;
        if body.len() != nbits.div_ceil(6) {
            return Err(GraphError::Graph6(format!(
                "expected {} data bytes for n = {n}, found {}",
                nbits.div_ceil(6),
                body.len()
            )));
        }
        let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        if (nbits..body.len() * 6).any(bit) {
            return Err(bad("nonzero padding bits"));
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        UndirectedGraph::new(n, edges)
    }

    /// Encodes the graph as a graph6 line (no header, no newline).
    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out: Vec<u8> = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
        } else {
            out.extend([126, 126]);
            out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
        }
        let m = self.adjacency_matrix();
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | m[i * n + j] as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }
}

impl FromStr for UndirectedGraph {
    type Err = GraphError;

    /// Accepts either the edge-list format or a single graph6 line.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let first = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with("n ") || first == "n" {
            UndirectedGraph::parse_edge_list(s)
        } else {
            UndirectedGraph::from_graph6(first)
        }
    }
}

impl fmt::Display for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({u},{v})")?;
        }
        write!(f, "]")
    }
}
