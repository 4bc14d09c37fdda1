use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest vertex count a [`SimpleGraph`] can hold.
pub const MAX_VERTICES: usize = 16;

/// Undirected simple graph stored as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleGraph {
    n: usize,
    rows: Vec<u16>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Self {
            n,
            rows: vec![0; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Domain(format!(
                "at most {MAX_VERTICES} vertices, got {n}"
            )));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse(format!("duplicate edge ({u}, {v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Line graph of `K_m`: vertices are 2-subsets, adjacent when they meet.
    pub fn triangular(m: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        let mut g = Self::empty(pairs.len());
        for a in 0..pairs.len() {
            for b in a + 1..pairs.len() {
                let (p, q) = (pairs[a], pairs[b]);
                if p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1 {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn row(&self, u: usize) -> u16 {
        self.rows[u]
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.rows[u].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Graph with vertex `perm[i]` of `self` renamed to `i`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        let mut g = Self::empty(self.n - 1);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Adds a new vertex adjacent to the vertices in `mask`.
    pub fn extend(&self, mask: u16) -> Self {
        let mut g = self.clone();
        g.n += 1;
        g.rows.push(0);
        let v = self.n;
        for u in 0..self.n {
            if mask >> u & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Connected components as vertex bitmasks.
    pub fn components(&self) -> Vec<u16> {
        let mut seen: u16 = 0;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp: u16 = 1 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.rows[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Parses `n m` followed by `m` lines `u v` (0-indexed).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            writeln!(s, "{u} {v}").expect("writing to a String cannot fail");
        }
        s
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a?, b?)),
        _ => Err(Error::Parse(format!("expected two integers, got `{line}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = SimpleGraph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, SimpleGraph::path(3));
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(SimpleGraph::parse("").is_err());
        assert!(SimpleGraph::parse("3 2\n0 1\n").is_err());
        assert!(SimpleGraph::parse("3 1\n0 3\n").is_err());
        assert!(SimpleGraph::parse("3 1\n1 1\n").is_err());
        assert!(SimpleGraph::parse("3 2\n0 1\n1 0\n").is_err());
        assert!(SimpleGraph::parse("3 x\n").is_err());
    }

    #[test]
    fn triangular_five_is_petersen_complement() {
        let t = SimpleGraph::triangular(5);
        assert_eq!(t.n(), 10);
        assert_eq!(t.edge_count(), 30);
        assert!((0..10).all(|v| t.degree(v) == 6));
        // The complement is 3-regular with 15 edges.
        let p = t.complement();
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn components_of_union() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0b00011, 0b11100]);
    }

    #[test]
    fn remove_and_extend() {
        let g = SimpleGraph::path(4);
        assert_eq!(g.remove_vertex(3), SimpleGraph::path(3));
        assert_eq!(SimpleGraph::path(3).extend(0b100), g);
    }
}
