//! Canonical forms by exhaustive search over vertex orderings.
//!
//! The adjacency bitstring of a labeled graph lists the upper triangle
//! column by column, `(0,1), (0,2), (1,2), (0,3), ...`, so that the first
//! `k(k-1)/2` bits depend only on the first `k` vertices. The canonical form
//! is the minimum of this bitstring over all `n!` orderings, found by
//! branch and bound on prefixes.

use std::collections::HashMap;

use super::graph::SimpleGraph;

/// Largest `n` accepted by the enumeration helpers.
pub const MAX_CANON_N: usize = 8;

/// Canonical form as `(bits, bit_length)`; the first bit is most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    pub fn bit_len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn to_hex(&self) -> String {
        let width = self.bit_len().div_ceil(4).max(1);
        format!("{:0width$x}", self.bits)
    }

    /// The labeled graph whose bitstring is this form.
    pub fn to_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        let total = self.bit_len();
        let mut pos = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits >> (total - 1 - pos) & 1 == 1 {
                    g.add_edge(i, j);
                }
                pos += 1;
            }
        }
        g
    }
}

struct Search<'a> {
    g: &'a SimpleGraph,
    n: usize,
    total: usize,
    perm: Vec<usize>,
    used: u16,
    best: u64,
    best_perm: Vec<usize>,
    have_best: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, prefix: u64, len: usize) {
        if depth == self.n {
            if !self.have_best || prefix < self.best {
                self.best = prefix;
                self.best_perm = self.perm.clone();
                self.have_best = true;
            }
            return;
        }
        for v in 0..self.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut p = prefix;
            for i in 0..depth {
                p = p << 1 | u64::from(self.g.has_edge(self.perm[i], v));
            }
            let l = len + depth;
            if self.have_best {
                let best_prefix = if self.total == 0 {
                    0
                } else {
                    self.best >> (self.total - l)
                };
                if p > best_prefix {
                    continue;
                }
            }
            self.perm.push(v);
            self.used |= 1 << v;
            self.run(depth + 1, p, l);
            self.used &= !(1 << v);
            self.perm.pop();
        }
    }
}

/// Canonical form and an ordering realizing it (`perm[i]` is the original
/// vertex placed at position `i`).
pub fn canonical_labeling(g: &SimpleGraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let mut s = Search {
        g,
        n,
        total: n * n.saturating_sub(1) / 2,
        perm: Vec::with_capacity(n),
        used: 0,
        best: 0,
        best_perm: Vec::new(),
        have_best: false,
    };
    s.run(0, 0, 0);
    (CanonicalForm { n, bits: s.best }, s.best_perm)
}

pub fn canonical_form(g: &SimpleGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

fn extensions(g: &SimpleGraph) -> Vec<CanonicalForm> {
    let n = g.n();
    (0u16..1 << n)
        .map(|mask| canonical_form(&g.extend(mask)))
        .collect()
}

/// One canonically labeled representative per isomorphism class on `n`
/// vertices, sorted by canonical form. Built by adding a vertex in every
/// possible way to the classes on `n - 1` vertices.
pub fn enumerate_graphs(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= MAX_CANON_N, "enumeration supports n <= {MAX_CANON_N}");
    let mut level = vec![SimpleGraph::empty(n.min(1))];
    if n == 0 {
        return level;
    }
    for _ in 1..n {
        #[cfg(feature = "parallel")]
        let forms: Vec<Vec<CanonicalForm>> = {
            use rayon::prelude::*;
            level.par_iter().map(extensions).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let forms: Vec<Vec<CanonicalForm>> = level.iter().map(extensions).collect();

        let mut classes: HashMap<u64, CanonicalForm> = HashMap::new();
        for f in forms.into_iter().flatten() {
            classes.entry(f.bits).or_insert(f);
        }
        let mut sorted: Vec<CanonicalForm> = classes.into_values().collect();
        sorted.sort();
        level = sorted.iter().map(CanonicalForm::to_graph).collect();
    }
    level
}
