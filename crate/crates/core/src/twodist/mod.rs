//! Two-distance sets: graph enumeration up to isomorphism, partition
//! counts, the count `Σ_n = Γ_n - p(n)` of two-distance sets on `n` points
//! in `R^{n-2}`, and representation numbers `dim₂(G)`.

mod canon;
mod dim2;
mod graph;

use std::io::Write;

use serde::Serialize;

pub use canon::{canonical_form, canonical_labeling, enumerate_graphs, CanonicalForm, MAX_CANON_N};
pub use dim2::{dim2, is_clique_union, Dim2Result, WITNESS_TOL};
pub use graph::{SimpleGraph, MAX_VERTICES};

use crate::error::{Error, Result};

fn check_canon_range(n: usize) -> Result<()> {
    if !(1..=MAX_CANON_N).contains(&n) {
        return Err(Error::Domain(format!(
            "graph enumeration supports 1 <= n <= {MAX_CANON_N}, got {n}"
        )));
    }
    Ok(())
}

/// `Γ_n`, the number of simple graphs on `n` vertices up to isomorphism.
pub fn count_graphs(n: usize) -> Result<u64> {
    check_canon_range(n)?;
    Ok(enumerate_graphs(n).len() as u64)
}

/// `p(n)` by Euler's pentagonal number recurrence.
pub fn partitions(n: usize) -> Result<u128> {
    let mut p: Vec<u128> = Vec::with_capacity(n + 1);
    p.push(1);
    for m in 1..=n {
        let mut plus: u128 = 0;
        let mut minus: u128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let term = p[m - g1] + if g2 <= m { p[m - g2] } else { 0 };
            if k % 2 == 1 {
                plus = plus.checked_add(term).ok_or_else(|| overflow(n))?;
            } else {
                minus += term;
            }
        }
        p.push(plus - minus);
    }
    Ok(p[n])
}

fn overflow(n: usize) -> Error {
    Error::Domain(format!("p({n}) does not fit in 128 bits"))
}

/// `Σ_n = Γ_n - p(n)`.
pub fn sigma(n: usize) -> Result<u64> {
    let gamma = count_graphs(n)?;
    Ok(gamma - partitions(n)? as u64)
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusRow {
    pub canonical_form_hex: String,
    pub n: usize,
    pub edges: usize,
    pub dim2: usize,
    pub ratio_c: f64,
}

/// `dim₂` for one representative of every isomorphism class on `n`
/// vertices, in canonical-form order.
pub fn census(n: usize) -> Result<Vec<CensusRow>> {
    check_canon_range(n)?;
    if n < 2 {
        return Err(Error::Domain("census needs n >= 2".into()));
    }
    let graphs = enumerate_graphs(n);
    let row = |g: &SimpleGraph| -> Result<CensusRow> {
        let r = dim2(g)?;
        Ok(CensusRow {
            canonical_form_hex: canonical_form(g).to_hex(),
            n,
            edges: g.edge_count(),
            dim2: r.dim2,
            ratio_c: r.ratio,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        graphs.par_iter().map(row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        graphs.iter().map(row).collect()
    }
}

pub const CENSUS_HEADER: &str = "canonical_form_hex,n,edges,dim2,ratio_c";

pub fn write_census_csv<W: Write>(rows: &[CensusRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CENSUS_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{:.10}",
            r.canonical_form_hex, r.n, r.edges, r.dim2, r.ratio_c
        )?;
    }
    Ok(())
}
