//! Exact degree statistics: `d(v)`, `m(v)`, `Δ`, `δ`, `e`.

use num_rational::Ratio;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<u64>,
    pub max_deg: u64,
    pub min_deg: u64,
    pub edges: u64,
    /// Sum of the neighbours' degrees, `m(v)·d(v)`.
    pub neighbor_degree_sums: Vec<u64>,
    /// Average neighbour degree `m(v)`; `None` for isolated vertices.
    pub avg_neighbor_deg: Vec<Option<Ratio<u64>>>,
}

impl DegreeStats {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `d(v) + m(v)`, or `None` when `v` is isolated.
    pub fn degree_plus_avg(&self, v: usize) -> Option<Ratio<u64>> {
        self.avg_neighbor_deg[v].map(|m| m + self.degrees[v])
    }

    /// `max { d(v) + m(v) }` over non-isolated vertices, `None` for edgeless graphs.
    pub fn max_degree_plus_avg(&self) -> Option<Ratio<u64>> {
        (0..self.n()).filter_map(|v| self.degree_plus_avg(v)).max()
    }
}

pub fn degree_stats(g: &Graph) -> DegreeStats {
    let degrees: Vec<u64> = (0..g.n()).map(|v| g.degree(v) as u64).collect();
    let neighbor_degree_sums: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).map(|u| degrees[u]).sum()).collect();
    let avg_neighbor_deg =
        degrees.iter().zip(&neighbor_degree_sums).map(|(&d, &s)| (d > 0).then(|| Ratio::new(s, d))).collect();
    DegreeStats {
        max_deg: degrees.iter().copied().max().unwrap_or(0),
        min_deg: degrees.iter().copied().min().unwrap_or(0),
        edges: degrees.iter().sum::<u64>() / 2,
        degrees,
        neighbor_degree_sums,
        avg_neighbor_deg,
    }
}
