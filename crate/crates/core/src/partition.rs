//! Vertex partitions and quotient matrices of the signless Laplacian.
//!
//! For a partition `V_1, ..., V_m`, block `Q_ij` is the submatrix of `Q(G)`
//! with rows in `V_i` and columns in `V_j`. If every block has constant row
//! sums `r_ij` the partition is equitable and the eigenvalues of `R = (r_ij)`
//! are eigenvalues of `Q(G)`, the largest being `q₁`. If the `r_ij` only bound
//! the row sums from above, `q₁ <= λ_max(R)`. Only `Q` is supported: its blocks
//! have nonnegative row sums, which the upper bound relies on.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{char_poly_exact, largest_real_root, RootInterval};
use crate::spectra::IntMatrix;

/// Largest quotient accepted by [`quotient_max_eig`].
pub const QUOTIENT_MAX_DIM: usize = 8;

/// Accuracy of quotient eigenvalues.
pub const QUOTIENT_ROOT_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    m: usize,
}

impl Partition {
    /// Validates that the labels are exactly `0..m` with every block nonempty.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        let m = block_of.iter().max().map_or(0, |&b| b + 1);
        let mut seen = vec![false; m];
        for &b in &block_of {
            seen[b] = true;
        }
        if let Some(empty) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("block {empty} is empty")));
        }
        Ok(Partition { block_of, m })
    }

    /// Builds a partition of `0..n` from explicit blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range for n = {n}")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Partition::new(block_of)
    }

    /// Groups vertices by degree, blocks ordered by decreasing degree.
    pub fn by_degree(g: &Graph) -> Self {
        let degrees = g.degrees();
        let mut distinct: Vec<usize> = degrees.clone();
        distinct.sort_unstable_by(|a, b| b.cmp(a));
        distinct.dedup();
        let block_of = degrees.iter().map(|d| distinct.iter().position(|x| x == d).unwrap()).collect();
        Partition { block_of, m: distinct.len() }
    }

    pub fn block_count(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientMode {
    Exact,
    Dominating,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: IntMatrix,
    pub mode: QuotientMode,
}

/// A vertex whose row sum into some block differs from the first vertex of its block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableViolation {
    pub vertex: usize,
    pub block: usize,
    pub row_sum: i64,
    pub expected: i64,
}

/// Row sums of `Q(G)` restricted to each block, for vertex `v`.
fn block_row_sums(g: &Graph, p: &Partition, v: usize) -> Vec<i64> {
    let mut sums = vec![0i64; p.m];
    for u in g.neighbors(v) {
        sums[p.block_of[u]] += 1;
    }
    sums[p.block_of[v]] += g.degree(v) as i64;
    sums
}

fn check_sizes(g: &Graph, p: &Partition) -> Result<()> {
    if g.n() != p.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices but the graph has {}",
            p.len(),
            g.n()
        )));
    }
    Ok(())
}

/// The exact quotient of `Q(G)` if `p` is equitable, otherwise the first offending vertex.
pub fn check_equitable(g: &Graph, p: &Partition) -> Result<std::result::Result<QuotientMatrix, EquitableViolation>> {
    check_sizes(g, p)?;
    let mut entries = IntMatrix::zeros(p.m);
    let mut filled = vec![false; p.m];
    for v in 0..g.n() {
        let i = p.block_of[v];
        let sums = block_row_sums(g, p, v);
        if !filled[i] {
            for (j, &s) in sums.iter().enumerate() {
                entries.set(i, j, s);
            }
            filled[i] = true;
            continue;
        }
        for (j, &s) in sums.iter().enumerate() {
            if s != entries.get(i, j) {
                return Ok(Err(EquitableViolation { vertex: v, block: j, row_sum: s, expected: entries.get(i, j) }));
            }
        }
    }
    Ok(Ok(QuotientMatrix { entries, mode: QuotientMode::Exact }))
}

/// Entry `(i, j)` is the largest row sum of block `Q_ij`.
pub fn dominating_quotient(g: &Graph, p: &Partition) -> Result<QuotientMatrix> {
    check_sizes(g, p)?;
    let mut entries = IntMatrix::zeros(p.m);
    for v in 0..g.n() {
        let i = p.block_of[v];
        for (j, s) in block_row_sums(g, p, v).into_iter().enumerate() {
            if s > entries.get(i, j) {
                entries.set(i, j, s);
            }
        }
    }
    Ok(QuotientMatrix { entries, mode: QuotientMode::Dominating })
}

/// Entries kept per thread by the root cache before it is cleared.
const ROOT_CACHE_CAP: usize = 1 << 16;

thread_local! {
    // scans meet the same few quotients over and over; the exact root is costly
    static ROOT_CACHE: RefCell<HashMap<IntMatrix, RootInterval>> = RefCell::new(HashMap::new());
}

/// Isolating interval of the largest real eigenvalue of a quotient matrix.
pub fn quotient_max_eig_interval(q: &QuotientMatrix) -> Result<RootInterval> {
    let m = q.entries.n();
    if m > QUOTIENT_MAX_DIM {
        return Err(Error::DimensionCap { dim: m, max: QUOTIENT_MAX_DIM });
    }
    if m == 0 {
        return Err(Error::InvalidPartition("empty quotient".into()));
    }
    if let Some(hit) = ROOT_CACHE.with(|c| c.borrow().get(&q.entries).cloned()) {
        return Ok(hit);
    }
    let p = char_poly_exact(&q.entries)?;
    // a nonnegative matrix has a real Perron root, so this never fails for graph quotients
    let root = largest_real_root(&p.to_rational(), QUOTIENT_ROOT_WIDTH)
        .ok_or_else(|| Error::ComplexRoots(format!("characteristic polynomial {p} has no real root")))?;
    ROOT_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= ROOT_CACHE_CAP {
            c.clear();
        }
        c.insert(q.entries.clone(), root.clone());
    });
    Ok(root)
}

/// Largest real eigenvalue of a quotient matrix, from its exact characteristic
/// polynomial, accurate to `1e-12`.
pub fn quotient_max_eig(q: &QuotientMatrix) -> Result<f64> {
    quotient_max_eig_interval(q).map(|r| r.midpoint())
}
