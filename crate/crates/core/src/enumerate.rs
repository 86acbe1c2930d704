//! Exhaustive generation of labelled graphs by edge mask.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`enumerate_labelled`]; `2^28` graphs at `n = 8`.
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Vertex pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), ...`.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// All labelled simple graphs on `n` vertices; graph `i` has edge `pair_order(n)[b]`
/// iff bit `b` of `i` is set.
#[derive(Debug, Clone)]
pub struct LabelledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl LabelledGraphs {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ENUMERATION_ORDER {
            return Err(Error::TooManyVertices { n, max: MAX_ENUMERATION_ORDER });
        }
        Ok(LabelledGraphs { n, pairs: pair_order(n) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^{n(n-1)/2}`.
    pub fn len(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The graph with edge mask `index`.
    pub fn graph(&self, index: u64) -> Graph {
        debug_assert!(index < self.len());
        let mut g = Graph::empty(self.n).expect("enumeration order is small");
        let mut mask = index;
        while mask != 0 {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let (u, v) = self.pairs[b];
            g.set_edge(u, v, true);
        }
        g
    }

    /// Graphs with mask in `range`, in increasing mask order.
    pub fn range(&self, range: Range<u64>) -> impl Iterator<Item = Graph> + '_ {
        let end = range.end.min(self.len());
        (range.start..end).map(move |i| self.graph(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        self.range(0..self.len())
    }
}

/// Every labelled graph on `n <= 8` vertices, in edge-mask order.
pub fn enumerate_labelled(n: usize) -> Result<impl Iterator<Item = Graph>> {
    let all = LabelledGraphs::new(n)?;
    let len = all.len();
    Ok((0..len).map(move |i| all.graph(i)))
}
