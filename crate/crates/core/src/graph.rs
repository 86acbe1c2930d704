//! Simple undirected graphs stored as packed adjacency bit rows.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] may hold.
pub const MAX_VERTICES: usize = 1 << 16;

/// An immutable simple graph on the vertices `0..n`.
///
/// Row `v` of the adjacency relation occupies `words` consecutive `u64`s;
/// bit `u` of that row is set iff `uv` is an edge. The relation is kept
/// symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let words = n.div_ceil(64);
        Ok(Graph { n, words, rows: vec![0; words * n] })
    }

    /// Builds a graph from an edge list. Loops are rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidFamily(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        Graph::empty(n).map(|g| g.complement())
    }

    /// Path `P_n` on vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidFamily(format!("cycle needs n >= 3, got {n}")));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Sets or clears the edge `uv` in place. Callers guarantee `u != v`.
    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (wu, bu) = (u * self.words + v / 64, v % 64);
        let (wv, bv) = (v * self.words + u / 64, u % 64);
        if present {
            self.rows[wu] |= 1 << bu;
            self.rows[wv] |= 1 << bv;
        } else {
            self.rows[wu] &= !(1 << bu);
            self.rows[wv] &= !(1 << bv);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Number of edges `e(G)`.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v)))
    }

    /// The complement graph: `uv` is an edge iff `u != v` and `uv` is not an edge here.
    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.rows.len());
        for v in 0..self.n {
            for (i, &w) in self.row(v).iter().enumerate() {
                let lo = i * 64;
                let valid = if lo + 64 <= self.n { u64::MAX } else { (1u64 << (self.n - lo)) - 1 };
                let mut c = !w & valid;
                if v / 64 == i {
                    c &= !(1 << (v % 64));
                }
                rows.push(c);
            }
        }
        Graph { n: self.n, words: self.words, rows }
    }

    /// Returns a copy with the edge `uv` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let mut g = self.clone();
        g.set_edge(u, v, false);
        Ok(g)
    }

    /// Returns a copy with the edge `uv` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidFamily(format!("self-loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.set_edge(u, v, true);
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n, true);
        }
        Ok(g)
    }

    /// Join: disjoint union plus every edge between the two vertex sets.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v, true);
            }
        }
        Ok(g)
    }

    /// Connected-component label of each vertex (labels in order of first vertex) and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        stack.push(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    pub fn is_regular(&self) -> bool {
        let mut d = (0..self.n).map(|v| self.degree(v));
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            self.check_vertex(u)?;
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
    }

    #[test]
    fn complement_of_star_is_clique_plus_isolated() {
        let expected = Graph::complete(3).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        // star centre 0 becomes the isolated vertex; relabel so it is last
        let c = star(4).complement();
        assert_eq!(c.degree(0), 0);
        assert_eq!(c.induced(&[1, 2, 3, 0]).unwrap(), expected);
    }

    #[test]
    fn complement_spans_word_boundaries() {
        let g = Graph::path(130).unwrap();
        let c = g.complement();
        assert_eq!(g.edge_count() + c.edge_count(), 130 * 129 / 2);
        assert!(!c.has_edge(64, 64));
        assert!(!c.has_edge(63, 64));
        assert!(c.has_edge(0, 129));
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn remove_edge_turns_triangle_into_path() {
        let p = Graph::complete(3).unwrap().remove_edge(0, 2).unwrap();
        assert_eq!(p, Graph::path(3).unwrap());
        assert_eq!(p.add_edge(0, 2).unwrap(), Graph::complete(3).unwrap());
        assert!(matches!(p.remove_edge(0, 2), Err(Error::NotAnEdge { .. })));
    }

    #[test]
    fn components_and_neighbors() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let (labels, count) = g.components();
        assert_eq!(count, 3);
        assert_eq!(labels, vec![0, 0, 1, 1, 1, 2]);
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![2, 4]);
        assert!(!g.is_connected());
        assert!(!Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn join_counts_cross_edges() {
        let g = Graph::empty(2).unwrap().join(&Graph::complete(3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 3 + 6);
        assert_eq!(g.degrees(), vec![3, 3, 4, 4, 4]);
    }

    #[test]
    fn rejects_loops_and_bad_vertices() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(matches!(Graph::from_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange { .. })));
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }
}
