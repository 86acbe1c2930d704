//! Bipartitions `(X, Y)` with `|Y| >= |X|` and the saturation counts `t`, `ℓ`.

use crate::graph::Graph;

/// A bipartition of a bipartite graph together with its saturated vertices.
///
/// `x0` holds the vertices of `X` adjacent to all of `Y`; `y0` the vertices of
/// `Y` adjacent to all of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipStructure {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x0: Vec<usize>,
    pub y0: Vec<usize>,
}

impl BipStructure {
    /// `k = |X|`.
    pub fn k(&self) -> usize {
        self.x.len()
    }

    /// `r = |Y| = n - k`.
    pub fn r(&self) -> usize {
        self.y.len()
    }

    /// `t = |X₀|`.
    pub fn t(&self) -> usize {
        self.x0.len()
    }

    /// `ℓ = |Y₀|`.
    pub fn ell(&self) -> usize {
        self.y0.len()
    }

    pub fn n(&self) -> usize {
        self.x.len() + self.y.len()
    }
}

/// Two-colours `g` component by component.
///
/// In each component with an edge the smaller colour class joins `X`; on a tie
/// the class holding the component's smallest vertex does. Isolated vertices
/// join `Y`. Returns `None` if `g` has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<BipStructure> {
    let n = g.n();
    let mut colour = vec![u8::MAX; n];
    let mut in_x = vec![false; n];
    let mut queue = Vec::new();
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for u in g.neighbors(v) {
                if colour[u] == u8::MAX {
                    colour[u] = 1 - colour[v];
                    queue.push(u);
                } else if colour[u] == colour[v] {
                    return None;
                }
            }
        }
        if queue.len() == 1 {
            continue;
        }
        let zeros = queue.iter().filter(|&&v| colour[v] == 0).count();
        let ones = queue.len() - zeros;
        let x_colour = if zeros <= ones { 0 } else { 1 };
        for &v in &queue {
            in_x[v] = colour[v] == x_colour;
        }
    }

    let x: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let y: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let x0 = x.iter().copied().filter(|&v| g.degree(v) == y.len()).collect();
    let y0 = y.iter().copied().filter(|&v| g.degree(v) == x.len()).collect();
    Some(BipStructure { x, y, x0, y0 })
}

/// Whether `g` has no odd cycle.
pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}
