//! Edit builder for rewrites: vertex deletion, vertex merging (union-find),
//! fresh vertices, and multiplicity deltas, applied in one pass that
//! compacts ids and reports loops instead of silently constructing them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Vertex};

/// Result of applying a rewrite. Loops cannot be represented in a
/// [`Multigraph`], so a rewrite that would create one reports the count
/// instead; that is exactly what the hostile-mode guard tests assert on.
#[derive(Clone, Debug)]
pub enum Rewritten {
    Graph {
        graph: Multigraph,
        /// `rename[old_id] = Some(new_id)` for surviving vertices.
        rename: Vec<Option<Vertex>>,
    },
    Loops { count: usize },
}

impl Rewritten {
    pub fn graph(self) -> Option<Multigraph> {
        match self {
            Rewritten::Graph { graph, .. } => Some(graph),
            Rewritten::Loops { .. } => None,
        }
    }
}

pub struct Rewriter {
    base: Multigraph,
    removed: Vec<bool>,
    parent: Vec<usize>,
    extra: usize,
    delta: BTreeMap<(usize, usize), i32>,
}

impl Rewriter {
    pub fn new(g: &Multigraph) -> Self {
        Rewriter {
            base: g.clone(),
            removed: vec![false; g.order()],
            parent: (0..g.order()).collect(),
            extra: 0,
            delta: BTreeMap::new(),
        }
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        debug_assert!(v < self.base.order());
        self.removed[v] = true;
    }

    pub fn new_vertex(&mut self) -> Vertex {
        let id = self.base.order() + self.extra;
        self.extra += 1;
        self.parent.push(id);
        self.removed.push(false);
        id
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Identifies `u` and `v`. All edges between them that survive the
    /// deltas become loops, which `finish` reports.
    pub fn merge(&mut self, u: Vertex, v: Vertex) {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru != rv {
            let (a, b) = if ru < rv { (ru, rv) } else { (rv, ru) };
            self.parent[b] = a;
        }
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        if u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn add_mult(&mut self, u: Vertex, v: Vertex, d: i32) {
        debug_assert_ne!(u, v);
        *self.delta.entry(Self::key(u, v)).or_insert(0) += d;
    }

    /// Removes every copy of the base pair `(u, v)`.
    pub fn set_zero(&mut self, u: Vertex, v: Vertex) {
        let m = if u < self.base.order() && v < self.base.order() {
            self.base.mult(u, v) as i32
        } else {
            0
        };
        self.delta.insert(Self::key(u, v), -m);
    }

    pub fn finish(self) -> Rewritten {
        let n_raw = self.base.order() + self.extra;
        // Raw multiplicities after deltas.
        let mut raw: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for (u, v, k) in self.base.edges() {
            raw.insert((u, v), k as i32);
        }
        for (&k, &d) in &self.delta {
            *raw.entry(k).or_insert(0) += d;
        }
        // Collapse merges, drop removed vertices, count loops.
        let mut loops = 0usize;
        let mut collapsed: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for (&(u, v), &m) in &raw {
            debug_assert!(m >= 0, "multiplicity driven negative at ({u},{v})");
            if m <= 0 || self.removed[u] || self.removed[v] {
                continue;
            }
            let (ru, rv) = (self.find(u), self.find(v));
            debug_assert!(!self.removed[ru] && !self.removed[rv]);
            if ru == rv {
                loops += m as usize;
            } else {
                *collapsed.entry(Self::key(ru, rv)).or_insert(0) += m;
            }
        }
        if loops > 0 {
            return Rewritten::Loops { count: loops };
        }
        // Compact surviving roots.
        let mut root_ids: Vec<usize> = (0..n_raw)
            .filter(|&x| !self.removed[x] && self.find(x) == x)
            .collect();
        root_ids.sort_unstable();
        let mut new_id = vec![usize::MAX; n_raw];
        for (i, &r) in root_ids.iter().enumerate() {
            new_id[r] = i;
        }
        let mut graph = Multigraph::empty(root_ids.len());
        for (&(ru, rv), &m) in &collapsed {
            let k = m.min(u8::MAX as i32) as u8;
            graph.set_mult_unchecked(new_id[ru], new_id[rv], k);
        }
        let rename: Vec<Option<Vertex>> = (0..self.base.order())
            .map(|x| {
                if self.removed[x] {
                    None
                } else {
                    Some(new_id[self.find(x)])
                }
            })
            .collect();
        Rewritten::Graph { graph, rename }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_delete() {
        // Path 0-1-2-3 with a doubled end.
        let g = Multigraph::from_edges(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 1)]).unwrap();
        let mut rw = Rewriter::new(&g);
        rw.remove_vertex(3);
        rw.merge(0, 2);
        rw.add_mult(0, 1, -1);
        match rw.finish() {
            Rewritten::Graph { graph, rename } => {
                assert_eq!(graph.order(), 2);
                assert_eq!(rename, vec![Some(0), Some(1), Some(0), None]);
                // {0,2} keeps one copy to 1 from each side.
                assert_eq!(graph.mult(0, 1), 2);
            }
            Rewritten::Loops { .. } => panic!("no loop expected"),
        }
    }

    #[test]
    fn merging_adjacent_pair_reports_loops() {
        let g = Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let mut rw = Rewriter::new(&g);
        rw.merge(0, 1);
        match rw.finish() {
            Rewritten::Loops { count } => assert_eq!(count, 2),
            Rewritten::Graph { .. } => panic!("expected loops"),
        }
    }

    #[test]
    fn new_vertices_compact_after_removed() {
        let g = Multigraph::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let mut rw = Rewriter::new(&g);
        rw.remove_vertex(0);
        let n = rw.new_vertex();
        rw.add_mult(n, 1, 3);
        match rw.finish() {
            Rewritten::Graph { graph, rename } => {
                assert_eq!(graph.order(), 3);
                assert_eq!(rename[0], None);
                let one = rename[1].unwrap();
                assert_eq!(graph.mult(one, 2), 3);
            }
            _ => panic!(),
        }
    }
}
