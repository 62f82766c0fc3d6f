//! Loop-free undirected multigraphs with edge multiplicities, plus the
//! triangle analytics (`t_e`, `m(T)`, aloof/unsafe classification) that the
//! whole case analysis is driven by.
//!
//! Vertex ids are dense `0..order`. Deleting vertices goes through
//! [`crate::reduce::Rewriter`], which compacts ids and reports the renaming,
//! so reduction traces stay replayable.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense vertex id.
pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// A loop was requested; loops cannot be in a triangle and are never
    /// representable.
    LoopRejected(Vertex),
    OutOfRange(Vertex, usize),
    /// An edge-indexed query was made on a non-adjacent pair.
    NonEdge(Vertex, Vertex),
    NotATriangle([Vertex; 3]),
    /// Operation requires a connected graph; the payload is the component
    /// count actually found.
    Disconnected(usize),
    NotQuintic,
    OddOrder(usize),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::LoopRejected(v) => write!(f, "loop at vertex {v} rejected"),
            GraphError::OutOfRange(v, n) => write!(f, "vertex {v} out of range (order {n})"),
            GraphError::NonEdge(u, v) => write!(f, "({u},{v}) is not an edge"),
            GraphError::NotATriangle(t) => write!(f, "{t:?} is not a triangle"),
            GraphError::Disconnected(k) => write!(f, "graph is disconnected ({k} components)"),
            GraphError::NotQuintic => write!(f, "graph is not 5-regular"),
            GraphError::OddOrder(n) => write!(f, "order {n} is odd"),
        }
    }
}

/// A triangle as a set of three distinct, mutually adjacent vertices.
/// Stored sorted; multiple edges do not create extra triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triangle {
    pub verts: [Vertex; 3],
}

impl Triangle {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        Triangle { verts: v }
    }

    pub fn edges(&self) -> [(Vertex, Vertex); 3] {
        let [a, b, c] = self.verts;
        [(a, b), (a, c), (b, c)]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.contains(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleLabel {
    /// All three edges lie only in this triangle (`m(T) = 3`).
    Aloof,
    /// Exactly two edges lie only in this triangle (`m(T) = 2`); removing an
    /// edge of the triangle would strand another.
    Unsafe,
    M1,
    M0,
}

/// `m(T)` together with its name in the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleClass {
    pub m_value: u8,
    pub label: TriangleLabel,
}

impl TriangleClass {
    fn from_m(m: u8) -> Self {
        let label = match m {
            3 => TriangleLabel::Aloof,
            2 => TriangleLabel::Unsafe,
            1 => TriangleLabel::M1,
            _ => TriangleLabel::M0,
        };
        TriangleClass { m_value: m, label }
    }

    pub fn is_aloof(&self) -> bool {
        self.label == TriangleLabel::Aloof
    }
}

/// Loop-free undirected multigraph. Multiplicities are kept in a dense
/// upper-triangular matrix; at the orders this calculus works at (well under
/// a hundred vertices) that is both the fastest and the simplest layout.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multigraph {
    order: usize,
    mult: Vec<u8>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}; ", self.order)?;
        let mut first = true;
        for (u, v, k) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{u}-{v}x{k}")?;
        }
        write!(f, ")")
    }
}

impl Multigraph {
    pub fn empty(order: usize) -> Self {
        let cells = order * order.saturating_sub(1) / 2;
        Multigraph {
            order,
            mult: vec![0; cells],
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` entries. Repeated pairs
    /// accumulate. Loops and out-of-range ids are rejected.
    pub fn from_edges(
        order: usize,
        edges: &[(Vertex, Vertex, u8)],
    ) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(order);
        for &(u, v, k) in edges {
            g.check_pair(u, v)?;
            let m = g.mult(u, v).saturating_add(k);
            g.set_mult_unchecked(u, v, m);
        }
        Ok(g)
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u >= self.order {
            return Err(GraphError::OutOfRange(u, self.order));
        }
        if v >= self.order {
            return Err(GraphError::OutOfRange(v, self.order));
        }
        if u == v {
            return Err(GraphError::LoopRejected(u));
        }
        Ok(())
    }

    #[inline]
    fn idx(&self, u: Vertex, v: Vertex) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * (2 * self.order - a - 1) / 2 + (b - a - 1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.order
    }

    /// Multiplicity of the pair `(u, v)`; zero on the diagonal since loops
    /// are not representable.
    #[inline]
    pub fn mult(&self, u: Vertex, v: Vertex) -> u8 {
        if u == v {
            return 0;
        }
        self.mult[self.idx(u, v)]
    }

    pub fn set_mult(&mut self, u: Vertex, v: Vertex, k: u8) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.set_mult_unchecked(u, v, k);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_mult_unchecked(&mut self, u: Vertex, v: Vertex, k: u8) {
        let i = self.idx(u, v);
        self.mult[i] = k;
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.mult(u, v) > 0
    }

    /// Sum of incident multiplicities.
    pub fn degree(&self, v: Vertex) -> usize {
        (0..self.order)
            .filter(|&u| u != v)
            .map(|u| self.mult(u, v) as usize)
            .sum()
    }

    pub fn degree_checked(&self, v: Vertex) -> Result<usize, GraphError> {
        if v >= self.order {
            return Err(GraphError::OutOfRange(v, self.order));
        }
        Ok(self.degree(v))
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.order).filter(|&u| self.adjacent(u, v)).collect()
    }

    /// `(neighbour, multiplicity)` pairs, ascending by neighbour.
    pub fn incidences(&self, v: Vertex) -> Vec<(Vertex, u8)> {
        (0..self.order)
            .filter(|&u| u != v)
            .map(|u| (u, self.mult(u, v)))
            .filter(|&(_, k)| k > 0)
            .collect()
    }

    /// Edge list `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, u8)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                let k = self.mult(u, v);
                if k > 0 {
                    out.push((u, v, k));
                }
            }
        }
        out
    }

    /// Number of edges counted with multiplicity.
    pub fn size(&self) -> usize {
        self.mult.iter().map(|&k| k as usize).sum()
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.order).all(|v| self.degree(v) == k)
    }

    pub fn is_quintic(&self) -> bool {
        self.is_regular(5)
    }

    /// Common neighbours of `u` and `v` (by adjacency, so multiple edges do
    /// not contribute extra members).
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        (0..self.order)
            .filter(|&w| w != u && w != v && self.adjacent(w, u) && self.adjacent(w, v))
            .collect()
    }

    /// Number of triangles through the edge `uv`, counting triangles as
    /// vertex sets.
    pub fn triangle_count_of_edge(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.check_pair(u, v)?;
        if !self.adjacent(u, v) {
            return Err(GraphError::NonEdge(u, v));
        }
        Ok(self.common_neighbors(u, v).len())
    }

    /// `t_e`: the number of vertices adjacent to both endpoints of `e`.
    /// Identical to [`Multigraph::triangle_count_of_edge`]; the case split in
    /// the calculus keys on this name.
    pub fn t_of_edge(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.triangle_count_of_edge(u, v)
    }

    /// Every edge lies in at least one triangle.
    pub fn has_triangle_property(&self) -> bool {
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.mult(u, v) > 0
                    && !(0..self.order)
                        .any(|w| w != u && w != v && self.adjacent(w, u) && self.adjacent(w, v))
                {
                    return false;
                }
            }
        }
        true
    }

    /// The neighbourhood formulation: for every vertex `v` the subgraph
    /// induced by the neighbours of `v` has no isolated vertex. Kept as an
    /// independent cross-check of [`Multigraph::has_triangle_property`].
    pub fn triangle_property_by_neighborhoods(&self) -> bool {
        for v in 0..self.order {
            let nb = self.neighbors(v);
            for &u in &nb {
                if !nb.iter().any(|&w| w != u && self.adjacent(u, w)) {
                    return false;
                }
            }
        }
        true
    }

    /// All triangles, as sorted vertex triples.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in 0..self.order {
            for b in a + 1..self.order {
                if !self.adjacent(a, b) {
                    continue;
                }
                for c in b + 1..self.order {
                    if self.adjacent(a, c) && self.adjacent(b, c) {
                        out.push(Triangle { verts: [a, b, c] });
                    }
                }
            }
        }
        out
    }

    /// `m(T)`: how many edges of `T` lie in exactly one triangle, and the
    /// aloof/unsafe label that goes with it.
    pub fn m_of_triangle(&self, t: Triangle) -> Result<TriangleClass, GraphError> {
        let [a, b, c] = t.verts;
        if !(self.adjacent(a, b) && self.adjacent(a, c) && self.adjacent(b, c)) {
            return Err(GraphError::NotATriangle(t.verts));
        }
        let mut m = 0;
        for (u, v) in t.edges() {
            if self.common_neighbors(u, v).len() == 1 {
                m += 1;
            }
        }
        Ok(TriangleClass::from_m(m))
    }

    pub fn is_triangle(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        a != b
            && a != c
            && b != c
            && self.adjacent(a, b)
            && self.adjacent(a, c)
            && self.adjacent(b, c)
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    /// Articulation points of the underlying simple graph. The input must be
    /// connected; a disconnected graph is reported as an error carrying its
    /// component count.
    pub fn cut_vertices(&self) -> Result<Vec<Vertex>, GraphError> {
        let comps = self.components();
        if comps.len() != 1 && self.order > 1 {
            return Err(GraphError::Disconnected(comps.len()));
        }
        let mut cuts = Vec::new();
        for v in 0..self.order {
            if self.order <= 2 {
                break;
            }
            let rest: Vec<Vertex> = (0..self.order).filter(|&u| u != v).collect();
            let (sub, _) = self.induced(&rest);
            if sub.components().len() > 1 {
                cuts.push(v);
            }
        }
        Ok(cuts)
    }

    /// Induced sub-multigraph on `verts`; the second return value maps new
    /// ids back to the original ids (`old = map[new]`).
    pub fn induced(&self, verts: &[Vertex]) -> (Multigraph, Vec<Vertex>) {
        let map: Vec<Vertex> = verts.to_vec();
        let mut g = Multigraph::empty(map.len());
        for i in 0..map.len() {
            for j in i + 1..map.len() {
                let k = self.mult(map[i], map[j]);
                if k > 0 {
                    g.set_mult_unchecked(i, j, k);
                }
            }
        }
        (g, map)
    }

    /// Relabels by `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[Vertex]) -> Multigraph {
        debug_assert_eq!(perm.len(), self.order);
        let mut g = Multigraph::empty(self.order);
        for u in 0..self.order {
            for v in u + 1..self.order {
                let k = self.mult(u, v);
                if k > 0 {
                    g.set_mult_unchecked(perm[u], perm[v], k);
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let mut g = Multigraph::empty(self.order + other.order);
        for (u, v, k) in self.edges() {
            g.set_mult_unchecked(u, v, k);
        }
        for (u, v, k) in other.edges() {
            g.set_mult_unchecked(self.order + u, self.order + v, k);
        }
        g
    }

    /// Pairs `(u, v)` with multiplicity at least 2, with `u < v`.
    pub fn multiple_edges(&self) -> Vec<(Vertex, Vertex, u8)> {
        self.edges().into_iter().filter(|&(_, _, k)| k >= 2).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn k(n: usize) -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        Multigraph::from_edges(n, &edges).unwrap()
    }

    fn k55() -> Multigraph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in 5..10 {
                edges.push((u, v, 1));
            }
        }
        Multigraph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn loops_are_rejected() {
        assert_eq!(
            Multigraph::from_edges(3, &[(1, 1, 1)]),
            Err(GraphError::LoopRejected(1))
        );
        let mut g = Multigraph::empty(3);
        assert!(g.set_mult(2, 2, 1).is_err());
        assert_eq!(g.mult(2, 2), 0);
    }

    #[test]
    fn degree_basics() {
        let g = k(6);
        for v in 0..6 {
            assert_eq!(g.degree(v), 5);
        }
        assert!(g.is_quintic());
        let e = Multigraph::empty(3);
        assert_eq!(e.degree(0), 0);
        assert!(e.degree_checked(3).is_err());
        // Fig 1 left: K4 with two opposite edges tripled.
        let base = construct::base_graphs();
        for v in 0..4 {
            assert_eq!(base[0].degree(v), 5);
        }
    }

    #[test]
    fn triangle_property_examples() {
        assert!(k(6).has_triangle_property());
        assert!(!k55().has_triangle_property());
        let base = construct::base_graphs();
        assert!(base[1].has_triangle_property());
    }

    #[test]
    fn neighborhood_formulation_agrees_small() {
        // Cross-check of the two triangle-property formulations on every
        // graph over a small random-ish family plus the named fixtures.
        let mut graphs = construct::base_graphs();
        graphs.push(k(6));
        graphs.push(k55());
        graphs.push(construct::ring_of_five_k4s());
        for g in graphs {
            assert_eq!(
                g.has_triangle_property(),
                g.triangle_property_by_neighborhoods(),
                "{g:?}"
            );
        }
    }

    #[test]
    fn edge_triangle_counts() {
        let g = k(6);
        assert_eq!(g.triangle_count_of_edge(0, 1).unwrap(), 4);
        assert_eq!(k(4).triangle_count_of_edge(2, 3).unwrap(), 2);
        assert_eq!(g.t_of_edge(0, 1).unwrap(), 4);
        assert!(g.triangle_count_of_edge(0, 0).is_err());
        let e = Multigraph::empty(3);
        assert_eq!(
            e.triangle_count_of_edge(0, 1),
            Err(GraphError::NonEdge(0, 1))
        );
    }

    #[test]
    fn m_of_triangle_k6_is_zero() {
        let g = k(6);
        let t = Triangle::new(2, 0, 1);
        assert_eq!(t.verts, [0, 1, 2]);
        let c = g.m_of_triangle(t).unwrap();
        assert_eq!(c.m_value, 0);
        assert_eq!(c.label, TriangleLabel::M0);
        assert!(g
            .m_of_triangle(Triangle::new(0, 1, 1))
            .is_err());
    }

    #[test]
    fn aloof_triangle_in_q_of_k34() {
        let q = construct::q_of_biregular(&construct::k34_biregular()).unwrap();
        assert!(q.is_quintic());
        assert!(q.has_triangle_property());
        // Inter-block triangles are aloof, in-block K4 triangles are not.
        let mut saw_aloof = false;
        let mut saw_m0 = false;
        for t in q.triangles() {
            let c = q.m_of_triangle(t).unwrap();
            match c.label {
                TriangleLabel::Aloof => saw_aloof = true,
                TriangleLabel::M0 => saw_m0 = true,
                _ => {}
            }
        }
        assert!(saw_aloof && saw_m0);
    }

    #[test]
    fn cut_vertices_of_fixtures() {
        let base = construct::base_graphs();
        assert_eq!(base[2].cut_vertices().unwrap().len(), 1);
        assert_eq!(base[3].cut_vertices().unwrap().len(), 1);
        assert!(k(6).cut_vertices().unwrap().is_empty());
        let q = construct::q_of_biregular(&construct::k34_biregular()).unwrap();
        assert!(q.cut_vertices().unwrap().is_empty());
        let two = k(4).disjoint_union(&k(4));
        assert_eq!(two.cut_vertices(), Err(GraphError::Disconnected(2)));
    }

    #[test]
    fn quintic_degree_sum_and_parity() {
        for g in construct::base_graphs() {
            let total: usize = (0..g.order()).map(|v| g.degree(v)).sum();
            assert_eq!(total, 5 * g.order());
            assert_eq!(g.order() % 2, 0);
        }
    }

    #[test]
    fn components_and_union() {
        let g = k(4).disjoint_union(&k(3));
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], vec![0, 1, 2, 3]);
        assert_eq!(comps[1], vec![4, 5, 6]);
        let (sub, map) = g.induced(&comps[1]);
        assert_eq!(sub.order(), 3);
        assert!(sub.is_triangle(0, 1, 2));
        assert_eq!(map, vec![4, 5, 6]);
    }
}
