//! Constructors: the four small base graphs, the Q(B) family built from
//! (3,4)-biregular seeds, foundational graphs (line graph of a cubic graph
//! with a doubled perfect matching), the named figure fixtures used in
//! tests, and the expansion operations that invert the Z- and X-reductions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::mgraph::{GraphError, Multigraph, Vertex};

/// Simple bipartite graph with every part-A vertex of degree 4 and every
/// part-B vertex of degree 3.
#[derive(Clone, Debug)]
pub struct BiregularGraph {
    pub a_count: usize,
    pub b_count: usize,
    /// Edges as `(a_index, b_index)`.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    NotBiregular34,
    NotCubic,
    NotSimple,
    /// The line graph has odd order, so no perfect matching exists.
    OddLineGraph(usize),
    NotAPerfectMatching,
    /// Expansion split does not describe the vertex's incident edges.
    BadSplit,
    VerticesAdjacent(Vertex, Vertex),
    VerticesNotAdjacent(Vertex, Vertex),
    /// The expanded graph failed quintic/triangle-property validation.
    InvalidExpansion,
    Graph(GraphError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NotBiregular34 => write!(f, "input is not (3,4)-biregular"),
            ConstructError::NotCubic => write!(f, "input is not a simple cubic graph"),
            ConstructError::NotSimple => write!(f, "input must be simple"),
            ConstructError::OddLineGraph(n) => {
                write!(f, "line graph has odd order {n}; no perfect matching")
            }
            ConstructError::NotAPerfectMatching => write!(f, "not a perfect matching"),
            ConstructError::BadSplit => write!(f, "split does not match incident edges"),
            ConstructError::VerticesAdjacent(u, v) => write!(f, "{u} and {v} are adjacent"),
            ConstructError::VerticesNotAdjacent(u, v) => {
                write!(f, "{u} and {v} are not adjacent")
            }
            ConstructError::InvalidExpansion => {
                write!(f, "expansion breaks 5-regularity or the triangle property")
            }
            ConstructError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl From<GraphError> for ConstructError {
    fn from(e: GraphError) -> Self {
        ConstructError::Graph(e)
    }
}

impl BiregularGraph {
    pub fn validate(&self) -> Result<(), ConstructError> {
        let mut da = vec![0usize; self.a_count];
        let mut db = vec![0usize; self.b_count];
        let mut seen = alloc::collections::BTreeSet::new();
        for &(a, b) in &self.edges {
            if a >= self.a_count || b >= self.b_count || !seen.insert((a, b)) {
                return Err(ConstructError::NotBiregular34);
            }
            da[a] += 1;
            db[b] += 1;
        }
        if da.iter().all(|&d| d == 4) && db.iter().all(|&d| d == 3) {
            Ok(())
        } else {
            Err(ConstructError::NotBiregular34)
        }
    }

    /// As a plain multigraph: part A first, then part B.
    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::empty(self.a_count + self.b_count);
        for &(a, b) in &self.edges {
            g.set_mult(a, self.a_count + b, 1).unwrap();
        }
        g
    }
}

/// The four irreducible small graphs: the two 4-vertex graphs and the two
/// connectivity-1 graphs on 6 vertices, in that order.
pub fn base_graphs() -> Vec<Multigraph> {
    // K4 with two opposite edges tripled.
    let b4a = Multigraph::from_edges(
        4,
        &[(0, 1, 3), (2, 3, 3), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)],
    )
    .unwrap();
    // Doubled 4-cycle plus both diagonals.
    let b4b = Multigraph::from_edges(
        4,
        &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (0, 3, 2), (0, 2, 1), (1, 3, 1)],
    )
    .unwrap();
    // Cut vertex 0 joining a doubled triangle (three mutual double edges)
    // and a quadruple-edge pair.
    let b6a = Multigraph::from_edges(
        6,
        &[
            (0, 1, 1),
            (0, 2, 1),
            (0, 3, 1),
            (1, 2, 2),
            (1, 3, 2),
            (2, 3, 2),
            (0, 4, 1),
            (0, 5, 1),
            (4, 5, 4),
        ],
    )
    .unwrap();
    // Cut vertex 0 joining the double/triple block and a quadruple pair.
    let b6b = Multigraph::from_edges(
        6,
        &[
            (0, 3, 1),
            (1, 3, 1),
            (0, 1, 2),
            (1, 2, 2),
            (2, 3, 3),
            (0, 4, 1),
            (0, 5, 1),
            (4, 5, 4),
        ],
    )
    .unwrap();
    vec![b4a, b4b, b6a, b6b]
}

/// `K_{3,4}`: the smallest (3,4)-biregular seed.
pub fn k34_biregular() -> BiregularGraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 0..4 {
            edges.push((a, b));
        }
    }
    BiregularGraph {
        a_count: 3,
        b_count: 4,
        edges,
    }
}

/// Q(B): one K4 per degree-4 vertex of B, and a triangle through one unused
/// vertex of each neighbouring K4 per degree-3 vertex of B.
pub fn q_of_biregular(b: &BiregularGraph) -> Result<Multigraph, ConstructError> {
    b.validate()?;
    let n = 4 * b.a_count;
    let mut g = Multigraph::empty(n);
    for block in 0..b.a_count {
        let base = 4 * block;
        for i in 0..4 {
            for j in i + 1..4 {
                g.set_mult(base + i, base + j, 1).unwrap();
            }
        }
    }
    // Ports: each K4 vertex joins exactly one inter-block triangle.
    let mut next_port = vec![0usize; b.a_count];
    for bv in 0..b.b_count {
        let blocks: Vec<usize> = b
            .edges
            .iter()
            .filter(|&&(_, x)| x == bv)
            .map(|&(a, _)| a)
            .collect();
        debug_assert_eq!(blocks.len(), 3);
        let mut picks = Vec::new();
        for &blk in &blocks {
            let port = 4 * blk + next_port[blk];
            next_port[blk] += 1;
            picks.push(port);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                g.set_mult(picks[i], picks[j], 1).unwrap();
            }
        }
    }
    debug_assert!(next_port.iter().all(|&p| p == 4));
    Ok(g)
}

/// Line graph of a simple graph; vertex `i` of the result is `edges[i]`.
pub fn line_graph(g: &Multigraph) -> Result<(Multigraph, Vec<(Vertex, Vertex)>), ConstructError> {
    if !g.is_simple() {
        return Err(ConstructError::NotSimple);
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
    let mut lg = Multigraph::empty(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                lg.set_mult(i, j, 1).unwrap();
            }
        }
    }
    Ok((lg, edges))
}

fn check_cubic(c: &Multigraph) -> Result<(), ConstructError> {
    if !c.is_simple() || !c.is_regular(3) {
        return Err(ConstructError::NotCubic);
    }
    Ok(())
}

/// L(C) with every matching edge doubled. `matching` lists edges of the
/// line graph as pairs of line-graph vertex ids (i.e. indices into the edge
/// list of `c` as produced by [`line_graph`]).
pub fn foundational_from_cubic(
    c: &Multigraph,
    matching: &[(usize, usize)],
) -> Result<Multigraph, ConstructError> {
    check_cubic(c)?;
    let (mut lg, edges) = line_graph(c)?;
    if edges.len() % 2 != 0 {
        return Err(ConstructError::OddLineGraph(edges.len()));
    }
    let mut covered = vec![false; edges.len()];
    for &(i, j) in matching {
        if i >= edges.len() || j >= edges.len() || i == j || lg.mult(i, j) != 1 {
            return Err(ConstructError::NotAPerfectMatching);
        }
        if covered[i] || covered[j] {
            return Err(ConstructError::NotAPerfectMatching);
        }
        covered[i] = true;
        covered[j] = true;
        lg.set_mult(i, j, 2).unwrap();
    }
    if !covered.iter().all(|&c| c) {
        return Err(ConstructError::NotAPerfectMatching);
    }
    Ok(lg)
}

/// Greedy-with-backtracking perfect matching of a simple graph.
pub fn find_perfect_matching(g: &Multigraph) -> Option<Vec<(Vertex, Vertex)>> {
    fn go(g: &Multigraph, used: &mut Vec<bool>, out: &mut Vec<(Vertex, Vertex)>) -> bool {
        let v = match used.iter().position(|&u| !u) {
            None => return true,
            Some(v) => v,
        };
        used[v] = true;
        for w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                out.push((v, w));
                if go(g, used, out) {
                    return true;
                }
                out.pop();
                used[w] = false;
            }
        }
        used[v] = false;
        false
    }
    let mut used = vec![false; g.order()];
    let mut out = Vec::new();
    if go(g, &mut used, &mut out) {
        Some(out)
    } else {
        None
    }
}

pub fn cubic_k4() -> Multigraph {
    Multigraph::from_edges(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
        .unwrap()
}

/// The 3-cube.
pub fn cube_graph() -> Multigraph {
    let mut g = Multigraph::empty(8);
    for u in 0..8usize {
        for bit in 0..3 {
            let v = u ^ (1 << bit);
            if u < v {
                g.set_mult(u, v, 1).unwrap();
            }
        }
    }
    g
}

pub fn k33() -> Multigraph {
    let mut g = Multigraph::empty(6);
    for u in 0..3 {
        for v in 3..6 {
            g.set_mult(u, v, 1).unwrap();
        }
    }
    g
}

/// Five K4s glued in a ring along radial spokes: the graph with no valid
/// Z-reductions. Inner pentagon 0..5, outer pentagon 5..10.
pub fn ring_of_five_k4s() -> Multigraph {
    let mut g = Multigraph::empty(10);
    for i in 0..5usize {
        let j = (i + 1) % 5;
        g.set_mult(i, 5 + i, 1).unwrap(); // spoke
        g.set_mult(i, j, 1).unwrap(); // inner cycle
        g.set_mult(5 + i, 5 + j, 1).unwrap(); // outer cycle
        g.set_mult(5 + i, j, 1).unwrap();
        g.set_mult(i, 5 + j, 1).unwrap();
    }
    g
}

/// Plain 5-wheel: hub 0 joined to the 4-cycle 1-2-3-4.
pub fn wheel5() -> Multigraph {
    Multigraph::from_edges(
        5,
        &[
            (0, 1, 1),
            (0, 2, 1),
            (0, 3, 1),
            (0, 4, 1),
            (1, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (1, 4, 1),
        ],
    )
    .unwrap()
}

/// `K_{4,1,1}`: the unique configuration around an edge with four common
/// neighbours (atom A6). Vertices 0,1 are the central edge.
pub fn a6_k411() -> Multigraph {
    let mut g = Multigraph::empty(6);
    g.set_mult(0, 1, 1).unwrap();
    for v in 2..6 {
        g.set_mult(0, v, 1).unwrap();
        g.set_mult(1, v, 1).unwrap();
    }
    g
}

/// The blocked-K4 configuration: K4 on {0,1,2,3} (0 the off-triangle
/// vertex) with outside vertices 4,5,6 each adjacent to two of {1,2,3}.
pub fn sh3_obstruction_config() -> Multigraph {
    Multigraph::from_edges(
        7,
        &[
            (0, 1, 1),
            (0, 2, 1),
            (0, 3, 1),
            (1, 2, 1),
            (1, 3, 1),
            (2, 3, 1),
            (4, 2, 1),
            (4, 3, 1),
            (5, 1, 1),
            (5, 3, 1),
            (6, 1, 1),
            (6, 2, 1),
        ],
    )
    .unwrap()
}

/// Diamond {0,1,2,3} (central 1-2, wings 0,3) with one outside vertex on
/// each of the four wing-central edges: the s_H = 4 configuration.
pub fn sh4_config() -> Multigraph {
    Multigraph::from_edges(
        8,
        &[
            (0, 1, 1),
            (0, 2, 1),
            (1, 2, 1),
            (1, 3, 1),
            (2, 3, 1),
            (4, 0, 1),
            (4, 1, 1),
            (5, 0, 1),
            (5, 2, 1),
            (6, 1, 1),
            (6, 3, 1),
            (7, 2, 1),
            (7, 3, 1),
        ],
    )
    .unwrap()
}

/// Neighbour split used by the expansion operations: the listed edge copies
/// move to the freshly created wing vertex, the rest stay behind.
pub type Split = Vec<(Vertex, u8)>;

fn apply_split(
    g: &Multigraph,
    from: Vertex,
    moved: &Split,
    expect_moved: usize,
) -> Result<(), ConstructError> {
    let mut total = 0usize;
    let mut seen = alloc::collections::BTreeSet::new();
    for &(w, k) in moved {
        if w >= g.order() || w == from || k == 0 || k > g.mult(from, w) || !seen.insert(w) {
            return Err(ConstructError::BadSplit);
        }
        total += k as usize;
    }
    if total != expect_moved {
        return Err(ConstructError::BadSplit);
    }
    Ok(())
}

fn move_split(g: &mut Multigraph, from: Vertex, to: Vertex, moved: &Split) {
    for &(w, k) in moved {
        let old = g.mult(from, w);
        g.set_mult(from, w, old - k).unwrap();
        let t = g.mult(to, w);
        g.set_mult(to, w, t + k).unwrap();
    }
}

/// Inverse Z-reduction: replaces the non-adjacent pair `u, v` by a diamond.
/// Each split names the three edge copies that move to the new wing on that
/// side (the remaining two stay on the old vertex, which becomes a central).
/// Returns the expanded graph only if it is quintic with the triangle
/// property.
pub fn z_expand(
    g: &Multigraph,
    u: Vertex,
    v: Vertex,
    split_u: &Split,
    split_v: &Split,
) -> Result<Multigraph, ConstructError> {
    if u >= g.order() || v >= g.order() || u == v {
        return Err(ConstructError::Graph(GraphError::OutOfRange(
            u.max(v),
            g.order(),
        )));
    }
    if g.adjacent(u, v) {
        return Err(ConstructError::VerticesAdjacent(u, v));
    }
    apply_split(g, u, split_u, 3)?;
    apply_split(g, v, split_v, 3)?;
    let n = g.order();
    let mut out = Multigraph::empty(n + 2);
    for (a, b, k) in g.edges() {
        out.set_mult(a, b, k).unwrap();
    }
    let wing_u = n;
    let wing_v = n + 1;
    move_split(&mut out, u, wing_u, split_u);
    move_split(&mut out, v, wing_v, split_v);
    // Diamond: centrals u, v; wings adjacent to both centrals.
    for (a, b) in [(wing_u, u), (wing_u, v), (u, v), (u, wing_v), (v, wing_v)] {
        let k = out.mult(a, b);
        out.set_mult(a, b, k + 1).unwrap();
    }
    if out.is_quintic() && out.has_triangle_property() {
        Ok(out)
    } else {
        Err(ConstructError::InvalidExpansion)
    }
}

/// Inverse X-reduction: replaces the adjacent pair `u, v` (multiplicity k)
/// by a K4-shaped configuration whose cross edges carry `k + 3` copies in
/// total. Each split names the two edge copies that move to the new vertex
/// on that side.
pub fn x_expand(
    g: &Multigraph,
    u: Vertex,
    v: Vertex,
    split_u: &Split,
    split_v: &Split,
) -> Result<Multigraph, ConstructError> {
    if u >= g.order() || v >= g.order() || u == v {
        return Err(ConstructError::Graph(GraphError::OutOfRange(
            u.max(v),
            g.order(),
        )));
    }
    let k = g.mult(u, v);
    if k == 0 {
        return Err(ConstructError::VerticesNotAdjacent(u, v));
    }
    if k > 3 {
        // A merged multiplicity of 4 or more cannot arise from an
        // X-reduction: the configuration would need more cross copies than
        // 5-regularity allows.
        return Err(ConstructError::BadSplit);
    }
    apply_split(g, u, split_u, 2)?;
    apply_split(g, v, split_v, 2)?;
    if split_u.iter().any(|&(w, _)| w == v) || split_v.iter().any(|&(w, _)| w == u) {
        return Err(ConstructError::BadSplit);
    }
    let n = g.order();
    let mut out = Multigraph::empty(n + 2);
    for (a, b, kk) in g.edges() {
        out.set_mult(a, b, kk).unwrap();
    }
    let nu = n;
    let nv = n + 1;
    move_split(&mut out, u, nu, split_u);
    move_split(&mut out, v, nv, split_v);
    // K4 over {u, nu, v, nv} with the k-1 extra cross copies kept on (u, v).
    out.set_mult(u, nu, 1).unwrap();
    out.set_mult(v, nv, 1).unwrap();
    out.set_mult(u, v, k - 1 + 1).unwrap();
    out.set_mult(u, nv, 1).unwrap();
    out.set_mult(nu, v, 1).unwrap();
    out.set_mult(nu, nv, 1).unwrap();
    if out.is_quintic() && out.has_triangle_property() {
        Ok(out)
    } else {
        Err(ConstructError::InvalidExpansion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn base_graphs_are_valid_and_distinct() {
        let base = base_graphs();
        assert_eq!(base.len(), 4);
        for g in &base {
            assert!(g.is_quintic(), "{g:?}");
            assert!(g.has_triangle_property(), "{g:?}");
        }
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(!are_isomorphic(&base[i], &base[j]));
            }
        }
    }

    #[test]
    fn q_of_k34_matches_figure() {
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert_eq!(q.order(), 12);
        assert!(q.is_quintic());
        assert!(q.has_triangle_property());
        // Each edge inside a K4 block is in two triangles, each inter-block
        // edge in exactly one.
        for (u, v, _) in q.edges() {
            let t = q.triangle_count_of_edge(u, v).unwrap();
            if u / 4 == v / 4 {
                assert_eq!(t, 2);
            } else {
                assert_eq!(t, 1);
            }
        }
    }

    #[test]
    fn q_of_biregular_order_is_12k() {
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert_eq!(q.order() % 12, 0);
        let bad = BiregularGraph {
            a_count: 2,
            b_count: 2,
            edges: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        };
        assert!(q_of_biregular(&bad).is_err());
    }

    #[test]
    fn foundational_fixtures() {
        let c = cubic_k4();
        let (lg, edges) = line_graph(&c).unwrap();
        assert_eq!(edges.len(), 6);
        assert!(lg.is_regular(4));
        let m = find_perfect_matching(&lg).unwrap();
        let matching: Vec<(usize, usize)> = m;
        let g = foundational_from_cubic(&c, &matching).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_quintic());
        assert!(g.has_triangle_property());

        let cube = cube_graph();
        let (lgc, _) = line_graph(&cube).unwrap();
        let mc = find_perfect_matching(&lgc).unwrap();
        let g12 = foundational_from_cubic(&cube, &mc).unwrap();
        assert_eq!(g12.order(), 12);
        assert!(g12.is_quintic());
        assert!(g12.has_triangle_property());
    }

    #[test]
    fn k33_line_graph_has_no_perfect_matching() {
        let (lg, edges) = line_graph(&k33()).unwrap();
        assert_eq!(edges.len(), 9);
        assert!(find_perfect_matching(&lg).is_none());
        let fake: Vec<(usize, usize)> = vec![];
        assert_eq!(
            foundational_from_cubic(&k33(), &fake),
            Err(ConstructError::OddLineGraph(9))
        );
    }

    #[test]
    fn ring_graph_shape() {
        let g = ring_of_five_k4s();
        assert!(g.is_quintic());
        assert!(g.has_triangle_property());
        assert!(g.is_simple());
        // Every spoke lies in four triangles.
        for i in 0..5 {
            assert_eq!(g.triangle_count_of_edge(i, 5 + i).unwrap(), 4);
        }
    }

    #[test]
    fn z_expand_validates() {
        // Expanding two non-adjacent vertices of the doubled-cycle base
        // graph: 0 and 2 are joined there, so use the 6-vertex foundational
        // graph instead, which has non-adjacent pairs.
        let c = cubic_k4();
        let (lg, _) = line_graph(&c).unwrap();
        let m = find_perfect_matching(&lg).unwrap();
        let g = foundational_from_cubic(&c, &m).unwrap();
        let mut found = None;
        'outer: for u in 0..g.order() {
            for v in 0..g.order() {
                if u != v && !g.adjacent(u, v) {
                    found = Some((u, v));
                    break 'outer;
                }
            }
        }
        let (u, v) = found.expect("foundational graph is not complete");
        // Exhaust splits until one validates.
        let inc_u = g.incidences(u);
        let inc_v = g.incidences(v);
        let mut ok = false;
        'search: for su in splits_of(&inc_u, 3) {
            for sv in splits_of(&inc_v, 3) {
                if let Ok(big) = z_expand(&g, u, v, &su, &sv) {
                    assert_eq!(big.order(), g.order() + 2);
                    assert!(big.is_quintic());
                    assert!(big.has_triangle_property());
                    ok = true;
                    break 'search;
                }
            }
        }
        assert!(ok, "no valid split found");
    }

    /// All ways to move exactly `want` edge copies out of `inc`.
    pub(crate) fn splits_of(inc: &[(Vertex, u8)], want: usize) -> Vec<Split> {
        fn go(
            inc: &[(Vertex, u8)],
            i: usize,
            left: usize,
            cur: &mut Split,
            out: &mut Vec<Split>,
        ) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            if i >= inc.len() {
                return;
            }
            let (w, k) = inc[i];
            for take in 0..=(k as usize).min(left) {
                if take > 0 {
                    cur.push((w, take as u8));
                }
                go(inc, i + 1, left - take, cur, out);
                if take > 0 {
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        go(inc, 0, want, &mut cur, &mut out);
        out
    }

    #[test]
    fn x_expand_fig1_right_to_k6() {
        // Expanding the single diagonal of the doubled-cycle graph yields K6.
        let base = base_graphs();
        let g = &base[1]; // doubled 4-cycle + diagonals
        let mut k6 = Multigraph::empty(6);
        for u in 0..6 {
            for v in u + 1..6 {
                k6.set_mult(u, v, 1).unwrap();
            }
        }
        let mut hit = false;
        for (u, v, k) in g.edges() {
            if k != 1 {
                continue;
            }
            let inc_u: Vec<(Vertex, u8)> = g
                .incidences(u)
                .into_iter()
                .filter(|&(w, _)| w != v)
                .collect();
            let inc_v: Vec<(Vertex, u8)> = g
                .incidences(v)
                .into_iter()
                .filter(|&(w, _)| w != u)
                .collect();
            for su in splits_of(&inc_u, 2) {
                for sv in splits_of(&inc_v, 2) {
                    if let Ok(big) = x_expand(g, u, v, &su, &sv) {
                        if are_isomorphic(&big, &k6) {
                            hit = true;
                        }
                    }
                }
            }
        }
        assert!(hit, "no expansion of the diagonal reproduced K6");
    }
}
