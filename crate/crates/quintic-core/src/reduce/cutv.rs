//! Cut-vertex reductions. A cut vertex of a quintic triangle-property
//! graph has exactly two sides, taking 3 and 2 of its edge ends. Both
//! sides large: split into two capped graphs. A pendant quadruple-pair
//! (A4) or a pendant 4-vertex block (A10/A11): rewrite in place.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::mgraph::{GraphError, Multigraph, Vertex};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::{commit, Applied, EngineError, RuleId};

#[derive(Clone, Debug)]
pub enum CutReduction {
    /// Both sides replaced by capped, strictly smaller graphs.
    Split(Multigraph, Multigraph),
    Single(Multigraph),
}

#[derive(Clone, Debug)]
pub enum CutError {
    NotCutVertex(Vertex),
    /// The graph is one of the 6-vertex base graphs: no reduction.
    Terminal,
    Graph(GraphError),
    Inconsistent(&'static str),
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::NotCutVertex(v) => write!(f, "{v} is not a cut vertex"),
            CutError::Terminal => write!(f, "graph is an irreducible connectivity-1 base graph"),
            CutError::Graph(e) => write!(f, "{e}"),
            CutError::Inconsistent(s) => write!(f, "inconsistent cut structure: {s}"),
        }
    }
}

impl From<GraphError> for CutError {
    fn from(e: GraphError) -> Self {
        CutError::Graph(e)
    }
}

struct Sides {
    /// Component receiving three edge ends from the cut vertex.
    three: Vec<Vertex>,
    /// Component receiving two edge ends.
    two: Vec<Vertex>,
}

fn sides_of(g: &Multigraph, v: Vertex) -> Result<Sides, CutError> {
    let rest: Vec<Vertex> = (0..g.order()).filter(|&u| u != v).collect();
    let (sub, map) = g.induced(&rest);
    let comps = sub.components();
    if comps.len() != 2 {
        return Err(if comps.len() == 1 {
            CutError::NotCutVertex(v)
        } else {
            CutError::Inconsistent("cut vertex with more than two sides")
        });
    }
    let ends = |comp: &[usize]| -> usize {
        comp.iter().map(|&i| g.mult(v, map[i]) as usize).sum()
    };
    let (e0, e1) = (ends(&comps[0]), ends(&comps[1]));
    let lift = |comp: &[usize]| -> Vec<Vertex> { comp.iter().map(|&i| map[i]).collect() };
    match (e0, e1) {
        (3, 2) => Ok(Sides {
            three: lift(&comps[0]),
            two: lift(&comps[1]),
        }),
        (2, 3) => Ok(Sides {
            three: lift(&comps[1]),
            two: lift(&comps[0]),
        }),
        _ => Err(CutError::Inconsistent("cut vertex ends not split 3+2")),
    }
}

/// Caps for the split: the 2-edge side is replaced by a quadruple pair, the
/// 3-edge side by the doubled-triangle block.
fn cap_with_a4(g: &Multigraph, keep: &[Vertex], v: Vertex) -> Multigraph {
    let mut verts = keep.to_vec();
    verts.push(v);
    verts.sort_unstable();
    let (sub, map) = g.induced(&verts);
    let vi = map.iter().position(|&x| x == v).unwrap();
    let n = sub.order();
    let mut out = Multigraph::empty(n + 2);
    for (a, b, k) in sub.edges() {
        out.set_mult(a, b, k).unwrap();
    }
    out.set_mult(vi, n, 1).unwrap();
    out.set_mult(vi, n + 1, 1).unwrap();
    out.set_mult(n, n + 1, 4).unwrap();
    out
}

fn cap_with_a10(g: &Multigraph, keep: &[Vertex], v: Vertex) -> Multigraph {
    let mut verts = keep.to_vec();
    verts.push(v);
    verts.sort_unstable();
    let (sub, map) = g.induced(&verts);
    let vi = map.iter().position(|&x| x == v).unwrap();
    let n = sub.order();
    let mut out = Multigraph::empty(n + 3);
    for (a, b, k) in sub.edges() {
        out.set_mult(a, b, k).unwrap();
    }
    for i in 0..3 {
        out.set_mult(vi, n + i, 1).unwrap();
        for j in i + 1..3 {
            out.set_mult(n + i, n + j, 2).unwrap();
        }
    }
    out
}

/// A7 insertion: two new vertices joined by a triple edge, each joined to
/// both wings.
fn insert_a7(rw: &mut Rewriter, wing1: Vertex, wing2: Vertex) {
    let n1 = rw.new_vertex();
    let n2 = rw.new_vertex();
    rw.add_mult(n1, n2, 3);
    for w in [wing1, wing2] {
        rw.add_mult(n1, w, 1);
        rw.add_mult(n2, w, 1);
    }
}

/// Pendant A10/A11 at the cut vertex: remove the four pendant vertices and
/// repair the two stranded degree-4 vertices.
fn reduce_pendant_block(
    g: &Multigraph,
    v: Vertex,
    side3: &[Vertex],
) -> Result<Multigraph, CutError> {
    let mut outs: Vec<Vertex> = g
        .incidences(v)
        .into_iter()
        .filter(|(u, _)| !side3.contains(u))
        .map(|(u, _)| u)
        .collect();
    outs.sort_unstable();
    if outs.len() != 2 {
        return Err(CutError::Inconsistent("pendant block with a doubled stub"));
    }
    let (x, y) = (outs[0], outs[1]);
    if !g.adjacent(x, y) {
        return Err(CutError::Inconsistent("stub pair not joined"));
    }
    let mut rw = Rewriter::new(g);
    rw.remove_vertex(v);
    for &u in side3 {
        rw.remove_vertex(u);
    }
    if g.mult(x, y) >= 2 {
        rw.add_mult(x, y, -1);
        insert_a7(&mut rw, x, y);
    } else if g.common_neighbors(x, y).len() >= 2 {
        // The edge keeps a triangle after v goes; double it.
        rw.add_mult(x, y, 1);
    } else {
        rw.set_zero(x, y);
        insert_a7(&mut rw, x, y);
    }
    rw.finish()
        .graph()
        .ok_or(CutError::Inconsistent("pendant block rewrite looped"))
}

/// Pendant A4 (quadruple pair) at the cut vertex: the Theorem 4 case
/// analysis over the structure left at the other side.
fn reduce_pendant_a4(
    g: &Multigraph,
    cutv: Vertex,
    pair: &[Vertex],
) -> Result<Multigraph, CutError> {
    let (y1, z1) = (pair[0], pair[1]);
    let rest: Vec<(Vertex, u8)> = g
        .incidences(cutv)
        .into_iter()
        .filter(|&(u, _)| u != y1 && u != z1)
        .collect();
    let ends: usize = rest.iter().map(|&(_, k)| k as usize).sum();
    if ends != 3 {
        return Err(CutError::Inconsistent("apex without three rest ends"));
    }
    let candidates: Vec<Multigraph> = if rest.len() == 2 {
        // Case i: double to v1, single to w.
        let (v1, w) = if rest[0].1 == 2 {
            (rest[0].0, rest[1].0)
        } else {
            (rest[1].0, rest[0].0)
        };
        pendant_a4_case_double(g, cutv, y1, z1, v1, w)
    } else if rest.len() == 3 {
        // Case ii: three singles forming a path or triangle.
        let vs: Vec<Vertex> = rest.iter().map(|&(u, _)| u).collect();
        pendant_a4_case_singles(g, cutv, y1, z1, &vs)
    } else {
        Vec::new()
    };
    for cand in candidates {
        if cand.is_quintic() && cand.has_triangle_property() && cand.order() < g.order() {
            return Ok(cand);
        }
    }
    Err(CutError::Inconsistent("no pendant-A4 rewrite validated"))
}

fn pendant_a4_case_double(
    g: &Multigraph,
    cutv: Vertex,
    y1: Vertex,
    z1: Vertex,
    v1: Vertex,
    w: Vertex,
) -> Vec<Multigraph> {
    let mut cands = Vec::new();
    if !g.adjacent(v1, w) {
        return cands;
    }
    let commons: Vec<Vertex> = g
        .common_neighbors(v1, w)
        .into_iter()
        .filter(|&c| c != cutv)
        .collect();
    if g.mult(v1, w) >= 2 {
        // b): keep the triangle {cutv, v1, w}, shuffle multiplicities.
        let mut rw = Rewriter::new(g);
        rw.remove_vertex(y1);
        rw.remove_vertex(z1);
        rw.add_mult(cutv, v1, 1);
        rw.add_mult(cutv, w, 1);
        rw.add_mult(v1, w, -1);
        if let Some(out) = rw.finish().graph() {
            cands.push(out);
        }
    }
    if commons.len() == 2 {
        // a): delete the apex side and v1, cap w with a fresh quadruple
        // pair, join the two common neighbours.
        let mut rw = Rewriter::new(g);
        for x in [y1, z1, cutv, v1] {
            rw.remove_vertex(x);
        }
        let n1 = rw.new_vertex();
        let n2 = rw.new_vertex();
        rw.add_mult(n1, n2, 4);
        rw.add_mult(w, n1, 1);
        rw.add_mult(w, n2, 1);
        rw.add_mult(commons[0], commons[1], 1);
        if let Some(out) = rw.finish().graph() {
            cands.push(out);
        }
    }
    if commons.len() == 1 {
        let c = commons[0];
        if g.mult(v1, c) >= 2 {
            // d): A7 insertion on w and c.
            let mut rw = Rewriter::new(g);
            for x in [y1, z1, cutv, v1] {
                rw.remove_vertex(x);
            }
            insert_a7(&mut rw, w, c);
            if let Some(out) = rw.finish().graph() {
                cands.push(out);
            }
        } else if let Some((x5, _)) = g
            .incidences(v1)
            .into_iter()
            .find(|&(u, _)| u != cutv && u != w && u != c)
        {
            // c): v1's fifth neighbour hangs off the common neighbour.
            let mut rw = Rewriter::new(g);
            for x in [y1, z1, cutv, v1] {
                rw.remove_vertex(x);
            }
            rw.add_mult(c, w, 1);
            rw.add_mult(x5, w, 1);
            if let Some(out) = rw.finish().graph() {
                cands.push(out);
            }
        }
    }
    if commons.is_empty() {
        // Contract v1 and w.
        let mut rw = Rewriter::new(g);
        for x in [y1, z1, cutv] {
            rw.remove_vertex(x);
        }
        rw.set_zero(v1, w);
        rw.merge(v1, w);
        if let Some(out) = rw.finish().graph() {
            cands.push(out);
        }
    }
    cands
}

fn pendant_a4_case_singles(
    g: &Multigraph,
    cutv: Vertex,
    y1: Vertex,
    z1: Vertex,
    vs: &[Vertex],
) -> Vec<Multigraph> {
    let mut cands = Vec::new();
    let adj: Vec<(Vertex, Vertex)> = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| g.adjacent(vs[i], vs[j]))
        .map(|(i, j)| (vs[i], vs[j]))
        .collect();
    let ext_common = |p: Vertex, q: Vertex| -> Vec<Vertex> {
        g.common_neighbors(p, q)
            .into_iter()
            .filter(|&c| c != cutv && !vs.contains(&c))
            .collect()
    };
    if adj.len() == 3 {
        // Triangle x, y, z. a): delete one triangle edge, double the apex
        // edges to its endpoints; any orientation may work.
        for &(p, q) in &[(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])] {
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(y1);
            rw.remove_vertex(z1);
            rw.add_mult(p, q, -1);
            rw.add_mult(cutv, p, 1);
            rw.add_mult(cutv, q, 1);
            if let Some(out) = rw.finish().graph() {
                cands.push(out);
            }
        }
        // b): each pair has a distinct outside neighbour.
        for rot in [[0usize, 1, 2], [1, 2, 0], [2, 0, 1]] {
            let (x, y, z) = (vs[rot[0]], vs[rot[1]], vs[rot[2]]);
            let e_xy = ext_common(x, y);
            let f_yz = ext_common(y, z);
            if e_xy.is_empty() || f_yz.is_empty() {
                continue;
            }
            let mut rw = Rewriter::new(g);
            for t in [y1, z1, cutv, y] {
                rw.remove_vertex(t);
            }
            rw.add_mult(x, z, 1);
            rw.add_mult(x, f_yz[0], 1);
            rw.add_mult(z, e_xy[0], 1);
            if let Some(out) = rw.finish().graph() {
                cands.push(out);
            }
        }
        // Fallback: delete everything, insert a triangle on the outside
        // neighbours.
        let ext: Vec<Vec<Vertex>> = vec![
            ext_common(vs[0], vs[1]),
            ext_common(vs[1], vs[2]),
            ext_common(vs[0], vs[2]),
        ];
        if ext.iter().all(|e| !e.is_empty()) {
            let (e, f, h) = (ext[0][0], ext[1][0], ext[2][0]);
            if e != f && f != h && e != h {
                let mut rw = Rewriter::new(g);
                for t in [y1, z1, cutv, vs[0], vs[1], vs[2]] {
                    rw.remove_vertex(t);
                }
                rw.add_mult(e, f, 1);
                rw.add_mult(f, h, 1);
                rw.add_mult(e, h, 1);
                if let Some(out) = rw.finish().graph() {
                    cands.push(out);
                }
            }
        }
        return cands;
    }
    if adj.len() != 2 {
        return cands;
    }
    // Path p - m - q.
    let m = if adj[0].0 == adj[1].0 || adj[0].0 == adj[1].1 {
        adj[0].0
    } else {
        adj[0].1
    };
    let others: Vec<Vertex> = vs.iter().copied().filter(|&x| x != m).collect();
    let (p, q) = (others[0], others[1]);
    let (dp, dq) = (g.mult(p, m), g.mult(q, m));
    if dp >= 2 && dq >= 2 {
        // d): reuse the quadruple pair as an A5 block.
        let mut rw = Rewriter::new(g);
        rw.remove_vertex(cutv);
        rw.remove_vertex(m);
        rw.add_mult(y1, z1, -1);
        for t in [p, q] {
            rw.add_mult(t, y1, 1);
            rw.add_mult(t, z1, 1);
        }
        rw.add_mult(p, q, 1);
        if let Some(out) = rw.finish().graph() {
            cands.push(out);
        }
    } else if dp >= 2 || dq >= 2 {
        // e): one doubled side; join the simple side to the doubled one.
        let (simple, doubled) = if dp >= 2 { (q, p) } else { (p, q) };
        for e in ext_common(simple, m) {
            let mut rw = Rewriter::new(g);
            for t in [y1, z1, cutv, m] {
                rw.remove_vertex(t);
            }
            rw.add_mult(simple, doubled, 2);
            rw.add_mult(doubled, e, 1);
            if let Some(out) = rw.finish().graph() {
                cands.push(out);
            }
        }
    } else {
        // c): plain Z on the diamond {p, cutv, m, q}.
        for pairs in [((p, cutv), (m, q)), ((p, m), (cutv, q))] {
            if let Some(out) = crate::reduce::zx::contract_quad(g, pairs.0, pairs.1) {
                cands.push(out);
            }
        }
        // f): both in outside triangles with m.
        let ep = ext_common(p, m);
        let eq = ext_common(q, m);
        for &e in &ep {
            for &f in &eq {
                if e == f {
                    continue;
                }
                let mut rw = Rewriter::new(g);
                for t in [y1, z1, cutv, m] {
                    rw.remove_vertex(t);
                }
                rw.add_mult(p, q, 1);
                rw.add_mult(p, f, 1);
                rw.add_mult(q, e, 1);
                if let Some(out) = rw.finish().graph() {
                    cands.push(out);
                }
            }
        }
    }
    cands
}

/// The spec'd operation: reduce at the cut vertex `v`, splitting into two
/// smaller graphs when both sides are large, or rewriting a pendant atom.
pub fn cut_vertex_reduce(g: &Multigraph, v: Vertex) -> Result<CutReduction, CutError> {
    if v >= g.order() {
        return Err(CutError::Graph(GraphError::OutOfRange(v, g.order())));
    }
    let sides = sides_of(g, v)?;
    let pend2 = sides.two.len() == 2;
    let pend3 = sides.three.len() == 3;
    if pend2 && pend3 {
        return Err(CutError::Terminal);
    }
    if pend2 {
        return reduce_pendant_a4(g, v, &sides.two).map(CutReduction::Single);
    }
    if pend3 {
        return reduce_pendant_block(g, v, &sides.three).map(CutReduction::Single);
    }
    let g1 = cap_with_a4(g, &sides.three, v);
    let g2 = cap_with_a10(g, &sides.two, v);
    Ok(CutReduction::Split(g1, g2))
}

pub(crate) fn try_cutv(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    let cuts = g.cut_vertices()?;
    for v in cuts {
        match cut_vertex_reduce(g, v) {
            Ok(CutReduction::Split(g1, g2)) => {
                let union = g1.disjoint_union(&g2);
                if let Some(a) = commit(g, RuleId::Cutv, &[v], union) {
                    return Ok(Some(a));
                }
                return Err(EngineError::Inconsistent {
                    rule: RuleId::Cutv,
                    detail: format!("split at {v} failed validation"),
                });
            }
            Ok(CutReduction::Single(out)) => {
                if let Some(a) = commit(g, RuleId::CutAtom, &[v], out) {
                    return Ok(Some(a));
                }
                return Err(EngineError::Inconsistent {
                    rule: RuleId::CutAtom,
                    detail: format!("pendant rewrite at {v} failed validation"),
                });
            }
            Err(CutError::Terminal) => return Ok(None),
            Err(CutError::NotCutVertex(_)) => continue,
            Err(e) => {
                return Err(EngineError::Inconsistent {
                    rule: RuleId::Cutv,
                    detail: format!("{e}"),
                })
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::base_graphs;

    #[test]
    fn base_graphs_report_terminal() {
        let base = base_graphs();
        assert!(matches!(
            cut_vertex_reduce(&base[2], 0),
            Err(CutError::Terminal)
        ));
        assert!(matches!(
            cut_vertex_reduce(&base[3], 0),
            Err(CutError::Terminal)
        ));
        assert!(matches!(
            cut_vertex_reduce(&base[2], 1),
            Err(CutError::NotCutVertex(1))
        ));
    }

    #[test]
    fn split_produces_two_valid_graphs() {
        // Cut vertex 0. Three-edge side {1,2,3,8,9}: triangle 1-2-3 plus a
        // doubled pair 8-9 adjacent to all of it. Two-edge side {4,5,6,7}:
        // a K4 with the 4-5 edge doubled and 6-7 tripled.
        let edges = vec![
            (0usize, 1usize, 1u8),
            (0, 2, 1),
            (0, 3, 1),
            (1, 2, 1),
            (1, 3, 1),
            (2, 3, 1),
            (1, 8, 1),
            (1, 9, 1),
            (2, 8, 1),
            (2, 9, 1),
            (3, 8, 1),
            (3, 9, 1),
            (8, 9, 2),
            (0, 4, 1),
            (0, 5, 1),
            (4, 5, 2),
            (4, 6, 1),
            (4, 7, 1),
            (5, 6, 1),
            (5, 7, 1),
            (6, 7, 3),
        ];
        let g = Multigraph::from_edges(10, &edges).unwrap();
        assert!(g.is_quintic());
        assert!(g.has_triangle_property());
        match cut_vertex_reduce(&g, 0).unwrap() {
            CutReduction::Split(g1, g2) => {
                for part in [&g1, &g2] {
                    assert!(part.is_quintic(), "{part:?}");
                    assert!(part.has_triangle_property(), "{part:?}");
                    assert!(part.order() < g.order());
                }
            }
            CutReduction::Single(_) => panic!("both sides are large; expected a split"),
        }
    }
}
