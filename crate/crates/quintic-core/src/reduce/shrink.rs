//! The optional foundational-graph shrink: focus on a triangle with no
//! multiple edges, delete one of its vertices, contract that vertex's
//! other (doubled) triangle, double the remaining triangle edge, and
//! re-route one parallel copy from each surviving triangle vertex's double
//! to the other's pendant partner. Off by default; the foundational family
//! is the stated terminal set.

use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Triangle, Vertex};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::{commit, Applied, RuleId};

fn double_partner(g: &Multigraph, v: Vertex) -> Option<Vertex> {
    let doubles: Vec<Vertex> = g
        .incidences(v)
        .into_iter()
        .filter(|&(_, k)| k == 2)
        .map(|(w, _)| w)
        .collect();
    (doubles.len() == 1).then(|| doubles[0])
}

pub(crate) fn try_found_shrink(g: &Multigraph) -> Option<Applied> {
    for t in g.triangles() {
        let [p, q, r] = t.verts;
        let simple = g.mult(p, q) == 1 && g.mult(p, r) == 1 && g.mult(q, r) == 1;
        if !simple {
            continue;
        }
        if g.m_of_triangle(Triangle::new(p, q, r)).ok()?.m_value < 3 {
            continue;
        }
        for (v, a, b) in [(p, q, r), (q, p, r), (r, p, q)] {
            // v's other triangle {v, x, y} with the double on vx.
            let x = double_partner(g, v)?;
            let y = g
                .incidences(v)
                .into_iter()
                .map(|(w, _)| w)
                .find(|&w| w != a && w != b && w != x)?;
            if !g.adjacent(x, y) {
                continue;
            }
            // Pendant-double partners of a and b inside their other
            // triangles.
            let pa = double_partner(g, a)?;
            let rb = double_partner(g, b)?;
            if [a, b, v, x, y].contains(&pa) || [a, b, v, x, y].contains(&rb) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(v);
            rw.set_zero(x, y);
            rw.merge(x, y);
            rw.add_mult(a, b, 1);
            rw.add_mult(a, rb, 1);
            rw.add_mult(b, pa, 1);
            rw.add_mult(a, pa, -1);
            rw.add_mult(b, rb, -1);
            if let Some(out) = rw.finish().graph() {
                if let Some(applied) = commit(g, RuleId::FoundShrink, &[v, a, b], out) {
                    return Some(applied);
                }
            }
        }
    }
    None
}
