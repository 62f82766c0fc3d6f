//! The K4 whose four pendant triangles are all aloof, reduced through an
//! A3 block and a fresh triangle: two of its vertices survive with a
//! doubled edge, adopting one stranded partner directly and regrouping the
//! rest.

use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Triangle, Vertex};
use crate::patterns::find_cliques;
use crate::reduce::rewriter::Rewriter;
use crate::reduce::{commit, Applied, EngineError, RuleId};

/// The spec'd operation; None when no all-aloof simple K4 is present.
pub fn a2_via_a3_reduce(g: &Multigraph) -> Result<Option<Multigraph>, EngineError> {
    Ok(try_a2via3(g)?.map(|a| a.result))
}

pub(crate) fn try_a2via3(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    for m in find_cliques(g, 4) {
        let vs = &m.map;
        let simple = (0..4).all(|i| (i + 1..4).all(|j| g.mult(vs[i], vs[j]) == 1));
        if !simple {
            continue;
        }
        // Pendant pair per vertex, all aloof, all disjoint.
        let mut pends = Vec::new();
        let mut ok = true;
        for &q in vs.iter() {
            let ext: Vec<(Vertex, u8)> = g
                .incidences(q)
                .into_iter()
                .filter(|(w, _)| !vs.contains(w))
                .collect();
            if ext.len() != 2 || ext[0].1 != 1 || ext[1].1 != 1 {
                ok = false;
                break;
            }
            let (x, y) = (ext[0].0, ext[1].0);
            let aloof = g.adjacent(x, y)
                && g
                    .m_of_triangle(Triangle::new(q, x, y))
                    .map(|c| c.is_aloof())
                    .unwrap_or(false);
            if !aloof {
                ok = false;
                break;
            }
            pends.push((x, y));
        }
        if !ok {
            continue;
        }
        let mut flat: Vec<Vertex> = pends.iter().flat_map(|&(x, y)| [x, y]).collect();
        flat.sort_unstable();
        flat.dedup();
        if flat.len() != 8 {
            continue;
        }
        // Keep pair (a, b), delete (c, d); c donates one partner to the
        // new A3 triangle, the remaining three ports form the fresh
        // triangle.
        for keep in [[0usize, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
            let dels: Vec<usize> = (0..4).filter(|i| !keep.contains(i)).collect();
            for (ci, di) in [(dels[0], dels[1]), (dels[1], dels[0])] {
                let (a, b) = (vs[keep[0]], vs[keep[1]]);
                let (c, dv) = (vs[ci], vs[di]);
                for c1_choice in 0..2 {
                    let (c1, c2) = if c1_choice == 0 {
                        pends[ci]
                    } else {
                        (pends[ci].1, pends[ci].0)
                    };
                    let (d1, d2) = pends[di];
                    let mut rw = Rewriter::new(g);
                    rw.remove_vertex(c);
                    rw.remove_vertex(dv);
                    rw.add_mult(a, b, 1);
                    rw.set_zero(c1, c2);
                    rw.add_mult(a, c1, 1);
                    rw.add_mult(b, c1, 1);
                    // d's pair edge survives; c2 joins it into a triangle.
                    rw.add_mult(c2, d1, 1);
                    rw.add_mult(c2, d2, 1);
                    if let Some(out) = rw.finish().graph() {
                        if let Some(ap) = commit(g, RuleId::A2ViA3, vs, out) {
                            return Ok(Some(ap));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{k34_biregular, q_of_biregular};

    #[test]
    fn q_of_k34_loses_one_k4() {
        let q = q_of_biregular(&k34_biregular()).unwrap();
        let out = a2_via_a3_reduce(&q).unwrap().expect("applies to Q(B)");
        assert_eq!(out.order(), q.order() - 2);
        assert!(out.is_quintic());
        assert!(out.has_triangle_property());
    }

    #[test]
    fn foundational_graphs_have_no_k4() {
        let c = crate::construct::cubic_k4();
        let (lg, _) = crate::construct::line_graph(&c).unwrap();
        let m = crate::construct::find_perfect_matching(&lg).unwrap();
        let g = crate::construct::foundational_from_cubic(&c, &m).unwrap();
        assert!(a2_via_a3_reduce(&g).unwrap().is_none());
    }
}
