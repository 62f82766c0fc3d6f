//! Reductions for clique number 5 and 4: the K6 and K5 contractions, the
//! K4-with-3-attached-neighbour theorem, the s_H case split (including the
//! blocked configuration's outer-diamond Z and the two identification
//! rewrites), and the pendant-triangle reductions for A5 and A2.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Vertex};
use crate::patterns::{find_cliques, s_of_config, ConfigMatch, PatternKind};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::zx::{first_valid_quad, x_reduce, X_PAIRINGS};
use crate::reduce::{commit, Applied, EngineError, RuleId};

/// The spec'd operation: applies, in order, the K6 contraction, the
/// clique-number-5 contraction, the 3-attached-neighbour reduction, and
/// the s_H case rewrites. Returns the reduced graph with the rule that
/// fired, or None when no clique rule applies.
pub fn clique_reduce(g: &Multigraph) -> Result<Option<(Multigraph, RuleId)>, EngineError> {
    if let Some(a) = try_clique5(g)? {
        return Ok(Some((a.result, a.rule)));
    }
    if let Some(a) = try_clique4(g)? {
        return Ok(Some((a.result, a.rule)));
    }
    Ok(None)
}

pub(crate) fn try_clique5(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    // Clique number 6 forces K6 itself.
    let k6 = find_cliques(g, 6);
    if !k6.is_empty() {
        let m = ConfigMatch::new(PatternKind::K4, k6[0].map[..4].to_vec());
        for pairing in X_PAIRINGS {
            if let Ok(out) = x_reduce(g, &m, pairing) {
                if let Some(a) = commit(g, RuleId::Clique5, &k6[0].map, out) {
                    return Ok(Some(a));
                }
            }
        }
        return Err(EngineError::Inconsistent {
            rule: RuleId::Clique5,
            detail: "K6 did not reduce".into(),
        });
    }
    let k5s = find_cliques(g, 5);
    if k5s.is_empty() {
        return Ok(None);
    }
    for k5 in &k5s {
        let vs = &k5.map;
        let simple_inside = (0..5)
            .all(|i| (i + 1..5).all(|j| g.mult(vs[i], vs[j]) == 1));
        if !simple_inside {
            // A multi-edged K5 leaves at most three outgoing edges, which
            // forces a cut vertex; the cut-vertex rule runs first.
            return Err(EngineError::Inconsistent {
                rule: RuleId::Clique5,
                detail: "multi-edged K5 without a cut vertex".into(),
            });
        }
        // Each K5 vertex has exactly one outside end; the five ends meet
        // two outside vertices, one twice (u) and one three times (v).
        let mut outside: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
        for &h in vs {
            for (w, k) in g.incidences(h) {
                if vs.contains(&w) {
                    continue;
                }
                debug_assert_eq!(k, 1);
                match outside.iter_mut().find(|(x, _)| *x == w) {
                    Some((_, hs)) => hs.push(h),
                    None => outside.push((w, vec![h])),
                }
            }
        }
        outside.sort_unstable();
        if outside.len() != 2 {
            return Err(EngineError::Inconsistent {
                rule: RuleId::Clique5,
                detail: format!("K5 with {} outside attachments", outside.len()),
            });
        }
        let (u_nbrs, v_nbrs) = if outside[0].1.len() == 2 {
            (outside[0].1.clone(), outside[1].1.clone())
        } else {
            (outside[1].1.clone(), outside[0].1.clone())
        };
        if u_nbrs.len() != 2 || v_nbrs.len() != 3 {
            return Err(EngineError::Inconsistent {
                rule: RuleId::Clique5,
                detail: "K5 attachments not split 2+3".into(),
            });
        }
        // Contract u1 v_a and u2 v_b for some choice of two v-neighbours.
        let mut cands = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                cands.push(((u_nbrs[0], v_nbrs[i]), (u_nbrs[1], v_nbrs[j])));
            }
        }
        if let Some((out, touched)) = first_valid_quad(g, cands) {
            if let Some(a) = commit(g, RuleId::Clique5, &touched, out) {
                return Ok(Some(a));
            }
        }
        return Err(EngineError::Inconsistent {
            rule: RuleId::Clique5,
            detail: "simple K5 contraction failed in every choice".into(),
        });
    }
    Ok(None)
}

pub(crate) fn try_clique4(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    let k4s = find_cliques(g, 4);
    if k4s.is_empty() {
        return Ok(None);
    }
    // First: any vertex adjacent to three vertices of some K4.
    for m in &k4s {
        let vs = &m.map;
        for t in 0..g.order() {
            if vs.contains(&t) {
                continue;
            }
            let attached: Vec<Vertex> = vs.iter().copied().filter(|&h| g.adjacent(t, h)).collect();
            if attached.len() >= 3 {
                let quad = [t, attached[0], attached[1], attached[2]];
                let mut cands = Vec::new();
                for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
                    cands.push((
                        (t, attached[i]),
                        (attached[j], attached[k]),
                    ));
                }
                if let Some((out, touched)) = first_valid_quad(g, cands) {
                    if let Some(a) = commit(g, RuleId::Clique4W5Nbr, &touched, out) {
                        return Ok(Some(a));
                    }
                }
                return Err(EngineError::Inconsistent {
                    rule: RuleId::Clique4W5Nbr,
                    detail: format!("3-attached K4 at {quad:?} did not reduce"),
                });
            }
        }
    }
    // Then the s_H case split per K4.
    for m in &k4s {
        if let Some(a) = k4_sh_cases(g, m)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn k4_sh_cases(g: &Multigraph, m: &ConfigMatch) -> Result<Option<Applied>, EngineError> {
    let vs = m.map.clone();
    let s = s_of_config(g, m).expect("K4 kind supports s_H");
    if s >= 1 {
        // Direct X-reductions first.
        for pairing in X_PAIRINGS {
            if let Ok(out) = x_reduce(g, m, pairing) {
                if let Some(a) = commit(g, RuleId::K4Sh, &vs, out) {
                    return Ok(Some(a));
                }
            }
        }
    }
    if s >= 3 {
        // Blocked: a triangle of H has all three pairs attended. Z-reduce
        // an outer diamond through the fourth vertex.
        let mut cands = Vec::new();
        for t_idx in 0..4 {
            let t = vs[t_idx];
            let tri: Vec<Vertex> = vs.iter().copied().filter(|&x| x != t).collect();
            for q in 0..g.order() {
                if vs.contains(&q) {
                    continue;
                }
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    if g.adjacent(q, tri[i]) && g.adjacent(q, tri[j]) && !g.adjacent(q, t) {
                        cands.push(((q, tri[i]), (tri[j], t)));
                        cands.push(((q, tri[j]), (tri[i], t)));
                    }
                }
            }
        }
        if let Some((out, touched)) = first_valid_quad(g, cands) {
            if let Some(a) = commit(g, RuleId::K4Sh, &touched, out) {
                return Ok(Some(a));
            }
        }
        return Err(EngineError::Inconsistent {
            rule: RuleId::K4Sh,
            detail: format!("blocked K4 {vs:?} with s_H={s} did not reduce"),
        });
    }
    if s >= 1 {
        if let Some(a) = ident23(g, &vs)? {
            return Ok(Some(a));
        }
        return Ok(None);
    }
    // s == 0: the pendant-triangle lemma for A5 / A2.
    pendant_lemma(g, &vs)
}

/// The two identification rewrites for a K4 with double edges whose
/// X-reductions are all blocked.
fn ident23(g: &Multigraph, vs: &[Vertex]) -> Result<Option<Applied>, EngineError> {
    let doubles: Vec<(Vertex, Vertex)> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| g.mult(vs[i], vs[j]) >= 2)
        .map(|(i, j)| (vs[i], vs[j]))
        .collect();
    if doubles.len() == 2 {
        // Two doubles sharing a vertex c; a, b their other endpoints; d the
        // free vertex; w an unsafe-triangle witness on (a, b).
        let shared: Vec<Vertex> = vs
            .iter()
            .copied()
            .filter(|&x| doubles.iter().filter(|&&(p, q)| p == x || q == x).count() == 2)
            .collect();
        if shared.len() != 1 {
            return Ok(None);
        }
        let c = shared[0];
        let mut ab: Vec<Vertex> = doubles
            .iter()
            .flat_map(|&(p, q)| [p, q])
            .filter(|&x| x != c)
            .collect();
        ab.sort_unstable();
        let d = vs.iter().copied().find(|&x| x != c && !ab.contains(&x)).unwrap();
        for w in g.common_neighbors(ab[0], ab[1]) {
            if vs.contains(&w) || g.adjacent(d, w) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            for x in [ab[0], ab[1], c] {
                rw.remove_vertex(x);
            }
            rw.merge(d, w);
            if let Some(out) = rw.finish().graph() {
                if let Some(a) = commit(g, RuleId::K4Sh, vs, out) {
                    return Ok(Some(a));
                }
            }
        }
    }
    if doubles.len() == 1 {
        // One double (a, b); two unsafe triangles hang off the other two
        // vertices through a shared third vertex c.
        let (a, b) = doubles[0];
        let rest: Vec<Vertex> = vs.iter().copied().filter(|&x| x != a && x != b).collect();
        for (c, e) in [(rest[0], rest[1]), (rest[1], rest[0])] {
            let outside = |x: Vertex, y: Vertex| -> Vec<Vertex> {
                g.common_neighbors(x, y)
                    .into_iter()
                    .filter(|&w| !vs.contains(&w))
                    .collect()
            };
            for &d in &outside(a, c) {
                for &f in &outside(b, c) {
                    if d == f || g.adjacent(e, f) {
                        continue;
                    }
                    let mut rw = Rewriter::new(g);
                    rw.remove_vertex(b);
                    for x in [a, c] {
                        rw.set_zero(e, x);
                    }
                    rw.set_zero(f, c);
                    rw.merge(e, f);
                    rw.add_mult(a, c, 3);
                    if let Some(out) = rw.finish().graph() {
                        if let Some(ap) = commit(g, RuleId::K4Sh, vs, out) {
                            return Ok(Some(ap));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Pendant pair of a degree-3-in-atom vertex: its two outside neighbours,
/// which must be joined (the pendant triangle).
fn pendant_pair(g: &Multigraph, q: Vertex, atom: &[Vertex]) -> Option<(Vertex, Vertex, bool)> {
    let ext: Vec<(Vertex, u8)> = g
        .incidences(q)
        .into_iter()
        .filter(|(w, _)| !atom.contains(w))
        .collect();
    if ext.len() != 2 || ext[0].1 != 1 || ext[1].1 != 1 {
        return None;
    }
    let (x, y) = (ext[0].0, ext[1].0);
    if !g.adjacent(x, y) {
        return None;
    }
    let tri = crate::mgraph::Triangle::new(q, x, y);
    let aloof = g.m_of_triangle(tri).ok()?.is_aloof();
    Some((x, y, aloof))
}

/// Lemma: A5 is reducible, and A2 is reducible unless all of its pendant
/// triangles are aloof.
fn pendant_lemma(g: &Multigraph, vs: &[Vertex]) -> Result<Option<Applied>, EngineError> {
    let mut triple = None;
    let mut simple = true;
    for i in 0..4 {
        for j in i + 1..4 {
            match g.mult(vs[i], vs[j]) {
                1 => {}
                3 if triple.is_none() => triple = Some((vs[i], vs[j])),
                _ => simple = false,
            }
        }
    }
    if let Some((p1, p2)) = triple {
        // A5: the two non-triple vertices carry the pendant triangles.
        let qs: Vec<Vertex> = vs.iter().copied().filter(|&x| x != p1 && x != p2).collect();
        let pd: Vec<_> = qs.iter().filter_map(|&q| pendant_pair(g, q, vs)).collect();
        if pd.len() != 2 {
            return Ok(None);
        }
        let ports: Vec<(Vertex, Vertex, bool)> = pd;
        if let Some(out) = recover_two_sides(g, vs, &ports) {
            if let Some(a) = commit(g, RuleId::Pendant, vs, out) {
                return Ok(Some(a));
            }
        }
        return Err(EngineError::Inconsistent {
            rule: RuleId::Pendant,
            detail: format!("A5 at {vs:?} did not reduce"),
        });
    }
    if !simple {
        return Ok(None);
    }
    // A2: all four vertices carry pendant triangles.
    let pd: Vec<_> = vs.iter().filter_map(|&q| pendant_pair(g, q, vs)).collect();
    if pd.len() != 4 {
        return Ok(None);
    }
    let mut flat: Vec<Vertex> = pd.iter().flat_map(|&(x, y, _)| [x, y]).collect();
    flat.sort_unstable();
    flat.dedup();
    if flat.len() != 8 {
        return Ok(None);
    }
    let aloof: Vec<&(Vertex, Vertex, bool)> = pd.iter().filter(|&&(_, _, a)| a).collect();
    let unsafe_: Vec<&(Vertex, Vertex, bool)> = pd.iter().filter(|&&(_, _, a)| !a).collect();
    match aloof.len() {
        0 | 1 | 2 => {
            let sides: Vec<(Vertex, Vertex, bool)> = pd.clone();
            if let Some(out) = recover_a2_small(g, vs, &sides, aloof.len()) {
                if let Some(a) = commit(g, RuleId::Pendant, vs, out) {
                    return Ok(Some(a));
                }
            }
            Err(EngineError::Inconsistent {
                rule: RuleId::Pendant,
                detail: format!("A2 at {vs:?} with {} aloof pendants did not reduce", aloof.len()),
            })
        }
        3 => {
            // Double the unsafe pendant's pair edge; regroup the six aloof
            // ports into two new triangles.
            let ports: Vec<Vertex> = aloof.iter().flat_map(|&&(x, y, _)| [x, y]).collect();
            for grouping in triples_partitions() {
                let t1: Vec<Vertex> = grouping[0].iter().map(|&i| ports[i]).collect();
                let t2: Vec<Vertex> = grouping[1].iter().map(|&i| ports[i]).collect();
                let mut rw = Rewriter::new(g);
                for &x in vs {
                    rw.remove_vertex(x);
                }
                let (ux, uy, _) = *unsafe_[0];
                rw.add_mult(ux, uy, 1);
                for &(x, y, _) in aloof.iter().map(|&r| r) {
                    rw.set_zero(x, y);
                }
                for t in [&t1, &t2] {
                    rw.add_mult(t[0], t[1], 1);
                    rw.add_mult(t[0], t[2], 1);
                    rw.add_mult(t[1], t[2], 1);
                }
                if let Some(out) = rw.finish().graph() {
                    if let Some(a) = commit(g, RuleId::Pendant, vs, out) {
                        return Ok(Some(a));
                    }
                }
            }
            Err(EngineError::Inconsistent {
                rule: RuleId::Pendant,
                detail: format!("A2 at {vs:?} with 3 aloof pendants did not reduce"),
            })
        }
        _ => Ok(None), // all aloof: handled by the A3-based reduction later
    }
}

/// All partitions of {0..5} into two unordered triples (fix 0 in the
/// first).
fn triples_partitions() -> Vec<[[usize; 3]; 2]> {
    let mut out = Vec::new();
    for i in 1..6 {
        for j in i + 1..6 {
            let t1 = [0, i, j];
            let t2: Vec<usize> = (1..6).filter(|&x| x != i && x != j).collect();
            out.push([t1, [t2[0], t2[1], t2[2]]]);
        }
    }
    out
}

/// A5-style recovery: delete the four atom vertices; each unsafe pendant
/// gets its pair edge doubled; aloof pendants are rejoined to two fresh
/// vertices whose mutual multiplicity tops their degree up to five.
fn recover_two_sides(
    g: &Multigraph,
    atom: &[Vertex],
    sides: &[(Vertex, Vertex, bool)],
) -> Option<Multigraph> {
    let mut rw = Rewriter::new(g);
    for &x in atom {
        rw.remove_vertex(x);
    }
    let aloof: Vec<&(Vertex, Vertex, bool)> = sides.iter().filter(|&&(_, _, a)| a).collect();
    for &(x, y, a) in sides {
        if !a {
            rw.add_mult(x, y, 1);
        }
    }
    if !aloof.is_empty() {
        let n1 = rw.new_vertex();
        let n2 = rw.new_vertex();
        let link = match aloof.len() {
            1 => 3,
            2 => 1,
            _ => return None,
        };
        rw.add_mult(n1, n2, link);
        for &&(x, y, _) in &aloof {
            rw.set_zero(x, y);
            for p in [x, y] {
                rw.add_mult(n1, p, 1);
                rw.add_mult(n2, p, 1);
            }
        }
    }
    rw.finish().graph()
}

/// A2 with at most two aloof pendants: same recovery, four sides.
fn recover_a2_small(
    g: &Multigraph,
    atom: &[Vertex],
    sides: &[(Vertex, Vertex, bool)],
    n_aloof: usize,
) -> Option<Multigraph> {
    debug_assert!(n_aloof <= 2);
    recover_two_sides(g, atom, sides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::construct::{base_graphs, k34_biregular, q_of_biregular};

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_mult(u, v, 1).unwrap();
            }
        }
        g
    }

    #[test]
    fn k6_reduces_to_fig1_right() {
        let (out, rule) = clique_reduce(&complete(6)).unwrap().unwrap();
        assert_eq!(rule, RuleId::Clique5);
        let base = base_graphs();
        assert!(are_isomorphic(&out, &base[1]));
    }

    #[test]
    fn q_graph_clique_rule_not_applicable() {
        // All pendant triangles of the Q(B) K4s are aloof; the clique rule
        // passes and the A3-based reduction handles it later.
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert!(clique_reduce(&q).unwrap().is_none());
    }
}
