//! Triple (and quadruple) edges once `t_e <= 2`: the A7 detection and its
//! degrees-5-and-2 reduction, and the two other triple-edge contexts with
//! their contractions and identifications.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Vertex};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::te::deg52_reduce;
use crate::reduce::zx::first_valid_quad;
use crate::reduce::{commit, Applied, EngineError, RuleId};

/// The spec'd operation: handles any edge of multiplicity 3 or more,
/// returning the reduced graph and the rule that fired, or None if no such
/// edge exists.
pub fn triple_quad_reduce(g: &Multigraph) -> Result<Option<(Multigraph, RuleId)>, EngineError> {
    match try_triple_quad(g)? {
        Some(a) => Ok(Some((a.result, a.rule))),
        None => Ok(None),
    }
}

pub(crate) fn try_triple_quad(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    let heavy: Vec<(Vertex, Vertex, u8)> = g
        .edges()
        .into_iter()
        .filter(|&(_, _, k)| k >= 3)
        .collect();
    if heavy.is_empty() {
        return Ok(None);
    }
    for (p, q, k) in heavy {
        if k >= 4 {
            // A quadruple edge hangs off a cut vertex, which the cut-vertex
            // rule has already consumed.
            return Err(EngineError::Inconsistent {
                rule: RuleId::Triple,
                detail: format!("quadruple edge ({p},{q}) survived the cut-vertex rule"),
            });
        }
        let others = |v: Vertex, o: Vertex| -> Vec<(Vertex, u8)> {
            g.incidences(v)
                .into_iter()
                .filter(|&(w, _)| w != o)
                .collect()
        };
        let po = others(p, q);
        let qo = others(q, p);
        let pset: Vec<Vertex> = po.iter().map(|&(w, _)| w).collect();
        let qset: Vec<Vertex> = qo.iter().map(|&(w, _)| w).collect();
        let shared: Vec<Vertex> = pset.iter().copied().filter(|w| qset.contains(w)).collect();
        match shared.len() {
            2 => {
                // A7: both extra neighbours shared.
                if let Some(a) = reduce_a7(g, p, q, &shared)? {
                    return Ok(Some(a));
                }
            }
            1 => {
                let c = shared[0];
                let doubled_to_c = g.mult(p, c).max(g.mult(q, c)) >= 2;
                let a = if doubled_to_c {
                    reduce_triple_middle(g, p, q, c)?
                } else {
                    reduce_triple_right(g, p, q, c, &pset, &qset)?
                };
                if let Some(a) = a {
                    return Ok(Some(a));
                }
            }
            _ => {
                return Err(EngineError::Inconsistent {
                    rule: RuleId::Triple,
                    detail: format!(
                        "triple edge ({p},{q}) shares {} neighbours; edge not in a triangle",
                        shared.len()
                    ),
                })
            }
        }
    }
    Ok(None)
}

fn reduce_a7(
    g: &Multigraph,
    p: Vertex,
    q: Vertex,
    us: &[Vertex],
) -> Result<Option<Applied>, EngineError> {
    let (u1, u2) = (us[0], us[1]);
    if g.adjacent(u1, u2) {
        // Then {u1, p, q, u2} spans more than the A7; a wheel or clique
        // rule owns it.
        return Ok(None);
    }
    let touched = [u1, u2, p, q];
    // X when the degree-2 roles share an outside neighbour.
    let cands = [((u1, p), (q, u2)), ((u1, q), (p, u2))];
    if let Some((out, t)) = first_valid_quad(g, cands) {
        if let Some(a) = commit(g, RuleId::Triple, &t, out) {
            return Ok(Some(a));
        }
    }
    // Otherwise the A7 is atomic here; the degrees-5-and-2 lemma applies
    // when two multiple edges exist outside it.
    if let Ok(out) = deg52_reduce(g, &[p, q, u1, u2]) {
        if let Some(a) = commit(g, RuleId::Deg52, &touched, out) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Middle configuration: the triple pair {p, q} with q doubled to c, and
/// p's remaining neighbour v1.
fn reduce_triple_middle(
    g: &Multigraph,
    p: Vertex,
    q: Vertex,
    c: Vertex,
) -> Result<Option<Applied>, EngineError> {
    // Normalize: q carries the double to c.
    let (p, q) = if g.mult(q, c) >= 2 { (p, q) } else { (q, p) };
    let v1 = match g
        .incidences(p)
        .into_iter()
        .map(|(w, _)| w)
        .find(|&w| w != q && w != c)
    {
        Some(v) => v,
        None => return Ok(None),
    };
    let v2 = match g
        .incidences(c)
        .into_iter()
        .map(|(w, _)| w)
        .find(|&w| w != p && w != q && w != v1)
    {
        Some(v) => v,
        None => return Ok(None),
    };
    if !g.adjacent(v1, v2) {
        return Ok(None);
    }
    let touched = vec![p, q, c, v1, v2];
    let v3s: Vec<Vertex> = g
        .common_neighbors(v1, v2)
        .into_iter()
        .filter(|&w| w != c && w != p && w != q)
        .collect();
    for &v3 in &v3s {
        // Left: one fresh vertex doubled to v1 and v2, single to v3; the
        // v2-v3 edge goes.
        let mut rw = Rewriter::new(g);
        for t in [p, q, c] {
            rw.remove_vertex(t);
        }
        rw.set_zero(v2, v3);
        let k = rw.new_vertex();
        rw.add_mult(k, v1, 2);
        rw.add_mult(k, v2, 2);
        rw.add_mult(k, v3, 1);
        if let Some(out) = rw.finish().graph() {
            if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
                return Ok(Some(a));
            }
        }
        // Middle: fresh vertex tripled to v1; the v1-v3 edge goes.
        let mut rw = Rewriter::new(g);
        for t in [p, q, c] {
            rw.remove_vertex(t);
        }
        rw.set_zero(v1, v3);
        let k = rw.new_vertex();
        rw.add_mult(k, v1, 3);
        rw.add_mult(k, v2, 1);
        rw.add_mult(k, v3, 1);
        if let Some(out) = rw.finish().graph() {
            if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
                return Ok(Some(a));
            }
        }
    }
    // Contract p, q, c, v1, v2 into one vertex.
    let mut rw = Rewriter::new(g);
    let group = [p, q, c, v1, v2];
    for i in 0..5 {
        for j in i + 1..5 {
            if g.adjacent(group[i], group[j]) {
                rw.set_zero(group[i], group[j]);
            }
        }
    }
    for &t in &group[1..] {
        rw.merge(group[0], t);
    }
    if let Some(out) = rw.finish().graph() {
        if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
            return Ok(Some(a));
        }
    }
    Err(EngineError::Inconsistent {
        rule: RuleId::Triple,
        detail: format!("triple middle configuration at ({p},{q}) did not reduce"),
    })
}

/// Right configuration: p ~ w2, w3 and q ~ w1, w2 with the shared w2.
fn reduce_triple_right(
    g: &Multigraph,
    p: Vertex,
    q: Vertex,
    w2: Vertex,
    pset: &[Vertex],
    qset: &[Vertex],
) -> Result<Option<Applied>, EngineError> {
    let w3 = pset.iter().copied().find(|&w| w != w2);
    let w1 = qset.iter().copied().find(|&w| w != w2);
    let (Some(w3), Some(w1)) = (w3, w1) else {
        return Ok(None);
    };
    if !(g.adjacent(w1, w2) && g.adjacent(w2, w3)) {
        return Ok(None);
    }
    let config = [p, q, w1, w2, w3];
    let touched = config.to_vec();
    // Doubled arm: contract the whole configuration into one vertex.
    if g.mult(w1, w2) >= 2 || g.mult(w2, w3) >= 2 {
        let mut rw = Rewriter::new(g);
        for i in 0..5 {
            for j in i + 1..5 {
                if g.adjacent(config[i], config[j]) {
                    rw.set_zero(config[i], config[j]);
                }
            }
        }
        for &t in &config[1..] {
            rw.merge(config[0], t);
        }
        if let Some(out) = rw.finish().graph() {
            if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
                return Ok(Some(a));
            }
        }
    }
    // w2's fifth neighbour x.
    let x = g
        .incidences(w2)
        .into_iter()
        .map(|(w, _)| w)
        .find(|&w| w != p && w != q && w != w1 && w != w3);
    let Some(x) = x else { return Ok(None) };
    if g.adjacent(x, w1) && g.adjacent(x, w3) {
        // X across the triple edge.
        let cands = [((p, w2), (q, w1)), ((q, w2), (p, w3))];
        if let Some((out, t)) = first_valid_quad(g, cands) {
            if let Some(a) = commit(g, RuleId::Triple, &t, out) {
                return Ok(Some(a));
            }
        }
    }
    for (wa, wb) in [(w1, w3), (w3, w1)] {
        // x adjacent to wa (and w2) but not wb.
        if !g.adjacent(x, wa) || g.adjacent(x, wb) {
            continue;
        }
        // Contract the five and hang a quadruple pair on x.
        let mut rw = Rewriter::new(g);
        for i in 0..5 {
            for j in i + 1..5 {
                if g.adjacent(config[i], config[j]) {
                    rw.set_zero(config[i], config[j]);
                }
            }
        }
        rw.set_zero(x, wa);
        rw.set_zero(x, w2);
        for &t in &config[1..] {
            rw.merge(config[0], t);
        }
        let n1 = rw.new_vertex();
        let n2 = rw.new_vertex();
        rw.add_mult(n1, n2, 4);
        rw.add_mult(x, n1, 1);
        rw.add_mult(x, n2, 1);
        if let Some(out) = rw.finish().graph() {
            if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
                return Ok(Some(a));
            }
        }
        // Or contract wa with x and rebuild the triangle on wb.
        for y in g.common_neighbors(wa, x) {
            if config.contains(&y) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            for t in [p, q, w2] {
                rw.remove_vertex(t);
            }
            rw.set_zero(wa, x);
            rw.set_zero(x, y);
            rw.merge(wa, x);
            rw.add_mult(wa, wb, 1);
            rw.add_mult(y, wb, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(a) = commit(g, RuleId::Triple, &touched, out) {
                    return Ok(Some(a));
                }
            }
        }
    }
    Ok(None)
}
