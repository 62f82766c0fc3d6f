//! Simple diamonds (no multiple edges in the configuration, no edge in
//! more than two triangles): the s_H case split, including the 6-wheel
//! endgame re-covered by A3 blocks.

use alloc::vec;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Triangle, Vertex};
use crate::patterns::{find_induced_diamonds, find_wheels, s_of_config, ConfigMatch};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::zx::first_valid_quad;
use crate::reduce::{commit, Applied, EngineError, RuleId};

/// The spec'd operation over simple diamonds; None when no diamond exists
/// in a simple region.
pub fn simple_diamond_reduce(
    g: &Multigraph,
) -> Result<Option<(Multigraph, RuleId)>, EngineError> {
    match try_simple_sh(g)? {
        Some(a) => Ok(Some((a.result, a.rule))),
        None => Ok(None),
    }
}

pub(crate) fn try_simple_sh(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    // The 6-wheel endgame first: it is where the s = 2 chain bottoms out.
    if let Some(a) = try_w6(g)? {
        return Ok(Some(a));
    }
    let mut diamonds: Vec<(usize, ConfigMatch)> = Vec::new();
    for d in find_induced_diamonds(g) {
        let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
        let simple = [(c1, c2), (w1, c1), (w1, c2), (w2, c1), (w2, c2)]
            .iter()
            .all(|&(a, b)| g.mult(a, b) == 1);
        if !simple {
            continue;
        }
        let s = s_of_config(g, &d).expect("diamond supports s_H");
        diamonds.push((s, d));
    }
    // s = 0 first (a plain Z necessarily works there), then by case.
    diamonds.sort_by_key(|&(s, _)| s);
    for (s, d) in &diamonds {
        let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
        let a = match s {
            0 => {
                let cands = [((w1, c1), (c2, w2)), ((w1, c2), (c1, w2))];
                first_valid_quad(g, cands)
                    .and_then(|(out, t)| commit(g, RuleId::SimpleSh, &t, out))
            }
            2 => sh2(g, d)?,
            3 => sh3(g, d)?,
            4 => sh4(g, d)?,
            _ => None, // s = 1 escalates to an s = 2 diamond elsewhere
        };
        if let Some(a) = a {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Outside vertices attached to an adjacent pair of the diamond, with the
/// pattern edge they sit on.
fn s_vertices(g: &Multigraph, d: &ConfigMatch) -> Vec<(Vertex, (Vertex, Vertex))> {
    let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
    let edges = [(w1, c1), (w1, c2), (w2, c1), (w2, c2), (c1, c2)];
    let vs = d.verts();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if vs.contains(&x) {
            continue;
        }
        for &(a, b) in &edges {
            if g.adjacent(x, a) && g.adjacent(x, b) {
                out.push((x, (a, b)));
                break;
            }
        }
    }
    out
}

fn pendant_pair(g: &Multigraph, q: Vertex, block: &[Vertex]) -> Option<(Vertex, Vertex, bool)> {
    let ext: Vec<(Vertex, u8)> = g
        .incidences(q)
        .into_iter()
        .filter(|(w, _)| !block.contains(w))
        .collect();
    if ext.len() != 2 || ext[0].1 != 1 || ext[1].1 != 1 {
        return None;
    }
    let (x, y) = (ext[0].0, ext[1].0);
    if !g.adjacent(x, y) {
        return None;
    }
    let aloof = g.m_of_triangle(Triangle::new(q, x, y)).ok()?.is_aloof();
    Some((x, y, aloof))
}

/// The two s = 2 configurations: attachments on disjoint wing-central
/// edges, or both attachments incident to one central (the hub chain).
fn sh2(g: &Multigraph, d: &ConfigMatch) -> Result<Option<Applied>, EngineError> {
    let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
    let sv = s_vertices(g, d);
    if sv.len() != 2 {
        return Ok(None);
    }
    let on_edge = |x: Vertex, a: Vertex, b: Vertex| g.adjacent(x, a) && g.adjacent(x, b);
    // Configuration 1: one attachment per central, on different wings.
    for (cen_a, cen_f) in [(c1, c2), (c2, c1)] {
        for (wing_a, wing_f) in [(w1, w2), (w2, w1)] {
            let a = sv.iter().map(|&(x, _)| x).find(|&x| on_edge(x, wing_a, cen_a));
            let f = sv.iter().map(|&(x, _)| x).find(|&x| on_edge(x, wing_f, cen_f));
            let (Some(a), Some(f)) = (a, f) else { continue };
            if a == f {
                continue;
            }
            let fifth = |c: Vertex| -> Option<Vertex> {
                g.incidences(c)
                    .into_iter()
                    .map(|(t, _)| t)
                    .find(|&t| ![c1, c2, w1, w2].contains(&t) && t != a && t != f)
            };
            let (Some(ga), Some(gf)) = (fifth(cen_a), fifth(cen_f)) else {
                continue;
            };
            if !(g.adjacent(ga, a) && g.adjacent(gf, f)) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(cen_a);
            rw.remove_vertex(cen_f);
            rw.add_mult(a, wing_a, 1);
            rw.add_mult(wing_a, ga, 1);
            rw.add_mult(f, wing_f, 1);
            rw.add_mult(wing_f, gf, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                    return Ok(Some(ap));
                }
            }
        }
    }
    // Configuration 2: both attachments share a central (the hub); the
    // other central carries a pendant pair.
    for (hub, u1) in [(c1, c2), (c2, c1)] {
        let u4 = sv
            .iter()
            .map(|&(x, _)| x)
            .find(|&x| on_edge(x, w1, hub));
        let u3 = sv
            .iter()
            .map(|&(x, _)| x)
            .find(|&x| on_edge(x, w2, hub));
        let (Some(u4), Some(u3)) = (u4, u3) else { continue };
        if u4 == u3 {
            continue;
        }
        let (u0, u2) = (w1, w2);
        let block = [hub, u0, u1, u2, u3, u4];
        let Some((pg, ph, _)) = pendant_pair(g, u1, &block) else {
            continue;
        };
        // Reduction 1: delete the centrals, re-ring the four rim vertices,
        // double the pendant pair.
        {
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(u1);
            rw.remove_vertex(hub);
            rw.add_mult(u4, u2, 1);
            rw.add_mult(u0, u2, 1);
            rw.add_mult(u0, u3, 1);
            rw.add_mult(pg, ph, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                    return Ok(Some(ap));
                }
            }
        }
        // Reduction 2 (and mirror): drop one outer rim edge, double across,
        // hand the pendant pair to the orphaned attachment.
        for (near, far, orphan, keep) in [(u0, u2, u3, u4), (u2, u0, u4, u3)] {
            if !g.adjacent(far, orphan) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(u1);
            rw.remove_vertex(hub);
            rw.set_zero(far, orphan);
            rw.add_mult(near, far, 2);
            rw.add_mult(keep, far, 1);
            rw.add_mult(orphan, pg, 1);
            rw.add_mult(orphan, ph, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                    return Ok(Some(ap));
                }
            }
        }
        // Final reduction: both outer rim edges live in second triangles.
        let ext_pair = |x: Vertex| -> Option<(Vertex, Vertex)> {
            let ext: Vec<Vertex> = g
                .incidences(x)
                .into_iter()
                .map(|(t, _)| t)
                .filter(|t| !block.contains(t))
                .collect();
            (ext.len() == 2).then(|| (ext[0], ext[1]))
        };
        if let (Some((y0, z0)), Some((i0, j0))) = (ext_pair(u0), ext_pair(u2)) {
            let (y, z) = if g.adjacent(z0, u4) { (y0, z0) } else { (z0, y0) };
            let (i, j) = if g.adjacent(j0, u3) { (i0, j0) } else { (j0, i0) };
            if g.adjacent(y, z) && g.adjacent(i, j) && g.adjacent(z, u4) && g.adjacent(j, u3) {
                let mut rw = Rewriter::new(g);
                for t in [u0, u1, u2, hub] {
                    rw.remove_vertex(t);
                }
                rw.set_zero(pg, ph);
                rw.add_mult(u4, pg, 1);
                rw.add_mult(pg, z, 1);
                rw.add_mult(u4, y, 1);
                rw.add_mult(u3, i, 1);
                rw.add_mult(ph, j, 1);
                rw.add_mult(ph, u3, 1);
                if let Some(out) = rw.finish().graph() {
                    if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                        return Ok(Some(ap));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// s = 3: one wing-central edge unattended. Z through the attachment on
/// the attended edge of the same wing, else the doubled repair.
fn sh3(g: &Multigraph, d: &ConfigMatch) -> Result<Option<Applied>, EngineError> {
    let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
    let sv = s_vertices(g, d);
    if sv.len() != 3 {
        return Ok(None);
    }
    let on_edge = |x: Vertex, a: Vertex, b: Vertex| g.adjacent(x, a) && g.adjacent(x, b);
    // Find the unattended wing-central edge (wing w, central v).
    for (v, u) in [(c1, c2), (c2, c1)] {
        for (w, t_wing) in [(w1, w2), (w2, w1)] {
            if sv.iter().any(|&(x, _)| on_edge(x, w, v)) {
                continue; // (w, v) is attended
            }
            let x = sv.iter().map(|&(x, _)| x).find(|&x| on_edge(x, w, u));
            let Some(x) = x else { continue };
            // Plain Z on {v, u, w, x}.
            let cands = [((v, u), (w, x)), ((v, w), (u, x))];
            if let Some((out, touched)) = first_valid_quad(g, cands) {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &touched, out) {
                    return Ok(Some(ap));
                }
            }
            // Blocked: x-w lies in a second triangle through i; j finishes
            // w's budget next to i.
            let i = g
                .common_neighbors(x, w)
                .into_iter()
                .find(|&t| t != u && t != v && t != w1 && t != w2);
            let Some(i) = i else { continue };
            let j = g
                .incidences(w)
                .into_iter()
                .map(|(t, _)| t)
                .find(|&t| ![u, v, w1, w2, x, i].contains(&t));
            let Some(j) = j else { continue };
            if !g.adjacent(j, i) {
                continue;
            }
            let a_t = sv
                .iter()
                .map(|&(s, _)| s)
                .find(|&s| on_edge(s, t_wing, u));
            let Some(a_t) = a_t else { continue };
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(u);
            rw.remove_vertex(w);
            rw.add_mult(a_t, v, 1);
            rw.add_mult(t_wing, v, 1);
            rw.add_mult(x, i, 1);
            rw.add_mult(x, j, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                    return Ok(Some(ap));
                }
            }
        }
    }
    Ok(None)
}

/// s = 4: every wing-central edge attended; the wings' fifth edges land
/// next to attachments on a common central, and the ten stranded ends are
/// rewired in one move.
fn sh4(g: &Multigraph, d: &ConfigMatch) -> Result<Option<Applied>, EngineError> {
    let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
    let sv = s_vertices(g, d);
    if sv.len() != 4 {
        return Ok(None);
    }
    let on = |wing: Vertex, central: Vertex| -> Option<Vertex> {
        sv.iter()
            .map(|&(x, _)| x)
            .find(|&x| g.adjacent(x, wing) && g.adjacent(x, central))
    };
    for (dd, ee) in [(c1, c2), (c2, c1)] {
        let (Some(a), Some(c), Some(f), Some(h)) =
            (on(w1, dd), on(w1, ee), on(w2, dd), on(w2, ee))
        else {
            continue;
        };
        let fifth = |wing: Vertex| -> Option<Vertex> {
            g.incidences(wing)
                .into_iter()
                .map(|(t, _)| t)
                .find(|&t| ![c1, c2, w1, w2, a, c, f, h].contains(&t))
        };
        let (Some(zb), Some(zg)) = (fifth(w1), fifth(w2)) else {
            continue;
        };
        // Both fifth edges triangulate through the ee-side attachments.
        if g.adjacent(zb, c) && g.adjacent(zg, h) {
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(w1);
            rw.remove_vertex(w2);
            rw.add_mult(zb, ee, 1);
            rw.add_mult(zg, ee, 1);
            rw.add_mult(c, dd, 1);
            rw.add_mult(h, dd, 1);
            rw.add_mult(a, f, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &d.map, out) {
                    return Ok(Some(ap));
                }
            }
        }
    }
    Ok(None)
}

/// A9: the 6-wheel with a pendant triangle on every rim vertex.
fn try_w6(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    for w in find_wheels(g, 5) {
        let hub = w.map[0];
        let rim = [w.map[1], w.map[2], w.map[3], w.map[4], w.map[5]];
        let block = w.map.clone();
        let pends: Vec<Option<(Vertex, Vertex, bool)>> =
            rim.iter().map(|&r| pendant_pair(g, r, &block)).collect();
        if pends.iter().any(|p| p.is_none()) {
            continue;
        }
        let pends: Vec<(Vertex, Vertex, bool)> = pends.into_iter().map(|p| p.unwrap()).collect();
        let mut ports: Vec<Vertex> = pends.iter().flat_map(|&(x, y, _)| [x, y]).collect();
        ports.sort_unstable();
        ports.dedup();
        if ports.len() != 10 {
            continue;
        }
        let aloof: Vec<(Vertex, Vertex)> = pends
            .iter()
            .filter(|&&(_, _, a)| a)
            .map(|&(x, y, _)| (x, y))
            .collect();
        let mut whole = vec![hub];
        whole.extend(rim);
        if aloof.len() < 5 {
            // Double the non-aloof pairs, regroup the aloof ports onto
            // fresh vertices.
            let mut rw = Rewriter::new(g);
            for &x in &whole {
                rw.remove_vertex(x);
            }
            for &(x, y, a) in &pends {
                if !a {
                    rw.add_mult(x, y, 1);
                }
            }
            let groups: Vec<Vec<(Vertex, Vertex)>> = match aloof.len() {
                0 => vec![],
                1 | 2 => vec![aloof.clone()],
                3 => vec![aloof[..1].to_vec(), aloof[1..].to_vec()],
                _ => vec![aloof[..2].to_vec(), aloof[2..].to_vec()],
            };
            for grp in groups {
                let n1 = rw.new_vertex();
                let n2 = rw.new_vertex();
                let link = if grp.len() == 1 { 3 } else { 1 };
                rw.add_mult(n1, n2, link);
                for &(x, y) in &grp {
                    rw.set_zero(x, y);
                    for p in [x, y] {
                        rw.add_mult(n1, p, 1);
                        rw.add_mult(n2, p, 1);
                    }
                }
            }
            if let Some(out) = rw.finish().graph() {
                if let Some(ap) = commit(g, RuleId::SimpleSh, &w.map, out) {
                    return Ok(Some(ap));
                }
            }
        } else {
            // All aloof: two A3 blocks cover the ten ports (each block: a
            // doubled fresh pair in a triangle with one port, plus two
            // re-created pendant pairs).
            for lead in 0..5usize {
                let lead_pair = pends[lead];
                let rest: Vec<(Vertex, Vertex)> = (0..5)
                    .filter(|&i| i != lead)
                    .map(|i| (pends[i].0, pends[i].1))
                    .collect();
                let mut rw = Rewriter::new(g);
                for &x in &whole {
                    rw.remove_vertex(x);
                }
                rw.set_zero(lead_pair.0, lead_pair.1);
                for (bi, &c_port) in [lead_pair.0, lead_pair.1].iter().enumerate() {
                    let n1 = rw.new_vertex();
                    let n2 = rw.new_vertex();
                    rw.add_mult(n1, n2, 2);
                    rw.add_mult(n1, c_port, 1);
                    rw.add_mult(n2, c_port, 1);
                    for k in 0..2 {
                        let (x, y) = rest[2 * bi + k];
                        let host = if k == 0 { n1 } else { n2 };
                        rw.add_mult(host, x, 1);
                        rw.add_mult(host, y, 1);
                    }
                }
                if let Some(out) = rw.finish().graph() {
                    if let Some(ap) = commit(g, RuleId::SimpleSh, &w.map, out) {
                        return Ok(Some(ap));
                    }
                }
            }
        }
    }
    Ok(None)
}
