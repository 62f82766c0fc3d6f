//! Diamonds carrying double edges, once only doubles remain: the aloof
//! A3 triangle, the two three-double shapes, the two-double shapes
//! (incident, parallel, and the atom-like one), and the one-double case
//! split.

use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Triangle, Vertex};
use crate::patterns::{detect_atoms, find_induced_diamonds, PatternKind};
use crate::reduce::rewriter::Rewriter;
use crate::reduce::zx::first_valid_quad;
use crate::reduce::{commit, Applied, EngineError, RuleId};

/// The spec'd operation covering every double-edge diamond shape; returns
/// the reduced graph with the sub-rule that fired.
pub fn double_diamond_reduce(
    g: &Multigraph,
) -> Result<Option<(Multigraph, RuleId)>, EngineError> {
    if let Some(a) = try_dbl(g)? {
        return Ok(Some((a.result, a.rule)));
    }
    Ok(None)
}

/// Pendant pair of `q` outside `atom`: its two remaining single edges,
/// joined, plus whether that pendant triangle is aloof.
fn pendant_pair(
    g: &Multigraph,
    q: Vertex,
    atom: &[Vertex],
) -> Option<(Vertex, Vertex, bool)> {
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
    let aloof = g
        .m_of_triangle(Triangle::new(q, x, y))
        .ok()?
        .is_aloof();
    Some((x, y, aloof))
}

/// Aloof triangle with one double edge (A3): if one of the two pendant
/// triangles is not aloof, delete the doubled pair; the degree-2 vertex
/// adopts one pendant pair and the non-aloof side's pair edge doubles.
pub(crate) fn try_pendant_a3(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    for m in detect_atoms(g) {
        if m.kind != PatternKind::A3 {
            continue;
        }
        let (r, s, t) = (m.map[0], m.map[1], m.map[2]);
        let tri = Triangle::new(r, s, t);
        match g.m_of_triangle(tri) {
            Ok(c) if c.is_aloof() => {}
            _ => continue,
        }
        let (Some(ps), Some(pt)) = (pendant_pair(g, s, &m.map), pendant_pair(g, t, &m.map))
        else {
            continue;
        };
        // (doubled side, adopted side): the doubled side must be unsafe.
        for ((dx, dy, daloof), (ax, ay, _)) in [(ps, pt), (pt, ps)] {
            if daloof {
                continue;
            }
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(s);
            rw.remove_vertex(t);
            rw.add_mult(dx, dy, 1);
            rw.add_mult(r, ax, 1);
            rw.add_mult(r, ay, 1);
            if let Some(out) = rw.finish().graph() {
                if let Some(a) = commit(g, RuleId::Pendant, &m.map, out) {
                    return Ok(Some(a));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn try_dbl(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    if g.max_multiplicity() != 2 {
        return Ok(None);
    }
    let diamonds = find_induced_diamonds(g);
    // Three doubles first, then two, then one, matching the narrative.
    for want in [3usize, 2, 1] {
        for d in &diamonds {
            let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
            let pattern = [
                (c1, c2),
                (w1, c1),
                (w1, c2),
                (w2, c1),
                (w2, c2),
            ];
            let doubles: Vec<(Vertex, Vertex)> = pattern
                .iter()
                .copied()
                .filter(|&(a, b)| g.mult(a, b) >= 2)
                .collect();
            if doubles.len() != want {
                continue;
            }
            let rule = match want {
                3 => RuleId::Dbl3,
                2 => RuleId::Dbl2,
                _ => RuleId::Dbl1,
            };
            let a = match want {
                3 => dbl3(g, c1, c2, w1, w2)?,
                2 => dbl2(g, c1, c2, w1, w2, &doubles)?,
                _ => dbl1(g, c1, c2, w1, w2, doubles[0])?,
            };
            if let Some(result) = a {
                if let Some(applied) = commit(g, rule, &d.map, result) {
                    return Ok(Some(applied));
                }
            }
        }
    }
    Ok(None)
}

fn dbl3(
    g: &Multigraph,
    c1: Vertex,
    c2: Vertex,
    w1: Vertex,
    w2: Vertex,
) -> Result<Option<Multigraph>, EngineError> {
    let quad = [c1, c2, w1, w2];
    if g.mult(c1, c2) >= 2 {
        // A8: contract wings with centrals; only the loop-free pairing.
        for pairs in [((w1, c1), (c2, w2)), ((w1, c2), (c1, w2))] {
            if let Some((out, _)) = first_valid_quad(g, [pairs]) {
                return Ok(Some(out));
            }
        }
        // No shared neighbour: both wings carry pendant triangles.
        let (Some(p1), Some(p2)) = (pendant_pair(g, w1, &quad), pendant_pair(g, w2, &quad))
        else {
            return Ok(None);
        };
        let mut rw = Rewriter::new(g);
        for &x in &quad {
            rw.remove_vertex(x);
        }
        let sides = [p1, p2];
        let aloof: Vec<&(Vertex, Vertex, bool)> =
            sides.iter().filter(|&&(_, _, a)| a).collect();
        for &(x, y, a) in &sides {
            if !a {
                rw.add_mult(x, y, 1);
            }
        }
        if !aloof.is_empty() {
            let n1 = rw.new_vertex();
            let n2 = rw.new_vertex();
            let link = if aloof.len() == 1 { 3 } else { 1 };
            rw.add_mult(n1, n2, link);
            for &&(x, y, _) in &aloof {
                rw.set_zero(x, y);
                for p in [x, y] {
                    rw.add_mult(n1, p, 1);
                    rw.add_mult(n2, p, 1);
                }
            }
        }
        return Ok(rw.finish().graph());
    }
    // Right shape: three doubled wing-central edges around a hub central.
    // Identify the hub (the central in two doubles) and the doubly-attached
    // wing.
    let hub = if g.mult(w1, c1) >= 2 && g.mult(w2, c1) >= 2 {
        c1
    } else if g.mult(w1, c2) >= 2 && g.mult(w2, c2) >= 2 {
        c2
    } else {
        return Ok(None);
    };
    let other_c = if hub == c1 { c2 } else { c1 };
    let heavy_wing = if g.mult(w1, other_c) >= 2 {
        w1
    } else if g.mult(w2, other_c) >= 2 {
        w2
    } else {
        return Ok(None);
    };
    // heavy_wing's fifth edge reaches z, in a triangle with other_c.
    let z = g
        .incidences(heavy_wing)
        .into_iter()
        .map(|(w, _)| w)
        .find(|&w| w != hub && w != other_c);
    let Some(z) = z else { return Ok(None) };
    if !g.adjacent(z, other_c) {
        return Ok(None);
    }
    let light_wing = if heavy_wing == w1 { w2 } else { w1 };
    let group = [hub, other_c, heavy_wing, z, light_wing];
    let mut rw = Rewriter::new(g);
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
    Ok(rw.finish().graph())
}

fn dbl2(
    g: &Multigraph,
    c1: Vertex,
    c2: Vertex,
    w1: Vertex,
    w2: Vertex,
    doubles: &[(Vertex, Vertex)],
) -> Result<Option<Multigraph>, EngineError> {
    let central_doubled = doubles.iter().any(|&(a, b)| (a, b) == (c1, c2));
    if central_doubled {
        // Incident pair: central plus one wing-central, sharing a central
        // vertex. The figure's two deduced configurations both reduce.
        let (wd, cd) = doubles
            .iter()
            .copied()
            .find(|&(a, b)| (a, b) != (c1, c2))
            .expect("two doubles");
        let shared = if cd == c1 || cd == c2 { cd } else { wd };
        let wing = if shared == cd { wd } else { cd };
        let v = if shared == c1 { c2 } else { c1 }; // the other central
        let other_wing = if wing == w1 { w2 } else { w1 };
        // v's fifth edge d.
        let d = g
            .incidences(v)
            .into_iter()
            .map(|(w, _)| w)
            .find(|&w| w != shared && w != w1 && w != w2);
        let Some(d) = d else { return Ok(None) };
        if g.adjacent(d, other_wing) {
            // Config A: delete the two full vertices, double wing-to-other
            // wing, and join d across.
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(v);
            rw.remove_vertex(shared);
            rw.add_mult(wing, other_wing, 2);
            rw.add_mult(wing, d, 1);
            return Ok(rw.finish().graph());
        }
        if g.adjacent(d, wing) {
            // Config B: the bottom configuration; its reduction is the
            // plain Z on the diamond {b, wing, d, v} once b (wing's fifth
            // supporting vertex) exists.
            for b in g.common_neighbors(wing, d) {
                if [c1, c2, w1, w2, v].contains(&b) {
                    continue;
                }
                let cands = [((b, d), (wing, v)), ((b, wing), (d, v))];
                if let Some((out, _)) = first_valid_quad(g, cands) {
                    return Ok(Some(out));
                }
                // A7-style insertion after deleting the four full vertices.
                let mut rw = Rewriter::new(g);
                for t in [shared, v, wing, d] {
                    rw.remove_vertex(t);
                }
                let n1 = rw.new_vertex();
                let n2 = rw.new_vertex();
                rw.add_mult(n1, n2, 3);
                for t in [b, other_wing] {
                    rw.add_mult(n1, t, 1);
                    rw.add_mult(n2, t, 1);
                }
                if let Some(out) = rw.finish().graph() {
                    return Ok(Some(out));
                }
            }
        }
        return Ok(None);
    }
    // Two wing-central doubles.
    let share_central = {
        let (a, b) = (doubles[0], doubles[1]);
        let cs = [a.0, a.1, b.0, b.1];
        [c1, c2]
            .iter()
            .copied()
            .find(|&c| cs.iter().filter(|&&x| x == c).count() == 2)
    };
    if let Some(hub) = share_central {
        // Atom-like shape: both doubles into one central.
        return dbl2_atomdoub(g, hub, if hub == c1 { c2 } else { c1 }, w1, w2);
    }
    // Parallel doubles (w1-c_a and w2-c_b disjoint).
    let cands = [((w1, c1), (c2, w2)), ((w1, c2), (c1, w2))];
    if let Some((out, _)) = first_valid_quad(g, cands) {
        return Ok(Some(out));
    }
    // Derived repair: delete the two degree-4 centrals, double the wing
    // pair and wire the fifth-edge witnesses across.
    let fifth = |v: Vertex| -> Option<Vertex> {
        g.incidences(v)
            .into_iter()
            .map(|(w, _)| w)
            .find(|&w| ![c1, c2, w1, w2].contains(&w))
    };
    let (Some(a), Some(b)) = (fifth(c1), fifth(c2)) else {
        return Ok(None);
    };
    for (to_w1, to_w2) in [(a, b), (b, a)] {
        let mut rw = Rewriter::new(g);
        rw.remove_vertex(c1);
        rw.remove_vertex(c2);
        rw.add_mult(w1, w2, 2);
        rw.add_mult(w1, to_w1, 1);
        rw.add_mult(w2, to_w2, 1);
        if let Some(out) = rw.finish().graph() {
            if out.is_quintic() && out.has_triangle_property() {
                return Ok(Some(out));
            }
        }
    }
    // S2-style fallback: one wing ends up full; delete the three full
    // vertices, merge the other wing with one witness, quadruple-pair the
    // other witness.
    for (full_wing, lean_wing) in [(w1, w2), (w2, w1)] {
        if g.incidences(full_wing).iter().map(|&(_, k)| k as usize).sum::<usize>() != 5 {
            continue;
        }
        let (Some(a), Some(b)) = (fifth(c1), fifth(c2)) else {
            continue;
        };
        for (merge_with, a4_on) in [(a, b), (b, a)] {
            if g.adjacent(lean_wing, merge_with) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            for t in [c1, c2, full_wing] {
                rw.remove_vertex(t);
            }
            rw.merge(lean_wing, merge_with);
            let n1 = rw.new_vertex();
            let n2 = rw.new_vertex();
            rw.add_mult(n1, n2, 4);
            rw.add_mult(a4_on, n1, 1);
            rw.add_mult(a4_on, n2, 1);
            if let Some(out) = rw.finish().graph() {
                return Ok(Some(out));
            }
        }
    }
    Ok(None)
}

/// The two-doubles-into-one-central shape and its five figure rewrites.
fn dbl2_atomdoub(
    g: &Multigraph,
    hub: Vertex,
    v: Vertex,
    w1: Vertex,
    w2: Vertex,
) -> Result<Option<Multigraph>, EngineError> {
    let quad = [hub, v, w1, w2];
    let pends: Vec<Option<(Vertex, Vertex, bool)>> = [w1, v, w2]
        .iter()
        .map(|&x| pendant_pair(g, x, &quad))
        .collect();
    if let (Some(pu), Some(pv), Some(pw)) = (pends[0], pends[1], pends[2]) {
        let sides = [(w1, pu), (v, pv), (w2, pw)];
        // A disjoint simple aloof pendant lets its pair absorb into the
        // other two triangles.
        for t_idx in 0..3 {
            let (_, (tx, ty, taloof)) = sides[t_idx];
            if !taloof {
                continue;
            }
            let others: Vec<(Vertex, Vertex)> = (0..3)
                .filter(|&i| i != t_idx)
                .map(|i| (sides[i].1 .0, sides[i].1 .1))
                .collect();
            let mut rw = Rewriter::new(g);
            for &x in &quad {
                rw.remove_vertex(x);
            }
            rw.set_zero(tx, ty);
            rw.add_mult(tx, others[0].0, 1);
            rw.add_mult(tx, others[0].1, 1);
            rw.add_mult(ty, others[1].0, 1);
            rw.add_mult(ty, others[1].1, 1);
            if let Some(out) = rw.finish().graph() {
                if out.is_quintic() && out.has_triangle_property() {
                    return Ok(Some(out));
                }
            }
        }
        // None aloof: delete the configuration, double every pair edge.
        if sides.iter().all(|&(_, (_, _, a))| !a) {
            let mut rw = Rewriter::new(g);
            for &x in &quad {
                rw.remove_vertex(x);
            }
            for &(_, (x, y, _)) in &sides {
                rw.add_mult(x, y, 1);
            }
            if let Some(out) = rw.finish().graph() {
                return Ok(Some(out));
            }
        }
    }
    // Shared structure around a wing (figure's right-hand shapes),
    // normalized so the analysed wing is `e`.
    for (e, c) in [(w2, w1), (w1, w2)] {
        let c_ext: Vec<Vertex> = g
            .incidences(c)
            .into_iter()
            .map(|(w, _)| w)
            .filter(|&w| !quad.contains(&w))
            .collect();
        let e_ext: Vec<Vertex> = g
            .incidences(e)
            .into_iter()
            .map(|(w, _)| w)
            .filter(|&w| !quad.contains(&w))
            .collect();
        let shared: Vec<Vertex> = c_ext
            .iter()
            .copied()
            .filter(|w| e_ext.contains(w))
            .collect();
        if shared.len() == 2 {
            // Structure 4: two shared outside vertices h, i.
            let i = shared[1];
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(hub);
            rw.remove_vertex(e);
            rw.add_mult(c, v, 1);
            rw.add_mult(c, shared[0], 1);
            rw.add_mult(v, i, 1);
            if let Some(out) = rw.finish().graph() {
                if out.is_quintic() && out.has_triangle_property() {
                    return Ok(Some(out));
                }
            }
        }
        if shared.len() == 1 {
            let i = shared[0];
            // Structure 3: c's pendant {c, h, i} with e ~ i, j and i ~ j.
            let h = c_ext.iter().copied().find(|&x| x != i);
            let j = e_ext.iter().copied().find(|&x| x != i);
            if let (Some(h), Some(j)) = (h, j) {
                if g.adjacent(h, i) && g.adjacent(i, j) {
                    let mut rw = Rewriter::new(g);
                    rw.remove_vertex(hub);
                    rw.remove_vertex(e);
                    rw.set_zero(i, j);
                    rw.add_mult(c, i, 1);
                    rw.add_mult(c, j, 1);
                    rw.add_mult(v, i, 1);
                    rw.add_mult(v, j, 1);
                    if let Some(out) = rw.finish().graph() {
                        if out.is_quintic() && out.has_triangle_property() {
                            return Ok(Some(out));
                        }
                    }
                }
            }
        }
        // Structure 5: e and v share a new vertex f1 with e's fifth e1 on
        // it.
        let v_ext: Vec<Vertex> = g
            .incidences(v)
            .into_iter()
            .map(|(w, _)| w)
            .filter(|&w| !quad.contains(&w))
            .collect();
        for &f1 in &e_ext {
            if !v_ext.contains(&f1) {
                continue;
            }
            let e1 = e_ext.iter().copied().find(|&x| x != f1);
            let Some(e1) = e1 else { continue };
            if !g.adjacent(e1, f1) {
                continue;
            }
            let mut rw = Rewriter::new(g);
            rw.remove_vertex(hub);
            rw.remove_vertex(e);
            rw.add_mult(c, v, 1);
            rw.add_mult(c, f1, 1);
            rw.add_mult(v, e1, 1);
            if let Some(out) = rw.finish().graph() {
                if out.is_quintic() && out.has_triangle_property() {
                    return Ok(Some(out));
                }
            }
        }
    }
    Ok(None)
}

fn dbl1(
    g: &Multigraph,
    c1: Vertex,
    c2: Vertex,
    w1: Vertex,
    w2: Vertex,
    double: (Vertex, Vertex),
) -> Result<Option<Multigraph>, EngineError> {
    if double == (c1, c2) {
        // Doubled central: the X-reduction goes through however the fifth
        // edges attach.
        let cands = [((w1, c1), (c2, w2)), ((w1, c2), (c1, w2))];
        if let Some((out, _)) = first_valid_quad(g, cands) {
            return Ok(Some(out));
        }
        return Ok(None);
    }
    // Doubled wing-central edge: name the roles of the figure.
    let (v, u) = if [c1, c2].contains(&double.0) {
        (double.1, double.0)
    } else {
        (double.0, double.1)
    };
    let w = if u == c1 { c2 } else { c1 };
    let x = if v == w1 { w2 } else { w1 };
    // y: second triangle of the u-x edge.
    let y = g
        .common_neighbors(u, x)
        .into_iter()
        .find(|&t| t != w && t != v);
    let quad = [u, v, w, x];
    // (a) vw in a second triangle.
    if let Some(e1) = g
        .common_neighbors(v, w)
        .into_iter()
        .find(|&t| t != u && t != x)
    {
        if let Some(e2) = g
            .incidences(v)
            .into_iter()
            .map(|(t, _)| t)
            .find(|&t| t != u && t != w && t != e1)
        {
            if let Some(y) = y {
                let mut rw = Rewriter::new(g);
                rw.remove_vertex(u);
                rw.remove_vertex(v);
                rw.add_mult(y, w, 1);
                rw.add_mult(x, e1, 1);
                rw.add_mult(w, e2, 1);
                if let Some(out) = rw.finish().graph() {
                    if out.is_quintic() && out.has_triangle_property() {
                        return Ok(Some(out));
                    }
                }
            }
        }
    }
    // v's pendant pair.
    let vp = pendant_pair(g, v, &quad);
    if let Some((e1, e2, alo)) = vp {
        if !alo {
            // (b)
            if let Some(y) = y {
                let mut rw = Rewriter::new(g);
                rw.remove_vertex(u);
                rw.remove_vertex(v);
                rw.add_mult(w, x, 1);
                rw.add_mult(w, y, 1);
                rw.add_mult(e1, e2, 1);
                if let Some(out) = rw.finish().graph() {
                    if out.is_quintic() && out.has_triangle_property() {
                        return Ok(Some(out));
                    }
                }
            }
        } else {
            // (c): wx in a second triangle and xy intact.
            if let Some(y) = y {
                if g.common_neighbors(w, x).iter().any(|&t| t != u && t != v) {
                    let mut rw = Rewriter::new(g);
                    rw.remove_vertex(u);
                    rw.remove_vertex(v);
                    rw.add_mult(w, x, 2);
                    rw.set_zero(x, y);
                    rw.add_mult(y, e1, 1);
                    rw.add_mult(y, e2, 1);
                    if let Some(out) = rw.finish().graph() {
                        if out.is_quintic() && out.has_triangle_property() {
                            return Ok(Some(out));
                        }
                    }
                    // (d) variants when xy resists.
                    if let Some(a_w) = g
                        .common_neighbors(w, x)
                        .into_iter()
                        .find(|&t| t != u && t != v)
                    {
                        for extra in [0u8, 1] {
                            let mut rw = Rewriter::new(g);
                            rw.remove_vertex(u);
                            rw.remove_vertex(w);
                            rw.add_mult(v, x, 1 + extra as i32);
                            rw.add_mult(v, y, 1);
                            rw.add_mult(v, a_w, 1);
                            if let Some(out) = rw.finish().graph() {
                                if out.is_quintic() && out.has_triangle_property() {
                                    return Ok(Some(out));
                                }
                            }
                        }
                    }
                }
            }
            // (e): w's pendant not aloof.
            if let Some((f1, f2, walo)) = pendant_pair(g, w, &quad) {
                if !walo {
                    if let Some(y) = y {
                        let mut rw = Rewriter::new(g);
                        for t in [u, v, w] {
                            rw.remove_vertex(t);
                        }
                        let j = rw.new_vertex();
                        rw.add_mult(j, y, 1);
                        rw.add_mult(j, e1, 1);
                        rw.add_mult(j, e2, 1);
                        rw.add_mult(j, x, 2);
                        rw.add_mult(f1, f2, 1);
                        if let Some(out) = rw.finish().graph() {
                            if out.is_quintic() && out.has_triangle_property() {
                                return Ok(Some(out));
                            }
                        }
                    }
                } else {
                    // (f): x doubled to a single outside anchor.
                    let x_ext: Vec<(Vertex, u8)> = g
                        .incidences(x)
                        .into_iter()
                        .filter(|&(t, _)| !quad.contains(&t) && Some(t) != y)
                        .collect();
                    if let (1, Some(y)) = (x_ext.len(), y) {
                        let (anchor, k) = x_ext[0];
                        if k == 2 {
                            let mut rw = Rewriter::new(g);
                            for t in [u, v, w, x] {
                                rw.remove_vertex(t);
                            }
                            rw.set_zero(f1, f2);
                            rw.add_mult(anchor, y, 1);
                            rw.add_mult(anchor, f1, 1);
                            rw.add_mult(y, f1, 1);
                            rw.add_mult(e1, f2, 1);
                            rw.add_mult(e2, f2, 1);
                            if let Some(out) = rw.finish().graph() {
                                if out.is_quintic() && out.has_triangle_property() {
                                    return Ok(Some(out));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
