//! The 5-wheel reduction. With clique number 3 a vertex adjacent to more
//! than two vertices of a diamond hubs a W5; the hub's fifth edge is
//! either a double into the rim or reaches a new vertex in a triangle with
//! the rim, and in every case one of a small family of Z/X contractions
//! around the wheel goes through.

use alloc::format;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Vertex};
use crate::patterns::find_wheels;
use crate::reduce::zx::first_valid_quad;
use crate::reduce::{commit, Applied, EngineError, RuleId};

pub(crate) fn try_w5(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    let wheels = find_wheels(g, 4);
    if wheels.is_empty() {
        return Ok(None);
    }
    for w in &wheels {
        let hub = w.map[0];
        let rim = [w.map[1], w.map[2], w.map[3], w.map[4]];
        let mut cands: Vec<((Vertex, Vertex), (Vertex, Vertex))> = Vec::new();
        // Doubled spoke: X on the diamond around it.
        for i in 0..4 {
            if g.mult(hub, rim[i]) >= 2 {
                let prev = rim[(i + 3) % 4];
                let next = rim[(i + 1) % 4];
                cands.push(((prev, rim[i]), (hub, next)));
                cands.push(((next, rim[i]), (hub, prev)));
            }
        }
        // Fifth edge to an outside vertex u adjacent to a rim vertex.
        for (u, _) in g.incidences(hub) {
            if rim.contains(&u) {
                continue;
            }
            for j in 0..4 {
                if !g.adjacent(u, rim[j]) {
                    continue;
                }
                for side in [(j + 1) % 4, (j + 3) % 4] {
                    cands.push(((u, hub), (rim[j], rim[side])));
                    cands.push(((u, rim[j]), (hub, rim[side])));
                }
                // t-variant: a further vertex seeing both u and the rim
                // vertex gives the diamond {t, u, hub, rim_j}.
                for t in g.common_neighbors(u, rim[j]) {
                    if t == hub || rim.contains(&t) {
                        continue;
                    }
                    cands.push(((t, u), (rim[j], hub)));
                    cands.push(((t, rim[j]), (u, hub)));
                }
            }
        }
        if let Some((out, touched)) = first_valid_quad(g, cands) {
            if let Some(a) = commit(g, RuleId::W5, &touched, out) {
                return Ok(Some(a));
            }
        }
    }
    Err(EngineError::Inconsistent {
        rule: RuleId::W5,
        detail: format!("{} W5 matches, none reduced", wheels.len()),
    })
}
