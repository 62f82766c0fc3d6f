//! Detection of every named configuration the case analysis dispatches on
//! (diamonds, cliques, wheels, the atom catalogue A1..A11), the `s_H`
//! parameter, and terminal classification: the four small base graphs and
//! the foundational family (line graph of a cubic graph with a doubled
//! perfect matching, recognised by a Krausz partition).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::canonical_form;
use crate::construct;
use crate::mgraph::{GraphError, Multigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatternKind {
    Diamond,
    K4,
    K5,
    K6,
    W5,
    W6,
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    CutvTwoThree,
    CutvQuadruple,
    PendantTriangle,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternKind::Diamond => "diamond",
            PatternKind::K4 => "K4",
            PatternKind::K5 => "K5",
            PatternKind::K6 => "K6",
            PatternKind::W5 => "W5",
            PatternKind::W6 => "W6",
            PatternKind::A1 => "A1",
            PatternKind::A2 => "A2",
            PatternKind::A3 => "A3",
            PatternKind::A4 => "A4",
            PatternKind::A5 => "A5",
            PatternKind::A6 => "A6",
            PatternKind::A7 => "A7",
            PatternKind::A8 => "A8",
            PatternKind::A9 => "A9",
            PatternKind::A10 => "A10",
            PatternKind::A11 => "A11",
            PatternKind::CutvTwoThree => "cutv-2-3",
            PatternKind::CutvQuadruple => "cutv-quadruple",
            PatternKind::PendantTriangle => "pendant-triangle",
        };
        f.write_str(s)
    }
}

/// An embedding of a named pattern. `map` is role-ordered; the role layout
/// per kind is:
///
/// - `Diamond`: `[c1, c2, w1, w2]` — central edge `c1c2`, wings sorted.
/// - `K4`/`K5`/`K6`/`A1`/`A2`: sorted vertex list.
/// - `W5`/`W6`/`A9`: `[hub, r0, r1, ..]` rim in cycle order.
/// - `A3`: `[r, s, t]` — double edge `st`, `r` the degree-2 role.
/// - `A4`: `[apex, p, q]` — quadruple pair `pq`.
/// - `A5`: `[q1, q2, p1, p2]` — triple pair `p1p2`.
/// - `A6`: `[u1, u2, v1, v2, v3, v4]` — `u1u2` the `t_e = 4` edge.
/// - `A7`: `[u1, u2, p, q]` — triple pair `pq`, degree-2 roles `u1, u2`.
/// - `A8`: `[c1, c2, w1, w2]` — doubled central `c1c2`, `w1 ~ c2` and
///   `w2 ~ c1` doubled.
/// - `A10`/`A11`: `[cut, b, c, d]` per the figure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigMatch {
    pub kind: PatternKind,
    pub map: Vec<Vertex>,
    /// Role-index pairs of pattern edges carrying multiplicity >= 2 in the
    /// host graph.
    pub doubled: Vec<(u8, u8)>,
}

impl ConfigMatch {
    pub fn new(kind: PatternKind, map: Vec<Vertex>) -> Self {
        ConfigMatch {
            kind,
            map,
            doubled: Vec::new(),
        }
    }

    /// The matched vertices as a sorted set.
    pub fn verts(&self) -> Vec<Vertex> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.map.contains(&v)
    }

    /// In-match degree of each role (sum of multiplicities to other match
    /// vertices), used to assert the atom table's degree profiles.
    pub fn in_match_degrees(&self, g: &Multigraph) -> Vec<usize> {
        self.map
            .iter()
            .map(|&v| {
                self.map
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| g.mult(u, v) as usize)
                    .sum()
            })
            .collect()
    }

    fn with_doubles(mut self, g: &Multigraph) -> Self {
        let m = &self.map;
        let mut d = Vec::new();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if g.mult(m[i], m[j]) >= 2 {
                    d.push((i as u8, j as u8));
                }
            }
        }
        self.doubled = d;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternError {
    UnsupportedKind(PatternKind),
    Graph(GraphError),
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::UnsupportedKind(k) => write!(f, "s_H is not defined for {k}"),
            PatternError::Graph(e) => write!(f, "{e}"),
        }
    }
}

/// All diamond embeddings in the underlying simple graph: a central edge
/// plus two common neighbours as wings, one match per (vertex set, central
/// edge) with wings unordered. Wing adjacency is allowed here (the match
/// then sits inside a K4); [`find_induced_diamonds`] filters those out, and
/// the Z-reduction rejects them as malformed.
pub fn find_diamonds(g: &Multigraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    let n = g.order();
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            if !g.adjacent(c1, c2) {
                continue;
            }
            let common = g.common_neighbors(c1, c2);
            for (i, &w1) in common.iter().enumerate() {
                for &w2 in &common[i + 1..] {
                    out.push(
                        ConfigMatch::new(PatternKind::Diamond, vec![c1, c2, w1, w2])
                            .with_doubles(g),
                    );
                }
            }
        }
    }
    out
}

/// Diamonds whose four vertices induce exactly the diamond (the wings are
/// non-adjacent). Only these are Z-reduction targets.
pub fn find_induced_diamonds(g: &Multigraph) -> Vec<ConfigMatch> {
    find_diamonds(g)
        .into_iter()
        .filter(|d| !g.adjacent(d.map[2], d.map[3]))
        .collect()
}

/// All k-cliques of the underlying simple graph, k in {4, 5, 6}.
pub fn find_cliques(g: &Multigraph, k: usize) -> Vec<ConfigMatch> {
    let kind = match k {
        4 => PatternKind::K4,
        5 => PatternKind::K5,
        6 => PatternKind::K6,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = Vec::new();
    fn extend(
        g: &Multigraph,
        k: usize,
        start: Vertex,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..g.order() {
            if cur.iter().all(|&u| g.adjacent(u, v)) {
                cur.push(v);
                extend(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut sets = Vec::new();
    extend(g, k, 0, &mut cur, &mut sets);
    for s in sets {
        out.push(ConfigMatch::new(kind, s).with_doubles(g));
    }
    out
}

/// Clique number of the underlying simple graph, capped at 6 (a quintic
/// graph cannot exceed it).
pub fn clique_number(g: &Multigraph) -> usize {
    for k in (4..=6).rev() {
        if !find_cliques(g, k).is_empty() {
            return k;
        }
    }
    if !g.triangles().is_empty() {
        3
    } else if !g.edges().is_empty() {
        2
    } else {
        usize::from(g.order() > 0)
    }
}

/// Wheels: hub plus a rim cycle of length 4 (W5) or 5 (W6), deduplicated by
/// hub and rim set.
pub fn find_wheels(g: &Multigraph, rim: usize) -> Vec<ConfigMatch> {
    let kind = match rim {
        4 => PatternKind::W5,
        5 => PatternKind::W6,
        _ => return Vec::new(),
    };
    let mut out: Vec<ConfigMatch> = Vec::new();
    for hub in 0..g.order() {
        let nb = g.neighbors(hub);
        if nb.len() < rim {
            continue;
        }
        let mut sets = Vec::new();
        subsets(&nb, rim, &mut Vec::new(), 0, &mut sets);
        for set in sets {
            if let Some(cycle) = rim_cycle(g, &set) {
                let mut map = vec![hub];
                map.extend(cycle);
                out.push(ConfigMatch::new(kind, map).with_doubles(g));
            }
        }
    }
    out
}

fn subsets(
    items: &[Vertex],
    k: usize,
    cur: &mut Vec<Vertex>,
    start: usize,
    out: &mut Vec<Vec<Vertex>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        subsets(items, k, cur, i + 1, out);
        cur.pop();
    }
}

/// A Hamiltonian cycle through `set`, canonically oriented (smallest vertex
/// first, then the smaller neighbour), or None.
fn rim_cycle(g: &Multigraph, set: &[Vertex]) -> Option<Vec<Vertex>> {
    let k = set.len();
    let start = set[0];
    let rest: Vec<Vertex> = set[1..].to_vec();
    let mut perm: Vec<usize> = (0..rest.len()).collect();
    let mut best: Option<Vec<Vertex>> = None;
    permute(&mut perm, 0, &mut |p| {
        let cycle: Vec<Vertex> = core::iter::once(start)
            .chain(p.iter().map(|&i| rest[i]))
            .collect();
        let ok = (0..k).all(|i| g.adjacent(cycle[i], cycle[(i + 1) % k]));
        if ok {
            let canon = if cycle[1] <= cycle[k - 1] {
                cycle.clone()
            } else {
                let mut r = cycle.clone();
                r[1..].reverse();
                r
            };
            match &best {
                Some(b) if *b <= canon => {}
                _ => best = Some(canon),
            }
        }
    });
    best
}

fn permute(perm: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}

/// All matches of the atom catalogue A1..A11.
pub fn detect_atoms(g: &Multigraph) -> Vec<ConfigMatch> {
    let mut out = Vec::new();
    let n = g.order();

    // A1: simple triangles (a doubled edge makes it A3 instead).
    for t in g.triangles() {
        let [a, b, c] = t.verts;
        if g.mult(a, b) == 1 && g.mult(a, c) == 1 && g.mult(b, c) == 1 {
            out.push(ConfigMatch::new(PatternKind::A1, t.verts.to_vec()));
        }
    }
    // A2: simple K4s (one triple edge makes it A5).
    for m in find_cliques(g, 4) {
        let vs = &m.map;
        if (0..4).all(|i| (i + 1..4).all(|j| g.mult(vs[i], vs[j]) == 1)) {
            out.push(ConfigMatch::new(PatternKind::A2, m.map));
        }
    }
    // A3: triangle with exactly one double edge, other edges simple.
    for t in g.triangles() {
        let [a, b, c] = t.verts;
        let mults = [(a, b), (a, c), (b, c)].map(|(u, v)| g.mult(u, v));
        let doubles = mults.iter().filter(|&&m| m == 2).count();
        let others_ok = mults.iter().all(|&m| m == 1 || m == 2);
        if doubles == 1 && others_ok {
            let (s, t2, r) = if mults[0] == 2 {
                (a, b, c)
            } else if mults[1] == 2 {
                (a, c, b)
            } else {
                (b, c, a)
            };
            out.push(ConfigMatch::new(PatternKind::A3, vec![r, s, t2]).with_doubles(g));
        }
    }
    // A4: quadruple pair plus common apex.
    for (p, q, k) in g.edges() {
        if k == 4 {
            for apex in g.common_neighbors(p, q) {
                out.push(ConfigMatch::new(PatternKind::A4, vec![apex, p, q]).with_doubles(g));
            }
        }
    }
    // A5: K4 with exactly one triple edge, the rest simple.
    for m in find_cliques(g, 4) {
        let vs = &m.map;
        let mut triple = None;
        let mut ok = true;
        for i in 0..4 {
            for j in i + 1..4 {
                match g.mult(vs[i], vs[j]) {
                    1 => {}
                    3 if triple.is_none() => triple = Some((vs[i], vs[j])),
                    _ => ok = false,
                }
            }
        }
        if let (true, Some((p1, p2))) = (ok, triple) {
            let mut qs: Vec<Vertex> = vs.iter().copied().filter(|&v| v != p1 && v != p2).collect();
            qs.sort_unstable();
            out.push(
                ConfigMatch::new(PatternKind::A5, vec![qs[0], qs[1], p1, p2]).with_doubles(g),
            );
        }
    }
    // A6: K_{4,1,1} around an edge with four pairwise non-adjacent common
    // neighbours.
    for (u1, u2, _) in g.edges() {
        let common = g.common_neighbors(u1, u2);
        if common.len() == 4
            && common
                .iter()
                .enumerate()
                .all(|(i, &a)| common[i + 1..].iter().all(|&b| !g.adjacent(a, b)))
        {
            let mut map = vec![u1, u2];
            map.extend(common.iter().copied());
            out.push(ConfigMatch::new(PatternKind::A6, map).with_doubles(g));
        }
    }
    // A7: triple pair in a 4-cycle, degree-2 roles non-adjacent.
    for (p, q, k) in g.edges() {
        if k == 3 {
            let common = g.common_neighbors(p, q);
            for (i, &u1) in common.iter().enumerate() {
                for &u2 in &common[i + 1..] {
                    if !g.adjacent(u1, u2) {
                        out.push(
                            ConfigMatch::new(PatternKind::A7, vec![u1, u2, p, q]).with_doubles(g),
                        );
                    }
                }
            }
        }
    }
    // A8: diamond with doubled central edge and two opposite doubled
    // wing-central edges.
    for d in find_induced_diamonds(g) {
        let (c1, c2, w1, w2) = (d.map[0], d.map[1], d.map[2], d.map[3]);
        if g.mult(c1, c2) == 2 {
            for (wa, wb) in [(w1, w2), (w2, w1)] {
                if g.mult(wa, c2) == 2
                    && g.mult(wb, c1) == 2
                    && g.mult(wa, c1) == 1
                    && g.mult(wb, c2) == 1
                {
                    out.push(
                        ConfigMatch::new(PatternKind::A8, vec![c1, c2, wa, wb]).with_doubles(g),
                    );
                }
            }
        }
    }
    // A9: the 6-wheel with an induced rim (chords would put an edge in
    // more than two triangles, outside the atom's context).
    for m in find_wheels(g, 5) {
        let rim = &m.map[1..];
        let chordless = (0..5).all(|i| {
            (i + 1..5).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == 4);
                consecutive || !g.adjacent(rim[i], rim[j])
            })
        });
        if chordless {
            out.push(ConfigMatch::new(PatternKind::A9, m.map).with_doubles(g));
        }
    }
    // A10: vertex joined once to each of three mutually doubled vertices.
    for b in 0..n {
        for c in b + 1..n {
            for d in c + 1..n {
                if g.mult(b, c) == 2 && g.mult(b, d) == 2 && g.mult(c, d) == 2 {
                    for cut in 0..n {
                        if cut != b
                            && cut != c
                            && cut != d
                            && g.mult(cut, b) == 1
                            && g.mult(cut, c) == 1
                            && g.mult(cut, d) == 1
                        {
                            out.push(
                                ConfigMatch::new(PatternKind::A10, vec![cut, b, c, d])
                                    .with_doubles(g),
                            );
                        }
                    }
                }
            }
        }
    }
    // A11: cut ~ c single, cut ~ b double, b ~ c single, b ~ d double,
    // c ~ d triple.
    for b in 0..n {
        for c in 0..n {
            if b == c || g.mult(b, c) != 1 {
                continue;
            }
            for d in 0..n {
                if d == b || d == c || g.mult(b, d) != 2 || g.mult(c, d) != 3 {
                    continue;
                }
                for cut in 0..n {
                    if cut != b
                        && cut != c
                        && cut != d
                        && g.mult(cut, b) == 2
                        && g.mult(cut, c) == 1
                        && g.mult(cut, d) == 0
                    {
                        out.push(
                            ConfigMatch::new(PatternKind::A11, vec![cut, b, c, d]).with_doubles(g),
                        );
                    }
                }
            }
        }
    }
    debug_assert!(atom_profiles_hold(g, &out));
    out
}

/// The atom table's degree-profile contract: counts of in-match degrees
/// (5, 3, 2) per atom kind.
fn expected_profile(kind: PatternKind) -> Option<(usize, usize, usize)> {
    match kind {
        PatternKind::A1 => Some((0, 0, 3)),
        PatternKind::A2 => Some((0, 4, 0)),
        PatternKind::A3 => Some((0, 2, 1)),
        PatternKind::A4 => Some((2, 0, 1)),
        PatternKind::A7 => Some((2, 0, 2)),
        PatternKind::A10 => Some((3, 1, 0)),
        PatternKind::A11 => Some((3, 1, 0)),
        _ => None,
    }
}

fn atom_profiles_hold(g: &Multigraph, matches: &[ConfigMatch]) -> bool {
    for m in matches {
        if let Some((n5, n3, n2)) = expected_profile(m.kind) {
            let degs = m.in_match_degrees(g);
            let c5 = degs.iter().filter(|&&d| d == 5).count();
            let c3 = degs.iter().filter(|&&d| d == 3).count();
            let c2 = degs.iter().filter(|&&d| d == 2).count();
            if (c5, c3, c2) != (n5, n3, n2) {
                return false;
            }
        }
    }
    true
}

/// `s_H`: for a K4 match, the number of outside vertices adjacent to at
/// least two of its vertices; for a diamond match, outside vertices
/// adjacent to the two endpoints of some pattern edge.
pub fn s_of_config(g: &Multigraph, m: &ConfigMatch) -> Result<usize, PatternError> {
    match m.kind {
        PatternKind::K4 | PatternKind::A2 => {
            let vs = m.verts();
            let count = (0..g.order())
                .filter(|&x| !vs.contains(&x))
                .filter(|&x| vs.iter().filter(|&&h| g.adjacent(x, h)).count() >= 2)
                .count();
            Ok(count)
        }
        PatternKind::Diamond => {
            let (c1, c2, w1, w2) = (m.map[0], m.map[1], m.map[2], m.map[3]);
            let pattern_edges = [(c1, c2), (c1, w1), (c1, w2), (c2, w1), (c2, w2)];
            let vs = m.verts();
            let count = (0..g.order())
                .filter(|&x| !vs.contains(&x))
                .filter(|&x| {
                    pattern_edges
                        .iter()
                        .any(|&(a, b)| g.adjacent(x, a) && g.adjacent(x, b))
                })
                .count();
            Ok(count)
        }
        k => Err(PatternError::UnsupportedKind(k)),
    }
}

/// Terminal classification of a connected quintic triangle-property graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseClass {
    /// K4 with two opposite edges tripled.
    SmallBase4a,
    /// Doubled 4-cycle plus both diagonals.
    SmallBase4b,
    /// Doubled-triangle block and quadruple pair at a cut vertex.
    SmallBase6a,
    /// Double/triple block and quadruple pair at a cut vertex.
    SmallBase6b,
    /// Line graph of a cubic root with a doubled perfect matching.
    Foundational { root: Multigraph },
    NotTerminal,
}

impl BaseClass {
    pub fn is_terminal(&self) -> bool {
        !matches!(self, BaseClass::NotTerminal)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            BaseClass::SmallBase4a => "SmallBase-4a",
            BaseClass::SmallBase4b => "SmallBase-4b",
            BaseClass::SmallBase6a => "SmallBase-6a",
            BaseClass::SmallBase6b => "SmallBase-6b",
            BaseClass::Foundational { .. } => "Foundational",
            BaseClass::NotTerminal => "NotTerminal",
        }
    }
}

/// Krausz-style recognition restricted to cubic roots: partition the edges
/// of the simple 4-regular graph `h` into triangles with every vertex in
/// exactly two parts. Returns the parts if a partition exists.
pub fn krausz_triangle_partition(h: &Multigraph) -> Option<Vec<[Vertex; 3]>> {
    if !h.is_simple() || !h.is_regular(4) {
        return None;
    }
    let n = h.order();
    let tris: Vec<[Vertex; 3]> = h.triangles().into_iter().map(|t| t.verts).collect();
    let mut used_edge = alloc::collections::BTreeSet::new();
    let mut cover = vec![0usize; n];
    let mut parts: Vec<[Vertex; 3]> = Vec::new();

    fn go(
        h: &Multigraph,
        tris: &[[Vertex; 3]],
        used_edge: &mut alloc::collections::BTreeSet<(Vertex, Vertex)>,
        cover: &mut Vec<usize>,
        parts: &mut Vec<[Vertex; 3]>,
    ) -> bool {
        let v = match (0..h.order()).find(|&v| cover[v] < 2) {
            None => return used_edge.len() == h.size(),
            Some(v) => v,
        };
        for t in tris.iter().filter(|t| t.contains(&v)) {
            let edges = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])];
            if edges.iter().any(|e| used_edge.contains(e)) {
                continue;
            }
            if t.iter().any(|&u| cover[u] >= 2) {
                continue;
            }
            for e in edges {
                used_edge.insert(e);
            }
            for &u in t {
                cover[u] += 1;
            }
            parts.push(*t);
            if go(h, tris, used_edge, cover, parts) {
                return true;
            }
            parts.pop();
            for e in edges {
                used_edge.remove(&e);
            }
            for &u in t {
                cover[u] -= 1;
            }
        }
        false
    }

    if go(h, &tris, &mut used_edge, &mut cover, &mut parts) {
        Some(parts)
    } else {
        None
    }
}

/// Reconstructs the cubic root from a Krausz partition: one root vertex per
/// part, one root edge per vertex of `h` (joining its two parts). Fails if
/// two `h` vertices would induce the same root edge (the root would not be
/// simple).
fn root_from_partition(h: &Multigraph, parts: &[[Vertex; 3]]) -> Option<Multigraph> {
    let n = h.order();
    let mut membership: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, t) in parts.iter().enumerate() {
        for &v in t {
            membership[v].push(i);
        }
    }
    let mut root = Multigraph::empty(parts.len());
    for v in 0..n {
        if membership[v].len() != 2 {
            return None;
        }
        let (p, q) = (membership[v][0], membership[v][1]);
        if root.mult(p, q) != 0 {
            return None;
        }
        root.set_mult(p, q, 1).ok()?;
    }
    if root.is_regular(3) {
        Some(root)
    } else {
        None
    }
}

/// Foundational detection: every vertex incident to exactly one double edge
/// and nothing above multiplicity 2; stripping the doubles leaves a simple
/// 4-regular graph that is the line graph of a cubic root.
fn detect_foundational(g: &Multigraph) -> Option<Multigraph> {
    if g.max_multiplicity() != 2 {
        return None;
    }
    for v in 0..g.order() {
        let doubles = g
            .incidences(v)
            .into_iter()
            .filter(|&(_, k)| k == 2)
            .count();
        if doubles != 1 {
            return None;
        }
    }
    let mut h = g.clone();
    for (u, v, k) in g.edges() {
        if k == 2 {
            h.set_mult(u, v, 1).unwrap();
        }
    }
    let parts = krausz_triangle_partition(&h)?;
    root_from_partition(&h, &parts)
}

/// Classifies a connected quintic triangle-property graph as one of the
/// four small base graphs, a foundational graph (with its cubic root), or
/// not terminal.
pub fn classify_base(g: &Multigraph) -> Result<BaseClass, GraphError> {
    if !g.is_quintic() {
        return Err(GraphError::NotQuintic);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected(g.components().len()));
    }
    if !g.has_triangle_property() {
        return Err(GraphError::NotQuintic);
    }
    if g.order() == 4 || g.order() == 6 {
        let base = construct::base_graphs();
        let cert = canonical_form(g).cert;
        for (i, b) in base.iter().enumerate() {
            if b.order() == g.order() && canonical_form(b).cert == cert {
                return Ok(match i {
                    0 => BaseClass::SmallBase4a,
                    1 => BaseClass::SmallBase4b,
                    2 => BaseClass::SmallBase6a,
                    _ => BaseClass::SmallBase6b,
                });
            }
        }
    }
    if let Some(root) = detect_foundational(g) {
        return Ok(BaseClass::Foundational { root });
    }
    Ok(BaseClass::NotTerminal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::construct::{
        base_graphs, cube_graph, cubic_k4, find_perfect_matching, foundational_from_cubic,
        k34_biregular, line_graph, q_of_biregular, ring_of_five_k4s, sh3_obstruction_config,
        sh4_config, wheel5,
    };

    fn complete(n: usize) -> Multigraph {
        let mut g = Multigraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_mult(u, v, 1).unwrap();
            }
        }
        g
    }

    /// Brute-force diamond count: for every 4-subset, try each of the six
    /// (central pair, wing pair) splits and check the five pattern edges.
    fn brute_diamonds(g: &Multigraph) -> usize {
        let n = g.order();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let splits = [
                            ([a, b], [c, d]),
                            ([c, d], [a, b]),
                            ([a, c], [b, d]),
                            ([b, d], [a, c]),
                            ([a, d], [b, c]),
                            ([b, c], [a, d]),
                        ];
                        for (cen, wing) in splits {
                            if g.adjacent(cen[0], cen[1])
                                && wing.iter().all(|&w| {
                                    g.adjacent(w, cen[0]) && g.adjacent(w, cen[1])
                                })
                            {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn diamonds_in_k6_match_brute_force() {
        let g = complete(6);
        // Every 4-subset of K6 carries six diamond embeddings.
        assert_eq!(find_diamonds(&g).len(), brute_diamonds(&g));
        assert_eq!(find_diamonds(&g).len(), 15 * 6);
        // None of them is induced.
        assert!(find_induced_diamonds(&g).is_empty());
        // The wheel has genuine induced diamonds.
        let w = wheel5();
        assert_eq!(find_diamonds(&w).len(), brute_diamonds(&w));
        assert!(!find_induced_diamonds(&w).is_empty());
    }

    #[test]
    fn diamonds_in_q_graph_only_touch_blocks() {
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert_eq!(find_diamonds(&q).len(), brute_diamonds(&q));
        for d in find_diamonds(&q) {
            // Every diamond lies inside a single K4 block.
            assert!(d.map.iter().all(|&v| v / 4 == d.map[0] / 4));
        }
        let empty = Multigraph::empty(5);
        assert!(find_diamonds(&empty).is_empty());
    }

    #[test]
    fn cliques_examples() {
        assert_eq!(find_cliques(&complete(6), 6).len(), 1);
        let base = base_graphs();
        assert_eq!(find_cliques(&base[0], 4).len(), 1);
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert!(find_cliques(&q, 5).is_empty());
        assert_eq!(find_cliques(&q, 4).len(), 3);
        assert_eq!(clique_number(&complete(6)), 6);
        assert_eq!(clique_number(&q), 4);
    }

    #[test]
    fn wheels_examples() {
        let w = wheel5();
        let found = find_wheels(&w, 4);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].map[0], 0);
        // K6: every vertex hubs many W5s.
        assert!(!find_wheels(&complete(6), 4).is_empty());
        // Bipartite graphs carry no wheels.
        let mut b = Multigraph::empty(10);
        for u in 0..5 {
            for v in 5..10 {
                b.set_mult(u, v, 1).unwrap();
            }
        }
        assert!(find_wheels(&b, 4).is_empty());
        assert!(find_wheels(&b, 5).is_empty());
    }

    #[test]
    fn atoms_in_fixtures() {
        let base = base_graphs();
        // Fig 3 left: A10 and A4 share the cut vertex.
        let atoms = detect_atoms(&base[2]);
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A10));
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A4));
        // Fig 3 right: A11 and A4.
        let atoms = detect_atoms(&base[3]);
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A11));
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A4));

        // Q(K_{3,4}): A1 and A2 only.
        let q = q_of_biregular(&k34_biregular()).unwrap();
        let atoms = detect_atoms(&q);
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A1));
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A2));
        assert!(atoms
            .iter()
            .all(|m| matches!(m.kind, PatternKind::A1 | PatternKind::A2)));

        // K6: A1 and A2 present, nothing else (oracle for the W6 absence).
        let atoms = detect_atoms(&complete(6));
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A1));
        assert!(atoms.iter().any(|m| m.kind == PatternKind::A2));
        assert!(atoms
            .iter()
            .all(|m| matches!(m.kind, PatternKind::A1 | PatternKind::A2)));
    }

    #[test]
    fn atom_match_set_is_automorphism_closed() {
        let base = base_graphs();
        for g in &base {
            let perm: Vec<usize> = (0..g.order()).rev().collect();
            let h = g.relabel(&perm);
            let atoms_g: alloc::collections::BTreeSet<(PatternKind, Vec<Vertex>)> =
                detect_atoms(g)
                    .into_iter()
                    .map(|m| {
                        let mut vs: Vec<Vertex> = m.verts().iter().map(|&v| perm[v]).collect();
                        vs.sort_unstable();
                        (m.kind, vs)
                    })
                    .collect();
            let atoms_h: alloc::collections::BTreeSet<(PatternKind, Vec<Vertex>)> =
                detect_atoms(&h)
                    .into_iter()
                    .map(|m| (m.kind, m.verts()))
                    .collect();
            assert_eq!(atoms_g, atoms_h);
        }
    }

    #[test]
    fn s_of_config_examples() {
        let g = sh3_obstruction_config();
        let k4 = ConfigMatch::new(PatternKind::K4, vec![0, 1, 2, 3]);
        assert_eq!(s_of_config(&g, &k4).unwrap(), 3);

        // Isolated-in-context K4 of Q(B): s_H = 0.
        let q = q_of_biregular(&k34_biregular()).unwrap();
        let k4 = ConfigMatch::new(PatternKind::K4, vec![0, 1, 2, 3]);
        assert_eq!(s_of_config(&q, &k4).unwrap(), 0);

        let g = sh4_config();
        let d = ConfigMatch::new(PatternKind::Diamond, vec![1, 2, 0, 3]);
        assert_eq!(s_of_config(&g, &d).unwrap(), 4);

        let bad = ConfigMatch::new(PatternKind::W5, vec![0, 1, 2, 3, 4]);
        assert!(s_of_config(&g, &bad).is_err());
    }

    #[test]
    fn classify_base_fixtures() {
        let base = base_graphs();
        assert_eq!(classify_base(&base[0]).unwrap(), BaseClass::SmallBase4a);
        assert_eq!(classify_base(&base[1]).unwrap(), BaseClass::SmallBase4b);
        assert_eq!(classify_base(&base[2]).unwrap(), BaseClass::SmallBase6a);
        assert_eq!(classify_base(&base[3]).unwrap(), BaseClass::SmallBase6b);
        assert_eq!(classify_base(&complete(6)).unwrap(), BaseClass::NotTerminal);
    }

    #[test]
    fn classify_foundational_with_root() {
        let c = cubic_k4();
        let (lg, _) = line_graph(&c).unwrap();
        let m = find_perfect_matching(&lg).unwrap();
        let g = foundational_from_cubic(&c, &m).unwrap();
        match classify_base(&g).unwrap() {
            BaseClass::Foundational { root } => assert!(are_isomorphic(&root, &c)),
            other => panic!("expected foundational, got {other:?}"),
        }

        let cube = cube_graph();
        let (lgc, _) = line_graph(&cube).unwrap();
        let mc = find_perfect_matching(&lgc).unwrap();
        let g12 = foundational_from_cubic(&cube, &mc).unwrap();
        match classify_base(&g12).unwrap() {
            BaseClass::Foundational { root } => assert!(are_isomorphic(&root, &cube)),
            other => panic!("expected foundational, got {other:?}"),
        }
    }

    #[test]
    fn q_graphs_and_ring_are_not_terminal() {
        let q = q_of_biregular(&k34_biregular()).unwrap();
        assert_eq!(classify_base(&q).unwrap(), BaseClass::NotTerminal);
        assert_eq!(
            classify_base(&ring_of_five_k4s()).unwrap(),
            BaseClass::NotTerminal
        );
    }
}
