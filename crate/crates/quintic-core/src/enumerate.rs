//! Brute-force enumeration oracles: all isomorphism classes of quintic
//! triangle-property multigraphs at small orders, of (3,4)-biregular
//! bipartite graphs, and of connected simple cubic graphs. Classes are
//! deduplicated by canonical certificate, so a census is a set of certs
//! from which each member can be regenerated.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::canonical_form;
use crate::mgraph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    OddOrder(usize),
    AboveCap { n: usize, cap: usize },
    /// 4·nA must be divisible by 3 for a (3,4)-biregular graph to exist.
    NotDivisible(usize),
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::OddOrder(n) => write!(f, "a 5-regular graph needs even order, got {n}"),
            EnumError::AboveCap { n, cap } => write!(f, "order {n} above cap {cap}"),
            EnumError::NotDivisible(n) => {
                write!(f, "4*{n} degree-4 vertices is not divisible by 3")
            }
        }
    }
}

/// A census of isomorphism classes at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub order: usize,
    pub certs: BTreeSet<Vec<u8>>,
}

impl Census {
    pub fn count(&self) -> usize {
        self.certs.len()
    }

    /// Regenerates each member from its certificate (the certificate is the
    /// order followed by the canonical upper-triangular multiplicities).
    pub fn members(&self) -> Vec<Multigraph> {
        self.certs.iter().map(|c| graph_from_cert(c)).collect()
    }
}

/// Decodes a canonical certificate back into a concrete graph.
pub fn graph_from_cert(cert: &[u8]) -> Multigraph {
    let n = cert[0] as usize;
    let mut g = Multigraph::empty(n);
    let mut i = 1;
    for u in 0..n {
        for v in u + 1..n {
            if cert[i] > 0 {
                g.set_mult(u, v, cert[i]).unwrap();
            }
            i += 1;
        }
    }
    g
}

pub const DEFAULT_QUINTIC_CAP: usize = 8;

/// All isomorphism classes of loop-free 5-regular multigraphs on `n`
/// vertices with the triangle property. Generation walks the
/// upper-triangular multiplicity matrix row by row with degree pruning; the
/// first row is forced non-increasing (sound, since the neighbours of
/// vertex 0 can always be relabelled), and classes are deduplicated by
/// canonical form.
pub fn enumerate_quintic_tp(
    n: usize,
    connected_only: bool,
    cap: usize,
) -> Result<Census, EnumError> {
    if n % 2 != 0 {
        return Err(EnumError::OddOrder(n));
    }
    if n > cap {
        return Err(EnumError::AboveCap { n, cap });
    }
    let mut certs = BTreeSet::new();
    let mut g = Multigraph::empty(n);
    let mut deg = vec![0usize; n];
    fill_pair(&mut g, &mut deg, 0, 1, connected_only, &mut certs);
    Ok(Census { order: n, certs })
}

fn fill_pair(
    g: &mut Multigraph,
    deg: &mut Vec<usize>,
    u: usize,
    v: usize,
    connected_only: bool,
    certs: &mut BTreeSet<Vec<u8>>,
) {
    let n = g.order();
    if u >= n.saturating_sub(1) {
        if accept_leaf(g, connected_only) {
            certs.insert(canonical_form(g).cert);
        }
        return;
    }
    let (nu, nv) = if v + 1 < n { (u, v + 1) } else { (u + 1, u + 2) };
    let row_ends = v + 1 == n;
    let cap_u = 5 - deg[u];
    let cap_v = 5 - deg[v];
    let mut max_k = cap_u.min(cap_v);
    // Row-0 symmetry: multiplicities from vertex 0 are non-increasing.
    if u == 0 && v >= 2 {
        max_k = max_k.min(g.mult(0, v - 1) as usize);
    }
    for k in (0..=max_k).rev() {
        // Vertex u must reach degree 5 within its remaining row.
        let remaining_pairs = n - 1 - v;
        if cap_u - k > remaining_pairs * 5 {
            continue;
        }
        if row_ends && deg[u] + k != 5 {
            continue;
        }
        g.set_mult_unchecked(u, v, k as u8);
        deg[u] += k;
        deg[v] += k;
        let mut ok = true;
        if row_ends {
            // Parity prune: all later copies land on pairs beyond row u, so
            // the remaining deficit must be even.
            let deficit: usize = (u + 1..n).map(|w| 5 - deg[w]).sum();
            if deficit % 2 != 0 {
                ok = false;
            }
        }
        if ok {
            fill_pair(g, deg, nu, nv, connected_only, certs);
        }
        deg[u] -= k;
        deg[v] -= k;
        g.set_mult_unchecked(u, v, 0);
    }
}

fn accept_leaf(g: &Multigraph, connected_only: bool) -> bool {
    // Rows 0..n-2 enforce their degree when they close; the last vertex
    // only accumulates, so it is checked here.
    if g.degree(g.order() - 1) != 5 {
        return false;
    }
    if connected_only && !g.is_connected() {
        return false;
    }
    g.has_triangle_property()
}

/// All isomorphism classes of simple (3,4)-biregular bipartite graphs with
/// `n_a` vertices of degree 4 (and `4 n_a / 3` of degree 3). Rows are the
/// degree-4 vertices, generated in non-decreasing bitmask order.
pub fn enumerate_biregular34(n_a: usize) -> Result<Census, EnumError> {
    if (4 * n_a) % 3 != 0 {
        return Err(EnumError::NotDivisible(n_a));
    }
    let n_b = 4 * n_a / 3;
    let masks = four_subsets(n_b);
    let mut certs = BTreeSet::new();
    let mut rows: Vec<u32> = Vec::new();
    let mut col = vec![0u8; n_b];
    fn go(
        n_a: usize,
        n_b: usize,
        masks: &[u32],
        from: usize,
        rows: &mut Vec<u32>,
        col: &mut Vec<u8>,
        certs: &mut BTreeSet<Vec<u8>>,
    ) {
        if rows.len() == n_a {
            if col.iter().all(|&c| c == 3) {
                let mut g = Multigraph::empty(n_a + n_b);
                for (a, &mask) in rows.iter().enumerate() {
                    for b in 0..n_b {
                        if mask & (1 << b) != 0 {
                            g.set_mult(a, n_a + b, 1).unwrap();
                        }
                    }
                }
                certs.insert(canonical_form(&g).cert);
            }
            return;
        }
        let left = n_a - rows.len();
        for (i, &mask) in masks.iter().enumerate().skip(from) {
            let mut ok = true;
            for b in 0..n_b {
                if mask & (1 << b) != 0 && col[b] >= 3 {
                    ok = false;
                    break;
                }
            }
            // Column feasibility: every column still needs enough rows.
            if ok {
                for b in 0..n_b {
                    let need = 3 - col[b] as usize - usize::from(mask & (1 << b) != 0);
                    if need > left - 1 {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            rows.push(mask);
            for b in 0..n_b {
                if mask & (1 << b) != 0 {
                    col[b] += 1;
                }
            }
            go(n_a, n_b, masks, i, rows, col, certs);
            rows.pop();
            for b in 0..n_b {
                if mask & (1 << b) != 0 {
                    col[b] -= 1;
                }
            }
        }
    }
    go(n_a, n_b, &masks, 0, &mut rows, &mut col, &mut certs);
    Ok(Census {
        order: n_a + n_b,
        certs,
    })
}

fn four_subsets(n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() == 4 {
            out.push(mask);
        }
    }
    out
}

/// All isomorphism classes of connected simple cubic graphs on `n`
/// vertices.
pub fn enumerate_cubic(n: usize) -> Result<Census, EnumError> {
    if n % 2 != 0 {
        return Err(EnumError::OddOrder(n));
    }
    let mut certs = BTreeSet::new();
    let mut g = Multigraph::empty(n);
    let mut deg = vec![0usize; n];
    fn go(
        g: &mut Multigraph,
        deg: &mut Vec<usize>,
        u: usize,
        v: usize,
        certs: &mut BTreeSet<Vec<u8>>,
    ) {
        let n = g.order();
        if u >= n.saturating_sub(1) {
            if g.is_regular(3) && g.is_connected() {
                certs.insert(canonical_form(g).cert);
            }
            return;
        }
        let (nu, nv) = if v + 1 < n { (u, v + 1) } else { (u + 1, u + 2) };
        let row_ends = v + 1 == n;
        for k in 0..=1usize {
            if deg[u] + k > 3 || deg[v] + k > 3 {
                continue;
            }
            if row_ends && deg[u] + k != 3 {
                continue;
            }
            g.set_mult_unchecked(u, v, k as u8);
            deg[u] += k;
            deg[v] += k;
            go(g, deg, nu, nv, certs);
            deg[u] -= k;
            deg[v] -= k;
            g.set_mult_unchecked(u, v, 0);
        }
    }
    go(&mut g, &mut deg, 0, 1, &mut certs);
    Ok(Census { order: n, certs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::construct::base_graphs;

    #[test]
    fn quintic_tp_n4_census() {
        let census = enumerate_quintic_tp(4, true, 8).unwrap();
        assert_eq!(census.count(), 2);
        let base = base_graphs();
        for member in census.members() {
            assert!(member.is_quintic());
            assert!(member.has_triangle_property());
            assert!(
                are_isomorphic(&member, &base[0]) || are_isomorphic(&member, &base[1])
            );
        }
    }

    #[test]
    fn quintic_tp_parity_and_cap() {
        assert_eq!(enumerate_quintic_tp(5, true, 8), Err(EnumError::OddOrder(5)));
        assert_eq!(
            enumerate_quintic_tp(10, true, 8),
            Err(EnumError::AboveCap { n: 10, cap: 8 })
        );
    }

    #[test]
    fn quintic_tp_n6_contains_named_graphs() {
        let census = enumerate_quintic_tp(6, true, 8).unwrap();
        assert!(census.count() >= 3);
        let mut k6 = Multigraph::empty(6);
        for u in 0..6 {
            for v in u + 1..6 {
                k6.set_mult(u, v, 1).unwrap();
            }
        }
        let base = base_graphs();
        let members = census.members();
        for target in [&k6, &base[2], &base[3]] {
            assert!(members.iter().any(|m| are_isomorphic(m, target)));
        }
    }

    #[test]
    fn census_members_regenerate() {
        let census = enumerate_quintic_tp(6, true, 8).unwrap();
        for m in census.members() {
            assert!(m.is_quintic() && m.has_triangle_property());
            assert!(census.certs.contains(&canonical_form(&m).cert));
        }
    }

    #[test]
    fn biregular_counts() {
        let c3 = enumerate_biregular34(3).unwrap();
        assert_eq!(c3.count(), 1);
        assert_eq!(enumerate_biregular34(4), Err(EnumError::NotDivisible(4)));
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(enumerate_cubic(4).unwrap().count(), 1);
        assert_eq!(enumerate_cubic(6).unwrap().count(), 2);
        assert_eq!(enumerate_cubic(8).unwrap().count(), 5);
        assert!(enumerate_cubic(5).is_err());
    }
}
