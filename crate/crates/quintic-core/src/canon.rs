//! Multiplicity-aware canonical labeling by iterative partition refinement
//! with backtracking individualization. The certificate is the order
//! followed by the canonical upper-triangular multiplicity listing, so
//! certificate equality is exactly multigraph isomorphism.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::mgraph::{Multigraph, Vertex};

/// Canonical certificate plus the relabeling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `[order, mult(0,1), mult(0,2), ..]` under the canonical labeling.
    pub cert: Vec<u8>,
    /// `perm[old_id] = canonical_id`.
    pub perm: Vec<Vertex>,
}

impl CanonicalForm {
    pub fn cert_hex(&self) -> String {
        let mut s = String::with_capacity(self.cert.len() * 2);
        for b in &self.cert {
            let hi = b >> 4;
            let lo = b & 0xf;
            for d in [hi, lo] {
                s.push(char::from_digit(d as u32, 16).unwrap());
            }
        }
        s
    }
}

/// Colouring refinement: a vertex signature is its own colour together with
/// the multiset of `(neighbour colour, multiplicity)` pairs. Stable colours
/// are re-ranked after every pass until a fixed point.
fn refine(g: &Multigraph, colors: &mut Vec<u32>) {
    let n = g.order();
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u8)>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<(u32, u8)> = g
                .incidences(v)
                .into_iter()
                .map(|(u, k)| (colors[u], k))
                .collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                c += 1;
            }
            next[order[i]] = c;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn initial_colors(g: &Multigraph) -> Vec<u32> {
    let n = g.order();
    let mut sigs: Vec<(usize, Vec<u8>)> = Vec::with_capacity(n);
    for v in 0..n {
        let mut ms: Vec<u8> = g.incidences(v).into_iter().map(|(_, k)| k).collect();
        ms.sort_unstable();
        sigs.push((g.degree(v), ms));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
    let mut colors = vec![0u32; n];
    let mut c = 0u32;
    for i in 0..n {
        if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
            c += 1;
        }
        colors[order[i]] = c;
    }
    colors
}

/// First smallest non-singleton cell, as the list of its members.
fn target_cell(colors: &[u32]) -> Option<Vec<Vertex>> {
    let n = colors.len();
    let mut best: Option<Vec<Vertex>> = None;
    let max_color = colors.iter().copied().max().unwrap_or(0);
    for c in 0..=max_color {
        let cell: Vec<Vertex> = (0..n).filter(|&v| colors[v] == c).collect();
        if cell.len() >= 2 {
            match &best {
                Some(b) if b.len() <= cell.len() => {}
                _ => best = Some(cell.clone()),
            }
            if best.as_ref().map(|b| b.len()) == Some(2) {
                return best;
            }
        }
    }
    best
}

fn cert_of_discrete(g: &Multigraph, colors: &[u32]) -> (Vec<u8>, Vec<Vertex>) {
    let n = g.order();
    let mut perm = vec![0usize; n];
    for v in 0..n {
        perm[v] = colors[v] as usize;
    }
    let mut cert = Vec::with_capacity(1 + n * (n.saturating_sub(1)) / 2);
    cert.push(n as u8);
    let relabeled = g.relabel(&perm);
    for i in 0..n {
        for j in i + 1..n {
            cert.push(relabeled.mult(i, j));
        }
    }
    (cert, perm)
}

fn search(g: &Multigraph, colors: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<Vertex>)>) {
    let mut colors = colors;
    refine(g, &mut colors);
    match target_cell(&colors) {
        None => {
            let cand = cert_of_discrete(g, &colors);
            match best {
                Some((c, _)) if *c <= cand.0 => {}
                _ => *best = Some(cand),
            }
        }
        Some(cell) => {
            for &v in &cell {
                let mut branched = colors.clone();
                // Individualize v: give it a colour strictly between its
                // cell and the previous one, shifting everything above.
                for w in 0..branched.len() {
                    if branched[w] >= colors[v] && w != v {
                        branched[w] += 1;
                    }
                }
                search(g, branched, best);
            }
        }
    }
}

/// Deterministic canonical certificate, invariant under relabeling.
pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    if g.order() == 0 {
        return CanonicalForm {
            cert: vec![0],
            perm: Vec::new(),
        };
    }
    let colors = initial_colors(g);
    let mut best = None;
    search(g, colors, &mut best);
    let (cert, perm) = best.expect("canonical search always yields a leaf");
    CanonicalForm { cert, perm }
}

pub fn are_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    canonical_form(g).cert == canonical_form(h).cert
}

/// The graph relabeled into canonical position.
pub fn canonical_graph(g: &Multigraph) -> Multigraph {
    let cf = canonical_form(g);
    g.relabel(&cf.perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::mgraph::Multigraph;

    fn complete(n: usize) -> Multigraph {
        let mut edges = alloc::vec::Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 1));
            }
        }
        Multigraph::from_edges(n, &edges).unwrap()
    }

    /// Brute-force isomorphism by permutation search; independent oracle for
    /// the canonical form on small graphs.
    fn brute_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let n = g.order();
        let mut perm: alloc::vec::Vec<usize> = (0..n).collect();
        fn heap(
            k: usize,
            perm: &mut alloc::vec::Vec<usize>,
            g: &Multigraph,
            h: &Multigraph,
        ) -> bool {
            if k == 1 {
                let n = g.order();
                return (0..n).all(|u| {
                    (u + 1..n).all(|v| g.mult(u, v) == h.mult(perm[u], perm[v]))
                });
            }
            for i in 0..k {
                if heap(k - 1, perm, g, h) {
                    return true;
                }
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
            false
        }
        heap(n, &mut perm, g, h)
    }

    #[test]
    fn relabeling_invariance() {
        let g = construct::base_graphs().remove(1);
        let c0 = canonical_form(&g);
        // A few fixed permutations of 4 elements.
        for perm in [[1, 0, 3, 2], [3, 2, 1, 0], [2, 0, 3, 1], [0, 3, 1, 2]] {
            let h = g.relabel(&perm);
            assert_eq!(canonical_form(&h).cert, c0.cert);
        }
    }

    #[test]
    fn perm_reproduces_cert() {
        for g in construct::base_graphs() {
            let cf = canonical_form(&g);
            let relabeled = g.relabel(&cf.perm);
            let again = cert_of_discrete(&relabeled, &(0..g.order() as u32).collect::<alloc::vec::Vec<_>>());
            assert_eq!(cf.cert, again.0);
        }
    }

    #[test]
    fn fig1_graphs_are_distinct() {
        let base = construct::base_graphs();
        assert!(!are_isomorphic(&base[0], &base[1]));
        assert!(!are_isomorphic(&base[2], &base[3]));
        assert!(are_isomorphic(&base[0], &base[0]));
    }

    #[test]
    fn different_orders_differ() {
        let q = construct::q_of_biregular(&construct::k34_biregular()).unwrap();
        assert!(!are_isomorphic(&complete(6), &q));
    }

    #[test]
    fn agrees_with_brute_force_small() {
        // All pairs drawn from a pool of small graphs, checked both ways.
        let mut pool = alloc::vec::Vec::new();
        pool.push(complete(4));
        pool.push(complete(5));
        pool.extend(construct::base_graphs());
        pool.push(Multigraph::from_edges(4, &[(0, 1, 2), (1, 2, 1), (0, 2, 1), (2, 3, 2), (0, 3, 1), (1, 3, 1)]).unwrap());
        pool.push(Multigraph::from_edges(4, &[(0, 1, 1), (1, 2, 2), (0, 2, 1), (2, 3, 1), (0, 3, 2), (1, 3, 1)]).unwrap());
        for g in &pool {
            for h in &pool {
                assert_eq!(
                    are_isomorphic(g, h),
                    brute_isomorphic(g, h),
                    "{g:?} vs {h:?}"
                );
            }
        }
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        let g = complete(6);
        let cf = canonical_form(&g);
        assert_eq!(cf.cert[0], 6);
        assert!(cf.cert[1..].iter().all(|&m| m == 1));
        let ring = construct::ring_of_five_k4s();
        let cf = canonical_form(&ring);
        assert_eq!(cf.cert[0], 10);
    }
}
