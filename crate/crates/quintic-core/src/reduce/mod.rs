//! The reduction calculus: every guarded rewrite of the case analysis, and
//! the driver that takes any connected quintic triangle-property multigraph
//! to a terminal class.
//!
//! Rules are tried in the narrative order of the case analysis; within a
//! rule, matches are tried in canonical vertex order. Every rewrite is
//! post-validated (quintic, loop-free, triangle property, measure
//! decrease), even where the guards provably suffice: the engine doubles as
//! an empirical check of the proofs, and a guard that passes while
//! validation fails is surfaced loudly as an inconsistency, never skipped.

pub mod rewriter;
pub mod zx;

mod a2via3;
mod clique;
mod cutv;
mod dbl;
mod multi;
mod shrink;
mod simple_sh;
mod te;
mod wheel;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use a2via3::a2_via_a3_reduce;
pub use clique::clique_reduce;
pub use cutv::{cut_vertex_reduce, CutError, CutReduction};
pub use dbl::double_diamond_reduce;
pub use multi::triple_quad_reduce;
pub use simple_sh::simple_diamond_reduce;
pub use te::deg52_reduce;
pub use zx::{
    force_x_reduce, force_z_reduce, x_reduce, z_reduce, GuardViolation, XPairing, ZPairing,
    X_PAIRINGS, Z_PAIRINGS,
};

use crate::canon::{canonical_form, canonical_graph};
use crate::mgraph::{GraphError, Multigraph, Vertex};
use crate::patterns::{classify_base, BaseClass};

/// Names of the rewrite rules, following the sections they come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleId {
    Cutv,
    CutAtom,
    Z,
    X,
    Clique5,
    Clique4W5Nbr,
    K4Sh,
    Pendant,
    Deg52,
    W5,
    Te4,
    Te3,
    Triple,
    Dbl3,
    Dbl2,
    Dbl1,
    SimpleSh,
    A2ViA3,
    FoundShrink,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::Cutv => "CUTV",
            RuleId::CutAtom => "CUT-ATOM",
            RuleId::Z => "Z",
            RuleId::X => "X",
            RuleId::Clique5 => "CLIQUE5",
            RuleId::Clique4W5Nbr => "CLIQUE4-W5NBR",
            RuleId::K4Sh => "K4-SH",
            RuleId::Pendant => "PENDANT",
            RuleId::Deg52 => "DEG52",
            RuleId::W5 => "W5",
            RuleId::Te4 => "TE4",
            RuleId::Te3 => "TE3",
            RuleId::Triple => "TRIPLE",
            RuleId::Dbl3 => "DBL3",
            RuleId::Dbl2 => "DBL2",
            RuleId::Dbl1 => "DBL1",
            RuleId::SimpleSh => "SIMPLE-SH",
            RuleId::A2ViA3 => "A2VIA3",
            RuleId::FoundShrink => "FOUND-SHRINK",
        };
        f.write_str(s)
    }
}

/// One applied rewrite with before/after certificates so traces replay.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub rule: RuleId,
    /// Vertices of the matched configuration, in the labeling the rule ran
    /// on (the canonical labeling of the step's input).
    pub matched: Vec<Vertex>,
    pub before_cert: Vec<u8>,
    pub after_cert: Vec<u8>,
    pub vertex_delta: i64,
}

/// A terminating reduction; splits make it a tree, linearised in discovery
/// order, so several terminals can appear.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminals: Vec<BaseClass>,
}

#[derive(Clone, Debug)]
pub enum EngineError {
    Input(GraphError),
    /// No rule applies to a graph that does not classify terminal: the
    /// computational content of the classification theorem failed here.
    Stuck(Multigraph),
    /// A rule's guard accepted but post-validation rejected, or a matched
    /// configuration the argument covers had no valid rewrite.
    Inconsistent { rule: RuleId, detail: String },
    /// The lexicographic measure failed to decrease.
    NonTermination,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Input(e) => write!(f, "bad input: {e}"),
            EngineError::Stuck(g) => write!(f, "no rule applies to non-terminal {g:?}"),
            EngineError::Inconsistent { rule, detail } => {
                write!(f, "inconsistency in {rule}: {detail}")
            }
            EngineError::NonTermination => write!(f, "measure failed to decrease"),
        }
    }
}

impl From<GraphError> for EngineError {
    fn from(e: GraphError) -> Self {
        EngineError::Input(e)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReduceOptions {
    /// Enables the optional foundational-graph shrink; off by default so
    /// the terminal set matches the classification statement.
    pub enable_found_shrink: bool,
}

/// A rule application before certificates are attached.
#[derive(Clone, Debug)]
pub(crate) struct Applied {
    pub rule: RuleId,
    pub matched: Vec<Vertex>,
    pub result: Multigraph,
}

/// Number of A6 matches: edges with four pairwise non-adjacent common
/// neighbours. The second component of the termination measure.
pub(crate) fn a6_count(g: &Multigraph) -> usize {
    let mut count = 0;
    for (u, v, _) in g.edges() {
        let common = g.common_neighbors(u, v);
        if common.len() == 4
            && common
                .iter()
                .enumerate()
                .all(|(i, &a)| common[i + 1..].iter().all(|&b| !g.adjacent(a, b)))
        {
            count += 1;
        }
    }
    count
}

/// Post-validation: loop-free (by construction), quintic, triangle
/// property, and the measure: every component strictly smaller than the
/// parent, except that TE4 may keep the order if it removes an A6.
pub(crate) fn validate(parent: &Multigraph, rule: RuleId, result: &Multigraph) -> bool {
    if !result.is_quintic() || !result.has_triangle_property() {
        return false;
    }
    for comp in result.components() {
        if comp.len() > parent.order() {
            return false;
        }
        if comp.len() == parent.order() {
            let te4_ok = rule == RuleId::Te4
                && result.is_connected()
                && a6_count(result) < a6_count(parent);
            if !te4_ok {
                return false;
            }
        }
    }
    true
}

/// Accepts a candidate rewrite if it validates.
pub(crate) fn commit(
    parent: &Multigraph,
    rule: RuleId,
    matched: &[Vertex],
    result: Multigraph,
) -> Option<Applied> {
    if validate(parent, rule, &result) {
        let mut m = matched.to_vec();
        m.sort_unstable();
        m.dedup();
        Some(Applied {
            rule,
            matched: m,
            result,
        })
    } else {
        None
    }
}

fn into_step(parent: &Multigraph, applied: Applied) -> (Multigraph, ReductionStep) {
    let before_cert = canonical_form(parent).cert;
    let after_cert = canonical_form(&applied.result).cert;
    let step = ReductionStep {
        rule: applied.rule,
        matched: applied.matched,
        before_cert,
        after_cert,
        vertex_delta: applied.result.order() as i64 - parent.order() as i64,
    };
    (applied.result, step)
}

fn check_input(g: &Multigraph) -> Result<(), EngineError> {
    if !g.is_connected() {
        return Err(EngineError::Input(GraphError::Disconnected(
            g.components().len(),
        )));
    }
    if !g.is_quintic() || !g.has_triangle_property() {
        return Err(EngineError::Input(GraphError::NotQuintic));
    }
    Ok(())
}

/// Tries the rules in narrative order and returns the first rewrite whose
/// post-validation passes, or None if the graph is terminal. A
/// non-terminal graph with no applicable rule is an inconsistency and is
/// reported as [`EngineError::Stuck`].
pub fn reduce_once(
    g: &Multigraph,
    opts: &ReduceOptions,
) -> Result<Option<(Multigraph, ReductionStep)>, EngineError> {
    check_input(g)?;
    let class = classify_base(g)?;
    if class.is_terminal() {
        if opts.enable_found_shrink && matches!(class, BaseClass::Foundational { .. }) {
            if let Some(applied) = shrink::try_found_shrink(g) {
                return Ok(Some(into_step(g, applied)));
            }
        }
        return Ok(None);
    }
    type Rule = fn(&Multigraph) -> Result<Option<Applied>, EngineError>;
    let rules: [Rule; 13] = [
        cutv::try_cutv,
        clique::try_clique5,
        clique::try_clique4,
        wheel::try_w5,
        te::try_te3,
        te::try_deg52_a6,
        multi::try_triple_quad,
        dbl::try_pendant_a3,
        dbl::try_dbl,
        simple_sh::try_simple_sh,
        zx_sweep,
        a2via3::try_a2via3,
        te::try_te4,
    ];
    for rule in rules {
        if let Some(applied) = rule(g)? {
            return Ok(Some(into_step(g, applied)));
        }
    }
    Err(EngineError::Stuck(g.clone()))
}

/// Generic Z/X sweep: every diamond and K4, every pairing, in canonical
/// order. The specialized rules realize the narrative's argument; this
/// sweep is the same two operations applied exhaustively.
fn zx_sweep(g: &Multigraph) -> Result<Option<Applied>, EngineError> {
    use crate::patterns::{find_cliques, find_diamonds};
    for d in find_diamonds(g) {
        if g.adjacent(d.map[2], d.map[3]) {
            continue;
        }
        let simple = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .all(|&(i, j)| g.mult(d.map[i], d.map[j]) <= 1);
        if simple {
            for pairing in Z_PAIRINGS {
                if let Ok(out) = z_reduce(g, &d, pairing) {
                    if let Some(a) = commit(g, RuleId::Z, &d.map, out) {
                        return Ok(Some(a));
                    }
                }
            }
        } else {
            for pairing in [XPairing::P01_23, XPairing::P02_13] {
                if let Ok(out) = x_reduce(g, &d, pairing) {
                    if let Some(a) = commit(g, RuleId::X, &d.map, out) {
                        return Ok(Some(a));
                    }
                }
            }
        }
    }
    for m in find_cliques(g, 4) {
        for pairing in X_PAIRINGS {
            if let Ok(out) = x_reduce(g, &m, pairing) {
                if let Some(a) = commit(g, RuleId::X, &m.map, out) {
                    return Ok(Some(a));
                }
            }
        }
    }
    Ok(None)
}

/// Iterates [`reduce_once`] to a terminal class, canonically relabeling at
/// every step (so isomorphic inputs produce identical traces), splitting
/// disconnected intermediates into components and reducing each.
pub fn reduce_to_base(
    g: &Multigraph,
    opts: &ReduceOptions,
) -> Result<ReductionTrace, EngineError> {
    let mut steps = Vec::new();
    let mut terminals = Vec::new();
    let mut stack: Vec<Multigraph> = Vec::new();
    for comp in g.components().iter().rev() {
        stack.push(g.induced(comp).0);
    }
    let mut fuel = 100_000usize;
    while let Some(cur) = stack.pop() {
        fuel = fuel.checked_sub(1).ok_or(EngineError::NonTermination)?;
        let cur = canonical_graph(&cur);
        match reduce_once(&cur, opts)? {
            None => {
                let class = classify_base(&cur)?;
                debug_assert!(class.is_terminal());
                terminals.push(class);
            }
            Some((next, step)) => {
                steps.push(step);
                for comp in next.components().iter().rev() {
                    stack.push(next.induced(comp).0);
                }
            }
        }
    }
    Ok(ReductionTrace { steps, terminals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::construct::{
        base_graphs, cubic_k4, find_perfect_matching, foundational_from_cubic, k34_biregular,
        line_graph, q_of_biregular,
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

    #[test]
    fn base_graphs_are_terminal() {
        let opts = ReduceOptions::default();
        for g in base_graphs() {
            assert!(reduce_once(&g, &opts).unwrap().is_none(), "{g:?}");
        }
    }

    #[test]
    fn foundational_6_is_terminal_by_default() {
        let c = cubic_k4();
        let (lg, _) = line_graph(&c).unwrap();
        let m = find_perfect_matching(&lg).unwrap();
        let g = foundational_from_cubic(&c, &m).unwrap();
        let opts = ReduceOptions::default();
        assert!(reduce_once(&g, &opts).unwrap().is_none());
    }

    #[test]
    fn k6_reduces_to_4_vertices() {
        let opts = ReduceOptions::default();
        let (next, step) = reduce_once(&complete(6), &opts).unwrap().unwrap();
        assert_eq!(next.order(), 4);
        assert_eq!(step.vertex_delta, -2);
        let trace = reduce_to_base(&complete(6), &opts).unwrap();
        assert_eq!(trace.terminals.len(), 1);
        assert!(trace.terminals[0].is_terminal());
        let base = base_graphs();
        // K6 ends at a 4-vertex base graph.
        let last = trace.steps.last().unwrap();
        let final_graph = crate::enumerate::graph_from_cert(&last.after_cert);
        assert!(
            are_isomorphic(&final_graph, &base[0]) || are_isomorphic(&final_graph, &base[1])
        );
    }

    #[test]
    fn q_of_k34_reduces_to_terminal() {
        let opts = ReduceOptions::default();
        let q = q_of_biregular(&k34_biregular()).unwrap();
        let trace = reduce_to_base(&q, &opts).unwrap();
        assert!(!trace.terminals.is_empty());
        assert!(trace.terminals.iter().all(|t| t.is_terminal()));
    }

    #[test]
    fn traces_are_deterministic_across_relabelings() {
        let opts = ReduceOptions::default();
        let q = q_of_biregular(&k34_biregular()).unwrap();
        let t1 = reduce_to_base(&q, &opts).unwrap();
        let perm: Vec<usize> = (0..q.order()).rev().collect();
        let t2 = reduce_to_base(&q.relabel(&perm), &opts).unwrap();
        assert_eq!(t1.steps.len(), t2.steps.len());
        for (a, b) in t1.steps.iter().zip(&t2.steps) {
            assert_eq!(a.rule, b.rule);
            assert_eq!(a.matched, b.matched);
            assert_eq!(a.before_cert, b.before_cert);
            assert_eq!(a.after_cert, b.after_cert);
        }
    }

    #[test]
    fn fig3_right_is_immediately_terminal() {
        let opts = ReduceOptions::default();
        let base = base_graphs();
        let trace = reduce_to_base(&base[3], &opts).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.terminals.len(), 1);
        assert_eq!(trace.terminals[0], BaseClass::SmallBase6b);
    }
}
