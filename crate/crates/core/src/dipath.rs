//! Constructive 2-dipath 7-colouring of cubic orientations, through the
//! square graph: a proper colouring of the square is exactly a 2-dipath
//! colouring of the orientation.
//!
//! Per connected component the dispatch is: subdivide source-to-sink arcs
//! when present; a 7-regular square is coloured by direct search (it is
//! never complete); otherwise peel the square down to its 7-core, colour
//! the core side through QR_7 and extend greedily along the peel order.

use crate::codec::emit_digraph6;
use crate::error::{Error, Result};
use crate::graph::{
    two_dipaths, validate_two_dipath_colouring, OrientedGraph, SimpleGraph, VertexColouring,
};
use crate::hom::{find_homomorphism_budgeted, subcubic_qr7, BudgetedSearch, PinSet};
use crate::oracle::first_proper_colouring;
use crate::paley::paley_tournament;

/// Node budget for the opportunistic direct homomorphism attempt before
/// the structural branches run.
const DIRECT_HOM_BUDGET: u64 = 50_000;

/// Underlying graph plus an edge for every pair of vertices at directed
/// distance exactly two. Pairs already adjacent stay single edges.
pub fn build_square(g: &OrientedGraph) -> SimpleGraph {
    let mut edges: std::collections::BTreeSet<(usize, usize)> = g
        .arcs()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    for (u, _, w, _) in two_dipaths(g) {
        edges.insert((u.min(w), u.max(w)));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    if g.is_cubic() {
        // Each cubic vertex has in*out <= 2 dipaths through it.
        debug_assert!(induced_dipath_centre_counts(g).iter().all(|&c| c <= 2));
    }
    SimpleGraph::new(g.vertex_count(), &edges).expect("square of a simple graph is simple")
}

/// How many induced 2-dipaths have each vertex as centre.
pub fn induced_dipath_centre_counts(g: &OrientedGraph) -> Vec<usize> {
    let mut counts = vec![0usize; g.vertex_count()];
    for (_, v, _, induced) in two_dipaths(g) {
        if induced {
            counts[v] += 1;
        }
    }
    counts
}

/// Edge count of the square against the 7n/2 ceiling that the counting
/// argument for cubic orientations guarantees.
pub fn average_degree_check(g: &OrientedGraph) -> Result<(usize, usize)> {
    if !g.is_cubic() {
        return Err(Error::precondition("graph is not cubic"));
    }
    let edges = build_square(g).edge_count();
    let bound = 7 * g.vertex_count() / 2;
    if edges > bound {
        return Err(Error::invariant(
            format!("square has {edges} edges, above the ceiling {bound}"),
            emit_digraph6(g),
        ));
    }
    Ok((edges, bound))
}

/// Record of source-to-sink arc subdivisions: each arc s -> t became
/// s -> x -> t through a fresh vertex x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionMap {
    pub replacements: Vec<(usize, usize, usize)>,
}

/// Replaces every arc from a source to a sink by a directed length-2
/// path through a fresh vertex. The result is properly subcubic, keeps
/// directed distances at most 2 between original vertices, and has no
/// degree-3 source adjacent to a degree-3 sink.
pub fn subdivide_source_sink_arcs(g: &OrientedGraph) -> Result<(OrientedGraph, SubdivisionMap)> {
    if !g.is_cubic() {
        return Err(Error::precondition("graph is not cubic"));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    let pairs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|&(s, t)| g.in_degree(s) == 0 && g.out_degree(t) == 0)
        .collect();
    if pairs.is_empty() {
        return Err(Error::precondition(
            "graph has no arc from a source to a sink",
        ));
    }
    let n = g.vertex_count();
    let mut arcs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|a| !pairs.contains(a))
        .collect();
    let mut replacements = Vec::with_capacity(pairs.len());
    for (i, &(s, t)) in pairs.iter().enumerate() {
        let x = n + i;
        arcs.push((s, x));
        arcs.push((x, t));
        replacements.push((s, t, x));
    }
    let subdivided = OrientedGraph::new(n + pairs.len(), &arcs)?;
    debug_assert!(subdivided.is_properly_subcubic());
    debug_assert!(subdivided.is_connected());
    Ok((subdivided, SubdivisionMap { replacements }))
}

/// The 7-core decomposition of the square, oriented back onto the input:
/// `core` is the unique maximal vertex set inducing minimum degree >= 7
/// in the square, `shell_order` lists the remaining vertices so that each
/// sees at most 6 earlier-or-core neighbours, `between` are the shell
/// vertices sitting mid-dipath between two core vertices, and
/// `core_graph` is the subgraph of the orientation on core plus between
/// with the arcs inside the core or joining core to between.
#[derive(Debug, Clone)]
pub struct CorePartition {
    pub core: Vec<usize>,
    pub shell_order: Vec<usize>,
    pub between: Vec<usize>,
    pub core_graph: OrientedGraph,
    /// Map from `core_graph` indices back to input vertices.
    pub core_graph_vertices: Vec<usize>,
}

impl CorePartition {
    /// True when the oriented subgraph covers the whole input.
    pub fn covers_whole_graph(&self, g: &OrientedGraph) -> bool {
        self.core_graph_vertices.len() == g.vertex_count()
            && self.core_graph.arc_count() == g.arc_count()
    }
}

/// Peels vertices of square-degree <= 6, lowest index first, until only
/// the 7-core remains. The extension order is the reverse peel order.
pub fn seven_core_partition(g: &OrientedGraph, sq: &SimpleGraph) -> CorePartition {
    let n = sq.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| sq.degree(v)).collect();
    let mut peeled = vec![false; n];
    let mut peel_sequence = Vec::new();
    loop {
        let next = (0..n).find(|&v| !peeled[v] && degree[v] <= 6);
        match next {
            None => break,
            Some(v) => {
                peeled[v] = true;
                peel_sequence.push(v);
                for &w in sq.neighbours(v) {
                    if !peeled[w] {
                        degree[w] -= 1;
                    }
                }
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| !peeled[v]).collect();
    let in_core = |v: usize| !peeled[v];

    let mut between: Vec<usize> = Vec::new();
    for &w in &peel_sequence {
        let centres_core_pair = g
            .in_neighbours(w)
            .iter()
            .any(|&a| in_core(a))
            && g.out_neighbours(w).iter().any(|&b| in_core(b));
        if centres_core_pair {
            between.push(w);
        }
    }
    between.sort_unstable();

    let mut members: Vec<usize> = core.iter().chain(between.iter()).copied().collect();
    members.sort_unstable();
    let in_between = {
        let mut m = vec![false; n];
        for &b in &between {
            m[b] = true;
        }
        m
    };
    let mut local = vec![usize::MAX; n];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let arcs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|&(s, t)| {
            (in_core(s) && in_core(t))
                || (in_core(s) && in_between[t])
                || (in_between[s] && in_core(t))
        })
        .map(|(s, t)| (local[s], local[t]))
        .collect();
    let core_graph = OrientedGraph::new(members.len(), &arcs)
        .expect("subgraph of an oriented graph is oriented");

    let shell_order: Vec<usize> = peel_sequence.into_iter().rev().collect();
    CorePartition {
        core,
        shell_order,
        between,
        core_graph,
        core_graph_vertices: members,
    }
}

/// Colouring defined on a subset of the vertices.
#[derive(Debug, Clone, Default)]
pub struct PartialColouring {
    pub assignment: Vec<Option<usize>>,
}

/// Colours the core through QR_7: each component of the core-side
/// subgraph is properly subcubic (it is a proper subgraph of a connected
/// cubic graph) and maps into QR_7; restricting the maps to the core
/// properly colours the square there, because every 2-dipath between
/// core vertices lives inside the subgraph.
pub fn colour_square_core(
    g: &OrientedGraph,
    sq: &SimpleGraph,
    part: &CorePartition,
) -> Result<PartialColouring> {
    let n = g.vertex_count();
    if part.core.is_empty() {
        return Ok(PartialColouring {
            assignment: vec![None; n],
        });
    }
    if part.covers_whole_graph(g) {
        // The counting ledger rules this out: with the shell independent
        // and all of it between core vertices, the core side of the
        // square has at most (7|C| - 5|H|)/2 edges, yet minimum degree 7
        // forces at least 7|C|/2.
        let core_set: std::collections::BTreeSet<usize> = part.core.iter().copied().collect();
        let e_core = sq
            .edges()
            .iter()
            .filter(|&&(a, b)| core_set.contains(&a) && core_set.contains(&b))
            .count();
        let c = part.core.len();
        let h = n - c;
        return Err(Error::invariant(
            format!(
                "core-side subgraph equals the whole graph: 2*e_C = {} vs ceiling 7|C|-5|H| = {}, \
                 floor 7|C| = {}",
                2 * e_core,
                7 * c as i64 - 5 * h as i64,
                7 * c
            ),
            emit_digraph6(g),
        ));
    }
    let mut assignment = vec![None; n];
    for comp in part.core_graph.components() {
        let (sub, back) = part.core_graph.induced(&comp);
        let local = subcubic_qr7(&sub, &PinSet::new()).map_err(|e| match e {
            Error::PreconditionViolated(msg) => Error::invariant(
                format!("core-side component fails the subcubic gate: {msg}"),
                emit_digraph6(g),
            ),
            other => other,
        })?;
        for (new, &local_old) in back.iter().enumerate() {
            let original = part.core_graph_vertices[local_old];
            assignment[original] = Some(local[new]);
        }
    }
    // Keep only the core; the between vertices get their colours later.
    let in_core: std::collections::BTreeSet<usize> = part.core.iter().copied().collect();
    for (v, slot) in assignment.iter_mut().enumerate() {
        if !in_core.contains(&v) {
            *slot = None;
        }
    }
    for &(a, b) in sq.edges() {
        if let (Some(ca), Some(cb)) = (assignment[a], assignment[b]) {
            if ca == cb {
                return Err(Error::invariant(
                    format!("core colouring is not proper on square edge ({a},{b})"),
                    emit_digraph6(g),
                ));
            }
        }
    }
    Ok(PartialColouring { assignment })
}

/// Greedy extension along the peel order: every vertex in the order sees
/// at most 6 already-coloured square neighbours, so one of the 7 colours
/// is always free.
pub fn extend_by_peel_order(
    sq: &SimpleGraph,
    partial: &PartialColouring,
    part: &CorePartition,
) -> Result<VertexColouring> {
    let mut assignment = partial.assignment.clone();
    for &v in &part.shell_order {
        let mut used = [false; 7];
        for &w in sq.neighbours(v) {
            if let Some(c) = assignment[w] {
                if c < 7 {
                    used[c] = true;
                }
            }
        }
        let free = (0..7).find(|&c| !used[c]).ok_or_else(|| {
            Error::invariant(
                format!("vertex {v} has no free colour along the peel order"),
                String::new(),
            )
        })?;
        assignment[v] = Some(free);
    }
    let colours: Option<Vec<usize>> = assignment.into_iter().collect();
    match colours {
        Some(c) => Ok(VertexColouring::new(c)),
        None => Err(Error::invariant(
            "extension left a vertex uncoloured",
            String::new(),
        )),
    }
}

/// Branch tag per connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SevenCase {
    DirectQr7,
    Subdivision,
    BrooksSevenRegular,
    GreedyDegenerate,
    SevenCore,
}

impl SevenCase {
    pub fn tag(&self) -> &'static str {
        match self {
            SevenCase::DirectQr7 => "direct_qr7",
            SevenCase::Subdivision => "subdivision",
            SevenCase::BrooksSevenRegular => "brooks_seven_regular",
            SevenCase::GreedyDegenerate => "greedy_degenerate",
            SevenCase::SevenCore => "seven_core",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SevenColouringCertificate {
    /// One entry per connected component, in component order.
    pub components: Vec<SevenCase>,
    pub palette_size: usize,
}

/// 2-dipath 7-colouring of any cubic orientation; components are
/// coloured independently.
pub fn two_dipath_seven_colouring(
    g: &OrientedGraph,
) -> Result<(VertexColouring, SevenColouringCertificate)> {
    if !g.is_cubic() {
        return Err(Error::precondition("graph is not cubic"));
    }
    let n = g.vertex_count();
    let mut assignment = vec![0usize; n];
    let mut tags = Vec::new();
    for comp in g.components() {
        let (sub, back) = g.induced(&comp);
        let (local, tag) = colour_component(&sub)?;
        for (new, &old) in back.iter().enumerate() {
            assignment[old] = local.colour(new);
        }
        tags.push(tag);
    }
    let colouring = VertexColouring::new(assignment);
    let report = validate_two_dipath_colouring(g, &colouring)?;
    if !report.is_valid() || colouring.palette_size() > 7 {
        return Err(Error::invariant(
            "2-dipath pipeline produced an invalid or oversized colouring",
            emit_digraph6(g),
        ));
    }
    let palette_size = colouring.palette_size();
    Ok((
        colouring,
        SevenColouringCertificate {
            components: tags,
            palette_size,
        },
    ))
}

fn colour_component(g: &OrientedGraph) -> Result<(VertexColouring, SevenCase)> {
    let n = g.vertex_count();
    let has_source_sink_arc = g
        .arcs()
        .iter()
        .any(|&(s, t)| g.in_degree(s) == 0 && g.out_degree(t) == 0);
    if has_source_sink_arc {
        let (subdivided, _) = subdivide_source_sink_arcs(g)?;
        let map = subcubic_qr7(&subdivided, &PinSet::new()).map_err(|e| match e {
            Error::PreconditionViolated(msg) => Error::invariant(
                format!("subdivision left the gate unsatisfied: {msg}"),
                emit_digraph6(g),
            ),
            other => other,
        })?;
        return Ok((VertexColouring::new(map[..n].to_vec()), SevenCase::Subdivision));
    }

    let sq = build_square(g);
    if sq.is_regular(7) {
        if sq.is_complete() {
            return Err(Error::invariant(
                "7-regular square is complete, an oriented clique of order >= 8",
                emit_digraph6(g),
            ));
        }
        return match first_proper_colouring(&sq, 7) {
            Some(col) => Ok((col, SevenCase::BrooksSevenRegular)),
            None => Err(Error::invariant(
                "connected 7-regular non-complete square is not 7-colourable",
                emit_digraph6(g),
            )),
        };
    }

    // A direct homomorphism into QR_7 settles the instance outright;
    // only a cheap attempt, the structural branches below are the
    // guaranteed path.
    let qr7 = paley_tournament(7).expect("7 is a valid modulus");
    if let BudgetedSearch::Found(map) =
        find_homomorphism_budgeted(g, qr7.as_graph(), &PinSet::new(), Some(DIRECT_HOM_BUDGET))
    {
        return Ok((VertexColouring::new(map), SevenCase::DirectQr7));
    }

    let part = seven_core_partition(g, &sq);
    if part.core.is_empty() {
        let empty = PartialColouring {
            assignment: vec![None; n],
        };
        let col = extend_by_peel_order(&sq, &empty, &part)?;
        Ok((col, SevenCase::GreedyDegenerate))
    } else {
        let partial = colour_square_core(g, &sq, &part)?;
        let col = extend_by_peel_order(&sq, &partial, &part)?;
        Ok((col, SevenCase::SevenCore))
    }
}
