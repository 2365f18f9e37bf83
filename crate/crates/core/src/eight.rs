//! Constructive oriented 8-colouring of connected cubic orientations.
//!
//! Dispatch: a graph with a source or sink is coloured by direct exact
//! search; otherwise a triangle in the underlying graph is exploited by
//! removing one of its arcs, colouring the rest into QR_7 and repairing
//! locally; otherwise (triangle-free) a cut arc splits the graph, or a
//! one-vertex surgery reduces it to a properly subcubic instance. Every
//! normalization is an explicit automorphism application, never a silent
//! relabelling of the input, and every output is re-validated.

use crate::codec::emit_digraph6;
use crate::error::{Error, Result};
use crate::graph::{validate_oriented_colouring, OrientedGraph, VertexColouring};
use crate::hom::{subcubic_qr7, PinSet};
use crate::oracle::first_oriented_colouring;
use crate::paley::{cycle_completions, normalize_arc, paley_tournament, Tournament};

/// Output of the local search behind the triangle-free surgery: a vertex
/// of out-degree 2 whose neighbourhood lets the surgery fire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AltPathWitness {
    /// Both out-neighbours of the centre have in-degree 2.
    TwoSinkOutNeighbours {
        centre: usize,
        out_neighbours: [usize; 2],
    },
    /// The centre has an out-neighbour of in-degree 2 and an in-neighbour
    /// of out-degree 2.
    MixedNeighbours {
        centre: usize,
        out_neighbour: usize,
        in_neighbour: usize,
    },
}

/// Which branch produced the colouring, with the data that branch used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EightCase {
    SourceOrSink,
    Triangle {
        u: usize,
        v: usize,
        w: usize,
    },
    TriangleFreeCutArc {
        arc: (usize, usize),
    },
    TriangleFreeSurgery {
        x: usize,
        u: usize,
        v: usize,
        w: usize,
        z: usize,
        y: usize,
    },
}

impl EightCase {
    pub fn tag(&self) -> &'static str {
        match self {
            EightCase::SourceOrSink => "source_or_sink",
            EightCase::Triangle { .. } => "triangle",
            EightCase::TriangleFreeCutArc { .. } => "triangle_free_cut_arc",
            EightCase::TriangleFreeSurgery { .. } => "triangle_free_surgery",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EightColouringCertificate {
    pub case: EightCase,
    pub palette_size: usize,
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::precondition(msg.to_string()))
    }
}

fn require_cubic(g: &OrientedGraph) -> Result<()> {
    require(g.is_cubic(), "graph is not cubic")
}

fn require_no_source_or_sink(g: &OrientedGraph) -> Result<()> {
    require(
        g.sources().is_empty() && g.sinks().is_empty(),
        "graph has a source or a sink",
    )
}

fn qr7() -> Tournament {
    paley_tournament(7).expect("7 is a valid modulus")
}

/// QR_7 map for a derived graph whose gate conditions the enclosing
/// branch guarantees; a gate failure here is an invariant breach of the
/// construction, not a caller error.
fn qr7_map_guaranteed(
    original: &OrientedGraph,
    derived: &OrientedGraph,
    pins: &PinSet,
    context: &str,
) -> Result<Vec<usize>> {
    subcubic_qr7(derived, pins).map_err(|e| match e {
        Error::PreconditionViolated(msg) => Error::invariant(
            format!("{context}: derived graph fails the subcubic gate: {msg}"),
            emit_digraph6(original),
        ),
        other => other,
    })
}

/// Validates and packages a pipeline result; an invalid colouring here
/// means a construction step was unsound, so it surfaces as an invariant
/// violation with the instance as certificate.
fn finish(
    g: &OrientedGraph,
    assignment: Vec<usize>,
    case: EightCase,
) -> Result<(VertexColouring, EightColouringCertificate)> {
    let colouring = VertexColouring::new(assignment);
    let report = validate_oriented_colouring(g, &colouring)?;
    if !report.is_valid() || colouring.palette_size() > 8 {
        return Err(Error::invariant(
            format!(
                "{} branch produced an invalid or oversized colouring",
                case.tag()
            ),
            emit_digraph6(g),
        ));
    }
    let palette_size = colouring.palette_size();
    Ok((colouring, EightColouringCertificate { case, palette_size }))
}

/// Finds a vertex of out-degree 2 whose out-neighbours both have
/// in-degree 2, or one with an out-neighbour of in-degree 2 and an
/// in-neighbour of out-degree 2. Total on cubic orientations without
/// sources and sinks: after the direct scan, the out-degree-2 vertices
/// induce a subgraph of positive minimum out-degree, and a directed walk
/// out of one of its cycles must run into an in-degree-2 vertex.
pub fn alt_path_witness(g: &OrientedGraph) -> Result<AltPathWitness> {
    require_cubic(g)?;
    require_no_source_or_sink(g)?;
    let n = g.vertex_count();
    // Every vertex has (out, in) either (2, 1) or (1, 2).
    let out2 = |v: usize| g.out_degree(v) == 2;
    let in2 = |v: usize| g.in_degree(v) == 2;

    for v in 0..n {
        if out2(v) {
            let outs = g.out_neighbours(v);
            if outs.iter().all(|&w| in2(w)) {
                return Ok(AltPathWitness::TwoSinkOutNeighbours {
                    centre: v,
                    out_neighbours: [outs[0], outs[1]],
                });
            }
        }
    }

    // Every out-degree-2 vertex now has an out-neighbour of out-degree 2;
    // walk within that class until a cycle shows up.
    let start = (0..n)
        .find(|&v| out2(v))
        .expect("cubic orientations without sinks have out-degree-2 vertices");
    let succ = |v: usize| -> usize {
        *g.out_neighbours(v)
            .iter()
            .find(|&&w| out2(w))
            .expect("scan above guarantees an out-degree-2 successor")
    };
    let mut seen_at = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut v = start;
    while seen_at[v] == usize::MAX {
        seen_at[v] = path.len();
        path.push(v);
        v = succ(v);
    }
    let cycle: Vec<usize> = path[seen_at[v]..].to_vec();
    let on_cycle = {
        let mut m = vec![false; n];
        for &c in &cycle {
            m[c] = true;
        }
        m
    };

    let mixed = |centre: usize, out_neighbour: usize| -> Result<AltPathWitness> {
        let in_neighbour = g.in_neighbours(centre)[0];
        if !out2(in_neighbour) {
            return Err(Error::invariant(
                "walk predecessor of an out-degree-2 vertex lost out-degree 2",
                emit_digraph6(g),
            ));
        }
        Ok(AltPathWitness::MixedNeighbours {
            centre,
            out_neighbour,
            in_neighbour,
        })
    };

    // A cycle vertex with an in-degree-2 out-neighbour already witnesses:
    // its unique in-neighbour is its cycle predecessor, of out-degree 2.
    let mut sorted_cycle = cycle.clone();
    sorted_cycle.sort_unstable();
    for &x in &sorted_cycle {
        if let Some(&o) = g.out_neighbours(x).iter().find(|&&o| in2(o)) {
            return mixed(x, o);
        }
    }

    // Otherwise walk out of the cycle through out-degree-2 vertices; the
    // walk cannot close up without first meeting an in-degree-2 vertex.
    let x0 = sorted_cycle[0];
    let mut visited = on_cycle;
    let mut current = *g
        .out_neighbours(x0)
        .iter()
        .find(|&&o| !visited[o])
        .ok_or_else(|| {
            Error::invariant(
                "cycle vertex has no arc leaving its cycle",
                emit_digraph6(g),
            )
        })?;
    loop {
        if let Some(&o) = g.out_neighbours(current).iter().find(|&&o| in2(o)) {
            return mixed(current, o);
        }
        visited[current] = true;
        let next = *g
            .out_neighbours(current)
            .iter()
            .find(|&&o| out2(o) && !visited[o])
            .ok_or_else(|| {
                Error::invariant(
                    "directed walk in the out-degree-2 class closed up without \
                     meeting an in-degree-2 vertex",
                    emit_digraph6(g),
                )
            })?;
        current = next;
    }
}

/// The third neighbour of `v`, i.e. the one distinct from `a` and `b`.
fn third_neighbour(g: &OrientedGraph, v: usize, a: usize, b: usize) -> usize {
    *g.neighbours(v)
        .iter()
        .find(|&&w| w != a && w != b)
        .expect("cubic vertices have three distinct neighbours")
}

/// Colours a connected cubic orientation without sources and sinks whose
/// underlying graph contains a triangle. One triangle arc uv is removed,
/// the rest is mapped into QR_7, and the map is repaired: either a single
/// vertex moves to the extra colour 7, or the triangle is recoloured
/// through the fixed table of arc pairs and their cycle completions.
pub fn colour_with_triangle(
    g: &OrientedGraph,
) -> Result<(VertexColouring, EightColouringCertificate)> {
    require(g.is_connected(), "graph is not connected")?;
    require_cubic(g)?;
    require_no_source_or_sink(g)?;
    let triangles = g.underlying().triangles();
    let &(a, b, c) = triangles
        .first()
        .ok_or_else(|| Error::precondition("underlying graph has no triangle"))?;

    // Orient the roles: for a directed triangle any arc serves as (u, v);
    // otherwise w is the vertex dominated by both others.
    let tri_arcs: Vec<(usize, usize)> = [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)]
        .into_iter()
        .filter(|&(s, t)| g.has_arc(s, t))
        .collect();
    debug_assert_eq!(tri_arcs.len(), 3);
    let in_deg_within = |v: usize| tri_arcs.iter().filter(|&&(_, t)| t == v).count();
    let directed_cycle = [a, b, c].iter().all(|&v| in_deg_within(v) == 1);
    let (u, v, w) = if directed_cycle {
        let &(u, v) = tri_arcs
            .iter()
            .min()
            .expect("triangle has arcs");
        let w = [a, b, c].into_iter().find(|&t| t != u && t != v).unwrap();
        (u, v, w)
    } else {
        let w = [a, b, c]
            .into_iter()
            .find(|&t| in_deg_within(t) == 2)
            .expect("non-cyclic triangle orientation has a dominated vertex");
        let &(u, v) = tri_arcs
            .iter()
            .find(|&&(s, t)| s != w && t != w)
            .expect("triangle has an arc avoiding w");
        (u, v, w)
    };
    let case = EightCase::Triangle { u, v, w };

    let reduced = g.without_arc(u, v)?;
    if !reduced.is_connected() {
        return Err(Error::invariant(
            "removing a triangle arc disconnected the graph",
            emit_digraph6(g),
        ));
    }
    let mut phi = qr7_map_guaranteed(g, &reduced, &PinSet::new(), "triangle branch")?;
    let t = qr7();

    if phi[u] == phi[v] {
        phi[u] = 7;
        return finish(g, phi, case);
    }
    if t.has_arc(phi[u], phi[v]) {
        // The deleted arc is already respected.
        return finish(g, phi, case);
    }
    // Normalize so that phi(v) = 0 and phi(u) = 1.
    let sigma = normalize_arc(7, (phi[v], phi[u]), (0, 1))?;
    for image in phi.iter_mut() {
        *image = sigma.apply(*image);
    }
    debug_assert_eq!((phi[v], phi[u]), (0, 1));

    let u_third = third_neighbour(g, u, v, w);
    if g.has_arc(u, u_third) || phi[u_third] != 0 {
        phi[u] = 7;
        return finish(g, phi, case);
    }
    let v_third = third_neighbour(g, v, u, w);
    if g.has_arc(v_third, v) || phi[v_third] != 1 {
        phi[v] = 7;
        return finish(g, phi, case);
    }

    let w_third = third_neighbour(g, w, u, v);
    let pairs = [(2, 4), (2, 6), (4, 6)];
    if directed_cycle {
        // u -> v -> w -> u: map the triangle onto a directed triangle of
        // QR_7 whose third vertex also respects the w--w' arc.
        for (pu, pv) in pairs {
            for pw in cycle_completions(&t, (pu, pv))? {
                let fits = if g.has_arc(w, w_third) {
                    t.has_arc(pw, phi[w_third])
                } else {
                    t.has_arc(phi[w_third], pw)
                };
                if fits {
                    phi[u] = pu;
                    phi[v] = pv;
                    phi[w] = pw;
                    return finish(g, phi, case);
                }
            }
        }
    } else {
        // u -> w and v -> w: choose the pair dodging w's other neighbour
        // and park w on the extra colour.
        debug_assert!(g.has_arc(w, w_third), "w has in-degree 2 and no sink exists");
        for (pu, pv) in pairs {
            if phi[w_third] != pu && phi[w_third] != pv {
                phi[u] = pu;
                phi[v] = pv;
                phi[w] = 7;
                return finish(g, phi, case);
            }
        }
    }
    Err(Error::invariant(
        "triangle recolouring table exhausted",
        emit_digraph6(g),
    ))
}

/// Colours a connected cubic orientation without sources and sinks whose
/// underlying graph is triangle free. With a cut arc the two sides are
/// coloured independently with pinned endpoints; otherwise one vertex is
/// cut out, a replacement arc keeps its distance-2 constraint alive, and
/// the shrunken graph maps into QR_7.
pub fn colour_triangle_free(
    g: &OrientedGraph,
) -> Result<(VertexColouring, EightColouringCertificate)> {
    require(g.is_connected(), "graph is not connected")?;
    require_cubic(g)?;
    require_no_source_or_sink(g)?;
    let underlying = g.underlying();
    require(
        underlying.triangles().is_empty(),
        "underlying graph contains a triangle",
    )?;

    if let Some(&(a, b)) = underlying.bridges().first() {
        let arc = if g.has_arc(a, b) { (a, b) } else { (b, a) };
        return colour_across_cut_arc(g, arc);
    }

    let witness = alt_path_witness(g)?;
    let (x, u, y) = match witness {
        AltPathWitness::TwoSinkOutNeighbours {
            centre,
            out_neighbours,
        } => (centre, out_neighbours[0], out_neighbours[1]),
        AltPathWitness::MixedNeighbours {
            centre,
            out_neighbour,
            ..
        } => {
            let other = *g
                .out_neighbours(centre)
                .iter()
                .find(|&&o| o != out_neighbour)
                .expect("centre has out-degree 2");
            (centre, out_neighbour, other)
        }
    };
    let z = g.in_neighbours(x)[0];
    let v = g.out_neighbours(u)[0];
    let w = *g
        .in_neighbours(u)
        .iter()
        .find(|&&p| p != x)
        .expect("u has in-degree 2");
    debug_assert!(g.out_degree(x) == 2 && g.in_degree(u) == 2);
    debug_assert!(g.out_degree(z) == 2 || g.in_degree(y) == 2);
    if g.adjacent(y, z) {
        return Err(Error::invariant(
            "y and z adjacent in a triangle-free graph",
            emit_digraph6(g),
        ));
    }
    let case = EightCase::TriangleFreeSurgery { x, u, v, w, z, y };

    // Remove x, add the arc y -> z, relabel densely.
    let n = g.vertex_count();
    let relabel = |o: usize| if o < x { o } else { o - 1 };
    let mut arcs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .filter(|&&(s, t)| s != x && t != x)
        .map(|&(s, t)| (relabel(s), relabel(t)))
        .collect();
    arcs.push((relabel(y), relabel(z)));
    let shrunk = OrientedGraph::new(n - 1, &arcs)?;
    if !shrunk.is_connected() {
        return Err(Error::invariant(
            "surgery disconnected a bridgeless graph",
            emit_digraph6(g),
        ));
    }

    let local = qr7_map_guaranteed(g, &shrunk, &PinSet::single(relabel(v), 0), "surgery branch")?;
    let mut phi = vec![0usize; n];
    for o in 0..n {
        if o != x {
            phi[o] = local[relabel(o)];
        }
    }
    debug_assert_eq!(phi[v], 0);

    // Extend to x: both arcs z -> x and x -> y must land on arcs, i.e. x
    // completes the image of y -> z to a directed triangle; of the two
    // completions at least one avoids 0, which the 2-dipath x -> u -> v
    // needs once u moves to colour 7.
    let t = qr7();
    let completions = cycle_completions(&t, (phi[y], phi[z]))?;
    phi[x] = *completions
        .iter()
        .find(|&&p| p != 0)
        .ok_or_else(|| {
            Error::invariant(
                "both cycle completions collide with the pinned colour",
                emit_digraph6(g),
            )
        })?;
    phi[u] = 7;
    finish(g, phi, case)
}

fn colour_across_cut_arc(
    g: &OrientedGraph,
    arc: (usize, usize),
) -> Result<(VertexColouring, EightColouringCertificate)> {
    let (tail, head) = arc;
    let split = g.without_arc(tail, head)?;
    let comps = split.components();
    if comps.len() != 2 {
        return Err(Error::invariant(
            "cut arc removal did not split into two components",
            emit_digraph6(g),
        ));
    }
    let mut phi = vec![0usize; g.vertex_count()];
    for comp in comps {
        let (sub, back) = split.induced(&comp);
        let pin_on = if comp.binary_search(&tail).is_ok() {
            (comp.binary_search(&tail).unwrap(), 0)
        } else {
            (comp.binary_search(&head).unwrap(), 1)
        };
        let local = qr7_map_guaranteed(g, &sub, &PinSet::single(pin_on.0, pin_on.1), "cut-arc branch")?;
        for (new, &old) in back.iter().enumerate() {
            phi[old] = local[new];
        }
    }
    finish(g, phi, EightCase::TriangleFreeCutArc { arc })
}

/// Colours a connected cubic orientation that has a source or a sink by
/// direct exact search for an 8-colouring; such graphs always admit one.
pub fn colour_with_source_or_sink(
    g: &OrientedGraph,
) -> Result<(VertexColouring, EightColouringCertificate)> {
    require(g.is_connected(), "graph is not connected")?;
    require_cubic(g)?;
    require(
        !g.sources().is_empty() || !g.sinks().is_empty(),
        "graph has neither source nor sink",
    )?;
    match first_oriented_colouring(g, 8) {
        Some(colouring) => finish(g, colouring.assignment().to_vec(), EightCase::SourceOrSink),
        None => Err(Error::invariant(
            "connected cubic orientation with a source or sink admits no oriented 8-colouring",
            emit_digraph6(g),
        )),
    }
}

/// Oriented 8-colouring of any connected cubic orientation, dispatching
/// on sources/sinks, then triangles, then the triangle-free branch.
pub fn oriented_eight_colouring(
    g: &OrientedGraph,
) -> Result<(VertexColouring, EightColouringCertificate)> {
    require(g.is_connected(), "graph is not connected")?;
    require_cubic(g)?;
    if !g.sources().is_empty() || !g.sinks().is_empty() {
        colour_with_source_or_sink(g)
    } else if !g.underlying().triangles().is_empty() {
        colour_with_triangle(g)
    } else {
        colour_triangle_free(g)
    }
}
