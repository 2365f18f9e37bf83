//! Instance generation: seeded random cubic orientations via the pairing
//! model, exhaustive orientation streams, and the bundled catalogue of
//! connected cubic graphs on 4, 6 and 8 vertices.
//!
//! The catalogue files were produced by `enumerate_connected_cubic`, the
//! brute-force enumerator below (all labelled 3-regular graphs, connected
//! filter, isomorphism rejection); tests regenerate them and compare, so
//! the bundled data never drifts from the enumerator.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codec::{emit_graph6, parse_graph6};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, SimpleGraph};

const CUBIC_N4: &str = include_str!("../data/cubic04.g6");
const CUBIC_N6: &str = include_str!("../data/cubic06.g6");
const CUBIC_N8: &str = include_str!("../data/cubic08.g6");

/// Connected 3-regular simple graph on `n` vertices with every edge
/// oriented by a seeded coin flip; deterministic for fixed (n, seed).
pub fn random_cubic_orientation(n: usize, seed: u64) -> Result<OrientedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let underlying = random_cubic_graph_with(n, &mut rng)?;
    debug_assert!(underlying.is_regular(3));
    orient_with(&underlying, &mut rng)
}

fn random_cubic_graph_with(n: usize, rng: &mut ChaCha8Rng) -> Result<SimpleGraph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::BadOrder(n));
    }
    // Pairing model: three points per vertex, random perfect matching on
    // points, rejecting loops, repeated edges and disconnected outcomes.
    let mut points: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    loop {
        points.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * n / 2);
        let mut ok = true;
        for pair in points.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || edges.contains(&(a, b)) {
                ok = false;
                break;
            }
            edges.push((a, b));
        }
        if !ok {
            continue;
        }
        let g = SimpleGraph::new(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

fn orient_with(sq: &SimpleGraph, rng: &mut ChaCha8Rng) -> Result<OrientedGraph> {
    let arcs: Vec<(usize, usize)> = sq
        .edges()
        .iter()
        .map(|&(u, v)| if rng.gen::<bool>() { (u, v) } else { (v, u) })
        .collect();
    OrientedGraph::new(sq.vertex_count(), &arcs)
}

/// Streams all 2^|E| orientations of a simple graph in lexicographic
/// edge-flip order: bit j of the counter flips edge j of the sorted edge
/// list.
pub fn all_orientations(sq: &SimpleGraph) -> Orientations {
    assert!(
        sq.edge_count() < 63,
        "orientation streams are limited to 62 edges"
    );
    Orientations {
        n: sq.vertex_count(),
        edges: sq.edges().to_vec(),
        next: 0,
        total: 1u64 << sq.edge_count(),
    }
}

pub struct Orientations {
    n: usize,
    edges: Vec<(usize, usize)>,
    next: u64,
    total: u64,
}

impl Iterator for Orientations {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next >= self.total {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let arcs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(j, &(u, v))| {
                if mask >> j & 1 == 0 {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        Some(OrientedGraph::new(self.n, &arcs).expect("orientation of a simple graph is oriented"))
    }
}

impl ExactSizeIterator for Orientations {
    fn len(&self) -> usize {
        (self.total - self.next) as usize
    }
}

/// The bundled connected cubic graphs of the given order (4, 6 or 8),
/// parsed from the fixture files, in graph6 order.
pub fn bundled_cubic_catalogue(n: usize) -> Result<Vec<SimpleGraph>> {
    let text = match n {
        4 => CUBIC_N4,
        6 => CUBIC_N6,
        8 => CUBIC_N8,
        _ => {
            return Err(Error::precondition(format!(
                "no bundled cubic catalogue for order {n}; bundled orders are 4, 6, 8"
            )))
        }
    };
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_graph6)
        .collect()
}

/// Brute-force enumeration of connected cubic graphs on `n` vertices up
/// to isomorphism: generate every labelled 3-regular graph by choosing,
/// vertex by vertex, the neighbours among higher-indexed vertices, filter
/// for connectivity, and reject isomorphic duplicates. Results are sorted
/// by graph6 string.
pub fn enumerate_connected_cubic(n: usize) -> Result<Vec<SimpleGraph>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::BadOrder(n));
    }
    let mut reps: Vec<(Vec<Vec<usize>>, SimpleGraph)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut deg = vec![0usize; n];
    fill_vertex(0, n, &mut deg, &mut edges, &mut reps);
    let mut out: Vec<(String, SimpleGraph)> = reps
        .into_iter()
        .map(|(_, g)| (emit_graph6(&g), g))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

fn fill_vertex(
    v: usize,
    n: usize,
    deg: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    reps: &mut Vec<(Vec<Vec<usize>>, SimpleGraph)>,
) {
    if v == n {
        let g = SimpleGraph::new(n, edges).expect("enumerator emits simple edge sets");
        if !g.is_connected() {
            return;
        }
        let inv = distance_profile(&g);
        for (rep_inv, rep) in reps.iter() {
            if *rep_inv == inv && isomorphic(&g, rep) {
                return;
            }
        }
        reps.push((inv, g));
        return;
    }
    let need = 3 - deg[v];
    let candidates: Vec<usize> = ((v + 1)..n).filter(|&w| deg[w] < 3).collect();
    if candidates.len() < need {
        return;
    }
    choose_neighbours(v, n, &candidates, need, 0, deg, edges, reps);
}

#[allow(clippy::too_many_arguments)]
fn choose_neighbours(
    v: usize,
    n: usize,
    candidates: &[usize],
    need: usize,
    start: usize,
    deg: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    reps: &mut Vec<(Vec<Vec<usize>>, SimpleGraph)>,
) {
    if need == 0 {
        fill_vertex(v + 1, n, deg, edges, reps);
        return;
    }
    if candidates.len() - start < need {
        return;
    }
    for i in start..candidates.len() {
        let w = candidates[i];
        if deg[w] == 3 {
            continue;
        }
        deg[v] += 1;
        deg[w] += 1;
        edges.push((v, w));
        choose_neighbours(v, n, candidates, need - 1, i + 1, deg, edges, reps);
        edges.pop();
        deg[v] -= 1;
        deg[w] -= 1;
    }
}

/// Sorted multiset of per-vertex BFS distance profiles; an isomorphism
/// invariant used to avoid most pairwise isomorphism tests.
fn distance_profile(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut profiles = Vec::with_capacity(n);
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist.sort_unstable();
        profiles.push(dist);
    }
    profiles.sort();
    profiles
}

/// Backtracking isomorphism test for small graphs.
pub fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(a, b, 0, &mut map, &mut used)
}

fn extend_iso(
    a: &SimpleGraph,
    b: &SimpleGraph,
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.vertex_count();
    if v == n {
        return true;
    }
    'images: for img in 0..n {
        if used[img] || a.degree(v) != b.degree(img) {
            continue;
        }
        for (w, &mw) in map.iter().enumerate().take(v) {
            if a.has_edge(v, w) != b.has_edge(img, mw) {
                continue 'images;
            }
        }
        map[v] = img;
        used[img] = true;
        if extend_iso(a, b, v + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[img] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_cubic_rejects_bad_orders() {
        assert!(matches!(random_cubic_orientation(5, 1), Err(Error::BadOrder(5))));
        assert!(matches!(random_cubic_orientation(2, 1), Err(Error::BadOrder(2))));
    }

    #[test]
    fn random_cubic_n4_is_k4() {
        let g = random_cubic_orientation(4, 7).unwrap();
        assert!(g.is_cubic());
        assert!(g.underlying().is_complete());
    }

    #[test]
    fn random_cubic_is_deterministic() {
        use crate::codec::emit_digraph6;
        let a = random_cubic_orientation(10, 42).unwrap();
        let b = random_cubic_orientation(10, 42).unwrap();
        assert_eq!(emit_digraph6(&a), emit_digraph6(&b));
        let c = random_cubic_orientation(10, 43).unwrap();
        assert!(a.is_cubic() && c.is_cubic());
    }

    #[test]
    fn orientation_counts() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(all_orientations(&k4).count(), 64);
        let single = SimpleGraph::new(2, &[(0, 1)]).unwrap();
        let both: Vec<_> = all_orientations(&single).collect();
        assert_eq!(both.len(), 2);
        assert_eq!(both[0].arcs(), &[(0, 1)]);
        assert_eq!(both[1].arcs(), &[(1, 0)]);
    }

    #[test]
    fn catalogue_counts() {
        assert_eq!(bundled_cubic_catalogue(4).unwrap().len(), 1);
        assert_eq!(bundled_cubic_catalogue(6).unwrap().len(), 2);
        assert_eq!(bundled_cubic_catalogue(8).unwrap().len(), 5);
        assert!(bundled_cubic_catalogue(10).is_err());
        // 2^9 orientations of each 6-vertex catalogue entry.
        for sq in bundled_cubic_catalogue(6).unwrap() {
            assert_eq!(all_orientations(&sq).len(), 512);
        }
    }

    #[test]
    fn enumerator_matches_bundled_catalogues() {
        for n in [4usize, 6, 8] {
            let derived: Vec<String> = enumerate_connected_cubic(n)
                .unwrap()
                .iter()
                .map(emit_graph6)
                .collect();
            let bundled: Vec<String> = bundled_cubic_catalogue(n)
                .unwrap()
                .iter()
                .map(emit_graph6)
                .collect();
            assert_eq!(derived, bundled);
        }
    }

    #[test]
    fn isomorphism_distinguishes_k33_from_prism() {
        let cat = bundled_cubic_catalogue(6).unwrap();
        assert!(!isomorphic(&cat[0], &cat[1]));
        assert!(isomorphic(&cat[0], &cat[0]));
    }
}
