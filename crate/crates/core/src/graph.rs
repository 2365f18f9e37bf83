//! Oriented-graph and simple-graph representations with the structural
//! queries and colouring validators everything else is built on.
//!
//! Vertices are dense integers `0..n`. An oriented graph is a loopless
//! antisymmetric digraph: no `(v,v)` and never both `(u,v)` and `(v,u)`.

use crate::error::{Error, Result};

/// Loopless antisymmetric digraph with per-vertex in/out neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl OrientedGraph {
    /// Builds a graph from an arc list, rejecting loops, digons and
    /// duplicate arcs.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            if seen.contains(&(v, u)) {
                return Err(Error::DigonArc(v, u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateArc(u, v));
            }
            out[u].push(v);
            inn[v].push(u);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        let arcs: Vec<(usize, usize)> = seen.into_iter().collect();
        Ok(OrientedGraph { n, arcs, out, inn })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in sorted order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// Degree in the underlying simple graph.
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inn[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Adjacent in the underlying graph, in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Underlying-graph neighbours of `v`, sorted.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.out[v].iter().chain(self.inn[v].iter()).copied().collect();
        ns.sort_unstable();
        ns
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    /// Max degree <= 3 and some vertex of degree <= 2.
    pub fn is_properly_subcubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) <= 3) && (0..self.n).any(|v| self.degree(v) <= 2)
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.in_degree(v) == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.out_degree(v) == 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.underlying().is_connected()
    }

    /// Forgets orientation.
    pub fn underlying(&self) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|&(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        SimpleGraph::new(self.n, &edges).expect("underlying graph of an oriented graph is simple")
    }

    /// Same graph minus one arc.
    pub fn without_arc(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_arc(u, v) {
            return Err(Error::NotAnArc(u, v));
        }
        let arcs: Vec<(usize, usize)> =
            self.arcs.iter().copied().filter(|&a| a != (u, v)).collect();
        OrientedGraph::new(self.n, &arcs)
    }

    /// Connected components of the underlying graph, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.underlying().components()
    }

    /// Induced subgraph on `vertices` (which must be sorted and distinct),
    /// relabelled densely. Returns the subgraph and the map new -> old.
    pub fn induced(&self, vertices: &[usize]) -> (OrientedGraph, Vec<usize>) {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            old_to_new[old] = new;
        }
        let arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter(|&&(u, v)| old_to_new[u] != usize::MAX && old_to_new[v] != usize::MAX)
            .map(|&(u, v)| (old_to_new[u], old_to_new[v]))
            .collect();
        let g = OrientedGraph::new(vertices.len(), &arcs)
            .expect("induced subgraph of an oriented graph is oriented");
        (g, vertices.to_vec())
    }
}

/// Undirected loopless graph with symmetric adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::LoopArc(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::DuplicateArc(e.0, e.1));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let edges: Vec<(usize, usize)> = seen.into_iter().collect();
        Ok(SimpleGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (min, max) pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    pub fn is_complete(&self) -> bool {
        self.n <= 1 || self.is_regular(self.n - 1)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// All triangles as sorted triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            for &c in &self.adj[a] {
                if c > b && self.has_edge(b, c) {
                    out.push((a, b, c));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Bridges of the graph, as (min, max) pairs in sorted order.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut timer = 0usize;
        let mut out = Vec::new();
        // Iterative DFS; (vertex, parent, neighbour cursor) frames.
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (v, parent, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adj[v].len() {
                    let w = self.adj[v][*cursor];
                    *cursor += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push((p.min(v), p.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Total vertex -> colour assignment with its distinct-colour count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColouring {
    assignment: Vec<usize>,
    palette_size: usize,
}

impl VertexColouring {
    pub fn new(assignment: Vec<usize>) -> Self {
        let mut distinct: Vec<usize> = assignment.clone();
        distinct.sort_unstable();
        distinct.dedup();
        VertexColouring {
            palette_size: distinct.len(),
            assignment,
        }
    }

    pub fn colour(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Number of distinct colours used.
    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn max_colour(&self) -> Option<usize> {
        self.assignment.iter().copied().max()
    }
}

/// Outcome of validating a colouring against the oriented-colouring rules.
///
/// Both violation lists are exhaustive, not first-failure, so census
/// diagnostics can show everything that went wrong.
#[derive(Debug, Clone, Default)]
pub struct OrientedValidity {
    /// Arcs whose endpoints share a colour.
    pub adjacent_same_colour: Vec<(usize, usize)>,
    /// Pairs of distinct arcs (uv, xy) with c(u) = c(y) and c(v) = c(x).
    pub inconsistent_arc_pairs: Vec<((usize, usize), (usize, usize))>,
}

impl OrientedValidity {
    pub fn is_valid(&self) -> bool {
        self.adjacent_same_colour.is_empty() && self.inconsistent_arc_pairs.is_empty()
    }
}

/// Outcome of validating a colouring against the 2-dipath rules.
#[derive(Debug, Clone, Default)]
pub struct TwoDipathValidity {
    pub adjacent_same_colour: Vec<(usize, usize)>,
    /// 2-dipaths u -> v -> w whose ends share a colour.
    pub equal_end_dipaths: Vec<(usize, usize, usize)>,
}

impl TwoDipathValidity {
    pub fn is_valid(&self) -> bool {
        self.adjacent_same_colour.is_empty() && self.equal_end_dipaths.is_empty()
    }
}

fn check_total(g: &OrientedGraph, c: &VertexColouring) -> Result<()> {
    if c.len() != g.vertex_count() {
        return Err(Error::MissingVertexColour {
            got: c.len(),
            want: g.vertex_count(),
        });
    }
    Ok(())
}

/// Checks the two oriented-colouring conditions: adjacent vertices get
/// distinct colours, and all arcs between two colour classes point the
/// same way.
pub fn validate_oriented_colouring(
    g: &OrientedGraph,
    c: &VertexColouring,
) -> Result<OrientedValidity> {
    check_total(g, c)?;
    let mut report = OrientedValidity::default();
    for &(u, v) in g.arcs() {
        if c.colour(u) == c.colour(v) {
            report.adjacent_same_colour.push((u, v));
        }
    }
    let arcs = g.arcs();
    for (i, &(u, v)) in arcs.iter().enumerate() {
        for &(x, y) in arcs.iter().skip(i + 1) {
            if c.colour(u) == c.colour(y) && c.colour(v) == c.colour(x) {
                report.inconsistent_arc_pairs.push(((u, v), (x, y)));
            }
        }
    }
    Ok(report)
}

/// Checks the 2-dipath colouring conditions: adjacent vertices distinct,
/// and the ends of every 2-dipath distinct.
pub fn validate_two_dipath_colouring(
    g: &OrientedGraph,
    c: &VertexColouring,
) -> Result<TwoDipathValidity> {
    check_total(g, c)?;
    let mut report = TwoDipathValidity::default();
    for &(u, v) in g.arcs() {
        if c.colour(u) == c.colour(v) {
            report.adjacent_same_colour.push((u, v));
        }
    }
    for (u, v, w, _) in two_dipaths(g) {
        if c.colour(u) == c.colour(w) {
            report.equal_end_dipaths.push((u, v, w));
        }
    }
    Ok(report)
}

/// All 2-dipaths u -> v -> w, each flagged true when u and w are
/// non-adjacent in the underlying graph (an induced 2-dipath).
pub fn two_dipaths(g: &OrientedGraph) -> Vec<(usize, usize, usize, bool)> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        for &u in g.in_neighbours(v) {
            for &w in g.out_neighbours(v) {
                debug_assert_ne!(u, w, "antisymmetry forbids u = w in a 2-dipath");
                out.push((u, v, w, !g.adjacent(u, w)));
            }
        }
    }
    out
}

/// True when every vertex pair is adjacent or joined by a 2-dipath in
/// either direction; such graphs need as many colours as vertices.
pub fn is_oclique(g: &OrientedGraph) -> bool {
    let n = g.vertex_count();
    let mut covered = vec![false; n * n];
    for (u, _, w, _) in two_dipaths(g) {
        covered[u * n + w] = true;
        covered[w * n + u] = true;
    }
    for u in 0..n {
        for w in (u + 1)..n {
            if !g.adjacent(u, w) && !covered[u * n + w] {
                return false;
            }
        }
    }
    true
}

/// Aggregate of the structural predicates the colouring pipelines
/// dispatch on.
#[derive(Debug, Clone)]
pub struct StructuralProfile {
    /// Underlying-graph degree of each vertex, indexed by vertex.
    pub degrees: Vec<usize>,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub connected: bool,
    pub triangles: Vec<(usize, usize, usize)>,
    /// Arcs (tail, head) whose removal disconnects the graph.
    pub cut_arcs: Vec<(usize, usize)>,
    pub properly_subcubic: bool,
}

pub fn structural_profile(g: &OrientedGraph) -> StructuralProfile {
    let u = g.underlying();
    let cut_arcs = u
        .bridges()
        .into_iter()
        .map(|(a, b)| if g.has_arc(a, b) { (a, b) } else { (b, a) })
        .collect();
    StructuralProfile {
        degrees: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        sources: g.sources(),
        sinks: g.sinks(),
        connected: u.is_connected(),
        triangles: u.triangles(),
        cut_arcs,
        properly_subcubic: g.is_properly_subcubic(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::new(n, arcs).unwrap()
    }

    fn directed_cycle(n: usize) -> OrientedGraph {
        let arcs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &arcs)
    }

    #[test]
    fn build_single_arc() {
        let g = graph(2, &[(0, 1)]);
        assert_eq!(g.out_neighbours(0), &[1]);
        assert_eq!(g.in_neighbours(1), &[0]);
    }

    #[test]
    fn build_rejects_digon() {
        assert!(matches!(
            OrientedGraph::new(2, &[(0, 1), (1, 0)]),
            Err(Error::DigonArc(..))
        ));
    }

    #[test]
    fn build_rejects_loop() {
        assert!(matches!(
            OrientedGraph::new(3, &[(0, 0)]),
            Err(Error::LoopArc(0))
        ));
    }

    #[test]
    fn build_rejects_duplicate() {
        assert!(matches!(
            OrientedGraph::new(3, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateArc(0, 1))
        ));
    }

    #[test]
    fn oriented_validator_rejects_dipath_ends() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let c = VertexColouring::new(vec![0, 1, 0]);
        let report = validate_oriented_colouring(&g, &c).unwrap();
        assert!(!report.is_valid());
        assert_eq!(report.inconsistent_arc_pairs, vec![((0, 1), (1, 2))]);
    }

    #[test]
    fn oriented_validator_accepts_single_arc() {
        let g = graph(2, &[(0, 1)]);
        let c = VertexColouring::new(vec![0, 1]);
        assert!(validate_oriented_colouring(&g, &c).unwrap().is_valid());
    }

    #[test]
    fn oriented_validator_accepts_injective_triangle() {
        let g = directed_cycle(3);
        let c = VertexColouring::new(vec![0, 1, 2]);
        assert!(validate_oriented_colouring(&g, &c).unwrap().is_valid());
    }

    #[test]
    fn two_dipath_validator_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert!(!validate_two_dipath_colouring(&p3, &VertexColouring::new(vec![0, 1, 0]))
            .unwrap()
            .is_valid());
        assert!(validate_two_dipath_colouring(&p3, &VertexColouring::new(vec![0, 1, 2]))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn two_dipath_validator_rejects_c5_pattern() {
        // 3 -> 4 -> 0 is a 2-dipath and both ends get colour 0.
        let c5 = directed_cycle(5);
        let c = VertexColouring::new(vec![0, 1, 2, 0, 1]);
        let report = validate_two_dipath_colouring(&c5, &c).unwrap();
        assert!(!report.is_valid());
        assert!(report.equal_end_dipaths.contains(&(3, 4, 0)));
    }

    #[test]
    fn validator_requires_total_colouring() {
        let g = graph(3, &[(0, 1)]);
        let c = VertexColouring::new(vec![0, 1]);
        assert!(matches!(
            validate_oriented_colouring(&g, &c),
            Err(Error::MissingVertexColour { got: 2, want: 3 })
        ));
    }

    #[test]
    fn two_dipaths_of_p3_and_transitive_triangle() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(two_dipaths(&p3), vec![(0, 1, 2, true)]);
        let tt = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(two_dipaths(&tt), vec![(0, 1, 2, false)]);
    }

    #[test]
    fn two_dipaths_of_c5_all_induced() {
        let dips = two_dipaths(&directed_cycle(5));
        assert_eq!(dips.len(), 5);
        assert!(dips.iter().all(|&(_, _, _, induced)| induced));
    }

    #[test]
    fn oclique_examples() {
        assert!(is_oclique(&directed_cycle(5)));
        assert!(is_oclique(&directed_cycle(4)));
        assert!(is_oclique(&graph(3, &[(0, 1), (1, 2)])));
        // Path oriented inward: 0 -> 1 <- 2 has no 2-dipath joining 0 and 2.
        assert!(!is_oclique(&graph(3, &[(0, 1), (2, 1)])));
    }

    #[test]
    fn profile_of_k4_orientation() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        let p = structural_profile(&g);
        assert!(p.sources.is_empty());
        assert!(p.sinks.is_empty());
        assert!(p.connected);
        assert_eq!(p.triangles.len(), 4);
        assert!(p.cut_arcs.is_empty());
        assert!(!p.properly_subcubic);
    }

    #[test]
    fn profile_of_transitive_triangle() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let p = structural_profile(&g);
        assert_eq!(p.sources, vec![0]);
        assert_eq!(p.sinks, vec![2]);
        assert_eq!(p.triangles, vec![(0, 1, 2)]);
    }

    #[test]
    fn profile_disconnected() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert!(!structural_profile(&g).connected);
    }

    #[test]
    fn bridges_of_two_triangles_joined_by_edge() {
        let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        let g = SimpleGraph::new(6, &edges).unwrap();
        assert_eq!(g.bridges(), vec![(2, 3)]);
    }

    #[test]
    fn cut_arc_orientation_follows_graph() {
        let g = graph(4, &[(0, 1), (2, 1), (2, 3)]);
        let p = structural_profile(&g);
        assert_eq!(p.cut_arcs, vec![(0, 1), (2, 1), (2, 3)]);
    }
}
