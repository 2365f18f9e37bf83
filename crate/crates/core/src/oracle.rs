//! Brute-force exact references: oriented chromatic number, proper and
//! 2-dipath chromatic numbers, and maximum clique. These are the ground
//! truth the constructive pipelines are measured against, so they favour
//! simplicity and complete search over speed.

use crate::dipath::build_square;
use crate::error::{Error, Result};
use crate::graph::{
    validate_two_dipath_colouring, OrientedGraph, SimpleGraph, VertexColouring,
};

/// Size cap for the exact searches; they are exponential and meant for
/// desk-scale instances.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub vertex_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { vertex_limit: 14 }
    }
}

impl OracleConfig {
    pub fn with_limit(vertex_limit: usize) -> Self {
        OracleConfig { vertex_limit }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.vertex_limit {
            return Err(Error::LimitExceeded {
                n,
                limit: self.vertex_limit,
            });
        }
        Ok(())
    }
}

/// Exact invariant value with an optimal witness and the search effort.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub value: usize,
    pub witness: VertexColouring,
    /// For the oriented chromatic number: the arcs between colour classes
    /// induced by the witness (the target oriented graph).
    pub target_arcs: Option<Vec<(usize, usize)>>,
    pub nodes: u64,
}

/// Maximum clique size with a witness.
#[derive(Debug, Clone)]
pub struct CliqueResult {
    pub size: usize,
    pub vertices: Vec<usize>,
    pub nodes: u64,
}

// --- oriented colourings -------------------------------------------------

/// Relation state between two colour classes: unset, or all arcs point
/// one way. Encoded 0 / 1 (row -> col) / 2 (col -> row).
struct OrientedSearch<'a> {
    g: &'a OrientedGraph,
    k: usize,
    /// Assignment order: breadth-first from a highest-degree vertex, so
    /// each vertex is constrained by earlier ones as soon as possible.
    order: Vec<usize>,
    colours: Vec<Option<usize>>,
    rel: Vec<u8>,
    nodes: u64,
}

fn bfs_order(g: &OrientedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    loop {
        let root = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
        let Some(root) = root else { break };
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut ns = g.neighbours(v);
            ns.retain(|&w| !seen[w]);
            for &w in &ns {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

impl<'a> OrientedSearch<'a> {
    fn new(g: &'a OrientedGraph, k: usize) -> Self {
        OrientedSearch {
            g,
            k,
            order: bfs_order(g),
            colours: vec![None; g.vertex_count()],
            rel: vec![0u8; k * k],
            nodes: 0,
        }
    }

    /// Tries to record colour `c` for `v` against the class relation.
    /// Returns the relation cells set by this call for undo, or None on
    /// conflict.
    fn try_assign(&mut self, v: usize, c: usize) -> Option<Vec<usize>> {
        let mut touched = Vec::new();
        let k = self.k;
        let mut fail = false;
        for &u in self.g.in_neighbours(v) {
            if let Some(cu) = self.colours[u] {
                if cu == c || self.rel[cu * k + c] == 2 {
                    fail = true;
                    break;
                }
                if self.rel[cu * k + c] == 0 {
                    self.rel[cu * k + c] = 1;
                    self.rel[c * k + cu] = 2;
                    touched.push(cu * k + c);
                }
            }
        }
        if !fail {
            for &w in self.g.out_neighbours(v) {
                if let Some(cw) = self.colours[w] {
                    if cw == c || self.rel[c * k + cw] == 2 {
                        fail = true;
                        break;
                    }
                    if self.rel[c * k + cw] == 0 {
                        self.rel[c * k + cw] = 1;
                        self.rel[cw * k + c] = 2;
                        touched.push(c * k + cw);
                    }
                }
            }
        }
        if fail {
            self.undo(&touched);
            return None;
        }
        Some(touched)
    }

    fn undo(&mut self, touched: &[usize]) {
        let k = self.k;
        for &idx in touched {
            let (a, b) = (idx / k, idx % k);
            self.rel[idx] = 0;
            self.rel[b * k + a] = 0;
        }
    }

    /// Colour-class symmetry is broken by introducing new colours in
    /// ascending order.
    fn solve(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let top = (used + 1).min(self.k);
        for c in 0..top {
            self.nodes += 1;
            if let Some(touched) = self.try_assign(v, c) {
                self.colours[v] = Some(c);
                if self.solve(depth + 1, used.max(c + 1)) {
                    return true;
                }
                self.colours[v] = None;
                self.undo(&touched);
            }
        }
        false
    }
}

fn oriented_search(g: &OrientedGraph, k: usize, nodes: &mut u64) -> Option<Vec<usize>> {
    let mut s = OrientedSearch::new(g, k.max(1));
    let found = s.solve(0, 0);
    *nodes += s.nodes;
    found.then(|| s.colours.iter().map(|c| c.unwrap()).collect())
}

/// First oriented colouring with at most `k` colours, or None when no
/// such colouring exists. Deterministic; not necessarily minimal.
pub fn first_oriented_colouring(g: &OrientedGraph, k: usize) -> Option<VertexColouring> {
    if g.vertex_count() == 0 {
        return Some(VertexColouring::new(Vec::new()));
    }
    let mut nodes = 0;
    oriented_search(g, k, &mut nodes).map(VertexColouring::new)
}

/// Least k admitting an oriented k-colouring, by iterating k upwards with
/// a complete search at each size.
pub fn exact_oriented_chromatic(g: &OrientedGraph, cfg: &OracleConfig) -> Result<ExactResult> {
    let n = g.vertex_count();
    cfg.check(n)?;
    if n == 0 {
        return Ok(ExactResult {
            value: 0,
            witness: VertexColouring::new(Vec::new()),
            target_arcs: Some(Vec::new()),
            nodes: 0,
        });
    }
    let mut nodes = 0;
    for k in 1..=n {
        if let Some(assignment) = oriented_search(g, k, &mut nodes) {
            let mut target: Vec<(usize, usize)> = g
                .arcs()
                .iter()
                .map(|&(u, v)| (assignment[u], assignment[v]))
                .collect();
            target.sort_unstable();
            target.dedup();
            return Ok(ExactResult {
                value: k,
                witness: VertexColouring::new(assignment),
                target_arcs: Some(target),
                nodes,
            });
        }
    }
    unreachable!("an injective colouring always succeeds at k = n");
}

// --- proper colourings of simple graphs ----------------------------------

fn saturation_pick(sq: &SimpleGraph, colours: &[Option<usize>]) -> Option<usize> {
    let mut best: Option<(usize, usize, std::cmp::Reverse<usize>)> = None;
    let mut best_v = None;
    for v in 0..sq.vertex_count() {
        if colours[v].is_some() {
            continue;
        }
        let mut seen: Vec<usize> = sq
            .neighbours(v)
            .iter()
            .filter_map(|&w| colours[w])
            .collect();
        seen.sort_unstable();
        seen.dedup();
        let key = (seen.len(), sq.degree(v), std::cmp::Reverse(v));
        if best.is_none_or(|b| key > b) {
            best = Some(key);
            best_v = Some(v);
        }
    }
    best_v
}

fn k_colouring_search(
    sq: &SimpleGraph,
    k: usize,
    colours: &mut Vec<Option<usize>>,
    used: usize,
    remaining: usize,
    nodes: &mut u64,
) -> bool {
    if remaining == 0 {
        return true;
    }
    let v = saturation_pick(sq, colours).expect("an uncoloured vertex remains");
    let top = (used + 1).min(k);
    'colours: for c in 0..top {
        *nodes += 1;
        for &w in sq.neighbours(v) {
            if colours[w] == Some(c) {
                continue 'colours;
            }
        }
        colours[v] = Some(c);
        if k_colouring_search(sq, k, colours, used.max(c + 1), remaining - 1, nodes) {
            return true;
        }
        colours[v] = None;
    }
    false
}

/// First proper colouring with at most `k` colours (saturation-first
/// backtracking), or None when the graph is not k-colourable.
pub fn first_proper_colouring(sq: &SimpleGraph, k: usize) -> Option<VertexColouring> {
    let n = sq.vertex_count();
    if n == 0 {
        return Some(VertexColouring::new(Vec::new()));
    }
    let mut colours = vec![None; n];
    let mut nodes = 0;
    k_colouring_search(sq, k.max(1), &mut colours, 0, n, &mut nodes)
        .then(|| VertexColouring::new(colours.iter().map(|c| c.unwrap()).collect()))
}

/// Greedy saturation-first colouring; an upper bound witness.
pub fn greedy_colouring(sq: &SimpleGraph) -> VertexColouring {
    let n = sq.vertex_count();
    let mut colours: Vec<Option<usize>> = vec![None; n];
    while let Some(v) = saturation_pick(sq, &colours) {
        let mut c = 0;
        while sq.neighbours(v).iter().any(|&w| colours[w] == Some(c)) {
            c += 1;
        }
        colours[v] = Some(c);
    }
    VertexColouring::new(colours.iter().map(|c| c.unwrap()).collect())
}

/// Exact chromatic number: clique lower bound, greedy upper bound, then
/// complete k-colourability searches from the bottom up.
pub fn exact_chromatic(sq: &SimpleGraph, cfg: &OracleConfig) -> Result<ExactResult> {
    let n = sq.vertex_count();
    cfg.check(n)?;
    if n == 0 {
        return Ok(ExactResult {
            value: 0,
            witness: VertexColouring::new(Vec::new()),
            target_arcs: None,
            nodes: 0,
        });
    }
    let clique = max_clique(sq, cfg)?;
    let greedy = greedy_colouring(sq);
    let ub = greedy.palette_size();
    let mut nodes = clique.nodes;
    for k in clique.size..ub {
        let mut colours = vec![None; n];
        if k_colouring_search(sq, k, &mut colours, 0, n, &mut nodes) {
            return Ok(ExactResult {
                value: k,
                witness: VertexColouring::new(colours.iter().map(|c| c.unwrap()).collect()),
                target_arcs: None,
                nodes,
            });
        }
    }
    Ok(ExactResult {
        value: ub,
        witness: greedy,
        target_arcs: None,
        nodes,
    })
}

/// Exact 2-dipath chromatic number, via the chromatic number of the
/// square; the witness is re-checked against the 2-dipath validator.
pub fn exact_two_dipath_chromatic(g: &OrientedGraph, cfg: &OracleConfig) -> Result<ExactResult> {
    let result = exact_chromatic(&build_square(g), cfg)?;
    let report = validate_two_dipath_colouring(g, &result.witness)?;
    debug_assert!(
        report.is_valid(),
        "a proper colouring of the square must be a 2-dipath colouring"
    );
    Ok(result)
}

// --- maximum clique -------------------------------------------------------

struct CliqueSearch {
    adj: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl CliqueSearch {
    fn expand(&mut self, mut candidates: u64) {
        while candidates != 0 {
            if self.current.len() + candidates.count_ones() as usize <= self.best.len() {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.nodes += 1;
            self.current.push(v);
            let next = candidates & self.adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
        }
    }
}

/// Exact maximum clique by branch and bound over bitset candidate sets.
pub fn max_clique(sq: &SimpleGraph, cfg: &OracleConfig) -> Result<CliqueResult> {
    let n = sq.vertex_count();
    cfg.check(n)?;
    assert!(n <= 64, "clique search is limited to 64 vertices");
    if n == 0 {
        return Ok(CliqueResult {
            size: 0,
            vertices: Vec::new(),
            nodes: 0,
        });
    }
    let mut adj = vec![0u64; n];
    for &(a, b) in sq.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = CliqueSearch {
        adj,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
    };
    s.expand(full);
    s.best.sort_unstable();
    Ok(CliqueResult {
        size: s.best.len(),
        vertices: s.best,
        nodes: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_oriented_colouring;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::new(n, arcs).unwrap()
    }

    fn directed_cycle(n: usize) -> OrientedGraph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn chi_o_of_small_graphs() {
        assert_eq!(
            exact_oriented_chromatic(&graph(2, &[(0, 1)]), &cfg()).unwrap().value,
            2
        );
        assert_eq!(exact_oriented_chromatic(&directed_cycle(5), &cfg()).unwrap().value, 5);
        let tt4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_oriented_chromatic(&tt4, &cfg()).unwrap().value, 4);
    }

    #[test]
    fn chi_o_witness_is_valid_and_minimal_shape() {
        let g = directed_cycle(5);
        let r = exact_oriented_chromatic(&g, &cfg()).unwrap();
        assert!(validate_oriented_colouring(&g, &r.witness).unwrap().is_valid());
        assert_eq!(r.witness.palette_size(), r.value);
        let arcs = r.target_arcs.unwrap();
        // The induced target relation is antisymmetric and loopless.
        for &(a, b) in &arcs {
            assert_ne!(a, b);
            assert!(!arcs.contains(&(b, a)));
        }
    }

    #[test]
    fn chi_of_simple_graphs() {
        let k4 = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(exact_chromatic(&k4, &cfg()).unwrap().value, 4);
        let c5 = SimpleGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(exact_chromatic(&c5, &cfg()).unwrap().value, 3);
    }

    #[test]
    fn chi_of_petersen_is_three() {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let inner = [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)];
        let edges: Vec<(usize, usize)> =
            outer.iter().chain(&spokes).chain(&inner).copied().collect();
        let petersen = SimpleGraph::new(10, &edges).unwrap();
        assert_eq!(exact_chromatic(&petersen, &cfg()).unwrap().value, 3);
    }

    #[test]
    fn chi_2d_examples() {
        assert_eq!(exact_two_dipath_chromatic(&directed_cycle(5), &cfg()).unwrap().value, 5);
        assert_eq!(
            exact_two_dipath_chromatic(&graph(3, &[(0, 1), (1, 2)]), &cfg()).unwrap().value,
            3
        );
        let tt4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_two_dipath_chromatic(&tt4, &cfg()).unwrap().value, 4);
    }

    #[test]
    fn clique_examples() {
        let k4 = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(max_clique(&k4, &cfg()).unwrap().size, 4);
        let c5 = SimpleGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(max_clique(&c5, &cfg()).unwrap().size, 2);
        let sq = build_square(&directed_cycle(5));
        assert_eq!(max_clique(&sq, &cfg()).unwrap().size, 5);
    }

    #[test]
    fn limit_is_enforced() {
        let g = directed_cycle(5);
        let tight = OracleConfig::with_limit(4);
        assert!(matches!(
            exact_oriented_chromatic(&g, &tight),
            Err(Error::LimitExceeded { n: 5, limit: 4 })
        ));
    }

    #[test]
    fn oclique_forces_order_many_colours() {
        // Oriented cliques need as many colours as vertices.
        use crate::graph::is_oclique;
        let c5 = directed_cycle(5);
        assert!(is_oclique(&c5));
        assert_eq!(exact_oriented_chromatic(&c5, &cfg()).unwrap().value, 5);
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert!(is_oclique(&p3));
        assert_eq!(exact_oriented_chromatic(&p3, &cfg()).unwrap().value, 3);
    }
}
