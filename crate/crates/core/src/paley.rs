//! Paley tournaments on a prime number of vertices, their affine
//! automorphisms, and the small structural facts the colouring pipelines
//! lean on (arc transitivity, two cycle completions per arc).

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;

/// Complete oriented graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    graph: OrientedGraph,
}

impl Tournament {
    /// Wraps an oriented graph, checking completeness.
    pub fn new(graph: OrientedGraph) -> Result<Self> {
        let n = graph.vertex_count();
        for u in 0..n {
            for v in (u + 1)..n {
                if !graph.adjacent(u, v) {
                    return Err(Error::precondition(format!(
                        "tournament requires every pair adjacent; {u},{v} are not"
                    )));
                }
            }
        }
        Ok(Tournament { graph })
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn as_graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.graph.has_arc(u, v)
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        self.graph.out_neighbours(v)
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        self.graph.in_neighbours(v)
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(q: u64) -> Result<()> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::BadModulus(q));
    }
    Ok(())
}

/// Non-zero quadratic residues mod q, sorted.
pub fn quadratic_residues(q: u64) -> Vec<u64> {
    let mut rs: Vec<u64> = (1..q).map(|x| (x * x) % q).collect();
    rs.sort_unstable();
    rs.dedup();
    rs
}

/// The tournament on vertices 0..q-1 with an arc u -> v exactly when
/// v - u is a non-zero quadratic residue mod q. Requires q prime and
/// q = 3 (mod 4), which makes exactly one of v-u, u-v a residue.
pub fn paley_tournament(q: u64) -> Result<Tournament> {
    check_modulus(q)?;
    let residues = quadratic_residues(q);
    let is_residue = |d: u64| residues.binary_search(&d).is_ok();
    let n = q as usize;
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..q {
        for v in 0..q {
            if u != v && is_residue((q + v - u) % q) {
                arcs.push((u as usize, v as usize));
            }
        }
    }
    Tournament::new(OrientedGraph::new(n, &arcs)?)
}

/// Vertex map x -> a*x + b (mod q) with `a` a non-zero quadratic residue;
/// such maps permute the vertices of the Paley tournament and preserve its
/// arc relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineAutomorphism {
    pub q: u64,
    pub a: u64,
    pub b: u64,
}

impl AffineAutomorphism {
    pub fn apply(&self, x: usize) -> usize {
        ((self.a * x as u64 + self.b) % self.q) as usize
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 && self.b == 0
    }
}

fn preserves_arcs(t: &Tournament, f: &AffineAutomorphism) -> bool {
    t.as_graph()
        .arcs()
        .iter()
        .all(|&(u, v)| t.has_arc(f.apply(u), f.apply(v)))
}

/// All affine automorphisms x -> a*x + b with `a` a non-zero quadratic
/// residue, each verified against the arc relation by brute force. The
/// list has q*(q-1)/2 entries in (a, b) lexicographic order.
pub fn paley_automorphisms(q: u64) -> Result<Vec<AffineAutomorphism>> {
    let t = paley_tournament(q)?;
    let mut out = Vec::new();
    for a in quadratic_residues(q) {
        for b in 0..q {
            let f = AffineAutomorphism { q, a, b };
            assert!(
                preserves_arcs(&t, &f),
                "affine map with residue multiplier must preserve the Paley arc relation"
            );
            out.push(f);
        }
    }
    Ok(out)
}

fn mod_inverse(x: u64, q: u64) -> u64 {
    // q is prime, so x^(q-2) works for x != 0.
    let mut result = 1u64;
    let mut base = x % q;
    let mut exp = q - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    result
}

/// The automorphism carrying arc `from` onto arc `to`, solving
/// a*from + b = to componentwise. Both pairs must be arcs; for genuine
/// arcs the multiplier is automatically a residue (a ratio of residues).
pub fn normalize_arc(
    q: u64,
    from: (usize, usize),
    to: (usize, usize),
) -> Result<AffineAutomorphism> {
    let t = paley_tournament(q)?;
    for (u, v) in [from, to] {
        if !t.has_arc(u, v) {
            return Err(Error::NotAnArc(u, v));
        }
    }
    let diff = |p: (usize, usize)| (q + p.1 as u64 - p.0 as u64) % q;
    let a = diff(to) * mod_inverse(diff(from), q) % q;
    let b = (q + to.0 as u64 - a * from.0 as u64 % q) % q;
    let f = AffineAutomorphism { q, a, b };
    if quadratic_residues(q).binary_search(&a).is_err() {
        return Err(Error::invariant(
            format!("arc-normalizing multiplier {a} is not a residue mod {q}"),
            format!("from {from:?} to {to:?}"),
        ));
    }
    debug_assert_eq!(f.apply(from.0), to.0);
    debug_assert_eq!(f.apply(from.1), to.1);
    Ok(f)
}

/// Vertices x completing the arc (y, z) to a directed triangle x, y, z,
/// i.e. with z -> x and x -> y both arcs.
pub fn cycle_completions(t: &Tournament, arc: (usize, usize)) -> Result<Vec<usize>> {
    let (y, z) = arc;
    if !t.has_arc(y, z) {
        return Err(Error::NotAnArc(y, z));
    }
    let out: Vec<usize> = t
        .out_neighbours(z)
        .iter()
        .copied()
        .filter(|&x| t.has_arc(x, y))
        .collect();
    Ok(out)
}
