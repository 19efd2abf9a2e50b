use crate::error::DomainError;
use crate::hypergraph::{triple, Hypergraph3, Triple, Vertex};

/// Where a witness edge lives: an index into the host graph's edge list, or
/// an explicit triple for an edge that was only hypothetically added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRef {
    Stored(usize),
    Added(Triple),
}

/// A found copy of the loose triangle: three edges, pairwise meeting in one
/// vertex, spanning six vertices. The three shared vertices are the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWitness {
    pub refs: [EdgeRef; 3],
    pub edges: [Triple; 3],
    pub core: [Vertex; 3],
    pub all_vertices: [Vertex; 6],
}

impl TriangleWitness {
    fn assemble(refs: [EdgeRef; 3], edges: [Triple; 3]) -> Option<TriangleWitness> {
        let mut core = Vec::with_capacity(3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let shared: Vec<Vertex> = edges[i]
                .iter()
                .copied()
                .filter(|v| edges[j].contains(v))
                .collect();
            if shared.len() != 1 {
                return None;
            }
            core.push(shared[0]);
        }
        let mut c = [core[0], core[1], core[2]];
        c.sort_unstable();
        if c[0] == c[1] || c[1] == c[2] {
            return None;
        }
        let mut all: Vec<Vertex> = edges.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 6 {
            return None;
        }
        Some(TriangleWitness {
            refs,
            edges,
            core: c,
            all_vertices: [all[0], all[1], all[2], all[3], all[4], all[5]],
        })
    }

    /// Independent re-validation: structural invariants plus membership of
    /// every referenced edge in `g` (or equality with the declared added
    /// triple).
    pub fn validate(&self, g: &Hypergraph3, added: Option<Triple>) -> Result<(), String> {
        for (r, e) in self.refs.iter().zip(self.edges.iter()) {
            match r {
                EdgeRef::Stored(i) => {
                    if g.edges().get(*i) != Some(e) {
                        return Err(format!("stored edge {} does not match {:?}", i, e));
                    }
                }
                EdgeRef::Added(t) => {
                    if t != e {
                        return Err("added ref disagrees with edge triple".into());
                    }
                    if Some(*t) != added.map(|a| triple(a[0], a[1], a[2])) {
                        return Err("witness adds an edge the caller did not".into());
                    }
                    if g.contains_edge(*t) {
                        return Err("added edge already present in the graph".into());
                    }
                }
            }
        }
        let rebuilt = Self::assemble(self.refs, self.edges)
            .ok_or("edges do not form a loose triangle")?;
        if rebuilt.core != self.core || rebuilt.all_vertices != self.all_vertices {
            return Err("core or vertex set inconsistent with the edges".into());
        }
        for &c in &self.core {
            let count = self.edges.iter().filter(|e| e.contains(&c)).count();
            if count != 2 {
                return Err(format!("core vertex {} lies in {} edges, not 2", c, count));
            }
        }
        Ok(())
    }
}

/// Finds a loose triangle in `g`, if any; deterministic (lexicographically
/// least edge-index triple).
///
/// Scans edge pairs sharing exactly one vertex in index order and completes
/// the third edge through the pair index, so the cost tracks the number of
/// link candidates rather than the cube of the edge count.
pub fn find_triangle(g: &Hypergraph3) -> Option<TriangleWitness> {
    let m = g.edge_count();
    for a in 0..m {
        let ea = g.edge(a);
        for b in (a + 1)..m {
            let eb = g.edge(b);
            let shared: Vec<Vertex> = ea.iter().copied().filter(|v| eb.contains(v)).collect();
            if shared.len() != 1 {
                continue;
            }
            let z = shared[0];
            let mut best: Option<usize> = None;
            for &u in ea.iter().filter(|&&u| u != z) {
                for &v in eb.iter().filter(|&&v| v != z) {
                    for &c in g.pair_edges(u, v) {
                        if c <= b {
                            continue;
                        }
                        let ec = g.edge(c);
                        // third vertex of ec must avoid both ea and eb
                        if ec
                            .iter()
                            .all(|&w| w == u || w == v || (!ea.contains(&w) && !eb.contains(&w)))
                        {
                            best = Some(best.map_or(c, |x: usize| x.min(c)));
                        }
                    }
                }
            }
            if let Some(c) = best {
                return TriangleWitness::assemble(
                    [EdgeRef::Stored(a), EdgeRef::Stored(b), EdgeRef::Stored(c)],
                    [ea, eb, g.edge(c)],
                );
            }
        }
    }
    None
}

/// Independent oracle: scans all edge triples. Intended for small graphs.
pub fn find_triangle_bruteforce(g: &Hypergraph3) -> Option<TriangleWitness> {
    let m = g.edge_count();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                if let Some(w) = TriangleWitness::assemble(
                    [EdgeRef::Stored(a), EdgeRef::Stored(b), EdgeRef::Stored(c)],
                    [g.edge(a), g.edge(b), g.edge(c)],
                ) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Would adding the non-edge `e` to `g` create a loose triangle through `e`?
///
/// Checks, for each of the three vertex pairs of `e` in ascending order,
/// whether `g` has a link between them avoiding the remaining vertex; never
/// materializes `g + e`.
pub fn creates_triangle(
    g: &Hypergraph3,
    e: Triple,
) -> Result<Option<TriangleWitness>, DomainError> {
    for &v in &e {
        if v >= g.n() {
            return Err(DomainError::VertexOutOfRange { v, n: g.n() });
        }
    }
    let s = triple(e[0], e[1], e[2]);
    if s[0] == s[1] || s[1] == s[2] {
        return Err(DomainError::RepeatedVertex(e));
    }
    if g.contains_edge(s) {
        return Err(DomainError::AlreadyEdge(s));
    }
    Ok(creates_triangle_unchecked(g, s))
}

/// Same as [`creates_triangle`] with preconditions assumed; used by the
/// search inner loops.
pub(crate) fn creates_triangle_unchecked(g: &Hypergraph3, s: Triple) -> Option<TriangleWitness> {
    for (u, v, w) in [(s[0], s[1], s[2]), (s[0], s[2], s[1]), (s[1], s[2], s[0])] {
        if let Some(link) = g.link_scan(u, v, &[w]) {
            return TriangleWitness::assemble(
                [
                    EdgeRef::Added(s),
                    EdgeRef::Stored(link.first_edge),
                    EdgeRef::Stored(link.second_edge),
                ],
                [s, g.edge(link.first_edge), g.edge(link.second_edge)],
            );
        }
    }
    None
}
