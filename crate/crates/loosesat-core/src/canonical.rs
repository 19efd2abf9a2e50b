use std::cmp::Ordering;

use crate::hypergraph::{Hypergraph3, Triple};

/// Exact canonical form: equal byte strings iff the hypergraphs are
/// isomorphic.
///
/// Vertices are first partitioned by iterated refinement on
/// (degree, sorted codegree multiset) and edge class patterns; the residual
/// permutation group is then searched by backtracking for the labeling with
/// the minimal edge-list encoding. The output encodes `n` and the relabeled
/// sorted edge list.
pub fn canonical_form(g: &Hypergraph3) -> Vec<u8> {
    assert!(g.n() <= u16::MAX as usize, "canonical form supports n <= 65535");
    let classes = refine(g);
    let best = Searcher::new(g, &classes).run();
    let mut edges: Vec<Triple> = best
        .iter()
        .map(|t| [t[2] as usize, t[1] as usize, t[0] as usize])
        .collect();
    edges.sort_unstable();
    let mut out = Vec::with_capacity(8 + edges.len() * 6);
    out.extend_from_slice(&(g.n() as u32).to_le_bytes());
    out.extend_from_slice(&(edges.len() as u32).to_le_bytes());
    for e in edges {
        for v in e {
            out.extend_from_slice(&(v as u16).to_le_bytes());
        }
    }
    out
}

/// True iff the two hypergraphs are isomorphic (compares canonical forms).
pub fn isomorphic(a: &Hypergraph3, b: &Hypergraph3) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Iterated partition refinement. Returns per-vertex class ids; ids are
/// ranks of canonically sorted invariants, so they are isomorphism-stable.
fn refine(g: &Hypergraph3) -> Vec<usize> {
    let n = g.n();
    let mut inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut cods: Vec<usize> = (0..n)
                .filter(|&u| u != v)
                .map(|u| g.codeg(u, v))
                .filter(|&c| c > 0)
                .collect();
            cods.sort_unstable();
            (g.deg(v), cods)
        })
        .collect();
    let mut class = rank(&mut inv);
    loop {
        let before = count_classes(&class);
        let mut sig: Vec<(usize, Vec<[usize; 2]>)> = (0..n)
            .map(|v| {
                let mut pats: Vec<[usize; 2]> = g
                    .incident_edges(v)
                    .iter()
                    .map(|&ei| {
                        let e = g.edge(ei);
                        let mut other: Vec<usize> = e
                            .iter()
                            .filter(|&&u| u != v)
                            .map(|&u| class[u])
                            .collect();
                        other.sort_unstable();
                        [other[0], other[1]]
                    })
                    .collect();
                pats.sort_unstable();
                (class[v], pats)
            })
            .collect();
        class = rank(&mut sig);
        if count_classes(&class) == before {
            return class;
        }
    }
}

fn rank<T: Ord + Clone>(vals: &mut [T]) -> Vec<usize> {
    let mut sorted: Vec<T> = vals.to_vec();
    sorted.sort();
    sorted.dedup();
    vals.iter()
        .map(|v| sorted.binary_search(v).unwrap())
        .collect()
}

fn count_classes(class: &[usize]) -> usize {
    class.iter().max().map_or(0, |m| m + 1)
}

struct Searcher<'a> {
    g: &'a Hypergraph3,
    pos_class: Vec<usize>,
    members: Vec<Vec<usize>>,
    used: Vec<bool>,
    pos_of: Vec<Option<u16>>,
    current: Vec<[u16; 3]>,
    best: Option<Vec<[u16; 3]>>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Hypergraph3, class: &[usize]) -> Self {
        let nc = count_classes(class);
        let mut members = vec![Vec::new(); nc];
        for (v, &c) in class.iter().enumerate() {
            members[c].push(v);
        }
        // High-invariant classes get the low positions so that edges are
        // completed early and prefix pruning bites; degree-0 vertices land
        // in the tail, where assignment order is irrelevant.
        members.reverse();
        let mut pos_class = Vec::with_capacity(g.n());
        for (c, ms) in members.iter().enumerate() {
            pos_class.extend(std::iter::repeat_n(c, ms.len()));
        }
        Searcher {
            g,
            pos_class,
            members,
            used: vec![false; g.n()],
            pos_of: vec![None; g.n()],
            current: Vec::with_capacity(g.edge_count()),
            best: None,
        }
    }

    fn run(mut self) -> Vec<[u16; 3]> {
        self.dfs(0, Ordering::Equal);
        self.best.unwrap_or_default()
    }

    /// `cmp` is the relation of the current partial encoding to `best`
    /// (never Greater); while it is Equal the match length is exactly
    /// `current.len()`, since completed edges append in final sorted order.
    fn dfs(&mut self, pos: usize, cmp: Ordering) {
        let n = self.g.n();
        let done = pos == n
            || (pos..n).all(|p| {
                self.members[self.pos_class[p]]
                    .iter()
                    .all(|&v| self.used[v] || self.g.deg(v) == 0)
            });
        if done {
            // cmp only drives pruning; a branch that went strictly below the
            // incumbent explores freely, so its leaves must be compared in
            // full before they may replace it
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let class = self.pos_class[pos];
        let candidates: Vec<usize> = self.members[class]
            .iter()
            .copied()
            .filter(|&v| !self.used[v])
            .collect();
        for v in candidates {
            let mut chunk: Vec<[u16; 3]> = Vec::new();
            for &ei in self.g.incident_edges(v) {
                let e = self.g.edge(ei);
                let ps: Vec<u16> = e
                    .iter()
                    .filter(|&&u| u != v)
                    .filter_map(|&u| self.pos_of[u])
                    .collect();
                if ps.len() == 2 {
                    // the edge is completed by this assignment; both other
                    // endpoints carry smaller positions
                    chunk.push([pos as u16, ps[0].max(ps[1]), ps[0].min(ps[1])]);
                }
            }
            chunk.sort_unstable();
            let mut ncmp = cmp;
            if cmp == Ordering::Equal {
                if let Some(best) = &self.best {
                    let base = self.current.len();
                    for (i, t) in chunk.iter().enumerate() {
                        match t.cmp(&best[base + i]) {
                            Ordering::Less => {
                                ncmp = Ordering::Less;
                                break;
                            }
                            Ordering::Greater => {
                                ncmp = Ordering::Greater;
                                break;
                            }
                            Ordering::Equal => {}
                        }
                    }
                    if ncmp == Ordering::Greater {
                        continue;
                    }
                }
            }
            self.used[v] = true;
            self.pos_of[v] = Some(pos as u16);
            let keep = self.current.len();
            self.current.extend_from_slice(&chunk);
            self.dfs(pos + 1, ncmp);
            self.current.truncate(keep);
            self.pos_of[v] = None;
            self.used[v] = false;
        }
    }
}
