use std::collections::HashMap;

use crate::error::DomainError;

pub type Vertex = usize;

/// An edge of a 3-uniform hypergraph, stored with ascending vertices.
pub type Triple = [Vertex; 3];

/// Normalizes three distinct vertices into ascending order.
pub fn triple(a: Vertex, b: Vertex, c: Vertex) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

fn ordered_pair(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An immutable 3-uniform hypergraph on vertices `0..n` with incidence and
/// pair indexes for O(deg) neighborhood and codegree queries.
///
/// Edges are ascending triples and the edge list is sorted lexicographically,
/// so every labeled hypergraph has a unique in-memory (and on-disk) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<Triple>,
    incidence: Vec<Vec<usize>>,
    pair_index: HashMap<(Vertex, Vertex), Vec<usize>>,
}

/// A `u,v`-link: two edges meeting in exactly the center vertex, with `u`
/// off-center in the first edge and `v` off-center in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub first_edge: usize,
    pub second_edge: usize,
    pub center: Vertex,
    pub endpoint_u: Vertex,
    pub endpoint_v: Vertex,
}

impl Link {
    /// Re-validates the link invariants against `g` without trusting the
    /// code path that produced it.
    pub fn validate(&self, g: &Hypergraph3) -> Result<(), String> {
        let f = *g
            .edges
            .get(self.first_edge)
            .ok_or("first edge index out of range")?;
        let s = *g
            .edges
            .get(self.second_edge)
            .ok_or("second edge index out of range")?;
        let shared: Vec<Vertex> = f.iter().copied().filter(|x| s.contains(x)).collect();
        if shared != vec![self.center] && shared != [self.center] {
            return Err(format!("edges share {:?}, not exactly the center", shared));
        }
        if !f.contains(&self.endpoint_u) || self.endpoint_u == self.center {
            return Err("endpoint_u is not off-center in the first edge".into());
        }
        if !s.contains(&self.endpoint_v) || self.endpoint_v == self.center {
            return Err("endpoint_v is not off-center in the second edge".into());
        }
        if s.contains(&self.endpoint_u) || f.contains(&self.endpoint_v) {
            return Err("an endpoint lies in the opposite edge".into());
        }
        let mut all: Vec<Vertex> = f.iter().chain(s.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 5 {
            return Err(format!("union of link edges has {} vertices, not 5", all.len()));
        }
        Ok(())
    }
}

/// Membership test used by [`Hypergraph3::edge_pattern`]: an explicit vertex
/// set, an exact degree, or anything.
#[derive(Debug, Clone)]
pub enum VertexClass {
    Any,
    InSet(Vec<Vertex>),
    Degree(usize),
}

impl VertexClass {
    fn admits(&self, g: &Hypergraph3, v: Vertex) -> bool {
        match self {
            VertexClass::Any => true,
            VertexClass::InSet(s) => s.contains(&v),
            VertexClass::Degree(d) => g.deg(v) == *d,
        }
    }
}

impl Hypergraph3 {
    /// Builds a validated, indexed hypergraph from vertex triples.
    ///
    /// Rejects out-of-range vertices, repeated vertices within a triple and
    /// duplicate triples. Input order is irrelevant; edges are stored sorted.
    pub fn build(n: usize, triples: &[Triple]) -> Result<Self, DomainError> {
        let mut edges: Vec<Triple> = Vec::with_capacity(triples.len());
        for &t in triples {
            edges.push(Self::check_triple(n, t)?);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(DomainError::DuplicateEdge(w[0]));
            }
        }
        Ok(Self::from_sorted_edges(n, edges))
    }

    fn check_triple(n: usize, t: Triple) -> Result<Triple, DomainError> {
        for &v in &t {
            if v >= n {
                return Err(DomainError::VertexOutOfRange { v, n });
            }
        }
        let s = triple(t[0], t[1], t[2]);
        if s[0] == s[1] || s[1] == s[2] {
            return Err(DomainError::RepeatedVertex(t));
        }
        Ok(s)
    }

    fn from_sorted_edges(n: usize, edges: Vec<Triple>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut pair_index: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
            }
            for (a, b) in [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
                pair_index.entry((a, b)).or_default().push(i);
            }
        }
        Hypergraph3 {
            n,
            edges,
            incidence,
            pair_index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Triple {
        self.edges[idx]
    }

    pub fn contains_edge(&self, t: Triple) -> bool {
        let s = triple(t[0], t[1], t[2]);
        self.edges.binary_search(&s).is_ok()
    }

    /// Edge indexes containing `v`, ascending.
    pub fn incident_edges(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    /// Edge indexes containing both `u` and `v`, ascending; empty for pairs
    /// of codegree 0.
    pub fn pair_edges(&self, u: Vertex, v: Vertex) -> &[usize] {
        self.pair_index
            .get(&ordered_pair(u, v))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub(crate) fn deg(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub(crate) fn codeg(&self, u: Vertex, v: Vertex) -> usize {
        self.pair_edges(u, v).len()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: Vertex) -> Result<usize, DomainError> {
        self.check_vertex(v)?;
        Ok(self.deg(v))
    }

    /// Number of edges containing both `u` and `v`.
    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize, DomainError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(DomainError::SamePair(u));
        }
        Ok(self.codeg(u, v))
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), DomainError> {
        if v >= self.n {
            return Err(DomainError::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    /// Vertices sharing an edge with `v`, ascending, `v` excluded.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.incidence[v]
            .iter()
            .flat_map(|&i| self.edges[i])
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Finds a `u,v`-link whose two edges avoid every vertex in `forbidden`.
    ///
    /// Deterministic: returns the lexicographically least qualifying
    /// `(first_edge, second_edge)` index pair.
    pub fn find_link(
        &self,
        u: Vertex,
        v: Vertex,
        forbidden: &[Vertex],
    ) -> Result<Option<Link>, DomainError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(DomainError::SamePair(u));
        }
        Ok(self.link_scan(u, v, forbidden))
    }

    pub(crate) fn link_scan(&self, u: Vertex, v: Vertex, forbidden: &[Vertex]) -> Option<Link> {
        for &fi in &self.incidence[u] {
            let f = self.edges[fi];
            if f.contains(&v) || f.iter().any(|x| forbidden.contains(x)) {
                continue;
            }
            for &gi in &self.incidence[v] {
                if gi == fi {
                    continue;
                }
                let g = self.edges[gi];
                if g.contains(&u) || g.iter().any(|x| forbidden.contains(x)) {
                    continue;
                }
                let mut center = None;
                let mut shared = 0;
                for &x in &f {
                    if g.contains(&x) {
                        shared += 1;
                        center = Some(x);
                    }
                }
                if shared != 1 {
                    continue;
                }
                return Some(Link {
                    first_edge: fi,
                    second_edge: gi,
                    center: center.unwrap(),
                    endpoint_u: u,
                    endpoint_v: v,
                });
            }
        }
        None
    }

    /// True iff a `u,v`-link exists ("good pair" in the two-edge loose path
    /// sense).
    pub fn is_good_pair(&self, u: Vertex, v: Vertex) -> Result<bool, DomainError> {
        Ok(self.find_link(u, v, &[])?.is_some())
    }

    /// True iff some assignment of the edge's vertices to the three classes
    /// satisfies all membership/degree tests.
    pub fn edge_pattern(
        &self,
        e: Triple,
        classes: &[VertexClass; 3],
    ) -> Result<bool, DomainError> {
        let s = Self::check_triple(self.n, e)?;
        if !self.contains_edge(s) {
            return Err(DomainError::NotAnEdge(s));
        }
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        Ok(PERMS.iter().any(|p| {
            classes
                .iter()
                .zip(p.iter())
                .all(|(c, &i)| c.admits(self, s[i]))
        }))
    }

    /// All non-edges in lexicographic order.
    pub fn nonedges(&self) -> impl Iterator<Item = Triple> + '_ {
        AllTriples::new(self.n).filter(move |t| self.edges.binary_search(t).is_err())
    }

    /// Applies a vertex relabeling; `perm[v]` is the new id of `v`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Hypergraph3, DomainError> {
        if perm.len() != self.n {
            return Err(DomainError::BadSearch("permutation length mismatch".into()));
        }
        let triples: Vec<Triple> = self
            .edges
            .iter()
            .map(|e| triple(perm[e[0]], perm[e[1]], perm[e[2]]))
            .collect();
        Hypergraph3::build(self.n, &triples)
    }

    /// Rebuilds the hypergraph from its own edge list; indexes of the result
    /// must match exactly (used by consistency tests).
    pub fn rebuilt(&self) -> Hypergraph3 {
        Self::from_sorted_edges(self.n, self.edges.clone())
    }

    #[cfg(test)]
    pub(crate) fn index_state(&self) -> (&[Vec<usize>], Vec<((Vertex, Vertex), Vec<usize>)>) {
        let mut pairs: Vec<_> = self
            .pair_index
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        pairs.sort();
        (&self.incidence, pairs)
    }
}

/// Iterator over all ascending triples on `0..n` in lexicographic order.
pub struct AllTriples {
    n: usize,
    cur: Option<Triple>,
}

impl AllTriples {
    pub fn new(n: usize) -> Self {
        let cur = if n >= 3 { Some([0, 1, 2]) } else { None };
        AllTriples { n, cur }
    }
}

impl Iterator for AllTriples {
    type Item = Triple;

    fn next(&mut self) -> Option<Triple> {
        let t = self.cur?;
        let n = self.n;
        let mut nx = t;
        if nx[2] + 1 < n {
            nx[2] += 1;
        } else if nx[1] + 2 < n {
            nx[1] += 1;
            nx[2] = nx[1] + 1;
        } else if nx[0] + 3 < n {
            nx[0] += 1;
            nx[1] = nx[0] + 1;
            nx[2] = nx[1] + 1;
        } else {
            self.cur = None;
            return Some(t);
        }
        self.cur = Some(nx);
        Some(t)
    }
}

/// Number of triples on `n` vertices, i.e. C(n, 3).
pub fn triple_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}
