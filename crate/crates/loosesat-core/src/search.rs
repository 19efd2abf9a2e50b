use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::canonical::canonical_form;
use crate::error::DomainError;
use crate::hypergraph::{triple_count, AllTriples, Hypergraph3, Triple, Vertex};
use crate::saturation::verify_saturated;

/// Wall-clock and node-count limits. Exhaustion is reported as a distinct
/// Timeout outcome, never as "none".
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_seconds: Option<f64>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn seconds(s: f64) -> Budget {
        Budget {
            max_seconds: Some(s),
            max_nodes: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Lexicographic DFS with shallow canonical-representative rejection.
    LexCanonical,
    /// Plain lexicographic DFS; the unpruned reference.
    LexPlain,
    /// Constraint-driven branching on the least uncovered non-edge.
    Coverage,
}

impl Strategy {
    pub fn id(&self) -> &'static str {
        match self {
            Strategy::LexCanonical => "lex-canonical",
            Strategy::LexPlain => "lex-plain",
            Strategy::Coverage => "coverage",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub strategy: Strategy,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            strategy: Strategy::LexCanonical,
            jobs: 1,
        }
    }
}

/// Result of a minimum-saturation computation, with exhaustiveness
/// metadata.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub n: usize,
    pub min_edges: Option<usize>,
    pub witness: Option<Hypergraph3>,
    /// Largest m proven infeasible.
    pub exhausted_upto: Option<usize>,
    pub nodes_explored: u64,
    pub canonical_rejections: u64,
    pub elapsed: Duration,
    pub strategy: &'static str,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {} nodes", partial.nodes_explored)]
    Timeout { partial: Box<SearchOutcome> },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Cheap valid lower bound to start the minimum search from: a saturated
/// graph keeps at most two isolated vertices (three isolated vertices leave
/// an uncreating non-edge), so 3m >= n - 2.
pub fn lower_seed(n: usize) -> usize {
    n.saturating_sub(2).div_ceil(3)
}

struct BudgetState {
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    nodes: AtomicU64,
    rejections: AtomicU64,
}

struct TimedOut;

impl BudgetState {
    fn new(b: &Budget) -> Self {
        BudgetState {
            deadline: b.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
            max_nodes: b.max_nodes,
            nodes: AtomicU64::new(0),
            rejections: AtomicU64::new(0),
        }
    }

    fn tick(&self) -> Result<(), TimedOut> {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(mx) = self.max_nodes {
            if k > mx {
                return Err(TimedOut);
            }
        }
        if let Some(dl) = self.deadline {
            if k.is_multiple_of(1024) && Instant::now() > dl {
                return Err(TimedOut);
            }
        }
        Ok(())
    }
}

/// Mutable edge set with push/pop and link queries, private to search
/// workers.
struct Scratch {
    edges: Vec<Triple>,
    inc: Vec<Vec<u32>>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            edges: Vec::new(),
            inc: vec![Vec::new(); n],
        }
    }

    fn push(&mut self, t: Triple) {
        let idx = self.edges.len() as u32;
        self.edges.push(t);
        for &v in &t {
            self.inc[v].push(idx);
        }
    }

    fn pop(&mut self) {
        let t = self.edges.pop().expect("pop on empty scratch");
        for &v in &t {
            self.inc[v].pop();
        }
    }

    fn link_exists(&self, u: Vertex, v: Vertex, avoid: Vertex) -> bool {
        for &fi in &self.inc[u] {
            let f = self.edges[fi as usize];
            if f.contains(&v) || f.contains(&avoid) {
                continue;
            }
            for &gi in &self.inc[v] {
                if gi == fi {
                    continue;
                }
                let g = self.edges[gi as usize];
                if g.contains(&u) || g.contains(&avoid) {
                    continue;
                }
                if f.iter().filter(|x| g.contains(x)).count() == 1 {
                    return true;
                }
            }
        }
        false
    }

    /// Would adding non-edge `t` create a loose triangle through it?
    fn creates(&self, t: Triple) -> bool {
        self.link_exists(t[0], t[1], t[2])
            || self.link_exists(t[0], t[2], t[1])
            || self.link_exists(t[1], t[2], t[0])
    }
}

fn shared_vertices(a: Triple, b: Triple) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

#[derive(Default)]
struct TaskOut {
    witness: Option<Vec<Triple>>,
    forms: BTreeSet<Vec<u8>>,
}

impl TaskOut {
    fn merge(&mut self, other: TaskOut) {
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.forms.extend(other.forms);
    }
}

struct Level<'a> {
    n: usize,
    m: usize,
    triples: Vec<Triple>,
    canonical: bool,
    enumerate: bool,
    budget: &'a BudgetState,
}

impl<'a> Level<'a> {
    fn new(n: usize, m: usize, canonical: bool, enumerate: bool, budget: &'a BudgetState) -> Self {
        Level {
            n,
            m,
            triples: AllTriples::new(n).collect(),
            canonical,
            enumerate,
            budget,
        }
    }

    /// Representatives of the isomorphism classes of 1- and 2-edge
    /// prefixes; any graph whose first edges deviate from these is a
    /// relabeling of one that does not.
    fn rep_allowed(&self, depth: usize, t: Triple) -> bool {
        match depth {
            0 => t == [0, 1, 2],
            1 => t == [0, 1, 3] || t == [0, 3, 4] || t == [3, 4, 5],
            _ => true,
        }
    }

    fn leaf_saturated(&self, g: &Scratch, chosen: &[bool]) -> bool {
        for (idx, &t) in self.triples.iter().enumerate() {
            if !chosen[idx] && !g.creates(t) {
                return false;
            }
        }
        true
    }

    fn first_uncovered_before(&self, g: &Scratch, chosen: &[bool], end: usize) -> Option<Triple> {
        (0..end)
            .filter(|&i| !chosen[i])
            .map(|i| self.triples[i])
            .find(|&t| !g.creates(t))
    }

    fn record_leaf(&self, g: &Scratch, out: &mut TaskOut) -> bool {
        let edges = g.edges.clone();
        let hg = Hypergraph3::build(self.n, &edges).expect("scratch edges are valid");
        // never trust search state: re-check with the independent verifier
        assert!(
            verify_saturated(&hg).is_saturated(),
            "leaf passed the search check but fails independent verification"
        );
        if self.enumerate {
            out.forms.insert(canonical_form(&hg));
        }
        if out.witness.is_none() {
            let mut sorted = edges;
            sorted.sort_unstable();
            out.witness = Some(sorted);
            if !self.enumerate {
                return true;
            }
        }
        false
    }

    fn dfs(
        &self,
        g: &mut Scratch,
        chosen: &mut [bool],
        start: usize,
        remaining: usize,
        out: &mut TaskOut,
    ) -> Result<bool, TimedOut> {
        self.budget.tick()?;
        if remaining == 0 {
            if self.leaf_saturated(g, chosen) && self.record_leaf(g, out) {
                return Ok(true);
            }
            return Ok(false);
        }
        // with one edge left, the least skipped-and-uncovered non-edge (if
        // any) must be covered by that edge, whose link contribution then
        // meets it in exactly one vertex
        let constraint = if remaining == 1 {
            self.first_uncovered_before(g, chosen, start)
        } else {
            None
        };
        let depth = g.edges.len();
        if self.triples.len() < remaining {
            return Ok(false);
        }
        let max_start = self.triples.len() - remaining;
        for idx in start..=max_start {
            let t = self.triples[idx];
            if self.canonical && depth <= 1 && !self.rep_allowed(depth, t) {
                self.budget.rejections.fetch_add(1, Ordering::Relaxed);
                continue;
            }
            if let Some(u) = constraint {
                if shared_vertices(t, u) != 1 {
                    continue;
                }
            }
            if g.creates(t) {
                continue;
            }
            g.push(t);
            chosen[idx] = true;
            let covered = constraint.is_none_or(|u| g.creates(u));
            let stop = if covered {
                self.dfs(g, chosen, idx + 1, remaining - 1, out)?
            } else {
                false
            };
            g.pop();
            chosen[idx] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Depth-3 prefixes used as parallel work units; enumerated in
    /// lexicographic order so that results merge deterministically.
    fn prefixes(&self) -> Result<Vec<[usize; 3]>, TimedOut> {
        let mut out = Vec::new();
        let mut g = Scratch::new(self.n);
        let t = &self.triples;
        for i1 in 0..t.len() {
            if self.canonical && !self.rep_allowed(0, t[i1]) {
                continue;
            }
            g.push(t[i1]);
            for i2 in (i1 + 1)..t.len() {
                if self.canonical && !self.rep_allowed(1, t[i2]) {
                    continue;
                }
                if g.creates(t[i2]) {
                    continue;
                }
                g.push(t[i2]);
                for i3 in (i2 + 1)..t.len() {
                    if !g.creates(t[i3]) {
                        out.push([i1, i2, i3]);
                    }
                }
                g.pop();
            }
            g.pop();
        }
        Ok(out)
    }

    fn run_task(&self, prefix: &[usize]) -> Result<TaskOut, TimedOut> {
        let mut g = Scratch::new(self.n);
        let mut chosen = vec![false; self.triples.len()];
        for &i in prefix {
            g.push(self.triples[i]);
            chosen[i] = true;
        }
        let start = prefix.last().map_or(0, |&i| i + 1);
        let mut out = TaskOut::default();
        self.dfs(&mut g, &mut chosen, start, self.m - prefix.len(), &mut out)?;
        Ok(out)
    }

    fn run(&self, jobs: usize) -> Result<TaskOut, TimedOut> {
        if self.m < 4 {
            return self.run_task(&[]);
        }
        let prefixes = self.prefixes()?;
        if jobs <= 1 {
            let mut merged = TaskOut::default();
            for p in &prefixes {
                let out = self.run_task(p)?;
                let found = out.witness.is_some();
                merged.merge(out);
                if found && !self.enumerate {
                    break;
                }
            }
            Ok(merged)
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            use rayon::prelude::*;
            let results: Vec<Result<TaskOut, TimedOut>> = pool.install(|| {
                prefixes.par_iter().map(|p| self.run_task(p)).collect()
            });
            let mut merged = TaskOut::default();
            for r in results {
                merged.merge(r?);
            }
            Ok(merged)
        }
    }
}

fn check_n(n: usize) -> Result<(), DomainError> {
    if n == 0 {
        return Err(DomainError::BadSearch("n must be at least 1".into()));
    }
    Ok(())
}

fn run_level(
    n: usize,
    m: usize,
    budget: &BudgetState,
    opts: &SearchOptions,
    enumerate: bool,
) -> Result<TaskOut, TimedOut> {
    match opts.strategy {
        Strategy::LexCanonical => {
            Level::new(n, m, true, enumerate, budget).run(opts.jobs)
        }
        Strategy::LexPlain => Level::new(n, m, false, enumerate, budget).run(1),
        Strategy::Coverage => {
            let level = Level::new(n, m, false, enumerate, budget);
            let mut g = Scratch::new(n);
            let mut chosen = vec![false; level.triples.len()];
            let mut forbidden = vec![false; level.triples.len()];
            let mut out = TaskOut::default();
            coverage_dfs(&level, &mut g, &mut chosen, &mut forbidden, m, &mut out)?;
            Ok(out)
        }
    }
}

fn coverage_dfs(
    level: &Level,
    g: &mut Scratch,
    chosen: &mut [bool],
    forbidden: &mut [bool],
    remaining: usize,
    out: &mut TaskOut,
) -> Result<bool, TimedOut> {
    level.budget.tick()?;
    if remaining == 0 {
        if level.leaf_saturated(g, chosen) && level.record_leaf(g, out) {
            return Ok(true);
        }
        return Ok(false);
    }
    // least non-edge creating no triangle yet
    let target = (0..level.triples.len())
        .find(|&i| !chosen[i] && !g.creates(level.triples[i]));
    let Some(ti) = target else {
        // everything already covered: no triangle-free strict supergraph
        // can exist, so an exact-m leaf is unreachable from here
        return Ok(false);
    };
    let t = level.triples[ti];
    // the final graph must contain t itself or a future edge meeting t in
    // exactly one vertex (one edge of a covering link)
    let mut branch: Vec<usize> = Vec::new();
    if !forbidden[ti] {
        branch.push(ti);
    }
    for idx in 0..level.triples.len() {
        if idx == ti || chosen[idx] || forbidden[idx] {
            continue;
        }
        if shared_vertices(level.triples[idx], t) == 1 && !g.creates(level.triples[idx]) {
            branch.push(idx);
        }
    }
    let mut newly_forbidden = Vec::new();
    let mut stop = false;
    for &bi in &branch {
        g.push(level.triples[bi]);
        chosen[bi] = true;
        stop = coverage_dfs(level, g, chosen, forbidden, remaining - 1, out)?;
        g.pop();
        chosen[bi] = false;
        if stop {
            break;
        }
        forbidden[bi] = true;
        newly_forbidden.push(bi);
    }
    for bi in newly_forbidden {
        forbidden[bi] = false;
    }
    Ok(stop)
}

fn outcome_from(
    n: usize,
    budget: &BudgetState,
    opts: &SearchOptions,
    started: Instant,
    min_edges: Option<usize>,
    witness: Option<Hypergraph3>,
    exhausted_upto: Option<usize>,
) -> SearchOutcome {
    SearchOutcome {
        n,
        min_edges,
        witness,
        exhausted_upto,
        nodes_explored: budget.nodes.load(Ordering::Relaxed),
        canonical_rejections: budget.rejections.load(Ordering::Relaxed),
        elapsed: started.elapsed(),
        strategy: opts.strategy.id(),
    }
}

/// Searches for a saturated triangle-free hypergraph on `n` vertices with
/// exactly `m` edges. `None` always means exhaustively proven absent.
///
/// The returned witness is the lexicographically least saturated edge set
/// the strategy enumerates (for the lex strategies: overall).
pub fn exists_saturated(
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Option<Hypergraph3>, SearchError> {
    exists_saturated_with(n, m, budget, &SearchOptions::default())
}

pub fn exists_saturated_with(
    n: usize,
    m: usize,
    budget: &Budget,
    opts: &SearchOptions,
) -> Result<Option<Hypergraph3>, SearchError> {
    check_n(n)?;
    let state = BudgetState::new(budget);
    let started = Instant::now();
    if m > triple_count(n) {
        return Ok(None);
    }
    match run_level(n, m, &state, opts, false) {
        Ok(out) => Ok(out
            .witness
            .map(|e| Hypergraph3::build(n, &e).expect("witness edges valid"))),
        Err(TimedOut) => Err(SearchError::Timeout {
            partial: Box::new(outcome_from(n, &state, opts, started, None, None, None)),
        }),
    }
}

/// Exact minimum saturation number: increasing-m sweep of
/// [`exists_saturated`] from the analytic lower seed.
pub fn min_saturation(n: usize, budget: &Budget) -> Result<SearchOutcome, SearchError> {
    min_saturation_with(n, budget, &SearchOptions::default())
}

pub fn min_saturation_with(
    n: usize,
    budget: &Budget,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SearchError> {
    check_n(n)?;
    let state = BudgetState::new(budget);
    let started = Instant::now();
    let seed = lower_seed(n);
    let top = triple_count(n);
    let mut exhausted = seed.checked_sub(1);
    for m in seed..=top {
        match run_level(n, m, &state, opts, false) {
            Ok(out) => {
                if let Some(edges) = out.witness {
                    let g = Hypergraph3::build(n, &edges).expect("witness edges valid");
                    return Ok(outcome_from(
                        n,
                        &state,
                        opts,
                        started,
                        Some(m),
                        Some(g),
                        exhausted,
                    ));
                }
                exhausted = Some(m);
            }
            Err(TimedOut) => {
                return Err(SearchError::Timeout {
                    partial: Box::new(outcome_from(
                        n, &state, opts, started, None, None, exhausted,
                    )),
                })
            }
        }
    }
    // every m is infeasible only in the degenerate n < 3 regime, where the
    // empty graph is vacuously saturated (m = 0 always succeeds above)
    Ok(outcome_from(n, &state, opts, started, None, None, exhausted))
}

/// All saturated instances with exactly `m` edges up to isomorphism;
/// returns their canonical forms, ascending.
pub fn enumerate_extremal(
    n: usize,
    m: usize,
    budget: &Budget,
) -> Result<Vec<Vec<u8>>, SearchError> {
    enumerate_extremal_with(n, m, budget, &SearchOptions::default())
}

pub fn enumerate_extremal_with(
    n: usize,
    m: usize,
    budget: &Budget,
    opts: &SearchOptions,
) -> Result<Vec<Vec<u8>>, SearchError> {
    check_n(n)?;
    let state = BudgetState::new(budget);
    let started = Instant::now();
    if m > triple_count(n) {
        return Ok(Vec::new());
    }
    match run_level(n, m, &state, opts, true) {
        Ok(out) => Ok(out.forms.into_iter().collect()),
        Err(TimedOut) => Err(SearchError::Timeout {
            partial: Box::new(outcome_from(n, &state, opts, started, None, None, None)),
        }),
    }
}

/// Every edge count at which a saturated graph on `n` vertices exists,
/// computed by one sweep over all triangle-free graphs with maximality
/// detection. `prune` toggles the shallow canonical rejection; both settings
/// must agree (cross-validation of the pruning logic).
pub fn saturated_size_spectrum(
    n: usize,
    prune: bool,
    budget: &Budget,
) -> Result<BTreeSet<usize>, SearchError> {
    check_n(n)?;
    let state = BudgetState::new(budget);
    let level = Level::new(n, 0, prune, false, &state);
    let mut g = Scratch::new(n);
    let mut chosen = vec![false; level.triples.len()];
    let mut sizes = BTreeSet::new();
    match spectrum_dfs(&level, &mut g, &mut chosen, 0, &mut sizes) {
        Ok(()) => Ok(sizes),
        Err(TimedOut) => Err(SearchError::Timeout {
            partial: Box::new(SearchOutcome {
                n,
                min_edges: None,
                witness: None,
                exhausted_upto: None,
                nodes_explored: state.nodes.load(Ordering::Relaxed),
                canonical_rejections: state.rejections.load(Ordering::Relaxed),
                elapsed: Duration::ZERO,
                strategy: if prune { "sweep-canonical" } else { "sweep-plain" },
            }),
        }),
    }
}

fn spectrum_dfs(
    level: &Level,
    g: &mut Scratch,
    chosen: &mut [bool],
    start: usize,
    sizes: &mut BTreeSet<usize>,
) -> Result<(), TimedOut> {
    level.budget.tick()?;
    let addable: Vec<usize> = (start..level.triples.len())
        .filter(|&i| !g.creates(level.triples[i]))
        .collect();
    if addable.is_empty() {
        let maximal = level.first_uncovered_before(g, chosen, start).is_none();
        if maximal {
            sizes.insert(g.edges.len());
        }
    }
    let depth_base = g.edges.len();
    for &idx in &addable {
        if level.canonical && depth_base <= 1 && !level.rep_allowed(depth_base, level.triples[idx])
        {
            level.budget.rejections.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        g.push(level.triples[idx]);
        chosen[idx] = true;
        spectrum_dfs(level, g, chosen, idx + 1, sizes)?;
        g.pop();
        chosen[idx] = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sanity() {
        // the complete 3-uniform graph is triangle-free iff n <= 5
        let b = Budget::unlimited();
        for n in 3..=5 {
            let w = exists_saturated(n, triple_count(n), &b).unwrap();
            assert!(w.is_some(), "n={}", n);
        }
        assert!(exists_saturated(6, triple_count(6), &b).unwrap().is_none());
    }

    #[test]
    fn n5_minimum_is_complete_graph() {
        let out = min_saturation(5, &Budget::unlimited()).unwrap();
        assert_eq!(out.min_edges, Some(10));
        assert_eq!(out.exhausted_upto, Some(9));
        let w = out.witness.unwrap();
        assert_eq!(w.edge_count(), 10);
        assert!(verify_saturated(&w).is_saturated());
    }

    #[test]
    fn m_above_triple_count_is_none() {
        assert!(exists_saturated(4, 5, &Budget::unlimited()).unwrap().is_none());
    }

    #[test]
    fn strategies_agree_on_n6() {
        let b = Budget::unlimited();
        for m in 0..=triple_count(6) {
            let mut found = Vec::new();
            for strategy in [Strategy::LexCanonical, Strategy::LexPlain, Strategy::Coverage] {
                let opts = SearchOptions { strategy, jobs: 1 };
                found.push(exists_saturated_with(6, m, &b, &opts).unwrap().is_some());
            }
            assert!(found.iter().all(|&f| f == found[0]), "m={} {:?}", m, found);
        }
    }

    #[test]
    fn lex_strategies_return_equal_witnesses() {
        let b = Budget::unlimited();
        let a = exists_saturated_with(
            6,
            8,
            &b,
            &SearchOptions {
                strategy: Strategy::LexCanonical,
                jobs: 1,
            },
        )
        .unwrap()
        .expect("witness");
        let p = exists_saturated_with(
            6,
            8,
            &b,
            &SearchOptions {
                strategy: Strategy::LexPlain,
                jobs: 1,
            },
        )
        .unwrap()
        .expect("witness");
        assert_eq!(a.edges(), p.edges());
    }

    #[test]
    fn parallel_matches_reference_on_n6() {
        let b = Budget::unlimited();
        let seq = min_saturation(6, &b).unwrap();
        let par = min_saturation_with(
            6,
            &b,
            &SearchOptions {
                strategy: Strategy::LexCanonical,
                jobs: 4,
            },
        )
        .unwrap();
        assert_eq!(seq.min_edges, par.min_edges);
        assert_eq!(
            seq.witness.as_ref().map(|g| g.edges().to_vec()),
            par.witness.as_ref().map(|g| g.edges().to_vec())
        );
    }

    #[test]
    fn spectrum_matches_per_level_on_n5() {
        let b = Budget::unlimited();
        let sizes = saturated_size_spectrum(5, true, &b).unwrap();
        assert_eq!(sizes, BTreeSet::from([10]));
        assert_eq!(saturated_size_spectrum(5, false, &b).unwrap(), sizes);
    }

    #[test]
    fn timeout_is_distinct_from_none() {
        let res = min_saturation(9, &Budget {
            max_seconds: None,
            max_nodes: Some(50),
        });
        match res {
            Err(SearchError::Timeout { partial }) => {
                assert!(partial.min_edges.is_none());
                assert!(partial.nodes_explored >= 50);
            }
            other => panic!("expected timeout, got {:?}", other.map(|o| o.min_edges)),
        }
    }

    #[test]
    fn tiny_n_degenerate() {
        // with fewer than three vertices the empty graph is vacuously
        // saturated
        let out = min_saturation(1, &Budget::unlimited()).unwrap();
        assert_eq!(out.min_edges, Some(0));
        assert!(exists_saturated(0, 0, &Budget::unlimited()).is_err());
    }

    #[test]
    fn enumerate_complete_graph_unique() {
        let forms = enumerate_extremal(5, 10, &Budget::unlimited()).unwrap();
        assert_eq!(forms.len(), 1);
    }
}
