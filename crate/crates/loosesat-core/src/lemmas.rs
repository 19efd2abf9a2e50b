use crate::error::{DomainError, PreconditionError};
use crate::hypergraph::{Hypergraph3, Vertex};
use crate::saturation::{is_free, verify_saturated};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaId {
    CodegreeStep,
    TwoDeg2Neighbors,
    GoodPairDoubleNeighbor,
    JFarBound,
}

impl LemmaId {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaId::CodegreeStep => "codegree-step",
            LemmaId::TwoDeg2Neighbors => "two-deg2-neighbors",
            LemmaId::GoodPairDoubleNeighbor => "good-pair-double-neighbor",
            LemmaId::JFarBound => "jfar-bound",
        }
    }
}

/// A counterexample to one of the structural claims. On verified-saturated
/// instances these are theorems, so any violation indicates a bug in either
/// the instance or the toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: LemmaId,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
    pub detail: String,
}

fn require_saturated(g: &Hypergraph3) -> Result<(), PreconditionError> {
    let cert = verify_saturated(g);
    if cert.is_saturated() {
        Ok(())
    } else {
        Err(PreconditionError(format!(
            "graph is not saturated (verdict {:?})",
            cert.verdict
        )))
    }
}

/// All unordered vertex pairs with positive codegree, ascending.
fn covered_pairs(g: &Hypergraph3) -> Vec<(Vertex, Vertex)> {
    let mut pairs: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .flat_map(|e| [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])])
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

pub(crate) fn codegree_step_scan(g: &Hypergraph3) -> Vec<LemmaViolation> {
    let n = g.n();
    let mut out = Vec::new();
    for (a, b) in covered_pairs(g) {
        let cod = g.codeg(a, b);
        for (u, v) in [(a, b), (b, a)] {
            if cod == g.deg(v) && g.deg(v) + 3 <= n && g.deg(u) < g.deg(v) + 2 {
                out.push(LemmaViolation {
                    lemma: LemmaId::CodegreeStep,
                    vertices: vec![u, v],
                    edges: g.pair_edges(u, v).to_vec(),
                    detail: format!(
                        "d({u}{v})=d({v})={} but d({u})={} < {}",
                        cod,
                        g.deg(u),
                        g.deg(v) + 2
                    ),
                });
            }
        }
    }
    for u in 0..n {
        let doubles: Vec<Vertex> = (0..n)
            .filter(|&v| v != u && g.deg(v) == 2 && g.codeg(u, v) == 2)
            .collect();
        if doubles.len() >= 2 {
            out.push(LemmaViolation {
                lemma: LemmaId::CodegreeStep,
                vertices: std::iter::once(u).chain(doubles.iter().copied()).collect(),
                edges: vec![],
                detail: format!("{} distinct degree-2 double neighbors of {}", doubles.len(), u),
            });
        }
    }
    out
}

/// On a saturated graph: whenever d(uv) = d(v) <= n-3, u must out-degree v
/// by at least 2, and no vertex has two degree-2 double neighbors.
pub fn check_codegree_step(g: &Hypergraph3) -> Result<Vec<LemmaViolation>, PreconditionError> {
    require_saturated(g)?;
    Ok(codegree_step_scan(g))
}

pub(crate) fn two_deg2_scan(g: &Hypergraph3) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        for (ei, e) in g.edges().iter().enumerate() {
            if e.contains(&v) {
                continue;
            }
            let hits: Vec<Vertex> = e
                .iter()
                .copied()
                .filter(|&u| g.deg(u) == 2 && g.codeg(u, v) >= 1)
                .collect();
            if hits.len() >= 2 {
                out.push(LemmaViolation {
                    lemma: LemmaId::TwoDeg2Neighbors,
                    vertices: std::iter::once(v).chain(hits.iter().copied()).collect(),
                    edges: vec![ei],
                    detail: format!("edge {:?} has {} 2-vertices in N({})", e, hits.len(), v),
                });
            }
        }
    }
    out
}

/// On a saturated graph: no edge avoiding v carries two 2-vertices of N(v).
pub fn check_two_deg2(g: &Hypergraph3) -> Result<Vec<LemmaViolation>, PreconditionError> {
    require_saturated(g)?;
    Ok(two_deg2_scan(g))
}

pub(crate) fn good_pair_scan(g: &Hypergraph3) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        for (a, b, c) in [
            (e[0], e[1], e[2]),
            (e[0], e[2], e[1]),
            (e[1], e[2], e[0]),
        ] {
            if g.link_scan(a, b, &[]).is_some() && g.codeg(a, c) < 2 && g.codeg(b, c) < 2 {
                out.push(LemmaViolation {
                    lemma: LemmaId::GoodPairDoubleNeighbor,
                    vertices: vec![a, b, c],
                    edges: vec![ei],
                    detail: format!(
                        "{a}{b} is a good pair in edge {:?} but {c} doubles neither",
                        e
                    ),
                });
            }
        }
    }
    out
}

/// On a triangle-free graph: if an edge's pair ab is good, the third vertex
/// is a double neighbor of a or b. Needs freeness only, not saturation.
pub fn check_good_pair_double_neighbor(
    g: &Hypergraph3,
) -> Result<Vec<LemmaViolation>, PreconditionError> {
    if !is_free(g) {
        return Err(PreconditionError(
            "graph contains a loose triangle".into(),
        ));
    }
    Ok(good_pair_scan(g))
}

/// Neighbors u of v with d(u) <= j whose edges either contain v or avoid
/// N(v) entirely, and whose edges away from v stay within degree j.
pub fn j_far_neighbors(
    g: &Hypergraph3,
    v: Vertex,
    j: usize,
) -> Result<Vec<Vertex>, DomainError> {
    if j < 2 {
        return Err(DomainError::BadFar(j));
    }
    if v >= g.n() {
        return Err(DomainError::VertexOutOfRange { v, n: g.n() });
    }
    let nv = g.neighbors(v);
    let in_nv = |x: Vertex| nv.binary_search(&x).is_ok();
    let mut out = Vec::new();
    'outer: for &u in &nv {
        if g.deg(u) > j {
            continue;
        }
        for &ei in g.incident_edges(u) {
            let e = g.edge(ei);
            let contains_v = e.contains(&v);
            if !contains_v {
                // condition (1): the rest of the edge avoids N(v)
                if e.iter().any(|&x| x != u && in_nv(x)) {
                    continue 'outer;
                }
                // condition (2): all of the edge's vertices have degree <= j
                if e.iter().any(|&x| g.deg(x) > j) {
                    continue 'outer;
                }
            }
        }
        out.push(u);
    }
    Ok(out)
}

pub(crate) fn jfar_scan(g: &Hypergraph3, j: usize) -> Result<Vec<LemmaViolation>, DomainError> {
    let bound = 2 * j * j;
    let mut out = Vec::new();
    for v in 0..g.n() {
        let far = j_far_neighbors(g, v, j)?;
        if far.len() > bound {
            out.push(LemmaViolation {
                lemma: LemmaId::JFarBound,
                vertices: std::iter::once(v).chain(far.iter().copied()).collect(),
                edges: vec![],
                detail: format!("{} has {} {}-far neighbors > 2j^2 = {}", v, far.len(), j, bound),
            });
        }
    }
    Ok(out)
}

/// On a saturated graph: every vertex has at most 2j^2 j-far neighbors.
pub fn check_jfar_bound(
    g: &Hypergraph3,
    j: usize,
) -> Result<Vec<LemmaViolation>, PreconditionError> {
    if j < 2 {
        return Err(PreconditionError(format!("j must be >= 2 (got {})", j)));
    }
    require_saturated(g)?;
    Ok(jfar_scan(g, j).expect("parameters validated"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub lemma: LemmaId,
    /// For the j-far bound, the j it ran at.
    pub param: Option<usize>,
    pub violations: Vec<LemmaViolation>,
    pub elapsed: std::time::Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub saturated: bool,
    pub free: bool,
    pub ran: Vec<CheckOutcome>,
    pub skipped: Vec<LemmaId>,
}

impl LemmaReport {
    pub fn total_violations(&self) -> usize {
        self.ran.iter().map(|c| c.violations.len()).sum()
    }
}

/// Runs every check applicable to the graph's verified status, cheapest
/// first: the full suite (j in {2,3,4}) on saturated instances, only the
/// freeness-based claim on free-but-unsaturated ones.
pub fn run_all(g: &Hypergraph3) -> LemmaReport {
    let cert = verify_saturated(g);
    let saturated = cert.is_saturated();
    let free = cert.verdict != crate::saturation::Verdict::NotFree;
    let mut ran = Vec::new();
    let mut skipped = Vec::new();
    let timed = |lemma: LemmaId, param: Option<usize>, scan: &dyn Fn() -> Vec<LemmaViolation>| {
        let started = std::time::Instant::now();
        let violations = scan();
        CheckOutcome {
            lemma,
            param,
            violations,
            elapsed: started.elapsed(),
        }
    };
    if saturated {
        ran.push(timed(LemmaId::CodegreeStep, None, &|| codegree_step_scan(g)));
        ran.push(timed(LemmaId::TwoDeg2Neighbors, None, &|| two_deg2_scan(g)));
    } else {
        skipped.push(LemmaId::CodegreeStep);
        skipped.push(LemmaId::TwoDeg2Neighbors);
    }
    if free {
        ran.push(timed(LemmaId::GoodPairDoubleNeighbor, None, &|| {
            good_pair_scan(g)
        }));
    } else {
        skipped.push(LemmaId::GoodPairDoubleNeighbor);
    }
    if saturated {
        for j in [2, 3, 4] {
            ran.push(timed(LemmaId::JFarBound, Some(j), &|| {
                jfar_scan(g, j).expect("j >= 2")
            }));
        }
    } else {
        skipped.push(LemmaId::JFarBound);
    }
    LemmaReport {
        saturated,
        free,
        ran,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::construct_gn;
    use crate::saturation::saturate_greedy;

    #[test]
    fn g14_is_clean() {
        let (g, _) = construct_gn(14).unwrap();
        assert!(check_codegree_step(&g).unwrap().is_empty());
        assert!(check_two_deg2(&g).unwrap().is_empty());
        assert!(check_good_pair_double_neighbor(&g).unwrap().is_empty());
        for j in [2, 3, 4] {
            assert!(check_jfar_bound(&g, j).unwrap().is_empty());
        }
    }

    #[test]
    fn precondition_enforced() {
        let path = Hypergraph3::build(6, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(check_codegree_step(&path).is_err());
        assert!(check_two_deg2(&path).is_err());
        let tri = Hypergraph3::build(6, &[[0, 1, 2], [2, 3, 4], [0, 4, 5]]).unwrap();
        assert!(check_good_pair_double_neighbor(&tri).is_err());
    }

    #[test]
    fn jfar_rejects_j1() {
        let (g, _) = construct_gn(14).unwrap();
        assert!(j_far_neighbors(&g, 0, 1).is_err());
        assert!(check_jfar_bound(&g, 1).is_err());
    }

    #[test]
    fn jfar_isolated_vertex_empty() {
        let g = Hypergraph3::build(5, &[[0, 1, 2]]).unwrap();
        assert!(j_far_neighbors(&g, 4, 3).unwrap().is_empty());
    }

    #[test]
    fn jfar_g16_hub_is_empty() {
        // Every brick vertex has an edge through y whose other vertices all
        // neighbor x, so condition (1) can never hold away from x.
        let (g, _) = construct_gn(16).unwrap();
        assert!(j_far_neighbors(&g, 0, 5).unwrap().is_empty());
    }

    #[test]
    fn jfar_degree_filter_monotone_when_condition_one_vacuous() {
        // star through v = 0 with mixed neighbor degrees: every edge of
        // every neighbor contains v, so both side conditions are vacuous
        // and only the degree filter acts
        let g = Hypergraph3::build(
            9,
            &[[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 5, 6], [0, 5, 7], [0, 5, 8], [0, 5, 4]],
        )
        .unwrap();
        assert_eq!(j_far_neighbors(&g, 0, 2).unwrap(), vec![2, 3, 4, 6, 7, 8]);
        let mut prev: Vec<Vertex> = Vec::new();
        for j in 2..6 {
            let cur = j_far_neighbors(&g, 0, j).unwrap();
            assert!(prev.iter().all(|u| cur.contains(u)), "j={}", j);
            prev = cur;
        }
        assert_eq!(prev, vec![1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn corrupted_instance_scan_terminates_with_wellformed_subjects() {
        // drop one edge from G14 and force the scans without preconditions
        let (g, _) = construct_gn(14).unwrap();
        let mut edges = g.edges().to_vec();
        edges.remove(0);
        let broken = Hypergraph3::build(14, &edges).unwrap();
        for v in codegree_step_scan(&broken)
            .into_iter()
            .chain(two_deg2_scan(&broken))
            .chain(good_pair_scan(&broken))
        {
            assert!(v.vertices.iter().all(|&x| x < broken.n()));
            assert!(v.edges.iter().all(|&e| e < broken.edge_count()));
            assert!(!v.detail.is_empty());
        }
    }

    #[test]
    fn greedy_corpus_is_clean() {
        let base = Hypergraph3::build(9, &[]).unwrap();
        for seed in 0..10u64 {
            let g = saturate_greedy(&base, seed).unwrap();
            let report = run_all(&g);
            assert!(report.saturated);
            assert_eq!(report.total_violations(), 0, "seed {}", seed);
        }
    }

    #[test]
    fn good_pair_claim_holds_on_free_prefixes() {
        // the claim needs freeness only, so every prefix of a saturated
        // graph (prefixes of a free graph stay free) must satisfy it
        let base = Hypergraph3::build(9, &[]).unwrap();
        let full = saturate_greedy(&base, 3).unwrap();
        for k in 0..=full.edge_count() {
            let g = Hypergraph3::build(9, &full.edges()[..k]).unwrap();
            assert!(crate::saturation::is_free(&g));
            assert!(good_pair_scan(&g).is_empty(), "prefix of {} edges", k);
        }
    }

    #[test]
    fn run_all_on_unsaturated_free_graph_runs_good_pair_only() {
        let path = Hypergraph3::build(7, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        let report = run_all(&path);
        assert!(!report.saturated && report.free);
        assert_eq!(report.ran.len(), 1);
        assert_eq!(report.ran[0].lemma, LemmaId::GoodPairDoubleNeighbor);
        assert_eq!(report.skipped.len(), 3);
    }
}
