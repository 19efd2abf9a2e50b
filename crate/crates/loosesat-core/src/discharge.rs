use serde::Serialize;

use crate::error::DomainError;
use crate::hypergraph::{Hypergraph3, Vertex};

/// L / M split at threshold `ell`, with the (diagnostic) high set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePartition {
    pub ell: usize,
    /// L: vertices of degree < ell, ascending.
    pub low: Vec<Vertex>,
    /// M = V \ L, ascending.
    pub nonlow: Vec<Vertex>,
    /// H: vertices of degree >= floor(n / ell^2), ascending.
    pub high: Vec<Vertex>,
    #[serde(skip)]
    is_low: Vec<bool>,
}

impl DegreePartition {
    pub fn is_low(&self, v: Vertex) -> bool {
        self.is_low[v]
    }
}

/// Splits vertices into low (degree < ell) and non-low, and computes the
/// high set at threshold floor(n / ell^2).
pub fn partition(g: &Hypergraph3, ell: usize) -> Result<DegreePartition, DomainError> {
    if ell < 2 {
        return Err(DomainError::BadEll(ell));
    }
    let n = g.n();
    let is_low: Vec<bool> = (0..n).map(|v| g.deg(v) < ell).collect();
    let high_threshold = n / (ell * ell);
    let mut low = Vec::new();
    let mut nonlow = Vec::new();
    let mut high = Vec::new();
    for v in 0..n {
        if is_low[v] {
            low.push(v);
        } else {
            nonlow.push(v);
        }
        if g.deg(v) >= high_threshold {
            high.push(v);
        }
    }
    Ok(DegreePartition {
        ell,
        low,
        nonlow,
        high,
        is_low,
    })
}

/// Classification of one edge under the discharging scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "recipient")]
pub enum EdgeClass {
    /// (L,L,L) edge: no charge moves along it.
    Low,
    /// (M,M,M) edge: outside the scheme's rules, inert.
    AllNonLow,
    /// (M,M,L) edge, drives D1; payload is the low vertex.
    Supported(Vertex),
    /// (M,L,L) edge whose recipient is a 2-vertex or 1-flat 3-vertex (D2).
    Needy(Vertex),
    /// (M,L,L) edge paying its full unit to the recipient (D3).
    Rich(Vertex),
    /// Any other (M,L,L) edge; splits its unit between the low ends (D4).
    Reasonable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassifiedEdge {
    pub class: EdgeClass,
    /// Exceptional per the flat-counter reading (used by the classifier).
    pub exceptional: bool,
    pub exception_vertex: Option<Vertex>,
    /// Exceptional under the alternative reading where flat(u)=2 means
    /// "u is 2-flat" (reported for comparison, never used to classify).
    pub exceptional_alt: bool,
}

/// Per-vertex counters and helpfulness flags. Charge values are half-units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexProfile {
    /// Total non-low incidences over the vertex's edges ("i" in i-flat).
    pub flatness: usize,
    /// Number of (M,M,v) edges.
    pub supp: usize,
    /// Number of edges containing v and at least one 1-flat 2-vertex != v.
    pub flat_count: usize,
    /// Number of rich edges with recipient v.
    pub rich_count: usize,
    /// Number of reasonable edges containing v.
    pub reas_count: usize,
    /// Number of donor edges of v (see k-donor definition).
    pub donor_count: usize,
    pub is_helpful: bool,
    pub is_half_helpful: bool,
}

/// Full outcome of the discharging run: partition, classification, exact
/// half-integer charges, deficiency and per-rule flow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeReport {
    pub schema: String,
    pub n: usize,
    pub edge_count: usize,
    pub ell: usize,
    pub partition: DegreePartition,
    pub profiles: Vec<VertexProfile>,
    pub classes: Vec<ClassifiedEdge>,
    /// Final charge of every vertex, in half-units (charge 4 = 8).
    pub charges: Vec<i64>,
    pub charges_rendered: Vec<String>,
    /// Low vertices ending below 8 half-units.
    pub deficient: Vec<Vertex>,
    /// Half-units moved by each of D1..D6.
    pub rule_totals: [i64; 6],
}

/// Renders a half-unit count as a decimal string ("7" -> "3.5").
pub fn render_half_units(h: i64) -> String {
    let sign = if h < 0 { "-" } else { "" };
    let a = h.unsigned_abs();
    if a.is_multiple_of(2) {
        format!("{}{}", sign, a / 2)
    } else {
        format!("{}{}.5", sign, a / 2)
    }
}

struct Counters {
    flatness: Vec<usize>,
    supp: Vec<usize>,
    one_flat_two: Vec<bool>,
    one_flat_three: Vec<bool>,
    flat_count: Vec<usize>,
}

fn base_counters(g: &Hypergraph3, part: &DegreePartition) -> Counters {
    let n = g.n();
    let mut flatness = vec![0usize; n];
    let mut supp = vec![0usize; n];
    for e in g.edges() {
        let non_low: Vec<Vertex> = e.iter().copied().filter(|&v| !part.is_low(v)).collect();
        for &v in e {
            let other = non_low.iter().filter(|&&u| u != v).count();
            flatness[v] += other;
            if other == 2 {
                supp[v] += 1;
            }
        }
    }
    let one_flat_two: Vec<bool> = (0..n)
        .map(|v| part.is_low(v) && g.deg(v) == 2 && flatness[v] == 1)
        .collect();
    let one_flat_three: Vec<bool> = (0..n)
        .map(|v| part.is_low(v) && g.deg(v) == 3 && flatness[v] == 1)
        .collect();
    let mut flat_count = vec![0usize; n];
    for e in g.edges() {
        for &v in e {
            if e.iter().any(|&t| t != v && one_flat_two[t]) {
                flat_count[v] += 1;
            }
        }
    }
    Counters {
        flatness,
        supp,
        one_flat_two,
        one_flat_three,
        flat_count,
    }
}

fn exceptional_with(
    g: &Hypergraph3,
    c: &Counters,
    h: Vertex,
    u: Vertex,
    v: Vertex,
    counter_reading: bool,
) -> bool {
    let flat_u = if counter_reading {
        c.flat_count[u]
    } else {
        c.flatness[u]
    };
    g.deg(u) == 4
        && g.codeg(h, u) >= 3
        && flat_u == 2
        && g.codeg(h, v) == 2
        && g.deg(v) >= 4
}

/// Classifies every edge into exactly one class; the needy/rich/reasonable
/// trichotomy applies to (M,L,L) edges. Where both low vertices of a rich
/// edge qualify as recipient, the lower-numbered vertex is chosen.
pub fn classify_edges(g: &Hypergraph3, part: &DegreePartition) -> Vec<ClassifiedEdge> {
    let c = base_counters(g, part);
    classify_with(g, part, &c)
}

fn classify_with(g: &Hypergraph3, part: &DegreePartition, c: &Counters) -> Vec<ClassifiedEdge> {
    g.edges()
        .iter()
        .map(|e| {
            let lows: Vec<Vertex> = e.iter().copied().filter(|&v| part.is_low(v)).collect();
            match lows.len() {
                3 => ClassifiedEdge {
                    class: EdgeClass::Low,
                    exceptional: false,
                    exception_vertex: None,
                    exceptional_alt: false,
                },
                0 => ClassifiedEdge {
                    class: EdgeClass::AllNonLow,
                    exceptional: false,
                    exception_vertex: None,
                    exceptional_alt: false,
                },
                1 => ClassifiedEdge {
                    class: EdgeClass::Supported(lows[0]),
                    exceptional: false,
                    exception_vertex: None,
                    exceptional_alt: false,
                },
                _ => {
                    let h = *e.iter().find(|&&v| !part.is_low(v)).expect("one non-low");
                    let (p, q) = (lows[0], lows[1]);
                    classify_mll(g, c, h, p, q)
                }
            }
        })
        .collect()
}

fn classify_mll(g: &Hypergraph3, c: &Counters, h: Vertex, p: Vertex, q: Vertex) -> ClassifiedEdge {
    let needy_candidate = |v: Vertex| g.deg(v) == 2 || c.one_flat_three[v];
    // exceptional status of the edge (either orientation)
    let mut exception_vertex = None;
    for (u, v) in [(p, q), (q, p)] {
        if exceptional_with(g, c, h, u, v, true) {
            exception_vertex = Some(v);
            break;
        }
    }
    let exceptional = exception_vertex.is_some();
    let exceptional_alt = exceptional_with(g, c, h, p, q, false)
        || exceptional_with(g, c, h, q, p, false);

    let class = match (needy_candidate(p), needy_candidate(q)) {
        (true, false) => EdgeClass::Needy(p),
        (false, true) => EdgeClass::Needy(q),
        _ => {
            let rich_as = |v: Vertex, u: Vertex| {
                !exceptional
                    && g.deg(v) <= 7
                    && c.supp[v] == 0
                    && g.codeg(h, v) < 3
                    && (g.codeg(h, u) >= 3
                        || (g.deg(u) >= 3 && c.supp[u] > 0)
                        || g.deg(u) >= 8)
            };
            match (rich_as(p, q), rich_as(q, p)) {
                (true, _) => EdgeClass::Rich(p),
                (false, true) => EdgeClass::Rich(q),
                _ => EdgeClass::Reasonable,
            }
        }
    };
    ClassifiedEdge {
        class,
        exceptional,
        exception_vertex,
        exceptional_alt,
    }
}

fn profiles_from(
    g: &Hypergraph3,
    part: &DegreePartition,
    c: &Counters,
    classes: &[ClassifiedEdge],
) -> Vec<VertexProfile> {
    let n = g.n();
    let mut rich_count = vec![0usize; n];
    let mut reas_count = vec![0usize; n];
    for (e, cl) in g.edges().iter().zip(classes) {
        match cl.class {
            EdgeClass::Rich(v) => rich_count[v] += 1,
            EdgeClass::Reasonable => {
                for &v in e {
                    reas_count[v] += 1;
                }
            }
            _ => {}
        }
    }
    let budget_ok = |v: Vertex, need: usize| {
        2 * g.deg(v) + 4 * c.supp[v] + 2 * rich_count[v] + reas_count[v] >= need + 8
    };
    let is_helpful: Vec<bool> = (0..n)
        .map(|v| part.is_low(v) && g.deg(v) >= 3 && budget_ok(v, c.flat_count[v]))
        .collect();
    // donor edges need other vertices' helpfulness, so they come after
    let mut donor_count = vec![0usize; n];
    for e in g.edges() {
        for &v in e {
            if !part.is_low(v) {
                continue;
            }
            if donor_edge_for(g, part, c, &is_helpful, e, v) {
                donor_count[v] += 1;
            }
        }
    }
    (0..n)
        .map(|v| VertexProfile {
            flatness: c.flatness[v],
            supp: c.supp[v],
            flat_count: c.flat_count[v],
            rich_count: rich_count[v],
            reas_count: reas_count[v],
            donor_count: donor_count[v],
            is_helpful: is_helpful[v],
            is_half_helpful: part.is_low(v) && g.deg(v) >= 3 && budget_ok(v, donor_count[v]),
        })
        .collect()
}

/// Is `e` one of the edges counted by donor(v): it pairs `v` with a 1-flat
/// 2-vertex and the remaining vertex is non-low, or low and not helpful.
fn donor_edge_for(
    _g: &Hypergraph3,
    part: &DegreePartition,
    c: &Counters,
    is_helpful: &[bool],
    e: &[Vertex; 3],
    v: Vertex,
) -> bool {
    for &t in e {
        if t == v || !c.one_flat_two[t] {
            continue;
        }
        let z = *e.iter().find(|&&z| z != v && z != t).expect("third vertex");
        if !part.is_low(z) || !is_helpful[z] {
            return true;
        }
    }
    false
}

/// Runs the full discharging scheme and returns the charge report.
///
/// Charges live in half-units so every rule moves integers and conservation
/// is exact. D1-D4 are a fold over the classified edge list; D5 transfers
/// one half-unit per (edge, 1-flat 2-neighbor) incidence from each helpful
/// vertex; D6 lets half-helpful (non-helpful) vertices top up, one transfer
/// per donor edge, with the deficient set frozen after D5.
pub fn run_discharge(g: &Hypergraph3, ell: usize) -> Result<ChargeReport, DomainError> {
    let part = partition(g, ell)?;
    let c = base_counters(g, &part);
    let classes = classify_with(g, &part, &c);
    let profiles = profiles_from(g, &part, &c, &classes);
    let n = g.n();
    let mut charges: Vec<i64> = (0..n).map(|v| 2 * g.deg(v) as i64).collect();
    let mut rule_totals = [0i64; 6];

    for (e, cl) in g.edges().iter().zip(&classes) {
        match cl.class {
            EdgeClass::Low | EdgeClass::AllNonLow => {}
            EdgeClass::Supported(u) => {
                for &h in e.iter().filter(|&&h| h != u) {
                    charges[h] -= 2;
                }
                charges[u] += 4;
                rule_totals[0] += 4;
            }
            EdgeClass::Needy(t) => {
                let h = *e.iter().find(|&&v| !part.is_low(v)).expect("non-low");
                charges[h] -= 2;
                charges[t] += 2;
                rule_totals[1] += 2;
            }
            EdgeClass::Rich(v) => {
                let h = *e.iter().find(|&&x| !part.is_low(x)).expect("non-low");
                charges[h] -= 2;
                charges[v] += 2;
                rule_totals[2] += 2;
            }
            EdgeClass::Reasonable => {
                let h = *e.iter().find(|&&x| !part.is_low(x)).expect("non-low");
                charges[h] -= 2;
                for &v in e.iter().filter(|&&v| v != h) {
                    charges[v] += 1;
                }
                rule_totals[3] += 2;
            }
        }
    }

    // D5: helpful vertices pay their 1-flat 2-neighbors, with multiplicity
    // over (edge, neighbor) incidences.
    for v in 0..n {
        if !profiles[v].is_helpful {
            continue;
        }
        for &ei in g.incident_edges(v) {
            for &t in g.edge(ei).iter() {
                if t != v && c.one_flat_two[t] {
                    charges[v] -= 1;
                    charges[t] += 1;
                    rule_totals[4] += 1;
                }
            }
        }
    }

    // Frozen qualifying set for D6: below charge 4 after D1-D5.
    let frozen_deficient: Vec<bool> = (0..n).map(|v| charges[v] < 8).collect();
    let is_helpful: Vec<bool> = profiles.iter().map(|p| p.is_helpful).collect();
    for v in 0..n {
        if !profiles[v].is_half_helpful || profiles[v].is_helpful {
            continue;
        }
        for &ei in g.incident_edges(v) {
            let e = g.edge(ei);
            if !donor_edge_for(g, &part, &c, &is_helpful, &e, v) {
                continue;
            }
            let target = e
                .iter()
                .copied()
                .filter(|&t| t != v && c.one_flat_two[t] && frozen_deficient[t])
                .min();
            if let Some(t) = target {
                charges[v] -= 1;
                charges[t] += 1;
                rule_totals[5] += 1;
            }
        }
    }

    let deficient: Vec<Vertex> = (0..n)
        .filter(|&v| part.is_low(v) && charges[v] < 8)
        .collect();
    let charges_rendered = charges.iter().map(|&h| render_half_units(h)).collect();
    Ok(ChargeReport {
        schema: "loosesat/discharge/v1".into(),
        n,
        edge_count: g.edge_count(),
        ell,
        partition: part,
        profiles,
        classes,
        charges,
        charges_rendered,
        deficient,
        rule_totals,
    })
}

/// Condensed view of a charge report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub schema: String,
    pub n: usize,
    pub edge_count: usize,
    pub ell: usize,
    pub low_count: usize,
    pub nonlow_count: usize,
    pub helpful_count: usize,
    pub half_helpful_count: usize,
    pub deficient_count: usize,
    /// deficient / |L| rendered to four places; None when L is empty.
    pub deficient_fraction: Option<String>,
    /// (half-units, how many vertices end there), ascending.
    pub charge_histogram: Vec<(i64, usize)>,
    pub rule_totals: [i64; 6],
    pub total_half_units: i64,
    pub conserved: bool,
}

pub fn audit_summary(report: &ChargeReport) -> AuditSummary {
    let low_count = report.partition.low.len();
    let deficient_count = report.deficient.len();
    let deficient_fraction = if low_count == 0 {
        None
    } else {
        let scaled = (deficient_count as u64 * 10_000 + (low_count as u64 / 2)) / low_count as u64;
        Some(format!("{}.{:04}", scaled / 10_000, scaled % 10_000))
    };
    let mut hist = std::collections::BTreeMap::new();
    for &h in &report.charges {
        *hist.entry(h).or_insert(0usize) += 1;
    }
    let total: i64 = report.charges.iter().sum();
    AuditSummary {
        schema: "loosesat/discharge-summary/v1".into(),
        n: report.n,
        edge_count: report.edge_count,
        ell: report.ell,
        low_count,
        nonlow_count: report.partition.nonlow.len(),
        helpful_count: report.profiles.iter().filter(|p| p.is_helpful).count(),
        half_helpful_count: report.profiles.iter().filter(|p| p.is_half_helpful).count(),
        deficient_count,
        deficient_fraction,
        charge_histogram: hist.into_iter().collect(),
        rule_totals: report.rule_totals,
        total_half_units: total,
        conserved: total == 6 * report.edge_count as i64,
    }
}

/// Slow reference recomputation of the classification counters straight
/// from the edge list, with no incidence or pair indexes. Used to
/// cross-check the indexed pass.
pub mod naive {
    use super::*;

    fn deg(g: &Hypergraph3, v: Vertex) -> usize {
        g.edges().iter().filter(|e| e.contains(&v)).count()
    }

    fn codeg(g: &Hypergraph3, u: Vertex, v: Vertex) -> usize {
        g.edges()
            .iter()
            .filter(|e| e.contains(&u) && e.contains(&v))
            .count()
    }

    pub struct NaiveCounts {
        pub flatness: Vec<usize>,
        pub supp: Vec<usize>,
        pub flat_count: Vec<usize>,
        pub rich_count: Vec<usize>,
        pub reas_count: Vec<usize>,
        pub donor_count: Vec<usize>,
        pub is_helpful: Vec<bool>,
        pub is_half_helpful: Vec<bool>,
        pub classes: Vec<EdgeClass>,
    }

    pub fn recompute(g: &Hypergraph3, ell: usize) -> NaiveCounts {
        let n = g.n();
        let low: Vec<bool> = (0..n).map(|v| deg(g, v) < ell).collect();
        let flatness: Vec<usize> = (0..n)
            .map(|v| {
                g.edges()
                    .iter()
                    .filter(|e| e.contains(&v))
                    .map(|e| e.iter().filter(|&&u| u != v && !low[u]).count())
                    .sum()
            })
            .collect();
        let supp: Vec<usize> = (0..n)
            .map(|v| {
                g.edges()
                    .iter()
                    .filter(|e| {
                        e.contains(&v) && e.iter().filter(|&&u| u != v && !low[u]).count() == 2
                    })
                    .count()
            })
            .collect();
        let oft = |v: Vertex| low[v] && deg(g, v) == 2 && flatness[v] == 1;
        let of3 = |v: Vertex| low[v] && deg(g, v) == 3 && flatness[v] == 1;
        let flat_count: Vec<usize> = (0..n)
            .map(|v| {
                g.edges()
                    .iter()
                    .filter(|e| e.contains(&v) && e.iter().any(|&t| t != v && oft(t)))
                    .count()
            })
            .collect();
        let exceptional = |e: &[Vertex; 3]| -> bool {
            let h: Vec<Vertex> = e.iter().copied().filter(|&x| !low[x]).collect();
            if h.len() != 1 {
                return false;
            }
            let h = h[0];
            let ls: Vec<Vertex> = e.iter().copied().filter(|&x| low[x]).collect();
            [(ls[0], ls[1]), (ls[1], ls[0])].iter().any(|&(u, v)| {
                deg(g, u) == 4
                    && codeg(g, h, u) >= 3
                    && flat_count[u] == 2
                    && codeg(g, h, v) == 2
                    && deg(g, v) >= 4
            })
        };
        let classes: Vec<EdgeClass> = g
            .edges()
            .iter()
            .map(|e| {
                let ls: Vec<Vertex> = e.iter().copied().filter(|&x| low[x]).collect();
                match ls.len() {
                    3 => EdgeClass::Low,
                    0 => EdgeClass::AllNonLow,
                    1 => EdgeClass::Supported(ls[0]),
                    _ => {
                        let h = *e.iter().find(|&&x| !low[x]).unwrap();
                        let cand = |v: Vertex| deg(g, v) == 2 || of3(v);
                        match (cand(ls[0]), cand(ls[1])) {
                            (true, false) => EdgeClass::Needy(ls[0]),
                            (false, true) => EdgeClass::Needy(ls[1]),
                            _ => {
                                let rich_as = |v: Vertex, u: Vertex| {
                                    !exceptional(e)
                                        && deg(g, v) <= 7
                                        && supp[v] == 0
                                        && codeg(g, h, v) < 3
                                        && (codeg(g, h, u) >= 3
                                            || (deg(g, u) >= 3 && supp[u] > 0)
                                            || deg(g, u) >= 8)
                                };
                                match (rich_as(ls[0], ls[1]), rich_as(ls[1], ls[0])) {
                                    (true, _) => EdgeClass::Rich(ls[0]),
                                    (false, true) => EdgeClass::Rich(ls[1]),
                                    _ => EdgeClass::Reasonable,
                                }
                            }
                        }
                    }
                }
            })
            .collect();
        let rich_count: Vec<usize> = (0..n)
            .map(|v| {
                classes
                    .iter()
                    .filter(|c| matches!(c, EdgeClass::Rich(r) if *r == v))
                    .count()
            })
            .collect();
        let reas_count: Vec<usize> = (0..n)
            .map(|v| {
                g.edges()
                    .iter()
                    .zip(&classes)
                    .filter(|(e, c)| matches!(c, EdgeClass::Reasonable) && e.contains(&v))
                    .count()
            })
            .collect();
        let budget = |v: Vertex, need: usize| {
            2 * deg(g, v) + 4 * supp[v] + 2 * rich_count[v] + reas_count[v] >= need + 8
        };
        let is_helpful: Vec<bool> = (0..n)
            .map(|v| low[v] && deg(g, v) >= 3 && budget(v, flat_count[v]))
            .collect();
        let donor_count: Vec<usize> = (0..n)
            .map(|v| {
                if !low[v] {
                    return 0;
                }
                g.edges()
                    .iter()
                    .filter(|e| {
                        e.contains(&v)
                            && e.iter().any(|&t| {
                                t != v && oft(t) && {
                                    let z = *e.iter().find(|&&z| z != v && z != t).unwrap();
                                    !low[z] || !is_helpful[z]
                                }
                            })
                    })
                    .count()
            })
            .collect();
        let is_half_helpful: Vec<bool> = (0..n)
            .map(|v| low[v] && deg(g, v) >= 3 && budget(v, donor_count[v]))
            .collect();
        NaiveCounts {
            flatness,
            supp,
            flat_count,
            rich_count,
            reas_count,
            donor_count,
            is_helpful,
            is_half_helpful,
            classes,
        }
    }
}
