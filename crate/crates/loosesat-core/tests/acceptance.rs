//! Acceptance suite. Each test is one criterion and prints a PASS line on
//! success (visible with --nocapture); the harness line itself is the
//! per-criterion pass/fail record.
//!
//! Frozen search fixtures below were produced by the single-threaded
//! exhaustive reference (lexicographic DFS, pruning disabled) and
//! cross-checked against the canonically pruned and coverage-driven
//! strategies; every subsequent run must reproduce them exactly.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use loosesat_core::discharge::naive;
use loosesat_core::{
    construct_gn, corpus_seed, enumerate_extremal, exists_saturated, exists_saturated_with,
    expected_edge_count, find_triangle, find_triangle_bruteforce, is_free, min_saturation,
    min_saturation_with, run_all, run_discharge, saturate_greedy, saturated_size_spectrum,
    triple_count, verify_saturated, AllTriples, Budget, Hypergraph3, SearchOptions, Strategy,
    Triple,
};

/// sat_3(n, C3) for n = 5..=9: 10 is the complete graph on 5 vertices
/// (analytically forced), 6 is the published value for n = 9, and 8, 7, 9
/// are the frozen outputs of the exhaustive reference for n = 6, 7, 8.
const FROZEN_MINIMA: [(usize, usize); 5] = [(5, 10), (6, 8), (7, 7), (8, 9), (9, 6)];

/// Extremal instances up to isomorphism at the minimum, frozen from the
/// first exhaustive enumeration and double-checked by brute-force
/// permutation grouping of every labeled saturated instance at n <= 7.
const FROZEN_EXTREMAL_COUNTS: [(usize, usize, usize); 5] =
    [(5, 10, 1), (6, 8, 4), (7, 7, 2), (8, 9, 1), (9, 6, 1)];

fn greedy_corpus() -> Vec<Hypergraph3> {
    let base = corpus_seed();
    let mut out = Vec::with_capacity(100);
    for n in 9..=12usize {
        let empty = Hypergraph3::build(n, &[]).unwrap();
        for i in 0..25u64 {
            out.push(saturate_greedy(&empty, base.wrapping_add(i)).unwrap());
        }
    }
    out
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Hypergraph3 {
    let n = rng.gen_range(4..=max_n);
    let t = triple_count(n);
    let m = rng.gen_range(0..=max_m.min(t));
    let all: Vec<Triple> = AllTriples::new(n).collect();
    let mut picks = BTreeSet::new();
    while picks.len() < m {
        picks.insert(rng.gen_range(0..t));
    }
    let triples: Vec<Triple> = picks.into_iter().map(|i| all[i]).collect();
    Hypergraph3::build(n, &triples).unwrap()
}

#[test]
fn criterion_construction_correctness() {
    for n in 14..=500usize {
        let (g, _) = construct_gn(n).unwrap();
        assert_eq!(
            g.edge_count(),
            expected_edge_count(n).unwrap(),
            "edge count mismatch at n={}",
            n
        );
    }
    for n in 14..=120usize {
        let (g, _) = construct_gn(n).unwrap();
        assert!(is_free(&g), "construction not free at n={}", n);
        assert!(
            verify_saturated(&g).is_saturated(),
            "construction not saturated at n={}",
            n
        );
    }
    eprintln!("[acceptance] construction-correctness (n <= 120): PASS");
}

#[test]
#[ignore = "slow suite: full range n <= 200"]
fn criterion_construction_correctness_slow() {
    for n in 121..=200usize {
        let (g, _) = construct_gn(n).unwrap();
        assert_eq!(g.edge_count(), expected_edge_count(n).unwrap());
        assert!(is_free(&g), "n={}", n);
        assert!(verify_saturated(&g).is_saturated(), "n={}", n);
    }
    eprintln!("[acceptance] construction-correctness (n <= 200): PASS");
}

#[test]
fn criterion_small_saturation_number() {
    let budget = Budget::unlimited();
    // exhaustive refutation below the optimum: none here means proven, a
    // budget stop would surface as a Timeout error instead
    for m in 0..=5usize {
        let r = exists_saturated(9, m, &budget).expect("no timeout under unlimited budget");
        assert!(r.is_none(), "unexpected saturated graph at m={}", m);
    }
    let out = min_saturation(9, &budget).unwrap();
    assert_eq!(out.min_edges, Some(6));
    assert_eq!(out.exhausted_upto, Some(5));
    let w = out.witness.as_ref().expect("witness");
    let cert = verify_saturated(w);
    assert!(cert.is_saturated());
    cert.validate(w).unwrap();

    // parallel mode must match the single-threaded reference exactly
    let par = min_saturation_with(
        9,
        &budget,
        &SearchOptions {
            strategy: Strategy::LexCanonical,
            jobs: 4,
        },
    )
    .unwrap();
    assert_eq!(par.min_edges, Some(6));
    assert_eq!(
        par.witness.as_ref().map(|g| g.edges().to_vec()),
        out.witness.as_ref().map(|g| g.edges().to_vec())
    );
    eprintln!("[acceptance] small-saturation-number sat3(9) = 6: PASS");
}

#[test]
fn criterion_degenerate_regime() {
    let budget = Budget::unlimited();
    for (n, expect) in FROZEN_MINIMA {
        let out = min_saturation(n, &budget).unwrap();
        assert_eq!(out.min_edges, Some(expect), "sat3({}) should be {}", n, expect);
        assert_eq!(out.exhausted_upto, Some(expect - 1));
        let w = out.witness.as_ref().unwrap();
        assert_eq!(w.edge_count(), expect);
        assert!(verify_saturated(w).is_saturated());
        // reproducibility: a second run returns the identical witness
        let again = min_saturation(n, &budget).unwrap();
        assert_eq!(
            again.witness.as_ref().map(|g| g.edges().to_vec()),
            out.witness.as_ref().map(|g| g.edges().to_vec())
        );
    }
    // n = 5: the complete graph is the unique saturated instance
    let out5 = min_saturation(5, &budget).unwrap();
    assert_eq!(out5.witness.as_ref().unwrap().edge_count(), 10);
    for (n, m, classes) in FROZEN_EXTREMAL_COUNTS {
        let forms = enumerate_extremal(n, m, &budget).unwrap();
        assert_eq!(forms.len(), classes, "extremal classes at ({}, {})", n, m);
    }
    eprintln!("[acceptance] degenerate-regime minima (10, 8, 7, 9, 6): PASS");
}

#[test]
fn criterion_asymptotic_bounds_substituted() {
    // The 4n/3 - o(n) lower bound and the o(n) garbage-set sizes are
    // asymptotic statements with no finite-n test; their executable
    // substitutes are the exact conservation/floor checks and the lemma
    // suite below. This marker criterion runs one representative of each.
    let (g, _) = construct_gn(16).unwrap();
    let r = run_discharge(&g, 6).unwrap();
    assert_eq!(r.charges.iter().sum::<i64>(), 6 * g.edge_count() as i64);
    assert_eq!(run_all(&g).total_violations(), 0);
    eprintln!("[acceptance] asymptotic-bounds-not-desk-reproducible (substituted): PASS");
}

#[test]
fn criterion_charge_conservation() {
    let mut audited = 0usize;
    let mut check = |g: &Hypergraph3, ell: usize| {
        let r = run_discharge(g, ell).unwrap();
        let total: i64 = r.charges.iter().sum();
        assert_eq!(
            total,
            6 * g.edge_count() as i64,
            "conservation failed (n={}, ell={})",
            g.n(),
            ell
        );
        for &v in &r.partition.nonlow {
            assert!(r.charges[v] >= 0, "non-low vertex {} went negative", v);
        }
        for (v, p) in r.profiles.iter().enumerate() {
            if p.is_helpful || p.is_half_helpful {
                assert!(
                    r.charges[v] >= 8,
                    "helpful vertex {} ended below charge 4 (n={}, ell={})",
                    v,
                    g.n(),
                    ell
                );
            }
        }
        audited += 1;
    };
    for n in 14..=100usize {
        let (g, _) = construct_gn(n).unwrap();
        for ell in [4, 6, 8] {
            check(&g, ell);
        }
    }
    for g in greedy_corpus() {
        for ell in [4, 6, 8] {
            check(&g, ell);
        }
    }
    assert_eq!(audited, 87 * 3 + 100 * 3);
    eprintln!("[acceptance] charge-conservation ({} audits): PASS", audited);
}

#[test]
fn criterion_lemma_suite_clean() {
    let budget = Budget::unlimited();
    let mut corpus: Vec<Hypergraph3> = Vec::new();
    for n in 14..=60usize {
        corpus.push(construct_gn(n).unwrap().0);
    }
    corpus.extend(greedy_corpus());
    for (n, _) in FROZEN_MINIMA {
        corpus.push(min_saturation(n, &budget).unwrap().witness.unwrap());
    }
    for g in &corpus {
        let report = run_all(g);
        assert!(report.saturated, "corpus instance is not saturated");
        // run_all covers the three structural claims plus the j-far bound
        // at j in {2, 3, 4}
        assert_eq!(report.ran.len(), 6);
        assert_eq!(
            report.total_violations(),
            0,
            "lemma violation on n={} instance",
            g.n()
        );
    }
    eprintln!(
        "[acceptance] lemma-suite-clean ({} instances): PASS",
        corpus.len()
    );
}

#[test]
fn criterion_oracle_equivalence() {
    // triangle detection vs the brute-force edge-triple scan
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
    for i in 0..10_000usize {
        let g = random_graph(&mut rng, 12, 30);
        let fast = find_triangle(&g);
        let brute = find_triangle_bruteforce(&g);
        assert_eq!(fast.is_some(), brute.is_some(), "disagreement at case {}", i);
    }

    // classification counters: indexed pass vs naive recomputation
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    for i in 0..1_000usize {
        let g = random_graph(&mut rng, 11, 24);
        let ell = rng.gen_range(2..=6);
        let r = run_discharge(&g, ell).unwrap();
        let nv = naive::recompute(&g, ell);
        for v in 0..g.n() {
            let p = &r.profiles[v];
            let same = p.flatness == nv.flatness[v]
                && p.supp == nv.supp[v]
                && p.flat_count == nv.flat_count[v]
                && p.rich_count == nv.rich_count[v]
                && p.reas_count == nv.reas_count[v]
                && p.donor_count == nv.donor_count[v]
                && p.is_helpful == nv.is_helpful[v]
                && p.is_half_helpful == nv.is_half_helpful[v];
            assert!(same, "counter mismatch at case {} vertex {}", i, v);
        }
        for (ce, nc) in r.classes.iter().zip(&nv.classes) {
            assert_eq!(ce.class, *nc, "class mismatch at case {}", i);
        }
    }

    // pruned and unpruned search agree on feasibility for every (n, m)
    // with n <= 7
    let budget = Budget::unlimited();
    for n in 1..=7usize {
        let pruned = saturated_size_spectrum(n, true, &budget).unwrap();
        let plain = saturated_size_spectrum(n, false, &budget).unwrap();
        assert_eq!(pruned, plain, "spectra disagree at n={}", n);
        for m in 0..=triple_count(n) {
            let canon = exists_saturated(n, m, &budget).unwrap().is_some();
            assert_eq!(canon, pruned.contains(&m), "level disagrees at ({}, {})", n, m);
            if n <= 6 {
                let cov = exists_saturated_with(
                    n,
                    m,
                    &budget,
                    &SearchOptions {
                        strategy: Strategy::Coverage,
                        jobs: 1,
                    },
                )
                .unwrap()
                .is_some();
                assert_eq!(canon, cov, "coverage disagrees at ({}, {})", n, m);
            }
        }
    }
    eprintln!("[acceptance] oracle-equivalence: PASS");
}
