//! Verification and search toolkit for loose-triangle saturation in
//! 3-uniform hypergraphs.
//!
//! The crate provides the hypergraph representation and its neighborhood /
//! codegree / link queries, loose-triangle detection, saturation
//! verification with machine-checkable certificates, the brick-based
//! extremal construction, executable checks of structural claims about
//! saturated hypergraphs, an exact discharging audit with half-integer
//! charge accounting, and exhaustive isomorph-pruned search for minimum
//! saturation numbers at small n.

pub mod canonical;
pub mod construction;
pub mod discharge;
pub mod error;
pub mod h3;
pub mod hypergraph;
pub mod lemmas;
pub mod saturation;
pub mod search;
pub mod triangle;

pub use canonical::{canonical_form, isomorphic};
pub use construction::{construct_gn, expected_edge_count, Brick, HUB_X, HUB_Y};
pub use discharge::{
    audit_summary, classify_edges, partition, run_discharge, AuditSummary, ChargeReport,
    ClassifiedEdge, DegreePartition, EdgeClass, VertexProfile,
};
pub use error::{DomainError, PreconditionError};
pub use h3::{parse_h3, write_h3, H3Error};
pub use hypergraph::{triple, triple_count, AllTriples, Hypergraph3, Link, Triple, Vertex, VertexClass};
pub use lemmas::{
    check_codegree_step, check_good_pair_double_neighbor, check_jfar_bound, check_two_deg2,
    j_far_neighbors, run_all, CheckOutcome, LemmaId, LemmaReport, LemmaViolation,
};
pub use saturation::{
    corpus_seed, is_free, saturate_greedy, verify_saturated, verify_saturated_jobs,
    SaturationCertificate, Verdict,
};
pub use search::{
    enumerate_extremal, enumerate_extremal_with, exists_saturated, exists_saturated_with,
    lower_seed, min_saturation, min_saturation_with, saturated_size_spectrum, Budget, SearchError,
    SearchOptions, SearchOutcome, Strategy,
};
pub use triangle::{creates_triangle, find_triangle, find_triangle_bruteforce, EdgeRef, TriangleWitness};
