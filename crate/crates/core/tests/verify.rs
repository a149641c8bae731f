mod common;

use common::{ball, system};
use proptest::prelude::*;
use systolic_core::complex::{is_full_cycle, Largeness, VertexId};
use systolic_core::coxeter::Depths;
use systolic_core::systolize::systolize;
use systolic_core::verify::{
    check_edge_links, check_full_six_cycles, check_new_edge_triangles, check_structural_rank3, check_vertex_links,
    run_face_complex_oracle, run_lemma_oracles, VerificationReport,
};

fn json(r: &VerificationReport) -> String {
    serde_json::to_string(r).unwrap()
}

#[test]
fn witnesses_are_full_cycles_in_their_links() {
    let sys = system("2,4,4");
    let b = ball("2,4,4", 10);
    let hat = systolize(&b, &sys, true).unwrap();
    for c in [&b, &hat] {
        let r = check_vertex_links(c, Largeness::Finite(6), 2);
        assert!(!r.passed());
        for w in r.cycle_witnesses() {
            assert!(w.vertices.len() >= 4 && w.vertices.len() < 6);
            let centers: Vec<VertexId> = c.graph().common_neighbors(&w.vertices);
            assert!(
                centers.iter().any(|&v| {
                    let link = c.link_vertices(&[v]).unwrap();
                    w.vertices.iter().all(|x| link.contains(x)) && is_full_cycle(c.graph(), &w.vertices)
                }),
                "witness {:?} is not a full cycle in any vertex link",
                w.vertices
            );
        }
    }
}

#[test]
fn report_json_round_trips() {
    let b = ball("2,4,4", 8);
    let r = check_vertex_links(&b, Largeness::Finite(6), 2);
    let back: VerificationReport = serde_json::from_str(&json(&r)).unwrap();
    assert_eq!(json(&back), json(&r));
    assert_eq!(back.violations.len(), r.violations.len());
}

#[test]
fn checks_are_deterministic() {
    let sys = system("2,6,3,3,6,3");
    let b = ball("2,6,3,3,6,3", 6);
    let hat = systolize(&b, &sys, false).unwrap();
    let run = || {
        [
            json(&check_vertex_links(&hat, Largeness::Finite(6), 2)),
            json(&check_edge_links(&hat, Largeness::Finite(6), 2)),
            json(&check_new_edge_triangles(&b, &hat)),
            hat.to_json(false).unwrap(),
        ]
    };
    assert_eq!(run(), run());
    let a = run_lemma_oracles(40, 8, 7).unwrap();
    let c = run_lemma_oracles(40, 8, 7).unwrap();
    assert_eq!(json(&a), json(&c));
    assert_eq!(json(&run_face_complex_oracle(20, 6, 3).unwrap()), json(&run_face_complex_oracle(20, 6, 3).unwrap()));
}

#[test]
fn triangle_check_sees_every_new_edge() {
    let sys = system("2,3,6");
    let b = ball("2,3,6", 10);
    let hat = systolize(&b, &sys, false).unwrap();
    let r = check_new_edge_triangles(&b, &hat);
    assert!(r.passed());
    assert_eq!(r.scanned, hat.edges().filter(|e| e.2.is_new()).count());
    // swapped: every added edge is missing from the "systolization"
    let swapped = check_new_edge_triangles(&hat, &b);
    assert_eq!(swapped.violations.len(), r.scanned);
}

#[test]
fn structural_rank3_catches_what_systolization_fixes() {
    let sys = system("2,3,6");
    let b = ball("2,3,6", 10);
    assert!(check_structural_rank3(&b).passed());
    let hat = systolize(&b, &sys, false).unwrap();
    assert!(check_full_six_cycles(&hat, 3).passed());
}

#[test]
fn oracle_preconditions() {
    assert!(run_lemma_oracles(0, 8, 1).is_err());
    assert!(run_lemma_oracles(4, 1, 1).is_err());
    assert!(run_face_complex_oracle(0, 8, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn larger_margins_scan_less_and_never_find_more(
        labels in prop::sample::select(vec!["2,3,6", "2,4,4", "2,4,6", "3,3,4"]),
        radius in 6u32..11,
        m1 in 1u32..5,
        dm in 0u32..4,
    ) {
        let b = ball(labels, radius);
        let sys = system(labels);
        let c = systolize(&b, &sys, true).unwrap();
        let lo = check_vertex_links(&c, Largeness::Finite(6), m1);
        let hi = check_vertex_links(&c, Largeness::Finite(6), m1 + dm);
        prop_assert!(hi.scanned <= lo.scanned);
        prop_assert!(hi.violations.len() <= lo.violations.len());
        prop_assert_eq!(lo.scanned + lo.skipped_boundary, c.vertex_count());
        prop_assert_eq!(hi.scanned + hi.skipped_boundary, c.vertex_count());
        let d = Depths::new(&c);
        let interior = (0..c.vertex_count() as VertexId).filter(|&v| d.vertex(v) >= m1).count();
        prop_assert_eq!(lo.scanned, interior);
    }
}
