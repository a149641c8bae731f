mod common;

use common::{ball, ball_sphere_sizes, system, Reflections};
use proptest::prelude::*;
use systolic_core::coxeter::{tits_reduce, CoxeterGroup, Depths, Generator};

#[test]
fn chamber_counts_match_reflection_representation() {
    for (labels, radius) in [
        ("2,3,6", 10),
        ("2,3,7", 9),
        ("2,4,5", 8),
        ("3,3,3", 8),
        ("2,3,3", 10),
        ("2,6,3,3,6,3", 6),
        ("2,6,3,6,3,3", 6),
        ("3,3,3,3,3,3", 5),
    ] {
        let b = ball(labels, radius);
        let (expected, _) = Reflections::new(&system(labels)).sphere_sizes(radius);
        assert_eq!(ball_sphere_sizes(&b), expected, "{labels} radius {radius}");
    }
}

#[test]
fn chamber_words_are_shortlex_reduced_and_distinct() {
    let sys = system("2,3,6");
    let b = ball("2,3,6", 8);
    let refl = Reflections::new(&sys);
    let mut keys = std::collections::HashSet::new();
    let mut prev: Option<Vec<Generator>> = None;
    for ch in &b.metadata.chambers {
        let w = sys.parse_word(&ch.word).unwrap();
        assert_eq!(w.len() as u32, ch.distance);
        assert_eq!(tits_reduce(&w, &sys).unwrap().letters(), &w[..]);
        assert!(keys.insert(Reflections::key(&refl.word(&w))));
        if let Some(p) = &prev {
            assert!((p.len(), p) < (w.len(), &w), "chambers in shortlex order");
        }
        prev = Some(w);
    }
}

#[test]
fn adjacent_chambers_share_a_panel() {
    // chambers w and ws share every vertex except the one of type s
    let sys = system("2,4,6");
    let b = ball("2,4,6", 6);
    let index: std::collections::HashMap<String, usize> =
        b.metadata.chambers.iter().enumerate().map(|(i, c)| (c.word.clone(), i)).collect();
    let mut group = CoxeterGroup::new(sys.clone());
    for ch in b.metadata.chambers.iter().filter(|c| c.distance < 6) {
        let w = group.reduce(&sys.parse_word(&ch.word).unwrap()).unwrap();
        for s in 0..3 {
            let ws = group.multiply(&w, s).unwrap();
            let other = &b.metadata.chambers[index[&sys.format_word(ws.letters())]];
            for t in 0..3 {
                assert_eq!(ch.vertices[t] == other.vertices[t], t != s as usize);
            }
        }
    }
}

#[test]
fn complete_stars_have_the_special_subgroup_order() {
    let b = ball("2,3,6", 12);
    let d = Depths::new(&b);
    let sizes = [4, 6, 12];
    for v in 0..b.vertex_count() as u32 {
        let t = ["2", "3", "6"].iter().position(|k| *k == b.kind(v)).unwrap();
        let n = d.chambers_containing(&[v]).len();
        if d.vertex(v) >= 1 {
            assert_eq!(n, sizes[t]);
            assert!(d.star_complete(&[v]));
        }
        assert!(n <= sizes[t]);
    }
}

fn arb_word(rank: u8) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(0..rank, 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_agree_with_matrices(
        labels in prop::sample::select(vec!["2,3,6", "2,4,5", "3,3,4", "2,3,7", "2,6,3,3,6,3"]),
        a in arb_word(4),
        b in arb_word(4),
    ) {
        let sys = system(labels);
        let r = sys.rank() as u8;
        let a: Vec<Generator> = a.into_iter().filter(|&s| s < r).collect();
        let b: Vec<Generator> = b.into_iter().filter(|&s| s < r).collect();
        let refl = Reflections::new(&sys);
        let na = tits_reduce(&a, &sys).unwrap();
        let nb = tits_reduce(&b, &sys).unwrap();
        // reduction keeps the element
        prop_assert_eq!(Reflections::key(&refl.word(&a)), Reflections::key(&refl.word(na.letters())));
        // equal elements have equal normal forms
        let same = Reflections::key(&refl.word(&a)) == Reflections::key(&refl.word(&b));
        prop_assert_eq!(same, na == nb);
        // normal form length is the word length of the element
        let (_, lengths) = refl.sphere_sizes(na.len() as u32);
        prop_assert_eq!(lengths.get(&Reflections::key(&refl.word(&a))).copied(), Some(na.len() as u32));
    }
}
