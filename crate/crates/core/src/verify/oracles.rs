use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::random::{
    blow_up, glue_along_cliques, random_clique, random_clique_tree_like, random_graph, random_six_large,
    random_triangle_free,
};
use super::{VerificationReport, Violation};
use crate::complex::{face_complex, is_k_large, Largeness, Metadata, Origin, SimpleGraph, TypedComplex, Vertex, VertexId};
use crate::error::{Error, Result};
use crate::systolize::{collapse_hypothesis, gamma_star, gamma_tilde};

const KS: [usize; 4] = [4, 5, 6, 7];

fn large(g: &SimpleGraph, k: usize) -> bool {
    is_k_large(g, Largeness::Finite(k)).0
}

fn describe(g: &SimpleGraph) -> String {
    format!("{} vertices, edges {:?}", g.vertex_count(), g.edges().collect::<Vec<_>>())
}

/// Independent random stream for one trial of one oracle.
fn stream(seed: u64, oracle: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(oracle << 32 | trial as u64);
    rng
}

fn amalgam_trial(rng: &mut ChaCha8Rng, max_vertices: usize) -> Vec<Violation> {
    let na = rng.gen_range(1..max_vertices);
    let a = {
        let p = rng.gen_range(0.2..0.8);
        random_graph(rng, na, p)
    };
    let sa = random_clique(rng, &a, 3);
    let nb = rng.gen_range(sa.len().max(1)..=max_vertices - na + sa.len());
    let mut b = {
        let p = rng.gen_range(0.2..0.8);
        random_graph(rng, nb, p)
    };
    // make the first |sa| vertices of b a clique to glue along
    let sb: Vec<VertexId> = (0..sa.len() as VertexId).collect();
    for (i, &u) in sb.iter().enumerate() {
        for &v in &sb[i + 1..] {
            b.add_edge(u, v);
        }
    }
    let x = glue_along_cliques(&a, &sa, &b, &sb);
    KS.iter()
        .filter(|&&k| large(&x, k) != (large(&a, k) && large(&b, k)))
        .map(|&k| {
            Violation::structural(
                "amalgam along a simplex is k-large iff both parts are",
                vec![],
                format!("k = {k}; A: {}; B: {}; glued along {sa:?} ~ {sb:?}", describe(&a), describe(&b)),
            )
        })
        .collect()
}

fn collapse_trial(rng: &mut ChaCha8Rng, max_vertices: usize) -> Vec<Violation> {
    let nb = rng.gen_range(1..=max_vertices.clamp(1, 7));
    let b = {
        let p = rng.gen_range(0.2..0.8);
        random_graph(rng, nb, p)
    };
    let mut sizes = vec![1usize; nb];
    let mut total = nb;
    while total < max_vertices && rng.gen_bool(0.6) {
        sizes[rng.gen_range(0..nb)] += 1;
        total += 1;
    }
    let (mut a, f) = blow_up(&b, &sizes);
    // sometimes break the hypothesis by dropping an edge of A
    let broken = a.edge_count() > 0 && rng.gen_bool(0.25);
    if broken {
        let edges: Vec<_> = a.edges().collect();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let kept = edges.into_iter().filter(|&e| e != (u, v));
        a = SimpleGraph::from_edges(a.vertex_count(), kept);
    }
    let mut out = Vec::new();
    match collapse_hypothesis(&f, &a, &b) {
        Ok(holds) if holds == broken => out.push(Violation::structural(
            "collapse hypothesis is recognised",
            vec![],
            format!("hypothesis reported {holds} for a map that was {}", if broken { "broken" } else { "intact" }),
        )),
        Ok(true) => {
            for &k in &KS {
                if large(&a, k) != large(&b, k) {
                    out.push(Violation::structural(
                        "collapse preserves k-largeness both ways",
                        vec![],
                        format!("k = {k}; A: {}; B: {}; map {f:?}", describe(&a), describe(&b)),
                    ));
                }
            }
        }
        Ok(false) => {}
        Err(e) => out.push(Violation::structural("collapse map is simplicial and onto", vec![], e.to_string())),
    }
    out
}

fn gamma_star_trial(rng: &mut ChaCha8Rng, max_vertices: usize) -> Vec<Violation> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let g = random_clique_tree_like(rng, n);
    match gamma_star(&g) {
        Ok(s) => KS
            .iter()
            .filter(|&&k| large(&s.graph, k) != large(&g, k))
            .map(|&k| {
                Violation::structural("the clique graph extension is k-large iff the graph is", vec![], format!("k = {k}; {}", describe(&g)))
            })
            .collect(),
        Err(e) => vec![Violation::structural("generated graph meets the clique precondition", vec![], e.to_string())],
    }
}

fn gamma_tilde_trial(rng: &mut ChaCha8Rng, max_vertices: usize) -> Vec<Violation> {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let g = {
        let p = rng.gen_range(0.2..0.7);
        random_triangle_free(rng, n, p)
    };
    let girth = g.girth();
    match gamma_tilde(&g) {
        Ok(t) => KS
            .iter()
            .filter(|&&k| large(&t.graph, k) != girth.is_none_or(|x| x >= k))
            .map(|&k| {
                Violation::structural("the doubled graph is k-large iff the girth is at least k", vec![], format!("k = {k}; {}", describe(&g)))
            })
            .collect(),
        Err(e) => vec![Violation::structural("generated graph is triangle-free", vec![], e.to_string())],
    }
}

type Trial = fn(&mut ChaCha8Rng, usize) -> Vec<Violation>;

/// Randomized checks of four equivalences on small graphs: gluing along a
/// simplex, collapsing along a blow-up map, the clique extension Γ* and the
/// doubled graph Γ̃, each compared for k in 4..=7 by exhaustive full-cycle
/// search. Deterministic for a fixed seed: every trial draws from its own
/// random stream.
pub fn run_lemma_oracles(trials: usize, max_vertices: usize, seed: u64) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is needed".into()));
    }
    if max_vertices < 2 {
        return Err(Error::Precondition("instances need at least two vertices".into()));
    }
    let start = Instant::now();
    let oracles: [Trial; 4] = [amalgam_trial, collapse_trial, gamma_star_trial, gamma_tilde_trial];
    let violations: Vec<Violation> = (0..oracles.len() * trials)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (o, t) = (i / trials, i % trials);
            let mut rng = stream(seed, o as u64, t);
            oracles[o](&mut rng, max_vertices)
        })
        .collect();
    let mut report = VerificationReport::new("lemma oracles", 0);
    report.scanned = oracles.len() * trials;
    report.violations = violations;
    report.elapsed = start.elapsed();
    Ok(report)
}

fn flag_complex(g: &SimpleGraph) -> TypedComplex {
    let vertices = (0..g.vertex_count() as VertexId).map(|i| Vertex::new(i, format!("v{i}"))).collect();
    let edges = g.edges().map(|(u, v)| (u, v, Origin::Original));
    TypedComplex::flag_span(vertices, edges, Metadata::with_provenance("random flag complex"))
        .expect("a simple graph spans a flag complex")
}

/// Random flag complexes on at most `max_vertices` vertices, half of them
/// made 6-large: whenever the input is k-large (k in 4..=7), its face
/// complex must be too. `scanned` counts the inputs that are 6-large.
pub fn run_face_complex_oracle(trials: usize, max_vertices: usize, seed: u64) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is needed".into()));
    }
    let start = Instant::now();
    let results: Vec<(bool, Vec<Violation>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 16, t);
            let n = rng.gen_range(1..=max_vertices.max(1));
            let p = rng.gen_range(0.2..0.7);
            let g = if t % 2 == 0 { random_six_large(&mut rng, n, p) } else { random_graph(&mut rng, n, p) };
            let f = face_complex(&flag_complex(&g)).expect("face complex of a flag complex");
            let violations = KS
                .iter()
                .filter(|&&k| large(&g, k) && !large(f.graph(), k))
                .map(|&k| {
                    Violation::structural("face complex of a k-large complex is k-large", vec![], format!("k = {k}; {}", describe(&g)))
                })
                .collect();
            (large(&g, 6), violations)
        })
        .collect();
    let mut report = VerificationReport::new("face complex oracle", 0);
    for (six, v) in results {
        if six {
            report.scanned += 1;
        } else {
            report.skipped_boundary += 1;
        }
        report.violations.extend(v);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(run_lemma_oracles(0, 10, 1), Err(Error::Precondition(_))));
        assert!(run_face_complex_oracle(0, 8, 1).is_err());
    }

    #[test]
    fn oracles_are_deterministic_and_pass() {
        let a = run_lemma_oracles(20, 8, 3).unwrap();
        let b = run_lemma_oracles(20, 8, 3).unwrap();
        assert_eq!(a.violations, b.violations);
        assert!(a.passed(), "{:?}", a.violations);
        assert!(run_face_complex_oracle(20, 7, 3).unwrap().passed());
    }
}
