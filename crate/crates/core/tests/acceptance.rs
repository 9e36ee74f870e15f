//! Acceptance suite: ten exact checks over a seeded corpus, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use cbp_core::ehrhart::{catalan, narayana_numbers};
use cbp_core::facets::ibi_collisions;
use cbp_core::families::path;
use cbp_core::verify::{random_weights, same_rows};
use cbp_core::vertices::incidence_points;
use cbp_core::*;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 20_240_601;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn decomposed(max_blocks: usize) -> Vec<(String, BlockDecomposition)> {
    corpus(6, SEED)
        .into_iter()
        .map(|e| (e.id, block_decomposition(&e.graph).expect("corpus graphs are connected")))
        .filter(|(_, d)| d.block_count() <= max_blocks)
        .collect()
}

/// Runs `check` on every graph in parallel and reports the first failure.
fn over_corpus(
    max_blocks: usize,
    check: impl Fn(&BlockDecomposition) -> std::result::Result<(), String> + Sync,
) -> Outcome {
    let graphs = decomposed(max_blocks);
    let failures: Vec<String> = graphs
        .par_iter()
        .filter_map(|(id, d)| check(d).err().map(|e| format!("{id}: {e}")))
        .collect();
    match failures.first() {
        None => Ok(format!("{} graphs", graphs.len())),
        Some(f) => Err(format!("{} of {} graphs failed, first {f}", failures.len(), graphs.len())),
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn e2s(e: CbpError) -> String {
    e.to_string()
}

fn facet_completeness() -> Outcome {
    let count = decomposed(6).len();
    if count < 50 {
        return Err(format!("only {count} corpus graphs with at most 6 blocks"));
    }
    over_corpus(6, |d| {
        let h = h_representation(d).map_err(e2s)?;
        let verts = enumerate_vertices(d).map_err(e2s)?;
        let hull = brute_force_facets(&incidence_points(d, &verts)).map_err(e2s)?;
        ensure(same_rows(&h, &hull), || format!("{} rows versus {} hull facets", h.len(), hull.len()))
    })
}

fn construction_completeness() -> Outcome {
    over_corpus(6, |d| {
        let enumerated = enumerate_ibis(d).map_err(e2s)?;
        let constructed = construct_ibis(d).map_err(e2s)?;
        ensure(enumerated == constructed, || {
            format!("{} enumerated versus {} constructed", enumerated.len(), constructed.len())
        })?;
        ensure(ibi_collisions(&enumerated).is_empty(), || "colliding coefficient vectors".into())
    })
}

fn edge_characterization() -> Outcome {
    over_corpus(5, |d| {
        let h = h_representation(d).map_err(e2s)?;
        let comb = polytope_graph(d).map_err(e2s)?;
        let geom = polytope_graph_geometric(d, &h).map_err(e2s)?;
        ensure(comb == geom, || "adjacency oracles disagree".into())
    })
}

fn diameter_hirsch() -> Outcome {
    over_corpus(6, |d| {
        let h = h_representation(d).map_err(e2s)?;
        let pg = polytope_graph(d).map_err(e2s)?;
        let r = hirsch_check(d, &pg, &h).map_err(e2s)?;
        ensure(r.diameter <= r.dimension && r.diameter <= r.hirsch_bound, || format!("{r:?}"))
    })
}

fn dimension_simplicity() -> Outcome {
    over_corpus(6, |d| {
        let dim = polytope_dimension_check(d).map_err(e2s)?;
        ensure(dim == d.block_count(), || format!("affine rank {dim}"))?;
        let h = h_representation(d).map_err(e2s)?;
        let pg = polytope_graph(d).map_err(e2s)?;
        let s = simplicity_report(d, &pg, &h);
        ensure(
            s.is_simple == (d.cut_vertices().len() <= 1) && s.is_simplicial == (d.block_count() <= 2),
            || format!("{s:?}"),
        )
    })
}

fn hstar_suite() -> Outcome {
    over_corpus(5, |d| {
        let h = h_representation(d).map_err(e2s)?;
        let p = hstar_profile(d, &h).map_err(e2s)?;
        let f = hstar_checks(&p, d, &h).map_err(e2s)?;
        let n = d.block_count();
        let vertices = enumerate_vertices(d).map_err(e2s)?.len() as i64;
        ensure(
            p.hstar[n] == 0
                && (0..n).all(|i| p.hstar[i] == p.hstar[n - 1 - i])
                && f.unimodal
                && p.hstar[1] == vertices - (n as i64 + 1)
                && p.hstar[1] >= n as i64 - 1
                && (p.hstar[1] == n as i64 - 1) == (n <= 2)
                && f.reflexive_index2,
            || format!("h* = {:?}", p.hstar),
        )
    })
}

fn block_path_values() -> Outcome {
    let expected: [(usize, Vec<i64>, i64); 3] = [
        (2, vec![1, 1, 0], 2),
        (3, vec![1, 3, 1, 0], 5),
        (4, vec![1, 6, 6, 1, 0], 14),
    ];
    for (n, hstar, cat) in expected {
        let d = block_decomposition(&path(n)).map_err(e2s)?;
        let h = h_representation(&d).map_err(e2s)?;
        let p = hstar_profile(&d, &h).map_err(e2s)?;
        if p.hstar != hstar {
            return Err(format!("path of {n}: h* = {:?}", p.hstar));
        }
        let sum = BigInt::from(p.hstar.iter().sum::<i64>());
        if sum != BigInt::from(cat) || sum != catalan(n as u64) {
            return Err(format!("path of {n}: sum {sum}"));
        }
        let nara: Vec<i64> = narayana_numbers(n as u64).iter().map(|x| x.to_string().parse().unwrap()).collect();
        if p.hstar[..n] != nara[..] {
            return Err(format!("path of {n}: Narayana coefficients {nara:?}"));
        }
    }
    Ok("paths of 2, 3, 4 blocks".into())
}

fn groebner_basis() -> Outcome {
    over_corpus(4, |d| {
        let (order, g) = groebner_candidates(d).map_err(e2s)?;
        ensure(g.iter().all(|b| b.in_toric_ideal(&order)), || "binomial outside the ideal".into())?;
        ensure(
            g.iter().all(|b| b.split(&order).0.iter().all(|&e| e <= 1)),
            || "leading term not squarefree".into(),
        )?;
        ensure(buchberger_verify(&g, &order).map_err(e2s)?, || "S-pair does not reduce".into())?;
        ensure(fiber_reduction_test(d, &g, &order, 3).map_err(e2s)?, || "fiber does not reduce".into())
    })
}

fn triangulation_suite() -> Outcome {
    over_corpus(4, |d| {
        let (order, g) = groebner_candidates(d).map_err(e2s)?;
        let c = triangulation(d, &g, &order).map_err(e2s)?;
        let h = h_representation(d).map_err(e2s)?;
        let p = hstar_profile(d, &h).map_err(e2s)?;
        let r = triangulation_checks(&c, &p).map_err(e2s)?;
        ensure(r.maximal_faces as i64 == p.hstar.iter().sum::<i64>(), || format!("{r:?}"))
    })
}

fn optimizer_suite() -> Outcome {
    over_corpus(6, |d| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ d.graph().edge_count() as u64);
        for _ in 0..500 {
            let w = random_weights(&mut rng, d.block_count());
            let dp = max_weight_connected_blockset(d, &w).map_err(e2s)?;
            let brute = brute_force_optimum(d, &w).map_err(e2s)?;
            ensure(dp == brute, || format!("weights {w:?}"))?;
        }
        if classify(d.graph()).map_err(e2s)?.is_eulerian_cactus {
            for _ in 0..100 {
                let w = random_weights(&mut rng, d.graph().edge_count());
                let s = eulerian_adapter(d, &w).map_err(e2s)?;
                ensure(graph::is_eulerian_edge_set(d.graph(), &s.edges), || format!("{:?}", s.edges))?;
            }
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("facet completeness", facet_completeness),
        ("construction completeness", construction_completeness),
        ("edge characterization", edge_characterization),
        ("diameter and Hirsch bound", diameter_hirsch),
        ("dimension and simplicity", dimension_simplicity),
        ("h* suite", hstar_suite),
        ("block path h* values", block_path_values),
        ("Groebner basis", groebner_basis),
        ("triangulation", triangulation_suite),
        ("optimizer", optimizer_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
