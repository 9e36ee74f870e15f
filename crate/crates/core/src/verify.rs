//! The full per-graph verification sweep behind `cbp verify`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{block_decomposition, blockset_closure, classify_decomposition, BlockDecomposition};
use crate::corpus::CorpusEntry;
use crate::ehrhart::{hstar_checks, hstar_profile};
use crate::error::{CbpError, Result};
use crate::facets::{construct_ibis, enumerate_ibis, facet_certificate, h_representation, ibi_collisions, value_range};
use crate::hull::{brute_force_facets, same_hyperplane, RationalPolyhedron};
use crate::num::{ratio, Rational};
use crate::optimize::{brute_force_optimum, eulerian_adapter, max_weight_connected_blockset, tree_adapter};
use crate::polytope_graph::{hirsch_check, polytope_graph, polytope_graph_geometric, simplicity_report};
use crate::toric::{buchberger_verify, fiber_reduction_test, groebner_candidates, triangulation, triangulation_checks};
use crate::vertices::{enumerate_vertices, incidence_points, polytope_dimension_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// h* checks run on graphs with at most this many blocks.
    pub max_dilation: usize,
    /// Groebner and triangulation checks run on graphs with at most this many blocks.
    pub groebner_max_blocks: usize,
    pub optimizer_trials: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_dilation: 5,
            groebner_max_blocks: 4,
            optimizer_trials: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub seed: u64,
    pub graph: crate::graph::Graph,
    pub blocks: usize,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.status == Status::Fail)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn fail(detail: impl Into<String>) -> Result<()> {
    Err(CbpError::AssertionFailure(detail.into()))
}

pub fn same_rows(a: &RationalPolyhedron, b: &RationalPolyhedron) -> bool {
    a.len() == b.len()
        && a.inequalities
            .iter()
            .zip(&b.inequalities)
            .all(|(x, y)| same_hyperplane(x, y))
}

struct Run<'a> {
    report: &'a mut VerificationReport,
}

impl Run<'_> {
    fn check(&mut self, name: &str, enabled: bool, f: impl FnOnce() -> Result<()>) {
        if !enabled {
            self.report.checks.insert(
                name.into(),
                CheckOutcome {
                    status: Status::Skipped,
                    detail: None,
                },
            );
            return;
        }
        let start = Instant::now();
        let out = f();
        self.report
            .timings_ms
            .insert(name.into(), start.elapsed().as_secs_f64() * 1e3);
        let outcome = match out {
            Ok(()) => CheckOutcome {
                status: Status::Pass,
                detail: None,
            },
            Err(e) => CheckOutcome {
                status: Status::Fail,
                detail: Some(e.to_string()),
            },
        };
        self.report.checks.insert(name.into(), outcome);
    }
}

pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect()
}

fn check_facets(d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<()> {
    let verts = enumerate_vertices(d)?;
    let brute = brute_force_facets(&incidence_points(d, &verts))?;
    if !same_rows(h, &brute) {
        return fail(format!("{} rows versus {} hull facets", h.len(), brute.len()));
    }
    Ok(())
}

fn check_certificates(d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<()> {
    for row in &h.inequalities {
        if !facet_certificate(d, row)?.is_facet(d.block_count()) {
            return fail(format!("row {row:?} is not facet-defining"));
        }
    }
    Ok(())
}

fn check_ibis(d: &BlockDecomposition) -> Result<()> {
    let enumerated = enumerate_ibis(d)?;
    let constructed = construct_ibis(d)?;
    if enumerated != constructed {
        return fail(format!(
            "{} enumerated versus {} constructed inequalities",
            enumerated.len(),
            constructed.len()
        ));
    }
    if !ibi_collisions(&enumerated).is_empty() {
        return fail("two independent sets share a coefficient vector");
    }
    let verts = enumerate_vertices(d)?;
    for ibi in &enumerated {
        let (max, min) = value_range(ibi, &verts);
        if max != 1 || min > 0 {
            return fail(format!("inequality {ibi:?} has range [{min}, {max}]"));
        }
    }
    Ok(())
}

fn check_structure(d: &BlockDecomposition) -> Result<()> {
    let dim = polytope_dimension_check(d)?;
    if dim != d.block_count() {
        return fail(format!("affine rank {dim} for {} blocks", d.block_count()));
    }
    for v in enumerate_vertices(d)? {
        if blockset_closure(d, &v) != v {
            return fail(format!("vertex {v} is not closed"));
        }
    }
    Ok(())
}

fn check_polytope_graph(d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<()> {
    let pg = polytope_graph(d)?;
    if pg != polytope_graph_geometric(d, h)? {
        return fail("combinatorial and geometric adjacency differ");
    }
    hirsch_check(d, &pg, h)?;
    let s = simplicity_report(d, &pg, h);
    if s.is_simple != s.predicted_simple || s.is_simplicial != s.predicted_simplicial {
        return fail(format!("{s:?}"));
    }
    Ok(())
}

fn check_toric(d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<()> {
    let (order, g) = groebner_candidates(d)?;
    if !g.iter().all(|b| b.in_toric_ideal(&order)) {
        return fail("a candidate binomial is not in the toric ideal");
    }
    if !buchberger_verify(&g, &order)? {
        return fail("an S-polynomial does not reduce to zero");
    }
    if !fiber_reduction_test(d, &g, &order, 3)? {
        return fail("a toric binomial of degree at most 3 does not reduce to zero");
    }
    let c = triangulation(d, &g, &order)?;
    triangulation_checks(&c, &hstar_profile(d, h)?)?;
    Ok(())
}

fn check_optimizer(d: &BlockDecomposition, trials: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..trials {
        let w = random_weights(rng, d.block_count());
        let dp = max_weight_connected_blockset(d, &w)?;
        let brute = brute_force_optimum(d, &w)?;
        if dp != brute {
            return fail(format!("weights {w:?}: dp {dp:?} versus brute force {brute:?}"));
        }
    }
    let class = classify_decomposition(d);
    let edges = d.graph().edge_count();
    if class.is_eulerian_cactus {
        for _ in 0..trials.min(50) {
            eulerian_adapter(d, &random_weights(rng, edges))?;
        }
    }
    if class.is_tree {
        for _ in 0..trials.min(50) {
            let w = random_weights(rng, edges);
            let s = tree_adapter(d, &w)?;
            if !crate::graph::edge_set_is_connected(d.graph().vertex_count(), &s.edges) {
                return fail("tree adapter returned a disconnected edge set");
            }
        }
    }
    Ok(())
}

/// Runs every check that fits the budgets in `cfg` on one graph.
pub fn verify_graph(entry: &CorpusEntry, cfg: &VerifyConfig) -> VerificationReport {
    let mut report = VerificationReport {
        id: entry.id.clone(),
        seed: entry.seed,
        graph: entry.graph.clone(),
        blocks: 0,
        checks: BTreeMap::new(),
        timings_ms: BTreeMap::new(),
    };
    let d = match block_decomposition(&entry.graph) {
        Ok(d) => d,
        Err(e) => {
            report.checks.insert(
                "blocks".into(),
                CheckOutcome {
                    status: Status::Fail,
                    detail: Some(e.to_string()),
                },
            );
            return report;
        }
    };
    report.blocks = d.block_count();
    let h = h_representation(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ entry.graph.edge_count() as u64);
    let n = d.block_count();
    let mut run = Run { report: &mut report };
    let with_h = |f: &dyn Fn(&RationalPolyhedron) -> Result<()>| match &h {
        Ok(h) => f(h),
        Err(e) => Err(e.clone()),
    };
    run.check("facet_equivalence", true, || with_h(&|h| check_facets(&d, h)));
    run.check("facet_certificates", true, || with_h(&|h| check_certificates(&d, h)));
    run.check("ibi_construction", true, || check_ibis(&d));
    run.check("dimension_and_closure", true, || check_structure(&d));
    run.check("polytope_graph", true, || with_h(&|h| check_polytope_graph(&d, h)));
    run.check("hstar", n <= cfg.max_dilation, || {
        with_h(&|h| {
            let p = hstar_profile(&d, h)?;
            hstar_checks(&p, &d, h).map(|_| ())
        })
    });
    run.check("groebner_and_triangulation", n <= cfg.groebner_max_blocks, || {
        with_h(&|h| check_toric(&d, h))
    });
    run.check("optimizer", true, || check_optimizer(&d, cfg.optimizer_trials, &mut rng));
    report
}

/// Verifies each graph in parallel; the output keeps corpus order.
pub fn verify_corpus(entries: &[CorpusEntry], cfg: &VerifyConfig) -> Vec<VerificationReport> {
    entries.par_iter().map(|e| verify_graph(e, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;

    #[test]
    fn small_sweep_passes() {
        let cfg = VerifyConfig {
            optimizer_trials: 20,
            ..VerifyConfig::default()
        };
        let reports = verify_corpus(&corpus(3, 7), &cfg);
        for r in &reports {
            assert!(r.passed(), "{} failed {:?}: {:?}", r.id, r.failures(), r.checks);
        }
        assert_eq!(
            reports.iter().map(|r| r.id.clone()).collect::<Vec<_>>(),
            corpus(3, 7).into_iter().map(|e| e.id).collect::<Vec<_>>()
        );
    }

    #[test]
    fn budgets_skip_checks() {
        let cfg = VerifyConfig {
            max_dilation: 1,
            groebner_max_blocks: 1,
            optimizer_trials: 5,
            seed: 3,
        };
        let entry = &corpus(3, 1)[2];
        let r = verify_graph(entry, &cfg);
        assert_eq!(r.checks["hstar"].status, Status::Skipped);
        assert_eq!(r.checks["groebner_and_triangulation"].status, Status::Skipped);
        assert!(r.passed());
    }
}
