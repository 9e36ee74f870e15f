//! Facets of CBP(G): nonnegativity rows plus independent blocks inequalities,
//! generated both from the definition and by the inductive construction.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{blockset_closure, split_components_at, BlockDecomposition};
use crate::blockset::BlockSubset;
use crate::error::{CbpError, Result};
use crate::hull::{certify_row, Certificate, Inequality, RationalPolyhedron};
use crate::num::rat;
use crate::vertices::{enumerate_vertices, incidence_points};

/// Largest block count accepted by the IBI generators.
pub const IBI_BLOCK_CAP: usize = 14;
/// Largest number of construction states explored.
pub const CONSTRUCTION_STATE_CAP: usize = 2_000_000;

/// An independent blocks inequality `alpha · x <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndependentBlocksInequality {
    pub independent_set: BlockSubset,
    pub alpha: Vec<i64>,
}

impl IndependentBlocksInequality {
    pub fn new(independent_set: impl Into<BlockSubset>, alpha: Vec<i64>) -> Self {
        IndependentBlocksInequality {
            independent_set: independent_set.into(),
            alpha,
        }
    }

    /// Reads the independent set off `alpha` as the blocks with coefficient 1.
    pub fn from_alpha(alpha: Vec<i64>) -> Self {
        let independent_set = (0..alpha.len()).filter(|&i| alpha[i] == 1).collect();
        IndependentBlocksInequality {
            independent_set,
            alpha,
        }
    }

    pub fn to_inequality(&self) -> Inequality {
        Inequality::from_i64(&self.alpha, 1)
    }

    pub fn value_at(&self, a: &BlockSubset) -> i64 {
        a.members().iter().map(|&b| self.alpha[b]).sum()
    }
}

fn sum_over(alpha: &[i64], set: &BlockSubset) -> i64 {
    set.members().iter().map(|&b| alpha[b]).sum()
}

/// First violated clause of the definition, if any.
pub fn ibi_violation(d: &BlockDecomposition, cand: &IndependentBlocksInequality) -> Option<String> {
    let n = d.block_count();
    let alpha = &cand.alpha;
    let set = &cand.independent_set;
    if alpha.len() != n {
        return Some(format!("alpha has length {}, expected {n}", alpha.len()));
    }
    if set.is_empty() {
        return Some("independent set is empty".into());
    }
    if d.check_subset(set).is_err() {
        return Some(format!("independent set {set} has an out-of-range block"));
    }
    if !d.is_independent(set) {
        return Some(format!("blocks of {set} are not pairwise vertex-disjoint"));
    }
    if let Some(&b) = set.members().iter().find(|&&b| alpha[b] != 1) {
        return Some(format!("alpha[{b}] = {} on a member of the independent set", alpha[b]));
    }
    let closure = blockset_closure(d, set);
    if let Some(b) = (0..n).find(|&b| !closure.contains(b) && alpha[b] != 0) {
        return Some(format!("alpha[{b}] = {} outside the closure", alpha[b]));
    }
    let interior = closure.difference(set);
    if let Some(&b) = interior.members().iter().find(|&&b| alpha[b] > 0) {
        return Some(format!("alpha[{b}] = {} is positive inside the closure", alpha[b]));
    }
    let k = set.len() as i64;
    if sum_over(alpha, &interior) != -(k - 1) {
        return Some(format!("interior coefficients sum to {}, expected {}", sum_over(alpha, &interior), -(k - 1)));
    }
    for sub in set.subsets().filter(|s| s.len() >= 2) {
        let inner = blockset_closure(d, &sub).difference(set);
        let s = sum_over(alpha, &inner);
        if s > -(sub.len() as i64 - 1) {
            return Some(format!("subset {sub} has interior sum {s} > {}", -(sub.len() as i64 - 1)));
        }
    }
    let total: i64 = alpha.iter().sum();
    if total != 1 {
        return Some(format!("coefficients sum to {total}"));
    }
    None
}

pub fn validate_ibi(d: &BlockDecomposition, cand: &IndependentBlocksInequality) -> bool {
    ibi_violation(d, cand).is_none()
}

fn check_block_cap(d: &BlockDecomposition) -> Result<()> {
    if d.block_count() > IBI_BLOCK_CAP {
        return Err(CbpError::CountOverflow { cap: IBI_BLOCK_CAP });
    }
    Ok(())
}

/// All nonempty independent sets of blocks.
pub fn independent_sets(d: &BlockDecomposition) -> Vec<BlockSubset> {
    fn grow(d: &BlockDecomposition, current: &mut Vec<usize>, from: usize, out: &mut Vec<BlockSubset>) {
        for b in from..d.block_count() {
            if current.iter().all(|&c| !d.share_vertex(c, b)) {
                current.push(b);
                out.push(BlockSubset::from(current.clone()));
                grow(d, current, b + 1, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(d, &mut Vec::new(), 0, &mut out);
    out.sort();
    out
}

/// Weak compositions of `total` into `parts` nonnegative integers.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every IBI, by enumerating coefficient vectors for each independent set.
pub fn enumerate_ibis(d: &BlockDecomposition) -> Result<Vec<IndependentBlocksInequality>> {
    check_block_cap(d)?;
    let n = d.block_count();
    let mut out: Vec<IndependentBlocksInequality> = independent_sets(d)
        .into_par_iter()
        .flat_map_iter(|set| {
            let closure = blockset_closure(d, &set);
            let interior = closure.difference(&set);
            let k = set.len() as i64;
            compositions(k - 1, interior.len())
                .into_iter()
                .filter_map(|comp| {
                    let mut alpha = vec![0i64; n];
                    for &b in set.members() {
                        alpha[b] = 1;
                    }
                    for (&b, c) in interior.members().iter().zip(comp) {
                        alpha[b] = -c;
                    }
                    let cand = IndependentBlocksInequality::new(set.clone(), alpha);
                    validate_ibi(d, &cand).then_some(cand)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Groups of IBIs sharing one coefficient vector but differing in independent set.
pub fn ibi_collisions(ibis: &[IndependentBlocksInequality]) -> Vec<Vec<IndependentBlocksInequality>> {
    let mut by_alpha: BTreeMap<&[i64], Vec<IndependentBlocksInequality>> = BTreeMap::new();
    for ibi in ibis {
        by_alpha.entry(&ibi.alpha).or_default().push(ibi.clone());
    }
    by_alpha.into_values().filter(|g| g.len() > 1).collect()
}

/// One state of the construction: the blocks processed so far and the current coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructionState {
    pub processed: BlockSubset,
    pub alpha: Vec<i64>,
}

impl ConstructionState {
    pub fn start(d: &BlockDecomposition, b: usize) -> Self {
        let mut alpha = vec![0; d.block_count()];
        alpha[b] = 1;
        ConstructionState {
            processed: BlockSubset::singleton(b),
            alpha,
        }
    }

    pub fn inequality(&self) -> IndependentBlocksInequality {
        IndependentBlocksInequality::from_alpha(self.alpha.clone())
    }
}

/// The admissible blocks whose coefficient may be decremented when `next` joins:
/// the connecting path blocks and the block of the weight-one component at the
/// joining cut vertex, in increasing index order.
pub fn decrement_candidates(
    d: &BlockDecomposition,
    state: &ConstructionState,
    next: usize,
) -> Result<Vec<usize>> {
    let closure = blockset_closure(d, &state.processed);
    let grown = blockset_closure(d, &closure.with(next));
    let path = grown.difference(&closure).without(next);
    let far: Vec<usize> = path.members().iter().copied().chain([next]).collect();
    let mut joins = BTreeSet::new();
    for &x in &far {
        for &v in &d.blocks()[x].vertices {
            if closure.members().iter().any(|&c| d.blocks()[c].contains_vertex(v)) {
                joins.insert(v);
            }
        }
    }
    let v = match joins.into_iter().collect::<Vec<_>>()[..] {
        [v] => v,
        ref other => {
            return Err(CbpError::AssertionFailure(format!(
                "expected one joining cut vertex, found {other:?}"
            )))
        }
    };
    let parts = split_components_at(d, v)?;
    let heavy: Vec<&BlockSubset> = parts.iter().filter(|p| sum_over(&state.alpha, p) == 1).collect();
    let [h] = heavy[..] else {
        return Err(CbpError::AssertionFailure(format!(
            "{} components at cut vertex {v} have coefficient sum 1",
            heavy.len()
        )));
    };
    if h.contains(next) {
        return Err(CbpError::AssertionFailure(format!(
            "weight-one component at {v} contains the new block {next}"
        )));
    }
    let b_prime = h
        .members()
        .iter()
        .copied()
        .find(|&b| d.blocks()[b].contains_vertex(v))
        .expect("component block at its cut vertex");
    Ok(path.with(b_prime).members().to_vec())
}

/// Blocks that may join a state: outside the current closure and vertex-disjoint
/// from every processed block.
pub fn admissible_next_blocks(d: &BlockDecomposition, state: &ConstructionState) -> Vec<usize> {
    let closure = blockset_closure(d, &state.processed);
    (0..d.block_count())
        .filter(|&b| !closure.contains(b))
        .filter(|&b| state.processed.members().iter().all(|&p| !d.share_vertex(p, b)))
        .collect()
}

pub fn construction_successors(
    d: &BlockDecomposition,
    state: &ConstructionState,
) -> Result<Vec<ConstructionState>> {
    let mut out = Vec::new();
    for next in admissible_next_blocks(d, state) {
        for a in decrement_candidates(d, state, next)? {
            let mut alpha = state.alpha.clone();
            alpha[next] = 1;
            alpha[a] -= 1;
            out.push(ConstructionState {
                processed: state.processed.with(next),
                alpha,
            });
        }
    }
    Ok(out)
}

/// Every pair reachable by the inductive construction, over all independent sets
/// and all block orders with strictly growing closures.
pub fn construct_ibis(d: &BlockDecomposition) -> Result<Vec<IndependentBlocksInequality>> {
    check_block_cap(d)?;
    let mut seen: HashSet<ConstructionState> = HashSet::new();
    let mut frontier: Vec<ConstructionState> =
        (0..d.block_count()).map(|b| ConstructionState::start(d, b)).collect();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let expanded: Vec<Result<Vec<ConstructionState>>> = frontier
            .par_iter()
            .map(|s| construction_successors(d, s))
            .collect();
        let mut next = Vec::new();
        for r in expanded {
            for s in r? {
                if seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        if seen.len() > CONSTRUCTION_STATE_CAP {
            return Err(CbpError::CountOverflow {
                cap: CONSTRUCTION_STATE_CAP,
            });
        }
        frontier = next;
    }
    let out: BTreeSet<IndependentBlocksInequality> = seen.iter().map(ConstructionState::inequality).collect();
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Nonneg,
    Box,
    Ibi,
}

/// A labelled facet row `alpha · x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetRow {
    pub alpha: Vec<i64>,
    pub rhs: i64,
    pub independent_set: BlockSubset,
    pub kind: RowKind,
}

impl FacetRow {
    pub fn to_inequality(&self) -> Inequality {
        Inequality::from_i64(&self.alpha, self.rhs)
    }
}

/// Nonnegativity rows followed by all IBIs, in the order of `h_representation`.
pub fn facet_rows(d: &BlockDecomposition) -> Result<Vec<FacetRow>> {
    let n = d.block_count();
    let mut rows: Vec<FacetRow> = (0..n)
        .map(|b| {
            let mut alpha = vec![0; n];
            alpha[b] = -1;
            FacetRow {
                alpha,
                rhs: 0,
                independent_set: BlockSubset::empty(),
                kind: RowKind::Nonneg,
            }
        })
        .collect();
    rows.extend(enumerate_ibis(d)?.into_iter().map(|ibi| FacetRow {
        kind: if ibi.independent_set.len() == 1 { RowKind::Box } else { RowKind::Ibi },
        alpha: ibi.alpha,
        rhs: 1,
        independent_set: ibi.independent_set,
    }));
    rows.sort_by_key(FacetRow::to_inequality);
    Ok(rows)
}

pub fn h_representation(d: &BlockDecomposition) -> Result<RationalPolyhedron> {
    RationalPolyhedron::new(
        d.block_count(),
        facet_rows(d)?.iter().map(FacetRow::to_inequality),
    )
}

/// Tight vertices and their affine rank for a row valid on CBP(G).
pub fn facet_certificate(d: &BlockDecomposition, row: &Inequality) -> Result<Certificate> {
    if row.dim() != d.block_count() {
        return Err(CbpError::DimensionMismatch {
            expected: d.block_count(),
            got: row.dim(),
        });
    }
    let verts = enumerate_vertices(d)?;
    certify_row(&incidence_points(d, &verts), row)
}

/// The IBI obtained from two IBIs with disjoint closures by decrementing one
/// block on the path joining them.
pub fn combine_ibis(
    a: &IndependentBlocksInequality,
    b: &IndependentBlocksInequality,
    decremented: usize,
) -> IndependentBlocksInequality {
    let mut alpha: Vec<i64> = a.alpha.iter().zip(&b.alpha).map(|(x, y)| x + y).collect();
    alpha[decremented] -= 1;
    IndependentBlocksInequality::new(a.independent_set.union(&b.independent_set), alpha)
}

/// Largest and smallest value of `alpha · chi` over the vertices.
pub fn value_range(ibi: &IndependentBlocksInequality, verts: &[BlockSubset]) -> (i64, i64) {
    let values = verts.iter().map(|v| ibi.value_at(v));
    let max = values.clone().max().unwrap_or(0);
    let min = values.min().unwrap_or(0);
    (max, min)
}

pub fn ibi_rational_rows(ibis: &[IndependentBlocksInequality]) -> Vec<Inequality> {
    ibis.iter()
        .map(|i| Inequality::new(i.alpha.iter().map(|&a| rat(a)).collect(), rat(1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_decomposition;
    use crate::families::*;
    use crate::graph::Graph;
    use crate::hull::{brute_force_facets, contains_point, same_hyperplane};
    use crate::num::ratio;

    fn ibi(set: Vec<usize>, alpha: Vec<i64>) -> IndependentBlocksInequality {
        IndependentBlocksInequality::new(set, alpha)
    }

    #[test]
    fn validation_examples() {
        let p3 = block_decomposition(&path(3)).unwrap();
        assert!(validate_ibi(&p3, &ibi(vec![0, 2], vec![1, -1, 1])));
        let sp = block_decomposition(&spider(3)).unwrap();
        // center triangle is block 0, pendants 1, 2, 3
        assert!(validate_ibi(&sp, &ibi(vec![1, 2, 3], vec![-2, 1, 1, 1])));
        let p5 = block_decomposition(&path(5)).unwrap();
        let bad = ibi(vec![0, 2, 4], vec![1, -2, 1, 0, 1]);
        assert!(!validate_ibi(&p5, &bad));
        assert!(ibi_violation(&p5, &bad).unwrap().contains("subset {2,4}"));
        assert!(!validate_ibi(&p3, &ibi(vec![0, 1], vec![1, 1, -1])));
        assert!(!validate_ibi(&p3, &ibi(vec![0], vec![1, 0])));
    }

    #[test]
    fn enumeration_examples() {
        let p3 = block_decomposition(&path(3)).unwrap();
        let got = enumerate_ibis(&p3).unwrap();
        assert_eq!(
            got,
            vec![
                ibi(vec![0], vec![1, 0, 0]),
                ibi(vec![1], vec![0, 1, 0]),
                ibi(vec![2], vec![0, 0, 1]),
                ibi(vec![0, 2], vec![1, -1, 1]),
            ]
        );
        let st = block_decomposition(&star(3)).unwrap();
        assert_eq!(enumerate_ibis(&st).unwrap().len(), 3);
        let p5 = block_decomposition(&path(5)).unwrap();
        assert!(enumerate_ibis(&p5).unwrap().contains(&ibi(vec![0, 2, 4], vec![1, -1, 1, -1, 1])));
    }

    #[test]
    fn construction_examples() {
        let p3 = block_decomposition(&path(3)).unwrap();
        assert_eq!(construct_ibis(&p3).unwrap(), enumerate_ibis(&p3).unwrap());
        let sp = block_decomposition(&spider(3)).unwrap();
        let built = construct_ibis(&sp).unwrap();
        assert!(built.contains(&ibi(vec![1, 2, 3], vec![-2, 1, 1, 1])));
        for pair in [vec![1, 2], vec![1, 3], vec![2, 3]] {
            let mut alpha = vec![-1, 0, 0, 0];
            for &b in &pair {
                alpha[b] = 1;
            }
            assert!(built.contains(&ibi(pair, alpha)));
        }
        assert_eq!(built, enumerate_ibis(&sp).unwrap());
    }

    /// Four pendant blocks around a long cycle, then a fifth pendant reached
    /// through a path of three bridges.
    fn construction_step_graph() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend([(0, 8), (2, 9), (4, 10), (6, 11)]);
        edges.extend([(7, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 14)]);
        Graph::new(17, edges).unwrap()
    }

    #[test]
    fn construction_step_offers_path_blocks_and_joining_block() {
        let d = block_decomposition(&construction_step_graph()).unwrap();
        let find = |u: usize, v: usize| d.block_of_edge(d.graph().edge_index(u, v).unwrap());
        let cycle = find(0, 1);
        let pendants: Vec<usize> = [(0, 8), (2, 9), (4, 10), (6, 11)].iter().map(|&(u, v)| find(u, v)).collect();
        let path_blocks: BTreeSet<usize> = [(7, 12), (12, 13), (13, 14)].iter().map(|&(u, v)| find(u, v)).collect();
        let fifth = find(14, 15);
        let mut alpha = vec![0; d.block_count()];
        for &p in &pendants {
            alpha[p] = 1;
        }
        alpha[cycle] = -3;
        let state = ConstructionState {
            processed: pendants.iter().copied().collect(),
            alpha,
        };
        assert!(validate_ibi(&d, &state.inequality()));
        let candidates = decrement_candidates(&d, &state, fifth).unwrap();
        assert_eq!(candidates.len(), 4);
        let mut expected = path_blocks.clone();
        expected.insert(cycle);
        assert_eq!(candidates.into_iter().collect::<BTreeSet<_>>(), expected);
        for s in construction_successors(&d, &state).unwrap() {
            if s.alpha[fifth] == 1 {
                assert!(validate_ibi(&d, &s.inequality()));
            }
        }
    }

    #[test]
    fn h_representation_examples() {
        let p3 = block_decomposition(&path(3)).unwrap();
        let h = h_representation(&p3).unwrap();
        assert_eq!(h.len(), 7);
        let brute = brute_force_facets(&incidence_points(&p3, &enumerate_vertices(&p3).unwrap())).unwrap();
        assert_eq!(h, brute);
        assert_eq!(h_representation(&block_decomposition(&star(3)).unwrap()).unwrap().len(), 6);
        assert_eq!(h_representation(&block_decomposition(&triangle()).unwrap()).unwrap().len(), 2);
        let kinds: Vec<RowKind> = facet_rows(&p3).unwrap().iter().map(|r| r.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == RowKind::Nonneg).count(), 3);
        assert_eq!(kinds.iter().filter(|&&k| k == RowKind::Box).count(), 3);
        assert_eq!(kinds.iter().filter(|&&k| k == RowKind::Ibi).count(), 1);
    }

    #[test]
    fn certificates() {
        let p3 = block_decomposition(&path(3)).unwrap();
        let c = facet_certificate(&p3, &Inequality::from_i64(&[1, -1, 1], 1)).unwrap();
        assert_eq!(c.tight_vertex_indices, vec![1, 3, 6]);
        assert_eq!(c.affine_rank, 2);
        assert!(c.is_facet(3));
        let nonneg = facet_certificate(&p3, &Inequality::from_i64(&[0, -1, 0], 0)).unwrap();
        assert!(nonneg.is_facet(3));
        let weak = facet_certificate(&p3, &Inequality::from_i64(&[1, 0, 1], 2)).unwrap();
        assert_eq!(weak.tight_vertex_indices, vec![6]);
        assert_eq!(weak.affine_rank, 0);
        assert!(!weak.is_facet(3));
        assert_eq!(
            facet_certificate(&p3, &Inequality::from_i64(&[1, 1, 0], 1)).unwrap_err(),
            CbpError::RowInvalid { vertex: 4 }
        );
    }

    #[test]
    fn membership_examples() {
        let p3 = block_decomposition(&path(3)).unwrap();
        let h = h_representation(&p3).unwrap();
        assert!(!contains_point(&h, &[ratio(3, 4), rat(0), ratio(3, 4)]).unwrap());
        assert!(contains_point(&h, &[ratio(1, 2), rat(0), ratio(1, 2)]).unwrap());
        assert!(contains_point(&h, &[rat(0), rat(0), rat(0)]).unwrap());
        let p5 = block_decomposition(&path(5)).unwrap();
        let full = h_representation(&p5).unwrap();
        let long = Inequality::from_i64(&[1, -1, 1, -1, 1], 1);
        let pos = full.inequalities.iter().position(|r| same_hyperplane(r, &long)).unwrap();
        let relaxed = full.without_row(pos);
        let half = [ratio(1, 2), rat(0), ratio(1, 2), rat(0), ratio(1, 2)];
        assert!(contains_point(&relaxed, &half).unwrap());
        assert!(!contains_point(&full, &half).unwrap());
    }

    #[test]
    fn block_cap() {
        let d = block_decomposition(&path(15)).unwrap();
        assert_eq!(enumerate_ibis(&d).unwrap_err(), CbpError::CountOverflow { cap: IBI_BLOCK_CAP });
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 0), vec![Vec::<i64>::new()]);
        assert!(compositions(1, 0).is_empty());
    }

    use proptest::prelude::*;

    fn small_graph() -> impl Strategy<Value = Graph> {
        prop::collection::vec((0u8..3, 0usize..30), 1..7).prop_map(|s| glued(&s))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn construction_equals_enumeration(g in small_graph()) {
            let d = block_decomposition(&g).unwrap();
            let enumerated = enumerate_ibis(&d).unwrap();
            prop_assert_eq!(construct_ibis(&d).unwrap(), enumerated.clone());
            prop_assert!(ibi_collisions(&enumerated).is_empty());
        }

        #[test]
        fn ibis_are_supporting_and_weighted(g in small_graph()) {
            let d = block_decomposition(&g).unwrap();
            let verts = enumerate_vertices(&d).unwrap();
            for ibi in enumerate_ibis(&d).unwrap() {
                prop_assert_eq!(ibi.alpha.iter().sum::<i64>(), 1);
                let (max, min) = value_range(&ibi, &verts);
                prop_assert_eq!(max, 1);
                prop_assert!(min <= 0);
                for &v in d.cut_vertices() {
                    let sums: Vec<i64> = split_components_at(&d, v).unwrap().iter().map(|p| sum_over(&ibi.alpha, p)).collect();
                    prop_assert_eq!(sums.iter().filter(|&&s| s == 1).count(), 1);
                    prop_assert!(sums.iter().all(|&s| s == 0 || s == 1));
                }
            }
        }

        #[test]
        fn combining_disjoint_ibis(g in small_graph()) {
            let d = block_decomposition(&g).unwrap();
            let ibis = enumerate_ibis(&d).unwrap();
            for a in &ibis {
                let ca = blockset_closure(&d, &a.independent_set);
                for b in &ibis {
                    let cb = blockset_closure(&d, &b.independent_set);
                    let union = a.independent_set.union(&b.independent_set);
                    if a >= b || !ca.intersection(&cb).is_empty() || !d.is_independent(&union) {
                        continue;
                    }
                    let joined = blockset_closure(&d, &ca.union(&cb));
                    let path = joined.difference(&ca.union(&cb));
                    for &x in path.members() {
                        let c = combine_ibis(a, b, x);
                        prop_assert!(validate_ibi(&d, &c), "{:?}", ibi_violation(&d, &c));
                    }
                }
            }
        }

        #[test]
        fn description_matches_hull_and_is_irredundant(g in small_graph()) {
            let d = block_decomposition(&g).unwrap();
            let verts = enumerate_vertices(&d).unwrap();
            let points = incidence_points(&d, &verts);
            let h = h_representation(&d).unwrap();
            prop_assert_eq!(&h, &brute_force_facets(&points).unwrap());
            for row in &h.inequalities {
                let cert = certify_row(&points, row).unwrap();
                prop_assert!(cert.is_facet(d.block_count()));
            }
            let n = d.block_count();
            let cube: Vec<BlockSubset> = d.all_blocks().subsets().collect();
            for x in &cube {
                let inside = contains_point(&h, &x.incidence(n).to_rational()).unwrap();
                prop_assert_eq!(inside, verts.contains(x));
            }
        }
    }
}
