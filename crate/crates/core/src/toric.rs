//! Toric ideal of CBP(G): the degrevlex order on connected-blockset variables,
//! the quadratic binomial basis, its verification, and the induced triangulation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::BlockDecomposition;
use crate::blockset::BlockSubset;
use crate::ehrhart::HStarProfile;
use crate::error::{CbpError, Result};
use crate::hull::RationalMatrix;
use crate::num::{abs_is_one, binomial, rat};
use crate::vertices::{enumerate_vertices, is_connected_blockset};

pub const TORIC_VARIABLE_CAP: usize = 60;
pub const REDUCTION_STEP_CAP: usize = 1_000_000;
pub const FIBER_MONOMIAL_BUDGET: u64 = 2_000_000;

pub type Monomial = Vec<u32>;

/// Variables are the connected blocksets in canonical order; `rank` orders them
/// with supersets lower (cardinality descending, then lexicographic ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    variables: Vec<BlockSubset>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl TermOrder {
    pub fn variables(&self) -> &[BlockSubset] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn rank(&self, var: usize) -> usize {
        self.rank[var]
    }

    pub fn index_of(&self, a: &BlockSubset) -> Option<usize> {
        self.variables.binary_search(a).ok()
    }

    /// Variables from lowest to highest rank.
    pub fn ranked(&self) -> impl Iterator<Item = &BlockSubset> + '_ {
        self.by_rank.iter().map(|&v| &self.variables[v])
    }

    /// Degree first; on a tie the monomial with the larger exponent in the
    /// lowest-ranked differing variable is the smaller one.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| {
            self.by_rank
                .iter()
                .find(|&&v| a[v] != b[v])
                .map_or(Ordering::Equal, |&v| b[v].cmp(&a[v]))
        })
    }
}

impl Serialize for TermOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<String> = self.ranked().map(|a| a.to_string()).collect();
        names.serialize(s)
    }
}

pub fn make_term_order(verts: &[BlockSubset]) -> TermOrder {
    let mut variables = verts.to_vec();
    variables.sort();
    let mut by_rank: Vec<usize> = (0..variables.len()).collect();
    by_rank.sort_by(|&i, &j| {
        let (a, b) = (&variables[i], &variables[j]);
        b.len().cmp(&a.len()).then_with(|| a.members().cmp(b.members()))
    });
    let mut rank = vec![0; variables.len()];
    for (r, &v) in by_rank.iter().enumerate() {
        rank[v] = r;
    }
    TermOrder {
        variables,
        rank,
        by_rank,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledBinomial {
    pub plus: BTreeMap<String, u32>,
    pub minus: BTreeMap<String, u32>,
}

fn labeled(m: &[u32], order: &TermOrder) -> BTreeMap<String, u32> {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| (order.variables[v].to_string(), e))
        .collect()
}

impl Binomial {
    pub fn labeled(&self, order: &TermOrder) -> LabeledBinomial {
        LabeledBinomial {
            plus: labeled(&self.plus, order),
            minus: labeled(&self.minus, order),
        }
    }

    /// (leading, trailing) under `order`.
    pub fn split(&self, order: &TermOrder) -> (&Monomial, &Monomial) {
        if order.compare(&self.plus, &self.minus) == Ordering::Less {
            (&self.minus, &self.plus)
        } else {
            (&self.plus, &self.minus)
        }
    }

    /// Equal degree and equal summed incidence vectors on both sides.
    pub fn in_toric_ideal(&self, order: &TermOrder) -> bool {
        let image = |m: &[u32]| {
            let mut sum = BTreeMap::new();
            for (v, &e) in m.iter().enumerate() {
                for &b in order.variables[v].members() {
                    *sum.entry(b).or_insert(0u32) += e;
                }
            }
            (m.iter().sum::<u32>(), sum)
        };
        image(&self.plus) == image(&self.minus)
    }

    pub fn supports_disjoint(&self) -> bool {
        self.plus.iter().zip(&self.minus).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn monomial(n: usize, vars: &[usize]) -> Monomial {
    let mut m = vec![0; n];
    for &v in vars {
        m[v] += 1;
    }
    m
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn is_squarefree(m: &[u32]) -> bool {
    m.iter().all(|&e| e <= 1)
}

fn check_variable_cap(order: &TermOrder) -> Result<()> {
    if order.variable_count() > TORIC_VARIABLE_CAP {
        return Err(CbpError::DimensionCap {
            dim: order.variable_count(),
            cap: TORIC_VARIABLE_CAP,
        });
    }
    Ok(())
}

/// `x_{A1} x_{A2} - x_{A1 ∩ A2} x_{A1 ∪ A2}` over incomparable pairs with connected union.
pub fn groebner_candidates(d: &BlockDecomposition) -> Result<(TermOrder, Vec<Binomial>)> {
    let order = make_term_order(&enumerate_vertices(d)?);
    let vars = order.variables();
    let n = vars.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a1, a2) = (&vars[i], &vars[j]);
            if a1.is_subset(a2) || a2.is_subset(a1) {
                continue;
            }
            let union = a1.union(a2);
            if !is_connected_blockset(d, &union) {
                continue;
            }
            let meet = a1.intersection(a2);
            let (Some(m), Some(u)) = (order.index_of(&meet), order.index_of(&union)) else {
                return Err(CbpError::AssertionFailure(format!(
                    "intersection {meet} of {a1} and {a2} is not connected"
                )));
            };
            let b = Binomial {
                plus: monomial(n, &[i, j]),
                minus: monomial(n, &[m, u]),
            };
            if order.compare(&b.plus, &b.minus) != Ordering::Greater {
                return Err(CbpError::LeadingTermMismatch(format!("x_{a1} x_{a2}")));
            }
            out.push(b);
        }
    }
    Ok((order, out))
}

struct Reducer<'a> {
    order: &'a TermOrder,
    /// (leading, trailing), sorted by leading term ascending.
    basis: Vec<(Monomial, Monomial)>,
}

impl<'a> Reducer<'a> {
    fn new(g: &[Binomial], order: &'a TermOrder) -> Self {
        let mut basis: Vec<(Monomial, Monomial)> = g
            .iter()
            .map(|b| {
                let (l, t) = b.split(order);
                (l.clone(), t.clone())
            })
            .collect();
        basis.sort_by(|x, y| order.compare(&x.0, &y.0));
        Reducer { order, basis }
    }

    /// Division of `a - b` by the basis, always using the smallest dividing leading term.
    fn reduces_to_zero(&self, mut a: Monomial, mut b: Monomial) -> Result<bool> {
        for _ in 0..REDUCTION_STEP_CAP {
            if a == b {
                return Ok(true);
            }
            if self.order.compare(&a, &b) == Ordering::Less {
                std::mem::swap(&mut a, &mut b);
            }
            let Some((lead, tail)) = self.basis.iter().find(|(l, _)| divides(l, &a)) else {
                return Ok(false);
            };
            for v in 0..a.len() {
                a[v] = a[v] - lead[v] + tail[v];
            }
        }
        Err(CbpError::ReductionDiverges(REDUCTION_STEP_CAP))
    }
}

/// True iff every S-polynomial reduces to zero and every leading term is squarefree.
pub fn buchberger_verify(g: &[Binomial], order: &TermOrder) -> Result<bool> {
    check_variable_cap(order)?;
    let reducer = Reducer::new(g, order);
    if !reducer.basis.iter().all(|(l, _)| is_squarefree(l)) {
        return Ok(false);
    }
    let pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|i| (i + 1..g.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (l1, t1) = &reducer.basis[i];
            let (l2, t2) = &reducer.basis[j];
            let lcm: Monomial = l1.iter().zip(l2).map(|(x, y)| *x.max(y)).collect();
            let s1: Monomial = (0..lcm.len()).map(|v| lcm[v] - l1[v] + t1[v]).collect();
            let s2: Monomial = (0..lcm.len()).map(|v| lcm[v] - l2[v] + t2[v]).collect();
            reducer.reduces_to_zero(s1, s2)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monomials_of_degree(n: usize, k: u32, budget: &mut u64, out: &mut Vec<Monomial>) -> Result<()> {
    fn go(
        m: &mut Monomial,
        from: usize,
        left: u32,
        budget: &mut u64,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if left == 0 {
            if *budget == 0 {
                return Err(CbpError::BudgetExceeded {
                    budget: FIBER_MONOMIAL_BUDGET,
                });
            }
            *budget -= 1;
            out.push(m.clone());
            return Ok(());
        }
        for v in from..m.len() {
            m[v] += 1;
            go(m, v, left - 1, budget, out)?;
            m[v] -= 1;
        }
        Ok(())
    }
    go(&mut vec![0; n], 0, k, budget, out)
}

/// Every toric binomial of degree 2..=maxdeg reduces to zero modulo `g`.
pub fn fiber_reduction_test(
    d: &BlockDecomposition,
    g: &[Binomial],
    order: &TermOrder,
    maxdeg: u32,
) -> Result<bool> {
    check_variable_cap(order)?;
    let reducer = Reducer::new(g, order);
    let blocks = d.block_count();
    let mut budget = FIBER_MONOMIAL_BUDGET;
    for k in 2..=maxdeg {
        let mut monos = Vec::new();
        monomials_of_degree(order.variable_count(), k, &mut budget, &mut monos)?;
        let mut fibers: HashMap<Vec<u32>, Vec<Monomial>> = HashMap::new();
        for m in monos {
            let mut image = vec![0u32; blocks];
            for (v, &e) in m.iter().enumerate() {
                for &b in order.variables[v].members() {
                    image[b] += e;
                }
            }
            fibers.entry(image).or_default().push(m);
        }
        let fibers: Vec<Vec<Monomial>> = fibers.into_values().filter(|f| f.len() > 1).collect();
        let results: Vec<Result<bool>> = fibers
            .par_iter()
            .map(|f| {
                for i in 0..f.len() {
                    for j in i + 1..f.len() {
                        if !reducer.reduces_to_zero(f[i].clone(), f[j].clone())? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })
            .collect();
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Faces are the variable sets whose squarefree product avoids the initial ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    pub ground: Vec<BlockSubset>,
    pub minimal_non_faces: Vec<Vec<usize>>,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn is_face(&self, face: &[usize]) -> bool {
        !self
            .minimal_non_faces
            .iter()
            .any(|nf| nf.iter().all(|v| face.contains(v)))
    }

    pub fn is_flag(&self) -> bool {
        self.minimal_non_faces.iter().all(|nf| nf.len() <= 2)
    }

    /// `f[k]` counts faces with k vertices, starting from the empty face.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut all: Vec<Vec<usize>> = Vec::new();
        for facet in &self.maximal_faces {
            for mask in 0u64..1 << facet.len() {
                all.push(
                    (0..facet.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| facet[i])
                        .collect(),
                );
            }
        }
        all.sort();
        all.dedup();
        let top = self.maximal_faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut f = vec![0u64; top + 1];
        for face in all {
            f[face.len()] += 1;
        }
        f
    }

    /// `h_k = f_k - sum_{i<k} C(n - i, k - i) h_i` with n vertices per facet.
    pub fn h_vector(&self) -> Vec<i64> {
        let f = self.f_vector();
        let n = f.len() as i64 - 1;
        let mut h: Vec<i64> = Vec::with_capacity(f.len());
        for (k, &fk) in f.iter().enumerate() {
            let mut acc = fk as i64;
            for (i, hi) in h.iter().enumerate() {
                acc -= binomial(n - i as i64, k as i64 - i as i64).to_i64().expect("small binomial") * hi;
            }
            h.push(acc);
        }
        h
    }
}

fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bron_kerbosch(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .expect("p is nonempty");
        let mut p = p;
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
            bron_kerbosch(adj, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let n = adj.len();
    let mut all: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut out = Vec::new();
            let p = (v + 1..n).filter(|&u| adj[v][u]).collect();
            let x = (0..v).filter(|&u| adj[v][u]).collect();
            bron_kerbosch(adj, &mut vec![v], p, x, &mut out);
            out
        })
        .flatten()
        .collect();
    all.sort();
    all
}

/// The triangulation whose Stanley-Reisner ideal is the initial ideal of `g`.
pub fn triangulation(d: &BlockDecomposition, g: &[Binomial], order: &TermOrder) -> Result<SimplicialComplex> {
    check_variable_cap(order)?;
    let n = order.variable_count();
    let mut non_faces: Vec<Vec<usize>> = g
        .iter()
        .map(|b| {
            let (lead, _) = b.split(order);
            if !is_squarefree(lead) {
                return Err(CbpError::AssertionFailure("leading term is not squarefree".into()));
            }
            Ok((0..n).filter(|&v| lead[v] > 0).collect())
        })
        .collect::<Result<_>>()?;
    non_faces.sort();
    non_faces.dedup();
    let minimal: Vec<Vec<usize>> = non_faces
        .iter()
        .filter(|nf| {
            !non_faces
                .iter()
                .any(|o| o.len() < nf.len() && o.iter().all(|v| nf.contains(v)))
        })
        .cloned()
        .collect();
    if let Some(big) = minimal.iter().find(|nf| nf.len() > 2) {
        return Err(CbpError::AssertionFailure(format!(
            "minimal non-face of size {} breaks flagness",
            big.len()
        )));
    }
    let mut adj = vec![vec![true; n]; n];
    for (v, row) in adj.iter_mut().enumerate() {
        row[v] = false;
    }
    for nf in &minimal {
        match nf[..] {
            [v] => {
                for row in adj.iter_mut() {
                    row[v] = false;
                }
                adj[v].fill(false);
            }
            [u, v] => {
                adj[u][v] = false;
                adj[v][u] = false;
            }
            _ => {}
        }
    }
    let maximal_faces = maximal_cliques(&adj);
    let dim = d.block_count();
    for face in &maximal_faces {
        let unimodular = face.len() == dim + 1 && {
            let rows: Vec<Vec<crate::Rational>> = face
                .iter()
                .map(|&v| {
                    let mut row = vec![rat(1)];
                    row.extend(order.variables[v].incidence(dim).to_rational());
                    row
                })
                .collect();
            let det = RationalMatrix::new(rows)?.determinant()?;
            det.is_integer() && abs_is_one(&det.to_integer())
        };
        if !unimodular {
            return Err(CbpError::NonUnimodularSimplex(face.clone()));
        }
    }
    Ok(SimplicialComplex {
        ground: order.variables.clone(),
        minimal_non_faces: minimal,
        maximal_faces,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub maximal_faces: usize,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
    pub flag: bool,
}

/// h(S) = h*(P) and the number of maximal simplices equals the sum of h*.
pub fn triangulation_checks(c: &SimplicialComplex, profile: &HStarProfile) -> Result<TriangulationReport> {
    let h = c.h_vector();
    let mut padded = profile.hstar.clone();
    padded.resize(h.len().max(padded.len()), 0);
    let mut trimmed = h.clone();
    trimmed.resize(padded.len(), 0);
    let sum: i64 = profile.hstar.iter().sum();
    if trimmed != padded || h.len() > padded.len() {
        return Err(CbpError::AssertionFailure(format!(
            "h-vector {h:?} of the triangulation differs from h* {:?}",
            profile.hstar
        )));
    }
    if c.maximal_faces.len() as i64 != sum {
        return Err(CbpError::AssertionFailure(format!(
            "{} maximal simplices but h* sums to {sum}",
            c.maximal_faces.len()
        )));
    }
    Ok(TriangulationReport {
        maximal_faces: c.maximal_faces.len(),
        f_vector: c.f_vector(),
        h_vector: h,
        flag: c.is_flag(),
    })
}
