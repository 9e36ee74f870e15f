//! Lattice-point counts of dilations, the Ehrhart polynomial, the h*-vector,
//! and the checks on it (symmetry, unimodality, reflexivity, h*_1 bound).

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{classify_decomposition, BlockDecomposition};
use crate::error::{CbpError, Result};
use crate::hull::RationalPolyhedron;
use crate::num::{binomial, rat, Rational};
use crate::vertices::enumerate_vertices;

pub const DEFAULT_POINT_BUDGET: u64 = 1_000_000_000;

struct IntRow {
    coeffs: Vec<i64>,
    rhs: i64,
}

fn integer_rows(h: &RationalPolyhedron) -> Result<Vec<IntRow>> {
    let too_big = || CbpError::AssertionFailure("row coefficient does not fit in 64 bits".into());
    h.inequalities
        .iter()
        .map(|r| {
            let r = r.normalized();
            Ok(IntRow {
                coeffs: r
                    .coeffs
                    .iter()
                    .map(|c| c.to_integer().to_i64().ok_or_else(too_big))
                    .collect::<Result<_>>()?,
                rhs: r.rhs.to_integer().to_i64().ok_or_else(too_big)?,
            })
        })
        .collect()
}

struct Counter<'a> {
    rows: &'a [IntRow],
    /// `slack_floor[i][k]`: n times the sum of negative coefficients of row i from k on.
    slack_floor: Vec<Vec<i64>>,
    limits: Vec<i64>,
    n: i64,
    dim: usize,
    budget: u64,
    visited: &'a AtomicU64,
}

impl Counter<'_> {
    fn feasible(&self, partial: &[i64], k: usize) -> bool {
        (0..self.rows.len()).all(|i| partial[i] + self.slack_floor[i][k] <= self.limits[i])
    }

    fn count(&self, partial: &mut [i64], k: usize, local: &mut u64) -> Result<u64> {
        *local += 1;
        if *local >= 4096 {
            let before = self.visited.fetch_add(*local, Ordering::Relaxed);
            *local = 0;
            if before > self.budget {
                return Err(CbpError::BudgetExceeded { budget: self.budget });
            }
        }
        if !self.feasible(partial, k) {
            return Ok(0);
        }
        if k == self.dim {
            return Ok(1);
        }
        let mut total = 0;
        for x in 0..=self.n {
            for (i, r) in self.rows.iter().enumerate() {
                partial[i] += r.coeffs[k] * x;
            }
            let sub = self.count(partial, k + 1, local);
            for (i, r) in self.rows.iter().enumerate() {
                partial[i] -= r.coeffs[k] * x;
            }
            total += sub?;
        }
        Ok(total)
    }
}

/// Number of integer points of the `n`-th dilation inside the box `[0, n]^d`.
pub fn count_lattice_points(h: &RationalPolyhedron, n: u64) -> Result<u64> {
    count_lattice_points_with_budget(h, n, DEFAULT_POINT_BUDGET)
}

pub fn count_lattice_points_with_budget(h: &RationalPolyhedron, n: u64, budget: u64) -> Result<u64> {
    let rows = integer_rows(h)?;
    let dim = h.dim;
    let n = n as i64;
    if dim == 0 {
        return Ok(u64::from(rows.iter().all(|r| r.rhs >= 0)));
    }
    let slack_floor: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut acc = vec![0i64; dim + 1];
            for k in (0..dim).rev() {
                acc[k] = acc[k + 1] + n * r.coeffs[k].min(0);
            }
            acc
        })
        .collect();
    let visited = AtomicU64::new(0);
    let counter = Counter {
        rows: &rows,
        limits: rows.iter().map(|r| n * r.rhs).collect(),
        slack_floor,
        n,
        dim,
        budget,
        visited: &visited,
    };
    let totals: Vec<Result<u64>> = (0..=n)
        .into_par_iter()
        .map(|x0| {
            let mut partial: Vec<i64> = rows.iter().map(|r| r.coeffs[0] * x0).collect();
            let mut local = 0;
            let out = counter.count(&mut partial, 1, &mut local);
            visited.fetch_add(local, Ordering::Relaxed);
            out
        })
        .collect();
    if visited.load(Ordering::Relaxed) > budget {
        return Err(CbpError::BudgetExceeded { budget });
    }
    totals.into_iter().sum()
}

/// Coefficients (constant term first) of the polynomial through `(i, values[i])`.
pub fn interpolate(values: &[Rational]) -> Vec<Rational> {
    let m = values.len();
    let mut table = values.to_vec();
    let mut newton = Vec::with_capacity(m);
    for level in 0..m {
        newton.push(table[0].clone());
        table = table
            .windows(2)
            .map(|w| (&w[1] - &w[0]) / rat(level as i64 + 1))
            .collect();
    }
    // sum of newton[k] * x (x - 1) ... (x - k + 1)
    let mut coeffs = vec![rat(0); m];
    let mut basis = vec![rat(1)];
    for (k, c) in newton.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        let mut next = vec![rat(0); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * rat(k as i64);
        }
        basis = next;
    }
    coeffs
}

pub fn evaluate(coeffs: &[Rational], x: i64) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(rat(0), |acc, c| acc * rat(x) + c)
}

/// Lattice-point counts of the dilations `0..=dim`.
pub fn ehrhart_evaluations(h: &RationalPolyhedron, dim: usize) -> Result<Vec<u64>> {
    (0..=dim as u64).map(|n| count_lattice_points(h, n)).collect()
}

/// The degree-`dim` Ehrhart polynomial, constant term first.
pub fn ehrhart_polynomial(h: &RationalPolyhedron, dim: usize) -> Result<Vec<Rational>> {
    let values: Vec<Rational> = ehrhart_evaluations(h, dim)?
        .into_iter()
        .map(|v| rat(v as i64))
        .collect();
    Ok(interpolate(&values))
}

/// Coordinates of the Ehrhart polynomial in the basis `C(n + dim - i, dim)`.
pub fn hstar_vector(ehrhart: &[Rational], dim: usize) -> Result<Vec<i64>> {
    let d = dim as i64;
    (0..=d)
        .map(|i| {
            let h: Rational = (0..=i)
                .map(|j| {
                    let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
                    sign * Rational::from_integer(binomial(d + 1, j)) * evaluate(ehrhart, i - j)
                })
                .sum();
            if !h.is_integer() {
                return Err(CbpError::NonIntegerHStar(i as usize));
            }
            h.to_integer()
                .to_i64()
                .ok_or(CbpError::NonIntegerHStar(i as usize))
        })
        .collect()
}

pub fn is_unimodal(v: &[i64]) -> bool {
    let peak = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map_or(0, |(i, _)| i);
    v[..=peak.min(v.len().saturating_sub(1))].windows(2).all(|w| w[0] <= w[1])
        && v[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// `h*_i = h*_{d-1-i}` for `0 <= i <= d - 1`.
pub fn is_index_two_symmetric(hstar: &[i64]) -> bool {
    let d = hstar.len() - 1;
    (0..d).all(|i| hstar[i] == hstar[d - 1 - i])
}

pub fn narayana_numbers(n: u64) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    let n = n as i64;
    (1..=n)
        .map(|k| binomial(n, k) * binomial(n, k - 1) / BigInt::from(n))
        .collect()
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// Every row of `2 P - 1` has rhs exactly 1 with integer normal.
pub fn reflexive_at_index_two(h: &RationalPolyhedron) -> bool {
    h.inequalities.iter().all(|r| {
        let r = r.normalized();
        let sum: Rational = r.coeffs.iter().sum();
        rat(2) * &r.rhs - sum == rat(1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStarFlags {
    pub hstar_top_zero: bool,
    pub symmetric_index2: bool,
    pub unimodal: bool,
    pub nonnegative: bool,
    pub reflexive_index2: bool,
    pub volume_matches: bool,
    pub evaluations_increasing: bool,
    pub vertex_count_matches: bool,
    pub h1_formula_ok: bool,
    pub h1_bound_ok: bool,
    pub h1_equality_ok: bool,
    pub gamma1: i64,
    /// For block paths of n blocks: which of Narayana(n), Narayana(n+1) equals h*.
    pub narayana_match: Option<u64>,
}

impl HStarFlags {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            (self.hstar_top_zero, "top h* entry is nonzero"),
            (self.symmetric_index2, "h* is not symmetric for index 2"),
            (self.unimodal, "h* is not unimodal"),
            (self.nonnegative, "h* has a negative entry"),
            (self.reflexive_index2, "2P - 1 has a row with rhs other than 1"),
            (self.volume_matches, "sum of h* differs from the normalized volume"),
            (self.evaluations_increasing, "lattice-point counts are not strictly increasing"),
            (self.vertex_count_matches, "E(1) differs from the vertex count"),
            (self.h1_formula_ok, "h*_1 differs from #vertices - (d + 1)"),
            (self.h1_bound_ok, "h*_1 is below d - 1"),
            (self.h1_equality_ok, "h*_1 = d - 1 does not match |B| <= 2"),
            (self.gamma1 >= 0, "gamma_1 is negative"),
        ];
        for (ok, what) in checks {
            if !ok {
                out.push(what);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStarProfile {
    #[serde(rename = "ehrhart", with = "crate::num::serde_rational_vec")]
    pub ehrhart_coeffs: Vec<Rational>,
    pub evaluations: Vec<u64>,
    pub hstar: Vec<i64>,
    pub flags: HStarFlags,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn compute_flags(
    d: &BlockDecomposition,
    h: &RationalPolyhedron,
    coeffs: &[Rational],
    evaluations: &[u64],
    hstar: &[i64],
) -> Result<HStarFlags> {
    let dim = d.block_count();
    let vertex_count = enumerate_vertices(d)?.len() as i64;
    let h1 = hstar.get(1).copied().unwrap_or(0);
    let sum: i64 = hstar.iter().sum();
    let leading = coeffs.last().cloned().unwrap_or_else(|| rat(0));
    let volume = leading * Rational::from_integer(factorial(dim));
    let narayana_match = if classify_decomposition(d).is_block_path {
        let measured: Vec<BigInt> = hstar.iter().map(|&x| BigInt::from(x)).collect();
        let padded = |mut v: Vec<BigInt>| {
            v.resize(measured.len().max(v.len()), BigInt::zero());
            v
        };
        [dim as u64, dim as u64 + 1]
            .into_iter()
            .find(|&m| padded(narayana_numbers(m)) == measured)
    } else {
        None
    };
    Ok(HStarFlags {
        hstar_top_zero: hstar.last() == Some(&0),
        symmetric_index2: is_index_two_symmetric(hstar),
        unimodal: is_unimodal(hstar),
        nonnegative: hstar.iter().all(|&x| x >= 0),
        reflexive_index2: reflexive_at_index_two(h),
        volume_matches: volume.is_positive() && volume == rat(sum),
        evaluations_increasing: evaluations.windows(2).all(|w| w[0] < w[1]) && evaluations.first() == Some(&1),
        vertex_count_matches: evaluations.get(1).map(|&e| e as i64) == Some(vertex_count),
        h1_formula_ok: h1 == vertex_count - (dim as i64 + 1),
        h1_bound_ok: h1 >= dim as i64 - 1,
        h1_equality_ok: (h1 == dim as i64 - 1) == (dim <= 2),
        gamma1: h1 - (dim as i64 - 1),
        narayana_match,
    })
}

/// Counts, Ehrhart polynomial, h*-vector and flags for CBP(G) given its H-representation.
pub fn hstar_profile(d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<HStarProfile> {
    let dim = d.block_count();
    let evaluations = ehrhart_evaluations(h, dim)?;
    let values: Vec<Rational> = evaluations.iter().map(|&v| rat(v as i64)).collect();
    let coeffs = interpolate(&values);
    let hstar = hstar_vector(&coeffs, dim)?;
    let flags = compute_flags(d, h, &coeffs, &evaluations, &hstar)?;
    Ok(HStarProfile {
        ehrhart_coeffs: coeffs,
        evaluations,
        hstar,
        flags,
    })
}

/// Recomputes every flag and fails with the list of violated clauses.
pub fn hstar_checks(profile: &HStarProfile, d: &BlockDecomposition, h: &RationalPolyhedron) -> Result<HStarFlags> {
    let flags = compute_flags(d, h, &profile.ehrhart_coeffs, &profile.evaluations, &profile.hstar)?;
    let failures = flags.failures();
    if !failures.is_empty() {
        return Err(CbpError::AssertionFailure(format!(
            "{} for {}",
            failures.join("; "),
            serde_json::to_string(d.graph()).expect("graphs serialize")
        )));
    }
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_decomposition;
    use crate::facets::h_representation;
    use crate::families::*;
    use crate::graph::Graph;
    use crate::num::ratio;
    use proptest::prelude::*;

    fn profile(g: &Graph) -> HStarProfile {
        let d = block_decomposition(g).unwrap();
        hstar_profile(&d, &h_representation(&d).unwrap()).unwrap()
    }

    /// Counts by scanning every point of the box with no pruning.
    fn naive_count(h: &RationalPolyhedron, n: i64) -> u64 {
        let dim = h.dim;
        let mut count = 0;
        let total = (n + 1).pow(dim as u32);
        for code in 0..total {
            let mut c = code;
            let x: Vec<Rational> = (0..dim)
                .map(|_| {
                    let v = c % (n + 1);
                    c /= n + 1;
                    rat(v)
                })
                .collect();
            let scaled_ok = h.inequalities.iter().all(|r| r.evaluate(&x) <= &r.rhs * rat(n));
            if scaled_ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn lattice_counts() {
        let d = block_decomposition(&path(3)).unwrap();
        let h = h_representation(&d).unwrap();
        assert_eq!(count_lattice_points(&h, 0).unwrap(), 1);
        assert_eq!(count_lattice_points(&h, 1).unwrap(), 7);
        assert_eq!(count_lattice_points(&h, 2).unwrap(), 23);
        for n in 0..6u64 {
            let k = n as i64;
            let closed = (k + 1).pow(3) - k * (k + 1) * (k + 2) / 6;
            assert_eq!(count_lattice_points(&h, n).unwrap() as i64, closed);
            assert_eq!(count_lattice_points(&h, n).unwrap(), naive_count(&h, k));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let d = block_decomposition(&star(8)).unwrap();
        let h = h_representation(&d).unwrap();
        assert_eq!(
            count_lattice_points_with_budget(&h, 6, 10_000).unwrap_err(),
            CbpError::BudgetExceeded { budget: 10_000 }
        );
    }

    #[test]
    fn ehrhart_polynomials() {
        let seg = profile(&triangle());
        assert_eq!(seg.ehrhart_coeffs, vec![rat(1), rat(1)]);
        let cube = profile(&star(3));
        assert_eq!(cube.ehrhart_coeffs, vec![rat(1), rat(3), rat(3), rat(1)]);
        let p3 = profile(&path(3));
        // (n+1)^3 - n(n+1)(n+2)/6 = 1 + 8/3 n + 5/2 n^2 + 5/6 n^3
        assert_eq!(p3.ehrhart_coeffs, vec![rat(1), ratio(8, 3), ratio(5, 2), ratio(5, 6)]);
    }

    /// h* of a polynomial given as values, through the generating function
    /// sum_n E(n) t^n = h*(t) / (1 - t)^(d+1), truncated.
    fn hstar_by_series(values: &[i64], d: usize) -> Vec<i64> {
        let mut out = Vec::new();
        for i in 0..=d {
            let mut acc = 0i64;
            for j in 0..=i {
                let c = binomial(d as i64 + 1, j as i64).to_i64().unwrap();
                acc += if j % 2 == 0 { c } else { -c } * values[i - j];
            }
            out.push(acc);
        }
        out
    }

    #[test]
    fn hstar_vectors() {
        assert_eq!(profile(&star(3)).hstar, vec![1, 4, 1, 0]);
        assert_eq!(profile(&path(2)).hstar, vec![1, 1, 0]);
        assert_eq!(profile(&path(3)).hstar, vec![1, 3, 1, 0]);
        let cube_values: Vec<i64> = (0..4).map(|n: i64| (n + 1).pow(3)).collect();
        assert_eq!(hstar_by_series(&cube_values, 3), vec![1, 4, 1, 0]);
        let bad = vec![ratio(1, 2), rat(1)];
        assert_eq!(hstar_vector(&bad, 1).unwrap_err(), CbpError::NonIntegerHStar(0));
    }

    #[test]
    fn block_path_narayana() {
        for (n, expected) in [(2usize, vec![1, 1, 0]), (3, vec![1, 3, 1, 0]), (4, vec![1, 6, 6, 1, 0])] {
            let p = profile(&path(n));
            assert_eq!(p.hstar, expected);
            assert_eq!(BigInt::from(p.hstar.iter().sum::<i64>()), catalan(n as u64));
            assert_eq!(p.flags.narayana_match, Some(n as u64));
        }
        let triangles = profile(&triangle_chain(3));
        assert_eq!(triangles.hstar, vec![1, 3, 1, 0]);
        assert_eq!(profile(&star(3)).flags.narayana_match, None);
    }

    #[test]
    fn check_examples() {
        let cube = block_decomposition(&star(3)).unwrap();
        let h = h_representation(&cube).unwrap();
        let p = hstar_profile(&cube, &h).unwrap();
        let flags = hstar_checks(&p, &cube, &h).unwrap();
        assert_eq!(p.hstar[1], 8 - 4);
        assert!(flags.h1_bound_ok && flags.h1_equality_ok);
        assert_eq!(flags.gamma1, 2);
        let p2 = block_decomposition(&path(2)).unwrap();
        let h2 = h_representation(&p2).unwrap();
        let f2 = hstar_checks(&hstar_profile(&p2, &h2).unwrap(), &p2, &h2).unwrap();
        assert_eq!(f2.gamma1, 0);
        let mut broken = hstar_profile(&p2, &h2).unwrap();
        broken.hstar = vec![1, 2, 0];
        assert!(matches!(hstar_checks(&broken, &p2, &h2), Err(CbpError::AssertionFailure(_))));
    }

    #[test]
    fn helpers() {
        assert!(is_unimodal(&[1, 3, 3, 1, 0]));
        assert!(!is_unimodal(&[1, 0, 1]));
        assert!(is_index_two_symmetric(&[1, 6, 6, 1, 0]));
        assert!(!is_index_two_symmetric(&[1, 4, 2, 0]));
        let n: Vec<i64> = narayana_numbers(4).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(n, vec![1, 6, 6, 1]);
        assert_eq!(catalan(4), BigInt::from(14));
        let poly = interpolate(&[rat(1), rat(4), rat(9)]);
        assert_eq!(poly, vec![rat(1), rat(2), rat(1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn hstar_properties_hold(shapes in prop::collection::vec((0u8..3, 0usize..30), 1..5)) {
            let d = block_decomposition(&glued(&shapes)).unwrap();
            let h = h_representation(&d).unwrap();
            let p = hstar_profile(&d, &h).unwrap();
            prop_assert!(hstar_checks(&p, &d, &h).is_ok(), "{:?}", p);
            prop_assert_eq!(p.hstar.clone(), hstar_by_series(&p.evaluations.iter().map(|&v| v as i64).collect::<Vec<_>>(), d.block_count()));
        }
    }
}
