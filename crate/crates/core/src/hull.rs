//! Exact rational geometry: ranks, determinants, normalized inequality rows,
//! and a double-description convex hull for small full-dimensional point sets.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CbpError, Result};
use crate::num::{primitive, primitive_integer_vector, rat, Rational};

pub const HULL_DIMENSION_CAP: usize = 10;

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(CbpError::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Row echelon form in place; returns the pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            for i in r + 1..self.rows.len() {
                if self.rows[i][c].is_zero() {
                    continue;
                }
                let f = &self.rows[i][c] / &self.rows[r][c];
                for j in c..self.cols {
                    let delta = &f * &self.rows[r][j];
                    self.rows[i][j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows.len() != self.cols {
            return Err(CbpError::DimensionMismatch {
                expected: self.cols,
                got: self.rows.len(),
            });
        }
        let mut m = self.clone();
        let mut det = rat(1);
        for c in 0..m.cols {
            let Some(p) = (c..m.cols).find(|&i| !m.rows[i][c].is_zero()) else {
                return Ok(rat(0));
            };
            if p != c {
                m.rows.swap(c, p);
                det = -det;
            }
            det *= &m.rows[c][c];
            for i in c + 1..m.cols {
                if m.rows[i][c].is_zero() {
                    continue;
                }
                let f = &m.rows[i][c] / &m.rows[c][c];
                for j in c..m.cols {
                    let delta = &f * &m.rows[c][j];
                    m.rows[i][j] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square nonsingular matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.cols;
        if self.rows.len() != n {
            return None;
        }
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| rat(i64::from(i == j))));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let pivot = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x /= &pivot;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                let pivot = a[c].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        Some(RationalMatrix {
            rows: a.into_iter().map(|r| r[n..].to_vec()).collect(),
            cols: n,
        })
    }
}

fn check_dims(points: &[Vec<Rational>]) -> Result<usize> {
    let dim = points.first().map_or(0, Vec::len);
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(CbpError::DimensionMismatch {
            expected: dim,
            got: p.len(),
        }),
        None => Ok(dim),
    }
}

/// Dimension of the affine hull, by elimination on differences to the first point.
pub fn affine_rank(points: &[Vec<Rational>]) -> Result<usize> {
    check_dims(points)?;
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Ok(0);
    }
    Ok(RationalMatrix::new(diffs)?.rank())
}

/// One row `coeffs · x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "crate::num::serde_rational_vec")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "crate::num::serde_rational")]
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn from_i64(coeffs: &[i64], rhs: i64) -> Self {
        Inequality::new(coeffs.iter().map(|&c| rat(c)).collect(), rat(rhs))
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `rhs - coeffs · x`; nonnegative iff satisfied.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.rhs - self.evaluate(x)
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.slack(x).is_zero()
    }

    /// Scales by a positive rational to coprime integers.
    pub fn normalized(&self) -> Inequality {
        let mut all = self.coeffs.clone();
        all.push(self.rhs.clone());
        let ints = primitive_integer_vector(&all);
        let (rhs, coeffs) = ints.split_last().expect("nonempty row");
        Inequality {
            coeffs: coeffs.iter().cloned().map(Rational::from_integer).collect(),
            rhs: Rational::from_integer(rhs.clone()),
        }
    }

    /// Integer coefficients of a normalized row.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    fn order_key(&self) -> impl Iterator<Item = &Rational> {
        std::iter::once(&self.rhs).chain(self.coeffs.iter())
    }
}

impl Ord for Inequality {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(other.order_key())
    }
}

impl PartialOrd for Inequality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn same_hyperplane(r1: &Inequality, r2: &Inequality) -> bool {
    r1.dim() == r2.dim() && r1.normalized() == r2.normalized()
}

/// H-representation with normalized, deduplicated, sorted rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPolyhedron {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

impl RationalPolyhedron {
    pub fn new(dim: usize, rows: impl IntoIterator<Item = Inequality>) -> Result<Self> {
        let mut inequalities = Vec::new();
        for r in rows {
            if r.dim() != dim {
                return Err(CbpError::DimensionMismatch {
                    expected: dim,
                    got: r.dim(),
                });
            }
            inequalities.push(r.normalized());
        }
        inequalities.sort();
        inequalities.dedup();
        Ok(RationalPolyhedron { dim, inequalities })
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    pub fn without_row(&self, index: usize) -> RationalPolyhedron {
        let mut inequalities = self.inequalities.clone();
        inequalities.remove(index);
        RationalPolyhedron {
            dim: self.dim,
            inequalities,
        }
    }

    /// Indices of rows tight at `x`.
    pub fn tight_rows(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|&i| self.inequalities[i].is_tight(x))
            .collect()
    }
}

pub fn contains_point(h: &RationalPolyhedron, x: &[Rational]) -> Result<bool> {
    if x.len() != h.dim {
        return Err(CbpError::DimensionMismatch {
            expected: h.dim,
            got: x.len(),
        });
    }
    Ok(h.inequalities.iter().all(|r| r.is_satisfied(x)))
}

/// Tight vertices of a row and their affine rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub tight_vertex_indices: Vec<usize>,
    pub affine_rank: usize,
    pub slack_witness: Option<usize>,
}

impl Certificate {
    pub fn is_facet(&self, dim: usize) -> bool {
        dim >= 1 && self.affine_rank == dim - 1 && self.slack_witness.is_some()
    }
}

pub fn certify_row(points: &[Vec<Rational>], row: &Inequality) -> Result<Certificate> {
    let mut tight = Vec::new();
    let mut slack_witness = None;
    for (i, p) in points.iter().enumerate() {
        let s = row.slack(p);
        if s.is_negative() {
            return Err(CbpError::RowInvalid { vertex: i });
        }
        if s.is_zero() {
            tight.push(i);
        } else if slack_witness.is_none() {
            slack_witness = Some(i);
        }
    }
    let tight_points: Vec<Vec<Rational>> = tight.iter().map(|&i| points[i].clone()).collect();
    Ok(Certificate {
        affine_rank: affine_rank(&tight_points)?,
        tight_vertex_indices: tight,
        slack_witness,
    })
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: Bits,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Irredundant H-representation of the convex hull of full-dimensional points.
///
/// Double description on the homogenized polar cone `{y : y · (1, p) >= 0}`;
/// each extreme ray `(b, -a)` is a facet `a · x <= b`.
pub fn brute_force_facets(points: &[Vec<Rational>]) -> Result<RationalPolyhedron> {
    let dim = check_dims(points)?;
    if dim > HULL_DIMENSION_CAP {
        return Err(CbpError::DimensionCap {
            dim,
            cap: HULL_DIMENSION_CAP,
        });
    }
    let mut pts: Vec<Vec<Rational>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let rank = affine_rank(&pts)?;
    if pts.is_empty() || rank != dim {
        return Err(CbpError::NotFullDimensional { rank, ambient: dim });
    }
    let big_d = dim + 1;
    let constraints: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            let mut h = vec![rat(1)];
            h.extend(p.iter().cloned());
            primitive_integer_vector(&h)
        })
        .collect();

    // greedy choice of an affinely independent starting simplex
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..constraints.len() {
        let mut trial: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&j| constraints[j].iter().cloned().map(Rational::from_integer).collect())
            .collect();
        trial.push(constraints[i].iter().cloned().map(Rational::from_integer).collect());
        if RationalMatrix::new(trial)?.rank() == basis.len() + 1 {
            basis.push(i);
            if basis.len() == big_d {
                break;
            }
        }
    }
    let m = RationalMatrix::new(
        basis
            .iter()
            .map(|&j| constraints[j].iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )?;
    let inv = m.inverse().expect("starting simplex is nonsingular");
    let total = constraints.len();
    let mut rays: Vec<Ray> = (0..big_d)
        .map(|col| {
            let column: Vec<Rational> = (0..big_d).map(|r| inv.rows()[r][col].clone()).collect();
            let coords = primitive_integer_vector(&column);
            let mut zeros = Bits::new(total);
            for (k, &j) in basis.iter().enumerate() {
                if k != col {
                    zeros.set(j);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let in_basis: Vec<bool> = (0..total).map(|i| basis.contains(&i)).collect();
    for (ci, c) in constraints.iter().enumerate() {
        if in_basis[ci] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(c, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    r.zeros.set(ci);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if (common.count() as usize) + 2 < big_d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == n || !rays[k].zeros.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(rn, rp)| &values[p] * rn - &values[n] * rp)
                    .collect();
                let mut zeros = common;
                zeros.set(ci);
                fresh.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.set(ci);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }

    let rows = rays.into_iter().map(|r| {
        let rhs = Rational::from_integer(r.coords[0].clone());
        let coeffs = r.coords[1..]
            .iter()
            .map(|y| Rational::from_integer(-y))
            .collect();
        Inequality::new(coeffs, rhs)
    });
    RationalPolyhedron::new(dim, rows)
}
