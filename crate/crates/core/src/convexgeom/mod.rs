//! Exact convex geometry of finite point sets in `Q^r`: hull and
//! relative-interior membership, Carathéodory decompositions and strictly
//! separating functionals. Every decision is an exact rational LP.

mod simplex;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use simplex::{LinearProgram, LpOutcome};

type Q = BigRational;

/// A point of `Q^r`; `BigRational` keeps every coordinate in lowest terms
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Q>);

impl RationalVector {
    pub fn new(coords: Vec<Q>) -> Self {
        RationalVector(coords)
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(coords: &[T]) -> Self {
        RationalVector(coords.iter().cloned().map(|x| Q::from_integer(x.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn scaled(&self, k: &Q) -> Self {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn dot(&self, other: &[Q]) -> Q {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `target = Σ coefficients[k] · points[indices[k]]`, coefficients nonnegative
/// and summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCombination {
    pub indices: Vec<usize>,
    pub coefficients: Vec<Q>,
}

impl ConvexCombination {
    /// Re-checks the defining equalities exactly.
    pub fn verify(&self, points: &[RationalVector], target: &RationalVector) -> bool {
        if self.indices.len() != self.coefficients.len() {
            return false;
        }
        if self.coefficients.iter().any(Signed::is_negative) {
            return false;
        }
        if self.coefficients.iter().sum::<Q>() != Q::one() {
            return false;
        }
        let mut acc = vec![Q::zero(); target.dim()];
        for (&i, c) in self.indices.iter().zip(&self.coefficients) {
            let Some(p) = points.get(i) else { return false };
            if p.dim() != target.dim() {
                return false;
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += c * x;
            }
        }
        acc == target.0
    }
}

impl Serialize for ConvexCombination {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConvexCombination", 2)?;
        st.serialize_field("indices", &self.indices)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

fn check_dims(points: &[RationalVector], dim: usize) -> Result<()> {
    match points.iter().find(|p| p.dim() != dim) {
        Some(p) => Err(Error::invalid(format!("point of dimension {} where {dim} was expected", p.dim()))),
        None => Ok(()),
    }
}

/// Rows `Σλ = 1` and `Σλ_i p_i = target` over the variables `λ`.
fn hull_rows(points: &[RationalVector], target: &RationalVector) -> (Vec<Vec<Q>>, Vec<Q>) {
    let mut a = vec![vec![Q::one(); points.len()]];
    let mut b = vec![Q::one()];
    for j in 0..target.dim() {
        a.push(points.iter().map(|p| p.0[j].clone()).collect());
        b.push(target.0[j].clone());
    }
    (a, b)
}

fn hull_solution(points: &[RationalVector], target: &RationalVector) -> Option<Vec<Q>> {
    if points.is_empty() {
        return None;
    }
    let (a, b) = hull_rows(points, target);
    let c = vec![Q::zero(); points.len()];
    match simplex::solve(&LinearProgram { a, b, c }) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Whether `target` is a convex combination of `points`. `conv(∅) = ∅`.
pub fn in_convex_hull(points: &[RationalVector], target: &RationalVector) -> Result<bool> {
    check_dims(points, target.dim())?;
    Ok(hull_solution(points, target).is_some())
}

/// The points that carry positive weight in some convex representation of
/// `target`, i.e. those on the smallest face of the hull containing it.
/// `None` when `target` is outside the hull.
pub(crate) fn carrier(points: &[RationalVector], target: &RationalVector) -> Result<Option<Vec<usize>>> {
    check_dims(points, target.dim())?;
    let Some(x) = hull_solution(points, target) else {
        return Ok(None);
    };
    let mut on_face: Vec<bool> = x.iter().map(Signed::is_positive).collect();
    let (a, b) = hull_rows(points, target);
    for i in 0..points.len() {
        if on_face[i] {
            continue;
        }
        let mut c = vec![Q::zero(); points.len()];
        c[i] = Q::one();
        if let LpOutcome::Optimal { x, .. } = simplex::solve(&LinearProgram { a: a.clone(), b: b.clone(), c }) {
            for (f, xi) in on_face.iter_mut().zip(&x) {
                *f |= xi.is_positive();
            }
        }
    }
    Ok(Some((0..points.len()).filter(|&i| on_face[i]).collect()))
}

/// Whether `target` is a convex combination of `points` with every
/// coefficient strictly positive, i.e. lies in the relative interior of the
/// hull.
pub fn in_relative_interior(points: &[RationalVector], target: &RationalVector) -> Result<bool> {
    check_dims(points, target.dim())?;
    if points.is_empty() {
        return Ok(false);
    }
    // λ_i = t + s_i with t, s_i >= 0; maximize t.
    let k = points.len();
    let (rows, b) = hull_rows(points, target);
    let a: Vec<Vec<Q>> = rows
        .into_iter()
        .map(|row| {
            let t_coef: Q = row.iter().sum();
            std::iter::once(t_coef).chain(row).collect()
        })
        .collect();
    let mut c = vec![Q::zero(); k + 1];
    c[0] = Q::one();
    Ok(match simplex::solve(&LinearProgram { a, b, c }) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("t is bounded by 1/k"),
    })
}

/// Affine dimension of the span of `points` (`-1` is reported as `None`).
pub fn affine_dimension(points: &[RationalVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let rows: Vec<Vec<Q>> = rest
        .iter()
        .map(|p| p.0.iter().zip(&first.0).map(|(a, b)| a - b).collect())
        .collect();
    Some(rational_rank(rows))
}

pub(crate) fn rational_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// A nonzero `μ` with `Σμ_i = 0` and `Σμ_i p_i = 0`, if the points are
/// affinely dependent.
fn affine_dependency(points: &[&RationalVector]) -> Option<Vec<Q>> {
    let k = points.len();
    let dim = points.first()?.dim();
    // matrix with columns (1, p_i); reduce to RREF and read a kernel vector
    let mut m: Vec<Vec<Q>> = Vec::with_capacity(dim + 1);
    m.push(vec![Q::one(); k]);
    for j in 0..dim {
        m.push(points.iter().map(|p| p.0[j].clone()).collect());
    }
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free = (0..k).find(|c| !pivot_cols.contains(c))?;
    let mut mu = vec![Q::zero(); k];
    mu[free] = Q::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        mu[pc] = -m[row][free].clone();
    }
    Some(mu)
}

/// A convex combination of at most `affine_dim + 1` of the points equal to
/// `target`. Redundant points are eliminated greedily, lowest index first
/// among ties.
pub fn caratheodory(points: &[RationalVector], target: &RationalVector) -> Result<ConvexCombination> {
    check_dims(points, target.dim())?;
    let x = hull_solution(points, target).ok_or(Error::NotInHull)?;
    let mut support: Vec<(usize, Q)> = x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    loop {
        let pts: Vec<&RationalVector> = support.iter().map(|(i, _)| &points[*i]).collect();
        let Some(mut mu) = affine_dependency(&pts) else { break };
        if !mu.iter().any(Signed::is_positive) {
            for m in mu.iter_mut() {
                *m = -m.clone();
            }
        }
        let mut step: Option<(usize, Q)> = None;
        for (k, m) in mu.iter().enumerate() {
            if !m.is_positive() {
                continue;
            }
            let ratio = &support[k].1 / m;
            if step.as_ref().is_none_or(|(_, best)| ratio < *best) {
                step = Some((k, ratio));
            }
        }
        let (drop, theta) = step.expect("a dependency with Σμ = 0 has a positive entry");
        for ((_, c), m) in support.iter_mut().zip(&mu) {
            *c -= &theta * m;
        }
        support[drop].1 = Q::zero();
        support.retain(|(_, c)| !c.is_zero());
    }
    let comb = ConvexCombination {
        indices: support.iter().map(|(i, _)| *i).collect(),
        coefficients: support.into_iter().map(|(_, c)| c).collect(),
    };
    debug_assert!(comb.verify(points, target));
    Ok(comb)
}

/// An integer `δ` with `δ·p > 0` for every point, or `None` when no such
/// functional exists (equivalently, when `0 ∈ conv(points)`).
///
/// The functional minimizes `‖δ‖_1` subject to `δ·p >= 1` and is then scaled
/// to a primitive integer vector.
pub fn separating_functional(dim: usize, points: &[RationalVector]) -> Result<Option<Vec<BigInt>>> {
    check_dims(points, dim)?;
    // variables: δ+ (dim), δ- (dim), slack (k)
    let k = points.len();
    let width = 2 * dim + k;
    let mut a = Vec::with_capacity(k);
    for (i, p) in points.iter().enumerate() {
        let mut row = vec![Q::zero(); width];
        for j in 0..dim {
            row[j] = p.0[j].clone();
            row[dim + j] = -p.0[j].clone();
        }
        row[2 * dim + i] = -Q::one();
        a.push(row);
    }
    let b = vec![Q::one(); k];
    let mut c = vec![Q::zero(); width];
    for cj in c.iter_mut().take(2 * dim) {
        *cj = -Q::one();
    }
    let x = match simplex::solve(&LinearProgram { a, b, c }) {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => unreachable!("objective is bounded above by 0"),
    };
    let delta: Vec<Q> = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
    Ok(Some(primitive_integer_vector(&delta)))
}

/// Positive multiple of a rational vector with coprime integer entries.
pub(crate) fn primitive_integer_vector(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
