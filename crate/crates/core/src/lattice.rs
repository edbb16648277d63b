//! Exact integer linear algebra: Hermite normal form, kernel lattices and
//! lattice membership.
//!
//! Row-style HNF throughout: pivots are positive, entries above a pivot lie in
//! `[0, pivot)`, zero rows come last. A [`LatticeBasis`] always stores the
//! nonzero rows of such a form, so two bases of the same lattice are equal as
//! values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;

/// Dense row-major matrix of arbitrary-precision integers, at least 1x1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix must have at least one row and one column"));
        }
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = IntMatrix::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        Ok(m)
    }

    /// Rows of equal length; convenient for small literal matrices.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("matrix rows have different lengths"));
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<T: Into<BigInt> + Clone>(columns: &[Vec<T>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::invalid("matrix columns have different lengths"));
        }
        let mut data = Vec::with_capacity(rows * columns.len());
        for i in 0..rows {
            for c in columns {
                data.push(c[i].clone().into());
            }
        }
        IntMatrix::new(rows, columns.len(), data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix dimensions do not agree for product"));
        }
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix::new(self.rows, other.cols, data)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Submatrix keeping only the columns in `keep`, in increasing order.
    pub fn select_columns(&self, keep: IndexSet) -> Option<IntMatrix> {
        let cols: Vec<usize> = keep.iter().filter(|&j| j < self.cols).collect();
        if cols.is_empty() {
            return None;
        }
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in &cols {
                data.push(self.get(i, j).clone());
            }
        }
        Some(IntMatrix { rows: self.rows, cols: cols.len(), data })
    }

    pub fn rank(&self) -> usize {
        hnf(self).rank()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    /// Entries as `i64`, failing on overflow.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `h = u * m` with `u` unimodular and `h` in row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let mut h = m.to_rows();
    let rows = m.rows;
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let pivots = hnf_in_place(&mut h, Some(&mut u), m.cols);
    HermiteForm {
        h: IntMatrix { rows, cols: m.cols, data: h.into_iter().flatten().collect() },
        u: IntMatrix { rows, cols: rows, data: u.into_iter().flatten().collect() },
        pivots,
    }
}

/// Row-reduces `h` to HNF, applying every row operation to `u` too.
fn hnf_in_place(h: &mut [Vec<BigInt>], mut u: Option<&mut Vec<Vec<BigInt>>>, cols: usize) -> Vec<usize> {
    let rows = h.len();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h[i][col].is_zero() {
                continue;
            }
            if h[p][col].is_zero() {
                h.swap(p, i);
                if let Some(u) = u.as_deref_mut() {
                    u.swap(p, i);
                }
                continue;
            }
            let a = h[p][col].clone();
            let b = h[i][col].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            // [x y; -b/g a/g] has determinant 1
            combine_rows(h, p, i, &x, &y, &bg, &ag);
            if let Some(u) = u.as_deref_mut() {
                combine_rows(u, p, i, &x, &y, &bg, &ag);
            }
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            negate_row(&mut h[p]);
            if let Some(u) = u.as_deref_mut() {
                negate_row(&mut u[p]);
            }
        }
        let pivot = h[p][col].clone();
        for i in 0..p {
            let q = h[i][col].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            sub_multiple(h, i, p, &q);
            if let Some(u) = u.as_deref_mut() {
                sub_multiple(u, i, p, &q);
            }
        }
        pivots.push(col);
        p += 1;
    }
    pivots
}

fn combine_rows(m: &mut [Vec<BigInt>], p: usize, i: usize, x: &BigInt, y: &BigInt, bg: &BigInt, ag: &BigInt) {
    for k in 0..m[p].len() {
        let rp = &m[p][k];
        let ri = &m[i][k];
        let np = x * rp + y * ri;
        let ni = ag * ri - bg * rp;
        m[p][k] = np;
        m[i][k] = ni;
    }
}

fn negate_row(r: &mut [BigInt]) {
    for x in r.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// `m[i] -= q * m[p]`
fn sub_multiple(m: &mut [Vec<BigInt>], i: usize, p: usize, q: &BigInt) {
    for k in 0..m[i].len() {
        let d = q * &m[p][k];
        m[i][k] -= d;
    }
}

/// A sublattice of `Z^n`, stored canonically as the nonzero rows of its HNF.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    /// The lattice generated by arbitrary (possibly dependent) integer vectors.
    pub fn from_generators<T: Into<BigInt> + Clone>(ambient_dim: usize, gens: &[Vec<T>]) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != ambient_dim {
                return Err(Error::invalid(format!(
                    "generator of length {} in ambient dimension {ambient_dim}",
                    g.len()
                )));
            }
            let row: Vec<BigInt> = g.iter().cloned().map(Into::into).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        if rows.is_empty() || ambient_dim == 0 {
            return Ok(LatticeBasis::zero(ambient_dim));
        }
        let pivots = hnf_in_place(&mut rows, None, ambient_dim);
        rows.truncate(pivots.len());
        Ok(LatticeBasis { ambient_dim, vectors: rows, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn contains<T: Into<BigInt> + Clone>(&self, v: &[T]) -> bool {
        let v: Vec<BigInt> = v.iter().cloned().map(Into::into).collect();
        lattice_member(self, &v)
    }

    /// Coordinates of `v` with respect to the stored basis, if `v` lies in the
    /// rational span.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut rest: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = &rest[p] / BigRational::from_integer(row[p].clone());
            if !c.is_zero() {
                for (r, x) in rest.iter_mut().zip(row) {
                    *r -= &c * BigRational::from_integer(x.clone());
                }
            }
            coords.push(c);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }
}

impl fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeBasis")
            .field("ambient_dim", &self.ambient_dim)
            .field("vectors", &self.vectors.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
            .finish()
    }
}

/// Basis of `{v in Z^cols : A v = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> LatticeBasis {
    let form = hnf(&a.transpose());
    let kernel: Vec<Vec<BigInt>> = (form.rank()..a.cols).map(|i| form.u.row(i).to_vec()).collect();
    LatticeBasis::from_generators(a.cols, &kernel).expect("kernel rows have ambient length")
}

pub fn lattice_member(b: &LatticeBasis, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), b.ambient_dim, "vector length differs from ambient dimension");
    let mut rest = v.to_vec();
    let mut col = 0;
    for (row, &p) in b.vectors.iter().zip(&b.pivots) {
        if rest[col..p].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return false;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        col = p + 1;
    }
    rest[col..].iter().all(Zero::is_zero)
}

pub fn lattice_equal(b1: &LatticeBasis, b2: &LatticeBasis) -> bool {
    assert_eq!(b1.ambient_dim, b2.ambient_dim);
    b1 == b2
}

/// Kernel vectors supported inside `support`, embedded in `Z^cols`.
pub fn restrict_kernel(a: &IntMatrix, support: IndexSet) -> LatticeBasis {
    let Some(sub) = a.select_columns(support) else {
        return LatticeBasis::zero(a.cols);
    };
    let cols: Vec<usize> = support.iter().filter(|&j| j < a.cols).collect();
    let embedded: Vec<Vec<BigInt>> = kernel_basis(&sub)
        .vectors
        .iter()
        .map(|k| {
            let mut v = vec![BigInt::zero(); a.cols];
            for (x, &j) in k.iter().zip(&cols) {
                v[j] = x.clone();
            }
            v
        })
        .collect();
    LatticeBasis::from_generators(a.cols, &embedded).expect("embedded kernel vectors")
}
