//! Deciding `t ∈ N·G` for a finite generator list `G ⊂ N^n`.
//!
//! Only generators supported inside `supp(t)` can occur, and `t` must lie in
//! the lattice `Z·G`. The survivors are split into a rationally independent
//! set `B` (placed last) and the rest `N`. Multiplicities of `N` are
//! enumerated depth first; at each level the admissible multiplicities form
//! one residue class, read off a Hermite form of the remaining generators.
//! Once all but one multiplicity of `N` is fixed, the coordinates on `B`
//! are affine in the last one, so nonnegativity cuts out an interval and
//! integrality a residue class — no enumeration is needed there.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::convexgeom::{in_convex_hull, RationalVector};
use crate::error::{Error, Result};
use crate::lattice::{hnf, IntMatrix, LatticeBasis};

pub(super) fn is_member(gens: &[Vec<u64>], target: &[u64], node_budget: u64) -> Result<bool> {
    let support: Vec<usize> = (0..target.len()).filter(|&i| target[i] > 0).collect();
    if support.is_empty() {
        return Ok(true);
    }
    let t: Vec<i128> = support.iter().map(|&i| i128::from(target[i])).collect();
    let mut local: Vec<Vec<i128>> = Vec::new();
    for g in gens {
        if g.iter().enumerate().any(|(i, &v)| v > 0 && target[i] == 0) {
            continue;
        }
        let v: Vec<i128> = support.iter().map(|&i| i128::from(g[i])).collect();
        if v.iter().any(|&x| x > 0) && !local.contains(&v) {
            local.push(v);
        }
    }
    let d = support.len();
    if local.iter().fold(0u64, |m, g| m | mask(g)) != full_mask(d) {
        return Ok(false);
    }
    let lattice = LatticeBasis::from_generators(d, &local)?;
    if !lattice.contains(&t) || !in_cone(&local, &t)? {
        return Ok(false);
    }

    // B: independent generators by ascending degree; N: the rest, descending.
    let mut by_degree: Vec<Vec<i128>> = local;
    by_degree.sort_by_key(|g| (g.iter().sum::<i128>(), g.clone()));
    let mut basis: Vec<Vec<i128>> = Vec::new();
    let mut rest: Vec<Vec<i128>> = Vec::new();
    for g in by_degree {
        let mut trial = basis.clone();
        trial.push(g.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
        } else {
            rest.push(g);
        }
    }
    rest.reverse();

    let solver = BasisSolver::new(&basis)?;
    let mut order = rest.clone();
    order.extend(basis.iter().cloned());
    let mut levels = Vec::with_capacity(rest.len());
    for k in 0..rest.len().saturating_sub(1) {
        levels.push(Level::new(&order, k)?);
    }
    let cover: Vec<u64> = (0..=order.len())
        .map(|k| order[k.min(order.len())..].iter().fold(0, |m, g| m | mask(g)))
        .collect();
    let mut search = Search {
        rest: &rest,
        levels: &levels,
        solver: &solver,
        cover: &cover,
        failed: HashSet::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.run(0, t)
}

/// `t ∈ cone(gens)`, decided as `t/deg t ∈ conv(g/deg g)`; every generator
/// has positive degree, so the two are equivalent.
fn in_cone(gens: &[Vec<i128>], t: &[i128]) -> Result<bool> {
    let normalised = |v: &[i128]| {
        let deg = BigInt::from(v.iter().sum::<i128>());
        RationalVector::new(v.iter().map(|&x| BigRational::new(BigInt::from(x), deg.clone())).collect())
    };
    let points: Vec<RationalVector> = gens.iter().map(|g| normalised(g)).collect();
    in_convex_hull(&points, &normalised(t))
}

fn mask(v: &[i128]) -> u64 {
    v.iter().enumerate().filter(|(_, &x)| x != 0).fold(0, |m, (i, _)| m | (1 << i))
}

fn full_mask(d: usize) -> u64 {
    if d >= 64 {
        u64::MAX
    } else {
        (1 << d) - 1
    }
}

fn to_big(v: &[i128]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

fn rank(vectors: &[Vec<i128>]) -> usize {
    let rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    crate::convexgeom::rational_rank(rows)
}

/// Largest `c` with `c·g <= r` componentwise.
fn max_multiple(g: &[i128], r: &[i128]) -> i128 {
    g.iter().zip(r).filter(|(&gi, _)| gi > 0).map(|(gi, ri)| ri / gi).min().unwrap_or(0)
}

/// Solution of `c ≡ a (mod m)`; `m == 0` pins `c = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Residue {
    a: i128,
    m: i128,
}

impl Residue {
    const ANY: Residue = Residue { a: 0, m: 1 };

    /// Intersection of two residue classes (generalized CRT).
    fn meet(self, other: Residue) -> Option<Residue> {
        if self.m == 0 {
            return other.admits(self.a).then_some(self);
        }
        if other.m == 0 {
            return self.admits(other.a).then_some(other);
        }
        let e = self.m.extended_gcd(&other.m);
        let g = e.gcd;
        let diff = other.a - self.a;
        if diff % g != 0 {
            return None;
        }
        let l = self.m / g * other.m;
        let step = (diff / g).rem_euclid(other.m / g) * e.x.rem_euclid(other.m / g) % (other.m / g);
        Some(Residue { a: (self.a + self.m * step).rem_euclid(l), m: l })
    }

    fn admits(self, c: i128) -> bool {
        if self.m == 0 {
            c == self.a
        } else {
            (c - self.a).rem_euclid(self.m) == 0
        }
    }

    /// Largest admissible value in `[lo, hi]`.
    fn largest_in(self, lo: i128, hi: i128) -> Option<i128> {
        if lo > hi {
            return None;
        }
        let c = if self.m == 0 { self.a } else { hi - (hi - self.a).rem_euclid(self.m) };
        (lo <= c && c <= hi).then_some(c)
    }
}

/// `c·v ≡ u (mod modulus)`.
fn solve_linear_congruence(v: i128, u: i128, modulus: i128) -> Option<Residue> {
    let v = v.rem_euclid(modulus);
    let u = u.rem_euclid(modulus);
    let g = v.gcd(&modulus);
    if u % g != 0 {
        return None;
    }
    let m = modulus / g;
    if m == 1 {
        return Some(Residue::ANY);
    }
    let inv = (v / g).extended_gcd(&m).x.rem_euclid(m);
    Some(Residue { a: (u / g) % m * inv % m, m })
}

/// `y = W r_sq / D` inverts the independent generators on a square set of
/// coordinates; consistency on the other coordinates is automatic because
/// every residual stays in their rational span.
struct BasisSolver {
    rows: Vec<usize>,
    w: Vec<Vec<i128>>,
    den: i128,
}

impl BasisSolver {
    fn new(basis: &[Vec<i128>]) -> Result<Self> {
        let m = basis.len();
        let d = basis.first().map_or(0, Vec::len);
        // pick m coordinates on which the basis is invertible
        let mut rows = Vec::with_capacity(m);
        let mut picked: Vec<Vec<i128>> = Vec::new();
        for i in 0..d {
            let mut trial = picked.clone();
            trial.push(basis.iter().map(|b| b[i]).collect());
            if rank(&trial) == trial.len() {
                picked = trial;
                rows.push(i);
            }
            if rows.len() == m {
                break;
            }
        }
        let inv = invert(&picked);
        let den = inv.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let w = inv
            .iter()
            .map(|row| row.iter().map(|x| to_i128(&(x * BigRational::from_integer(den.clone())).to_integer())).collect())
            .collect::<Result<_>>()?;
        Ok(BasisSolver { rows, w, den: to_i128(&den)? })
    }

    /// `W · r_sq`, i.e. `D` times the coordinates of `r`.
    fn scaled_coords(&self, r: &[i128]) -> Result<Vec<i128>> {
        self.w
            .iter()
            .map(|row| {
                row.iter().zip(&self.rows).try_fold(0i128, |acc, (wij, &i)| {
                    wij.checked_mul(r[i]).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    fn solves_nonnegatively(&self, r: &[i128]) -> Result<bool> {
        let u = self.scaled_coords(r)?;
        Ok(u.iter().all(|&x| x >= 0 && x % self.den == 0))
    }

    /// Some `c` in `[0, hi]` with `r - c·g = B y`, `y` integral and `>= 0`.
    fn exists_last(&self, r: &[i128], g: &[i128], hi: i128) -> Result<bool> {
        let u = self.scaled_coords(r)?;
        let v = self.scaled_coords(g)?;
        let (mut lo, mut hi) = (0i128, hi);
        let mut class = Residue::ANY;
        for (&ui, &vi) in u.iter().zip(&v) {
            // need ui - c·vi >= 0 and ≡ 0 mod den
            match vi.signum() {
                1 => hi = hi.min(ui.div_euclid(vi)),
                -1 => lo = lo.max(-ui.div_euclid(-vi)),
                _ if ui < 0 => return Ok(false),
                _ => {}
            }
            if self.den > 1 {
                let Some(rc) = solve_linear_congruence(vi, ui, self.den) else {
                    return Ok(false);
                };
                let Some(meet) = class.meet(rc) else { return Ok(false) };
                class = meet;
            }
        }
        Ok(class.largest_in(lo, hi).is_some())
    }
}

fn invert(m: &[Vec<i128>]) -> Vec<Vec<BigRational>> {
    let k = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            r.extend((0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&i| !a[i][col].is_zero()).expect("invertible");
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[k..].to_vec()).collect()
}

/// Admissible multiplicities of `order[k]` given a residual in `Z·order[k..]`.
struct Level {
    h: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    /// Column 0 of the transform, restricted to the rank rows.
    u0: Vec<i128>,
    /// Generator of `{c : c·g_k ∈ Z·order[k+1..]}`.
    period: i128,
}

impl Level {
    fn new(order: &[Vec<i128>], k: usize) -> Result<Self> {
        let d = order[k].len();
        let suffix = LatticeBasis::from_generators(d, &order[k + 1..].iter().map(|g| to_big(g)).collect::<Vec<_>>())?;
        let mut stack = vec![to_big(&order[k])];
        stack.extend(suffix.vectors().iter().cloned());
        let form = hnf(&IntMatrix::from_rows(&stack)?);
        let rank = form.rank();
        let h = (0..rank)
            .map(|i| form.h.row(i).iter().map(to_i128).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let u0 = (0..rank).map(|i| to_i128(form.u.get(i, 0))).collect::<Result<_>>()?;
        let period = (rank..stack.len()).try_fold(0i128, |g, i| Ok::<_, Error>(g.gcd(&to_i128(form.u.get(i, 0))?)))?;
        Ok(Level { h, pivots: form.pivots.clone(), u0, period })
    }

    fn residue(&self, r: &[i128]) -> Option<Residue> {
        let mut rest = r.to_vec();
        let mut c0 = 0i128;
        for ((row, &p), u) in self.h.iter().zip(&self.pivots).zip(&self.u0) {
            if rest[p] % row[p] != 0 {
                return None;
            }
            let y = rest[p] / row[p];
            if y != 0 {
                for (x, hv) in rest.iter_mut().zip(row) {
                    *x -= y * hv;
                }
                c0 += y * u;
            }
        }
        if rest.iter().any(|&x| x != 0) {
            return None;
        }
        Some(if self.period == 0 { Residue { a: c0, m: 0 } } else { Residue { a: c0.rem_euclid(self.period), m: self.period } })
    }
}

struct Search<'a> {
    rest: &'a [Vec<i128>],
    levels: &'a [Level],
    solver: &'a BasisSolver,
    cover: &'a [u64],
    failed: HashSet<(usize, Vec<i128>)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchSpaceTooLarge {
                required: u128::from(self.nodes),
                budget: u128::from(self.budget),
            });
        }
        Ok(())
    }

    fn run(&mut self, k: usize, r: Vec<i128>) -> Result<bool> {
        self.tick()?;
        if mask(&r) & !self.cover[k] != 0 {
            return Ok(false);
        }
        if k == self.rest.len() {
            return self.solver.solves_nonnegatively(&r);
        }
        let g = &self.rest[k];
        let hi = max_multiple(g, &r);
        if k + 1 == self.rest.len() {
            return self.solver.exists_last(&r, g, hi);
        }
        if self.failed.contains(&(k, r.clone())) {
            return Ok(false);
        }
        let Some(class) = self.levels[k].residue(&r) else {
            return Ok(false);
        };
        let mut c = class.largest_in(0, hi);
        while let Some(cv) = c {
            let next: Vec<i128> = r.iter().zip(g).map(|(ri, gi)| ri - cv * gi).collect();
            if self.run(k + 1, next)? {
                return Ok(true);
            }
            c = if class.m == 0 { None } else { class.largest_in(0, cv - class.m) };
        }
        self.failed.insert((k, r));
        Ok(false)
    }
}
