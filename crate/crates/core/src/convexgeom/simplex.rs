//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `maximize c.x subject to A x = b, x >= 0`. Problem sizes here are a
//! few dozen variables at most, so a plain tableau is fine.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    pub a: Vec<Vec<Q>>,
    pub b: Vec<Q>,
    pub c: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    /// `rows x (vars + 1)`, last column is the right-hand side.
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    vars: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.t[i][self.vars]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs of `c` with respect to the current basis.
    fn reduced_costs(&self, c: &[Q]) -> Vec<Q> {
        let mut d: Vec<Q> = c.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &c[bv];
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if !self.t[i][j].is_zero() {
                    *dj -= cb * &self.t[i][j];
                }
            }
        }
        d
    }

    /// Runs the simplex loop for objective `c` over columns `< allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, c: &[Q], allowed: usize) -> bool {
        loop {
            let d = self.reduced_costs(c);
            // Bland: lowest-index improving column
            let Some(col) = (0..allowed).find(|&j| d[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn value(&self, c: &[Q]) -> Q {
        self.basis.iter().enumerate().map(|(i, &bv)| &c[bv] * self.rhs(i)).sum()
    }
}

pub(crate) fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.c.len();
    let m = lp.a.len();
    assert_eq!(lp.b.len(), m);
    if m == 0 {
        return if lp.c.iter().any(Signed::is_positive) {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Optimal { x: vec![Q::zero(); n], value: Q::zero() }
        };
    }

    // Phase 1 on [A | I] with b >= 0.
    let vars = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, (row, bi)) in lp.a.iter().zip(&lp.b).enumerate() {
        assert_eq!(row.len(), n);
        let flip = bi.is_negative();
        let mut r: Vec<Q> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        r.push(if flip { -bi } else { bi.clone() });
        t.push(r);
    }
    let mut tab = Tableau { t, basis: (n..vars).collect(), vars };
    let phase1: Vec<Q> = (0..vars).map(|j| if j < n { Q::zero() } else { -Q::one() }).collect();
    tab.optimize(&phase1, vars);
    if tab.value(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive artificial variables out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut phase2 = lp.c.clone();
    phase2.extend((0..m).map(|_| Q::zero()));
    if !tab.optimize(&phase2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rhs(i).clone();
        }
    }
    let value = lp.c.iter().zip(&x).map(|(c, x)| c * x).sum();
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    fn lp(a: &[&[i64]], b: &[i64], c: &[i64]) -> LinearProgram {
        LinearProgram {
            a: a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            b: b.iter().map(|&x| q(x)).collect(),
            c: c.iter().map(|&x| q(x)).collect(),
        }
    }

    #[test]
    fn small_optimum() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6 -> (8/5, 6/5), value 14/5
        let out = solve(&lp(&[&[1, 2, 1, 0], &[3, 1, 0, 1]], &[4, 6], &[1, 1, 0, 0]));
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, Q::new(BigInt::from(14), BigInt::from(5)));
                assert_eq!(x[0], Q::new(BigInt::from(8), BigInt::from(5)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(solve(&lp(&[&[1, 1]], &[-1], &[0, 0])), LpOutcome::Infeasible);
        assert_eq!(solve(&lp(&[&[1, -1]], &[0], &[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let out = solve(&lp(&[&[1, 1], &[2, 2]], &[1, 2], &[1, 0]));
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if value == q(1)));
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's example, rows scaled to integers; Dantzig's rule cycles here.
        let a: &[&[i64]] = &[
            &[4, 0, 0, 1, -32, -4, 36],
            &[0, 2, 0, 1, -24, -1, 6],
            &[0, 0, 1, 0, 0, 1, 0],
        ];
        let out = solve(&lp(a, &[0, 0, 1], &[0, 0, 0, 3, -80, 2, -24]));
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if value == q(5)));
    }
}
