//! Minimal nonnegative solutions of `A x = 0` by Contejean–Devie completion.
//!
//! Level `d` of the search holds candidate vectors of total degree `d`. A
//! non-solution `p` is only extended along `e_j` when `<Ap, A e_j> < 0`, i.e.
//! when the step moves `Ap` towards the origin; candidates dominated by an
//! already found solution are dropped. Every minimal solution is reached this
//! way and the search terminates.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// `columns[j]` is `A e_j`. Returns the minimal solutions in no particular order.
pub(super) fn minimal_solutions(columns: &[Vec<i64>]) -> Result<Vec<Vec<u64>>> {
    let n = columns.len();
    let r = columns.first().map_or(0, Vec::len);
    let mut found: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = (0..n)
        .map(|j| {
            let mut x = vec![0; n];
            x[j] = 1;
            (x, columns[j].clone())
        })
        .collect();

    while !frontier.is_empty() {
        let (solved, open): (Vec<_>, Vec<_>) = frontier.into_iter().partition(|(_, ax)| ax.iter().all(|&v| v == 0));
        found.extend(solved.into_iter().map(|(x, _)| (support_mask(&x), x)));

        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for (x, ax) in &open {
            for (j, col) in columns.iter().enumerate() {
                if dot(ax, col)? >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] = y[j].checked_add(1).ok_or(Error::Overflow)?;
                let mask = support_mask(&y);
                if found.iter().any(|(m, s)| m & !mask == 0 && dominates(&y, s)) {
                    continue;
                }
                if !seen.insert(y.clone()) {
                    continue;
                }
                let mut ay = Vec::with_capacity(r);
                for (a, c) in ax.iter().zip(col) {
                    ay.push(a.checked_add(*c).ok_or(Error::Overflow)?);
                }
                next.push((y, ay));
            }
        }
        frontier = next;
    }
    Ok(found.into_iter().map(|(_, x)| x).collect())
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
    })
}

fn support_mask(x: &[u64]) -> u64 {
    x.iter().enumerate().filter(|(_, &v)| v > 0).fold(0, |m, (i, _)| m | (1 << i))
}

/// `big >= small` componentwise.
fn dominates(big: &[u64], small: &[u64]) -> bool {
    big.iter().zip(small).all(|(b, s)| b >= s)
}
