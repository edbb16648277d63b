//! Segre-Veronese varieties: the image of `P^{n_1-1} × .. × P^{n_r-1}` under
//! `O(a_1, .., a_r)`.
//!
//! The affine cone is the invariant ring of a rank `r` torus acting on
//! `1 + Σ n_i` coordinates: `x_0` with weight `-(a_1, .., a_r)` followed, for
//! each factor `i` in turn, by `n_i` coordinates of weight `e_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{ExponentVector, MonomialSemigroup};
use crate::septest::{check_separating, small_support_generators};
use crate::torusrep::TorusRep;

pub use crate::septest::Characteristic;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SvSpec {
    pub factors: Vec<u64>,
    pub degrees: Vec<u64>,
    pub characteristic: Characteristic,
}

impl SvSpec {
    pub fn new(factors: Vec<u64>, degrees: Vec<u64>, characteristic: Characteristic) -> Result<Self> {
        if factors.is_empty() || factors.len() != degrees.len() {
            return Err(Error::invalid(format!(
                "need as many degrees as factors, at least one of each (got {} and {})",
                factors.len(),
                degrees.len()
            )));
        }
        if let Some(n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::invalid(format!("factor size {n} is below 2")));
        }
        if degrees.contains(&0) {
            return Err(Error::invalid("degrees must be positive"));
        }
        Ok(SvSpec { factors, degrees, characteristic })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Number of coordinates `1 + Σ n_i`.
    pub fn dim(&self) -> usize {
        1 + self.factors.iter().sum::<u64>() as usize
    }

    /// Factors whose degree is 1 or a power of the characteristic.
    fn exceptional(&self) -> Vec<bool> {
        self.degrees.iter().map(|&a| is_char_power(a, self.characteristic)).collect()
    }
}

fn is_char_power(a: u64, c: Characteristic) -> bool {
    match c {
        Characteristic::Zero => a == 1,
        Characteristic::Prime(p) => prime_to(a, p) == 1,
    }
}

/// `a` with every factor `p` removed.
fn prime_to(mut a: u64, p: u64) -> u64 {
    while a.is_multiple_of(p) {
        a /= p;
    }
    a
}

/// Replaces each degree by its part prime to the characteristic; the minimal
/// separating-set size does not change.
pub fn reduce_inseparable(spec: &SvSpec) -> SvSpec {
    let degrees = match spec.characteristic {
        Characteristic::Zero => spec.degrees.clone(),
        Characteristic::Prime(p) => spec.degrees.iter().map(|&a| prime_to(a, p)).collect(),
    };
    SvSpec { degrees, ..spec.clone() }
}

pub fn sv_weight_matrix(spec: &SvSpec) -> Result<TorusRep> {
    let r = spec.rank();
    let mut weights = Vec::with_capacity(spec.dim());
    weights.push(spec.degrees.iter().map(|&a| to_i64(a).map(|x| -x)).collect::<Result<Vec<_>>>()?);
    for (i, &n) in spec.factors.iter().enumerate() {
        let mut e = vec![0i64; r];
        e[i] = 1;
        weights.extend(std::iter::repeat_n(e, n as usize));
    }
    TorusRep::from_weights(&weights)
}

/// The rank `r - 1` encoding of the Segre variety: factor `i < r` gets `e_i`,
/// the last factor `-Σ e_i`.
pub fn segre_weight_matrix(factors: &[u64]) -> Result<TorusRep> {
    let r = factors.len();
    if r < 2 {
        return Err(Error::invalid("the Segre encoding needs at least two factors"));
    }
    let mut weights = Vec::new();
    for (i, &n) in factors.iter().enumerate() {
        let w: Vec<i64> = if i + 1 < r { (0..r - 1).map(|j| i64::from(j == i)).collect() } else { vec![-1; r - 1] };
        weights.extend(std::iter::repeat_n(w, n as usize));
    }
    TorusRep::from_weights(&weights)
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// Bounds on the least `s` admitting an injective map of the affine cone to
/// `A^s`; the projective `s'` is `s - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub case: u8,
    pub s_lower: i64,
    pub s_upper: i64,
    pub s_prime_lower: i64,
    pub s_prime_upper: i64,
    pub reduced_degrees: Vec<u64>,
}

pub fn separating_size_bounds(spec: &SvSpec) -> BoundsReport {
    let reduced = reduce_inseparable(spec);
    let r = spec.rank() as i64;
    let mut n: Vec<i64> = spec.factors.iter().map(|&x| x as i64).collect();
    n.sort_unstable();
    let total: i64 = n.iter().sum();
    let generic = 2 * total - 2 * r + 1;
    let (case, lo, hi) = if reduced.degrees.iter().any(|&a| a != 1) {
        (1, generic, generic)
    } else if r == 2 {
        let s = 2 * total - 4;
        (2, s, s)
    } else {
        // the lower bound drops the smallest factor
        (3, 2 * n[1..].iter().sum::<i64>() - 2 * r + 4, generic)
    };
    BoundsReport {
        case,
        s_lower: lo,
        s_upper: hi,
        s_prime_lower: lo - 1,
        s_prime_upper: hi - 1,
        reduced_degrees: reduced.degrees,
    }
}

/// `Π n_h + Σ_{i ∉ I} C(n_i, 2) Π_{h ≠ i} n_h`, with `I` the factors of
/// degree 1 or a power of the characteristic.
pub fn monomial_min_size(spec: &SvSpec) -> u128 {
    let n: Vec<u128> = spec.factors.iter().map(|&x| u128::from(x)).collect();
    let product: u128 = n.iter().product();
    let extra: u128 = spec
        .exceptional()
        .iter()
        .zip(&n)
        .filter(|(exc, _)| !**exc)
        .map(|(_, &ni)| ni * (ni - 1) / 2 * (product / ni))
        .sum();
    product + extra
}

/// An explicit separating set of monomials of size [`monomial_min_size`]:
/// `x_0 Π x_{i,j_i}^{a_i}` for every choice of `(j_1, .., j_r)`, and for each
/// non-exceptional factor `i_0`, each pair `j < j'` in it and each choice of
/// indices in the other factors, `x_0 x_{i_0,j} x_{i_0,j'}^{a_{i_0}-1} Π_{i≠i_0} x_{i,j_i}^{a_i}`.
pub fn monomial_min_construction(spec: &SvSpec) -> Result<MonomialSemigroup> {
    let r = spec.rank();
    let offsets: Vec<usize> = spec
        .factors
        .iter()
        .scan(1usize, |acc, &n| {
            let o = *acc;
            *acc += n as usize;
            Some(o)
        })
        .collect();
    let dim = spec.dim();
    let tuples = index_tuples(&spec.factors);
    let base = |t: &[usize]| {
        let mut v = vec![0u64; dim];
        v[0] = 1;
        for i in 0..r {
            v[offsets[i] + t[i]] = spec.degrees[i];
        }
        v
    };
    let mut gens: Vec<ExponentVector> = tuples.iter().map(|t| ExponentVector::new(base(t))).collect();
    let exceptional = spec.exceptional();
    for i0 in (0..r).filter(|&i| !exceptional[i]) {
        let a = spec.degrees[i0];
        let ni = spec.factors[i0] as usize;
        let others: Vec<u64> = spec.factors.iter().enumerate().map(|(i, &n)| if i == i0 { 1 } else { n }).collect();
        for j in 0..ni {
            for jp in j + 1..ni {
                for t in index_tuples(&others) {
                    let mut v = base(&t);
                    v[offsets[i0]] = 0;
                    v[offsets[i0] + j] = 1;
                    v[offsets[i0] + jp] = a - 1;
                    gens.push(ExponentVector::new(v));
                }
            }
        }
    }
    let s = MonomialSemigroup::new(dim, gens)?;
    let rep = sv_weight_matrix(spec)?;
    s.check_invariant(rep.weights())?;
    if s.len() as u128 != monomial_min_size(spec) {
        return Err(Error::InvariantViolation(format!(
            "construction has {} monomials, formula gives {}",
            s.len(),
            monomial_min_size(spec)
        )));
    }
    Ok(s)
}

/// All `(j_1, .., j_r)` with `j_i < n_i`, last index fastest.
fn index_tuples(n: &[u64]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &ni in n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..ni as usize).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    out
}

/// The monomial invariants with support of size at most `r + 2` separate.
pub fn support_r_plus_2_separates(spec: &SvSpec) -> Result<bool> {
    let rep = sv_weight_matrix(spec)?;
    let s = small_support_generators(&rep, spec.rank() + 2)?;
    if !check_separating(&rep, &s, spec.characteristic)? {
        return Err(Error::InvariantViolation(format!(
            "monomials on at most r+2 variables fail to separate for {spec:?}"
        )));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexset::IndexSet;
    use crate::septest::{check_separating_char0, check_separating_charp, minimal_monomial_size, MinSearchOutcome};
    use crate::torusrep::PairClass;
    use num_rational::Ratio;

    fn spec(n: &[u64], a: &[u64], c: u64) -> SvSpec {
        SvSpec::new(n.to_vec(), a.to_vec(), Characteristic::from_u64(c).unwrap()).unwrap()
    }

    fn ev(v: &[u64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn spec_validation() {
        assert!(SvSpec::new(vec![2], vec![1, 1], Characteristic::Zero).is_err());
        assert!(SvSpec::new(vec![1], vec![1], Characteristic::Zero).is_err());
        assert!(SvSpec::new(vec![2], vec![0], Characteristic::Zero).is_err());
        assert!(SvSpec::new(vec![], vec![], Characteristic::Zero).is_err());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_inseparable(&spec(&[2, 2], &[4, 3], 2)).degrees, vec![1, 3]);
        assert_eq!(reduce_inseparable(&spec(&[2, 2], &[5, 7], 3)).degrees, vec![5, 7]);
        assert_eq!(reduce_inseparable(&spec(&[2, 2], &[4, 3], 0)).degrees, vec![4, 3]);
    }

    #[test]
    fn weight_matrices() {
        let r = sv_weight_matrix(&spec(&[2, 2], &[2, 1], 0)).unwrap();
        assert_eq!(r.weight_columns(), &[vec![-2, -1], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
        let r = sv_weight_matrix(&spec(&[2], &[1], 0)).unwrap();
        assert_eq!(r.weight_columns(), &[vec![-1], vec![1], vec![1]]);
        let r = sv_weight_matrix(&spec(&[2, 2, 2], &[1, 1, 1], 0)).unwrap();
        assert_eq!((r.rank(), r.dim()), (3, 7));

        let cols = |f: &[u64]| segre_weight_matrix(f).unwrap().weight_columns().to_vec();
        assert_eq!(cols(&[2, 2]), vec![vec![1], vec![1], vec![-1], vec![-1]]);
        assert_eq!(cols(&[2, 2, 2]), vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1], vec![-1, -1], vec![-1, -1]]);
        assert_eq!(cols(&[3, 2]), vec![vec![1], vec![1], vec![1], vec![-1], vec![-1]]);
        assert!(segre_weight_matrix(&[3]).is_err());
    }

    #[test]
    fn bounds_table() {
        let b = separating_size_bounds(&spec(&[3], &[3], 0));
        assert_eq!((b.case, b.s_lower, b.s_upper), (1, 5, 5));
        for c in [0, 2, 3, 5] {
            let b = separating_size_bounds(&spec(&[2, 2], &[1, 1], c));
            assert_eq!((b.case, b.s_lower, b.s_upper, b.s_prime_lower, b.s_prime_upper), (2, 4, 4, 3, 3));
        }
        let b = separating_size_bounds(&spec(&[2, 2, 2], &[1, 1, 1], 0));
        assert_eq!((b.case, b.s_lower, b.s_upper), (3, 6, 7));
        assert_eq!(separating_size_bounds(&spec(&[2, 2], &[4, 3], 2)), separating_size_bounds(&spec(&[2, 2], &[1, 3], 2)));
        // powers of the characteristic behave like degree 1
        assert_eq!(separating_size_bounds(&spec(&[3, 4], &[4, 2], 2)).case, 2);
        assert_eq!(separating_size_bounds(&spec(&[3, 4], &[4, 2], 0)).case, 1);
    }

    #[test]
    fn bounds_invariances() {
        let grid = [2u64, 3, 4];
        for &n1 in &grid {
            for &n2 in &grid {
                for &n3 in &grid {
                    for c in [0, 2, 3] {
                        for a in [[1, 1, 1], [2, 1, 1], [1, 3, 4], [4, 9, 1]] {
                            let s = spec(&[n1, n2, n3], &a, c);
                            let b = separating_size_bounds(&s);
                            assert!(b.s_lower <= b.s_upper);
                            assert_eq!(b, separating_size_bounds(&reduce_inseparable(&s)));
                            let perm = spec(&[n3, n1, n2], &[a[2], a[0], a[1]], c);
                            let bp = separating_size_bounds(&perm);
                            assert_eq!((b.case, b.s_lower, b.s_upper), (bp.case, bp.s_lower, bp.s_upper));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_size_examples() {
        assert_eq!(monomial_min_size(&spec(&[2, 2], &[1, 1], 0)), 4);
        assert_eq!(monomial_min_size(&spec(&[2, 2], &[2, 1], 0)), 6);
        assert_eq!(monomial_min_size(&spec(&[2, 2], &[2, 1], 2)), 4);
    }

    /// `Π n (1 + ½ Σ_{i ∉ I} (n_i - 1))`, evaluated over the rationals.
    fn closed_form(s: &SvSpec) -> Ratio<u128> {
        let product: u128 = s.factors.iter().map(|&n| u128::from(n)).product();
        let half_sum: Ratio<u128> = s
            .factors
            .iter()
            .zip(s.exceptional())
            .filter(|(_, e)| !e)
            .map(|(&n, _)| Ratio::new(u128::from(n) - 1, 2))
            .sum();
        Ratio::from_integer(product) * (Ratio::from_integer(1) + half_sum)
    }

    fn grid() -> Vec<SvSpec> {
        let mut out = Vec::new();
        for r in 1..=3usize {
            let choices: Vec<Vec<(u64, u64)>> = (0..r).map(|_| (2..=3).flat_map(|n| (1..=3).map(move |a| (n, a))).collect()).collect();
            let mut tuples: Vec<Vec<(u64, u64)>> = vec![vec![]];
            for c in &choices {
                tuples = tuples.into_iter().flat_map(|t| c.iter().map(move |x| { let mut t = t.clone(); t.push(*x); t })).collect();
            }
            for t in tuples {
                for c in [0, 2, 3] {
                    out.push(spec(&t.iter().map(|x| x.0).collect::<Vec<_>>(), &t.iter().map(|x| x.1).collect::<Vec<_>>(), c));
                }
            }
        }
        out
    }

    #[test]
    fn construction_matches_formula_on_grid() {
        for s in grid() {
            let size = monomial_min_size(&s);
            assert_eq!(Ratio::from_integer(size), closed_form(&s), "{s:?}");
            let c = monomial_min_construction(&s).unwrap();
            assert_eq!(c.len() as u128, size);
            let rep = sv_weight_matrix(&s).unwrap();
            assert!(c.generators().iter().all(|g| g.is_invariant(rep.weights())));
        }
    }

    #[test]
    fn construction_separates_on_small_grid() {
        for s in grid().into_iter().filter(|s| s.dim() <= 7) {
            let rep = sv_weight_matrix(&s).unwrap();
            let c = monomial_min_construction(&s).unwrap();
            assert!(check_separating(&rep, &c, s.characteristic).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn construction_examples() {
        let c = monomial_min_construction(&spec(&[2, 2], &[1, 1], 0)).unwrap();
        let mut got = c.generators().to_vec();
        got.sort();
        let mut want = vec![ev(&[1, 1, 0, 1, 0]), ev(&[1, 1, 0, 0, 1]), ev(&[1, 0, 1, 1, 0]), ev(&[1, 0, 1, 0, 1])];
        want.sort();
        assert_eq!(got, want);

        let s = spec(&[2, 2], &[2, 1], 0);
        let c = monomial_min_construction(&s).unwrap();
        assert_eq!(
            c.generators(),
            &[
                ev(&[1, 2, 0, 1, 0]),
                ev(&[1, 2, 0, 0, 1]),
                ev(&[1, 0, 2, 1, 0]),
                ev(&[1, 0, 2, 0, 1]),
                ev(&[1, 1, 1, 1, 0]),
                ev(&[1, 1, 1, 0, 1]),
            ]
        );
        assert!(check_separating_char0(&sv_weight_matrix(&s).unwrap(), &c).unwrap().separating);

        let s = spec(&[2], &[2], 2);
        let c = monomial_min_construction(&s).unwrap();
        assert_eq!(c.generators(), &[ev(&[1, 2, 0]), ev(&[1, 0, 2])]);
        assert!(check_separating_charp(&sv_weight_matrix(&s).unwrap(), &c, 2, 8).unwrap().is_yes());
    }

    #[test]
    fn no_smaller_monomial_set_on_tiny_grid() {
        for a in [[1, 1], [2, 1], [1, 2], [2, 2], [3, 1], [3, 2]] {
            for c in [0, 2, 3] {
                let s = spec(&[2, 2], &a, c);
                let rep = sv_weight_matrix(&s).unwrap();
                let pool = small_support_generators(&rep, 4).unwrap();
                let res = minimal_monomial_size(&rep, &pool, monomial_min_size(&s) as usize, s.characteristic).unwrap();
                match res.outcome {
                    MinSearchOutcome::Found { size, .. } => assert_eq!(size as u128, monomial_min_size(&s), "{s:?}"),
                    other => panic!("{s:?}: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn r_plus_2_support_separates() {
        for s in [spec(&[2, 2], &[2, 1], 0), spec(&[2], &[3], 0), spec(&[2, 2, 2], &[1, 1, 1], 0), spec(&[2, 2], &[2, 1], 2)] {
            assert!(support_r_plus_2_separates(&s).unwrap());
        }
    }

    #[test]
    fn segre_nullcone_shape() {
        for f in [vec![2u64, 2], vec![2, 2, 2], vec![3, 2], vec![2, 3, 2]] {
            let rep = segre_weight_matrix(&f).unwrap();
            let mut want = Vec::new();
            let mut start = 0usize;
            for &n in &f {
                let k: IndexSet = (start..start + n as usize).collect();
                want.push(IndexSet::full(rep.dim()).difference(k));
                start += n as usize;
            }
            let mut got = rep.nullcone().unwrap().components;
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn segre_separating_variety() {
        let rep = segre_weight_matrix(&[2, 2]).unwrap();
        let d = rep.sepvar_decompose().unwrap();
        assert!(d.simple && d.triples.is_empty());
        for p in &d.nullcone_pairs {
            assert_eq!(p.class, if p.i == p.j { PairClass::NotContained } else { PairClass::Contained });
        }
        let rep = segre_weight_matrix(&[2, 2, 2]).unwrap();
        let d = rep.sepvar_decompose().unwrap();
        assert!(d.simple);
        assert_eq!(d.nullcone_pairs.len(), 9);
        // every pair of complements of factors meets in a positive-dimensional
        // kernel or is disjoint... here each pair shares a factor with a relation
        assert!(d.nullcone_pairs.iter().all(|p| p.class == PairClass::NotContained));
        assert!(sv_weight_matrix(&spec(&[2, 2, 2], &[1, 2, 3], 0)).unwrap().sepvar_is_simple().unwrap());
    }
}
