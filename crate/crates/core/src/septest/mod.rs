//! When does a monomial subsemigroup `S ⊆ L` give a separating algebra?
//!
//! In characteristic 0 this happens iff for every `I ⊆ [n]` the lattice
//! `Z·S_I` contains `L_I`, and every `α ∈ L` with `α_i ≠ 0` has some `γ ∈ S`
//! with `i ∈ supp(γ) ⊆ supp(α)`. In characteristic `p` it happens iff
//! `p^m·L ⊆ S` for some `m`.
//!
//! Both conditions reduce to Hilbert basis elements. For the lattice part, an
//! element `h` lies in `L_I` exactly when `supp(h) ⊆ I`, and `S_{supp h} ⊆ S_I`,
//! so it suffices to test `h ∈ Z·S_{supp h}`; `L_I` is generated by such `h`.
//! For the support part, a decomposition of `α` into basis elements stays
//! inside `supp(α)`, and an element of `S` supported in `supp(α)` is a sum of
//! generators that all are, so testing generators is exact.

mod oracle;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::convexgeom::{carrier, RationalVector};
use crate::error::{Error, Result};
use crate::indexset::{check_subset_cap, IndexSet};
use crate::lattice::{kernel_basis, lattice_equal, restrict_kernel, IntMatrix, LatticeBasis};
use crate::semigroup::{generated_lattice, member_with_budget, restrict_semigroup, ExponentVector, MonomialSemigroup};
use crate::torusrep::TorusRep;

pub use oracle::{OracleWitness, TorusPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characteristic {
    Zero,
    Prime(u64),
}

impl Characteristic {
    /// `0` or a prime.
    pub fn from_u64(c: u64) -> Result<Self> {
        match c {
            0 => Ok(Characteristic::Zero),
            p if is_prime(p) => Ok(Characteristic::Prime(p)),
            _ => Err(Error::invalid(format!("characteristic {c} is neither 0 nor a prime"))),
        }
    }

    pub fn as_u64(self) -> u64 {
        match self {
            Characteristic::Zero => 0,
            Characteristic::Prime(p) => p,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u64())
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.as_u64())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d: &u64| d.saturating_mul(*d) <= p).all(|d| !p.is_multiple_of(d))
}

/// Why a semigroup fails the characteristic-0 criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeparatingCertificate {
    /// `witness ∈ L_subset` but `witness ∉ Z·S_subset`.
    Lattice { subset: IndexSet, witness: ExponentVector },
    /// `witness ∈ L` uses `coordinate`, but no generator `γ` has
    /// `coordinate ∈ supp(γ) ⊆ supp(witness)`.
    Support { witness: ExponentVector, coordinate: usize },
}

impl SeparatingCertificate {
    /// Re-checks the certificate from the definitions.
    pub fn verify(&self, rep: &TorusRep, s: &MonomialSemigroup) -> bool {
        let invariant = |w: &ExponentVector| !w.is_zero() && w.is_invariant(rep.weights());
        match self {
            SeparatingCertificate::Lattice { subset, witness } => {
                invariant(witness)
                    && witness.support().is_subset(*subset)
                    && !generated_lattice(&restrict_semigroup(s, *subset)).contains(witness.entries())
            }
            SeparatingCertificate::Support { witness, coordinate } => {
                let supp = witness.support();
                invariant(witness)
                    && supp.contains(*coordinate)
                    && !s.generators().iter().any(|g| g.support().contains(*coordinate) && g.support().is_subset(supp))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Char0Verdict {
    pub separating: bool,
    pub certificate: Option<SeparatingCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum CharPVerdict {
    /// `p^m·L ⊆ S`, with `m` the least exponent that works for every basis element.
    Yes { m: u32 },
    /// `p^m·witness ∉ S` for every `m` in `1..=cap`.
    NoUpTo { cap: u32, witness: ExponentVector },
}

impl CharPVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CharPVerdict::Yes { .. })
    }
}

pub fn check_separating_char0(rep: &TorusRep, s: &MonomialSemigroup) -> Result<Char0Verdict> {
    s.check_invariant(rep.weights())?;
    let hb = rep.hilbert_basis()?;
    let fail = |c| Ok(Char0Verdict { separating: false, certificate: Some(c) });

    let mut lattices: HashMap<IndexSet, LatticeBasis> = HashMap::new();
    for h in hb.elements() {
        let supp = h.support();
        let lattice = lattices.entry(supp).or_insert_with(|| generated_lattice(&restrict_semigroup(s, supp)));
        if !lattice.contains(h.entries()) {
            return fail(SeparatingCertificate::Lattice { subset: supp, witness: h.clone() });
        }
    }
    for h in hb.elements() {
        let supp = h.support();
        for i in supp.iter() {
            if !s.generators().iter().any(|g| g.entries()[i] > 0 && g.support().is_subset(supp)) {
                return fail(SeparatingCertificate::Support { witness: h.clone(), coordinate: i });
            }
        }
    }
    Ok(Char0Verdict { separating: true, certificate: None })
}

/// Tests `p^m·h ∈ S` for every Hilbert basis element `h` and `m = 1..=cap`.
/// This suffices: every element of `L` is a sum of basis elements, and
/// `p^m·h ∈ S` implies `p^{m'}·h ∈ S` for `m' >= m`.
pub fn check_separating_charp(rep: &TorusRep, s: &MonomialSemigroup, p: u64, cap: u32) -> Result<CharPVerdict> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not a prime")));
    }
    if cap == 0 {
        return Err(Error::invalid("the exponent cap must be at least 1"));
    }
    s.check_invariant(rep.weights())?;
    let budget = rep.limits().member_node_budget;
    let mut worst = 1;
    for h in rep.hilbert_basis()?.elements() {
        match least_power(s, h, p, cap, budget)? {
            Some(m) => worst = worst.max(m),
            None => return Ok(CharPVerdict::NoUpTo { cap, witness: h.clone() }),
        }
    }
    Ok(CharPVerdict::Yes { m: worst })
}

fn least_power(s: &MonomialSemigroup, h: &ExponentVector, p: u64, cap: u32, budget: u64) -> Result<Option<u32>> {
    if !eventually_member(s, h, p)? {
        return Ok(None);
    }
    let mut power = 1u64;
    for m in 1..=cap {
        power = power.checked_mul(p).ok_or(Error::Overflow)?;
        if member_with_budget(s, &h.scaled(power)?, budget)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Whether `p^m·h ∈ S` for some `m`, decided without searching.
///
/// Let `F` be the smallest face of `cone(S)` containing `h` and `G_F` the
/// generators on it. Any representation of `p^m·h` only uses `G_F`, so
/// `h ∈ Z[1/p]·G_F` is necessary. It is also sufficient: `h` lies in the
/// relative interior of `cone(G_F)`, and deep enough lattice points of that
/// cone all belong to the semigroup `N·G_F`.
fn eventually_member(s: &MonomialSemigroup, h: &ExponentVector, p: u64) -> Result<bool> {
    let supp = h.support();
    let local: Vec<&ExponentVector> = s.generators().iter().filter(|g| g.support().is_subset(supp)).collect();
    let normalised = |v: &ExponentVector| {
        let deg = BigInt::from(v.degree());
        RationalVector::new(v.entries().iter().map(|&x| BigRational::new(BigInt::from(x), deg.clone())).collect())
    };
    let points: Vec<RationalVector> = local.iter().map(|g| normalised(g)).collect();
    let Some(face) = carrier(&points, &normalised(h))? else {
        return Ok(false);
    };
    let face: Vec<Vec<u64>> = face.iter().map(|&i| local[i].entries().to_vec()).collect();
    let lattice = LatticeBasis::from_generators(h.len(), &face)?;
    // h is in the saturation of the lattice, whose index kills it.
    let index = saturation_index(&lattice)?;
    let mut q = BigInt::from(1u8);
    let mut rest = index;
    let pb = BigInt::from(p);
    while (&rest % &pb).is_zero() {
        rest /= &pb;
        q *= &pb;
    }
    let scaled: Vec<BigInt> = h.entries().iter().map(|&x| BigInt::from(x) * &q).collect();
    Ok(lattice.contains(&scaled))
}

/// `[sat(L) : L]`, the gcd of the maximal minors of a basis.
fn saturation_index(lattice: &LatticeBasis) -> Result<BigInt> {
    let rank = lattice.rank();
    if rank == 0 {
        return Ok(BigInt::from(1u8));
    }
    let basis = IntMatrix::from_rows(lattice.vectors())?;
    let n = lattice.ambient_dim();
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..rank).collect();
    loop {
        let minor = basis.select_columns(cols.iter().copied().collect()).expect("rank is positive").det()?;
        g = g.gcd(&minor);
        if g.is_one() || !next_combination(&mut cols, n) {
            break;
        }
    }
    Ok(g)
}

/// Re-checks a characteristic-`p` verdict against [`member_with_budget`].
pub fn verify_charp(rep: &TorusRep, s: &MonomialSemigroup, p: u64, verdict: &CharPVerdict) -> Result<bool> {
    let budget = rep.limits().member_node_budget;
    match verdict {
        CharPVerdict::Yes { m } => {
            let power = p.checked_pow(*m).ok_or(Error::Overflow)?;
            for h in rep.hilbert_basis()?.elements() {
                if !member_with_budget(s, &h.scaled(power)?, budget)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CharPVerdict::NoUpTo { cap, witness } => {
            Ok(witness.is_invariant(rep.weights()) && least_power(s, witness, p, *cap, budget)?.is_none())
        }
    }
}

/// Either test, by characteristic.
pub fn check_separating(rep: &TorusRep, s: &MonomialSemigroup, characteristic: Characteristic) -> Result<bool> {
    match characteristic {
        Characteristic::Zero => Ok(check_separating_char0(rep, s)?.separating),
        Characteristic::Prime(p) => Ok(check_separating_charp(rep, s, p, rep.limits().charp_cap)?.is_yes()),
    }
}

/// The invariants involving at most `bound` variables, i.e. the Hilbert basis
/// elements with support of size at most `bound`.
pub fn small_support_generators(rep: &TorusRep, bound: usize) -> Result<MonomialSemigroup> {
    if bound == 0 {
        return Err(Error::invalid("support bound must be at least 1"));
    }
    let gens = rep.hilbert_basis()?.elements().iter().filter(|h| h.support().len() <= bound).cloned().collect();
    MonomialSemigroup::new(rep.dim(), gens)
}

/// The invariants with at most `2r + 1` variables, which always separate.
pub fn construct_2rplus1(rep: &TorusRep) -> Result<MonomialSemigroup> {
    let s = small_support_generators(rep, 2 * rep.rank() + 1)?;
    let verdict = check_separating_char0(rep, &s)?;
    if !verdict.separating {
        return Err(Error::InvariantViolation(format!(
            "invariants on at most 2r+1 variables fail to separate: {:?}",
            verdict.certificate
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSpan {
    pub spans: bool,
    /// Kernel vectors with at most `r + 1` nonzero entries that generate
    /// `ker_Z A`.
    pub generators: Vec<Vec<BigInt>>,
}

/// Collects kernel vectors supported on `(r+1)`-subsets and checks that they
/// generate the full kernel lattice.
pub fn kernel_small_support_spans(rep: &TorusRep) -> Result<KernelSpan> {
    let n = rep.dim();
    check_subset_cap(n, rep.limits().subset_max_dim)?;
    let size = (rep.rank() + 1).min(n);
    let mut generators: Vec<Vec<BigInt>> = Vec::new();
    for subset in IndexSet::full(n).subsets().filter(|s| s.len() == size) {
        for v in restrict_kernel(rep.weights(), subset).vectors() {
            if !generators.contains(v) {
                generators.push(v.clone());
            }
        }
    }
    let spanned = LatticeBasis::from_generators(n, &generators)?;
    if !lattice_equal(&spanned, &kernel_basis(rep.weights())) {
        return Err(Error::InvariantViolation(
            "kernel vectors on r+1 coordinates do not generate the kernel".into(),
        ));
    }
    Ok(KernelSpan { spans: true, generators })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum MinSearchOutcome {
    Found { size: usize, witness: Vec<ExponentVector> },
    NoneWithinPool { searched_up_to: usize },
}

/// Minimality is relative to the pool searched, never absolute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinSearchResult {
    pub pool_size: usize,
    pub pool_relative: bool,
    pub characteristic: Characteristic,
    #[serde(flatten)]
    pub outcome: MinSearchOutcome,
}

/// Smallest separating subset of `pool`, scanning sizes `0..=cap` and, within
/// a size, subsets in lexicographic order of pool positions.
pub fn minimal_monomial_size(
    rep: &TorusRep,
    pool: &MonomialSemigroup,
    cap: usize,
    characteristic: Characteristic,
) -> Result<MinSearchResult> {
    pool.check_invariant(rep.weights())?;
    let gens = pool.generators();
    let top = cap.min(gens.len());
    let budget = rep.limits().search_budget;
    let mut spent: u128 = 0;
    let done = |outcome| MinSearchResult { pool_size: gens.len(), pool_relative: true, characteristic, outcome };
    for k in 0..=top {
        spent = spent.saturating_add(binomial(gens.len() as u128, k as u128));
        if spent > budget {
            return Err(Error::SearchSpaceTooLarge { required: spent, budget });
        }
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            let subset = MonomialSemigroup::new(rep.dim(), chosen.iter().map(|&i| gens[i].clone()).collect())?;
            if check_separating(rep, &subset, characteristic)? {
                return Ok(done(MinSearchOutcome::Found { size: k, witness: subset.generators().to_vec() }));
            }
            if !next_combination(&mut chosen, gens.len()) {
                break;
            }
        }
    }
    Ok(done(MinSearchOutcome::NoneWithinPool { searched_up_to: top }))
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Searches structured point pairs for two points that some invariant tells
/// apart but no generator of `S` does. `None` proves nothing.
pub fn oracle_refute(
    rep: &TorusRep,
    s: &MonomialSemigroup,
    modulus: u64,
    budget: u64,
) -> Result<Option<OracleWitness>> {
    oracle::refute(rep, s, modulus, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::hilbert_basis_restricted;
    use proptest::prelude::*;

    fn rep(weights: &[Vec<i64>]) -> TorusRep {
        TorusRep::from_weights(weights).unwrap()
    }

    fn rank1(w: &[i64]) -> TorusRep {
        rep(&w.iter().map(|&x| vec![x]).collect::<Vec<_>>())
    }

    fn ev(v: &[u64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn sg(n: usize, rows: &[&[u64]]) -> MonomialSemigroup {
        MonomialSemigroup::from_rows(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// The r = 2 instance of the sharpness example.
    fn sharp2() -> TorusRep {
        rep(&[vec![1, 0], vec![0, 1], vec![5, 5], vec![-6, 0], vec![0, -6]])
    }

    /// The criterion read literally: every subset `I`, with `L_I` computed
    /// from the restricted matrix.
    fn char0_by_subsets(rep: &TorusRep, s: &MonomialSemigroup) -> bool {
        let n = rep.dim();
        for i in IndexSet::full(n).subsets() {
            let lattice = generated_lattice(&restrict_semigroup(s, i));
            for h in hilbert_basis_restricted(rep.weights(), i).unwrap().elements() {
                if !lattice.contains(h.entries()) {
                    return false;
                }
            }
        }
        rep.hilbert_basis().unwrap().elements().iter().all(|h| {
            h.support().iter().all(|c| s.generators().iter().any(|g| g.support().contains(c) && g.support().is_subset(h.support())))
        })
    }

    #[test]
    fn char0_examples() {
        let r = rank1(&[1, 5, -6]);
        let full = r.hilbert_basis().unwrap().to_semigroup();
        assert_eq!(check_separating_char0(&r, &full).unwrap(), Char0Verdict { separating: true, certificate: None });

        let s = sg(3, &[&[0, 6, 5], &[6, 0, 1]]);
        let v = check_separating_char0(&r, &s).unwrap();
        assert!(!v.separating);
        let cert = v.certificate.unwrap();
        assert_eq!(cert, SeparatingCertificate::Lattice { subset: IndexSet::full(3), witness: ev(&[1, 1, 1]) });
        assert!(cert.verify(&r, &s));

        let r = rank1(&[1, -1]);
        let s = sg(2, &[&[2, 2]]);
        let v = check_separating_char0(&r, &s).unwrap();
        assert!(!v.separating && v.certificate.unwrap().verify(&r, &s));
    }

    #[test]
    fn support_failure_is_caught_by_the_lattice_test_first() {
        // weights (1,-1,1,-1): L is generated by x0x1, x0x3, x2x1, x2x3; drop x2x1
        let r = rank1(&[1, -1, 1, -1]);
        let s = sg(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        let v = check_separating_char0(&r, &s).unwrap();
        let missing = ev(&[0, 1, 1, 0]);
        assert_eq!(
            v.certificate,
            Some(SeparatingCertificate::Lattice { subset: missing.support(), witness: missing.clone() })
        );
        assert!(!char0_by_subsets(&r, &s));
        // the same element also violates the support condition
        let support = SeparatingCertificate::Support { witness: missing.clone(), coordinate: 1 };
        assert!(support.verify(&r, &s));
        assert!(!SeparatingCertificate::Support { witness: missing, coordinate: 0 }.verify(&r, &s));
        assert!(!SeparatingCertificate::Support { witness: ev(&[1, 1, 0, 0]), coordinate: 0 }.verify(&r, &s));
    }

    #[test]
    fn non_invariant_generator_rejected() {
        let r = rank1(&[1, -1]);
        let s = sg(2, &[&[1, 2]]);
        assert!(matches!(check_separating_char0(&r, &s), Err(Error::GeneratorNotInvariant { index: 0, .. })));
    }

    #[test]
    fn charp_examples() {
        let r = rank1(&[1, -1]);
        let s = sg(2, &[&[2, 2]]);
        assert_eq!(check_separating_charp(&r, &s, 2, 8).unwrap(), CharPVerdict::Yes { m: 1 });
        let v = check_separating_charp(&r, &s, 3, 6).unwrap();
        assert_eq!(v, CharPVerdict::NoUpTo { cap: 6, witness: ev(&[1, 1]) });
        assert!(verify_charp(&r, &s, 3, &v).unwrap());

        let r = rank1(&[1, 5, -6]);
        let full = r.hilbert_basis().unwrap().to_semigroup();
        for p in [2, 3, 5, 7] {
            assert_eq!(check_separating_charp(&r, &full, p, 8).unwrap(), CharPVerdict::Yes { m: 1 });
        }
        let s = sg(3, &[&[0, 6, 5], &[6, 0, 1]]);
        for p in [2, 3, 5] {
            let v = check_separating_charp(&r, &s, p, 8).unwrap();
            assert_eq!(v, CharPVerdict::NoUpTo { cap: 8, witness: ev(&[1, 1, 1]) });
        }
        assert!(check_separating_charp(&r, &s, 4, 8).is_err());
    }

    #[test]
    fn small_support_examples() {
        let r = rank1(&[1, 5, -6]);
        assert_eq!(small_support_generators(&r, 2).unwrap(), sg(3, &[&[6, 0, 1], &[0, 6, 5]]));
        assert_eq!(small_support_generators(&r, 3).unwrap(), r.hilbert_basis().unwrap().to_semigroup());
        assert_eq!(small_support_generators(&rank1(&[1, -1]), 2).unwrap(), sg(2, &[&[1, 1]]));
    }

    #[test]
    fn small_support_agrees_with_explicit_union() {
        let r = sharp2();
        for bound in 1..=5 {
            let mut union: Vec<ExponentVector> = Vec::new();
            for i in IndexSet::full(5).subsets().filter(|i| i.len() == bound) {
                for h in hilbert_basis_restricted(r.weights(), i).unwrap().elements() {
                    if !union.contains(h) {
                        union.push(h.clone());
                    }
                }
            }
            let mut got = small_support_generators(&r, bound).unwrap().generators().to_vec();
            got.sort();
            union.sort();
            assert_eq!(got, union, "bound {bound}");
        }
    }

    #[test]
    fn sharpness_of_2r_plus_1() {
        let r = sharp2();
        assert!(!check_separating_char0(&r, &small_support_generators(&r, 4).unwrap()).unwrap().separating);
        let s = construct_2rplus1(&r).unwrap();
        assert!(s.generators().iter().all(|g| g.support().len() <= 5));
        assert_eq!(construct_2rplus1(&rank1(&[1, -1])).unwrap(), sg(2, &[&[1, 1]]));
        assert_eq!(construct_2rplus1(&rank1(&[1, 5, -6])).unwrap(), rank1(&[1, 5, -6]).hilbert_basis().unwrap().to_semigroup());
    }

    #[test]
    fn kernel_span_examples() {
        let k = kernel_small_support_spans(&rank1(&[1, 5, -6])).unwrap();
        assert!(k.spans);
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        for want in [[-5i64, 1, 0], [6, 0, 1], [0, -6, -5]] {
            let neg: Vec<i64> = want.iter().map(|x| -x).collect();
            assert!(k.generators.contains(&big(&want)) || k.generators.contains(&big(&neg)));
        }
        assert!(kernel_small_support_spans(&rank1(&[1, -1])).unwrap().spans);
        assert!(kernel_small_support_spans(&rep(&[vec![1, 0], vec![0, 1], vec![-2, -3]])).unwrap().spans);
    }

    #[test]
    fn minimal_search_examples() {
        let r = rank1(&[1, -1]);
        let empty = MonomialSemigroup::empty(2);
        let res = minimal_monomial_size(&r, &empty, 3, Characteristic::Zero).unwrap();
        assert_eq!(res.outcome, MinSearchOutcome::NoneWithinPool { searched_up_to: 0 });
        let pool = sg(2, &[&[2, 2], &[1, 1], &[3, 3]]);
        let res = minimal_monomial_size(&r, &pool, 3, Characteristic::Zero).unwrap();
        assert_eq!(res.outcome, MinSearchOutcome::Found { size: 1, witness: vec![ev(&[1, 1])] });
        assert!(res.pool_relative);
        // in characteristic 2, x^2y^2 alone already separates
        let res = minimal_monomial_size(&r, &pool, 3, Characteristic::Prime(2)).unwrap();
        assert_eq!(res.outcome, MinSearchOutcome::Found { size: 1, witness: vec![ev(&[2, 2])] });
        // {x^2y^2, x^3y^3} separates in characteristic 0 as well
        let pool = sg(2, &[&[2, 2], &[3, 3]]);
        let res = minimal_monomial_size(&r, &pool, 3, Characteristic::Zero).unwrap();
        assert_eq!(res.outcome, MinSearchOutcome::Found { size: 2, witness: vec![ev(&[2, 2]), ev(&[3, 3])] });
    }

    #[test]
    fn minimal_search_budget() {
        let r = rank1(&[1, -1]).with_limits(crate::Limits { search_budget: 3, ..Default::default() });
        let pool = sg(2, &[&[2, 2], &[3, 3], &[5, 5]]);
        assert!(matches!(
            minimal_monomial_size(&r, &pool, 3, Characteristic::Zero),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        let r = rank1(&[1, 5, -6]);
        let s = sg(3, &[&[0, 6, 5], &[6, 0, 1]]);
        let w = oracle_refute(&r, &s, 6, 10_000).unwrap().unwrap();
        assert_eq!(w.u.coords, vec![Some(0), Some(0), Some(0)]);
        assert_eq!(w.v.coords, vec![Some(1), Some(0), Some(0)]);
        assert_eq!(w.alpha, ev(&[1, 1, 1]));
        assert!(w.verify(&r, &s));

        let full = r.hilbert_basis().unwrap().to_semigroup();
        assert_eq!(oracle_refute(&r, &full, 210, 1_000_000).unwrap(), None);

        let r = rank1(&[1, -1]);
        let w = oracle_refute(&r, &sg(2, &[&[2, 2]]), 2, 100).unwrap().unwrap();
        assert_eq!(w.v.coords, vec![Some(1), Some(0)]);
        assert_eq!(w.alpha, ev(&[1, 1]));
    }

    #[test]
    fn combinatorics_helpers() {
        assert_eq!(binomial(6, 5), 6);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
        assert!(!next_combination(&mut [], 3));
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
    }

    fn random_instance() -> impl Strategy<Value = (Vec<Vec<i64>>, u64)> {
        (1usize..=2, 2usize..=5).prop_flat_map(|(r, n)| {
            (proptest::collection::vec(proptest::collection::vec(-3i64..=3, r), n), any::<u64>())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn both_routes_to_the_char0_criterion_agree((w, mask) in random_instance()) {
            let Ok(r) = TorusRep::from_weights(&w) else { return Ok(()) };
            let hb = r.hilbert_basis().unwrap().elements().to_vec();
            // random subset of the basis plus a few doubled elements
            let mut gens = Vec::new();
            for (k, h) in hb.iter().enumerate() {
                match (mask >> (2 * (k % 32))) & 3 {
                    0 => {}
                    1 => gens.push(h.scaled(2).unwrap()),
                    _ => gens.push(h.clone()),
                }
            }
            let s = MonomialSemigroup::new(r.dim(), gens).unwrap();
            let v = check_separating_char0(&r, &s).unwrap();
            prop_assert_eq!(v.separating, char0_by_subsets(&r, &s));
            if let Some(c) = &v.certificate {
                prop_assert!(c.verify(&r, &s));
            }
            if let Some(w) = oracle_refute(&r, &s, 30, 100_000).unwrap() {
                prop_assert!(!v.separating);
                prop_assert!(w.verify(&r, &s));
            }
        }

        #[test]
        fn support_condition_on_the_basis_suffices((w, mask) in random_instance()) {
            let Ok(r) = TorusRep::from_weights(&w) else { return Ok(()) };
            let hb = r.hilbert_basis().unwrap().elements().to_vec();
            let gens: Vec<ExponentVector> =
                hb.iter().enumerate().filter(|(k, _)| (mask >> (k % 64)) & 1 == 1).map(|(_, h)| h.clone()).collect();
            let s = MonomialSemigroup::new(r.dim(), gens).unwrap();
            let holds = |alpha: &ExponentVector| {
                let supp = alpha.support();
                supp.iter().all(|i| s.generators().iter().any(|g| g.support().contains(i) && g.support().is_subset(supp)))
            };
            let bound = hb.iter().flat_map(|h| h.entries().iter().copied()).max().unwrap_or(0);
            let n = r.dim() as u32;
            prop_assume!((bound + 1).pow(n) <= 50_000);
            let on_basis = hb.iter().all(holds);
            // every invariant vector in the box [0, bound]^n
            let mut on_box = true;
            let mut alpha = vec![0u64; r.dim()];
            'outer: loop {
                let v = ExponentVector::new(alpha.clone());
                if !v.is_zero() && v.is_invariant(r.weights()) && !holds(&v) {
                    on_box = false;
                    break;
                }
                for x in alpha.iter_mut() {
                    if *x < bound {
                        *x += 1;
                        continue 'outer;
                    }
                    *x = 0;
                }
                break;
            }
            prop_assert_eq!(on_basis, on_box);
        }

        #[test]
        fn eventual_membership_agrees_with_search((w, mask) in random_instance()) {
            let Ok(r) = TorusRep::from_weights(&w) else { return Ok(()) };
            let hb = r.hilbert_basis().unwrap().elements().to_vec();
            let mut gens = Vec::new();
            for (k, h) in hb.iter().enumerate() {
                match (mask >> (2 * (k % 32))) & 3 {
                    0 => {}
                    1 => gens.push(h.scaled(2).unwrap()),
                    2 => gens.push(h.scaled(3).unwrap()),
                    _ => gens.push(h.clone()),
                }
            }
            let s = MonomialSemigroup::new(r.dim(), gens).unwrap();
            for h in &hb {
                for p in [2u64, 3] {
                    let eventually = eventually_member(&s, h, p).unwrap();
                    let top = if p == 2 { 10 } else { 6 };
                    let found = (1..=top)
                        .any(|m| member_with_budget(&s, &h.scaled(p.pow(m)).unwrap(), 10_000_000).unwrap());
                    prop_assert_eq!(eventually, found, "h = {:?}, p = {}", h, p);
                }
            }
        }
    }
}
