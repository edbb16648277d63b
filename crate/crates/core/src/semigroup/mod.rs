//! The invariant semigroup `L = ker_Z A ∩ N^n` and finitely generated
//! subsemigroups of it.

mod hilbert;
mod membership;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::lattice::{IntMatrix, LatticeBasis};
use crate::limits::Limits;
use crate::torusrep::TorusRep;

/// A point of `N^n`, the exponent of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn support(&self) -> IndexSet {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: u64) -> Result<ExponentVector> {
        self.0
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(ExponentVector)
    }

    /// `self >= other` componentwise.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Whether `A·self = 0`.
    pub fn is_invariant(&self, a: &IntMatrix) -> bool {
        self.len() == a.cols() && a.apply(&self.to_bigint()).iter().all(|x| x.sign() == num_bigint::Sign::NoSign)
    }

    fn grlex_key(&self) -> (u64, &[u64]) {
        (self.degree(), &self.0)
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// The semigroup generated by an explicit finite list. Generators are
/// nonzero and pairwise distinct; order of first occurrence is kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialSemigroup {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialSemigroup {
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        let mut gens: Vec<ExponentVector> = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.len() != dim {
                return Err(Error::invalid(format!("generator {i} has length {} but n = {dim}", g.len())));
            }
            if g.is_zero() {
                return Err(Error::invalid(format!("generator {i} is the zero vector")));
            }
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(MonomialSemigroup { dim, generators: gens })
    }

    pub fn from_rows(dim: usize, rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(dim, rows.iter().cloned().map(ExponentVector).collect())
    }

    pub fn empty(dim: usize) -> Self {
        MonomialSemigroup { dim, generators: Vec::new() }
    }

    /// As [`MonomialSemigroup::new`], additionally requiring every generator
    /// to be an invariant of `rep`.
    pub fn for_rep(rep: &TorusRep, generators: Vec<ExponentVector>) -> Result<Self> {
        let s = Self::new(rep.dim(), generators)?;
        s.check_invariant(rep.weights())?;
        Ok(s)
    }

    pub fn check_invariant(&self, a: &IntMatrix) -> Result<()> {
        if self.dim != a.cols() {
            return Err(Error::invalid(format!("semigroup lives in N^{} but the representation has n = {}", self.dim, a.cols())));
        }
        match self.generators.iter().position(|g| !g.is_invariant(a)) {
            Some(index) => Err(Error::GeneratorNotInvariant { index, vector: self.generators[index].0.clone() }),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_generator(&self, g: &ExponentVector) -> bool {
        self.generators.contains(g)
    }

    fn raw(&self) -> Vec<Vec<u64>> {
        self.generators.iter().map(|g| g.0.clone()).collect()
    }
}

/// The minimal generating set of `L`, sorted by degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    dim: usize,
    elements: Vec<ExponentVector>,
}

impl HilbertBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ExponentVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_semigroup(&self) -> MonomialSemigroup {
        MonomialSemigroup { dim: self.dim, generators: self.elements.clone() }
    }

    /// The Hilbert basis of the face `L_I`, which is `HB(L) ∩ L_I`.
    pub fn restricted(&self, support: IndexSet) -> HilbertBasis {
        HilbertBasis {
            dim: self.dim,
            elements: self.elements.iter().filter(|e| e.support().is_subset(support)).cloned().collect(),
        }
    }

    fn from_unsorted(dim: usize, mut elements: Vec<ExponentVector>) -> Self {
        elements.sort_by(|a, b| a.grlex_key().cmp(&b.grlex_key()));
        HilbertBasis { dim, elements }
    }
}

/// Hilbert basis of `ker_Z A ∩ N^n` with the default dimension cap.
pub fn hilbert_basis(a: &IntMatrix) -> Result<HilbertBasis> {
    hilbert_basis_capped(a, Limits::default().hilbert_max_dim)
}

pub fn hilbert_basis_capped(a: &IntMatrix, max_dim: usize) -> Result<HilbertBasis> {
    let n = a.cols();
    if n > max_dim || n > crate::indexset::MAX_INDEX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, cap: max_dim });
    }
    let cols: Vec<Vec<i64>> = {
        let rows = a.to_i64_rows()?;
        (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
    };
    let raw = hilbert::minimal_solutions(&cols)?;
    let hb = HilbertBasis::from_unsorted(n, raw.into_iter().map(ExponentVector).collect());
    verify_hilbert_basis(a, &hb)?;
    Ok(hb)
}

/// Soundness and antichain property of a computed basis.
fn verify_hilbert_basis(a: &IntMatrix, hb: &HilbertBasis) -> Result<()> {
    for (i, x) in hb.elements.iter().enumerate() {
        if x.is_zero() || !x.is_invariant(a) {
            return Err(Error::InvariantViolation(format!("Hilbert basis element {x:?} is not a nonzero invariant")));
        }
        if let Some(y) = hb.elements[..i].iter().find(|y| x.dominates(y)) {
            return Err(Error::InvariantViolation(format!("Hilbert basis element {x:?} dominates {y:?}")));
        }
    }
    Ok(())
}

/// Hilbert basis of `L_I = {α ∈ L : supp(α) ⊆ I}`, computed on the columns in
/// `I` and embedded back into `N^n`.
pub fn hilbert_basis_restricted(a: &IntMatrix, support: IndexSet) -> Result<HilbertBasis> {
    hilbert_basis_restricted_capped(a, support, Limits::default().hilbert_max_dim)
}

pub fn hilbert_basis_restricted_capped(a: &IntMatrix, support: IndexSet, max_dim: usize) -> Result<HilbertBasis> {
    let n = a.cols();
    let cols: Vec<usize> = support.iter().filter(|&j| j < n).collect();
    let Some(sub) = a.select_columns(support) else {
        return Ok(HilbertBasis { dim: n, elements: Vec::new() });
    };
    let local = hilbert_basis_capped(&sub, max_dim)?;
    let elements = local
        .elements
        .iter()
        .map(|e| {
            let mut v = vec![0; n];
            for (x, &j) in e.0.iter().zip(&cols) {
                v[j] = *x;
            }
            ExponentVector(v)
        })
        .collect();
    Ok(HilbertBasis::from_unsorted(n, elements))
}

/// Whether `t` is an `N`-combination of the generators of `s`.
pub fn member(s: &MonomialSemigroup, t: &ExponentVector) -> Result<bool> {
    member_with_budget(s, t, Limits::default().member_node_budget)
}

/// As [`member`]; searches visiting more than `node_budget` nodes give up
/// with [`Error::SearchSpaceTooLarge`].
pub fn member_with_budget(s: &MonomialSemigroup, t: &ExponentVector, node_budget: u64) -> Result<bool> {
    if t.len() != s.dim {
        return Err(Error::invalid(format!("target has length {} but n = {}", t.len(), s.dim)));
    }
    membership::is_member(&s.raw(), &t.0, node_budget)
}

/// `Z·S`.
pub fn generated_lattice(s: &MonomialSemigroup) -> LatticeBasis {
    LatticeBasis::from_generators(s.dim, &s.raw()).expect("generators have the ambient length")
}

/// The generators supported inside `support`. On presentations of subsemigroups
/// of `L` this is exactly `S ∩ L_I`, because a sum of nonnegative vectors is
/// supported in `I` only if every summand is.
pub fn restrict_semigroup(s: &MonomialSemigroup, support: IndexSet) -> MonomialSemigroup {
    MonomialSemigroup {
        dim: s.dim,
        generators: s.generators.iter().filter(|g| g.support().is_subset(support)).cloned().collect(),
    }
}
