//! A torus representation given by its weight matrix, and its nullcone and
//! separating-variety geometry.
//!
//! Everything here is a statement about coordinate subsets `I ⊆ [n]` and the
//! convex geometry of their weights `wt(I)`, decided by scanning all subsets.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::convexgeom::{self, RationalVector};
use crate::error::{Error, Result};
use crate::indexset::{check_subset_cap, IndexSet};
use crate::lattice::{restrict_kernel, IntMatrix};
use crate::limits::Limits;
use crate::semigroup::{hilbert_basis_capped, HilbertBasis};

/// Rank `r` torus acting on `k^n`; column `i` of the weight matrix is the
/// weight of coordinate `i`.
#[derive(Clone)]
pub struct TorusRep {
    weights: IntMatrix,
    columns: Vec<Vec<i64>>,
    limits: Limits,
    hilbert: OnceLock<Result<HilbertBasis>>,
}

impl fmt::Debug for TorusRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusRep").field("rank", &self.rank()).field("weights", &self.columns).finish()
    }
}

impl PartialEq for TorusRep {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights
    }
}

impl TorusRep {
    /// Requires full row rank `r <= n`, no zero column, and entries that fit
    /// in a machine word.
    pub fn new(weights: IntMatrix) -> Result<Self> {
        let (r, n) = (weights.rows(), weights.cols());
        if r > n {
            return Err(Error::invalid(format!("rank {r} exceeds the number of weights {n}")));
        }
        if weights.rank() != r {
            return Err(Error::invalid("weight matrix does not have full row rank"));
        }
        let rows = weights.to_i64_rows()?;
        let columns: Vec<Vec<i64>> = (0..n).map(|j| rows.iter().map(|row| row[j]).collect()).collect();
        if let Some(j) = columns.iter().position(|c| c.iter().all(|&x| x == 0)) {
            return Err(Error::invalid(format!("weight {j} is zero")));
        }
        Ok(TorusRep { weights, columns, limits: Limits::default(), hilbert: OnceLock::new() })
    }

    /// From the list of weights `m_0, .., m_{n-1}`, each of length `r`.
    pub fn from_weights(weights: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_columns(weights)?)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.hilbert = OnceLock::new();
        self
    }

    pub fn rank(&self) -> usize {
        self.weights.rows()
    }

    pub fn dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    pub fn weight_columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `wt(I)` as rational points.
    pub fn weight_points(&self, support: IndexSet) -> Vec<RationalVector> {
        support.iter().map(|i| RationalVector::from_integers(&self.columns[i])).collect()
    }

    /// Hilbert basis of `L`, computed once.
    pub fn hilbert_basis(&self) -> Result<&HilbertBasis> {
        self.hilbert
            .get_or_init(|| hilbert_basis_capped(&self.weights, self.limits.hilbert_max_dim))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn origin(&self) -> RationalVector {
        RationalVector::zero(self.rank())
    }

    fn check_support(&self, support: IndexSet) -> Result<()> {
        if support.is_subset(IndexSet::full(self.dim())) {
            Ok(())
        } else {
            Err(Error::invalid(format!("index set {support} is not inside [0, {})", self.dim())))
        }
    }

    /// Distinct weights get distinct classes; convex questions only depend
    /// on the set of classes.
    fn class_masks(&self) -> Vec<u64> {
        let mut ids: Vec<&Vec<i64>> = Vec::new();
        self.columns
            .iter()
            .map(|c| {
                let id = ids.iter().position(|x| *x == c).unwrap_or_else(|| {
                    ids.push(c);
                    ids.len() - 1
                });
                1u64 << id
            })
            .collect()
    }

    /// Per-subset answers to "0 ∈ conv(wt(I))" and "0 ∈ relint conv(wt(I))".
    fn subset_table(&self) -> Result<SubsetTable> {
        let n = self.dim();
        check_subset_cap(n, self.limits.subset_max_dim)?;
        let classes = self.class_masks();
        let size = 1usize << n;
        let mut hull = vec![false; size];
        let mut relint = vec![false; size];
        let mut hull_memo: HashMap<u64, bool> = HashMap::new();
        let mut relint_memo: HashMap<u64, bool> = HashMap::new();
        let origin = self.origin();
        for bits in 1..size {
            let set = IndexSet::from_bits(bits as u64);
            // containing 0 is inherited by supersets
            hull[bits] = set.iter().any(|j| hull[bits & !(1 << j)]);
            let cmask = set.iter().fold(0, |m, i| m | classes[i]);
            if !hull[bits] {
                hull[bits] = *hull_memo.entry(cmask).or_insert_with(|| {
                    convexgeom::in_convex_hull(&self.weight_points(set), &origin).expect("dimensions agree")
                });
            }
            if hull[bits] {
                relint[bits] = *relint_memo.entry(cmask).or_insert_with(|| {
                    convexgeom::in_relative_interior(&self.weight_points(set), &origin).expect("dimensions agree")
                });
            }
        }
        Ok(SubsetTable { n, hull, relint })
    }

    /// Maximal `I` with `0 ∉ conv(wt(I))`; the nullcone is the union of the
    /// coordinate subspaces `V_I`.
    pub fn nullcone(&self) -> Result<NullconeDecomposition> {
        let table = self.subset_table()?;
        let full = IndexSet::full(self.dim());
        let mut components = Vec::new();
        for bits in 0..table.hull.len() {
            if table.hull[bits] {
                continue;
            }
            let set = IndexSet::from_bits(bits as u64);
            if full.difference(set).iter().all(|j| table.hull[bits | (1 << j)]) {
                components.push(set);
            }
        }
        // Farkas cross-check: components admit a separating functional, and no
        // one-element extension does.
        for &c in &components {
            let sep = |s: IndexSet| convexgeom::separating_functional(self.rank(), &self.weight_points(s));
            if sep(c)?.is_none() {
                return Err(Error::InvariantViolation(format!("nullcone component {c} has no separating functional")));
            }
            if let Some(j) = full.difference(c).iter().find(|&j| matches!(sep(c.with(j)), Ok(Some(_)))) {
                return Err(Error::InvariantViolation(format!("nullcone component {c} extends by {j}")));
            }
        }
        Ok(NullconeDecomposition { components })
    }

    /// Whether the orbit of a point with the given support is closed. The
    /// origin is a fixed point, hence closed.
    pub fn is_orbit_closed(&self, support: IndexSet) -> Result<bool> {
        self.check_support(support)?;
        if support.is_empty() {
            return Ok(true);
        }
        convexgeom::in_relative_interior(&self.weight_points(support), &self.origin())
    }

    /// Whether every `I` with `0 ∈ relint conv(wt(I))` has weights spanning
    /// `Q^r`; then the separating variety has no mixed components.
    pub fn sepvar_is_simple(&self) -> Result<bool> {
        let table = self.subset_table()?;
        Ok(self.non_spanning_interior_set(&table).is_none())
    }

    fn non_spanning_interior_set(&self, table: &SubsetTable) -> Option<IndexSet> {
        (1..table.relint.len()).filter(|&b| table.relint[b]).map(|b| IndexSet::from_bits(b as u64)).find(|&set| {
            let rows: Vec<Vec<BigRational>> =
                self.weight_points(set).into_iter().map(|p| p.coords().to_vec()).collect();
            convexgeom::rational_rank(rows) < self.rank()
        })
    }

    /// Partial criterion for `V_I × V_J ⊆ closure of the graph`.
    pub fn graph_closure_classify(&self, i: IndexSet, j: IndexSet) -> Result<PairClass> {
        let components = self.nullcone()?.components;
        for s in [i, j] {
            if !components.contains(&s) {
                return Err(Error::NotNullconeComponent(s));
            }
        }
        Ok(self.classify_unchecked(i, j))
    }

    fn classify_unchecked(&self, i: IndexSet, j: IndexSet) -> PairClass {
        let common = i.intersection(j);
        if common.is_empty() {
            PairClass::Contained
        } else if !restrict_kernel(&self.weights, common).is_zero() {
            PairClass::NotContained
        } else {
            PairClass::Unknown
        }
    }

    /// The separating variety as graph closure, nullcone pairs and mixed
    /// `(K, I, J)` pieces.
    pub fn sepvar_decompose(&self) -> Result<SepVarDecomposition> {
        let table = self.subset_table()?;
        let simple = self.non_spanning_interior_set(&table).is_none();
        let components = self.nullcone()?.components;
        let nullcone_pairs = components
            .iter()
            .flat_map(|&i| components.iter().map(move |&j| (i, j)))
            .map(|(i, j)| NullconePair { i, j, class: self.classify_unchecked(i, j) })
            .collect();
        let triples = if simple { Vec::new() } else { mixed_triples(&table) };
        Ok(SepVarDecomposition { includes_graph: true, simple, nullcone_pairs, triples })
    }
}

struct SubsetTable {
    n: usize,
    hull: Vec<bool>,
    relint: Vec<bool>,
}

impl SubsetTable {
    fn relint(&self, s: IndexSet) -> bool {
        self.relint[s.bits() as usize]
    }
}

/// For every nonempty `K` with `0` in the relative interior, the maximal
/// `I ⊆ K^c` keeping `0` out of `relint(K ∪ I)`, paired up; then triples
/// that are set-theoretically covered by one with a smaller `K` are dropped.
fn mixed_triples(table: &SubsetTable) -> Vec<Triple> {
    let full = IndexSet::full(table.n);
    let mut all = Vec::new();
    for kb in 1..table.relint.len() {
        let k = IndexSet::from_bits(kb as u64);
        if !table.relint(k) {
            continue;
        }
        let rest = full.difference(k);
        let admissible: Vec<IndexSet> = rest.subsets().filter(|i| !table.relint(k.union(*i))).collect();
        let maximal: Vec<IndexSet> = admissible
            .iter()
            .copied()
            .filter(|&i| !admissible.iter().any(|&j| j != i && i.is_subset(j)))
            .collect();
        for &i in &maximal {
            for &j in &maximal {
                all.push(Triple { k, i, j });
            }
        }
    }
    all.iter()
        .filter(|t| {
            !all.iter().any(|s| {
                s.k != t.k
                    && s.k.is_subset(t.k)
                    && t.k.union(t.i).is_subset(s.k.union(s.i))
                    && t.k.union(t.j).is_subset(s.k.union(s.j))
            })
        })
        .copied()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullconeDecomposition {
    pub components: Vec<IndexSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairClass {
    Contained,
    NotContained,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NullconePair {
    pub i: IndexSet,
    pub j: IndexSet,
    pub class: PairClass,
}

/// The piece `Γ_{V_K} ⊕ (V_I × V_J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub k: IndexSet,
    pub i: IndexSet,
    pub j: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SepVarDecomposition {
    pub includes_graph: bool,
    pub simple: bool,
    pub nullcone_pairs: Vec<NullconePair>,
    pub triples: Vec<Triple>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rep(weights: &[Vec<i64>]) -> TorusRep {
        TorusRep::from_weights(weights).unwrap()
    }

    fn rank1(w: &[i64]) -> TorusRep {
        rep(&w.iter().map(|&x| vec![x]).collect::<Vec<_>>())
    }

    fn s(v: &[usize]) -> IndexSet {
        IndexSet::from_indices(64, v).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(TorusRep::from_weights(&[vec![1], vec![0]]).is_err());
        assert!(TorusRep::from_weights(&[vec![1, 2], vec![2, 4]]).is_err());
        assert!(TorusRep::from_weights(&[vec![1, 0]]).is_err());
        assert_eq!(rank1(&[1, -1]).dim(), 2);
    }

    #[test]
    fn nullcone_examples() {
        assert_eq!(rank1(&[1, 1, -1, -1]).nullcone().unwrap().components, vec![s(&[0, 1]), s(&[2, 3])]);
        assert_eq!(rank1(&[1, 2]).nullcone().unwrap().components, vec![s(&[0, 1])]);
        assert_eq!(rank1(&[1, 5, -6]).nullcone().unwrap().components, vec![s(&[0, 1]), s(&[2])]);
    }

    #[test]
    fn orbit_closed_examples() {
        let r = rank1(&[1, 1, -1, -1]);
        assert!(r.is_orbit_closed(IndexSet::empty()).unwrap());
        assert!(r.is_orbit_closed(s(&[0, 2])).unwrap());
        assert!(!r.is_orbit_closed(s(&[0, 1])).unwrap());
        assert!(r.is_orbit_closed(s(&[7])).is_err());
    }

    #[test]
    fn simplicity_examples() {
        assert!(rank1(&[1, -1]).sepvar_is_simple().unwrap());
        let cross = rep(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(!cross.sepvar_is_simple().unwrap());
    }

    #[test]
    fn classify_examples() {
        let r = rank1(&[1, 1, -1, -1]);
        assert_eq!(r.graph_closure_classify(s(&[0, 1]), s(&[2, 3])).unwrap(), PairClass::Contained);
        assert_eq!(r.graph_closure_classify(s(&[2, 3]), s(&[2, 3])).unwrap(), PairClass::NotContained);
        assert_eq!(
            r.graph_closure_classify(s(&[0]), s(&[2, 3])),
            Err(Error::NotNullconeComponent(s(&[0])))
        );
        let r = rank1(&[1, -1]);
        assert_eq!(r.graph_closure_classify(s(&[0]), s(&[0])).unwrap(), PairClass::Unknown);
    }

    #[test]
    fn decompose_rank_one_pair() {
        let d = rank1(&[1, -1]).sepvar_decompose().unwrap();
        assert!(d.simple && d.includes_graph && d.triples.is_empty());
        let classes: Vec<_> = d.nullcone_pairs.iter().map(|p| (p.i, p.j, p.class)).collect();
        assert_eq!(
            classes,
            vec![
                (s(&[0]), s(&[0]), PairClass::Unknown),
                (s(&[0]), s(&[1]), PairClass::Contained),
                (s(&[1]), s(&[0]), PairClass::Contained),
                (s(&[1]), s(&[1]), PairClass::Unknown),
            ]
        );
    }

    #[test]
    fn decompose_segre_two_factors() {
        let d = rank1(&[1, 1, -1, -1]).sepvar_decompose().unwrap();
        assert!(d.simple);
        for p in &d.nullcone_pairs {
            let want = if p.i == p.j { PairClass::NotContained } else { PairClass::Contained };
            assert_eq!(p.class, want);
        }
    }

    #[test]
    fn decompose_cross_has_mixed_pieces() {
        // K = {0,1} (the horizontal axis) leaves I, J ∈ {{2}, {3}}; symmetric for
        // K = {2,3}; the full set has no admissible I.
        let cross = rep(&[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        let d = cross.sepvar_decompose().unwrap();
        assert!(!d.simple);
        let mut got: Vec<_> = d.triples.iter().map(|t| (t.k, t.i, t.j)).collect();
        got.sort();
        let mut want = Vec::new();
        for (k, others) in [(s(&[0, 1]), [s(&[2]), s(&[3])]), (s(&[2, 3]), [s(&[0]), s(&[1])])] {
            for i in others {
                for j in others {
                    want.push((k, i, j));
                }
            }
        }
        want.sort();
        assert_eq!(got, want);
        for t in &d.triples {
            assert!(cross.is_orbit_closed(t.k).unwrap());
            assert!(!cross.is_orbit_closed(t.k.union(t.i)).unwrap());
        }
    }

    fn random_rep() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=2, 2usize..=5).prop_flat_map(|(r, n)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, r), n)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn structural_invariants(w in random_rep()) {
            let Ok(r) = TorusRep::from_weights(&w) else { return Ok(()) };
            let comps = r.nullcone().unwrap().components;
            for (a, &x) in comps.iter().enumerate() {
                for &y in &comps[a + 1..] {
                    prop_assert!(!x.is_subset(y) && !y.is_subset(x));
                }
            }
            let d = r.sepvar_decompose().unwrap();
            if d.simple {
                prop_assert!(d.triples.is_empty());
            }
            for t in &d.triples {
                prop_assert!(!t.k.is_empty() && t.k.intersection(t.i).is_empty() && t.k.intersection(t.j).is_empty());
                prop_assert!(r.is_orbit_closed(t.k).unwrap());
                prop_assert!(!r.is_orbit_closed(t.k.union(t.i)).unwrap());
                prop_assert!(!r.is_orbit_closed(t.k.union(t.j)).unwrap());
            }
            for p in &d.nullcone_pairs {
                if p.i.intersection(p.j).is_empty() {
                    prop_assert_eq!(p.class, PairClass::Contained);
                }
            }
            let full = IndexSet::full(r.dim());
            if r.hilbert_basis().unwrap().elements().iter().any(|h| h.support() == full) {
                prop_assert!(r.is_orbit_closed(full).unwrap());
            }
        }
    }
}
