//! Point-pair falsifier over roots of unity.
//!
//! Coordinates are either zero or a power of a fixed primitive `M`-th root
//! of unity, recorded by its exponent class mod `M`. A monomial then
//! evaluates to zero or to a class mod `M`, which is all that is needed to
//! compare values exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::semigroup::{ExponentVector, MonomialSemigroup};
use crate::torusrep::TorusRep;

/// `None` is the coordinate 0; `Some(e)` is `ζ^e` for a primitive `M`-th root `ζ`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub modulus: u64,
    pub coords: Vec<Option<u64>>,
}

impl TorusPoint {
    pub fn new(modulus: u64, coords: Vec<Option<u64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        let coords = coords.into_iter().map(|c| c.map(|e| e % modulus)).collect();
        Ok(TorusPoint { modulus, coords })
    }

    /// `1` on `support`, `0` elsewhere.
    fn indicator(modulus: u64, n: usize, support: IndexSet) -> Self {
        TorusPoint { modulus, coords: (0..n).map(|i| support.contains(i).then_some(0)).collect() }
    }

    /// `x^γ` at this point.
    pub fn evaluate(&self, gamma: &ExponentVector) -> Option<u64> {
        let mut class: u128 = 0;
        for (g, c) in gamma.entries().iter().zip(&self.coords) {
            if *g == 0 {
                continue;
            }
            class = (class + u128::from(*g) * u128::from((*c)?)) % u128::from(self.modulus);
        }
        Some(class as u64)
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c {
                None => "0".to_string(),
                Some(e) => format!("z^{e}"),
            })
            .collect();
        write!(f, "({}) mod {}", parts.join(", "), self.modulus)
    }
}

/// Two points separated by the invariant `alpha` but by no generator of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleWitness {
    pub u: TorusPoint,
    pub v: TorusPoint,
    pub alpha: ExponentVector,
}

impl OracleWitness {
    pub fn verify(&self, rep: &TorusRep, s: &MonomialSemigroup) -> bool {
        let n = rep.dim();
        self.u.modulus > 0
            && self.u.modulus == self.v.modulus
            && self.u.coords.len() == n
            && self.v.coords.len() == n
            && self.alpha.is_invariant(rep.weights())
            && self.u.evaluate(&self.alpha) != self.v.evaluate(&self.alpha)
            && s.generators().iter().all(|g| self.u.evaluate(g) == self.v.evaluate(g))
    }
}

pub(super) fn refute(
    rep: &TorusRep,
    s: &MonomialSemigroup,
    modulus: u64,
    budget: u64,
) -> Result<Option<OracleWitness>> {
    if modulus < 2 {
        return Err(Error::invalid("oracle modulus must be at least 2"));
    }
    s.check_invariant(rep.weights())?;
    let n = rep.dim();
    let hb = rep.hilbert_basis()?.elements().to_vec();
    let mut supports: Vec<IndexSet> = Vec::new();
    for h in &hb {
        if !supports.contains(&h.support()) {
            supports.push(h.support());
        }
    }
    let mut examined = 0u64;
    let test = |u: &TorusPoint, v: &TorusPoint| -> Option<OracleWitness> {
        if s.generators().iter().any(|g| u.evaluate(g) != v.evaluate(g)) {
            return None;
        }
        hb.iter()
            .find(|h| u.evaluate(h) != v.evaluate(h))
            .map(|h| OracleWitness { u: u.clone(), v: v.clone(), alpha: h.clone() })
    };

    // 0/1 patterns: switch off one coordinate of an invariant's support
    for &k in &supports {
        for i in k.iter() {
            if examined >= budget {
                return Ok(None);
            }
            examined += 1;
            let u = TorusPoint::indicator(modulus, n, k);
            let v = TorusPoint::indicator(modulus, n, k.without(i));
            if let Some(w) = test(&u, &v) {
                return Ok(Some(w));
            }
        }
    }
    // unit points differing by a root of unity in one coordinate
    let mut unit_supports = supports.clone();
    if !unit_supports.contains(&IndexSet::full(n)) {
        unit_supports.push(IndexSet::full(n));
    }
    for &k in &unit_supports {
        let u = TorusPoint::indicator(modulus, n, k);
        for i in k.iter() {
            for c in 1..modulus {
                if examined >= budget {
                    return Ok(None);
                }
                examined += 1;
                let mut v = u.clone();
                v.coords[i] = Some(c);
                if let Some(w) = test(&u, &v) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}
