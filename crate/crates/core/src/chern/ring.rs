use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::CommRing;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

/// A primitive bundle slot `E_k` of fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub name: String,
    pub rank: u32,
}

/// The ring `Z[c_i(E_k)]` of Chern-class polynomials for a list of primitive
/// bundles. Variable `c_i(E_k)` has cohomological degree `i`; only
/// `1 <= i <= rank(E_k)` exist.
///
/// The same index layout is reused for Chern roots: root `j` of slot `k` is
/// variable `offset(k) + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleRing {
    slots: Vec<Slot>,
    offsets: Vec<usize>,
    weights: Vec<u32>,
    working_degree: Option<u32>,
}

impl BundleRing {
    pub fn new<S: AsRef<str>>(slots: &[(S, u32)]) -> Result<Arc<Self>> {
        Self::with_working_degree(slots, None)
    }

    /// Like [`BundleRing::new`], additionally rejecting series and Schur
    /// requests above `bound`.
    pub fn with_working_degree<S: AsRef<str>>(slots: &[(S, u32)], bound: Option<u32>) -> Result<Arc<Self>> {
        let mut out = Vec::with_capacity(slots.len());
        for (name, rank) in slots {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::Invalid("empty slot name".into()));
            }
            if out.iter().any(|s: &Slot| s.name == name) {
                return Err(Error::DuplicateSlot(name.to_string()));
            }
            out.push(Slot { name: name.to_string(), rank: *rank });
        }
        let mut offsets = Vec::with_capacity(out.len());
        let mut weights = Vec::new();
        for s in &out {
            offsets.push(weights.len());
            weights.extend(1..=s.rank);
        }
        Ok(Arc::new(Self { slots: out, offsets, weights, working_degree: bound }))
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn slot(&self, k: usize) -> &Slot {
        &self.slots[k]
    }

    pub fn slot_index(&self, name: &str) -> Result<usize> {
        self.slots.iter().position(|s| s.name == name).ok_or_else(|| Error::UnknownSlot(name.to_string()))
    }

    /// Number of Chern variables (equivalently, of Chern roots).
    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Degree weight of each Chern variable.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    /// Variable index of `c_i(E_k)`, `1 <= i <= rank`.
    pub fn chern_var(&self, k: usize, i: u32) -> usize {
        debug_assert!(i >= 1 && i <= self.slots[k].rank);
        self.offsets[k] + i as usize - 1
    }

    pub fn working_degree(&self) -> Option<u32> {
        self.working_degree
    }

    pub fn check_degree(&self, requested: u32) -> Result<()> {
        match self.working_degree {
            Some(bound) if requested > bound => Err(Error::WorkingDegreeExceeded { requested, bound }),
            _ => Ok(()),
        }
    }

    /// Exponent segment of slot `k` inside a full monomial.
    pub fn segment<'a>(&self, k: usize, exps: &'a [u32]) -> &'a [u32] {
        let start = self.offsets[k];
        &exps[start..start + self.slots[k].rank as usize]
    }
}

pub(crate) fn same_ring(a: &Arc<BundleRing>, b: &Arc<BundleRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An integer polynomial in the Chern classes of a [`BundleRing`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPolynomial {
    ring: Arc<BundleRing>,
    poly: Poly,
}

impl GradedPolynomial {
    pub fn zero(ring: &Arc<BundleRing>) -> Self {
        Self { ring: ring.clone(), poly: Poly::zero(ring.nvars()) }
    }

    pub fn one(ring: &Arc<BundleRing>) -> Self {
        Self::constant(ring, BigInt::one())
    }

    pub fn constant(ring: &Arc<BundleRing>, c: BigInt) -> Self {
        Self { ring: ring.clone(), poly: Poly::constant(ring.nvars(), c) }
    }

    /// `c_i` of a primitive slot; `c_0 = 1`.
    pub fn chern(ring: &Arc<BundleRing>, slot: usize, i: u32) -> Result<Self> {
        let s = ring.slot(slot);
        if i > s.rank {
            return Err(Error::DegreeOverflow { bundle: s.name.clone(), degree: i, rank: s.rank as u64 });
        }
        if i == 0 {
            return Ok(Self::one(ring));
        }
        Ok(Self { ring: ring.clone(), poly: Poly::var(ring.nvars(), ring.chern_var(slot, i)) })
    }

    /// Wraps a raw polynomial whose variables follow the ring's layout.
    pub fn from_poly(ring: &Arc<BundleRing>, poly: Poly) -> Self {
        assert_eq!(poly.nvars(), ring.nvars(), "polynomial does not match ring layout");
        Self { ring: ring.clone(), poly }
    }

    pub fn ring(&self) -> &Arc<BundleRing> {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Top degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.poly.degree(self.ring.weights())
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.poly.homogeneous_degree(self.ring.weights())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self { ring: self.ring.clone(), poly: self.poly.homogeneous_part(d, self.ring.weights()) }
    }

    pub fn truncate(&self, max: u32) -> Self {
        Self { ring: self.ring.clone(), poly: self.poly.truncate(max, self.ring.weights()) }
    }

    pub fn mul_truncated(&self, other: &Self, max: u32) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        Self { ring: self.ring.clone(), poly: self.poly.mul_truncated(&other.poly, max, self.ring.weights()) }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { ring: self.ring.clone(), poly: self.poly.scale(c) }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self { ring: self.ring.clone(), poly: self.poly.pow(k) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.add_ref(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul_ref(other))
    }

    /// Terms in display order: exponent vectors compared from the last
    /// variable backwards, larger first.
    pub fn display_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut terms: Vec<_> = self.poly.terms().iter().collect();
        terms.sort_by(|a, b| display_order(b.0, a.0));
        terms
    }

    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, exps: &[u32]) -> fmt::Result {
        let mut first = true;
        for (k, slot) in self.ring.slots().iter().enumerate() {
            for (j, &e) in self.ring.segment(k, exps).iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "c{}({})", j + 1, slot.name)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

fn display_order(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl fmt::Display for GradedPolynomial {
    /// Writes the polynomial in the expression syntax accepted by the CLI,
    /// e.g. `c2(F) - c1(E)*c1(F) + c1(E)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (exps, c)) in terms.into_iter().enumerate() {
            let constant = exps.iter().all(|&e| e == 0);
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if constant {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            self.write_monomial(f, exps)?;
        }
        Ok(())
    }
}

impl CommRing for GradedPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ring)
    }
    fn is_zero_elem(&self) -> bool {
        self.poly.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        Self { ring: self.ring.clone(), poly: self.poly.add_ref(&other.poly) }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        Self { ring: self.ring.clone(), poly: self.poly.mul_ref(&other.poly) }
    }
    fn neg_ref(&self) -> Self {
        Self { ring: self.ring.clone(), poly: self.poly.neg_ref() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_layout() {
        let r = BundleRing::new(&[("E", 2), ("F", 3)]).unwrap();
        assert_eq!(r.nvars(), 5);
        assert_eq!(r.weights(), &[1, 2, 1, 2, 3]);
        assert_eq!(r.chern_var(1, 2), 3);
        assert_eq!(r.slot_index("F").unwrap(), 1);
        assert!(matches!(r.slot_index("G"), Err(Error::UnknownSlot(_))));
        assert!(matches!(BundleRing::new(&[("E", 1), ("E", 2)]), Err(Error::DuplicateSlot(_))));
    }

    #[test]
    fn chern_variables_respect_rank() {
        let r = BundleRing::new(&[("E", 2)]).unwrap();
        assert!(GradedPolynomial::chern(&r, 0, 0).unwrap() == GradedPolynomial::one(&r));
        assert_eq!(GradedPolynomial::chern(&r, 0, 2).unwrap().homogeneous_degree(), Some(2));
        assert!(matches!(GradedPolynomial::chern(&r, 0, 3), Err(Error::DegreeOverflow { degree: 3, rank: 2, .. })));
    }

    #[test]
    fn display_order_and_syntax() {
        let r = BundleRing::new(&[("E", 1), ("F", 2)]).unwrap();
        let c = |k, i| GradedPolynomial::chern(&r, k, i).unwrap();
        let p = c(1, 2).sub_ref(&c(0, 1).mul_ref(&c(1, 1))).add_ref(&c(0, 1).pow(2));
        assert_eq!(p.to_string(), "c2(F) - c1(E)*c1(F) + c1(E)^2");
        let q = c(1, 1).sub_ref(&c(0, 1));
        assert_eq!(q.to_string(), "c1(F) - c1(E)");
        assert_eq!(GradedPolynomial::zero(&r).to_string(), "0");
        assert_eq!(c(0, 1).scale(&BigInt::from(-3)).add_ref(&GradedPolynomial::constant(&r, BigInt::from(2))).to_string(), "-3*c1(E) + 2");
    }

    #[test]
    fn working_degree_is_enforced() {
        let r = BundleRing::with_working_degree(&[("E", 2)], Some(3)).unwrap();
        assert!(r.check_degree(3).is_ok());
        assert_eq!(r.check_degree(4), Err(Error::WorkingDegreeExceeded { requested: 4, bound: 3 }));
    }
}
