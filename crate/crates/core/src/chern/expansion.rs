//! Expansion of Chern-class polynomials in products of Schur functions of the
//! primitive bundles (or their duals), and the stable expansion in Schur
//! functions of a virtual difference.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::bundle::{super_schur, FormalBundle};
use super::ring::{BundleRing, GradedPolynomial};
use crate::algebra::CommRing;
use crate::error::{Error, Result};
use crate::par;
use crate::partition::Partition;
use crate::symmetric::SchurVector;

/// Whether a slot is expanded in `S_I(E)` or in `S_I(E*)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variance {
    #[default]
    Plain,
    Dual,
}

impl Variance {
    pub fn is_dual(self) -> bool {
        self == Variance::Dual
    }
}

/// One partition per slot, ordered by total weight and then
/// lexicographically slot by slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchurKey(pub Vec<Partition>);

impl SchurKey {
    pub fn weight(&self) -> u32 {
        self.0.iter().map(Partition::weight).sum()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.0
    }
}

impl Ord for SchurKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SchurKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `sum alpha_{I_1..I_p} S_{I_1}(E_1^v) ... S_{I_p}(E_p^v)`, each slot taken
/// plain or dual according to its [`Variance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSchurExpansion {
    ring: Arc<BundleRing>,
    variance: Vec<Variance>,
    terms: BTreeMap<SchurKey, BigInt>,
}

impl ProductSchurExpansion {
    pub fn new(ring: &Arc<BundleRing>, variance: Vec<Variance>) -> Result<Self> {
        if variance.len() != ring.slots().len() {
            return Err(Error::Invalid(format!("{} variance flags for {} slots", variance.len(), ring.slots().len())));
        }
        Ok(Self { ring: ring.clone(), variance, terms: BTreeMap::new() })
    }

    pub fn ring(&self) -> &Arc<BundleRing> {
        &self.ring
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn terms(&self) -> &BTreeMap<SchurKey, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Partition]) -> BigInt {
        self.terms.get(&SchurKey(key.to_vec())).cloned().unwrap_or_default()
    }

    /// Largest total weight among the terms, zero if empty.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(SchurKey::weight).max().unwrap_or(0)
    }

    /// Adds `c` to the coefficient of `key`, rejecting keys too long for their slot.
    pub fn add_term(&mut self, key: Vec<Partition>, c: BigInt) -> Result<()> {
        if key.len() != self.ring.slots().len() {
            return Err(Error::Invalid("key length does not match slot count".into()));
        }
        for (p, s) in key.iter().zip(self.ring.slots()) {
            if p.len() > s.rank as usize {
                return Err(Error::LengthOverflow { partition: p.clone(), size: s.rank as usize });
            }
        }
        self.add_unchecked(SchurKey(key), c);
        Ok(())
    }

    fn add_unchecked(&mut self, key: SchurKey, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (k, c) in other.terms {
            self.add_unchecked(k, c);
        }
        self
    }

    /// Re-evaluates the expansion as a Chern polynomial, computing every
    /// `S_I(E)` or `S_I(E*)` by the Jacobi-Trudi determinant of Segre classes.
    pub fn to_polynomial(&self) -> Result<GradedPolynomial> {
        let zero = FormalBundle::zero(&self.ring);
        let factors: BTreeSet<(usize, Partition)> =
            self.terms.keys().flat_map(|k| k.0.iter().cloned().enumerate()).filter(|(_, p)| !p.is_empty()).collect();
        let factors: Vec<(usize, Partition)> = factors.into_iter().collect();
        let values = par::try_map(&factors, |(slot, p)| {
            let b = FormalBundle::slot_at(&self.ring, *slot);
            let b = if self.variance[*slot].is_dual() { b.dual() } else { b };
            super_schur(p, &b, &zero)
        })?;
        let table: HashMap<(usize, Partition), GradedPolynomial> = factors.into_iter().zip(values).collect();
        let terms: Vec<(&SchurKey, &BigInt)> = self.terms.iter().collect();
        let one = GradedPolynomial::one(&self.ring);
        Ok(par::map_reduce(
            &terms,
            || GradedPolynomial::zero(&self.ring),
            |(key, c)| {
                key.0
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_empty())
                    .fold(one.clone(), |acc, (slot, p)| acc.mul_ref(&table[&(slot, p.clone())]))
                    .scale(c)
            },
            |a, b| a.add_ref(&b),
        ))
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for ProductSchurExpansion {
    /// Writes e.g. `S[(1)](E~) + 2*S[(1)](E~)*S[(1,1)](F)`, a form the CLI parser reads back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (key, c)) in self.terms.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = key
                .0
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_empty())
                .map(|(k, p)| format!("S[{p}]({}{})", self.ring.slot(k).name, if self.variance[k].is_dual() { "~" } else { "" }))
                .collect();
            let abs = c.abs();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == BigInt::from(1) {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Expands `p` uniquely in the basis of products `S_{I_1}(E_1^v)...S_{I_p}(E_p^v)`
/// with `l(I_k) <= rank(E_k)`.
///
/// Each Chern class is a column Schur function, `c_i(E) = S_{(1^i)}(E)` and
/// `c_i(E) = (-1)^i S_{(1^i)}(E*)`, so every monomial expands by LR
/// multiplication truncated to the slot rank.
pub fn expand_product_schur(p: &GradedPolynomial, variance: &[Variance]) -> Result<ProductSchurExpansion> {
    let ring = p.ring().clone();
    let empty = ProductSchurExpansion::new(&ring, variance.to_vec())?;
    let nslots = ring.slots().len();

    // distinct per-slot exponent segments, expanded once each
    let mut segments: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for exps in p.poly().terms().keys() {
        for k in 0..nslots {
            segments.insert((k, ring.segment(k, exps).to_vec()));
        }
    }
    let segments: Vec<(usize, Vec<u32>)> = segments.into_iter().collect();
    let expanded = par::map(&segments, |(k, seg)| column_product(seg, ring.slot(*k).rank, variance[*k]));
    let table: HashMap<(usize, Vec<u32>), SchurVector> = segments.into_iter().zip(expanded).collect();

    let terms: Vec<(&Vec<u32>, &BigInt)> = p.poly().terms().iter().collect();
    Ok(par::map_reduce(
        &terms,
        || empty.clone(),
        |(exps, c)| {
            let mut partial: Vec<(Vec<Partition>, BigInt)> = vec![(Vec::new(), (*c).clone())];
            for k in 0..nslots {
                let factor = &table[&(k, ring.segment(k, exps).to_vec())];
                partial = partial
                    .into_iter()
                    .flat_map(|(key, coeff)| {
                        factor.terms().iter().map(move |(i, v)| {
                            let mut key = key.clone();
                            key.push(i.clone());
                            (key, &coeff * v)
                        })
                    })
                    .collect();
            }
            let mut out = empty.clone();
            for (key, coeff) in partial {
                out.add_unchecked(SchurKey(key), coeff);
            }
            out
        },
        ProductSchurExpansion::merge,
    ))
}

// prod_i c_i^{e_i} for one slot of rank `rank`, in the Schur basis of E or E*.
fn column_product(segment: &[u32], rank: u32, variance: Variance) -> SchurVector {
    let mut acc = SchurVector::one(Some(rank));
    let mut degree = 0u32;
    for (idx, &e) in segment.iter().enumerate() {
        let i = idx as u32 + 1;
        let column = SchurVector::basis(Partition::column(i), Some(rank));
        for _ in 0..e {
            acc = acc.multiply(&column).expect("same rank");
        }
        degree += i * e;
    }
    if variance.is_dual() && degree % 2 == 1 {
        acc = acc.neg_ref();
    }
    acc
}

/// `sum alpha_I S_I(E* - F*)` for designated slots `E`, `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableExpansion {
    pub e_slot: String,
    pub f_slot: String,
    pub degree: u32,
    pub terms: BTreeMap<Partition, BigInt>,
}

impl fmt::Display for StableExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if abs != BigInt::from(1) {
                write!(f, "{abs}*")?;
            }
            write!(f, "S[{i}]({}~ - {}~)", self.e_slot, self.f_slot)?;
        }
        Ok(())
    }
}

/// Stable expansion of a homogeneous `p` in Schur functions of `E* - F*`.
///
/// Expands `p = sum beta_{IJ} S_I(E*) S_J(F)`, reads off `alpha_I = beta_{I,()}`
/// and then checks that `sum alpha_I S_I(E* - F*)` reproduces `p` exactly.
/// Other slots, if any, must not occur in `p`.
pub fn stable_expand(p: &GradedPolynomial, e_slot: &str, f_slot: &str) -> Result<StableExpansion> {
    let ring = p.ring().clone();
    let e_idx = ring.slot_index(e_slot)?;
    let f_idx = ring.slot_index(f_slot)?;
    if e_idx == f_idx {
        return Err(Error::Invalid("stable expansion needs two distinct slots".into()));
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let degree = p.homogeneous_degree().unwrap_or(0);
    let mut variance = vec![Variance::Plain; ring.slots().len()];
    variance[e_idx] = Variance::Dual;
    let beta = expand_product_schur(p, &variance)?;

    let mut terms = BTreeMap::new();
    for (key, c) in beta.terms() {
        let others_empty = key.0.iter().enumerate().all(|(k, part)| k == e_idx || part.is_empty());
        if others_empty {
            terms.insert(key.0[e_idx].clone(), c.clone());
        }
    }

    let e_dual = FormalBundle::slot_at(&ring, e_idx).dual();
    let f_dual = FormalBundle::slot_at(&ring, f_idx).dual();
    let entries: Vec<(&Partition, &BigInt)> = terms.iter().collect();
    let parts = par::try_map(&entries, |(i, c)| Ok::<_, Error>(super_schur(i, &e_dual, &f_dual)?.scale(c)))?;
    let rebuilt = parts.into_iter().fold(GradedPolynomial::zero(&ring), |acc, t| acc.add_ref(&t));
    let residual = p.sub_ref(&rebuilt);
    if !residual.is_zero() {
        return Err(Error::NotSupersymmetric {
            e_slot: e_slot.to_string(),
            f_slot: f_slot.to_string(),
            detail: format!("reconstruction differs by {residual}"),
        });
    }
    Ok(StableExpansion { e_slot: e_slot.to_string(), f_slot: f_slot.to_string(), degree, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn ring() -> Arc<BundleRing> {
        BundleRing::new(&[("E", 2), ("F", 2)]).unwrap()
    }

    fn c(r: &Arc<BundleRing>, k: usize, i: u32) -> GradedPolynomial {
        GradedPolynomial::chern(r, k, i).unwrap()
    }

    fn key(parts: &[Partition]) -> Vec<Partition> {
        parts.to_vec()
    }

    #[test]
    fn riemann_hurwitz_in_mixed_variance() {
        let r = ring();
        let p = c(&r, 1, 1).sub_ref(&c(&r, 0, 1));
        let exp = expand_product_schur(&p, &[Variance::Dual, Variance::Plain]).unwrap();
        let expected: Vec<(Vec<Partition>, BigInt)> =
            vec![(key(&[part![], part![1]]), BigInt::from(1)), (key(&[part![1], part![]]), BigInt::from(1))];
        let got: Vec<(Vec<Partition>, BigInt)> = exp.terms().iter().map(|(k, c)| (k.0.clone(), c.clone())).collect();
        assert_eq!(got, expected);
        assert_eq!(exp.to_string(), "S[(1)](F) + S[(1)](E~)");
        assert_eq!(exp.to_polynomial().unwrap(), p);
    }

    #[test]
    fn constants_and_columns() {
        let r = ring();
        let exp = expand_product_schur(&GradedPolynomial::one(&r), &[Variance::Plain, Variance::Plain]).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp.coeff(&[part![], part![]]), BigInt::from(1));
        let exp = expand_product_schur(&c(&r, 0, 2), &[Variance::Plain, Variance::Plain]).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp.coeff(&[part![1, 1], part![]]), BigInt::from(1));
        assert!(expand_product_schur(&GradedPolynomial::zero(&r), &[Variance::Plain, Variance::Plain]).unwrap().is_empty());
        assert!(expand_product_schur(&c(&r, 0, 1), &[Variance::Plain]).is_err());
    }

    #[test]
    fn c1_squared_in_rank_two() {
        // c1^2 = S_(2) + S_(1,1)
        let r = ring();
        let exp = expand_product_schur(&c(&r, 0, 1).pow(2), &[Variance::Plain, Variance::Plain]).unwrap();
        assert_eq!(exp.coeff(&[part![2], part![]]), BigInt::from(1));
        assert_eq!(exp.coeff(&[part![1, 1], part![]]), BigInt::from(1));
        assert_eq!(exp.len(), 2);
    }

    #[test]
    fn stable_examples() {
        let r = ring();
        let p = c(&r, 1, 1).sub_ref(&c(&r, 0, 1));
        let st = stable_expand(&p, "E", "F").unwrap();
        assert_eq!(st.terms.into_iter().collect::<Vec<_>>(), vec![(part![1], BigInt::from(1))]);

        let bad = c(&r, 1, 1).add_ref(&c(&r, 0, 1));
        assert!(matches!(stable_expand(&bad, "E", "F"), Err(Error::NotSupersymmetric { .. })));

        let mixed = c(&r, 0, 1).add_ref(&GradedPolynomial::one(&r));
        assert_eq!(stable_expand(&mixed, "E", "F"), Err(Error::NotHomogeneous));
    }

    #[test]
    fn stable_display() {
        let st = StableExpansion {
            e_slot: "E".into(),
            f_slot: "F".into(),
            degree: 2,
            terms: [(part![2], BigInt::from(1)), (part![1, 1], BigInt::from(-3))].into_iter().collect(),
        };
        assert_eq!(st.to_string(), "-3*S[(1,1)](E~ - F~) + S[(2)](E~ - F~)");
    }
}
