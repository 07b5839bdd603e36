//! Cohomology of products of Grassmannians in the Schubert basis.
//!
//! A factor with box `rows x cols` is the Grassmannian `G_rows(C^{rows+cols})`
//! whose tautological quotient bundle `Q` has rank `cols`. Schubert classes
//! `sigma_I` are indexed by partitions fitting the box, and `c_i(Q) = sigma_(i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{determinant, CommRing};
use crate::chern::{GradedPolynomial, SchurKey};
use crate::error::{Error, Result};
use crate::par;
use crate::partition::Partition;
use crate::symmetric::{lr_bounded, ShapeBound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxShape {
    pub rows: u32,
    pub cols: u32,
}

impl BoxShape {
    pub fn full(&self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }

    pub fn dimension(&self) -> u32 {
        self.rows * self.cols
    }

    fn check(&self, p: &Partition) -> Result<()> {
        if p.fits_box(self.rows, self.cols) {
            Ok(())
        } else {
            Err(Error::BoxOverflow { partition: p.clone(), rows: self.rows, cols: self.cols })
        }
    }
}

/// `prod_i G_{rows_i}(C^{rows_i + cols_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannRing {
    factors: Vec<BoxShape>,
}

impl GrassmannRing {
    pub fn new(boxes: &[(u32, u32)]) -> Arc<Self> {
        Arc::new(Self { factors: boxes.iter().map(|&(rows, cols)| BoxShape { rows, cols }).collect() })
    }

    pub fn factors(&self) -> &[BoxShape] {
        &self.factors
    }

    pub fn dimension(&self) -> u32 {
        self.factors.iter().map(BoxShape::dimension).sum()
    }

    fn top_key(&self) -> SchurKey {
        SchurKey(self.factors.iter().map(BoxShape::full).collect())
    }
}

/// Integer combination of Schubert classes `sigma_{I_1} x ... x sigma_{I_p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannClass {
    ring: Arc<GrassmannRing>,
    terms: BTreeMap<SchurKey, BigInt>,
}

impl GrassmannClass {
    pub fn zero(ring: &Arc<GrassmannRing>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<GrassmannRing>) -> Self {
        let key = SchurKey(vec![Partition::empty(); ring.factors.len()]);
        Self { ring: ring.clone(), terms: [(key, BigInt::one())].into_iter().collect() }
    }

    /// The basis class for a tuple of partitions, one per factor.
    pub fn basis(ring: &Arc<GrassmannRing>, key: Vec<Partition>) -> Result<Self> {
        if key.len() != ring.factors.len() {
            return Err(Error::Invalid(format!("{} partitions for {} factors", key.len(), ring.factors.len())));
        }
        for (p, b) in key.iter().zip(&ring.factors) {
            b.check(p)?;
        }
        Ok(Self { ring: ring.clone(), terms: [(SchurKey(key), BigInt::one())].into_iter().collect() })
    }

    /// `sigma_I` pulled back from factor `factor`.
    pub fn pullback(ring: &Arc<GrassmannRing>, factor: usize, p: Partition) -> Result<Self> {
        let mut key = vec![Partition::empty(); ring.factors.len()];
        key[factor] = p;
        Self::basis(ring, key)
    }

    /// `c_i(Q)` on factor `factor`: `sigma_(i)`, zero above the quotient rank.
    pub fn quotient_chern(ring: &Arc<GrassmannRing>, factor: usize, i: u32) -> Self {
        if i > ring.factors[factor].cols {
            return Self::zero(ring);
        }
        Self::pullback(ring, factor, Partition::row(i)).expect("single row fits")
    }

    pub fn ring(&self) -> &Arc<GrassmannRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<SchurKey, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, key: &[Partition]) -> BigInt {
        self.terms.get(&SchurKey(key.to_vec())).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
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

    /// Part of cohomological degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.weight() == d).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, v) in &self.terms {
            out.add_unchecked(k.clone(), v * c);
        }
        out
    }
}

/// Prints `sigma[(2,1)] + 2*sigma[(3)]`, with factors joined by `;`.
impl fmt::Display for GrassmannClass {
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
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let parts: Vec<String> = key.0.iter().map(Partition::to_string).collect();
            write!(f, "sigma[{}]", parts.join(";"))?;
        }
        Ok(())
    }
}

fn factor_product(a: &Partition, b: &Partition, shape: BoxShape) -> Arc<BTreeMap<Partition, u64>> {
    lr_bounded(a, b, ShapeBound::boxed(shape.rows, shape.cols))
}

/// Product in the cohomology ring: factorwise LR coefficients, dropping every
/// shape that leaves its box.
pub fn schubert_multiply(a: &GrassmannClass, b: &GrassmannClass) -> Result<GrassmannClass> {
    if !(Arc::ptr_eq(&a.ring, &b.ring) || a.ring == b.ring) {
        return Err(Error::RingMismatch);
    }
    let ring = &a.ring;
    let mut out = GrassmannClass::zero(ring);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let mut partial: Vec<(Vec<Partition>, BigInt)> = vec![(Vec::with_capacity(ring.factors.len()), ca * cb)];
            for (f, shape) in ring.factors.iter().enumerate() {
                let table = factor_product(&ka.0[f], &kb.0[f], *shape);
                if table.is_empty() {
                    partial.clear();
                    break;
                }
                partial = partial
                    .into_iter()
                    .flat_map(|(key, c)| {
                        table.iter().map(move |(k, n)| {
                            let mut key = key.clone();
                            key.push(k.clone());
                            (key, &c * BigInt::from(*n))
                        })
                    })
                    .collect();
            }
            for (key, c) in partial {
                out.add_unchecked(SchurKey(key), c);
            }
        }
    }
    Ok(out)
}

/// Degree map: the coefficient of the point class (all boxes full).
pub fn integrate(a: &GrassmannClass) -> BigInt {
    a.terms.get(&a.ring.top_key()).cloned().unwrap_or_default()
}

impl CommRing for GrassmannClass {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ring)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "ring mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_unchecked(k.clone(), c.clone());
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        schubert_multiply(self, other).expect("ring mismatch")
    }
    fn neg_ref(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

/// Giambelli: `det(c_{i_p - p + q}(Q))` evaluated inside the ring of factor `factor`.
pub fn giambelli(i: &Partition, ring: &Arc<GrassmannRing>, factor: usize) -> Result<GrassmannClass> {
    let shape = *ring.factors.get(factor).ok_or_else(|| Error::Invalid(format!("no factor {factor}")))?;
    shape.check(i)?;
    let l = i.len();
    let one = GrassmannClass::one(ring);
    let matrix: Vec<Vec<GrassmannClass>> = (0..l)
        .map(|p| {
            (0..l)
                .map(|q| {
                    let k = i.part(p) as i64 - p as i64 + q as i64;
                    if k < 0 { GrassmannClass::zero(ring) } else { GrassmannClass::quotient_chern(ring, factor, k as u32) }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix, &one))
}

/// `T(Q_1, ..., Q_p)`: substitutes `c_i(E_k) -> c_i(Q_k)` in a Chern polynomial.
/// Factor `k` must have `cols` equal to the rank of slot `k`.
pub fn evaluate_on_quotients(t: &GradedPolynomial, ring: &Arc<GrassmannRing>) -> Result<GrassmannClass> {
    let br = t.ring();
    if br.slots().len() != ring.factors.len() {
        return Err(Error::RingMismatch);
    }
    for (s, b) in br.slots().iter().zip(&ring.factors) {
        if s.rank != b.cols {
            return Err(Error::Invalid(format!("slot {} has rank {} but its box has {} columns", s.name, s.rank, b.cols)));
        }
    }
    let mut values = vec![GrassmannClass::zero(ring); br.nvars()];
    for (k, s) in br.slots().iter().enumerate() {
        for i in 1..=s.rank {
            values[br.chern_var(k, i)] = GrassmannClass::quotient_chern(ring, k, i);
        }
    }
    Ok(t.poly().substitute(&values, &GrassmannClass::one(ring)))
}

/// A Chern polynomial pulled back to a product of Grassmannians, ready to be
/// paired against complementary Schubert classes.
pub struct CoefficientExtractor {
    ring: Arc<GrassmannRing>,
    class: GrassmannClass,
}

impl CoefficientExtractor {
    /// Uses boxes `heights[k] x rank(E_k)`. Every height must be at least the
    /// degree of `t`, so that `S_I(Q_k) = sigma_{conj(I)}` is never truncated.
    pub fn new(t: &GradedPolynomial, heights: &[u32]) -> Result<Self> {
        let br = t.ring();
        if heights.len() != br.slots().len() {
            return Err(Error::Invalid(format!("{} box heights for {} slots", heights.len(), br.slots().len())));
        }
        let degree = t.degree().unwrap_or(0);
        if let Some(&rows) = heights.iter().find(|&&h| h < degree) {
            return Err(Error::BoxTooSmall { rows, degree });
        }
        let boxes: Vec<(u32, u32)> = heights.iter().zip(br.slots()).map(|(&h, s)| (h, s.rank)).collect();
        let ring = GrassmannRing::new(&boxes);
        let class = evaluate_on_quotients(t, &ring)?;
        Ok(Self { ring, class })
    }

    pub fn ring(&self) -> &Arc<GrassmannRing> {
        &self.ring
    }

    /// `alpha_{I_1..I_p} = int T(Q) . (sigma_{K_1} x ... x sigma_{K_p})` with
    /// `sigma_{K_k}` complementary to `sigma_{conj(I_k)}`.
    pub fn coefficient(&self, key: &[Partition]) -> Result<BigInt> {
        if key.len() != self.ring.factors.len() {
            return Err(Error::Invalid("key length does not match slot count".into()));
        }
        let mut complement = Vec::with_capacity(key.len());
        for (p, b) in key.iter().zip(&self.ring.factors) {
            complement.push(p.conjugate().box_complement(b.rows, b.cols)?);
        }
        let dual_class = GrassmannClass::basis(&self.ring, complement)?;
        let target = self.ring.dimension() - dual_class.terms.keys().next().map_or(0, SchurKey::weight);
        let relevant = self.class.homogeneous_part(target);
        Ok(integrate(&schubert_multiply(&relevant, &dual_class)?))
    }

    /// Coefficients for many keys, in input order.
    pub fn coefficients(&self, keys: &[Vec<Partition>]) -> Result<Vec<BigInt>> {
        par::try_map(keys, |k| self.coefficient(k))
    }
}

/// Single-coefficient convenience wrapper around [`CoefficientExtractor`].
pub fn extract_coefficient(t: &GradedPolynomial, key: &[Partition], heights: &[u32]) -> Result<BigInt> {
    CoefficientExtractor::new(t, heights)?.coefficient(key)
}

/// `int sigma_I sigma_J` for all `I` of weight `d` against all `J` of the
/// complementary weight in one `rows x cols` box.
pub fn pairing_table(rows: u32, cols: u32, d: u32) -> (Vec<Partition>, Vec<Partition>, Vec<Vec<BigInt>>) {
    let ring = GrassmannRing::new(&[(rows, cols)]);
    let all = Partition::all_in_box(rows, cols);
    let left: Vec<Partition> = all.iter().filter(|p| p.weight() == d).cloned().collect();
    let right: Vec<Partition> = all.iter().filter(|p| p.weight() + d == rows * cols).cloned().collect();
    let matrix = par::map(&left, |i| {
        let a = GrassmannClass::pullback(&ring, 0, i.clone()).expect("in box");
        right
            .iter()
            .map(|j| {
                let b = GrassmannClass::pullback(&ring, 0, j.clone()).expect("in box");
                integrate(&schubert_multiply(&a, &b).expect("same ring"))
            })
            .collect()
    });
    (left, right, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::BundleRing;
    use crate::part;

    fn sigma(ring: &Arc<GrassmannRing>, p: Partition) -> GrassmannClass {
        GrassmannClass::pullback(ring, 0, p).unwrap()
    }

    #[test]
    fn projective_plane() {
        // G_1(C^3): box 1x2
        let r = GrassmannRing::new(&[(1, 2)]);
        let h = sigma(&r, part![1]);
        assert_eq!(schubert_multiply(&h, &h).unwrap(), sigma(&r, part![2]));
        assert!(schubert_multiply(&sigma(&r, part![2]), &h).unwrap().is_zero());
        assert_eq!(schubert_multiply(&GrassmannClass::one(&r), &h).unwrap(), h);
        assert_eq!(integrate(&schubert_multiply(&h, &h).unwrap()), BigInt::from(1));
    }

    #[test]
    fn integration_examples() {
        let r = GrassmannRing::new(&[(2, 3)]);
        let i = part![2, 1];
        let j = i.box_complement(2, 3).unwrap();
        assert_eq!(integrate(&schubert_multiply(&sigma(&r, i), &sigma(&r, j)).unwrap()), BigInt::from(1));
        let r22 = GrassmannRing::new(&[(2, 2)]);
        // (2) is self-complementary in the 2x2 box; (1,1) is the non-complementary partner
        assert_eq!(part![2].box_complement(2, 2).unwrap(), part![2]);
        assert_eq!(integrate(&schubert_multiply(&sigma(&r22, part![2]), &sigma(&r22, part![2])).unwrap()), BigInt::from(1));
        assert_eq!(integrate(&schubert_multiply(&sigma(&r22, part![2]), &sigma(&r22, part![1, 1])).unwrap()), BigInt::from(0));
        assert_eq!(integrate(&sigma(&r22, part![2, 1])), BigInt::from(0));
        // four lines meeting four general lines in P^3: sigma_1^4 = 2 on G(2,4)
        let h = sigma(&r22, part![1]);
        assert_eq!(integrate(&h.mul_ref(&h).mul_ref(&h).mul_ref(&h)), BigInt::from(2));
    }

    #[test]
    fn giambelli_reproduces_basis() {
        let r = GrassmannRing::new(&[(2, 3)]);
        assert_eq!(giambelli(&part![1], &r, 0).unwrap(), sigma(&r, part![1]));
        assert_eq!(giambelli(&part![2, 1], &r, 0).unwrap(), sigma(&r, part![2, 1]));
        assert_eq!(giambelli(&part![], &r, 0).unwrap(), GrassmannClass::one(&r));
        assert!(matches!(giambelli(&part![4], &r, 0), Err(Error::BoxOverflow { .. })));
        let big = GrassmannRing::new(&[(3, 3)]);
        for p in Partition::all_in_box(3, 3) {
            assert_eq!(giambelli(&p, &big, 0).unwrap(), sigma(&big, p.clone()), "I={p}");
        }
    }

    #[test]
    fn products_have_two_factors() {
        let r = GrassmannRing::new(&[(1, 1), (1, 2)]);
        let a = GrassmannClass::pullback(&r, 0, part![1]).unwrap();
        let b = GrassmannClass::pullback(&r, 1, part![2]).unwrap();
        let point = schubert_multiply(&a, &b).unwrap();
        assert_eq!(integrate(&point), BigInt::from(1));
        let other = GrassmannRing::new(&[(1, 1)]);
        assert_eq!(schubert_multiply(&a, &GrassmannClass::one(&other)), Err(Error::RingMismatch));
    }

    #[test]
    fn extraction_examples() {
        let br = BundleRing::new(&[("E", 2)]).unwrap();
        let c1 = GradedPolynomial::chern(&br, 0, 1).unwrap();
        let c2 = GradedPolynomial::chern(&br, 0, 2).unwrap();
        assert_eq!(extract_coefficient(&c1, &[part![1]], &[2]).unwrap(), BigInt::from(1));
        assert_eq!(extract_coefficient(&c2, &[part![1, 1]], &[2]).unwrap(), BigInt::from(1));
        assert_eq!(extract_coefficient(&c2, &[part![2]], &[2]).unwrap(), BigInt::from(0));
        let zero = GradedPolynomial::zero(&br);
        for p in [part![], part![1], part![2, 1]] {
            assert_eq!(extract_coefficient(&zero, &[p], &[3]).unwrap(), BigInt::from(0));
        }
        assert!(matches!(extract_coefficient(&c2.mul_ref(&c1), &[part![2, 1]], &[2]), Err(Error::BoxTooSmall { .. })));
    }

    #[test]
    fn pairing_in_small_boxes() {
        let (left, right, m) = pairing_table(2, 2, 2);
        assert_eq!(left, vec![part![1, 1], part![2]]);
        assert_eq!(right, vec![part![1, 1], part![2]]);
        let expect = |a: i64, b: i64, c: i64, d: i64| vec![vec![BigInt::from(a), BigInt::from(b)], vec![BigInt::from(c), BigInt::from(d)]];
        assert_eq!(m, expect(1, 0, 0, 1));
    }
}
