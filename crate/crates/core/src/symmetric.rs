//! Symmetric functions in the Schur basis.
//!
//! Multiplication uses Littlewood-Richardson coefficients computed by direct
//! enumeration of LR skew tableaux. The semistandard-tableau expansion in
//! [`monomial_oracle`] is kept independent of that path so the two can be
//! checked against each other.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{determinant, CommRing};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::Poly;

/// Row/column limits applied while enumerating LR fillings. Shapes that leave
/// the box are dropped; since shapes only grow during enumeration this is a
/// sound pruning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShapeBound {
    pub max_rows: Option<u32>,
    pub max_cols: Option<u32>,
}

impl ShapeBound {
    pub const NONE: ShapeBound = ShapeBound { max_rows: None, max_cols: None };

    pub fn rows(n: u32) -> Self {
        Self { max_rows: Some(n), max_cols: None }
    }

    pub fn boxed(rows: u32, cols: u32) -> Self {
        Self { max_rows: Some(rows), max_cols: Some(cols) }
    }

    pub fn admits(&self, p: &Partition) -> bool {
        self.max_rows.is_none_or(|r| p.len() <= r as usize) && self.max_cols.is_none_or(|c| p.width() <= c)
    }
}

type LrTable = Arc<BTreeMap<Partition, u64>>;

const LR_CACHE_CAPACITY: usize = 1 << 16;

type LrCache = Mutex<HashMap<(Partition, Partition, ShapeBound), LrTable>>;

fn lr_cache() -> &'static LrCache {
    static CACHE: OnceLock<LrCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Littlewood-Richardson coefficients `c^K_{IJ}` for all `K` with a nonzero value.
pub fn lr_coefficients(i: &Partition, j: &Partition) -> BTreeMap<Partition, u64> {
    lr_bounded(i, j, ShapeBound::NONE).as_ref().clone()
}

/// LR coefficients restricted to shapes admitted by `bound`. Results are
/// memoized in a process-wide cache of bounded size.
pub fn lr_bounded(i: &Partition, j: &Partition, bound: ShapeBound) -> LrTable {
    // c^K_{IJ} = c^K_{JI}; enumerate with the lighter partition as content
    let (outer, content) = if (j.weight(), j.len()) <= (i.weight(), i.len()) { (i, j) } else { (j, i) };
    let key = (outer.clone(), content.clone(), bound);
    if let Some(hit) = lr_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let table = Arc::new(enumerate_lr(outer, content, bound));
    let mut cache = lr_cache().lock().unwrap();
    if cache.len() >= LR_CACHE_CAPACITY {
        cache.clear();
    }
    cache.insert(key, table.clone());
    table
}

fn enumerate_lr(start: &Partition, content: &Partition, bound: ShapeBound) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if !bound.admits(start) {
        return out;
    }
    let mut shape: Vec<u32> = start.parts().to_vec();
    let mut fill: Vec<Vec<u8>> = vec![Vec::new(); shape.len()];
    add_strip(&mut shape, &mut fill, content.parts(), 1, bound, &mut out);
    out
}

// Places the horizontal strip for `letter`, then recurses on the next letter.
fn add_strip(
    shape: &mut Vec<u32>,
    fill: &mut Vec<Vec<u8>>,
    content: &[u32],
    letter: u8,
    bound: ShapeBound,
    out: &mut BTreeMap<Partition, u64>,
) {
    let idx = letter as usize - 1;
    if idx == content.len() {
        *out.entry(Partition::new(shape.clone()).expect("LR shapes stay partitions")).or_insert(0) += 1;
        return;
    }
    let before = shape.clone();
    let mut max_rows = before.len() + 1;
    if let Some(r) = bound.max_rows {
        max_rows = max_rows.min(r as usize);
    }
    if shape.len() < max_rows {
        shape.resize(max_rows, 0);
        fill.resize(max_rows, Vec::new());
    }
    // letter r only occurs in rows r, r+1, ... of an LR tableau
    let first_row = idx;
    distribute(shape, fill, &before, content, letter, first_row, first_row, content[idx], bound, out);
    shape.truncate(before.len());
    fill.truncate(before.len());
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    shape: &mut Vec<u32>,
    fill: &mut Vec<Vec<u8>>,
    before: &[u32],
    content: &[u32],
    letter: u8,
    first_row: usize,
    row: usize,
    remaining: u32,
    bound: ShapeBound,
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        if lattice_ok(fill, letter) {
            let saved = shape.clone();
            let saved_len = fill.len();
            while shape.last() == Some(&0) {
                shape.pop();
            }
            fill.truncate(shape.len().max(before.len()));
            add_strip(shape, fill, content, letter + 1, bound, out);
            *shape = saved;
            fill.resize(saved_len, Vec::new());
        }
        return;
    }
    if row >= shape.len() {
        return;
    }
    let old = before.get(row).copied().unwrap_or(0);
    // horizontal strip: row may grow up to the previous row's old length
    let mut cap = if row == 0 { u32::MAX } else { before[row - 1] };
    if let Some(c) = bound.max_cols {
        cap = cap.min(c);
    }
    let room = cap.saturating_sub(old).min(remaining);
    for add in (0..=room).rev() {
        if add > 0 && row < first_row {
            continue;
        }
        shape[row] = old + add;
        fill[row].extend(std::iter::repeat_n(letter, add as usize));
        distribute(shape, fill, before, content, letter, first_row, row + 1, remaining - add, bound, out);
        let keep = fill[row].len() - add as usize;
        fill[row].truncate(keep);
        shape[row] = old;
    }
}

// Reverse reading word (rows top to bottom, each right to left) must keep
// #letter <= #(letter - 1) in every prefix.
fn lattice_ok(fill: &[Vec<u8>], letter: u8) -> bool {
    if letter == 1 {
        return true;
    }
    let (mut prev, mut cur) = (0u32, 0u32);
    for row in fill {
        for &x in row.iter().rev() {
            if x == letter - 1 {
                prev += 1;
            } else if x == letter {
                cur += 1;
                if cur > prev {
                    return false;
                }
            }
        }
    }
    true
}

/// A finite integer combination of Schur functions.
///
/// `rank` is the number of underlying variables; `None` means the free ring of
/// symmetric functions. With a finite rank, `S_I` with more than `rank` parts
/// is zero and never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurVector {
    rank: Option<u32>,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurVector {
    pub fn zero(rank: Option<u32>) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: Option<u32>) -> Self {
        Self::basis(Partition::empty(), rank)
    }

    /// `S_I`, or zero if `I` is too long for the rank.
    pub fn basis(i: Partition, rank: Option<u32>) -> Self {
        let mut v = Self::zero(rank);
        v.add_term(i, BigInt::one());
        v
    }

    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, i: &Partition) -> BigInt {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: Partition, c: BigInt) {
        if c.is_zero() || self.rank.is_some_and(|n| i.len() > n as usize) {
            return;
        }
        let slot = self.terms.entry(i.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        for (i, v) in &self.terms {
            out.add_term(i.clone(), v * c);
        }
        out
    }

    /// Bilinear extension of the LR rule, truncated to the common rank.
    pub fn multiply(&self, other: &SchurVector) -> Result<SchurVector> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let bound = self.rank.map_or(ShapeBound::NONE, ShapeBound::rows);
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = ca * cb;
                for (k, n) in lr_bounded(a, b, bound).iter() {
                    out.add_term(k.clone(), &prod * BigInt::from(*n));
                }
            }
        }
        Ok(out)
    }
}

impl CommRing for SchurVector {
    fn zero_like(&self) -> Self {
        Self::zero(self.rank)
    }
    fn one_like(&self) -> Self {
        Self::one(self.rank)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.multiply(other).expect("rank mismatch")
    }
    fn neg_ref(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

/// Truncated power series `sum_k s_k t^k`, coefficients in any commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesSlice<R> {
    coeffs: Vec<R>,
}

impl<R: CommRing> PowerSeriesSlice<R> {
    /// `coeffs[k]` is the degree-`k` coefficient. Must be nonempty.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series slice needs its constant term");
        Self { coeffs }
    }

    pub fn top_degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, k: u32) -> Option<&R> {
        self.coeffs.get(k as usize)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// The series `1`, kept up to degree `up_to`.
    pub fn unit(context: &R, up_to: u32) -> Self {
        let mut coeffs = vec![context.one_like()];
        coeffs.extend((0..up_to).map(|_| context.zero_like()));
        Self { coeffs }
    }

    /// Product of two series, truncated to the shorter one.
    pub fn mul(&self, other: &Self) -> Self {
        let top = self.top_degree().min(other.top_degree()) as usize;
        let coeffs = (0..=top)
            .map(|k| {
                (0..=k).fold(self.coeffs[0].zero_like(), |acc, a| acc.add_ref(&self.coeffs[a].mul_ref(&other.coeffs[k - a])))
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse, assuming the constant term is 1.
    pub fn inverse(&self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut inv: Vec<R> = vec![self.coeffs[0].one_like()];
        for k in 1..self.coeffs.len() {
            let mut acc = zero.clone();
            for a in 1..=k {
                acc = acc.add_ref(&self.coeffs[a].mul_ref(&inv[k - a]));
            }
            inv.push(acc.neg_ref());
        }
        Self { coeffs: inv }
    }

    /// Replaces each coefficient `s_k` by `(-1)^k s_k`.
    pub fn alternate(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { c.neg_ref() } else { c.clone() }).collect();
        Self { coeffs }
    }
}

/// Jacobi-Trudi determinant `det(s_{i_p - p + q})` of size `l(I)`.
pub fn jacobi_trudi<R: CommRing>(i: &Partition, s: &PowerSeriesSlice<R>) -> Result<R> {
    let one = s.coeffs[0].one_like();
    let l = i.len();
    if l == 0 {
        return Ok(one);
    }
    let needed = i.part(0) + l as u32 - 1;
    if s.top_degree() < needed {
        return Err(Error::InsufficientDegrees { needed, available: s.top_degree() });
    }
    let zero = one.zero_like();
    let matrix: Vec<Vec<R>> = (0..l)
        .map(|p| {
            (0..l)
                .map(|q| {
                    let k = i.part(p) as i64 - p as i64 + q as i64;
                    if k < 0 { zero.clone() } else { s.coeffs[k as usize].clone() }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix, &one))
}

/// Series `sum_k h_k(x_1..x_n) t^k = prod_i 1/(1 - x_i t)` in `n` root variables.
pub fn root_segre_series(n: usize, up_to: u32) -> PowerSeriesSlice<Poly> {
    let weights = vec![1; n];
    let mut acc = PowerSeriesSlice::unit(&Poly::one(n), up_to);
    for v in 0..n {
        let geometric: Vec<Poly> = (0..=up_to).map(|k| Poly::var(n, v).pow(k)).collect();
        acc = acc.mul(&PowerSeriesSlice::new(geometric));
    }
    debug_assert!(acc.coeffs.iter().enumerate().all(|(k, c)| c.homogeneous_degree(&weights).is_none_or(|d| d == k as u32)));
    acc
}

/// Schur polynomial `s_I(x_1..x_d)` as the sum over semistandard tableaux of
/// shape `I` with entries at most `d`.
pub fn monomial_oracle(i: &Partition, d: usize) -> Poly {
    assert!(d >= 1, "the oracle needs at least one variable");
    let mut out = Poly::zero(d);
    if i.len() > d {
        return out;
    }
    let cells: Vec<(usize, usize)> = i.parts().iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = i.parts().iter().map(|&len| vec![0; len as usize]).collect();
    let mut exps = vec![0u32; d];
    fn rec(k: usize, cells: &[(usize, usize)], grid: &mut [Vec<usize>], exps: &mut [u32], d: usize, out: &mut Poly) {
        if k == cells.len() {
            out.add_term(exps.to_vec(), BigInt::one());
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..d {
            grid[r][c] = v;
            exps[v] += 1;
            rec(k + 1, cells, grid, exps, d, out);
            exps[v] -= 1;
        }
    }
    rec(0, &cells, &mut grid, &mut exps, d, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use proptest::prelude::*;

    fn lr(i: Partition, j: Partition) -> Vec<(Partition, u64)> {
        lr_coefficients(&i, &j).into_iter().collect()
    }

    fn x(d: usize, i: usize) -> Poly {
        Poly::var(d, i)
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr(part![1], part![1]), vec![(part![1, 1], 1), (part![2], 1)]);
        assert_eq!(lr(part![], part![2, 1]), vec![(part![2, 1], 1)]);
        assert_eq!(lr(part![2, 1], part![1]), vec![(part![2, 1, 1], 1), (part![2, 2], 1), (part![3, 1], 1)]);
        // the classical first multiplicity: c^{(3,2,1)}_{(2,1),(2,1)} = 2
        assert_eq!(lr_coefficients(&part![2, 1], &part![2, 1])[&part![3, 2, 1]], 2);
    }

    #[test]
    fn truncated_product_in_one_variable() {
        let s1 = SchurVector::basis(part![1], Some(1));
        assert_eq!(s1.multiply(&s1).unwrap(), SchurVector::basis(part![2], Some(1)));
        // oracle in a single variable: x * x = x^2 = s_(2)(x)
        assert_eq!(monomial_oracle(&part![2], 1), x(1, 0).pow(2));
        assert!(monomial_oracle(&part![1, 1], 1).is_zero());
    }

    #[test]
    fn unit_and_zero_products() {
        let v = SchurVector::basis(part![2, 1], Some(3)).add_ref(&SchurVector::basis(part![1], Some(3)).scale(&BigInt::from(-4)));
        assert_eq!(SchurVector::one(Some(3)).multiply(&v).unwrap(), v);
        assert!(SchurVector::zero(Some(3)).multiply(&v).unwrap().is_zero());
        assert!(matches!(SchurVector::one(Some(2)).multiply(&v), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn truncated_mode_drops_long_keys() {
        let v = SchurVector::basis(part![1, 1, 1], Some(2));
        assert!(v.is_zero());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(monomial_oracle(&part![1], 2), x(2, 0).add_ref(&x(2, 1)));
        assert!(monomial_oracle(&part![1, 1], 1).is_zero());
        let expected = x(2, 0).pow(2).mul_ref(&x(2, 1)).add_ref(&x(2, 0).mul_ref(&x(2, 1).pow(2)));
        assert_eq!(monomial_oracle(&part![2, 1], 2), expected);
    }

    #[test]
    fn jacobi_trudi_examples() {
        // det[[h1,h2],[1,h1]] in two roots is e2 = a1 a2
        let s = root_segre_series(2, 4);
        assert_eq!(jacobi_trudi(&part![1, 1], &s).unwrap(), x(2, 0).mul_ref(&x(2, 1)));
        for k in 0..=4 {
            assert_eq!(&jacobi_trudi(&part![k], &s).unwrap(), s.coeff(k).unwrap());
        }
        let unit = PowerSeriesSlice::unit(&Poly::one(2), 3);
        assert!(jacobi_trudi(&part![1], &unit).unwrap().is_zero());
        assert!(matches!(jacobi_trudi(&part![3, 2], &unit), Err(Error::InsufficientDegrees { needed: 4, available: 3 })));
    }

    #[test]
    fn jacobi_trudi_matches_tableaux() {
        for n in 1..=3usize {
            let s = root_segre_series(n, 8);
            for w in 0..=5 {
                for i in Partition::of_weight(w) {
                    assert_eq!(jacobi_trudi(&i, &s).unwrap(), monomial_oracle(&i, n), "I={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn series_inverse() {
        let s = root_segre_series(2, 5);
        let prod = s.mul(&s.inverse());
        assert_eq!(prod, PowerSeriesSlice::unit(&Poly::one(2), 5));
    }

    #[test]
    fn lr_entries_are_well_formed() {
        for a in 0..=4 {
            for b in 0..=4 {
                for i in Partition::of_weight(a) {
                    for j in Partition::of_weight(b) {
                        for (k, c) in lr_coefficients(&i, &j) {
                            assert!(c >= 1);
                            assert_eq!(k.weight(), a + b);
                            assert!(k.contains(&i) && k.contains(&j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_enumeration_matches_filtering() {
        let bound = ShapeBound::boxed(3, 3);
        for i in Partition::all_in_box(3, 3) {
            for j in Partition::of_weight(3) {
                let full: BTreeMap<_, _> = lr_coefficients(&i, &j).into_iter().filter(|(k, _)| bound.admits(k)).collect();
                assert_eq!(*lr_bounded(&i, &j, bound), full);
            }
        }
    }

    fn arb_vector(rank: u32) -> impl Strategy<Value = SchurVector> {
        proptest::collection::vec((0u32..=3, 0u32..=3, -3i64..=3), 0..4).prop_map(move |entries| {
            let mut v = SchurVector::zero(Some(rank));
            for (a, b, c) in entries {
                v.add_term(Partition::from_unsorted(vec![a, b]), BigInt::from(c));
            }
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn multiplication_is_commutative_and_associative(
            (a, b, c) in (1u32..=4).prop_flat_map(|r| (arb_vector(r), arb_vector(r), arb_vector(r)))
        ) {
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        }
    }
}
