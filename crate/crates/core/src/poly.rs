//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::CommRing;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in a fixed number of variables over `Z`.
///
/// Terms are kept in a `BTreeMap` so iteration order (lexicographic on
/// exponent vectors) is deterministic. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(nvars, unit(nvars, index), BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// Builds `sum coeff * x^exps` from `(exps, coeff)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Weighted degree of a monomial: `sum weights[i] * exps[i]`.
    pub fn monomial_degree(exps: &[u32], weights: &[u32]) -> u32 {
        exps.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// Largest weighted degree among the terms, `None` for zero.
    pub fn degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|e| Self::monomial_degree(e, weights)).max()
    }

    /// Degree of a homogeneous polynomial; `None` if zero or mixed.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| Self::monomial_degree(e, weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The part of weighted degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32, weights: &[u32]) -> Poly {
        self.filter(|e| Self::monomial_degree(e, weights) == d)
    }

    /// Drops every term of weighted degree above `max`.
    pub fn truncate(&self, max: u32, weights: &[u32]) -> Poly {
        self.filter(|e| Self::monomial_degree(e, weights) <= max)
    }

    fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Product with every term of weighted degree above `max` discarded.
    pub fn mul_truncated(&self, other: &Poly, max: u32, weights: &[u32]) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da = Self::monomial_degree(ea, weights);
            if da > max {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + Self::monomial_degree(eb, weights) > max {
                    continue;
                }
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Substitutes `values[i]` for `x_i` (all in one common target ring).
    pub fn substitute<R: CommRing>(&self, values: &[R], one: &R) -> R {
        assert_eq!(values.len(), self.nvars);
        let mut acc = one.zero_like();
        // cache powers per variable
        let mut powers: Vec<Vec<R>> = values.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term: Option<R> = None;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul_ref(&values[i]);
                    powers[i].push(next);
                }
                let f = &powers[i][k as usize];
                term = Some(match term {
                    Some(t) => t.mul_ref(f),
                    None => f.clone(),
                });
            }
            let term = term.unwrap_or_else(|| one.one_like());
            acc = acc.add_ref(&scale_generic(&term, c));
        }
        acc
    }

    /// Coefficient with the largest absolute value, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// `c * x` in a generic ring via repeated doubling.
pub fn scale_generic<R: CommRing>(x: &R, c: &BigInt) -> R {
    if c.is_zero() || x.is_zero_elem() {
        return x.zero_like();
    }
    let negative = c.is_negative();
    let mut n = c.abs();
    let mut base = x.clone();
    let mut acc = x.zero_like();
    let two = BigInt::from(2);
    while !n.is_zero() {
        if (&n % &two).is_one() {
            acc = acc.add_ref(&base);
        }
        n /= &two;
        if !n.is_zero() {
            base = base.add_ref(&base);
        }
    }
    if negative { acc.neg_ref() } else { acc }
}

pub(crate) fn unit(nvars: usize, index: usize) -> Monomial {
    let mut e = vec![0; nvars];
    e[index] = 1;
    e
}

pub(crate) fn add_exps(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl CommRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}
