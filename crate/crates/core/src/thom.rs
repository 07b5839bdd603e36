//! Concrete Thom polynomials and nonnegativity checks of their Schur expansions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::determinant;
use crate::chern::{BundleRing, ProductSchurExpansion, SchurKey, Variance};
use crate::error::{Error, Result};
use crate::par;
use crate::partition::Partition;

fn binom(x: i64, y: i64) -> BigInt {
    if y < 0 || y > x {
        return BigInt::zero();
    }
    binomial(BigInt::from(x), BigInt::from(y))
}

/// Lascoux's binomial determinant `d_{I,J} = det( C(i_a + m - a, j_b + m - b) )`,
/// `1 <= a, b <= m`, with `I`, `J` zero-padded to length `m`.
pub fn binomial_det(i: &Partition, j: &Partition, m: usize) -> Result<BigInt> {
    let ip = i.padded(m)?;
    let jp = j.padded(m)?;
    let matrix: Vec<Vec<BigInt>> = (0..m)
        .map(|a| {
            let x = ip[a] as i64 + (m - 1 - a) as i64;
            (0..m).map(|b| binom(x, jp[b] as i64 + (m - 1 - b) as i64)).collect()
        })
        .collect();
    Ok(determinant(&matrix, &BigInt::one()))
}

/// Outcome of evaluating the corank-`q` formula for quadratic forms on a
/// rank-`m` bundle `E` with values in a line bundle `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankFormulaResult {
    pub q: u32,
    pub m: u32,
    /// `q(q+1)/2`.
    pub degree: u32,
    /// The prefactor `2^{-C(q,2)}`.
    pub scale: BigRational,
    /// Expansion over slots `E` (plain) and `L` (plain), `S_k(L) = c_1(L)^k`.
    pub expansion: ProductSchurExpansion,
    pub integral: bool,
}

/// Ring with slots `E` of rank `m` and `L` of rank 1.
pub fn corank_ring(m: u32) -> Result<Arc<BundleRing>> {
    BundleRing::new(&[("E", m), ("L", 1)])
}

/// Class of the locus of quadratic forms of corank at least `q`:
/// `2^{-C(q,2)} sum_{J in rho_q} 2^{|J|} d_{rho_q,J} S_J(E) S_{C(q+1,2)-|J|}(L)`.
///
/// Every coefficient is computed as an exact rational and must come out integral.
pub fn corank_thom(q: u32, m: u32) -> Result<CorankFormulaResult> {
    if q == 0 {
        return Err(Error::Invalid("corank must be positive".into()));
    }
    if q > m {
        return Err(Error::CorankExceedsRank { q, m });
    }
    let ring = corank_ring(m)?;
    let degree = q * (q + 1) / 2;
    let scale = BigRational::new(BigInt::one(), BigInt::one() << (q * (q - 1) / 2));
    let rho = Partition::staircase(q);
    let subs = rho.subpartitions();
    let dets = par::try_map(&subs, |j| binomial_det(&rho, j, m as usize))?;

    let mut expansion = ProductSchurExpansion::new(&ring, vec![Variance::Plain, Variance::Plain])?;
    for (j, d) in subs.into_iter().zip(dets) {
        let weight = j.weight();
        let c = &scale * BigRational::from_integer((BigInt::one() << weight) * d);
        if !c.is_integer() {
            return Err(Error::NonIntegralResult(format!("{c} at J = {j}")));
        }
        expansion.add_term(vec![j, Partition::row(degree - weight)], c.to_integer())?;
    }
    Ok(CorankFormulaResult { q, m, degree, scale, expansion, integral: true })
}

/// Result of scanning an expansion for negative coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub total_terms: usize,
    pub negative_terms: Vec<(Vec<Partition>, BigInt)>,
    pub sum: BigInt,
    pub nonnegative: bool,
    pub sum_positive: bool,
}

pub fn check_positivity(exp: &ProductSchurExpansion) -> PositivityReport {
    let negative_terms: Vec<(Vec<Partition>, BigInt)> =
        exp.terms().iter().filter(|(_, c)| c.is_negative()).map(|(k, c): (&SchurKey, &BigInt)| (k.0.clone(), c.clone())).collect();
    let sum = exp.coefficient_sum();
    PositivityReport {
        total_terms: exp.len(),
        nonnegative: negative_terms.is_empty(),
        sum_positive: sum.is_positive(),
        negative_terms,
        sum,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DEntry {
    pub q: u32,
    pub m: u32,
    pub j: Partition,
    pub d: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTable {
    pub entries: Vec<DEntry>,
    /// Entries with `d <= 0`; expected empty.
    pub nonpositive: Vec<DEntry>,
}

/// `d_{rho_q, J}` for every `J` inside `rho_q`, `1 <= q <= q_max`, evaluated at
/// determinant size `m = q + size_offset`. Entries are ordered by `q`, then `J`.
pub fn d_positivity_table(q_max: u32, size_offset: u32) -> DTable {
    let jobs: Vec<(u32, Partition)> =
        (1..=q_max).flat_map(|q| Partition::staircase(q).subpartitions().into_iter().map(move |j| (q, j))).collect();
    let entries = par::map(&jobs, |(q, j)| {
        let m = q + size_offset;
        let d = binomial_det(&Partition::staircase(*q), j, m as usize).expect("J inside rho_q fits size m");
        DEntry { q: *q, m, j: j.clone(), d }
    });
    let nonpositive = entries.iter().filter(|e| !e.d.is_positive()).cloned().collect();
    DTable { entries, nonpositive }
}
