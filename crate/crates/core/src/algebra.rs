//! Minimal commutative-ring interface shared by the polynomial, Schur and
//! Schubert-class types, plus a division-free determinant over it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring element that knows how to build its own zero and one.
///
/// Elements carry context (variable count, ring descriptor) so constants are
/// produced from an existing element rather than from nothing.
pub trait CommRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
}

impl CommRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl CommRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Determinant of a square matrix by Laplace expansion over column subsets.
///
/// Runs in `O(n 2^n)` ring multiplications and never divides, so it works over
/// any commutative ring. Zero entries are skipped. `one` supplies the ring
/// context for the empty matrix.
pub fn determinant<R: CommRing>(rows: &[Vec<R>], one: &R) -> R {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    assert!(n < 24, "determinant size {n} too large for subset expansion");
    if n == 0 {
        return one.one_like();
    }
    // partial[mask] = signed sum over injections of the first popcount(mask) rows onto mask
    let mut partial: Vec<Option<R>> = vec![None; 1 << n];
    partial[0] = Some(one.one_like());
    for (k, row) in rows.iter().enumerate() {
        for mask in 0usize..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let Some(acc) = partial[mask].take() else { continue };
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero_elem() {
                    continue;
                }
                let term = acc.mul_ref(entry);
                let term = if (mask >> (j + 1)).count_ones() % 2 == 1 { term.neg_ref() } else { term };
                let slot = &mut partial[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(prev) => prev.add_ref(&term),
                    None => term,
                });
            }
        }
    }
    partial[(1 << n) - 1].take().unwrap_or_else(|| one.zero_like())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    // Leibniz formula over all permutations.
    fn leibniz(a: &[Vec<BigInt>]) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.len();
        perms(n)
            .into_iter()
            .map(|p| {
                let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                let prod: BigInt = (0..n).map(|i| a[i][p[i]].clone()).product();
                if inv % 2 == 1 { -prod } else { prod }
            })
            .sum()
    }

    #[test]
    fn small_determinants() {
        let one = BigInt::one();
        assert_eq!(determinant(&m(&[]), &one), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[7]]), &one), BigInt::from(7));
        assert_eq!(determinant(&m(&[&[2, 1], &[0, 1]]), &one), BigInt::from(2));
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]]), &one), BigInt::from(-2));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]]), &one), BigInt::from(0));
    }

    #[test]
    fn matches_leibniz() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for n in 1..=6 {
            for _ in 0..10 {
                let a: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(next())).collect()).collect();
                assert_eq!(determinant(&a, &BigInt::one()), leibniz(&a));
            }
        }
    }
}
