//! The `A_1` Thom polynomial `c_{n-m+1}(F - E)` for maps from an `m`-fold to
//! an `n`-fold, with slots `E` (source tangent bundle, rank `m`) and `F`
//! (pulled-back target tangent bundle, rank `n`).

use std::sync::Arc;

use super::bundle::{super_schur, virtual_chern, FormalBundle};
use super::ring::{BundleRing, GradedPolynomial};
use crate::algebra::CommRing;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Ring with slots `E` of rank `m` and `F` of rank `n`.
pub fn a1_ring(m: u32, n: u32) -> Result<Arc<BundleRing>> {
    BundleRing::new(&[("E", m), ("F", n)])
}

/// `c_{n-m+1}(F - E)`, the degree `n-m+1` part of `c(F)/c(E)`.
pub fn a1_thom(m: u32, n: u32) -> Result<GradedPolynomial> {
    if n < m {
        return Err(Error::RankOrder { m, n });
    }
    let ring = a1_ring(m, n)?;
    let e = FormalBundle::slot(&ring, "E")?;
    let f = FormalBundle::slot(&ring, "F")?;
    let k = n - m + 1;
    Ok(virtual_chern(&f, &e, k)?.into_coeffs().pop().expect("series reaches degree k"))
}

/// `sum_{i=0}^{n-m+1} S_{n-m+1-i}(E*) c_i(F)`, with Segre classes of `E*`
/// computed from the Segre series rather than by inverting `c(E)`.
pub fn a1_segre_form(m: u32, n: u32) -> Result<GradedPolynomial> {
    if n < m {
        return Err(Error::RankOrder { m, n });
    }
    let ring = a1_ring(m, n)?;
    let e_dual = FormalBundle::slot(&ring, "E")?.dual();
    let zero = FormalBundle::zero(&ring);
    let f_idx = ring.slot_index("F")?;
    let k = n - m + 1;
    let mut acc = GradedPolynomial::zero(&ring);
    for i in 0..=k.min(n) {
        let segre = super_schur(&Partition::row(k - i), &e_dual, &zero)?;
        acc = acc.add_ref(&segre.mul_ref(&GradedPolynomial::chern(&ring, f_idx, i)?));
    }
    Ok(acc)
}

/// True iff both sides of the `A_1` formula agree as exact polynomials.
pub fn verify_a1_identity(m: u32, n: u32) -> Result<bool> {
    Ok(a1_thom(m, n)? == a1_segre_form(m, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equidimensional_case_is_riemann_hurwitz() {
        for m in 1..=4 {
            let p = a1_thom(m, m).unwrap();
            let ring = p.ring().clone();
            let expected = GradedPolynomial::chern(&ring, 1, 1).unwrap().sub_ref(&GradedPolynomial::chern(&ring, 0, 1).unwrap());
            assert_eq!(p, expected);
        }
        assert_eq!(a1_thom(1, 1).unwrap().to_string(), "c1(F) - c1(E)");
    }

    #[test]
    fn curve_into_surface() {
        // c(F)/c(E) to degree 2 with rank-1 E
        assert_eq!(a1_thom(1, 2).unwrap().to_string(), "c2(F) - c1(E)*c1(F) + c1(E)^2");
    }

    #[test]
    fn identity_holds_in_small_cases() {
        for (m, n) in [(1, 1), (2, 3), (3, 3), (1, 4)] {
            assert!(verify_a1_identity(m, n).unwrap(), "m={m} n={n}");
        }
    }

    #[test]
    fn rank_order_is_checked() {
        assert_eq!(a1_thom(3, 2), Err(Error::RankOrder { m: 3, n: 2 }));
        assert_eq!(verify_a1_identity(2, 1), Err(Error::RankOrder { m: 2, n: 1 }));
    }
}
