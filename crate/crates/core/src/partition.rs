//! Integer partitions and the Young-diagram operations used to index Schur
//! functions and Schubert classes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are stripped on construction, so `(2,1,0)` and `(2,1)` are
/// the same value. Partitions are ordered by weight first and then
/// lexicographically on their parts, which puts `(1,1)` before `(2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition, rejecting sequences that are not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds a partition from any sequence of parts by sorting them.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self { parts }
    }

    /// The single-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        Self::from_sorted(vec![k])
    }

    /// The single-column partition `(1^k)`.
    pub fn column(k: u32) -> Self {
        Self { parts: vec![1; k as usize] }
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Self { parts: vec![cols; rows as usize] }
    }

    /// `(q, q-1, ..., 1)`.
    pub fn staircase(q: u32) -> Self {
        Self { parts: (1..=q).rev().collect() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `k` (0-based), zero past the end.
    pub fn part(&self, k: usize) -> u32 {
        self.parts.get(k).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, zero for the empty partition.
    pub fn width(&self) -> u32 {
        self.part(0)
    }

    /// Parts padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Result<Vec<u32>> {
        if self.len() > len {
            return Err(Error::LengthOverflow { partition: self.clone(), size: len });
        }
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.width();
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count() as u32)
            .collect();
        Self { parts }
    }

    /// True iff `other`'s diagram sits inside `self`'s.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    pub fn fits_box(&self, rows: u32, cols: u32) -> bool {
        self.len() <= rows as usize && self.width() <= cols
    }

    /// Complement of `self` inside the `rows x cols` rectangle, rotated by a half turn:
    /// `(cols - i_rows, ..., cols - i_1)`.
    pub fn box_complement(&self, rows: u32, cols: u32) -> Result<Self> {
        if !self.fits_box(rows, cols) {
            return Err(Error::BoxOverflow { partition: self.clone(), rows, cols });
        }
        let parts = (0..rows as usize).rev().map(|k| cols - self.part(k)).collect();
        Ok(Self::from_sorted(parts))
    }

    /// All partitions fitting the `rows x cols` box, in the canonical order.
    pub fn all_in_box(rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(rows as usize);
        fn rec(rows: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::from_sorted(cur.clone()));
            if cur.len() as u32 == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions whose diagram lies inside `self`, in the canonical order.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.len());
        fn rec(outer: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::from_sorted(cur.clone()));
            let k = cur.len();
            if k == outer.len() {
                return;
            }
            let max = if k == 0 { outer[0] } else { outer[k].min(cur[k - 1]) };
            for p in 1..=max {
                cur.push(p);
                rec(outer, cur, out);
                cur.pop();
            }
        }
        rec(&self.parts, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of `n`, in the canonical order.
    pub fn of_weight(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition::from_sorted(cur.clone()));
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `(3,1)`, `( 3, 1 )` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(format!("cannot parse {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for tests and examples; panics on bad input.
#[macro_export]
macro_rules! part {
    () => { $crate::Partition::empty() };
    ($($p:expr),+ $(,)?) => { $crate::Partition::new(vec![$($p),+]).expect("weakly decreasing parts") };
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
        assert_eq!(part![].conjugate(), part![]);
        assert_eq!(part![2, 2].conjugate(), part![2, 2]);
    }

    #[test]
    fn contains_examples() {
        assert!(part![3, 1].contains(&part![2, 1]));
        assert!(!part![2, 2].contains(&part![3]));
        assert!(part![4, 2, 1].contains(&part![]));
        assert!(!part![1].contains(&part![1, 1]));
    }

    #[test]
    fn box_complement_examples() {
        assert_eq!(part![2, 1].box_complement(2, 3).unwrap(), part![2, 1]);
        assert_eq!(part![].box_complement(2, 3).unwrap(), part![3, 3]);
        assert_eq!(part![3, 3].box_complement(2, 3).unwrap(), part![]);
        assert!(matches!(part![4].box_complement(2, 3), Err(Error::BoxOverflow { .. })));
        assert!(matches!(part![1, 1, 1].box_complement(2, 3), Err(Error::BoxOverflow { .. })));
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(Partition::staircase(3), part![3, 2, 1]);
        assert_eq!(Partition::staircase(0), part![]);
        assert_eq!(Partition::staircase(1), part![1]);
        assert_eq!(Partition::staircase(6).weight(), 21);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(Partition::all_in_box(1, 2), vec![part![], part![1], part![2]]);
        assert_eq!(part![1, 1].subpartitions(), vec![part![], part![1], part![1, 1]]);
        assert_eq!(Partition::all_in_box(2, 2).len(), 6);
        assert_eq!(part![2, 1].subpartitions().len(), 5);
        assert_eq!(Partition::of_weight(4), vec![part![1, 1, 1, 1], part![2, 1, 1], part![2, 2], part![3, 1], part![4]]);
    }

    #[test]
    fn box_count_is_binomial() {
        for m in 0..=6u32 {
            for n in 0..=6u32 {
                let all = Partition::all_in_box(m, n);
                assert_eq!(all.len() as u64, binom((m + n) as u64, m as u64), "box {m}x{n}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn canonical_form_and_parsing() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part![2, 1]);
        assert_eq!("( 3, 1 )".parse::<Partition>().unwrap(), part![3, 1]);
        assert_eq!("()".parse::<Partition>().unwrap(), part![]);
        assert_eq!("(2,0)".parse::<Partition>().unwrap(), part![2]);
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("3,1".parse::<Partition>().is_err());
        assert!("(a)".parse::<Partition>().is_err());
        assert_eq!(part![3, 1].to_string(), "(3,1)");
        assert_eq!(part![].to_string(), "()");
    }

    #[test]
    fn ordering_is_weight_then_lex() {
        let mut v = vec![part![2], part![1, 1], part![1], part![], part![3], part![2, 1], part![1, 1, 1]];
        v.sort();
        assert_eq!(v, vec![part![], part![1], part![1, 1], part![2], part![1, 1, 1], part![2, 1], part![3]]);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0u32..7, 0..6).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(p in arb_partition()) {
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().weight(), p.weight());
        }

        #[test]
        fn containment_commutes_with_conjugation(a in arb_partition(), b in arb_partition()) {
            prop_assert_eq!(a.contains(&b), a.conjugate().contains(&b.conjugate()));
        }

        #[test]
        fn box_complement_is_an_involution(p in arb_partition(), m in 0u32..7, n in 0u32..7) {
            let rows = m.max(p.len() as u32);
            let cols = n.max(p.width());
            let c = p.box_complement(rows, cols).unwrap();
            prop_assert_eq!(c.weight() + p.weight(), rows * cols);
            prop_assert_eq!(c.box_complement(rows, cols).unwrap(), p);
        }

        #[test]
        fn text_form_round_trips(p in arb_partition()) {
            prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
        }
    }
}
