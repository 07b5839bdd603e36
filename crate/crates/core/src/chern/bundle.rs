//! Formal bundles built from primitive slots by functor constructors, and
//! their Chern and Segre series via the splitting principle.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;

use super::ring::{same_ring, BundleRing, GradedPolynomial};
use crate::algebra::CommRing;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{Monomial, Poly};
use crate::symmetric::{jacobi_trudi, PowerSeriesSlice};

#[derive(Debug, PartialEq, Eq, Hash)]
enum Node {
    Zero,
    Slot(usize),
    Dual(Arc<Node>),
    Sum(Arc<Node>, Arc<Node>),
    TensorLine(Arc<Node>, Arc<Node>),
    SymPower(Arc<Node>, u32),
    /// `(Sym^1 source* + ... + Sym^order source*) (x) target`
    Jets { source: Arc<Node>, target: Arc<Node>, order: u32 },
}

/// A symbolic vector bundle over a [`BundleRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalBundle {
    ring: Arc<BundleRing>,
    node: Arc<Node>,
    rank: u64,
}

impl FormalBundle {
    /// The zero bundle.
    pub fn zero(ring: &Arc<BundleRing>) -> Self {
        Self { ring: ring.clone(), node: Arc::new(Node::Zero), rank: 0 }
    }

    /// The primitive bundle called `name`.
    pub fn slot(ring: &Arc<BundleRing>, name: &str) -> Result<Self> {
        let k = ring.slot_index(name)?;
        Ok(Self::slot_at(ring, k))
    }

    pub fn slot_at(ring: &Arc<BundleRing>, k: usize) -> Self {
        Self { ring: ring.clone(), node: Arc::new(Node::Slot(k)), rank: ring.slot(k).rank as u64 }
    }

    pub fn ring(&self) -> &Arc<BundleRing> {
        &self.ring
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn dual(&self) -> Self {
        let node = match &*self.node {
            Node::Dual(inner) => inner.clone(),
            Node::Zero => self.node.clone(),
            _ => Arc::new(Node::Dual(self.node.clone())),
        };
        Self { ring: self.ring.clone(), node, rank: self.rank }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self { ring: self.ring.clone(), node: Arc::new(Node::Sum(self.node.clone(), other.node.clone())), rank: self.rank + other.rank })
    }

    /// `self (x) line`, where `line` has rank one.
    pub fn tensor_line(&self, line: &Self) -> Result<Self> {
        self.check_ring(line)?;
        if line.rank != 1 {
            return Err(Error::NotALineBundle(line.to_string()));
        }
        Ok(Self { ring: self.ring.clone(), node: Arc::new(Node::TensorLine(self.node.clone(), line.node.clone())), rank: self.rank })
    }

    /// `Sym^k` of `self`, of rank `C(rank + k - 1, k)`.
    pub fn sym_power(&self, k: u32) -> Self {
        let rank = sym_rank(self.rank, k);
        Self { ring: self.ring.clone(), node: Arc::new(Node::SymPower(self.node.clone(), k)), rank }
    }

    /// The jet bundle `J^k(self, target) = (Sym^1 self* + ... + Sym^k self*) (x) target`.
    pub fn jets(&self, target: &Self, order: u32) -> Result<Self> {
        self.check_ring(target)?;
        let rank = target.rank * (1..=order).map(|i| sym_rank(self.rank, i)).sum::<u64>();
        Ok(Self {
            ring: self.ring.clone(),
            node: Arc::new(Node::Jets { source: self.node.clone(), target: target.node.clone(), order }),
            rank,
        })
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) { Ok(()) } else { Err(Error::RingMismatch) }
    }

    /// Total Chern class `1 + c_1 + c_2 + ...` kept up to degree `up_to`.
    pub fn total_chern(&self, up_to: u32) -> PowerSeriesSlice<GradedPolynomial> {
        let coeffs = node_chern(&self.ring, &self.node, up_to);
        PowerSeriesSlice::new(coeffs)
    }

    /// `c_i` of this bundle as a polynomial in the primitive Chern classes.
    pub fn chern_class(&self, i: u32) -> Result<GradedPolynomial> {
        if i as u64 > self.rank {
            return Err(Error::DegreeOverflow { bundle: self.to_string(), degree: i, rank: self.rank });
        }
        self.ring.check_degree(i)?;
        Ok(self.total_chern(i).into_coeffs().pop().expect("series has degree i"))
    }

    fn fmt_node(&self, node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match node {
            Node::Zero => f.write_str("0"),
            Node::Slot(k) => f.write_str(&self.ring.slot(*k).name),
            Node::Dual(inner) => match &**inner {
                Node::Slot(k) => write!(f, "{}~", self.ring.slot(*k).name),
                other => {
                    f.write_str("(")?;
                    self.fmt_node(other, f)?;
                    f.write_str(")~")
                }
            },
            Node::Sum(a, b) => {
                f.write_str("(")?;
                self.fmt_node(a, f)?;
                f.write_str(" + ")?;
                self.fmt_node(b, f)?;
                f.write_str(")")
            }
            Node::TensorLine(a, l) => {
                f.write_str("(")?;
                self.fmt_node(a, f)?;
                f.write_str(" (x) ")?;
                self.fmt_node(l, f)?;
                f.write_str(")")
            }
            Node::SymPower(a, k) => {
                write!(f, "Sym^{k}(")?;
                self.fmt_node(a, f)?;
                f.write_str(")")
            }
            Node::Jets { source, target, order } => {
                write!(f, "J^{order}(")?;
                self.fmt_node(source, f)?;
                f.write_str(", ")?;
                self.fmt_node(target, f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for FormalBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(&self.node, f)
    }
}

fn sym_rank(rank: u64, k: u32) -> u64 {
    if k == 0 {
        return 1;
    }
    if rank == 0 {
        return 0;
    }
    binomial(rank + k as u64 - 1, k as u64)
}

fn node_chern(ring: &Arc<BundleRing>, node: &Node, up_to: u32) -> Vec<GradedPolynomial> {
    let zero = GradedPolynomial::zero(ring);
    match node {
        Node::Zero => PowerSeriesSlice::unit(&zero, up_to).into_coeffs(),
        Node::Slot(k) => {
            let rank = ring.slot(*k).rank;
            (0..=up_to)
                .map(|i| if i <= rank { GradedPolynomial::chern(ring, *k, i).expect("in range") } else { zero.clone() })
                .collect()
        }
        Node::Dual(inner) => PowerSeriesSlice::new(node_chern(ring, inner, up_to)).alternate().into_coeffs(),
        Node::Sum(a, b) => {
            let ca = PowerSeriesSlice::new(node_chern(ring, a, up_to));
            let cb = PowerSeriesSlice::new(node_chern(ring, b, up_to));
            truncated_series_product(&ca, &cb, up_to)
        }
        _ => {
            let roots = node_roots(ring, node);
            chern_from_roots(ring, &roots, up_to)
        }
    }
}

fn truncated_series_product(
    a: &PowerSeriesSlice<GradedPolynomial>,
    b: &PowerSeriesSlice<GradedPolynomial>,
    up_to: u32,
) -> Vec<GradedPolynomial> {
    a.mul(b).into_coeffs().into_iter().take(up_to as usize + 1).collect()
}

/// Chern roots as integer linear forms in the primitive roots.
fn node_roots(ring: &BundleRing, node: &Node) -> Vec<Vec<i64>> {
    let n = ring.nvars();
    match node {
        Node::Zero => Vec::new(),
        Node::Slot(k) => (0..ring.slot(*k).rank as usize)
            .map(|j| {
                let mut v = vec![0; n];
                v[ring.offset(*k) + j] = 1;
                v
            })
            .collect(),
        Node::Dual(inner) => node_roots(ring, inner).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(),
        Node::Sum(a, b) => {
            let mut r = node_roots(ring, a);
            r.extend(node_roots(ring, b));
            r
        }
        Node::TensorLine(a, l) => tensor_roots(&node_roots(ring, a), &node_roots(ring, l)),
        Node::SymPower(a, k) => sym_roots(&node_roots(ring, a), *k, n),
        Node::Jets { source, target, order } => {
            let dual: Vec<Vec<i64>> = node_roots(ring, source).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
            let mut jet = Vec::new();
            for i in 1..=*order {
                jet.extend(sym_roots(&dual, i, n));
            }
            tensor_roots(&jet, &node_roots(ring, target))
        }
    }
}

fn tensor_roots(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect())).collect()
}

// Sums over multisets of size k.
fn sym_roots(roots: &[Vec<i64>], k: u32, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn rec(roots: &[Vec<i64>], start: usize, left: u32, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..roots.len() {
            for (a, r) in acc.iter_mut().zip(&roots[i]) {
                *a += r;
            }
            rec(roots, i, left - 1, acc, out);
            for (a, r) in acc.iter_mut().zip(&roots[i]) {
                *a -= r;
            }
        }
    }
    rec(roots, 0, k, &mut vec![0; n], &mut out);
    out
}

fn linear_form(n: usize, form: &[i64]) -> Poly {
    Poly::from_terms(
        n,
        form.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, BigInt::from(c))
        }),
    )
}

fn chern_from_roots(ring: &Arc<BundleRing>, roots: &[Vec<i64>], up_to: u32) -> Vec<GradedPolynomial> {
    let n = ring.nvars();
    let ones = vec![1; n];
    let mut total = Poly::one(n);
    for r in roots {
        let factor = Poly::one(n).add_ref(&linear_form(n, r));
        total = total.mul_truncated(&factor, up_to, &ones);
    }
    let mut reducer = SymmetricReducer::new(ring);
    (0..=up_to).map(|d| reducer.reduce(&total.homogeneous_part(d, &ones))).collect()
}

/// Rewrites a polynomial in Chern roots, symmetric within each slot, as a
/// polynomial in the slots' Chern classes by peeling off lex-leading terms.
struct SymmetricReducer<'a> {
    ring: &'a Arc<BundleRing>,
    elementary: Vec<Vec<Poly>>,
    expansions: HashMap<Monomial, Poly>,
}

impl<'a> SymmetricReducer<'a> {
    fn new(ring: &'a Arc<BundleRing>) -> Self {
        let n = ring.nvars();
        let elementary = ring
            .slots()
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let vars: Vec<Poly> = (0..s.rank as usize).map(|j| Poly::var(n, ring.offset(k) + j)).collect();
                // e_i via prod (1 + x_j t)
                let mut e = vec![Poly::one(n)];
                for x in &vars {
                    let mut next = e.clone();
                    next.push(Poly::zero(n));
                    for i in 1..next.len() {
                        next[i] = next[i].add_ref(&e[i - 1].mul_ref(x));
                    }
                    e = next;
                }
                e
            })
            .collect();
        Self { ring, elementary, expansions: HashMap::new() }
    }

    fn expand(&mut self, chern_exps: &Monomial) -> Poly {
        if let Some(p) = self.expansions.get(chern_exps) {
            return p.clone();
        }
        let n = self.ring.nvars();
        let mut acc = Poly::one(n);
        for (k, s) in self.ring.slots().iter().enumerate() {
            for i in 1..=s.rank {
                let e = chern_exps[self.ring.chern_var(k, i)];
                if e > 0 {
                    acc = acc.mul_ref(&self.elementary[k][i as usize].pow(e));
                }
            }
        }
        self.expansions.insert(chern_exps.clone(), acc.clone());
        acc
    }

    fn reduce(&mut self, p: &Poly) -> GradedPolynomial {
        let n = self.ring.nvars();
        let mut rest = p.clone();
        let mut out = Poly::zero(n);
        while let Some((lead, c)) = rest.terms().iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let mut chern_exps = vec![0u32; n];
            for (k, s) in self.ring.slots().iter().enumerate() {
                let seg = self.ring.segment(k, &lead);
                assert!(seg.windows(2).all(|w| w[0] >= w[1]), "root polynomial is not symmetric in slot {}", s.name);
                for i in 1..=s.rank as usize {
                    let next = seg.get(i).copied().unwrap_or(0);
                    chern_exps[self.ring.chern_var(k, i as u32)] = seg[i - 1] - next;
                }
            }
            let expansion = self.expand(&chern_exps);
            rest = rest.sub_ref(&expansion.scale(&c));
            out.add_term(chern_exps, c);
        }
        GradedPolynomial::from_poly(self.ring, out)
    }
}

/// Chern series of the virtual bundle `e - f`, i.e. `c(e) / c(f)`, up to `up_to`.
pub fn virtual_chern(e: &FormalBundle, f: &FormalBundle, up_to: u32) -> Result<PowerSeriesSlice<GradedPolynomial>> {
    e.check_ring(f)?;
    e.ring.check_degree(up_to)?;
    Ok(e.total_chern(up_to).mul(&f.total_chern(up_to).inverse()))
}

/// Segre series `sum_i S_i(e - f) = prod_b (1 - b) / prod_a (1 - a)` where `a`
/// runs over the roots of `e` and `b` over the roots of `f`.
pub fn segre_series(e: &FormalBundle, f: &FormalBundle, up_to: u32) -> Result<PowerSeriesSlice<GradedPolynomial>> {
    e.check_ring(f)?;
    e.ring.check_degree(up_to)?;
    let numerator = f.total_chern(up_to).alternate();
    let denominator = e.total_chern(up_to).alternate();
    Ok(numerator.mul(&denominator.inverse()))
}

/// Schur function of a virtual bundle, `S_I(e - f) = det(S_{i_p - p + q}(e - f))`.
pub fn super_schur(i: &Partition, e: &FormalBundle, f: &FormalBundle) -> Result<GradedPolynomial> {
    e.check_ring(f)?;
    e.ring.check_degree(i.weight())?;
    let needed = if i.is_empty() { 0 } else { i.part(0) + i.len() as u32 - 1 };
    let series = segre_series(e, f, needed)?;
    jacobi_trudi(i, &series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn setup() -> (Arc<BundleRing>, FormalBundle, FormalBundle, FormalBundle) {
        let r = BundleRing::new(&[("E", 2), ("F", 3), ("L", 1)]).unwrap();
        let e = FormalBundle::slot(&r, "E").unwrap();
        let f = FormalBundle::slot(&r, "F").unwrap();
        let l = FormalBundle::slot(&r, "L").unwrap();
        (r, e, f, l)
    }

    fn c(r: &Arc<BundleRing>, name: &str, i: u32) -> GradedPolynomial {
        GradedPolynomial::chern(r, r.slot_index(name).unwrap(), i).unwrap()
    }

    fn int(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn ranks_of_constructed_bundles() {
        let (_, e, f, l) = setup();
        assert_eq!(e.dual().rank(), 2);
        assert_eq!(e.sum(&f).unwrap().rank(), 5);
        assert_eq!(e.sym_power(2).rank(), 3);
        assert_eq!(f.sym_power(3).rank(), 10);
        assert_eq!(e.tensor_line(&l).unwrap().rank(), 2);
        // J^2(E, F) = (E* + Sym^2 E*) (x) F
        assert_eq!(e.jets(&f, 2).unwrap().rank(), 3 * (2 + 3));
        assert!(matches!(e.tensor_line(&f), Err(Error::NotALineBundle(_))));
    }

    #[test]
    fn chern_class_examples() {
        let (r, e, _, l) = setup();
        assert_eq!(e.dual().chern_class(1).unwrap(), c(&r, "E", 1).neg_ref());
        assert_eq!(e.sym_power(2).chern_class(1).unwrap(), c(&r, "E", 1).scale(&int(3)));
        assert_eq!(e.tensor_line(&l).unwrap().chern_class(1).unwrap(), c(&r, "E", 1).add_ref(&c(&r, "L", 1).scale(&int(2))));
        assert_eq!(e.chern_class(0).unwrap(), GradedPolynomial::one(&r));
        assert!(matches!(e.chern_class(3), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn sym_square_of_rank_two_top_class() {
        // roots 2a1, a1+a2, 2a2: c3 = 4 a1 a2 (a1 + a2) = 4 c1 c2
        let (r, e, _, _) = setup();
        let c3 = e.sym_power(2).chern_class(3).unwrap();
        assert_eq!(c3, c(&r, "E", 1).mul_ref(&c(&r, "E", 2)).scale(&int(4)));
        // c2 = 2a1(a1+a2) + 4a1a2 + 2a2(a1+a2) = 2c1^2 + 4c2
        let c2 = e.sym_power(2).chern_class(2).unwrap();
        assert_eq!(c2, c(&r, "E", 1).pow(2).scale(&int(2)).add_ref(&c(&r, "E", 2).scale(&int(4))));
    }

    #[test]
    fn sum_is_multiplicative() {
        let (r, e, f, l) = setup();
        let lhs = e.sum(&f).unwrap().sum(&l).unwrap().total_chern(6);
        let rhs = e.total_chern(6).mul(&f.total_chern(6)).mul(&l.total_chern(6));
        assert_eq!(lhs, rhs);
        // the root route agrees with the structural one
        let twisted = e.sum(&f).unwrap().tensor_line(&l).unwrap();
        let split = e.tensor_line(&l).unwrap().sum(&f.tensor_line(&l).unwrap()).unwrap();
        assert_eq!(twisted.total_chern(5), split.total_chern(5));
        let _ = r;
    }

    #[test]
    fn jets_of_order_one_are_hom() {
        // J^1(E, L) = E* (x) L
        let (_, e, _, l) = setup();
        assert_eq!(e.jets(&l, 1).unwrap().total_chern(2), e.dual().tensor_line(&l).unwrap().total_chern(2));
    }

    #[test]
    fn segre_examples() {
        let (r, e, _, l) = setup();
        let unit = segre_series(&e, &e, 4).unwrap();
        assert_eq!(unit, PowerSeriesSlice::unit(&GradedPolynomial::one(&r), 4));
        let zero = FormalBundle::zero(&r);
        let geo = segre_series(&l, &zero, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(geo.coeff(k).unwrap(), &c(&r, "L", 1).pow(k));
        }
        let s = segre_series(&zero, &l, 3).unwrap();
        assert_eq!(s.coeffs(), &[GradedPolynomial::one(&r), c(&r, "L", 1).neg_ref(), GradedPolynomial::zero(&r), GradedPolynomial::zero(&r)]);
    }

    #[test]
    fn super_schur_examples() {
        let (r, e, f, _) = setup();
        let zero = FormalBundle::zero(&r);
        assert_eq!(super_schur(&part![1, 1], &e, &zero).unwrap(), c(&r, "E", 2));
        assert!(super_schur(&part![1], &e, &e).unwrap().is_zero());
        let s = segre_series(&e, &f, 5).unwrap();
        for k in 0..=5 {
            assert_eq!(&super_schur(&part![k], &e, &f).unwrap(), s.coeff(k).unwrap());
        }
        assert!(super_schur(&part![1, 1, 1], &e, &zero).unwrap().is_zero());
    }

    #[test]
    fn duality_sign_law() {
        let (_, e, f, _) = setup();
        for w in 0..=5 {
            for i in Partition::of_weight(w) {
                let plain = super_schur(&i, &e, &f).unwrap();
                let dual = super_schur(&i, &e.dual(), &f.dual()).unwrap();
                let sign = if w % 2 == 0 { 1 } else { -1 };
                assert_eq!(dual, plain.scale(&int(sign)), "I={i}");
            }
        }
    }

    #[test]
    fn virtual_chern_inverts() {
        let (r, e, f, _) = setup();
        let series = virtual_chern(&e, &f, 5).unwrap().mul(&f.total_chern(5));
        assert_eq!(series, e.total_chern(5));
        let _ = r;
    }

    #[test]
    fn working_degree_bound_rejects_long_series() {
        let r = BundleRing::with_working_degree(&[("E", 2)], Some(3)).unwrap();
        let e = FormalBundle::slot(&r, "E").unwrap();
        assert!(segre_series(&e, &FormalBundle::zero(&r), 3).is_ok());
        assert!(matches!(segre_series(&e, &FormalBundle::zero(&r), 4), Err(Error::WorkingDegreeExceeded { .. })));
        assert!(matches!(super_schur(&part![2, 2], &e, &FormalBundle::zero(&r)), Err(Error::WorkingDegreeExceeded { .. })));
    }
}
