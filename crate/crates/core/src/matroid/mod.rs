//! Matroids stored as explicit basis families, and the invariant
//! `F(M) = sum over bases B of F(P_B)`.
//!
//! Ground-set element `i` (1-based) is bit `i - 1` of a `u64` mask, so
//! matroids have at most 64 elements.

pub mod rank2;
pub mod sample;
pub mod split;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comb::{Composition, Partition, SetPartition};
use crate::error::{Error, Result};
use crate::poset::{qsym_of_poset_with_limit, LabeledPoset, DEFAULT_ENUMERATION_LIMIT};
use crate::qsym::{in_vnr, supp, Basis, QSymElement};

const MAX_GROUND: usize = 64;

pub(crate) fn mask_of(items: &[usize]) -> u64 {
    items.iter().fold(0, |m, &x| m | (1u64 << (x - 1)))
}

pub(crate) fn elements_of(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize + 1);
        mask &= mask - 1;
    }
    out
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Packs the bits of `mask` that lie in `keep` into the low bits, in order.
fn compress(mask: u64, keep: u64) -> u64 {
    let mut out = 0;
    let mut bit = 0;
    let mut k = keep;
    while k != 0 {
        let i = k.trailing_zeros();
        k &= k - 1;
        if mask & (1 << i) != 0 {
            out |= 1 << bit;
        }
        bit += 1;
    }
    out
}

/// First pair `(B1, B2)` and element `e` of `B1 - B2` with no exchange
/// partner, if any. `bases` must be sorted.
fn exchange_violation(bases: &[u64], pairs_from: &[u64]) -> Option<(u64, u64, usize)> {
    for &b1 in pairs_from {
        for &b2 in bases {
            let mut out = b1 & !b2;
            while out != 0 {
                let e = out.trailing_zeros();
                out &= out - 1;
                let without = b1 & !(1 << e);
                let mut inn = b2 & !b1;
                let mut ok = false;
                while inn != 0 {
                    let f = inn.trailing_zeros();
                    inn &= inn - 1;
                    if bases.binary_search(&(without | (1 << f))).is_ok() {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Some((b1, b2, e as usize + 1));
                }
            }
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
}

impl Matroid {
    /// Validates equal cardinality and the basis-exchange axiom.
    pub fn new(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if let Some(x) = bases.iter().flatten().find(|&&x| x == 0 || x > n) {
            return Err(Error::InvalidMatroid(format!("element {x} is outside 1..={n}")));
        }
        for b in bases {
            let set: BTreeSet<usize> = b.iter().copied().collect();
            if set.len() != b.len() {
                return Err(Error::InvalidMatroid(format!("basis {b:?} repeats an element")));
            }
        }
        if n > MAX_GROUND {
            return Err(Error::EnumerationLimit {
                size: n,
                limit: MAX_GROUND,
            });
        }
        Matroid::from_masks(n, bases.iter().map(|b| mask_of(b)).collect())
    }

    pub fn from_masks(n: usize, mut bases: Vec<u64>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::EnumerationLimit {
                size: n,
                limit: MAX_GROUND,
            });
        }
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::InvalidMatroid("a matroid needs at least one basis".into()));
        };
        if bases.iter().any(|&b| b & !full_mask(n) != 0) {
            return Err(Error::InvalidMatroid(format!("a basis leaves the ground set 1..={n}")));
        }
        let rank = first.count_ones() as usize;
        if let Some(&b) = bases.iter().find(|b| b.count_ones() as usize != rank) {
            return Err(Error::InvalidMatroid(format!(
                "bases {:?} and {:?} have different sizes",
                elements_of(first),
                elements_of(b)
            )));
        }
        if let Some((b1, b2, e)) = exchange_violation(&bases, &bases) {
            return Err(Error::InvalidMatroid(format!(
                "exchange fails for {:?}, {:?} at element {e}",
                elements_of(b1),
                elements_of(b2)
            )));
        }
        Ok(Matroid { n, rank, bases })
    }

    pub(crate) fn from_masks_unchecked(n: usize, mut bases: Vec<u64>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases.first().map_or(0, |b| b.count_ones() as usize);
        Matroid { n, rank, bases }
    }

    /// `U_{r,n}`: every `r`-subset of `[n]` is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n || n > MAX_GROUND {
            return Err(Error::OutOfRange(format!("U_({r},{n}) needs 0 <= r <= n <= 64")));
        }
        let mut bases = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<u64>) {
            if cur.len() == r {
                out.push(mask_of(cur));
                return;
            }
            for x in start..=n {
                if n - x + 1 < r - cur.len() {
                    break;
                }
                cur.push(x);
                rec(x + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(1, n, r, &mut cur, &mut bases);
        Ok(Matroid::from_masks_unchecked(n, bases))
    }

    /// Rank-two matroid on `[n]` whose bases are the pairs meeting two
    /// different blocks; elements outside every block are loops.
    pub fn from_rank2_blocks(n: usize, blocks: &[BTreeSet<usize>]) -> Result<Self> {
        let masks: Vec<u64> = blocks.iter().map(|b| mask_of(&b.iter().copied().collect::<Vec<_>>())).collect();
        let mut bases = Vec::new();
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                for x in elements_of(a) {
                    for y in elements_of(b) {
                        bases.push((1u64 << (x - 1)) | (1u64 << (y - 1)));
                    }
                }
            }
        }
        if bases.is_empty() {
            return Err(Error::InvalidPartition("need at least two nonempty blocks".into()));
        }
        if blocks.iter().flatten().any(|&x| x == 0 || x > n) {
            return Err(Error::InvalidPartition(format!("block element outside 1..={n}")));
        }
        Ok(Matroid::from_masks_unchecked(n, bases))
    }

    /// `M_lambda`: blocks are consecutive intervals taken in the order of
    /// the (decreasing) parts.
    pub fn rank2_from_partition(lambda: &Partition) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::InvalidPartition(format!("{lambda} needs at least two parts")));
        }
        Matroid::from_rank2_blocks(lambda.weight(), &interval_blocks(lambda.parts()))
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn basis_masks(&self) -> &[u64] {
        &self.bases
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| elements_of(b)).collect()
    }

    pub fn is_basis(&self, items: &[usize]) -> bool {
        items.iter().all(|&x| x >= 1 && x <= self.n) && self.bases.binary_search(&mask_of(items)).is_ok()
    }

    fn contains_mask(&self, b: u64) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    fn loop_mask(&self) -> u64 {
        full_mask(self.n) & !self.bases.iter().fold(0, |a, &b| a | b)
    }

    fn coloop_mask(&self) -> u64 {
        self.bases.iter().fold(full_mask(self.n), |a, &b| a & b)
    }

    pub fn loops(&self) -> Vec<usize> {
        elements_of(self.loop_mask())
    }

    pub fn coloops(&self) -> Vec<usize> {
        elements_of(self.coloop_mask())
    }

    pub fn is_loopless(&self) -> bool {
        self.loop_mask() == 0
    }

    pub fn dual(&self) -> Matroid {
        let full = full_mask(self.n);
        Matroid::from_masks_unchecked(self.n, self.bases.iter().map(|&b| full & !b).collect())
    }

    /// `M1 ⊕ M2` with the second ground set shifted past the first.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(Error::EnumerationLimit {
                size: n,
                limit: MAX_GROUND,
            });
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | (b << self.n));
            }
        }
        Ok(Matroid::from_masks_unchecked(n, bases))
    }

    pub fn with_loops(&self, k: usize) -> Result<Matroid> {
        self.direct_sum(&Matroid::uniform(0, k)?)
    }

    pub fn with_coloops(&self, k: usize) -> Result<Matroid> {
        self.direct_sum(&Matroid::uniform(k, k)?)
    }

    fn subset_mask(&self, a: &BTreeSet<usize>) -> Result<u64> {
        if let Some(&x) = a.iter().find(|&&x| x == 0 || x > self.n) {
            return Err(Error::OutOfRange(format!("{x} is not in 1..={}", self.n)));
        }
        Ok(mask_of(&a.iter().copied().collect::<Vec<_>>()))
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, a: &BTreeSet<usize>) -> Result<usize> {
        let m = self.subset_mask(a)?;
        Ok(self.bases.iter().map(|b| (b & m).count_ones() as usize).max().unwrap_or(0))
    }

    /// `M|_A`, relabeled onto `1..=|A|` in increasing order.
    pub fn restriction(&self, a: &BTreeSet<usize>) -> Result<Matroid> {
        let m = self.subset_mask(a)?;
        let r = self.rank_of(a)? as u32;
        let bases = self
            .bases
            .iter()
            .filter(|b| (*b & m).count_ones() == r)
            .map(|b| compress(b & m, m))
            .collect();
        Ok(Matroid::from_masks_unchecked(a.len(), bases))
    }

    /// `M/A`, relabeled onto `1..=n-|A|` in increasing order of the
    /// remaining elements.
    pub fn contraction(&self, a: &BTreeSet<usize>) -> Result<Matroid> {
        let m = self.subset_mask(a)?;
        let r = self.rank_of(a)? as u32;
        let rest = full_mask(self.n) & !m;
        let bases = self
            .bases
            .iter()
            .filter(|b| (*b & m).count_ones() == r)
            .map(|b| compress(b & rest, rest))
            .collect();
        Ok(Matroid::from_masks_unchecked(self.n - a.len(), bases))
    }

    /// Connected components. Two elements share a component iff some
    /// circuit contains both; the fundamental circuits of a single basis
    /// already generate this relation.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let b = self.bases[0];
        for e in elements_of(b) {
            for f in elements_of(full_mask(self.n) & !b) {
                if self.contains_mask((b & !(1 << (e - 1))) | (1 << (f - 1))) {
                    let (x, y) = (find(&mut parent, e - 1), find(&mut parent, f - 1));
                    parent[x] = y;
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for x in 0..self.n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().insert(x + 1);
        }
        let mut out: Vec<BTreeSet<usize>> = groups.into_values().collect();
        out.sort_by_key(|c| *c.first().expect("nonempty"));
        out
    }

    /// `dim Q(M) = n - (number of components)`.
    pub fn polytope_dim(&self) -> usize {
        self.n - self.components().len()
    }

    /// Two vertices of the base polytope span an edge iff the bases differ
    /// by a single exchange.
    pub fn polytope_edge(&self, b1: &[usize], b2: &[usize]) -> Result<bool> {
        for b in [b1, b2] {
            if !self.is_basis(b) {
                return Err(Error::NotABasis(b.to_vec()));
            }
        }
        Ok((mask_of(b1) ^ mask_of(b2)).count_ones() == 2)
    }

    fn base_poset_with_labels(&self, b: u64, high: u64) -> LabeledPoset {
        // elements in `high` get the top labels, the rest the bottom ones,
        // each side in increasing ground-set order
        let low = full_mask(self.n) & !high;
        let mut label = vec![0; self.n + 1];
        for (i, e) in elements_of(low).into_iter().enumerate() {
            label[e] = i + 1;
        }
        let base_offset = low.count_ones() as usize;
        for (i, e) in elements_of(high).into_iter().enumerate() {
            label[e] = base_offset + i + 1;
        }
        let mut rel = Vec::new();
        for e in elements_of(b) {
            for f in elements_of(full_mask(self.n) & !b) {
                if self.contains_mask((b & !(1 << (e - 1))) | (1 << (f - 1))) {
                    rel.push((label[e], label[f]));
                }
            }
        }
        LabeledPoset::from_relations(1..=self.n, &rel).expect("bipartite relations are acyclic")
    }

    /// `P_B`: `e < e'` iff `e` is in `B`, `e'` is not, and swapping them
    /// gives a basis. Elements of `B` carry the labels `n-r+1..=n` and the
    /// others `1..=n-r`, both in increasing ground-set order; the label of
    /// element `i` is `base_poset_labels(B)[i - 1]`.
    pub fn base_poset(&self, basis: &[usize]) -> Result<LabeledPoset> {
        if !self.is_basis(basis) {
            return Err(Error::NotABasis(basis.to_vec()));
        }
        let b = mask_of(basis);
        Ok(self.base_poset_with_labels(b, b))
    }

    pub fn base_poset_labels(&self, basis: &[usize]) -> Result<Vec<usize>> {
        if !self.is_basis(basis) {
            return Err(Error::NotABasis(basis.to_vec()));
        }
        let b = mask_of(basis);
        let low = full_mask(self.n) & !b;
        let mut label = vec![0; self.n];
        for (i, e) in elements_of(low).into_iter().enumerate() {
            label[e - 1] = i + 1;
        }
        for (i, e) in elements_of(b).into_iter().enumerate() {
            label[e - 1] = self.n - self.rank + i + 1;
        }
        Ok(label)
    }

    /// `F(M)` in the `N` basis. Each `P_B` is relabeled so that its minimal
    /// elements (the basis plus any loops, which are isolated) carry the high
    /// labels; then `{minimal, rest}` is antichain-inducing, every induced
    /// ordered partition is alternating, and `F(P_B)` is the sum of
    /// `N_{type(K)}` over them.
    pub fn qsym(&self) -> QSymElement {
        let loops = self.loop_mask();
        let full = full_mask(self.n);
        let mut counts: BTreeMap<Composition, u64> = BTreeMap::new();
        for &b in &self.bases {
            let high = b | loops;
            let p = self.base_poset_with_labels(b, high);
            let lows = full & !high;
            let t1: BTreeSet<usize> = (lows.count_ones() as usize + 1..=self.n).collect();
            let t2: BTreeSet<usize> = (1..=lows.count_ones() as usize).collect();
            let blocks: Vec<BTreeSet<usize>> = [t1, t2].into_iter().filter(|s| !s.is_empty()).collect();
            let t = SetPartition::new(blocks).expect("two disjoint blocks");
            for (ty, k) in p.decomposition_type_counts(&t).expect("T covers P_B") {
                *counts.entry(ty).or_insert(0) += k;
            }
        }
        QSymElement::from_integer_terms(Basis::NBasis, counts)
    }

    /// `F(M)` from the definition: linear extensions of every base poset,
    /// converted to the `N` basis.
    pub fn qsym_by_extensions(&self) -> Result<QSymElement> {
        self.qsym_by_extensions_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn qsym_by_extensions_with_limit(&self, limit: usize) -> Result<QSymElement> {
        let mut total = QSymElement::zero(Basis::Fundamental);
        for b in self.bases() {
            total = &total + &qsym_of_poset_with_limit(&self.base_poset(&b)?, limit)?;
        }
        Ok(total.convert(Basis::NBasis))
    }
}

/// Consecutive interval blocks `{1..p1}, {p1+1..p1+p2}, ...`.
pub fn interval_blocks(parts: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut next = 1;
    parts
        .iter()
        .map(|&p| {
            let b = (next..next + p).collect();
            next += p;
            b
        })
        .collect()
}

/// `F(M)` in the `N` basis.
pub fn qsym_of_matroid(m: &Matroid) -> QSymElement {
    m.qsym()
}

/// The largest last part among odd-length compositions in the support of
/// `q`; for `q = F(M)` this is the number of loops plus coloops of `M`.
pub fn loops_coloops_from_qsym(q: &QSymElement) -> usize {
    supp(q)
        .iter()
        .filter(|a| a.len() % 2 == 1)
        .filter_map(Composition::last_part)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    /// `F(M*)` has the monomial expansion of `F(M)` with every composition
    /// reversed.
    pub monomial_form: bool,
    /// `M` has neither loops nor coloops, so the `N` form is expected.
    pub n_form_applicable: bool,
    /// `F(M*)` has the `N` expansion of `F(M)` with every composition
    /// reversed.
    pub n_form: bool,
    /// `F(M*)` lies in `V^n_{n - r + c}` with `c` the number of coloops.
    pub rank_space_shift: bool,
}

impl DualityReport {
    /// All checks that are expected to hold for this matroid did hold.
    pub fn consistent(&self) -> bool {
        self.monomial_form && self.rank_space_shift && (!self.n_form_applicable || self.n_form)
    }
}

fn reversed_terms(q: &QSymElement) -> QSymElement {
    QSymElement::from_terms(q.basis(), q.terms().map(|(a, c)| (a.reversed(), c.clone())))
}

pub fn duality_check(m: &Matroid) -> DualityReport {
    let f = m.qsym();
    let fd = m.dual().qsym();
    let monomial_form = reversed_terms(&f.convert(Basis::Monomial)) == fd.convert(Basis::Monomial);
    let n_form = reversed_terms(&f) == fd;
    let c = m.coloops().len();
    DualityReport {
        monomial_form,
        n_form_applicable: m.loops().is_empty() && m.coloops().is_empty(),
        n_form,
        rank_space_shift: in_vnr(&fd, m.n, m.n - m.rank + c),
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, bases={:?})", self.n, self.bases())
    }
}

#[derive(Serialize, Deserialize)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatroidJson {
            n: self.n,
            bases: self.bases(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatroidJson::deserialize(d)?;
        Matroid::new(raw.n, &raw.bases).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::Composition;
    use crate::qsym::rational;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn binom(n: u64, k: u64) -> i64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
    }

    /// Minimal dependent sets, by brute force over all subsets.
    fn circuits(m: &Matroid) -> Vec<u64> {
        let independent = |s: u64| m.basis_masks().iter().any(|&b| s & !b == 0);
        let mut out: Vec<u64> = Vec::new();
        let mut subsets: Vec<u64> = (0..1u64 << m.ground_set_size()).collect();
        subsets.sort_by_key(|s| s.count_ones());
        for s in subsets {
            if !independent(s) && out.iter().all(|&c| c & !s != 0) {
                out.push(s);
            }
        }
        out
    }

    fn components_by_circuits(m: &Matroid) -> Vec<BTreeSet<usize>> {
        let n = m.ground_set_size();
        let mut comp: Vec<u64> = (0..n).map(|i| 1 << i).collect();
        for c in circuits(m) {
            let merged = comp.iter().filter(|&&g| g & c != 0).fold(c, |a, &g| a | g);
            comp.retain(|&g| g & c == 0);
            comp.push(merged);
        }
        let mut out: Vec<BTreeSet<usize>> = comp.into_iter().map(|g| elements_of(g).into_iter().collect()).collect();
        out.sort_by_key(|s| *s.first().unwrap());
        out
    }

    #[test]
    fn validation() {
        assert!(Matroid::new(3, &[vec![1, 2], vec![3]]).is_err());
        assert!(Matroid::new(3, &[]).is_err());
        assert!(Matroid::new(3, &[vec![1, 4]]).is_err());
        // {1,2},{3,4} alone violates exchange
        assert!(matches!(Matroid::new(4, &[vec![1, 2], vec![3, 4]]), Err(Error::InvalidMatroid(_))));
        assert!(Matroid::new(4, &[vec![1, 2], vec![1, 3]]).is_ok());
    }

    #[test]
    fn uniform_and_dual() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.num_bases(), 6);
        assert_eq!(u.dual(), Matroid::uniform(2, 4).unwrap());
        assert_eq!(Matroid::uniform(1, 5).unwrap().dual(), Matroid::uniform(4, 5).unwrap());
        assert_eq!(Matroid::uniform(1, 3).unwrap().bases(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(Matroid::uniform(0, 2).unwrap().loops(), vec![1, 2]);
        assert_eq!(Matroid::uniform(2, 2).unwrap().coloops(), vec![1, 2]);
    }

    #[test]
    fn rank_two_from_partition() {
        let lam: Partition = "32".parse().unwrap();
        let m = Matroid::rank2_from_partition(&lam).unwrap();
        let expected = Matroid::uniform(1, 3).unwrap().direct_sum(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert_eq!(m, expected);
        for lam in Partition::all_of(7).into_iter().filter(|p| p.len() >= 2) {
            let m = Matroid::rank2_from_partition(&lam).unwrap();
            let p = lam.parts();
            let pairs: usize = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).map(|(i, j)| p[i] * p[j]).sum();
            assert_eq!(m.num_bases(), pairs);
            assert!(Matroid::from_masks(m.ground_set_size(), m.basis_masks().to_vec()).is_ok());
        }
        assert!(Matroid::rank2_from_partition(&"5".parse().unwrap()).is_err());
    }

    #[test]
    fn components_match_circuit_oracle() {
        let a = Matroid::uniform(1, 2).unwrap().direct_sum(&Matroid::uniform(1, 3).unwrap()).unwrap();
        assert_eq!(a.components().len(), 2);
        let samples = [
            Matroid::uniform(2, 4).unwrap(),
            a.clone(),
            a.with_loops(1).unwrap(),
            a.with_coloops(2).unwrap(),
            Matroid::rank2_from_partition(&"2211".parse().unwrap()).unwrap(),
            Matroid::new(4, &[vec![1, 2], vec![1, 3]]).unwrap(),
        ];
        for m in samples {
            assert_eq!(m.components(), components_by_circuits(&m), "{m:?}");
        }
    }

    #[test]
    fn restriction_contraction_ranks() {
        let m = Matroid::rank2_from_partition(&"321".parse().unwrap()).unwrap();
        for mask in 0..1u64 << 6 {
            let a: BTreeSet<usize> = elements_of(mask).into_iter().collect();
            let r = m.restriction(&a).unwrap();
            let k = m.contraction(&a).unwrap();
            assert_eq!(r.rank() + k.rank(), m.rank());
            assert_eq!(r.ground_set_size() + k.ground_set_size(), 6);
        }
        let r = m.restriction(&set(&[1, 2, 3])).unwrap();
        assert_eq!(r, Matroid::uniform(1, 3).unwrap());
    }

    #[test]
    fn polytope_facts() {
        let m = Matroid::rank2_from_partition(&"32".parse().unwrap()).unwrap();
        assert_eq!(m.polytope_dim(), 3);
        let u = Matroid::uniform(2, 4).unwrap();
        assert!(u.polytope_edge(&[1, 2], &[1, 3]).unwrap());
        assert!(!u.polytope_edge(&[1, 2], &[3, 4]).unwrap());
        assert!(u.polytope_edge(&[1, 2], &[1, 5]).is_err());
        assert_eq!(u.polytope_dim(), 3);
    }

    #[test]
    fn base_poset_examples() {
        let u = Matroid::uniform(2, 4).unwrap();
        let p = u.base_poset(&[1, 3]).unwrap();
        // base elements 1,3 get labels 3,4; cobase 2,4 get 1,2
        assert_eq!(u.base_poset_labels(&[1, 3]).unwrap(), vec![3, 1, 4, 2]);
        assert_eq!(p.covers(), &[(3, 1), (3, 2), (4, 1), (4, 2)]);
        let all_coloops = Matroid::uniform(3, 3).unwrap();
        assert!(all_coloops.base_poset(&[1, 2, 3]).unwrap().covers().is_empty());
        assert!(u.base_poset(&[1]).is_err());
    }

    #[test]
    fn uniform_invariant() {
        for n in 1..=7 {
            for r in 0..=n {
                let f = Matroid::uniform(r, n).unwrap().qsym();
                let expected = QSymElement::from_terms(
                    Basis::NBasis,
                    [(Composition::new([r, n - r].into_iter().filter(|&x| x > 0).collect()).unwrap(), rational(binom(n as u64, r as u64)))],
                );
                if r == 0 {
                    // all loops: N_(n)
                    assert_eq!(f, QSymElement::basis_element(Basis::NBasis, Composition::single(n)));
                } else {
                    assert_eq!(f, expected, "U_({r},{n})");
                }
            }
        }
    }

    #[test]
    fn fast_path_matches_extensions() {
        let samples = [
            Matroid::uniform(2, 5).unwrap(),
            Matroid::rank2_from_partition(&"311".parse().unwrap()).unwrap(),
            Matroid::rank2_from_partition(&"22".parse().unwrap()).unwrap().with_loops(2).unwrap(),
            Matroid::rank2_from_partition(&"21".parse().unwrap()).unwrap().with_coloops(1).unwrap().with_loops(1).unwrap(),
            Matroid::new(4, &[vec![1, 2], vec![1, 3]]).unwrap(),
            Matroid::uniform(0, 3).unwrap(),
        ];
        for m in samples {
            assert_eq!(m.qsym(), m.qsym_by_extensions().unwrap(), "{m:?}");
        }
    }

    #[test]
    fn loop_coloop_count() {
        assert_eq!(loops_coloops_from_qsym(&Matroid::uniform(1, 1).unwrap().qsym()), 1);
        assert_eq!(loops_coloops_from_qsym(&Matroid::uniform(1, 2).unwrap().qsym()), 0);
        let m = Matroid::rank2_from_partition(&"22".parse().unwrap()).unwrap();
        let with_loop = m.with_loops(1).unwrap().qsym();
        let with_coloop = m.with_coloops(1).unwrap().qsym();
        assert_eq!(with_loop, with_coloop);
        assert_eq!(loops_coloops_from_qsym(&with_loop), 1);
        let n1 = QSymElement::basis_element(Basis::NBasis, c("1"));
        assert_eq!(with_loop, crate::qsym::mul(&m.qsym(), &n1));
    }

    #[test]
    fn duality() {
        let u = Matroid::uniform(2, 5).unwrap();
        let rep = duality_check(&u);
        assert!(rep.monomial_form && rep.n_form && rep.n_form_applicable && rep.rank_space_shift);
        let with_coloop = Matroid::rank2_from_partition(&"21".parse().unwrap()).unwrap().with_coloops(1).unwrap();
        let rep = duality_check(&with_coloop);
        assert!(rep.monomial_form && !rep.n_form && !rep.n_form_applicable && rep.rank_space_shift);
        assert!(rep.consistent());
    }

    #[test]
    fn matroid_json() {
        let m: Matroid = serde_json::from_str(r#"{"n":4,"bases":[[1,2],[1,3]]}"#).unwrap();
        assert_eq!(m.loops(), vec![4]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"n":4,"bases":[[1,2],[1,3]]}"#);
        assert!(serde_json::from_str::<Matroid>(r#"{"n":4,"bases":[[1,2],[3,4]]}"#).is_err());
    }
}
