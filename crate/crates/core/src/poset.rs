//! Labeled posets, their linear extensions and the P-partition function
//! `F(P) = sum over linear extensions w of L_{C(w)}`.
//!
//! Elements are stored by index `0..n` in ascending label order; each index
//! keeps a bitmask of the indices strictly below it, so order queries during
//! enumeration are single mask operations. Posets are limited to 64 elements.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::comb::{Composition, OrderedPartition, Permutation, SetPartition};
use crate::error::{Error, Result};
use crate::qsym::{Basis, QSymElement};

/// Largest poset whose linear extensions are enumerated unless the caller
/// raises the limit explicitly.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

const MAX_ELEMENTS: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    labels: Vec<usize>,
    below: Vec<u64>,
    covers: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelingKind {
    Strict,
    Natural,
    Neither,
    /// No relations at all, so both conditions hold vacuously.
    Both,
}

impl LabeledPoset {
    /// Builds the poset generated by `relations` (pairs `x < y` of labels).
    pub fn from_relations<I>(labels: I, relations: &[(usize, usize)]) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let labels: Vec<usize> = labels.into_iter().collect();
        let set: BTreeSet<usize> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(Error::InvalidPoset("repeated label".into()));
        }
        if set.contains(&0) {
            return Err(Error::InvalidPoset("labels must be positive".into()));
        }
        if set.len() > MAX_ELEMENTS {
            return Err(Error::EnumerationLimit {
                size: set.len(),
                limit: MAX_ELEMENTS,
            });
        }
        let labels: Vec<usize> = set.into_iter().collect();
        let n = labels.len();
        let idx = |x: usize| {
            labels
                .binary_search(&x)
                .map_err(|_| Error::InvalidPoset(format!("relation mentions unknown label {x}")))
        };
        let mut below = vec![0u64; n];
        for &(x, y) in relations {
            let (i, j) = (idx(x)?, idx(y)?);
            below[j] |= 1 << i;
        }
        // transitive closure
        loop {
            let mut changed = false;
            for j in 0..n {
                let mut acc = below[j];
                let mut m = below[j];
                while m != 0 {
                    let i = m.trailing_zeros() as usize;
                    m &= m - 1;
                    acc |= below[i];
                }
                if acc != below[j] {
                    below[j] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i] & (1 << i) != 0) {
            return Err(Error::InvalidPoset(format!(
                "relations contain a cycle through {}",
                labels[i]
            )));
        }
        let mut covers = Vec::new();
        for j in 0..n {
            let mut m = below[j];
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                let mut between = below[j] & !(1 << i);
                let mut is_cover = true;
                while between != 0 {
                    let k = between.trailing_zeros() as usize;
                    between &= between - 1;
                    if below[k] & (1 << i) != 0 {
                        is_cover = false;
                        break;
                    }
                }
                if is_cover {
                    covers.push((labels[i], labels[j]));
                }
            }
        }
        covers.sort_unstable();
        Ok(LabeledPoset {
            labels,
            below,
            covers,
        })
    }

    pub fn antichain<I: IntoIterator<Item = usize>>(labels: I) -> Result<Self> {
        LabeledPoset::from_relations(labels, &[])
    }

    /// The chain `labels[0] < labels[1] < ...`.
    pub fn chain(labels: &[usize]) -> Result<Self> {
        let rel: Vec<(usize, usize)> = labels.windows(2).map(|w| (w[0], w[1])).collect();
        LabeledPoset::from_relations(labels.iter().copied(), &rel)
    }

    /// Ordinal sum of antichains: every element of `levels[i]` lies below
    /// every element of `levels[i+1]`.
    pub fn ordinal_sum_of_antichains(levels: &[BTreeSet<usize>]) -> Result<Self> {
        let mut rel = Vec::new();
        for w in levels.windows(2) {
            for &x in &w[0] {
                for &y in &w[1] {
                    rel.push((x, y));
                }
            }
        }
        LabeledPoset::from_relations(levels.iter().flatten().copied(), &rel)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Cover relations `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.index_of(label).is_some()
    }

    /// `x <_P y`
    pub fn less(&self, x: usize, y: usize) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.below[j] & (1 << i) != 0,
            _ => false,
        }
    }

    /// All strict relations `x < y`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, &m) in self.below.iter().enumerate() {
            for i in 0..self.len() {
                if m & (1 << i) != 0 {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_antichain(&self, items: &BTreeSet<usize>) -> bool {
        items
            .iter()
            .all(|&x| items.iter().all(|&y| !self.less(x, y)))
    }

    pub fn minimal_elements(&self) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&i| self.below[i] == 0)
            .map(|i| self.labels[i])
            .collect()
    }

    pub fn labeling_kind(&self) -> LabelingKind {
        let rel = self.relations();
        let strict = rel.iter().all(|&(x, y)| x > y);
        let natural = rel.iter().all(|&(x, y)| x < y);
        match (strict, natural) {
            (true, true) => LabelingKind::Both,
            (true, false) => LabelingKind::Strict,
            (false, true) => LabelingKind::Natural,
            (false, false) => LabelingKind::Neither,
        }
    }

    /// Applies `f` to every label. `f` must be injective on the labels.
    pub fn relabeled<F: Fn(usize) -> usize>(&self, f: F) -> Result<Self> {
        let rel: Vec<(usize, usize)> = self.covers.iter().map(|&(x, y)| (f(x), f(y))).collect();
        LabeledPoset::from_relations(self.labels.iter().map(|&x| f(x)), &rel)
    }

    /// `P ⊕ Q`: everything in `self` below everything in `other`.
    pub fn ordinal_sum(&self, other: &LabeledPoset) -> Result<Self> {
        if let Some(&x) = self.labels.iter().find(|&&x| other.contains(x)) {
            return Err(Error::LabelCollision(x));
        }
        let mut rel: Vec<(usize, usize)> = self.covers.clone();
        rel.extend_from_slice(&other.covers);
        for &x in &self.labels {
            for &y in &other.labels {
                rel.push((x, y));
            }
        }
        LabeledPoset::from_relations(self.labels.iter().chain(&other.labels).copied(), &rel)
    }

    /// Disjoint union with `self` relabeled order-preservingly onto
    /// `1..=|P|` and `other` onto `|P|+1..=|P|+|Q|`.
    pub fn disjoint_sum_relabeled(&self, other: &LabeledPoset) -> LabeledPoset {
        let shift = self.len();
        let rank_in = |p: &LabeledPoset, x: usize| p.index_of(x).expect("own label") + 1;
        let mut rel: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(x, y)| (rank_in(self, x), rank_in(self, y)))
            .collect();
        rel.extend(
            other
                .covers
                .iter()
                .map(|&(x, y)| (rank_in(other, x) + shift, rank_in(other, y) + shift)),
        );
        LabeledPoset::from_relations(1..=self.len() + other.len(), &rel)
            .expect("disjoint union of posets is a poset")
    }

    /// Linear extensions in lexicographic order, with the default size guard.
    pub fn linear_extensions(&self) -> Result<LinearExtensions<'_>> {
        self.linear_extensions_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn linear_extensions_with_limit(&self, limit: usize) -> Result<LinearExtensions<'_>> {
        if self.len() > limit {
            return Err(Error::EnumerationLimit {
                size: self.len(),
                limit,
            });
        }
        Ok(LinearExtensions::new(self))
    }

    fn masks_of(&self, t: &SetPartition) -> Result<Vec<u64>> {
        let support = t.support();
        let own: BTreeSet<usize> = self.labels.iter().copied().collect();
        if support != own {
            return Err(Error::NotASetPartition(format!(
                "{t:?} does not partition the labels {:?}",
                self.labels
            )));
        }
        Ok(t.blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| 1u64 << self.index_of(x).expect("checked"))
                    .fold(0, |a, m| a | m)
            })
            .collect())
    }

    fn mask_to_set(&self, mut m: u64) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out.insert(self.labels[i]);
        }
        out
    }

    /// The set `{K_T(w) : w a linear extension}`, enumerated directly: an
    /// ordered partition belongs to it iff each block sits inside one block of
    /// `t`, adjacent blocks sit in different blocks of `t`, and `x < y` in the
    /// poset forces `x`'s block to come no later than `y`'s.
    pub fn decompose_by(&self, t: &SetPartition) -> Result<Vec<OrderedPartition>> {
        let parts = self.masks_of(t)?;
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let full = if self.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.len())
        };
        self.induced_rec(&parts, full, None, &mut stack, &mut |blocks| {
            out.push(OrderedPartition::from_blocks_unchecked(
                blocks.iter().map(|&m| self.mask_to_set(m)).collect(),
            ));
        });
        Ok(out)
    }

    /// Number of induced ordered partitions of each type, without building
    /// the partitions.
    pub fn decomposition_type_counts(&self, t: &SetPartition) -> Result<BTreeMap<Composition, u64>> {
        let parts = self.masks_of(t)?;
        let mut out = BTreeMap::new();
        let full = if self.is_empty() {
            0
        } else {
            u64::MAX >> (64 - self.len())
        };
        self.induced_rec(&parts, full, None, &mut Vec::new(), &mut |blocks| {
            let ty = Composition::from_parts_unchecked(
                blocks.iter().map(|m| m.count_ones() as usize).collect(),
            );
            *out.entry(ty).or_insert(0) += 1;
        });
        Ok(out)
    }

    fn induced_rec(
        &self,
        parts: &[u64],
        remaining: u64,
        prev: Option<usize>,
        stack: &mut Vec<u64>,
        emit: &mut dyn FnMut(&[u64]),
    ) {
        if remaining == 0 {
            emit(stack);
            return;
        }
        for (j, &part) in parts.iter().enumerate() {
            if prev == Some(j) {
                continue;
            }
            // candidates whose remaining predecessors could share their block
            let mut avail = 0u64;
            let mut m = remaining & part;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.below[i] & remaining & !part == 0 {
                    avail |= 1 << i;
                }
            }
            if avail == 0 {
                continue;
            }
            // nonempty submasks of `avail` in increasing order
            let mut sub = avail.wrapping_neg() & avail;
            loop {
                if self.closed_in(sub, remaining) {
                    stack.push(sub);
                    self.induced_rec(parts, remaining & !sub, Some(j), stack, emit);
                    stack.pop();
                }
                if sub == avail {
                    break;
                }
                sub = sub.wrapping_sub(avail) & avail;
            }
        }
    }

    fn closed_in(&self, block: u64, remaining: u64) -> bool {
        let mut m = block;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.below[i] & remaining & !block != 0 {
                return false;
            }
        }
        true
    }

    /// Same set as [`LabeledPoset::decompose_by`], computed from the
    /// definition by running over every linear extension.
    pub fn decompose_by_extensions(&self, t: &SetPartition) -> Result<Vec<OrderedPartition>> {
        self.masks_of(t)?;
        let mut seen = BTreeSet::new();
        for w in self.linear_extensions()? {
            seen.insert(w.induced_partition_by_set_partition(t)?);
        }
        Ok(seen.into_iter().collect())
    }

    /// True iff every block of every induced ordered partition is an antichain.
    pub fn is_antichain_inducing(&self, t: &SetPartition) -> Result<bool> {
        Ok(self
            .decompose_by(t)?
            .iter()
            .all(|k| k.blocks().iter().all(|b| self.is_antichain(b))))
    }
}

impl std::fmt::Debug for LabeledPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LabeledPoset")
            .field("labels", &self.labels)
            .field("covers", &self.covers)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    labels: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

impl Serialize for LabeledPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            labels: self.labels.clone(),
            covers: self.covers.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PosetJson::deserialize(d)?;
        LabeledPoset::from_relations(raw.labels, &raw.covers).map_err(serde::de::Error::custom)
    }
}

/// Streams linear extensions by backtracking over the currently minimal
/// elements in ascending label order.
pub struct LinearExtensions<'a> {
    poset: &'a LabeledPoset,
    seq: Vec<usize>,
    cursor: Vec<usize>,
    placed: u64,
    done: bool,
}

impl<'a> LinearExtensions<'a> {
    fn new(poset: &'a LabeledPoset) -> Self {
        let n = poset.len();
        LinearExtensions {
            poset,
            seq: Vec::with_capacity(n),
            cursor: vec![0; n + 1],
            placed: 0,
            done: false,
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.poset.len();
        if n == 0 {
            self.done = true;
            return Some(Permutation::from_entries_unchecked(Vec::new()));
        }
        loop {
            let depth = self.seq.len();
            if depth == n {
                let out = self.seq.iter().map(|&i| self.poset.labels[i]).collect();
                let last = self.seq.pop().expect("n > 0");
                self.placed &= !(1 << last);
                return Some(Permutation::from_entries_unchecked(out));
            }
            let start = self.cursor[depth];
            let found = (start..n).find(|&i| {
                self.placed & (1 << i) == 0 && self.poset.below[i] & !self.placed == 0
            });
            match found {
                Some(i) => {
                    self.cursor[depth] = i + 1;
                    self.seq.push(i);
                    self.placed |= 1 << i;
                    self.cursor[depth + 1] = 0;
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    let last = self.seq.pop().expect("depth > 0");
                    self.placed &= !(1 << last);
                }
            }
        }
    }
}

/// `F(P)` in the fundamental basis.
pub fn qsym_of_poset(p: &LabeledPoset) -> Result<QSymElement> {
    qsym_of_poset_with_limit(p, DEFAULT_ENUMERATION_LIMIT)
}

pub fn qsym_of_poset_with_limit(p: &LabeledPoset, limit: usize) -> Result<QSymElement> {
    let mut counts: BTreeMap<Composition, u64> = BTreeMap::new();
    for w in p.linear_extensions_with_limit(limit)? {
        *counts.entry(w.runs_or_empty()).or_insert(0) += 1;
    }
    Ok(QSymElement::from_integer_terms(Basis::Fundamental, counts))
}

/// `P_alpha`: ordinal sum of antichains of sizes `alpha_1, ..., alpha_m`,
/// labeled by numbering `A_2, A_4, ...` first and then `A_1, A_3, ...`,
/// increasing within each antichain.
pub fn build_p_alpha(alpha: &Composition) -> Result<LabeledPoset> {
    if alpha.is_empty() {
        return Err(Error::InvalidComposition(
            "the zero composition has no poset; N of it is the scalar 1".into(),
        ));
    }
    let parts = alpha.parts();
    let mut levels = vec![BTreeSet::new(); parts.len()];
    let mut next = 1;
    for i in (1..parts.len()).step_by(2).chain((0..parts.len()).step_by(2)) {
        levels[i] = (next..next + parts[i]).collect();
        next += parts[i];
    }
    LabeledPoset::ordinal_sum_of_antichains(&levels)
}

/// `P_K = K_1 ⊕ ... ⊕ K_k` with each block an antichain.
pub fn build_p_k(k: &OrderedPartition) -> LabeledPoset {
    LabeledPoset::ordinal_sum_of_antichains(k.blocks()).expect("blocks are disjoint")
}

/// The relabeled disjoint sum `Q` of `P_a` and `P_b` used to expand
/// `N_a * N_b`, together with the partition `T = {T1, T2}` of `Q` into the
/// union of odd-indexed antichains and the union of even-indexed ones.
///
/// Even-indexed antichains of `a` then of `b` take the labels `1..=m`; the
/// odd-indexed antichains of `a` then of `b` take `m+1..=|a|+|b|`.
pub fn product_poset(a: &Composition, b: &Composition) -> Result<(LabeledPoset, SetPartition)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidComposition(
            "product poset needs two nonzero compositions".into(),
        ));
    }
    let mut a_levels = vec![BTreeSet::new(); a.len()];
    let mut b_levels = vec![BTreeSet::new(); b.len()];
    let mut next = 1;
    for parity in [1, 0] {
        for (comp, levels) in [(a, &mut a_levels), (b, &mut b_levels)] {
            for i in (parity..comp.len()).step_by(2) {
                levels[i] = (next..next + comp.parts()[i]).collect();
                next += comp.parts()[i];
            }
        }
    }
    let mut rel = Vec::new();
    for levels in [&a_levels, &b_levels] {
        for w in levels.windows(2) {
            for &x in &w[0] {
                for &y in &w[1] {
                    rel.push((x, y));
                }
            }
        }
    }
    let q = LabeledPoset::from_relations(1..next, &rel)?;
    let odd: BTreeSet<usize> = a_levels
        .iter()
        .step_by(2)
        .chain(b_levels.iter().step_by(2))
        .flatten()
        .copied()
        .collect();
    let even: BTreeSet<usize> = a_levels
        .iter()
        .skip(1)
        .step_by(2)
        .chain(b_levels.iter().skip(1).step_by(2))
        .flatten()
        .copied()
        .collect();
    let mut blocks = vec![odd];
    if !even.is_empty() {
        blocks.push(even);
    }
    Ok((q, SetPartition::new(blocks)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn ext_strings(p: &LabeledPoset) -> Vec<String> {
        p.linear_extensions()
            .unwrap()
            .map(|w| w.to_string())
            .collect()
    }

    #[test]
    fn p_alpha_example() {
        let p = build_p_alpha(&c("122")).unwrap();
        let expected = LabeledPoset::ordinal_sum_of_antichains(&[set(&[3]), set(&[1, 2]), set(&[4, 5])]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(ext_strings(&p), vec!["31245", "31254", "32145", "32154"]);
    }

    #[test]
    fn p_alpha_small_cases() {
        assert_eq!(build_p_alpha(&c("4")).unwrap(), LabeledPoset::antichain(1..=4).unwrap());
        assert_eq!(build_p_alpha(&c("11")).unwrap(), LabeledPoset::chain(&[2, 1]).unwrap());
        assert!(build_p_alpha(&Composition::empty()).is_err());
    }

    #[test]
    fn extension_counts() {
        assert_eq!(ext_strings(&LabeledPoset::antichain(1..=3).unwrap()).len(), 6);
        assert_eq!(ext_strings(&LabeledPoset::chain(&[1, 2, 3]).unwrap()), vec!["123"]);
        for n in 0..=6 {
            let count = LabeledPoset::antichain(1..=n).unwrap().linear_extensions().unwrap().count();
            assert_eq!(count, (1..=n).product::<usize>());
        }
        let empty = LabeledPoset::antichain(std::iter::empty()).unwrap();
        assert_eq!(empty.linear_extensions().unwrap().count(), 1);
    }

    #[test]
    fn enumeration_guard() {
        let big = LabeledPoset::antichain(1..=13).unwrap();
        assert!(matches!(
            big.linear_extensions(),
            Err(Error::EnumerationLimit { size: 13, limit: 12 })
        ));
        assert!(big.linear_extensions_with_limit(13).is_ok());
    }

    #[test]
    fn cycle_rejected() {
        assert!(LabeledPoset::from_relations([1, 2], &[(1, 2), (2, 1)]).is_err());
        assert!(LabeledPoset::from_relations([1, 2], &[(1, 3)]).is_err());
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = LabeledPoset::from_relations([1, 2, 3], &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(p.covers(), &[(1, 2), (2, 3)]);
        assert!(p.less(1, 3));
    }

    #[test]
    fn ordinal_sum_and_disjoint_sum() {
        let a = LabeledPoset::antichain([1]).unwrap();
        let b = LabeledPoset::antichain([2]).unwrap();
        assert_eq!(a.ordinal_sum(&b).unwrap(), LabeledPoset::chain(&[1, 2]).unwrap());
        assert!(matches!(a.ordinal_sum(&a), Err(Error::LabelCollision(1))));
        let empty = LabeledPoset::antichain(std::iter::empty()).unwrap();
        let p = build_p_alpha(&c("21")).unwrap();
        assert_eq!(p.disjoint_sum_relabeled(&empty), p);
    }

    #[test]
    fn labeling_kinds() {
        assert_eq!(LabeledPoset::chain(&[2, 1]).unwrap().labeling_kind(), LabelingKind::Strict);
        assert_eq!(LabeledPoset::chain(&[1, 2]).unwrap().labeling_kind(), LabelingKind::Natural);
        assert_eq!(LabeledPoset::antichain([1, 2]).unwrap().labeling_kind(), LabelingKind::Both);
        assert_eq!(LabeledPoset::chain(&[2, 1, 3]).unwrap().labeling_kind(), LabelingKind::Neither);
    }

    #[test]
    fn decomposition_singletons_matches_extensions() {
        let p = build_p_alpha(&c("122")).unwrap();
        let t = SetPartition::singletons(&set(&[1, 2, 3, 4, 5]));
        let ks = p.decompose_by(&t).unwrap();
        assert_eq!(ks.len(), 4);
        let as_perms: BTreeSet<Permutation> = ks
            .iter()
            .map(|k| Permutation::new(k.blocks().iter().map(|b| *b.first().unwrap()).collect()).unwrap())
            .collect();
        let exts: BTreeSet<Permutation> = p.linear_extensions().unwrap().collect();
        assert_eq!(as_perms, exts);
    }

    #[test]
    fn decomposition_of_antichain_by_one_block() {
        let p = LabeledPoset::antichain(1..=4).unwrap();
        let t = SetPartition::single_block(set(&[1, 2, 3, 4])).unwrap();
        assert_eq!(p.decompose_by(&t).unwrap().len(), 1);
        assert!(p.is_antichain_inducing(&t).unwrap());
    }

    #[test]
    fn decompose_by_rejects_bad_partition() {
        let p = LabeledPoset::antichain(1..=3).unwrap();
        let t = SetPartition::single_block(set(&[1, 2])).unwrap();
        assert!(p.decompose_by(&t).is_err());
    }

    #[test]
    fn product_poset_examples() {
        let (q, t) = product_poset(&c("1"), &c("1")).unwrap();
        assert_eq!(q, LabeledPoset::antichain([1, 2]).unwrap());
        assert_eq!(q.decompose_by(&t).unwrap(), vec![OrderedPartition::new(vec![set(&[1, 2])]).unwrap()]);

        let (q, t) = product_poset(&c("1"), &c("11")).unwrap();
        let ks: BTreeSet<OrderedPartition> = q.decompose_by(&t).unwrap().into_iter().collect();
        let expected: BTreeSet<OrderedPartition> = [
            OrderedPartition::new(vec![set(&[2, 3]), set(&[1])]).unwrap(),
            OrderedPartition::new(vec![set(&[3]), set(&[1]), set(&[2])]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(ks, expected);
        assert!(product_poset(&Composition::empty(), &c("1")).is_err());
    }

    #[test]
    fn ascent_labels_of_layered_extensions() {
        for n in 1..=7 {
            for a in Composition::all_of_weight(n) {
                let p = build_p_alpha(&a).unwrap();
                let mut hits = 0;
                for w in p.linear_extensions().unwrap() {
                    let r = w.rho().unwrap();
                    assert!(r.parts() <= a.parts(), "{w} in P_{a}");
                    hits += usize::from(r == a);
                }
                assert_eq!(hits, 1, "P_{a}");
            }
        }
    }

    #[test]
    fn ascent_label_need_not_refine() {
        let p = build_p_alpha(&c("31")).unwrap();
        let w: Permutation = "2431".parse().unwrap();
        assert!(p.linear_extensions().unwrap().any(|x| x == w));
        assert_eq!(w.rho().unwrap(), c("22"));
        assert!(!c("22").refines(&c("31")));
    }

    #[test]
    fn poset_json() {
        let p: LabeledPoset = serde_json::from_str(r#"{"labels":[1,2,3],"covers":[[3,1],[3,2]]}"#).unwrap();
        assert!(p.less(3, 1) && p.less(3, 2) && !p.less(1, 2));
        let back = serde_json::to_string(&p).unwrap();
        assert_eq!(back, r#"{"labels":[1,2,3],"covers":[[3,1],[3,2]]}"#);
        assert!(serde_json::from_str::<LabeledPoset>(r#"{"labels":[1,2],"covers":[[1,2],[2,1]]}"#).is_err());
    }
}
