//! Compositions, generalized permutations, segmentations and set partitions.
//!
//! A [`Composition`] is the index type for every basis of quasisymmetric
//! functions. Its [`Ord`] implementation sorts first by weight and then by
//! the binary-word order (a composition `(a1, a2, a3, ...)` is read as the
//! word `0^a1 1^a2 0^a3 ...` and words are compared lexicographically), so a
//! `BTreeMap` keyed by compositions iterates in the canonical output order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers. The empty sequence is the zero
/// composition.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "part {} of {:?} is zero",
                pos + 1,
                parts
            )));
        }
        Ok(Composition(parts))
    }

    /// Builds a composition from parts the caller already knows are positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// The one-part composition `(n)`; `n = 0` gives the empty composition.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Composition::empty()
        } else {
            Composition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Sum of the odd-indexed parts (1-based), `a1 + a3 + a5 + ...`.
    pub fn rank(&self) -> usize {
        self.0.iter().step_by(2).sum()
    }

    /// Sum of the even-indexed parts (1-based).
    pub fn corank(&self) -> usize {
        self.0.iter().skip(1).step_by(2).sum()
    }

    pub fn last_part(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Partial sums `{a1, a1+a2, ..., a1+...+a_{m-1}}`, a subset of `[n-1]`.
    pub fn to_subset(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`Composition::to_subset`] for compositions of weight `n`.
    pub fn from_subset(subset: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            if subset.is_empty() {
                return Ok(Composition::empty());
            }
            return Err(Error::InvalidComposition(
                "a nonempty subset has no composition of weight 0".into(),
            ));
        }
        if let Some(&bad) = subset.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::InvalidComposition(format!(
                "{bad} is not in [{}]",
                n - 1
            )));
        }
        let mut parts = Vec::with_capacity(subset.len() + 1);
        let mut prev = 0;
        for &s in subset.iter().chain(std::iter::once(&n)) {
            parts.push(s - prev);
            prev = s;
        }
        Ok(Composition(parts))
    }

    fn subset_mask(&self) -> u64 {
        let mut acc = 0;
        let mut mask = 0u64;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            mask |= 1 << (acc - 1);
        }
        mask
    }

    fn from_mask(mask: u64, n: usize) -> Self {
        let mut parts = Vec::new();
        let mut prev = 0;
        for i in 1..n {
            if mask & (1 << (i - 1)) != 0 {
                parts.push(i - prev);
                prev = i;
            }
        }
        if n > 0 {
            parts.push(n - prev);
        }
        Composition(parts)
    }

    /// True iff `self` is a refinement of `coarser`.
    pub fn refines(&self, coarser: &Composition) -> bool {
        self.weight() == coarser.weight() && coarser.to_subset().is_subset(&self.to_subset())
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// `0^a1 1^a2 0^a3 ...`
    pub fn binary_word(&self) -> Vec<u8> {
        let mut word = Vec::with_capacity(self.weight());
        for (i, &p) in self.0.iter().enumerate() {
            word.extend(std::iter::repeat_n((i % 2) as u8, p));
        }
        word
    }

    fn binary_word_bits(&self) -> impl Iterator<Item = u8> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| std::iter::repeat_n((i % 2) as u8, p))
    }

    /// Compositions of weight `n`, sorted by binary-word order.
    pub fn all_of_weight(n: usize) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition::empty()];
        }
        let mut out: Vec<Composition> = (0..1u64 << (n - 1))
            .map(|m| Composition::from_mask(m, n))
            .collect();
        out.sort();
        out
    }

    /// All refinements of `self` (including itself), in canonical order.
    pub fn refinements(&self) -> Vec<Composition> {
        let n = self.weight();
        if n == 0 {
            return vec![Composition::empty()];
        }
        let base = self.subset_mask();
        let full = (1u64 << (n - 1)) - 1;
        let free = full & !base;
        let mut out = Vec::new();
        let mut sub = free;
        loop {
            out.push(Composition::from_mask(base | sub, n));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort();
        out
    }

    /// Run lengths of a binary word, e.g. `110011101 -> 22311`.
    pub fn run_lengths(word: &[u8]) -> Composition {
        let mut parts = Vec::new();
        let mut iter = word.iter();
        if let Some(&first) = iter.next() {
            let mut cur = first;
            let mut len = 1;
            for &b in iter {
                if b == cur {
                    len += 1;
                } else {
                    parts.push(len);
                    cur = b;
                    len = 1;
                }
            }
            parts.push(len);
        }
        Composition(parts)
    }

    /// Digit-string form (`122`), available when every part is below ten.
    pub fn digit_string(&self) -> Option<String> {
        if self.0.iter().all(|&p| p < 10) {
            Some(self.0.iter().map(|p| char::from(b'0' + *p as u8)).collect())
        } else {
            None
        }
    }
}

/// Compares two compositions of equal weight by their binary words.
pub fn binary_word_order(a: &Composition, b: &Composition) -> Result<Ordering> {
    if a.weight() != b.weight() {
        return Err(Error::WeightMismatch {
            expected: a.weight(),
            found: b.weight(),
        });
    }
    Ok(a.binary_word_bits().cmp(b.binary_word_bits()))
}

/// Descending lexicographic order on parts within each weight: `(3,1)`
/// before `(2,2)` before `(2,1,1)`. A strict refinement has a smaller part at
/// the first position where it differs, so coarser compositions come first.
/// The `N`-to-`L` matrix with columns indexed by ascent-run labels is upper
/// unitriangular in this order.
pub fn coarse_first_order(a: &Composition, b: &Composition) -> Ordering {
    a.weight().cmp(&b.weight()).then_with(|| b.0.cmp(&a.0))
}

/// Maps the ascent-run composition `rho(w)` of a permutation to its descent
/// composition `C(w)`. Both are determined by the ascent word of `w`.
pub fn rho_to_descent(rho: &Composition) -> Composition {
    let n = rho.weight();
    // ascent word: 1^r1 0^r2 1^r3 ...; digit i+1 is 0 iff w(i) > w(i+1)
    let word: Vec<u8> = rho.binary_word().into_iter().map(|b| 1 - b).collect();
    let descents: BTreeSet<usize> = (1..n).filter(|&j| word[j] == 0).collect();
    Composition::from_subset(&descents, n).expect("descent positions lie in [n-1]")
}

/// Inverse of [`rho_to_descent`].
pub fn descent_to_rho(descent: &Composition) -> Composition {
    let n = descent.weight();
    if n == 0 {
        return Composition::empty();
    }
    let descents = descent.to_subset();
    let word: Vec<u8> = (0..n)
        .map(|j| u8::from(j == 0 || !descents.contains(&j)))
        .collect();
    Composition::run_lengths(&word)
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.binary_word_bits().cmp(other.binary_word_bits()))
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        match self.digit_string() {
            Some(s) => write!(f, "{s}"),
            None => {
                let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{self}]")
    }
}

fn parse_int_list(s: &str, what: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| format!("bad {what} entry {t:?}: {e}"))
            })
            .collect()
    } else if s.chars().all(|c| c.is_ascii_digit()) {
        Ok(s.bytes().map(|b| (b - b'0') as usize).collect())
    } else {
        Err(format!("cannot parse {what} from {s:?}"))
    }
}

/// Accepts `1,2,2`, `(1,2,2)` or the digit string `122`. `0` and the empty
/// string both denote the empty composition.
impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Composition::empty());
        }
        let parts = parse_int_list(s, "composition").map_err(Error::InvalidComposition)?;
        Composition::new(parts)
    }
}

/// A sequence of distinct positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{entries:?} contains 0"
            )));
        }
        let distinct: BTreeSet<usize> = entries.iter().copied().collect();
        if distinct.len() != entries.len() {
            return Err(Error::InvalidPermutation(format!(
                "{entries:?} has repeated entries"
            )));
        }
        Ok(Permutation(entries))
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        Permutation(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.0.is_empty() {
            Err(Error::InvalidPermutation("empty permutation".into()))
        } else {
            Ok(())
        }
    }

    /// `C(w)`: lengths of the maximal increasing runs.
    pub fn runs(&self) -> Result<Composition> {
        self.require_nonempty()?;
        Ok(self.runs_or_empty())
    }

    pub(crate) fn runs_or_empty(&self) -> Composition {
        let mut parts = Vec::new();
        let mut len = 0;
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 && self.0[i - 1] > x {
                parts.push(len);
                len = 0;
            }
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
        Composition(parts)
    }

    /// The ascent word `b(w)`: digit `i` is 1 iff `i = 1` or `w(i-1) < w(i)`.
    pub fn ascent_word(&self) -> Result<Vec<u8>> {
        self.require_nonempty()?;
        Ok(self
            .0
            .iter()
            .enumerate()
            .map(|(i, &x)| u8::from(i == 0 || self.0[i - 1] < x))
            .collect())
    }

    /// Run-length composition of the ascent word.
    pub fn rho(&self) -> Result<Composition> {
        Ok(Composition::run_lengths(&self.ascent_word()?))
    }

    /// Chops the one-line notation into consecutive segments of lengths `t`.
    pub fn segment(&self, t: &Composition) -> Result<Vec<&[usize]>> {
        if t.weight() != self.len() {
            return Err(Error::WeightMismatch {
                expected: self.len(),
                found: t.weight(),
            });
        }
        let mut out = Vec::with_capacity(t.len());
        let mut start = 0;
        for &p in t.parts() {
            out.push(&self.0[start..start + p]);
            start += p;
        }
        Ok(out)
    }

    pub fn induced_partition_by_type(&self, t: &Composition) -> Result<OrderedPartition> {
        let blocks = self
            .segment(t)?
            .into_iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        Ok(OrderedPartition { blocks })
    }

    /// Coarsest segmentation whose segments each lie inside one block of `t`.
    pub fn induced_partition_by_set_partition(&self, t: &SetPartition) -> Result<OrderedPartition> {
        if t.support() != self.support() {
            return Err(Error::NotASetPartition(format!(
                "{t:?} does not partition the entries of {self}"
            )));
        }
        let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
        let mut prev_block = None;
        for &x in &self.0 {
            let b = t.block_index_of(x);
            if b == prev_block {
                blocks.last_mut().expect("nonempty").insert(x);
            } else {
                blocks.push(BTreeSet::from([x]));
                prev_block = b;
            }
        }
        Ok(OrderedPartition { blocks })
    }

    /// Every arrangement of `items`, in lexicographic order.
    pub fn all_of(items: &BTreeSet<usize>) -> Vec<Permutation> {
        let mut cur: Vec<usize> = items.iter().copied().collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

/// Advances `v` to the next lexicographic arrangement; false after the last.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x < 10) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_int_list(s, "permutation").map_err(Error::InvalidPermutation)?;
        Permutation::new(entries)
    }
}

fn validate_blocks(blocks: &[BTreeSet<usize>]) -> std::result::Result<(), String> {
    let mut seen = BTreeSet::new();
    for b in blocks {
        if b.is_empty() {
            return Err("empty block".into());
        }
        for &x in b {
            if x == 0 {
                return Err("block contains 0".into());
            }
            if !seen.insert(x) {
                return Err(format!("{x} occurs in two blocks"));
            }
        }
    }
    Ok(())
}

/// A sequence of pairwise-disjoint nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<BTreeSet<usize>>", into = "Vec<BTreeSet<usize>>")]
pub struct OrderedPartition {
    blocks: Vec<BTreeSet<usize>>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        validate_blocks(&blocks).map_err(Error::NotASetPartition)?;
        Ok(OrderedPartition { blocks })
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<BTreeSet<usize>>) -> Self {
        OrderedPartition { blocks }
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The type `tau(K)`: block sizes in order.
    pub fn block_type(&self) -> Composition {
        Composition(self.blocks.iter().map(|b| b.len()).collect())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    /// All permutations whose segmentation by `block_type()` reproduces
    /// these blocks; there are `prod |K_i|!` of them.
    pub fn fibre(&self) -> Vec<Permutation> {
        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
        for block in &self.blocks {
            let arrangements = Permutation::all_of(block);
            let mut next = Vec::with_capacity(acc.len() * arrangements.len());
            for prefix in &acc {
                for arr in &arrangements {
                    let mut v = prefix.clone();
                    v.extend_from_slice(arr.entries());
                    next.push(v);
                }
            }
            acc = next;
        }
        acc.into_iter().map(Permutation).collect()
    }

    /// Between consecutive blocks `K_i, K_{i+1}` (1-based `i`) every element
    /// of `K_i` is larger when `i` is odd and smaller when `i` is even.
    pub fn is_alternating(&self) -> bool {
        self.blocks.windows(2).enumerate().all(|(i, w)| {
            let (lo, hi) = (&w[0], &w[1]);
            if i % 2 == 0 {
                lo.first() > hi.last()
            } else {
                lo.last() < hi.first()
            }
        })
    }
}

impl TryFrom<Vec<BTreeSet<usize>>> for OrderedPartition {
    type Error = Error;
    fn try_from(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        OrderedPartition::new(blocks)
    }
}

impl From<OrderedPartition> for Vec<BTreeSet<usize>> {
    fn from(k: OrderedPartition) -> Self {
        k.blocks
    }
}

fn fmt_block(f: &mut fmt::Formatter<'_>, b: &BTreeSet<usize>) -> fmt::Result {
    let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    write!(f, "{{{}}}", items.join(","))
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            fmt_block(f, b)?;
        }
        write!(f, ")")
    }
}

/// An unordered collection of pairwise-disjoint nonempty blocks, stored with
/// blocks sorted by their least element.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<BTreeSet<usize>>", into = "Vec<BTreeSet<usize>>")]
pub struct SetPartition {
    blocks: Vec<BTreeSet<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        validate_blocks(&blocks).map_err(Error::NotASetPartition)?;
        blocks.sort_by_key(|b| *b.first().expect("nonempty"));
        Ok(SetPartition { blocks })
    }

    pub fn singletons(items: &BTreeSet<usize>) -> Self {
        SetPartition {
            blocks: items.iter().map(|&x| BTreeSet::from([x])).collect(),
        }
    }

    pub fn single_block(items: BTreeSet<usize>) -> Result<Self> {
        if items.is_empty() {
            return Ok(SetPartition { blocks: Vec::new() });
        }
        SetPartition::new(vec![items])
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn block_index_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&x))
    }
}

impl TryFrom<Vec<BTreeSet<usize>>> for SetPartition {
    type Error = Error;
    fn try_from(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        SetPartition::new(blocks)
    }
}

impl From<SetPartition> for Vec<BTreeSet<usize>> {
    fn from(t: SetPartition) -> Self {
        t.blocks
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            fmt_block(f, b)?;
        }
        write!(f, "}}")
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts weakly decreasing positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts positive parts into decreasing order.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    /// Partitions of `n` in reverse lexicographic order (`(n)` first).
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn all_with_length(n: usize, len: usize) -> Vec<Partition> {
        Partition::all_of(n)
            .into_iter()
            .filter(|p| p.len() == len)
            .collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Composition(self.0.clone()), f)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.0)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c: Composition = s.parse()?;
        Partition::new(c.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn weight_and_rank() {
        assert_eq!(c("122").weight(), 5);
        assert_eq!(Composition::empty().weight(), 0);
        assert_eq!(c("156323").weight(), 20);
        assert_eq!(c("122").rank(), 3);
        assert_eq!(Composition::empty().rank(), 0);
        assert_eq!(c("23").rank(), 2);
    }

    #[test]
    fn subset_bijection() {
        assert_eq!(c("122").to_subset(), set(&[1, 3]));
        assert_eq!(Composition::from_subset(&set(&[]), 4).unwrap(), c("4"));
        assert!(Composition::from_subset(&set(&[4]), 4).is_err());
        assert!(Composition::from_subset(&set(&[0]), 4).is_err());
        for n in 0..=10 {
            let all = Composition::all_of_weight(n);
            assert_eq!(all.len(), if n == 0 { 1 } else { 1 << (n - 1) });
            for a in all {
                assert_eq!(Composition::from_subset(&a.to_subset(), n).unwrap(), a);
            }
        }
    }

    #[test]
    fn refinement_examples() {
        assert!(c("113").refines(&c("14")));
        assert!(!c("23").refines(&c("32")));
        assert!(!c("32").refines(&c("23")));
        assert!(c("5").refines(&c("5")));
        assert!(!c("11").refines(&c("3")));
    }

    #[test]
    fn refinement_is_partial_order_with_extremes() {
        for n in 1..=6 {
            let all = Composition::all_of_weight(n);
            let top = Composition::new(vec![1; n]).unwrap();
            let bottom = Composition::single(n);
            for a in &all {
                assert!(a.refines(&bottom));
                assert!(top.refines(a));
                for b in &all {
                    if a.refines(b) && b.refines(a) {
                        assert_eq!(a, b);
                    }
                    for d in &all {
                        if a.refines(b) && b.refines(d) {
                            assert!(a.refines(d));
                        }
                    }
                }
                let listed: BTreeSet<_> = a.refinements().into_iter().collect();
                let brute: BTreeSet<_> = all.iter().filter(|b| b.refines(a)).cloned().collect();
                assert_eq!(listed, brute);
            }
        }
    }

    #[test]
    fn reversal() {
        assert_eq!(c("122").reversed(), c("221"));
        assert_eq!(Composition::empty().reversed(), Composition::empty());
        for n in 0..=8 {
            for a in Composition::all_of_weight(n) {
                assert_eq!(a.reversed().reversed(), a);
            }
        }
    }

    #[test]
    fn run_composition() {
        assert_eq!(p("934756218").runs().unwrap(), c("13212"));
        assert_eq!(p("12345").runs().unwrap(), c("5"));
        assert_eq!(p("54321").runs().unwrap(), c("11111"));
        assert!(Permutation::new(vec![]).unwrap().runs().is_err());
    }

    #[test]
    fn rho_examples() {
        let w = p("184356729");
        assert_eq!(w.ascent_word().unwrap(), vec![1, 1, 0, 0, 1, 1, 1, 0, 1]);
        assert_eq!(w.rho().unwrap(), c("22311"));
        assert_eq!(p("123456").rho().unwrap(), c("6"));
        assert!(Permutation::new(vec![]).unwrap().rho().is_err());
    }

    #[test]
    fn rho_determines_runs_exhaustively() {
        for n in 1..=7 {
            let perms = Permutation::all_of(&(1..=n).collect());
            for w in perms {
                let rho = w.rho().unwrap();
                let runs = w.runs().unwrap();
                assert_eq!(rho_to_descent(&rho), runs);
                assert_eq!(descent_to_rho(&runs), rho);
            }
        }
    }

    #[test]
    fn binary_word_order_examples() {
        assert_eq!(c("21").binary_word(), vec![0, 0, 1]);
        assert_eq!(c("3").binary_word(), vec![0, 0, 0]);
        assert_eq!(binary_word_order(&c("3"), &c("21")).unwrap(), Ordering::Less);
        assert_eq!(binary_word_order(&c("12"), &c("12")).unwrap(), Ordering::Equal);
        assert!(binary_word_order(&c("12"), &c("4")).is_err());
    }

    #[test]
    fn binary_word_order_is_total_on_weight_six() {
        let all = Composition::all_of_weight(6);
        for a in &all {
            for b in &all {
                let ab = binary_word_order(a, b).unwrap();
                let ba = binary_word_order(b, a).unwrap();
                assert_eq!(ab, ba.reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
            }
        }
        let words: BTreeSet<Vec<u8>> = all.iter().map(|a| a.binary_word()).collect();
        assert_eq!(words.len(), all.len());
    }

    #[test]
    fn binary_word_order_does_not_extend_refinement() {
        // 11 refines 2 and sorts after it, but 111 refines 12 and sorts before it.
        assert!(c("11").refines(&c("2")) && c("11") > c("2"));
        assert!(c("111").refines(&c("12")) && c("111") < c("12"));
    }

    #[test]
    fn coarse_first_order_extends_refinement() {
        for n in 1..=7 {
            let all = Composition::all_of_weight(n);
            for a in &all {
                for b in &all {
                    if b.refines(a) && a != b {
                        assert_eq!(coarse_first_order(a, b), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn segmentation() {
        let k = p("27518").induced_partition_by_type(&c("212")).unwrap();
        assert_eq!(k.blocks(), &[set(&[2, 7]), set(&[5]), set(&[1, 8])]);
        let whole = p("27518").induced_partition_by_type(&c("5")).unwrap();
        assert_eq!(whole.blocks(), &[set(&[1, 2, 5, 7, 8])]);
        assert!(p("27518").segment(&c("22")).is_err());
    }

    #[test]
    fn fibre_example() {
        let k = OrderedPartition::new(vec![set(&[2, 7]), set(&[5]), set(&[1, 8])]).unwrap();
        let fibre: Vec<String> = k.fibre().iter().map(|w| w.to_string()).collect();
        assert_eq!(fibre, vec!["27518", "27581", "72518", "72581"]);
        let singles = OrderedPartition::new(vec![set(&[3]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(singles.fibre(), vec![p("312")]);
    }

    #[test]
    fn set_partition_example() {
        let t = SetPartition::new(vec![set(&[1, 4]), set(&[2, 6, 8, 9]), set(&[3, 5, 7])]).unwrap();
        let k = p("965412378").induced_partition_by_set_partition(&t).unwrap();
        assert_eq!(
            k.blocks(),
            &[set(&[6, 9]), set(&[5]), set(&[1, 4]), set(&[2]), set(&[3, 7]), set(&[8])]
        );
        let whole = SetPartition::single_block(set(&[1, 2, 3])).unwrap();
        assert_eq!(p("312").induced_partition_by_set_partition(&whole).unwrap().len(), 1);
        let singles = SetPartition::singletons(&set(&[1, 2, 3]));
        let k = p("312").induced_partition_by_set_partition(&singles).unwrap();
        assert_eq!(k.blocks(), &[set(&[3]), set(&[1]), set(&[2])]);
        assert!(p("12").induced_partition_by_set_partition(&singles).is_err());
    }

    #[test]
    fn alternating_examples() {
        let ok = OrderedPartition::new(vec![set(&[2, 3]), set(&[1])]).unwrap();
        let bad = OrderedPartition::new(vec![set(&[1]), set(&[2, 3])]).unwrap();
        let single = OrderedPartition::new(vec![set(&[4, 5])]).unwrap();
        assert!(ok.is_alternating());
        assert!(!bad.is_alternating());
        assert!(single.is_alternating());
        let three = OrderedPartition::new(vec![set(&[3]), set(&[1]), set(&[2])]).unwrap();
        assert!(three.is_alternating());
    }

    #[test]
    fn validation() {
        assert!(Composition::new(vec![1, 0]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(OrderedPartition::new(vec![set(&[1]), set(&[1, 2])]).is_err());
        assert!(OrderedPartition::new(vec![set(&[])]).is_err());
        assert!(SetPartition::new(vec![set(&[1, 2]), set(&[2])]).is_err());
        assert_eq!("1,12".parse::<Composition>().unwrap().parts(), &[1, 12]);
        assert_eq!("0".parse::<Composition>().unwrap(), Composition::empty());
    }

    #[test]
    fn json_encodings() {
        let a: Composition = serde_json::from_str("[1,2,2]").unwrap();
        assert_eq!(a, c("122"));
        assert!(serde_json::from_str::<Composition>("[1,0]").is_err());
        let t: SetPartition = serde_json::from_str("[[4,2],[1]]").unwrap();
        let u: SetPartition = serde_json::from_str("[[1],[2,4]]").unwrap();
        assert_eq!(t, u);
        assert_eq!(serde_json::to_string(&t).unwrap(), "[[1],[2,4]]");
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn partitions() {
        let counts: Vec<usize> = (0..=9).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap().parts(), &[3, 2, 1]);
        assert_eq!("321".parse::<Partition>().unwrap().weight(), 6);
        assert_eq!(Partition::all_with_length(6, 3).len(), 3);
    }
}
