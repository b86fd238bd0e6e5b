//! Hyperplane splits of rank-two base polytopes.
//!
//! A loopless rank-two matroid on `[n]` is determined by its parallel
//! classes (blocks); its bases are the pairs meeting two different blocks.
//! Cutting `Q(M_lambda)` by `sum_{i in S} x_i = 1`, where `S` is a union of
//! blocks, gives two rank-two matroids: one with `S` merged into a single
//! block (`|B ∩ S| <= 1`) and one with the complement merged
//! (`|B ∩ S| >= 1`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comb::{Composition, Partition};
use crate::error::{Error, Result};
use crate::matroid::rank2::{class_of_partition, mod_m2, rank2_qsym, ModM2Class};
use crate::matroid::{elements_of, interval_blocks, mask_of, Matroid};

/// A concrete loopless rank-two matroid given by its blocks on `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RankTwoClass {
    n: usize,
    blocks: Vec<BTreeSet<usize>>,
}

impl RankTwoClass {
    pub fn new(n: usize, blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::InvalidPartition(format!("{x} is outside 1..={n}")));
                }
                if !seen.insert(x) {
                    return Err(Error::InvalidPartition(format!("{x} lies in two blocks")));
                }
            }
        }
        if blocks.len() < 2 {
            return Err(Error::InvalidPartition("need at least two blocks".into()));
        }
        Ok(RankTwoClass { n, blocks })
    }

    /// Consecutive interval blocks in the order of the parts of `lambda`.
    pub fn intervals(lambda: &Composition) -> Result<Self> {
        RankTwoClass::new(lambda.weight(), interval_blocks(lambda.parts()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    /// Block sizes in decreasing order.
    pub fn lambda(&self) -> Partition {
        Partition::from_unsorted(self.blocks.iter().map(BTreeSet::len).collect()).expect("nonempty blocks")
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::from_rank2_blocks(self.n, &self.blocks).expect("validated blocks")
    }
}

impl fmt::Debug for RankTwoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.lambda(), self.blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    lambda: Partition,
    blocks: Vec<BTreeSet<usize>>,
}

impl Serialize for RankTwoClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson {
            lambda: self.lambda(),
            blocks: self.blocks.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RankTwoClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ClassJson::deserialize(d)?;
        let n = raw.lambda.weight();
        let class = RankTwoClass::new(n, raw.blocks).map_err(serde::de::Error::custom)?;
        if class.lambda() != raw.lambda {
            return Err(serde::de::Error::custom("block sizes do not match lambda"));
        }
        Ok(class)
    }
}

/// One hyperplane split `sum_{i in S} x_i = 1` of `parent`. The first child
/// holds the bases with `|B ∩ S| <= 1`, the second those with
/// `|B ∩ S| >= 1`; they share the bases with `|B ∩ S| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    #[serde(rename = "S")]
    pub s: BTreeSet<usize>,
    pub parent: RankTwoClass,
    pub children: [RankTwoClass; 2],
}

impl SplitCertificate {
    /// Checks both halfspace conditions at the level of basis sets.
    pub fn check(&self) -> std::result::Result<(), String> {
        let s = mask_of(&self.s.iter().copied().collect::<Vec<_>>());
        let parent = self.parent.matroid();
        if self.children.iter().any(|c| c.n != self.parent.n) {
            return Err("children live on a different ground set".into());
        }
        let side = |keep: &dyn Fn(u32) -> bool| -> Vec<u64> {
            parent
                .basis_masks()
                .iter()
                .copied()
                .filter(|b| keep((b & s).count_ones()))
                .collect()
        };
        let below = side(&|k| k <= 1);
        let above = side(&|k| k >= 1);
        if self.children[0].matroid().basis_masks() != below.as_slice() {
            return Err(format!("first child of {:?} is not the side |B ∩ S| <= 1", self.parent));
        }
        if self.children[1].matroid().basis_masks() != above.as_slice() {
            return Err(format!("second child of {:?} is not the side |B ∩ S| >= 1", self.parent));
        }
        Ok(())
    }
}

/// Result of splitting `M_lambda` after its first `s` blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub alpha: Composition,
    pub beta: Composition,
    pub mu: Composition,
    pub certificate: SplitCertificate,
}

impl Split {
    /// The common face `|B ∩ S| = 1`, a matroid of type `mu`.
    pub fn mu_class(&self) -> RankTwoClass {
        let s = self.certificate.s.clone();
        let rest: BTreeSet<usize> = (1..=self.certificate.parent.n).filter(|x| !s.contains(x)).collect();
        RankTwoClass::new(self.certificate.parent.n, vec![s, rest]).expect("two nonempty blocks")
    }
}

/// With `a = lambda_1 + ... + lambda_s` and `b = |lambda| - a`:
/// `alpha = (a, lambda_{s+1}, ...)`, `beta = (lambda_1, ..., lambda_s, b)`
/// and `mu = (a, b)`, so that `Q(M_lambda)` is the union of `Q(M_alpha)`
/// and `Q(M_beta)`, meeting in `Q(M_mu)`.
pub fn split(lambda: &Composition, s: usize) -> Result<Split> {
    let parts = lambda.parts();
    if parts.len() < 2 || s == 0 || s >= parts.len() {
        return Err(Error::OutOfRange(format!(
            "split position {s} must lie in 1..{} for {lambda}",
            parts.len()
        )));
    }
    let a: usize = parts[..s].iter().sum();
    let b = lambda.weight() - a;
    let mut alpha = vec![a];
    alpha.extend_from_slice(&parts[s..]);
    let mut beta = parts[..s].to_vec();
    beta.push(b);
    let parent = RankTwoClass::intervals(lambda)?;
    let blocks = parent.blocks().to_vec();
    let s_set: BTreeSet<usize> = blocks[..s].iter().flatten().copied().collect();
    let rest: BTreeSet<usize> = blocks[s..].iter().flatten().copied().collect();
    let mut low = vec![s_set.clone()];
    low.extend_from_slice(&blocks[s..]);
    let mut high = blocks[..s].to_vec();
    high.push(rest);
    let n = lambda.weight();
    Ok(Split {
        alpha: Composition::new(alpha)?,
        beta: Composition::new(beta)?,
        mu: Composition::new(vec![a, b])?,
        certificate: SplitCertificate {
            s: s_set,
            parent,
            children: [RankTwoClass::new(n, low)?, RankTwoClass::new(n, high)?],
        },
    })
}

/// Repeatedly splits after the first two parts until every piece has three
/// parts. The pieces' classes modulo `m²` add up to the class of `lambda`,
/// because each discarded two-block face lies in `m²`.
pub fn full_split_to_length3(lambda: &Partition) -> Result<Vec<Partition>> {
    if lambda.len() < 3 {
        return Err(Error::InvalidPartition(format!("{lambda} has fewer than three parts")));
    }
    let mut out = Vec::new();
    let mut cur = lambda.clone();
    while cur.len() > 3 {
        let sp = split(&cur.to_composition(), 2)?;
        out.push(Partition::from_unsorted(sp.beta.parts().to_vec())?);
        cur = Partition::from_unsorted(sp.alpha.parts().to_vec())?;
    }
    out.push(cur);
    Ok(out)
}

/// Representatives for a decomposition of `Q(M_lambda)`, one per entry of
/// the requested multiset, and the splits producing them from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub representatives: Vec<RankTwoClass>,
    pub splits: Vec<SplitCertificate>,
}

fn remove_one(parts: &[usize], k: usize) -> Vec<usize> {
    let mut v = parts.to_vec();
    let i = v.iter().position(|&x| x == k).expect("part present");
    v.remove(i);
    v
}

/// First `(i, j, k)` with `k` a part of `J[i]`, `n - k` a part of `J[j]`,
/// `i != j` and `1 < k < n - 1`.
fn matching_pair(j: &[Partition], n: usize) -> Option<(usize, usize, usize)> {
    for (a, mu) in j.iter().enumerate() {
        let distinct: BTreeSet<usize> = mu.parts().iter().copied().collect();
        for &k in &distinct {
            if k < 2 || k + 2 > n {
                continue;
            }
            for (b, nu) in j.iter().enumerate() {
                if a != b && nu.parts().contains(&(n - k)) {
                    return Some((a, b, k));
                }
            }
        }
    }
    None
}

fn decompose_rec(n: usize, lambda: &Partition, j: Vec<Partition>) -> Result<(Vec<RankTwoClass>, Vec<SplitCertificate>)> {
    if j.len() == 1 {
        if j[0] != *lambda {
            return Err(Error::Inconsistent(format!("{} and {lambda} have the same class but differ", j[0])));
        }
        return Ok((vec![RankTwoClass::intervals(&lambda.to_composition())?], Vec::new()));
    }
    let (ia, ib, k) = matching_pair(&j, n).ok_or_else(|| Error::NoMatchingPair(format!("{j:?}")))?;
    let mu_rest = remove_one(j[ia].parts(), k);
    let nu_rest = remove_one(j[ib].parts(), n - k);
    let mut tau = mu_rest.clone();
    tau.extend_from_slice(&nu_rest);
    let (lo, hi) = (ia.min(ib), ia.max(ib));
    let mut merged = j.clone();
    merged[lo] = Partition::from_unsorted(tau)?;
    merged.remove(hi);
    let (mut reps, mut certs) = decompose_rec(n, lambda, merged)?;
    let tau_rep = reps[lo].clone();

    // blocks of tau coming from mu (sizes mu_rest) and from nu (the rest)
    let mut need: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in &mu_rest {
        *need.entry(p).or_insert(0) += 1;
    }
    let (mut from_mu, mut from_nu) = (Vec::new(), Vec::new());
    for b in tau_rep.blocks() {
        match need.get_mut(&b.len()) {
            Some(c) if *c > 0 => {
                *c -= 1;
                from_mu.push(b.clone());
            }
            _ => from_nu.push(b.clone()),
        }
    }
    let s: BTreeSet<usize> = from_mu.iter().flatten().copied().collect();
    let t: BTreeSet<usize> = from_nu.iter().flatten().copied().collect();
    let mut nu_blocks = from_nu;
    nu_blocks.push(s.clone());
    let mut mu_blocks = from_mu;
    mu_blocks.push(t);
    let nu_rep = RankTwoClass::new(n, nu_blocks)?;
    let mu_rep = RankTwoClass::new(n, mu_blocks)?;
    certs.push(SplitCertificate {
        s,
        parent: tau_rep,
        children: [nu_rep.clone(), mu_rep.clone()],
    });
    let (rep_lo, rep_hi) = if ia < ib { (mu_rep, nu_rep) } else { (nu_rep, mu_rep) };
    reps[lo] = rep_lo;
    reps.insert(hi, rep_hi);
    Ok((reps, certs))
}

/// Builds representatives `M_mu` (one per `mu` in `j`) whose base polytopes
/// decompose `Q(M_lambda)`, given that the classes modulo `m²` add up.
///
/// Two entries with parts `k` and `n - k` are merged into one entry with
/// both parts removed, the smaller problem is solved, and the merged
/// representative is split back along the union of the blocks that came
/// from the first entry.
pub fn geom_decompose(lambda: &Partition, j: &[Partition]) -> Result<Decomposition> {
    let n = lambda.weight();
    if lambda.len() < 3 {
        return Err(Error::InvalidPartition(format!("{lambda} has fewer than three parts")));
    }
    if j.is_empty() {
        return Err(Error::InvalidPartition("empty decomposition".into()));
    }
    for mu in j {
        if mu.weight() != n {
            return Err(Error::WeightMismatch {
                expected: n,
                found: mu.weight(),
            });
        }
        if mu.len() < 3 {
            return Err(Error::InvalidPartition(format!("{mu} has fewer than three parts")));
        }
    }
    let target = mod_m2(&rank2_qsym(lambda)?, n)?;
    let mut total = ModM2Class::zero(n);
    for mu in j {
        total = &total + &mod_m2(&rank2_qsym(mu)?, n)?;
    }
    if total != target {
        return Err(Error::ModM2Mismatch(format!("{total:?} != {target:?}")));
    }
    let (representatives, splits) = decompose_rec(n, lambda, j.to_vec())?;
    let parent = RankTwoClass::intervals(&lambda.to_composition())?.matroid();
    let parts: Vec<Matroid> = representatives.iter().map(RankTwoClass::matroid).collect();
    verify_polytope_decomposition(&parent, &parts, &splits)
        .map_err(|d| Error::Inconsistent(format!("constructed decomposition failed verification: {d}")))?;
    Ok(Decomposition {
        representatives,
        splits,
    })
}

/// Why a proposed decomposition was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    GroundSetMismatch { part: usize },
    NotContained { part: usize, basis: Vec<usize> },
    BasisNotCovered { basis: Vec<usize> },
    Certificate { index: usize, reason: String },
    CertificateParentMissing { index: usize },
    ReplayMismatch,
    IntersectionNotMatroid { first: usize, second: usize },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::GroundSetMismatch { part } => write!(f, "part {part} has a different ground set"),
            Defect::NotContained { part, basis } => write!(f, "basis {basis:?} of part {part} is not a basis of the parent"),
            Defect::BasisNotCovered { basis } => write!(f, "parent basis {basis:?} lies in no part"),
            Defect::Certificate { index, reason } => write!(f, "split {index}: {reason}"),
            Defect::CertificateParentMissing { index } => {
                write!(f, "split {index} cuts a polytope that is not present at that point")
            }
            Defect::ReplayMismatch => write!(f, "replaying the splits does not give the listed parts"),
            Defect::IntersectionNotMatroid { first, second } => {
                write!(f, "common bases of parts {first} and {second} violate the exchange axiom")
            }
        }
    }
}

impl std::error::Error for Defect {}

/// Checks a decomposition of `Q(parent)` at the level of vertices and
/// recorded halfspaces: every part's bases are bases of the parent and
/// together cover them; every split certificate holds and replaying the
/// splits from the parent yields exactly the parts; and the common bases of
/// any two parts, when there are any, again form a matroid.
pub fn verify_polytope_decomposition(
    parent: &Matroid,
    parts: &[Matroid],
    certs: &[SplitCertificate],
) -> std::result::Result<(), Defect> {
    let n = parent.ground_set_size();
    let mut covered = BTreeSet::new();
    for (i, p) in parts.iter().enumerate() {
        if p.ground_set_size() != n {
            return Err(Defect::GroundSetMismatch { part: i });
        }
        for &b in p.basis_masks() {
            if parent.basis_masks().binary_search(&b).is_err() {
                return Err(Defect::NotContained {
                    part: i,
                    basis: elements_of(b),
                });
            }
            covered.insert(b);
        }
    }
    if let Some(&b) = parent.basis_masks().iter().find(|b| !covered.contains(b)) {
        return Err(Defect::BasisNotCovered { basis: elements_of(b) });
    }

    let mut current: Vec<Vec<u64>> = vec![parent.basis_masks().to_vec()];
    for (index, cert) in certs.iter().enumerate() {
        cert.check().map_err(|reason| Defect::Certificate { index, reason })?;
        let target = cert.parent.matroid().basis_masks().to_vec();
        let pos = current
            .iter()
            .position(|c| *c == target)
            .ok_or(Defect::CertificateParentMissing { index })?;
        current.remove(pos);
        for child in &cert.children {
            current.push(child.matroid().basis_masks().to_vec());
        }
    }
    let mut expected: Vec<Vec<u64>> = parts.iter().map(|p| p.basis_masks().to_vec()).collect();
    current.sort();
    expected.sort();
    if current != expected {
        return Err(Defect::ReplayMismatch);
    }

    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let common: Vec<u64> = parts[i]
                .basis_masks()
                .iter()
                .copied()
                .filter(|b| parts[j].basis_masks().binary_search(b).is_ok())
                .collect();
            if !common.is_empty() && Matroid::from_masks(n, common).is_err() {
                return Err(Defect::IntersectionNotMatroid { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Outcome of checking that the classes of three-part partitions form the
/// Hilbert basis of the semigroup of connected rank-two classes modulo `m²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub n: usize,
    pub generators: Vec<Partition>,
    pub pairwise_distinct: bool,
    pub indecomposable: bool,
    pub longer_classes_decompose: bool,
    pub failures: Vec<String>,
}

impl HilbertReport {
    pub fn passed(&self) -> bool {
        self.pairwise_distinct && self.indecomposable && self.longer_classes_decompose
    }
}

fn multisets(len: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == size {
        return f(cur);
    }
    for i in start..len {
        cur.push(i);
        let stop = multisets(len, size, i, cur, f);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

pub fn hilbert_basis_check(n: usize) -> Result<HilbertReport> {
    if n < 3 {
        return Err(Error::OutOfRange("needs n >= 3".into()));
    }
    let generators = Partition::all_with_length(n, 3);
    let classes: Vec<ModM2Class> = generators
        .iter()
        .map(|l| mod_m2(&rank2_qsym(l)?, n))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();

    let distinct: BTreeSet<&ModM2Class> = classes.iter().collect();
    let pairwise_distinct = distinct.len() == classes.len();
    if !pairwise_distinct {
        failures.push("two three-part partitions share a class".into());
    }

    // every generator has coordinate sum at least 1, so a decomposition of a
    // class with sum f uses at most f generators
    let mut indecomposable = true;
    for (i, target) in classes.iter().enumerate() {
        let f = target.coordinate_sum();
        if classes.iter().any(|c| c.coordinate_sum() < num_traits::One::one()) {
            indecomposable = false;
            failures.push("a generator has coordinate sum below 1".into());
            break;
        }
        let bound: usize = num_traits::ToPrimitive::to_usize(&f.to_integer()).unwrap_or(0);
        for size in 2..=bound {
            let mut hit = None;
            multisets(classes.len(), size, 0, &mut Vec::new(), &mut |idx| {
                let sum = idx.iter().fold(ModM2Class::zero(n), |a, &k| &a + &classes[k]);
                if sum == *target {
                    hit = Some(idx.to_vec());
                    true
                } else {
                    false
                }
            });
            if let Some(idx) = hit {
                indecomposable = false;
                let summands: Vec<String> = idx.iter().map(|&k| generators[k].to_string()).collect();
                failures.push(format!("{} = {}", generators[i], summands.join(" + ")));
            }
        }
    }

    let mut longer_classes_decompose = true;
    for lambda in Partition::all_of(n).into_iter().filter(|l| l.len() > 3) {
        let pieces = full_split_to_length3(&lambda)?;
        let sum = pieces.iter().fold(ModM2Class::zero(n), |a, p| &a + &class_of_partition(p));
        if sum != class_of_partition(&lambda) || geom_decompose(&lambda, &pieces).is_err() {
            longer_classes_decompose = false;
            failures.push(format!("{lambda} does not decompose as {pieces:?}"));
        }
    }

    Ok(HilbertReport {
        n,
        generators,
        pairwise_distinct,
        indecomposable,
        longer_classes_decompose,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsym::{Basis, QSymElement};

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn f_of(comp: &Composition) -> QSymElement {
        RankTwoClass::intervals(comp).unwrap().matroid().qsym()
    }

    #[test]
    fn split_example() {
        let sp = split(&c("221"), 1).unwrap();
        assert_eq!((sp.alpha.clone(), sp.beta.clone(), sp.mu.clone()), (c("221"), c("23"), c("23")));
        assert_eq!(sp.certificate.s, set(&[1, 2]));
        sp.certificate.check().unwrap();
        let parent = sp.certificate.parent.matroid();
        let parts: Vec<Matroid> = sp.certificate.children.iter().map(RankTwoClass::matroid).collect();
        verify_polytope_decomposition(&parent, &parts, std::slice::from_ref(&sp.certificate)).unwrap();
    }

    #[test]
    fn split_identities() {
        for n in 2..=7 {
            for lam in Composition::all_of_weight(n).into_iter().filter(|l| l.len() >= 2) {
                for s in 1..lam.len() {
                    let sp = split(&lam, s).unwrap();
                    let lhs = f_of(&lam);
                    let rhs = &(&f_of(&sp.alpha) + &f_of(&sp.beta)) - &f_of(&sp.mu);
                    assert_eq!(lhs, rhs, "{lam} at {s}");
                    sp.certificate.check().unwrap();
                    let a = sp.certificate.children[0].matroid();
                    let b = sp.certificate.children[1].matroid();
                    let mu = sp.mu_class().matroid();
                    let union: BTreeSet<u64> = a.basis_masks().iter().chain(b.basis_masks()).copied().collect();
                    let inter: Vec<u64> = a.basis_masks().iter().copied().filter(|x| b.basis_masks().contains(x)).collect();
                    assert_eq!(union.into_iter().collect::<Vec<_>>(), sp.certificate.parent.matroid().basis_masks());
                    assert_eq!(inter, mu.basis_masks());
                }
            }
        }
    }

    #[test]
    fn trivial_split_of_two_blocks() {
        let sp = split(&c("32"), 1).unwrap();
        assert_eq!((sp.alpha, sp.beta, sp.mu), (c("32"), c("32"), c("32")));
        assert!(split(&c("32"), 2).is_err() && split(&c("5"), 1).is_err());
    }

    #[test]
    fn repeated_splitting() {
        assert_eq!(full_split_to_length3(&p("2211")).unwrap(), vec![p("222"), p("411")]);
        assert_eq!(
            full_split_to_length3(&p("111111")).unwrap(),
            vec![p("411"), p("321"), p("321"), p("411")]
        );
    }

    #[test]
    fn geom_decompose_from_splits() {
        for n in 4..=9 {
            for lam in Partition::all_of(n).into_iter().filter(|l| l.len() > 3) {
                let pieces = full_split_to_length3(&lam).unwrap();
                let d = geom_decompose(&lam, &pieces).unwrap();
                let lambdas: Vec<Partition> = d.representatives.iter().map(RankTwoClass::lambda).collect();
                assert_eq!(lambdas, pieces, "{lam}");
                let parent = RankTwoClass::intervals(&lam.to_composition()).unwrap().matroid();
                let total = d
                    .representatives
                    .iter()
                    .fold(QSymElement::zero(Basis::NBasis), |acc, r| &acc + &r.matroid().qsym());
                let diff = &parent.qsym() - &total;
                assert_eq!(mod_m2(&diff, n).unwrap(), ModM2Class::zero(n), "{lam}");
            }
        }
    }

    #[test]
    fn geom_decompose_with_matching_parts() {
        let lam = p("2211");
        let j = vec![p("222"), p("411")];
        let d = geom_decompose(&lam, &j).unwrap();
        assert_eq!(d.splits.len(), 1);
        geom_decompose(&lam, &[p("321"), p("321")]).unwrap();
        assert!(matches!(
            geom_decompose(&lam, &[p("222"), p("321")]),
            Err(Error::ModM2Mismatch(_))
        ));
        assert!(matches!(
            geom_decompose(&lam, &[p("33")]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn verify_rejects_bad_parts() {
        let parent = RankTwoClass::intervals(&c("2211")).unwrap().matroid();
        let sp = split(&c("2211"), 2).unwrap();
        let a = sp.certificate.children[0].matroid();
        let b = sp.certificate.children[1].matroid();
        let cert = std::slice::from_ref(&sp.certificate);
        verify_polytope_decomposition(&parent, &[a.clone(), b.clone()], cert).unwrap();
        assert!(matches!(
            verify_polytope_decomposition(&parent, &[a.clone()], cert),
            Err(Defect::BasisNotCovered { .. })
        ));
        assert!(matches!(
            verify_polytope_decomposition(&parent, &[a.clone(), a.clone(), b.clone()], cert),
            Err(Defect::ReplayMismatch)
        ));
        let u = Matroid::uniform(3, 6).unwrap();
        assert!(matches!(
            verify_polytope_decomposition(&parent, &[u], &[]),
            Err(Defect::NotContained { .. })
        ));
    }

    #[test]
    fn hilbert_basis_small() {
        for n in 3..=9 {
            let r = hilbert_basis_check(n).unwrap();
            assert!(r.passed(), "{n}: {:?}", r.failures);
        }
    }

    #[test]
    fn class_json_round_trip() {
        let r = RankTwoClass::new(4, vec![set(&[1, 3]), set(&[2]), set(&[4])]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"lambda":[2,1,1],"blocks":[[1,3],[2],[4]]}"#);
        let back: RankTwoClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
