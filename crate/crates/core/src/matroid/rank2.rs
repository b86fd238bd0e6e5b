//! Rank-two invariants: the vectors `T^n_k`, `U^n_k = k(n-k) T^n_k` and
//! their classes modulo `m²`, the formula `F(M_lambda) = sum U^n_{lambda_i}`,
//! and recovery of a rank-two matroid from its invariant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::comb::{Composition, Partition};
use crate::error::{Error, Result};
use crate::linalg::{self, Rational};
use crate::matroid::Matroid;
use crate::qsym::{divide_by_pure_power, in_vnr, mul, rational, Basis, QSymElement};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn comp_dropping_zeros(parts: &[usize]) -> Composition {
    Composition::new(parts.iter().copied().filter(|&p| p > 0).collect()).expect("positive parts")
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")));
    }
    Ok(())
}

/// `T^n_k = 1/2 N_(2,n-2) + sum_{j>=1} C(k-1,j) N_(1,j,1,n-2-j)`, where a
/// zero last part is dropped.
pub fn t_vec(n: usize, k: usize) -> Result<QSymElement> {
    check_range(n, k)?;
    let mut terms = vec![(
        comp_dropping_zeros(&[2, n - 2]),
        Rational::new(BigInt::one(), BigInt::from(2)),
    )];
    for j in 1..=n - 2 {
        let c = binomial(k - 1, j);
        if !c.is_zero() {
            terms.push((comp_dropping_zeros(&[1, j, 1, n - 2 - j]), Rational::from_integer(c)));
        }
    }
    Ok(QSymElement::from_terms(Basis::NBasis, terms))
}

pub fn u_vec(n: usize, k: usize) -> Result<QSymElement> {
    Ok(t_vec(n, k)?.scaled(&rational((k * (n - k)) as i64)))
}

/// `U^n_k` for `k < n/2`, zero for `k = n/2`, and `-U^n_{n-k}` above.
pub fn ubar_vec(n: usize, k: usize) -> Result<QSymElement> {
    check_range(n, k)?;
    Ok(match (2 * k).cmp(&n) {
        std::cmp::Ordering::Less => u_vec(n, k)?,
        std::cmp::Ordering::Equal => QSymElement::zero(Basis::NBasis),
        std::cmp::Ordering::Greater => u_vec(n, n - k)?.scaled(&rational(-1)),
    })
}

/// `F(M_lambda) = sum_i U^n_{lambda_i}`.
pub fn rank2_qsym(lambda: &Partition) -> Result<QSymElement> {
    if lambda.len() < 2 {
        return Err(Error::InvalidPartition(format!("{lambda} needs at least two parts")));
    }
    let n = lambda.weight();
    let mut total = QSymElement::zero(Basis::NBasis);
    for &p in lambda.parts() {
        total = &total + &u_vec(n, p)?;
    }
    Ok(total)
}

/// Coordinates `t_1, ..., t_{n-1}` of `q` in the basis `{U^n_k}` of `V^n_2`.
pub fn u_coordinates(q: &QSymElement, n: usize) -> Result<Vec<Rational>> {
    if n < 2 {
        return Err(Error::OutOfRange("V^n_2 needs n >= 2".into()));
    }
    let q = q.convert(Basis::NBasis);
    if !in_vnr(&q, n, 2) {
        return Err(Error::NotInSubspace(format!("{q} is not in V^{n}_2")));
    }
    let rows: Vec<Composition> = Composition::all_of_weight(n)
        .into_iter()
        .filter(|a| a.rank() == 2)
        .collect();
    let cols: Vec<QSymElement> = (1..n).map(|k| u_vec(n, k)).collect::<Result<_>>()?;
    let a: linalg::Matrix = rows
        .iter()
        .map(|r| cols.iter().map(|u| u.coeff(r)).collect())
        .collect();
    let b: Vec<Rational> = rows.iter().map(|r| q.coeff(r)).collect();
    linalg::solve(&a, &b).ok_or_else(|| Error::NotInSubspace(format!("{q} is not spanned by U^{n}_k")))
}

/// A class in `V^n_2 / (V^n_2 ∩ m²)`, given by its coordinates on
/// `Ū^n_1, ..., Ū^n_{⌈n/2⌉-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModM2Class {
    n: usize,
    coords: Vec<Rational>,
}

impl ModM2Class {
    pub fn zero(n: usize) -> Self {
        ModM2Class {
            n,
            coords: vec![Rational::zero(); (n.max(1) - 1) / 2],
        }
    }

    pub fn new(n: usize, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != (n.max(1) - 1) / 2 {
            return Err(Error::OutOfRange(format!(
                "degree {n} classes have {} coordinates, got {}",
                (n.max(1) - 1) / 2,
                coords.len()
            )));
        }
        Ok(ModM2Class { n, coords })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coordinate on `Ū^n_k`, `1 <= k < n/2`.
    pub fn coord(&self, k: usize) -> Rational {
        self.coords.get(k.wrapping_sub(1)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Sum of the coordinates. On a connected rank-two class with three
    /// parts this is 1, 2 or 3, so it bounds the number of summands in any
    /// decomposition into such classes.
    pub fn coordinate_sum(&self) -> Rational {
        self.coords.iter().fold(Rational::zero(), |a, c| a + c)
    }

    /// The representative `sum_k c_k Ū^n_k` in the `N` basis.
    pub fn representative(&self) -> Result<QSymElement> {
        let mut q = QSymElement::zero(Basis::NBasis);
        for (i, c) in self.coords.iter().enumerate() {
            q = &q + &ubar_vec(self.n, i + 1)?.scaled(c);
        }
        Ok(q)
    }
}

impl std::ops::Add for &ModM2Class {
    type Output = ModM2Class;
    fn add(self, rhs: &ModM2Class) -> ModM2Class {
        assert_eq!(self.n, rhs.n, "classes of different degrees");
        ModM2Class {
            n: self.n,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for ModM2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[n={}; {}]", self.n, cs.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: usize,
    coords: Vec<String>,
}

impl Serialize for ModM2Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson {
            n: self.n,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModM2Class {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ClassJson::deserialize(d)?;
        let coords = raw
            .coords
            .iter()
            .map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ModM2Class::new(raw.n, coords).map_err(serde::de::Error::custom)
    }
}

/// Class of `q ∈ V^n_2` modulo `m²`: with `q = sum t_k U^n_k`, the
/// coordinate on `Ū^n_k` is `t_k - t_{n-k}`, because `U^n_k + U^n_{n-k}`
/// lies in `m²`.
pub fn mod_m2(q: &QSymElement, n: usize) -> Result<ModM2Class> {
    let t = u_coordinates(q, n)?;
    let coords = (1..=(n - 1) / 2).map(|k| &t[k - 1] - &t[n - k - 1]).collect();
    ModM2Class::new(n, coords)
}

/// `sum_i Ū^n_{lambda_i}` read off the parts directly.
pub fn class_of_partition(lambda: &Partition) -> ModM2Class {
    let n = lambda.weight();
    let mut class = ModM2Class::zero(n);
    for &p in lambda.parts() {
        if 2 * p < n {
            class.coords[p - 1] += Rational::one();
        } else if 2 * p > n {
            class.coords[n - p - 1] -= Rational::one();
        }
    }
    class
}

fn as_count(c: &Rational) -> Option<usize> {
    if c.is_integer() && !c.is_negative() {
        c.to_integer().to_usize()
    } else {
        None
    }
}

/// Reads `lambda` back from its class modulo `m²`, for `lambda` with at
/// least three parts. Parts below `n/2` are the nonnegative coordinates; a
/// part above `n/2` shows up as a single `-1`, and a part equal to `n/2`
/// only through the weight.
pub fn recover_rank2_modm2(class: &ModM2Class) -> Result<Partition> {
    let n = class.n;
    let bad = |m: String| Error::Inconsistent(format!("class {class:?}: {m}"));
    let mut parts = Vec::new();
    let mut large = None;
    for (i, c) in class.coords.iter().enumerate() {
        let k = i + 1;
        if let Some(m) = as_count(c) {
            parts.extend(std::iter::repeat_n(k, m));
        } else if *c == rational(-1) && large.is_none() {
            large = Some(n - k);
        } else {
            return Err(bad(format!("coordinate {c} at k={k} is not a part count")));
        }
    }
    let small: usize = parts.iter().sum();
    match large {
        Some(l) => {
            if small + l != n {
                return Err(bad(format!("parts {parts:?} and {l} do not sum to {n}")));
            }
            parts.push(l);
        }
        None => {
            let rest = n
                .checked_sub(small)
                .ok_or_else(|| bad(format!("parts {parts:?} exceed {n}")))?;
            if rest == 0 {
            } else if 2 * rest == n {
                parts.push(rest);
            } else {
                return Err(bad(format!("remainder {rest} cannot be a single part")));
            }
        }
    }
    if parts.len() < 3 {
        return Err(bad(format!("{parts:?} has fewer than three parts")));
    }
    Partition::from_unsorted(parts)
}

/// A rank-two matroid up to isomorphism and swapping loops for coloops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Rank2Recovery {
    /// `M_lambda` plus `loops` loops (or coloops).
    Loopless { lambda: Partition, loops: usize },
    /// `U_{1,parallel}`, one coloop and `loops` loops.
    OneColoop { parallel: usize, loops: usize },
    /// Two coloops and `loops` loops.
    TwoColoops { loops: usize },
}

impl Rank2Recovery {
    /// Total number of loops and coloops.
    pub fn loops_and_coloops(&self) -> usize {
        match self {
            Rank2Recovery::Loopless { loops, .. } => *loops,
            Rank2Recovery::OneColoop { loops, .. } => loops + 1,
            Rank2Recovery::TwoColoops { loops } => loops + 2,
        }
    }

    pub fn lambda(&self) -> Option<&Partition> {
        match self {
            Rank2Recovery::Loopless { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// The canonical representative: the connected part first, then the
    /// coloops, then the loops.
    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            Rank2Recovery::Loopless { lambda, loops } => Matroid::rank2_from_partition(lambda)?.with_loops(*loops),
            Rank2Recovery::OneColoop { parallel, loops } => Matroid::uniform(1, *parallel)?
                .with_coloops(1)?
                .with_loops(*loops),
            Rank2Recovery::TwoColoops { loops } => Matroid::uniform(2, 2)?.with_loops(*loops),
        }
    }

    /// `F` of the representative, from the closed formulas.
    pub fn qsym(&self) -> Result<QSymElement> {
        let power = |s: usize| QSymElement::basis_element(Basis::NBasis, Composition::single(s));
        Ok(match self {
            Rank2Recovery::Loopless { lambda, loops } => mul(&power(*loops), &rank2_qsym(lambda)?),
            Rank2Recovery::OneColoop { parallel, loops } => {
                let rank_one = QSymElement::from_terms(
                    Basis::NBasis,
                    [(comp_dropping_zeros(&[1, parallel - 1]), rational(*parallel as i64))],
                );
                mul(&power(loops + 1), &rank_one)
            }
            Rank2Recovery::TwoColoops { loops } => power(loops + 2),
        })
    }
}

/// Recovers a rank-two matroid (with any loops and coloops) from `F(M)`.
///
/// With `c` loops and coloops, `F(M) = N_(c) F(M')` for the connected part
/// `M'`. A rank-one quotient means one coloop among the `c`; otherwise the
/// quotient is `sum t_k U_k`, where `t_k` counts the parts equal to `k`.
pub fn recover_rank2(q: &QSymElement) -> Result<Rank2Recovery> {
    let q = q.convert(Basis::NBasis);
    let n = q
        .degree()
        .ok_or_else(|| Error::NotRankTwo("invariant is zero or not homogeneous".into()))?;
    let c = super::loops_coloops_from_qsym(&q);
    let candidate = if c >= n {
        Rank2Recovery::TwoColoops {
            loops: n.checked_sub(2).ok_or_else(|| Error::NotRankTwo(format!("degree {n} is below 2")))?,
        }
    } else {
        let rest = if c == 0 {
            q.clone()
        } else {
            divide_by_pure_power(&q, c).map_err(|e| Error::NotRankTwo(e.to_string()))?
        };
        let m = n - c;
        if in_vnr(&rest, m, 1) {
            if c == 0 {
                return Err(Error::NotRankTwo("rank-one invariant without coloops".into()));
            }
            Rank2Recovery::OneColoop { parallel: m, loops: c - 1 }
        } else {
            let t = u_coordinates(&rest, m).map_err(|e| Error::NotRankTwo(e.to_string()))?;
            let mut parts = Vec::new();
            for (i, tk) in t.iter().enumerate() {
                let count = as_count(tk).ok_or_else(|| {
                    Error::NotRankTwo(format!("coefficient {tk} of U^{m}_{} is not a part count", i + 1))
                })?;
                parts.extend(std::iter::repeat_n(i + 1, count));
            }
            if parts.iter().sum::<usize>() != m || parts.len() < 2 {
                return Err(Error::NotRankTwo(format!("parts {parts:?} do not form a partition of {m}")));
            }
            Rank2Recovery::Loopless {
                lambda: Partition::from_unsorted(parts)?,
                loops: c,
            }
        }
    };
    if candidate.qsym()? != q {
        return Err(Error::NotRankTwo(format!("{candidate:?} does not reproduce the invariant")));
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsym::mul_nbasis;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn t_vectors() {
        for n in 2..=8 {
            let half = QSymElement::from_terms(
                Basis::NBasis,
                [(comp_dropping_zeros(&[2, n - 2]), Rational::new(1.into(), 2.into()))],
            );
            assert_eq!(t_vec(n, 1).unwrap(), half);
        }
        assert!(t_vec(4, 0).is_err() && t_vec(4, 4).is_err() && t_vec(1, 1).is_err());
        for n in (2..=8).step_by(2) {
            assert!(ubar_vec(n, n / 2).unwrap().is_zero());
        }
        // T^4_3 = 1/2 N22 + 2 N1111 + N121
        let t = t_vec(4, 3).unwrap();
        assert_eq!(t.coeff(&c("121")), rational(1));
        assert_eq!(t.coeff(&c("1111")), rational(2));
    }

    #[test]
    fn formula_matches_matroid() {
        for n in 2..=7 {
            for lam in Partition::all_of(n).into_iter().filter(|l| l.len() >= 2) {
                let m = Matroid::rank2_from_partition(&lam).unwrap();
                assert_eq!(rank2_qsym(&lam).unwrap(), m.qsym(), "lambda = {lam}");
            }
        }
        assert_eq!(rank2_qsym(&p("111")).unwrap(), Matroid::uniform(2, 3).unwrap().qsym());
    }

    #[test]
    fn two_part_products() {
        for n in 2..=7 {
            for a in 1..n {
                let b = n - a;
                let lam = Partition::from_unsorted(vec![a, b]).unwrap();
                let prod = mul_nbasis(&comp_dropping_zeros(&[1, a - 1]), &comp_dropping_zeros(&[1, b - 1]))
                    .scaled(&rational((a * b) as i64));
                assert_eq!(prod, rank2_qsym(&lam).unwrap());
            }
        }
    }

    #[test]
    fn spans() {
        for n in 2..=8 {
            let rows: Vec<Composition> = Composition::all_of_weight(n).into_iter().filter(|a| a.rank() == 2).collect();
            let u: Vec<QSymElement> = (1..n).map(|k| u_vec(n, k).unwrap()).collect();
            let m: linalg::Matrix = u.iter().map(|v| rows.iter().map(|r| v.coeff(r)).collect()).collect();
            assert_eq!(linalg::rank(&m), n - 1);
            assert_eq!(rows.len(), n - 1);
        }
    }

    #[test]
    fn classes() {
        for n in 3..=8 {
            for lam in Partition::all_of(n).into_iter().filter(|l| l.len() >= 2) {
                let q = rank2_qsym(&lam).unwrap();
                assert_eq!(mod_m2(&q, n).unwrap(), class_of_partition(&lam), "{lam}");
                if lam.len() == 2 {
                    assert!(class_of_partition(&lam).is_zero());
                }
                if lam.len() >= 3 {
                    assert_eq!(recover_rank2_modm2(&class_of_partition(&lam)).unwrap(), lam);
                }
            }
        }
        assert_eq!(recover_rank2_modm2(&class_of_partition(&p("321"))).unwrap(), p("321"));
        assert!(mod_m2(&QSymElement::basis_element(Basis::NBasis, c("3")), 3).is_err());
        let bad = ModM2Class::new(7, vec![rational(-2), rational(0), rational(0)]).unwrap();
        assert!(recover_rank2_modm2(&bad).is_err());
    }

    #[test]
    fn class_representative_round_trip() {
        let cl = class_of_partition(&p("4211"));
        let rep = cl.representative().unwrap();
        assert_eq!(mod_m2(&rep, 8).unwrap(), cl);
    }

    #[test]
    fn recovery() {
        for n in 2..=7 {
            for lam in Partition::all_of(n).into_iter().filter(|l| l.len() >= 2) {
                // a singleton block of a two-block matroid is a coloop
                let expect = |loops| match lam.parts() {
                    [1, 1] => Rank2Recovery::TwoColoops { loops },
                    [k, 1] => Rank2Recovery::OneColoop { parallel: *k, loops },
                    _ => Rank2Recovery::Loopless { lambda: lam.clone(), loops },
                };
                let got = recover_rank2(&rank2_qsym(&lam).unwrap()).unwrap();
                assert_eq!(got, expect(0));
                let m = Matroid::rank2_from_partition(&lam).unwrap().with_loops(1).unwrap();
                assert_eq!(recover_rank2(&m.qsym()).unwrap(), expect(1));
            }
        }
        let two_coloops = Matroid::uniform(2, 2).unwrap().with_loops(1).unwrap();
        assert_eq!(two_coloops.qsym(), QSymElement::basis_element(Basis::NBasis, c("3")));
        assert_eq!(recover_rank2(&two_coloops.qsym()).unwrap(), Rank2Recovery::TwoColoops { loops: 1 });
        let one = Matroid::uniform(1, 3).unwrap().with_coloops(1).unwrap().with_loops(2).unwrap();
        assert_eq!(recover_rank2(&one.qsym()).unwrap(), Rank2Recovery::OneColoop { parallel: 3, loops: 2 });
        assert!(recover_rank2(&Matroid::uniform(3, 5).unwrap().qsym()).is_err());
        assert!(recover_rank2(&QSymElement::zero(Basis::NBasis)).is_err());
    }
}
