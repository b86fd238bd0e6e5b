//! Quasisymmetric functions over the rationals in the monomial (`M`),
//! fundamental (`L`) and `N` bases.
//!
//! `N_a` is `F(P_a)` for the layered poset built by
//! [`crate::poset::build_p_alpha`]. Its `L`-expansion is cached per
//! composition in a process-wide write-once table.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::comb::{binary_word_order, descent_to_rho, coarse_first_order, Composition};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Rational};
use crate::poset::product_poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "M")]
    Monomial,
    #[serde(rename = "L")]
    Fundamental,
    #[serde(rename = "N")]
    NBasis,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "M",
            Basis::Fundamental => "L",
            Basis::NBasis => "N",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" | "monomial" => Ok(Basis::Monomial),
            "L" | "l" | "fundamental" => Ok(Basis::Fundamental),
            "N" | "n" | "nbasis" => Ok(Basis::NBasis),
            _ => Err(Error::OutOfRange(format!("unknown basis {s:?}"))),
        }
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A finite linear combination of basis elements. Equality compares the
/// basis tag as well as the coefficients; use [`QSymElement::same_function`]
/// to compare across bases.
#[derive(Clone, PartialEq, Eq)]
pub struct QSymElement {
    basis: Basis,
    coeffs: BTreeMap<Composition, Rational>,
}

impl QSymElement {
    pub fn zero(basis: Basis) -> Self {
        QSymElement {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        QSymElement::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: Basis, a: Composition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(a, Rational::one());
        QSymElement { basis, coeffs }
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, Rational)>,
    {
        let mut q = QSymElement::zero(basis);
        for (a, c) in terms {
            q.add_term(a, &c);
        }
        q
    }

    pub fn from_integer_terms<I, T>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, T)>,
        T: Into<BigInt>,
    {
        QSymElement::from_terms(
            basis,
            terms
                .into_iter()
                .map(|(a, c)| (a, Rational::from_integer(c.into()))),
        )
    }

    fn add_term(&mut self, a: Composition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(a) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, a: &Composition) -> Rational {
        self.coeffs.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in degree-then-binary-word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.coeffs.keys().map(Composition::weight).collect()
    }

    /// The common degree of all terms; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_component(&self, n: usize) -> QSymElement {
        QSymElement {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| a.weight() == n)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, s: &Rational) -> QSymElement {
        if s.is_zero() {
            return QSymElement::zero(self.basis);
        }
        QSymElement {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(a, c)| (a.clone(), c * s)).collect(),
        }
    }

    pub fn convert(&self, target: Basis) -> QSymElement {
        use Basis::*;
        match (self.basis, target) {
            (x, y) if x == y => self.clone(),
            (Fundamental, Monomial) => l_to_m(self),
            (Monomial, Fundamental) => m_to_l(self),
            (NBasis, Fundamental) => n_to_l(self),
            (Fundamental, NBasis) => l_to_n(self),
            (NBasis, Monomial) => l_to_m(&n_to_l(self)),
            (Monomial, NBasis) => l_to_n(&m_to_l(self)),
            _ => unreachable!(),
        }
    }

    /// True iff both elements represent the same quasisymmetric function.
    pub fn same_function(&self, other: &QSymElement) -> bool {
        if self.basis == other.basis {
            return self == other;
        }
        self.convert(Basis::Monomial) == other.convert(Basis::Monomial)
    }

    fn combine(&self, other: &QSymElement, sign: i64) -> QSymElement {
        let (mut out, rhs) = if self.basis == other.basis {
            (self.clone(), other.clone())
        } else {
            (self.convert(Basis::Monomial), other.convert(Basis::Monomial))
        };
        let s = rational(sign);
        for (a, c) in rhs.coeffs {
            out.add_term(a, &(c * &s));
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(a, c)| {
                json!({
                    "comp": a.parts(),
                    "num": big_to_json(c.numer()),
                    "den": big_to_json(c.denom()),
                })
            })
            .collect();
        json!({ "basis": self.basis, "terms": terms })
    }

    pub fn from_json_value(v: &Value) -> Result<QSymElement> {
        let bad = |m: &str| Error::Inconsistent(format!("element JSON: {m}"));
        let basis: Basis = serde_json::from_value(v.get("basis").cloned().ok_or_else(|| bad("missing basis"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms array"))?;
        let mut q = QSymElement::zero(basis);
        for t in terms {
            let comp: Vec<usize> = serde_json::from_value(t.get("comp").cloned().ok_or_else(|| bad("term without comp"))?)
                .map_err(|e| bad(&e.to_string()))?;
            let num = json_to_big(t.get("num").ok_or_else(|| bad("term without num"))?)?;
            let den = match t.get("den") {
                Some(d) => json_to_big(d)?,
                None => BigInt::one(),
            };
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            q.add_term(Composition::new(comp)?, &Rational::new(num, den));
        }
        Ok(q)
    }
}

fn big_to_json(n: &BigInt) -> Value {
    let s = n.to_string();
    s.parse::<serde_json::Number>()
        .map(Value::Number)
        .unwrap_or(Value::String(s))
}

fn json_to_big(v: &Value) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(Error::Inconsistent(format!("expected an integer, got {v}"))),
    };
    text.parse::<BigInt>()
        .map_err(|_| Error::Inconsistent(format!("expected an integer, got {text}")))
}

impl Serialize for QSymElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSymElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        QSymElement::from_json_value(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{}{}", self.basis.symbol(), a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.basis.symbol(), self)
    }
}

impl std::ops::Add for &QSymElement {
    type Output = QSymElement;
    fn add(self, rhs: &QSymElement) -> QSymElement {
        self.combine(rhs, 1)
    }
}

impl std::ops::Sub for &QSymElement {
    type Output = QSymElement;
    fn sub(self, rhs: &QSymElement) -> QSymElement {
        self.combine(rhs, -1)
    }
}

impl std::ops::Neg for &QSymElement {
    type Output = QSymElement;
    fn neg(self) -> QSymElement {
        self.scaled(&rational(-1))
    }
}

impl std::ops::Mul for &QSymElement {
    type Output = QSymElement;
    fn mul(self, rhs: &QSymElement) -> QSymElement {
        mul(self, rhs)
    }
}

fn l_to_m(q: &QSymElement) -> QSymElement {
    let mut out = QSymElement::zero(Basis::Monomial);
    for (a, c) in &q.coeffs {
        for b in a.refinements() {
            out.add_term(b, c);
        }
    }
    out
}

fn m_to_l(q: &QSymElement) -> QSymElement {
    let mut out = QSymElement::zero(Basis::Fundamental);
    for (a, c) in &q.coeffs {
        let neg = -c;
        for b in a.refinements() {
            let sign = if (b.len() - a.len()) % 2 == 0 { c } else { &neg };
            out.add_term(b, sign);
        }
    }
    out
}

fn n_to_l(q: &QSymElement) -> QSymElement {
    let mut out = QSymElement::zero(Basis::Fundamental);
    for (a, c) in &q.coeffs {
        for (b, d) in n_expansion(a).iter() {
            out.add_term(b.clone(), &(c * Rational::from_integer(d.clone())));
        }
    }
    out
}

/// Back-substitution. Every linear extension of `P_b` has an ascent-run label
/// that is lexicographically at most `b`, with equality for exactly one
/// extension, so the term of `q` whose label is largest in that order
/// reveals one `N`-coefficient.
fn l_to_n(q: &QSymElement) -> QSymElement {
    let mut rest = q.clone();
    let mut out = QSymElement::zero(Basis::NBasis);
    while let Some((lead, c)) = rest
        .coeffs
        .iter()
        .map(|(a, c)| (descent_to_rho(a), c))
        .min_by(|x, y| coarse_first_order(&x.0, &y.0))
        .map(|(b, c)| (b, c.clone()))
    {
        for (b, d) in n_expansion(&lead).iter() {
            rest.add_term(b.clone(), &(-(&c * Rational::from_integer(d.clone()))));
        }
        out.add_term(lead, &c);
    }
    out
}

type Expansion = Arc<BTreeMap<Composition, BigInt>>;

fn n_cache() -> &'static RwLock<HashMap<Composition, Expansion>> {
    static CACHE: OnceLock<RwLock<HashMap<Composition, Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn antichain_cache() -> &'static RwLock<HashMap<usize, Expansion>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of permutations of `[k]` with each descent composition; this is
/// the `L`-expansion of an antichain on `k` elements.
fn antichain_descent_counts(k: usize) -> Expansion {
    if let Some(hit) = antichain_cache().read().expect("cache lock").get(&k) {
        return hit.clone();
    }
    let kf = factorial(k);
    let mut counts: BTreeMap<Composition, BigInt> = BTreeMap::new();
    for b in Composition::all_of_weight(k) {
        // permutations whose descent set lies inside the set of b
        let at_most = b
            .parts()
            .iter()
            .fold(kf.clone(), |acc, &p| acc / factorial(p));
        for g in b.refinements() {
            let e = counts.entry(g.clone()).or_insert_with(BigInt::zero);
            if (g.len() - b.len()) % 2 == 0 {
                *e += &at_most;
            } else {
                *e -= &at_most;
            }
        }
    }
    counts.retain(|_, v| !v.is_zero());
    let counts = Arc::new(counts);
    antichain_cache()
        .write()
        .expect("cache lock")
        .insert(k, counts.clone());
    counts
}

/// `L`-expansion of `N_a`. A linear extension of `P_a` is a concatenation of
/// arrangements of the antichains; every junction from an odd-ranked layer
/// (high labels) to the next is a descent and every junction from an
/// even-ranked layer is an ascent, so descent compositions combine layer by
/// layer.
fn n_expansion(a: &Composition) -> Expansion {
    if let Some(hit) = n_cache().read().expect("cache lock").get(a) {
        return hit.clone();
    }
    let mut acc: BTreeMap<Composition, BigInt> = BTreeMap::new();
    acc.insert(Composition::empty(), BigInt::one());
    for (i, &part) in a.parts().iter().enumerate() {
        let layer = antichain_descent_counts(part);
        let mut next: BTreeMap<Composition, BigInt> = BTreeMap::new();
        for (prefix, c) in &acc {
            for (g, d) in layer.iter() {
                let mut parts = prefix.parts().to_vec();
                let merge = i % 2 == 0 && i > 0;
                if merge {
                    // previous layer was even-ranked: ascent at the junction
                    let last = parts.pop().expect("nonempty prefix");
                    parts.push(last + g.parts()[0]);
                    parts.extend_from_slice(&g.parts()[1..]);
                } else {
                    parts.extend_from_slice(g.parts());
                }
                *next
                    .entry(Composition::from_parts_unchecked(parts))
                    .or_insert_with(BigInt::zero) += c * d;
            }
        }
        acc = next;
    }
    let acc = Arc::new(acc);
    n_cache()
        .write()
        .expect("cache lock")
        .insert(a.clone(), acc.clone());
    acc
}

/// `N_a` in the fundamental basis; `N_0 = 1`.
pub fn n_basis_element(a: &Composition) -> QSymElement {
    QSymElement::from_integer_terms(
        Basis::Fundamental,
        n_expansion(a).iter().map(|(b, c)| (b.clone(), c.clone())),
    )
}

/// Quasi-shuffles of two compositions with multiplicity.
pub fn quasi_shuffle(a: &[usize], b: &[usize]) -> BTreeMap<Composition, BigInt> {
    fn rec(a: &[usize], b: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, u64>) {
        if a.is_empty() || b.is_empty() {
            let mut full = prefix.clone();
            full.extend_from_slice(a);
            full.extend_from_slice(b);
            *out.entry(full).or_insert(0) += 1;
            return;
        }
        prefix.push(a[0]);
        rec(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0]);
        rec(a, &b[1..], prefix, out);
        prefix.pop();
        prefix.push(a[0] + b[0]);
        rec(&a[1..], &b[1..], prefix, out);
        prefix.pop();
    }
    let mut raw = BTreeMap::new();
    rec(a, b, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|(p, c)| (Composition::from_parts_unchecked(p), BigInt::from(c)))
        .collect()
}

/// Product of two elements, computed by quasi-shuffling in the monomial
/// basis. The result is in the common basis of the factors, or in `M` when
/// they differ.
pub fn mul(q1: &QSymElement, q2: &QSymElement) -> QSymElement {
    let target = if q1.basis == q2.basis {
        q1.basis
    } else {
        Basis::Monomial
    };
    let m1 = q1.convert(Basis::Monomial);
    let m2 = q2.convert(Basis::Monomial);
    let mut out = QSymElement::zero(Basis::Monomial);
    for (a, c) in &m1.coeffs {
        for (b, d) in &m2.coeffs {
            let cd = c * d;
            for (g, k) in quasi_shuffle(a.parts(), b.parts()) {
                out.add_term(g, &(&cd * Rational::from_integer(k)));
            }
        }
    }
    out.convert(target)
}

/// `c^nu_{a,b}`: the number of induced ordered partitions of the product
/// poset whose type is `nu`.
pub fn structure_constants(a: &Composition, b: &Composition) -> BTreeMap<Composition, u64> {
    if a.is_empty() || b.is_empty() {
        return BTreeMap::from([(a.concat(b), 1)]);
    }
    let (q, t) = product_poset(a, b).expect("nonzero compositions");
    q.decomposition_type_counts(&t).expect("T partitions Q")
}

/// `N_a * N_b` in the `N` basis.
pub fn mul_nbasis(a: &Composition, b: &Composition) -> QSymElement {
    QSymElement::from_integer_terms(Basis::NBasis, structure_constants(a, b))
}

/// Support of the `N`-expansion.
pub fn supp(q: &QSymElement) -> BTreeSet<Composition> {
    q.convert(Basis::NBasis).coeffs.into_keys().collect()
}

/// True iff every `N`-term has weight `n` and rank `r`.
pub fn in_vnr(q: &QSymElement, n: usize, r: usize) -> bool {
    supp(q).iter().all(|a| a.weight() == n && a.rank() == r)
}

/// Canonical representative of `q + J`, where `J` is the ideal generated by
/// degree-one elements: the `N`-terms of even length.
pub fn quotient_j_project(q: &QSymElement) -> QSymElement {
    let mut n = q.convert(Basis::NBasis);
    n.coeffs.retain(|a, _| a.len() % 2 == 0);
    n
}

/// Solves `N_(s) * p = q` for `p`, returned in the `N` basis.
pub fn divide_by_pure_power(q: &QSymElement, s: usize) -> Result<QSymElement> {
    if s == 0 {
        return Err(Error::OutOfRange("divisor degree must be at least 1".into()));
    }
    let qn = q.convert(Basis::NBasis);
    if qn.is_zero() {
        return Ok(QSymElement::zero(Basis::NBasis));
    }
    let n = qn.degree().ok_or_else(|| {
        Error::NotDivisible("dividend is not homogeneous".into())
    })?;
    if n < s {
        return Err(Error::NotDivisible(format!(
            "degree {n} is smaller than the divisor degree {s}"
        )));
    }
    let divisor = Composition::single(s);
    let mut by_rank: BTreeMap<usize, Vec<(&Composition, &Rational)>> = BTreeMap::new();
    for (a, c) in qn.terms() {
        by_rank.entry(a.rank()).or_default().push((a, c));
    }
    let mut out = QSymElement::zero(Basis::NBasis);
    for (r, terms) in by_rank {
        if r < s {
            return Err(Error::NotDivisible(format!(
                "component of rank {r} cannot be a multiple of N_({s})"
            )));
        }
        let unknowns: Vec<Composition> = Composition::all_of_weight(n - s)
            .into_iter()
            .filter(|b| b.rank() == r - s)
            .collect();
        let rows: Vec<Composition> = Composition::all_of_weight(n)
            .into_iter()
            .filter(|b| b.rank() == r)
            .collect();
        let index: HashMap<&Composition, usize> =
            rows.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut a = linalg::zeros(rows.len(), unknowns.len());
        for (j, u) in unknowns.iter().enumerate() {
            for (nu, c) in structure_constants(&divisor, u) {
                a[index[&nu]][j] = rational(c as i64);
            }
        }
        let mut rhs = vec![Rational::zero(); rows.len()];
        for (b, c) in terms {
            rhs[index[b]] = c.clone();
        }
        let x = linalg::solve(&a, &rhs).ok_or_else(|| {
            Error::NotDivisible(format!("no solution in rank {r} of degree {n}"))
        })?;
        for (u, c) in unknowns.into_iter().zip(x) {
            out.add_term(u, &c);
        }
    }
    Ok(out)
}

/// A square change-of-basis matrix in degree `n`. Row `a` holds the
/// expansion of the source element indexed by `a` in the target basis.
#[derive(Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    degree: usize,
    from: Basis,
    to: Basis,
    rows: Vec<Composition>,
    cols: Vec<Composition>,
    entries: Matrix,
}

/// The matrix from `from` to `to` in degree `n`, with rows and columns in
/// binary-word order.
pub fn transition_matrix(n: usize, from: Basis, to: Basis) -> Result<TransitionMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let comps = Composition::all_of_weight(n);
    let entries = comps
        .iter()
        .map(|a| {
            let e = QSymElement::basis_element(from, a.clone()).convert(to);
            comps.iter().map(|b| e.coeff(b)).collect()
        })
        .collect();
    Ok(TransitionMatrix {
        degree: n,
        from,
        to,
        rows: comps.clone(),
        cols: comps,
        entries,
    })
}

impl TransitionMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn from_basis(&self) -> Basis {
        self.from
    }

    pub fn to_basis(&self) -> Basis {
        self.to
    }

    pub fn rows(&self) -> &[Composition] {
        &self.rows
    }

    pub fn cols(&self) -> &[Composition] {
        &self.cols
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: &Composition, col: &Composition) -> Rational {
        match (
            self.rows.iter().position(|x| x == row),
            self.cols.iter().position(|x| x == col),
        ) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => Rational::zero(),
        }
    }

    /// Rows and columns sorted independently by `cmp`.
    pub fn sorted_by<F>(&self, cmp: F) -> TransitionMatrix
    where
        F: Fn(&Composition, &Composition) -> Ordering,
    {
        let mut ri: Vec<usize> = (0..self.rows.len()).collect();
        ri.sort_by(|&i, &j| cmp(&self.rows[i], &self.rows[j]));
        let mut ci: Vec<usize> = (0..self.cols.len()).collect();
        ci.sort_by(|&i, &j| cmp(&self.cols[i], &self.cols[j]));
        TransitionMatrix {
            degree: self.degree,
            from: self.from,
            to: self.to,
            rows: ri.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: ci.iter().map(|&j| self.cols[j].clone()).collect(),
            entries: ri
                .iter()
                .map(|&i| ci.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Sorted by binary-word order on rows and columns.
    pub fn in_binary_word_order(&self) -> TransitionMatrix {
        self.sorted_by(|a, b| binary_word_order(a, b).expect("equal weights"))
    }

    /// Renames the column indices through `f`, which must be a bijection on
    /// compositions of this degree.
    pub fn relabel_columns<F: Fn(&Composition) -> Composition>(&self, f: F) -> TransitionMatrix {
        let mut out = self.clone();
        out.cols = self.cols.iter().map(f).collect();
        out
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_integer())
    }

    fn unit_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| self.entries[i][i].is_one())
    }

    /// Upper unitriangular in the current row and column order, with
    /// matching row and column labels on the diagonal.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.rows == self.cols
            && self.unit_diagonal()
            && (0..self.dim()).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows == self.cols
            && self.unit_diagonal()
            && (0..self.dim()).all(|i| (i + 1..self.dim()).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn is_unitriangular(&self) -> bool {
        self.is_upper_unitriangular() || self.is_lower_unitriangular()
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.entries)
    }

    pub fn inverse(&self) -> Option<TransitionMatrix> {
        let inv = linalg::inverse(&self.entries)?;
        Some(TransitionMatrix {
            degree: self.degree,
            from: self.to,
            to: self.from,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: inv,
        })
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} -> {} in degree {}, columns {:?}",
            self.from.symbol(),
            self.to.symbol(),
            self.degree,
            self.cols
        )?;
        for (a, row) in self.rows.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{a:>8}: [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An element of `QSym ⊗ QSym` with both factors in the same basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    basis: Basis,
    coeffs: BTreeMap<(Composition, Composition), Rational>,
}

impl Tensor {
    pub fn zero(basis: Basis) -> Self {
        Tensor {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, key: (Composition, Composition), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, a: &Composition, b: &Composition) -> Rational {
        self.coeffs
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Composition, Composition), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Converts each tensor factor separately.
    pub fn convert(&self, target: Basis) -> Tensor {
        let mut out = Tensor::zero(target);
        for ((a, b), c) in &self.coeffs {
            let left = QSymElement::basis_element(self.basis, a.clone()).convert(target);
            let right = QSymElement::basis_element(self.basis, b.clone()).convert(target);
            for (x, cx) in left.terms() {
                for (y, cy) in right.terms() {
                    out.add_term((x.clone(), y.clone()), &(c * cx * cy));
                }
            }
        }
        out
    }

    /// `(ε ⊗ id)`: keeps the terms whose left factor has degree zero.
    pub fn counit_left(&self) -> QSymElement {
        QSymElement::from_terms(
            self.basis,
            self.coeffs
                .iter()
                .filter(|((a, _), _)| a.is_empty())
                .map(|((_, b), c)| (b.clone(), c.clone())),
        )
    }

    /// `(id ⊗ ε)`
    pub fn counit_right(&self) -> QSymElement {
        QSymElement::from_terms(
            self.basis,
            self.coeffs
                .iter()
                .filter(|((_, b), _)| b.is_empty())
                .map(|((a, _), c)| (a.clone(), c.clone())),
        )
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let s = self.basis.symbol();
        let factor = |a: &Composition| {
            if a.is_empty() {
                "1".to_string()
            } else {
                format!("{s}{a}")
            }
        };
        for (i, ((a, b), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})·")?;
            }
            write!(f, "{}⊗{}", factor(a), factor(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Deconcatenation coproduct, computed in the monomial basis.
pub fn coproduct_monomial(q: &QSymElement) -> Tensor {
    let m = q.convert(Basis::Monomial);
    let mut out = Tensor::zero(Basis::Monomial);
    for (a, c) in m.terms() {
        let p = a.parts();
        for cut in 0..=p.len() {
            out.add_term(
                (
                    Composition::from_parts_unchecked(p[..cut].to_vec()),
                    Composition::from_parts_unchecked(p[cut..].to_vec()),
                ),
                c,
            );
        }
    }
    out
}

/// Greatest common divisor of the integer coefficients (zero for zero).
pub fn content(q: &QSymElement) -> BigInt {
    q.terms()
        .filter(|(_, c)| c.is_integer())
        .fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}
