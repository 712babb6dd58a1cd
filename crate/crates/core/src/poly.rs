//! Exact polynomial arithmetic over arbitrary-precision integers.
//!
//! [`IntPolynomial`] carries the univariate generating functions (parking
//! sums, tree inversions, connected graphs by edges) and [`BivariatePolynomial`]
//! carries Tutte polynomials. Both store only nonzero coefficients, so the
//! derived `PartialEq` is exact coefficient-by-coefficient equality.
//!
//! Log-concavity is judged over the closed exponent range
//! `[min_degree, max_degree]`; exponents inside that range with no stored
//! coefficient count as zero. Padding zeros outside the support never take
//! part, and the zero polynomial is vacuously log-concave and unimodal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Univariate polynomial with sparse arbitrary-precision integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exponent: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, c.into());
        p
    }

    /// Builds a polynomial from dense coefficients, lowest exponent first.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(dense: &[C]) -> Self {
        let mut p = Self::zero();
        for (e, c) in dense.iter().enumerate() {
            p.add_term(e as u32, c.clone().into());
        }
        p
    }

    /// Builds a polynomial from a histogram of machine-word counts.
    pub fn from_counts(counts: &[u64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                p.coeffs.insert(e as u32, BigInt::from(c));
            }
        }
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: u32) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dense coefficients over `[min_degree, max_degree]`, gaps filled with zero.
    pub fn support_coeffs(&self) -> Vec<BigInt> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse terms, highest first.
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= num_traits::pow(x.clone(), (p - e) as usize);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow(x.clone(), p as usize);
        }
        acc
    }

    /// Sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact product.
    pub fn poly_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Expands `f(1 + x)`.
    pub fn shift_compose(&self) -> Self {
        let Some(top) = self.max_degree() else {
            return Self::zero();
        };
        // Horner: acc <- acc * (1 + x) + a_k, dense because the result is dense.
        let mut acc: Vec<BigInt> = Vec::with_capacity(top as usize + 1);
        for k in (0..=top).rev() {
            acc.push(BigInt::zero());
            for i in (1..acc.len()).rev() {
                let lower = acc[i - 1].clone();
                acc[i] += lower;
            }
            acc[0] += self.coeff(k);
        }
        Self::from_coeffs(&acc)
    }

    /// The transform `x^n * f(1/x)`: coefficient `k` of the result is
    /// coefficient `n - k` of `f`.
    pub fn reciprocal_reverse(&self, n: u32) -> Result<Self> {
        if let Some(degree) = self.max_degree() {
            if degree > n {
                return Err(Error::NotAPolynomial { degree, n });
            }
        }
        Ok(Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (n - e, c.clone())).collect(),
        })
    }

    pub fn lc_diagnostics(&self) -> LcReport {
        lc_diagnostics(self)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(mut self, rhs: IntPolynomial) -> IntPolynomial {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.poly_mul(rhs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending exponents, e.g. `x^3 + 3x^4 + 6x^5 + 6x^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|(&e, c)| (monomial_name("x", e), c)))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

fn monomial_name(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{abs}{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// `{"coeffs": {"<exponent>": "<decimal>"}}`, exponents emitted ascending.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<u32, BigInt>);

        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    map.serialize_entry(&e.to_string(), &c.to_string())?;
                }
                map.end()
            }
        }

        let mut st = serializer.serialize_struct("IntPolynomial", 1)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsWire {
    coeffs: BTreeMap<String, CoeffWire>,
}

/// Coefficients are decimal strings on the wire; bare JSON integers are
/// accepted on input as a convenience for hand-written files.
#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffWire {
    Text(String),
    Int(i64),
}

impl CoeffWire {
    fn into_bigint(self) -> std::result::Result<BigInt, String> {
        match self {
            CoeffWire::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("coefficient `{s}` is not a decimal integer")),
            CoeffWire::Int(v) => Ok(BigInt::from(v)),
        }
    }
}

fn parse_exponent(key: &str) -> std::result::Result<u32, String> {
    key.trim()
        .parse::<u32>()
        .map_err(|_| format!("exponent `{key}` is not a nonnegative integer"))
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CoeffsWire::deserialize(deserializer)?;
        let mut p = IntPolynomial::zero();
        for (k, v) in wire.coeffs {
            let e = parse_exponent(&k).map_err(de::Error::custom)?;
            p.add_term(e, v.into_bigint().map_err(de::Error::custom)?);
        }
        Ok(p)
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidPolynomial(e.to_string()))
    }
}

/// Which variable of a bivariate polynomial is pinned to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

/// Bivariate polynomial in `x`, `y` with sparse arbitrary-precision coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * x^i * y^j`
    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c.into());
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(x exponent, y exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `T(x, y) -> T(y, x)`
    pub fn swap_variables(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn poly_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &other.coeffs {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `x^a * y^b`.
    pub fn shift_up(&self, a: u32, b: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect(),
        }
    }

    /// Sets `pinned` to 1 and returns the polynomial in the other variable.
    pub fn specialize(&self, pinned: Variable) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&(i, j), c) in &self.coeffs {
            let e = match pinned {
                Variable::X => j,
                Variable::Y => i,
            };
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| {
                c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
            })
            .sum()
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        for ((i, j), c) in rhs.coeffs {
            self.add_term(i, j, c);
        }
        self
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self.poly_mul(rhs)
    }
}

impl BivariatePolynomial {
    /// Terms in display order: descending `x` exponent, then ascending `y`.
    /// For `K4` this gives `x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3`.
    pub fn display_terms(&self) -> Vec<(u32, u32, &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        terms
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms();
        write_terms(
            f,
            terms.into_iter().map(|(i, j, c)| (monomial_name("x", i) + &monomial_name("y", j), c)),
        )
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivariatePolynomial({self})")
    }
}

/// `{"coeffs": {"<i>,<j>": "<decimal>"}}`, keys ordered by `(i, j)`.
impl Serialize for BivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<(u32, u32), BigInt>);

        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for ((i, j), c) in self.0 {
                    map.serialize_entry(&format!("{i},{j}"), &c.to_string())?;
                }
                map.end()
            }
        }

        let mut st = serializer.serialize_struct("BivariatePolynomial", 1)?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TopVisitor;

        impl<'de> Visitor<'de> for TopVisitor {
            type Value = BivariatePolynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object with a `coeffs` map")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key != "coeffs" {
                        return Err(de::Error::unknown_field(&key, &["coeffs"]));
                    }
                    let raw: BTreeMap<String, CoeffWire> = map.next_value()?;
                    let mut p = BivariatePolynomial::zero();
                    for (k, v) in raw {
                        let (i, j) = k
                            .split_once(',')
                            .ok_or_else(|| de::Error::custom(format!("key `{k}` is not `i,j`")))?;
                        let i = parse_exponent(i).map_err(de::Error::custom)?;
                        let j = parse_exponent(j).map_err(de::Error::custom)?;
                        p.add_term(i, j, v.into_bigint().map_err(de::Error::custom)?);
                    }
                    out = Some(p);
                }
                out.ok_or_else(|| de::Error::missing_field("coeffs"))
            }
        }

        deserializer.deserialize_map(TopVisitor)
    }
}

/// Log-concavity and unimodality verdicts for a coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcReport {
    pub is_log_concave: bool,
    pub is_unimodal: bool,
    pub has_internal_zeros: bool,
    /// Exponent of the first `i` with `a_i^2 < a_{i-1} a_{i+1}`.
    pub first_violation: Option<u32>,
}

pub fn lc_diagnostics(f: &IntPolynomial) -> LcReport {
    let Some(lo) = f.min_degree() else {
        return LcReport {
            is_log_concave: true,
            is_unimodal: true,
            has_internal_zeros: false,
            first_violation: None,
        };
    };
    let a = f.support_coeffs();

    let first_violation = (1..a.len().saturating_sub(1))
        .find(|&i| &a[i] * &a[i] < &a[i - 1] * &a[i + 1])
        .map(|i| lo + i as u32);

    // The ends of the support are nonzero, so any zero inside is internal.
    let has_internal_zeros = a.iter().any(Zero::is_zero);

    // Nondecreasing run, then nonincreasing to the end.
    let mut i = 0;
    while i + 1 < a.len() && a[i] <= a[i + 1] {
        i += 1;
    }
    while i + 1 < a.len() && a[i] >= a[i + 1] {
        i += 1;
    }
    let is_unimodal = i + 1 >= a.len();

    LcReport {
        is_log_concave: first_violation.is_none(),
        is_unimodal,
        has_internal_zeros,
        first_violation,
    }
}
