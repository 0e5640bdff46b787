//! Exact integers, formal sums over ordered bases, and integer polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact integer: a machine word until an operation overflows, then a bignum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    pub fn zero() -> Self {
        Integer::Small(0)
    }

    pub fn one() -> Self {
        Integer::Small(1)
    }

    fn from_big(value: BigInt) -> Self {
        match value.to_i64() {
            Some(small) => Integer::Small(small),
            None => Integer::Big(value),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(v) => v.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Integer::Small(v) => u64::try_from(*v).ok(),
            Integer::Big(v) => v.to_u64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Big(v) => v.is_negative(),
        }
    }

    pub fn is_big(&self) -> bool {
        matches!(self, Integer::Big(_))
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::zero()
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v.into())
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        Integer::from_big(BigInt::from(v))
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::from_big(BigInt::from(v))
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_big(v)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl Add<&Integer> for &Integer {
    type Output = Integer;
    fn add(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(sum) = a.checked_add(*b) {
                return Integer::Small(sum);
            }
        }
        Integer::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl Sub<&Integer> for &Integer {
    type Output = Integer;
    fn sub(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(diff) = a.checked_sub(*b) {
                return Integer::Small(diff);
            }
        }
        Integer::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl Mul<&Integer> for &Integer {
    type Output = Integer;
    fn mul(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(product) = a.checked_mul(*b) {
                return Integer::Small(product);
            }
        }
        Integer::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Big(v) => Integer::from_big(-v.clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Integer> for Integer {
    fn add_assign(&mut self, rhs: Integer) {
        *self = &*self + &rhs;
    }
}

impl std::iter::Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Integer::Small(v) => serializer.serialize_i64(*v),
            Integer::Big(v) => serializer.serialize_str(&v.to_string()),
        }
    }
}

/// C(m, k), zero whenever k < 0, m < 0 or m < k.
pub fn binomial(m: i64, k: i64) -> Integer {
    if k < 0 || m < 0 || m < k {
        return Integer::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    Integer::from(acc)
}

/// C(m, k) in 64 bits, failing instead of wrapping.
pub fn checked_binomial(m: u64, k: u64) -> Result<u64> {
    if k > m {
        return Ok(0);
    }
    let k = k.min(m - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        let wide = u128::from(acc) * u128::from(m - i) / u128::from(i + 1);
        acc = u64::try_from(wide).map_err(|_| Error::Overflow("binomial"))?;
    }
    Ok(acc)
}

/// n! / (λ₁! λ₂! ⋯).
pub fn multinomial(parts: &[usize]) -> Integer {
    let mut acc = Integer::one();
    let mut total: i64 = 0;
    for &part in parts {
        let part = part as i64;
        total += part;
        acc = acc * binomial(total, part);
    }
    acc
}

pub fn catalan(n: usize) -> Integer {
    let n = n as i64;
    let central = binomial(2 * n, n).to_bigint();
    Integer::from(central / BigInt::from(n + 1))
}

/// Finite linear combination of basis objects with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<B: Ord> {
    terms: BTreeMap<B, Integer>,
}

impl<B: Ord> Default for FormalSum<B> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> FormalSum<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut sum = Self::zero();
        sum.add_term(b, Integer::one());
        sum
    }

    pub fn from_terms<C: Into<Integer>>(terms: impl IntoIterator<Item = (B, C)>) -> Self {
        let mut sum = Self::zero();
        for (b, c) in terms {
            sum.add_term(b, c);
        }
        sum
    }

    pub fn add_term(&mut self, b: B, c: impl Into<Integer>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let updated = &*slot.get() + &c;
                if updated.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = updated;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Integer)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn coefficient(&self, b: &B) -> Integer {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn contains(&self, b: &B) -> bool {
        self.terms.contains_key(b)
    }

    /// Least basis element with its coefficient.
    pub fn first(&self) -> Option<(&B, &Integer)> {
        self.terms.iter().next()
    }

    pub fn total_mass(&self) -> Integer {
        self.terms.values().cloned().sum()
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(b, v)| (b.clone(), v * c))
                .collect(),
        }
    }

    pub fn negate(&self) -> Self {
        self.scale(&Integer::from(-1))
    }

    pub fn add_sum(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Integer) {
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v * c);
        }
    }

    /// Linear extension of a map on basis objects.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Linear extension of a map from basis objects to sums.
    pub fn flat_map<C: Ord + Clone>(&self, f: impl Fn(&B) -> FormalSum<C>) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Bilinear extension of a map on pairs of basis objects.
    pub fn bilinear<A: Ord + Clone, C: Ord + Clone>(
        &self,
        other: &FormalSum<A>,
        f: impl Fn(&B, &A) -> FormalSum<C>,
    ) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            for (a, d) in &other.terms {
                out.add_scaled(&f(b, a), &(c * d));
            }
        }
        out
    }

    pub fn tensor<A: Ord + Clone>(&self, other: &FormalSum<A>) -> FormalSum<(B, A)> {
        self.bilinear(other, |b, a| FormalSum::basis((b.clone(), a.clone())))
    }

    pub fn into_terms(self) -> BTreeMap<B, Integer> {
        self.terms
    }
}

impl<B: Ord + Clone> Add<&FormalSum<B>> for &FormalSum<B> {
    type Output = FormalSum<B>;
    fn add(self, rhs: &FormalSum<B>) -> FormalSum<B> {
        let mut out = self.clone();
        out.add_sum(rhs);
        out
    }
}

impl<B: Ord + Clone> Sub<&FormalSum<B>> for &FormalSum<B> {
    type Output = FormalSum<B>;
    fn sub(self, rhs: &FormalSum<B>) -> FormalSum<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Integer::from(-1));
        out
    }
}

impl<B: Ord + Clone> Neg for &FormalSum<B> {
    type Output = FormalSum<B>;
    fn neg(self) -> FormalSum<B> {
        self.negate()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Integer)> for FormalSum<B> {
    fn from_iter<I: IntoIterator<Item = (B, Integer)>>(iter: I) -> Self {
        FormalSum::from_terms(iter)
    }
}

impl<B: Ord + Serialize> Serialize for FormalSum<B> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for pair in &self.terms {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

/// Integer polynomial in one variable q, stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(degree: usize, c: impl Into<Integer>) -> Self {
        let mut coeffs = vec![Integer::zero(); degree + 1];
        coeffs[degree] = c.into();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        let mut poly = IntPoly { coeffs };
        poly.trim();
        poly
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Integer::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> Integer {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn add_monomial(&mut self, degree: usize, c: &Integer) {
        if self.coeffs.len() <= degree {
            self.coeffs.resize(degree + 1, Integer::zero());
        }
        self.coeffs[degree] += c;
        self.trim();
    }

    pub fn scale(&self, c: &Integer) -> Self {
        IntPoly::from_coeffs(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn eval(&self, q: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::zero(), |acc, c| acc * q + c)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (degree, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, magnitude) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = magnitude == Integer::one();
            match degree {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{magnitude}q")?,
                _ if unit => write!(f, "q^{degree}")?,
                _ => write!(f, "{magnitude}q^{degree}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

/// Integer polynomial in q₁, q₂ keyed by exponent pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntPoly2 {
    terms: BTreeMap<(usize, usize), Integer>,
}

impl IntPoly2 {
    pub fn zero() -> Self {
        IntPoly2::default()
    }

    pub fn monomial(d1: usize, d2: usize, c: impl Into<Integer>) -> Self {
        let mut poly = IntPoly2::zero();
        poly.add_monomial(d1, d2, &c.into());
        poly
    }

    pub fn add_monomial(&mut self, d1: usize, d2: usize, c: &Integer) {
        let updated = self.coeff(d1, d2) + c;
        if updated.is_zero() {
            self.terms.remove(&(d1, d2));
        } else {
            self.terms.insert((d1, d2), updated);
        }
    }

    pub fn coeff(&self, d1: usize, d2: usize) -> Integer {
        self.terms.get(&(d1, d2)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Integer)> {
        self.terms.iter()
    }

    pub fn swap_variables(&self) -> Self {
        IntPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Integer) -> Self {
        let mut out = IntPoly2::zero();
        for (&(a, b), v) in &self.terms {
            out.add_monomial(a, b, &(v * c));
        }
        out
    }

    /// Specializes q₂ = 1.
    pub fn first_marginal(&self) -> IntPoly {
        let mut out = IntPoly::zero();
        for (&(a, _), c) in &self.terms {
            out.add_monomial(a, c);
        }
        out
    }

    /// Coefficient grid indexed `[deg q₁][deg q₂]`.
    pub fn grid(&self) -> Vec<Vec<Integer>> {
        let rows = self.terms.keys().map(|&(a, _)| a + 1).max().unwrap_or(0);
        let cols = self.terms.keys().map(|&(_, b)| b + 1).max().unwrap_or(0);
        let mut grid = vec![vec![Integer::zero(); cols]; rows];
        for (&(a, b), c) in &self.terms {
            grid[a][b] = c.clone();
        }
        grid
    }
}

impl Add<&IntPoly2> for &IntPoly2 {
    type Output = IntPoly2;
    fn add(self, rhs: &IntPoly2) -> IntPoly2 {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_monomial(a, b, c);
        }
        out
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| {
                let mut factors = Vec::new();
                for (name, d) in [("q1", a), ("q2", b)] {
                    match d {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{d}")),
                    }
                }
                match (factors.is_empty(), *c == Integer::one()) {
                    (true, _) => c.to_string(),
                    (false, true) => factors.join(" "),
                    (false, false) => format!("{c} {}", factors.join(" ")),
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl Serialize for IntPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.grid().serialize(serializer)
    }
}

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All partitions of n, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=remaining.min(max)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        if self.0.iter().all(|&p| p < 10) {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}
