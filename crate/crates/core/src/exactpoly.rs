//! Sparse exact polynomials in one (`x`) and two (`x`, `y`) variables.
//!
//! Coefficients are generic over a ring; the crate uses arbitrary-precision
//! integers ([`IntPoly1`], [`IntPoly2`]) everywhere except the power-series
//! square root, which works over the rationals ([`RatPoly2`]).
//!
//! Serialization follows one convention for every module: a bivariate
//! polynomial is a list of `[i, j, "c"]` triples sorted by `(i, j)`, a
//! univariate one a list of `[i, "c"]` pairs. Coefficients are strings so
//! that big integers survive JSON round trips.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar; always kept reduced with a positive denominator.
pub type Rational = BigRational;

/// Coefficient ring of a polynomial.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Univariate polynomial in `x`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1<C> {
    terms: BTreeMap<usize, C>,
}

/// Bivariate polynomial in `x` and `y`, keyed by the exponent pair `(i, j)`
/// of `x^i y^j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2<C> {
    terms: BTreeMap<(usize, usize), C>,
}

pub type IntPoly1 = Poly1<BigInt>;
pub type IntPoly2 = Poly2<BigInt>;
pub type RatPoly2 = Poly2<Rational>;

fn add_term<K: Ord, C: Coeff>(map: &mut BTreeMap<K, C>, key: K, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Poly1

impl<C: Coeff> Poly1<C> {
    pub fn zero() -> Self {
        Poly1 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: usize) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, exp, c);
        p
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// Builds a polynomial from dense coefficients, lowest degree first.
    pub fn from_coeffs<I: IntoIterator<Item = C>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            add_term(&mut p.terms, i, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in terms {
            add_term(&mut p.terms, i, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, i: usize) -> C {
        self.terms.get(&i).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> + '_ {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    /// Dense coefficient vector `[c_0, ..., c_deg]`; empty for zero.
    pub fn to_dense(&self) -> Vec<C> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|(i, a)| (i, a.clone() * c.clone())))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        Poly1 {
            terms: self.terms.iter().map(|(&i, c)| (i + k, c.clone())).collect(),
        }
    }

    /// Divides by `x^k` if every exponent is at least `k`.
    pub fn div_x_pow(&self, k: usize) -> Option<Self> {
        if self.low_degree().is_some_and(|low| low < k) {
            return None;
        }
        Some(Poly1 {
            terms: self.terms.iter().map(|(&i, c)| (i - k, c.clone())).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, at: &C) -> C {
        // Horner over the dense form.
        self.to_dense()
            .into_iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * at.clone() + c)
    }

    /// True when `coeff(i) == coeff(d - i)` for all `i` and `deg <= d`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        if self.degree().is_some_and(|deg| deg > d) {
            return false;
        }
        (0..=d).all(|i| self.coeff(i) == self.coeff(d - i))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly1<D> {
        Poly1::from_terms(self.terms().map(|(i, c)| (i, f(c))))
    }
}

impl IntPoly1 {
    /// Convenience constructor from small dense coefficients.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms().all(|(_, c)| !c.is_negative())
    }
}

impl<C: Coeff> Add for &Poly1<C> {
    type Output = Poly1<C>;
    fn add(self, rhs: &Poly1<C>) -> Poly1<C> {
        let mut out = self.clone();
        for (&i, c) in &rhs.terms {
            add_term(&mut out.terms, i, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Poly1<C> {
    type Output = Poly1<C>;
    fn sub(self, rhs: &Poly1<C>) -> Poly1<C> {
        let mut out = self.clone();
        for (&i, c) in &rhs.terms {
            add_term(&mut out.terms, i, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Poly1<C> {
    type Output = Poly1<C>;
    fn mul(self, rhs: &Poly1<C>) -> Poly1<C> {
        let mut out = Poly1::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                add_term(&mut out.terms, i + j, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly1<C> {
    type Output = Poly1<C>;
    fn neg(self) -> Poly1<C> {
        Poly1 {
            terms: self.terms.iter().map(|(&i, c)| (i, -c.clone())).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Poly2

/// Value substituted for `y` by [`Poly2::specialize_y`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YValue {
    Zero,
    One,
    /// `y := x`, sending `x^i y^j` to `x^(i+j)`.
    X,
}

impl<C: Coeff> Poly2<C> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: C, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.terms, (i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            add_term(&mut p.terms, k, c);
        }
        p
    }

    /// Embeds a polynomial in `x`.
    pub fn from_x_poly(p: &Poly1<C>) -> Self {
        Self::from_terms(p.terms().map(|(i, c)| ((i, 0), c.clone())))
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

    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    /// Nonzero terms in lexicographic `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &C)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Coefficient of `y^j`, as a polynomial in `x`.
    pub fn y_coeff(&self, j: usize) -> Poly1<C> {
        Poly1::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, jj), _)| jj == j)
                .map(|(&(i, _), c)| (i, c.clone())),
        )
    }

    pub fn specialize_y(&self, value: YValue) -> Poly1<C> {
        match value {
            YValue::Zero => self.y_coeff(0),
            YValue::One => Poly1::from_terms(self.terms().map(|((i, _), c)| (i, c.clone()))),
            YValue::X => Poly1::from_terms(self.terms().map(|((i, j), c)| (i + j, c.clone()))),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms().map(|(k, a)| (k, a.clone() * c.clone())))
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: usize, j: usize) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly2<D> {
        Poly2::from_terms(self.terms().map(|(k, c)| (k, f(c))))
    }

    /// Rebuilds the polynomial with every exponent pair remapped.
    pub fn map_exponents(&self, f: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| (f(i, j), c.clone())))
    }
}

impl IntPoly2 {
    pub fn to_rational(&self) -> RatPoly2 {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }

    /// The first `(i, j)` whose coefficient is negative, if any.
    pub fn first_negative(&self) -> Option<(usize, usize)> {
        self.terms().find(|(_, c)| c.is_negative()).map(|(k, _)| k)
    }
}

impl RatPoly2 {
    /// Converts to integer coefficients; `None` if some coefficient is not integral.
    pub fn to_integer(&self) -> Option<IntPoly2> {
        let mut out = IntPoly2::zero();
        for (k, c) in self.terms() {
            if !c.is_integer() {
                return None;
            }
            add_term(&mut out.terms, k, c.to_integer());
        }
        Some(out)
    }
}

impl<C: Coeff> Add for &Poly2<C> {
    type Output = Poly2<C>;
    fn add(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut out.terms, k, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Poly2<C> {
    type Output = Poly2<C>;
    fn sub(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            add_term(&mut out.terms, k, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &Poly2<C> {
    type Output = Poly2<C>;
    fn mul(self, rhs: &Poly2<C>) -> Poly2<C> {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                add_term(&mut out.terms, (i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly2<C> {
    type Output = Poly2<C>;
    fn neg(self) -> Poly2<C> {
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_ops {
    ($ty:ident) => {
        impl<C: Coeff> Add for $ty<C> {
            type Output = $ty<C>;
            fn add(self, rhs: $ty<C>) -> $ty<C> {
                &self + &rhs
            }
        }
        impl<C: Coeff> Sub for $ty<C> {
            type Output = $ty<C>;
            fn sub(self, rhs: $ty<C>) -> $ty<C> {
                &self - &rhs
            }
        }
        impl<C: Coeff> Mul for $ty<C> {
            type Output = $ty<C>;
            fn mul(self, rhs: $ty<C>) -> $ty<C> {
                &self * &rhs
            }
        }
        impl<C: Coeff> Neg for $ty<C> {
            type Output = $ty<C>;
            fn neg(self) -> $ty<C> {
                -&self
            }
        }
    };
}

forward_owned_ops!(Poly1);
forward_owned_ops!(Poly2);

// ---------------------------------------------------------------------------
// Display

fn write_term<C: Coeff>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &C,
    monomial: &str,
) -> fmt::Result {
    let text = c.to_string();
    let (negative, magnitude) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude == "1" {
        write!(f, "{monomial}")
    } else if magnitude.contains('/') {
        write!(f, "({magnitude}){monomial}")
    } else {
        write!(f, "{magnitude}{monomial}")
    }
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl<C: Coeff> fmt::Display for Poly1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms().enumerate() {
            write_term(f, n == 0, c, &power("x", i))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Display for Poly2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Order by total degree, then by x-degree, for readability.
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((i, j), _)| (i + j, j));
        for (n, ((i, j), c)) in terms.into_iter().enumerate() {
            let monomial = format!("{}{}", power("x", i), power("y", j));
            write_term(f, n == 0, c, &monomial)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly1<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly1({self})")
    }
}

impl<C: Coeff> fmt::Debug for Poly2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

// ---------------------------------------------------------------------------
// Serialization

impl<C: Coeff> Serialize for Poly1<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, String)> = self.terms().map(|(i, c)| (i, c.to_string())).collect();
        pairs.serialize(s)
    }
}

impl<C: Coeff> Serialize for Poly2<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(usize, usize, String)> = self
            .terms()
            .map(|((i, j), c)| (i, j, c.to_string()))
            .collect();
        triples.serialize(s)
    }
}

impl<'de, C: Coeff + FromStr> Deserialize<'de> for Poly1<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(usize, String)>::deserialize(d)?;
        let mut out = Poly1::zero();
        for (i, text) in pairs {
            let c = text
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {text:?}")))?;
            add_term(&mut out.terms, i, c);
        }
        Ok(out)
    }
}

impl<'de, C: Coeff + FromStr> Deserialize<'de> for Poly2<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(usize, usize, String)>::deserialize(d)?;
        let mut out = Poly2::zero();
        for (i, j, text) in triples {
            let c = text
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {text:?}")))?;
            add_term(&mut out.terms, (i, j), c);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Scalars

/// Binomial coefficient `C(a, b)` for arbitrary integers.
///
/// Returns zero when `b < 0` or `a < b`, with the single exception
/// `C(-1, -1) = 1`. The exception only matters to generating-series sums
/// that write the constant term through a `k = 0` summand; closed-form
/// coefficient code branches on `k = 0` instead of relying on it.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a == -1 && b == -1 {
        return BigInt::one();
    }
    if b < 0 || a < b {
        return BigInt::zero();
    }
    let k = b.min(a - b);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= a - t;
        acc /= t + 1;
    }
    acc
}

/// Exact quotient `num / den`; errors on a nonzero remainder or zero divisor.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::Internal(format!("division of {num} by zero")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{num} is not divisible by {den}")));
    }
    Ok(q)
}

/// Rational number to integer, failing when it is not integral.
pub fn rational_to_integer(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Internal(format!("{r} is not an integer")))
    }
}

/// Small helper for tests and tables: `BigInt` to `i64` when it fits.
pub fn to_i64(c: &BigInt) -> Option<i64> {
    c.to_i64()
}
