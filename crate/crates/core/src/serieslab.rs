//! Truncated power series in `t` with polynomial coefficients in `x, y`,
//! the generating series of local γ-polynomials and Γ-triangles in types
//! A, B, D, and checks of the identities relating them.
//!
//! Series are written with rational coefficients where square roots and
//! inverses demand it and converted back to integers (asserting
//! integrality) before the identity checks.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coxgamma::{gamma_triangle_d, gamma_triangle_types, CoxeterType};
use crate::error::{Error, Result};
use crate::exactpoly::{binom, Coeff, IntPoly2, Poly2, RatPoly2, Rational};

/// `Σ_{n < order} c_n t^n`; coefficients of `t^n` for `n >= order` are unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<C> {
    order: usize,
    coeffs: Vec<Poly2<C>>,
}

pub type IntSeries = TruncSeries<BigInt>;
pub type RatSeries = TruncSeries<Rational>;

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            order,
            coeffs: vec![Poly2::zero(); order],
        }
    }

    /// Builds from the first coefficients; missing ones are zero and extra
    /// ones are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Poly2<C>>, order: usize) -> Self {
        coeffs.resize(order, Poly2::zero());
        TruncSeries { order, coeffs }
    }

    pub fn constant(p: Poly2<C>, order: usize) -> Self {
        Self::from_coeffs(vec![p], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Poly2::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::from_coeffs(vec![Poly2::zero(), Poly2::one()], order)
    }

    /// `p t^n`.
    pub fn monomial(p: Poly2<C>, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n < order {
            s.coeffs[n] = p;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^n`; panics when `n >= order`.
    pub fn coeff(&self, n: usize) -> &Poly2<C> {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly2<C>] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self::from_coeffs(self.coeffs[..order].to_vec(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly2::is_zero)
    }

    /// Lowest `n` with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies every coefficient by a polynomial in `x, y`.
    pub fn mul_poly(&self, p: &Poly2<C>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * p).collect(), self.order)
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Poly2::zero(); k.min(self.order)];
        coeffs.extend(self.coeffs.iter().take(self.order.saturating_sub(k)).cloned());
        Self::from_coeffs(coeffs, self.order)
    }

    /// Divides by `t^k`; the order drops by `k`. Fails unless the first `k`
    /// coefficients vanish.
    pub fn div_t(&self, k: usize) -> Result<Self> {
        if k > self.order || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal(format!("series is not divisible by t^{k}")));
        }
        Ok(Self::from_coeffs(self.coeffs[k..].to_vec(), self.order - k))
    }

    /// `d/dt`; the order drops by one.
    pub fn d_dt(&self) -> Self {
        let coeffs = (1..self.order)
            .map(|n| self.coeffs[n].scale(&small::<C>(n)))
            .collect();
        Self::from_coeffs(coeffs, self.order.saturating_sub(1))
    }

    /// Euler derivation `θ = t d/dt`: multiplies the `t^n` coefficient by `n`.
    pub fn theta(&self) -> Self {
        let coeffs = (0..self.order)
            .map(|n| self.coeffs[n].scale(&small::<C>(n)))
            .collect();
        Self::from_coeffs(coeffs, self.order)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&Poly2<C>) -> Poly2<D>) -> TruncSeries<D> {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<C: Coeff> std::fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            write!(f, "({c}) t^{n} + ")?;
        }
        write!(f, "O(t^{})", self.order)
    }
}

fn small<C: Coeff>(n: usize) -> C {
    (0..n).fold(C::zero(), |acc, _| acc + C::one())
}

impl IntSeries {
    pub fn to_rational(&self) -> RatSeries {
        self.map_coeffs(IntPoly2::to_rational)
    }
}

impl RatSeries {
    /// Integer coefficients, failing if any coefficient is not integral.
    pub fn to_integer(&self) -> Result<IntSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c.to_integer()
                    .ok_or_else(|| Error::Internal(format!("coefficient of t^{n} is not integral: {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntSeries::from_coeffs(coeffs, self.order))
    }

    /// Square root with constant term 1, coefficient by coefficient:
    /// `s_n = (a_n − Σ_{0<i<n} s_i s_{n−i}) / 2`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != RatPoly2::one() {
            return Err(Error::domain(format!(
                "square root needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let half = RatPoly2::constant(Rational::new(1.into(), 2.into()));
        let mut s = vec![RatPoly2::one()];
        for n in 1..self.order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc = &acc - &(&s[i] * &s[n - i]);
            }
            s.push(&acc * &half);
        }
        Ok(Self::from_coeffs(s, self.order))
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn inverse(&self) -> Result<Self> {
        if self.order == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        let scalar = c0.coeff(0, 0);
        if scalar.is_zero() || c0.len() != 1 {
            return Err(Error::domain(format!(
                "inverse needs a nonzero scalar constant term, got {c0}"
            )));
        }
        let inv = RatPoly2::constant(scalar.recip());
        let mut b = vec![inv.clone()];
        for n in 1..self.order {
            let mut acc = RatPoly2::zero();
            for i in 1..=n {
                acc = &acc + &(&self.coeffs[i] * &b[n - i]);
            }
            b.push(-(&acc * &inv));
        }
        Ok(Self::from_coeffs(b, self.order))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }
}

impl<C: Coeff> Add for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn add(self, rhs: Self) -> TruncSeries<C> {
        let order = self.order.min(rhs.order);
        let coeffs = (0..order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        TruncSeries { order, coeffs }
    }
}

impl<C: Coeff> Sub for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn sub(self, rhs: Self) -> TruncSeries<C> {
        let order = self.order.min(rhs.order);
        let coeffs = (0..order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect();
        TruncSeries { order, coeffs }
    }
}

impl<C: Coeff> Mul for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn mul(self, rhs: Self) -> TruncSeries<C> {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![Poly2::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        TruncSeries { order, coeffs }
    }
}

impl<C: Coeff> Neg for &TruncSeries<C> {
    type Output = TruncSeries<C>;
    fn neg(self) -> TruncSeries<C> {
        self.map_coeffs(|c| -c)
    }
}

fn int_poly(terms: &[((usize, usize), i64)]) -> IntPoly2 {
    IntPoly2::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
}

fn rat_poly(terms: &[((usize, usize), i64)]) -> RatPoly2 {
    int_poly(terms).to_rational()
}

/// The three local γ generating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    A,
    B,
    D,
}

/// The series names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    G,
    LocalA,
    LocalB,
    LocalD,
    GammaA,
    GammaB,
    GammaD,
}

impl std::str::FromStr for SeriesName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "g" => SeriesName::G,
            "gA" => SeriesName::LocalA,
            "gB" => SeriesName::LocalB,
            "gD" => SeriesName::LocalD,
            "GA" => SeriesName::GammaA,
            "GB" => SeriesName::GammaB,
            "GD" => SeriesName::GammaD,
            _ => return Err(Error::domain(format!("unknown series {s:?}"))),
        })
    }
}

/// How a series is produced: from the algebraic expressions in `g`, or by
/// summing the coefficient formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Closed,
    Sum,
}

/// `g = sqrt((1 − t)² − 4xt²)` to order `order`, in rational form.
fn g_rational(order: usize) -> Result<RatSeries> {
    let radicand = RatSeries::from_coeffs(
        vec![
            RatPoly2::one(),
            rat_poly(&[((0, 0), -2)]),
            rat_poly(&[((0, 0), 1), ((1, 0), -4)]),
        ],
        order,
    );
    radicand.sqrt()
}

/// `g = sqrt((1 − t)² − 4xt²)`.
pub fn g_base(order: usize) -> Result<IntSeries> {
    g_rational(order)?.to_integer()
}

/// `g_A = (1 + t − g) / (2t(1 + tx))`, `g_B = (2tx + g − t + 1) / (2g(1 + tx))`,
/// `g_D = (g − 1)(g − 1 + t) / (2g)`.
pub fn g_closed(kind: Kind, order: usize) -> Result<IntSeries> {
    let one_plus_tx = RatSeries::from_coeffs(vec![RatPoly2::one(), RatPoly2::x()], order);
    let two = RatPoly2::constant(Rational::from_integer(2.into()));
    let t = RatSeries::t(order);
    let one = RatSeries::one(order);
    let out = match kind {
        Kind::A => {
            let g = g_rational(order + 1)?;
            let num = &(&RatSeries::one(order + 1) + &RatSeries::t(order + 1)) - &g;
            num.div_t(1)?.div(&one_plus_tx.mul_poly(&two))?
        }
        Kind::B => {
            let g = g_rational(order)?;
            let two_tx = RatSeries::monomial(rat_poly(&[((1, 0), 2)]), 1, order);
            let num = &(&(&two_tx + &g) - &t) + &one;
            num.div(&(&g * &one_plus_tx).mul_poly(&two))?
        }
        Kind::D => {
            let g = g_rational(order)?;
            let gm1 = &g - &one;
            let num = &gm1 * &(&gm1 + &t);
            num.div(&g.mul_poly(&two))?
        }
    };
    out.to_integer()
}

/// The local γ generating series summed from their coefficient formulas:
/// `Σ_{k,m} c(k, m) x^k t^{2k+m}`, the `k = 0` part being the constant 1
/// in types A and B and absent in type D.
pub fn g_sum(kind: Kind, order: usize) -> Result<IntSeries> {
    let mut coeffs = vec![IntPoly2::zero(); order];
    if order > 0 && kind != Kind::D {
        coeffs[0] = IntPoly2::one();
    }
    for k in 1..order {
        for m in 0..order.saturating_sub(2 * k) {
            let n = 2 * k + m;
            let (k, m) = (k as i64, m as i64);
            let c = match kind {
                Kind::A => {
                    let num = binom(2 * k + m, k) * binom(k + m - 1, k - 1);
                    exact(&num, k + m + 1)?
                }
                Kind::B => binom(2 * k + m, k) * binom(k + m - 1, k - 1),
                Kind::D => {
                    let num = BigInt::from(2 * k + m - 2) * binom(2 * k - 2, k - 1) * binom(2 * k + m - 2, 2 * k - 2);
                    exact(&num, k)?
                }
            };
            coeffs[n] = &coeffs[n] + &IntPoly2::monomial(c, k as usize, 0);
        }
    }
    Ok(IntSeries::from_coeffs(coeffs, order))
}

fn exact(num: &BigInt, den: i64) -> Result<BigInt> {
    crate::exactpoly::exact_div(num, &BigInt::from(den))
}

/// The Γ-triangle generating series of types A and B summed from their
/// coefficient formulas `Σ_{k,ℓ,m} c(k, ℓ, m) x^k y^ℓ t^{2k+ℓ+m}`. The
/// `k = 0` part is `Σ_ℓ (yt)^ℓ`.
pub fn gamma_sum(kind: Kind, order: usize) -> Result<IntSeries> {
    let mut coeffs = vec![IntPoly2::zero(); order];
    for (l, c) in coeffs.iter_mut().enumerate() {
        *c = IntPoly2::monomial(BigInt::one(), 0, l);
    }
    for k in 1..order {
        for l in 0..order.saturating_sub(2 * k) {
            for m in 0..order.saturating_sub(2 * k + l) {
                let n = 2 * k + l + m;
                let (k, l, m) = (k as i64, l as i64, m as i64);
                let c = match kind {
                    Kind::A => {
                        let num = BigInt::from(l + 1) * binom(l + 2 * k + m, k) * binom(k + m - 1, k - 1);
                        exact(&num, l + k + m + 1)?
                    }
                    Kind::B => binom(2 * k + l + m, k) * binom(k + m - 1, k - 1),
                    Kind::D => return Err(Error::domain("type D has no Γ coefficient formula")),
                };
                coeffs[n] = &coeffs[n] + &IntPoly2::monomial(c, k as usize, l as usize);
            }
        }
    }
    Ok(IntSeries::from_coeffs(coeffs, order))
}

/// `Σ_{n≥2} Γ_{D_n} t^n`, with `D₂ = A₁ × A₁` and `Γ_{D_n}` for `n >= 3`
/// from `y Γ_{B_{n−1}} + γ^ℓ_{D_n}`.
pub fn gamma_d_assembled(order: usize) -> Result<IntSeries> {
    let mut coeffs = vec![IntPoly2::zero(); order];
    for (n, c) in coeffs.iter_mut().enumerate().skip(2) {
        *c = if n == 2 {
            gamma_triangle_types(&[CoxeterType::A(1), CoxeterType::A(1)])?.poly().clone()
        } else {
            gamma_triangle_d(n)?.poly().clone()
        };
    }
    Ok(IntSeries::from_coeffs(coeffs, order))
}

/// Any of the named series by either route. `g` and `G_D` have a single route.
pub fn named_series(name: SeriesName, route: Route, order: usize) -> Result<IntSeries> {
    match (name, route) {
        (SeriesName::G, Route::Closed) => g_base(order),
        (SeriesName::G, Route::Sum) => g_from_double_sum(order),
        (SeriesName::LocalA, Route::Closed) => g_closed(Kind::A, order),
        (SeriesName::LocalB, Route::Closed) => g_closed(Kind::B, order),
        (SeriesName::LocalD, Route::Closed) => g_closed(Kind::D, order),
        (SeriesName::LocalA, Route::Sum) => g_sum(Kind::A, order),
        (SeriesName::LocalB, Route::Sum) => g_sum(Kind::B, order),
        (SeriesName::LocalD, Route::Sum) => g_sum(Kind::D, order),
        (SeriesName::GammaA, Route::Sum) => gamma_sum(Kind::A, order),
        (SeriesName::GammaB, Route::Sum) => gamma_sum(Kind::B, order),
        (SeriesName::GammaD, Route::Sum) => gamma_d_assembled(order),
        (SeriesName::GammaA | SeriesName::GammaB | SeriesName::GammaD, Route::Closed) => Err(
            Error::domain("Γ generating series are only available by summation"),
        ),
    }
}

/// `1 − t − 2 Σ_n Σ_{1≤i≤n/2} C(2i−2, i−1) C(n−2, 2i−2)/i x^i t^n`.
pub fn g_from_double_sum(order: usize) -> Result<IntSeries> {
    let mut coeffs = vec![IntPoly2::zero(); order];
    if order > 0 {
        coeffs[0] = IntPoly2::one();
    }
    if order > 1 {
        coeffs[1] = int_poly(&[((0, 0), -1)]);
    }
    for (n, c) in coeffs.iter_mut().enumerate().skip(2) {
        let n64 = n as i64;
        for i in 1..=n64 / 2 {
            let v = exact(&(binom(2 * i - 2, i - 1) * binom(n64 - 2, 2 * i - 2)), i)?;
            *c = &*c + &IntPoly2::monomial(-2 * v, i as usize, 0);
        }
    }
    Ok(IntSeries::from_coeffs(coeffs, order))
}

/// `g` via `(1 − t) sqrt(1 − 4x (t/(1 − t))²)`.
pub fn g_alternate_route(order: usize) -> Result<IntSeries> {
    let one_minus_t = RatSeries::from_coeffs(vec![RatPoly2::one(), rat_poly(&[((0, 0), -1)])], order);
    let u = RatSeries::t(order).div(&one_minus_t)?;
    let inner = &RatSeries::one(order) - &(&u * &u).mul_poly(&rat_poly(&[((1, 0), 4)]));
    (&one_minus_t * &inner.sqrt()?).to_integer()
}

/// `∂_t(t g_A(x/t, t))` evaluated at `(xt, t)`.
///
/// Applied to the truncation of `g_A` as a polynomial, term by term:
/// `x^k t^n ↦ x^k t^{n−k+1}` (needs `n + 1 >= k`, true since `n >= 2k` on
/// the support), then `d/dt`, then `x ↦ xt`. The composite returns every
/// monomial to its original `t`-degree, so the result is exact below the
/// truncation order.
pub fn substitution_route(g_a: &IntSeries) -> Result<IntSeries> {
    let mut stage: BTreeMap<(usize, usize, usize), BigInt> = BTreeMap::new();
    for (n, c) in g_a.coeffs().iter().enumerate() {
        for ((k, j), a) in c.terms() {
            if n + 1 < k {
                return Err(Error::Internal(format!("x^{k} t^{n} has no polynomial image under x ↦ x/t")));
            }
            *stage.entry((k, j, n + 1 - k)).or_default() += a;
        }
    }
    let mut derived: BTreeMap<(usize, usize, usize), BigInt> = BTreeMap::new();
    for ((k, j, n), a) in stage {
        if n > 0 {
            *derived.entry((k, j, n - 1)).or_default() += a * BigInt::from(n);
        }
    }
    let mut coeffs = vec![IntPoly2::zero(); g_a.order()];
    for ((k, j, n), a) in derived {
        let n = n + k;
        if n < coeffs.len() {
            coeffs[n] = &coeffs[n] + &IntPoly2::monomial(a, k, j);
        }
    }
    Ok(IntSeries::from_coeffs(coeffs, g_a.order()))
}

/// Outcome of one identity check: the residual `LHS − RHS` below `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub order: usize,
    /// First `t`-degree with a nonzero residual, and that coefficient.
    pub first_nonzero: Option<(usize, String)>,
}

impl IdentityResult {
    pub fn from_residual(name: &str, residual: &IntSeries) -> Self {
        IdentityResult {
            name: name.to_string(),
            order: residual.order(),
            first_nonzero: residual
                .first_nonzero()
                .map(|n| (n, residual.coeff(n).to_string())),
        }
    }

    pub fn passed(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

/// The series entering the identity checks, by either route.
#[derive(Clone, Debug)]
pub struct SeriesSet {
    pub order: usize,
    pub g: IntSeries,
    pub g_a: IntSeries,
    pub g_b: IntSeries,
    pub g_d: IntSeries,
    pub g_a_closed: IntSeries,
    pub g_b_closed: IntSeries,
    pub g_d_closed: IntSeries,
    pub gamma_a: IntSeries,
    pub gamma_b: IntSeries,
    pub gamma_d: IntSeries,
}

impl SeriesSet {
    pub fn compute(order: usize) -> Result<Self> {
        Ok(SeriesSet {
            order,
            g: g_base(order)?,
            g_a: g_sum(Kind::A, order)?,
            g_b: g_sum(Kind::B, order)?,
            g_d: g_sum(Kind::D, order)?,
            g_a_closed: g_closed(Kind::A, order)?,
            g_b_closed: g_closed(Kind::B, order)?,
            g_d_closed: g_closed(Kind::D, order)?,
            gamma_a: gamma_sum(Kind::A, order)?,
            gamma_b: gamma_sum(Kind::B, order)?,
            gamma_d: gamma_d_assembled(order)?,
        })
    }
}

/// Checks every identity among the series of `set`, in a fixed order.
pub fn verify_identities_with(set: &SeriesSet) -> Result<Vec<IdentityResult>> {
    let n = set.order;
    let one = IntSeries::one(n);
    let t = IntSeries::t(n);
    let yt = IntSeries::monomial(IntPoly2::y(), 1, n);
    let yt2 = &yt * &yt;
    let two = |s: &IntSeries| s.mul_poly(&int_poly(&[((0, 0), 2)]));
    let (g, ga, gb, gd) = (&set.g, &set.g_a, &set.g_b, &set.g_d);
    let (big_a, big_b, big_d) = (&set.gamma_a, &set.gamma_b, &set.gamma_d);
    let ga_m1 = ga - &one;
    let gb_m1 = gb - &one;

    let mut out = Vec::new();
    let mut push = |name: &str, residual: IntSeries| out.push(IdentityResult::from_residual(name, &residual));

    push("g_A = (1 + t - g)/(2t(1 + tx))", ga - &set.g_a_closed);
    push("g_B = (2tx + g - t + 1)/(2g(1 + tx))", gb - &set.g_b_closed);
    push("g_D = (g - 1)(g - 1 + t)/(2g)", gd - &set.g_d_closed);
    push("g = 1 - t - 2 sum C(2i-2,i-1)C(n-2,2i-2)/i x^i t^n", g - &g_from_double_sum(n)?);
    push("g^2 = (1 - t)^2 - 4xt^2", {
        let rhs = IntSeries::from_coeffs(
            vec![IntPoly2::one(), int_poly(&[((0, 0), -2)]), int_poly(&[((0, 0), 1), ((1, 0), -4)])],
            n,
        );
        &(g * g) - &rhs
    });
    push("g = (1 - t) sqrt(1 - 4x(t/(1 - t))^2)", g - &g_alternate_route(n)?);
    push("G_A = g_A + yt g_A G_A", &(big_a - ga) - &(&(&yt * ga) * big_a));
    push("G_B = g_B + yt g_A G_B", &(big_b - gb) - &(&(&yt * ga) * big_b));
    push("G_B = g_B + yt g_B G_A", &(big_b - gb) - &(&(&yt * gb) * big_a));
    push("G_D = g_D + 2yt(g_A - 1) + (yt)^2 g_A + yt g_A G_D", {
        let rhs = &(&(gd + &two(&(&yt * &ga_m1))) + &(&yt2 * ga)) + &(&(&yt * ga) * big_d);
        big_d - &rhs
    });
    push("g_B - 1 = 2(g_A - 1) + g_A g_D", &gb_m1 - &(&two(&ga_m1) + &(ga * gd)));
    push(
        "g_B - 1 = 2(g_A - 1) + g_A g_D (algebraic forms)",
        &(&set.g_b_closed - &one) - &(&two(&(&set.g_a_closed - &one)) + &(&set.g_a_closed * &set.g_d_closed)),
    );
    push("G_D = yt(G_B - 1) + g_D", big_d - &(&(&yt * &(big_b - &one)) + gd));
    push(
        "(G_D - g_D)(1 - yt g_A) = yt(g_B - 1 + yt g_A)",
        &(&(big_d - gd) * &(&one - &(&yt * ga))) - &(&yt * &(&gb_m1 + &(&yt * ga))),
    );
    push(
        "(G_B - 1)(1 - yt g_A) = g_B - 1 + yt g_A",
        &(&(big_b - &one) * &(&one - &(&yt * ga))) - &(&gb_m1 + &(&yt * ga)),
    );
    push("t g g' - g^2 - t + 1 = 0", {
        // g g' is known below n - 1, so t g g' is known below n.
        let g_dg = g * &g.d_dt();
        let tg_dg = IntSeries::from_coeffs(
            std::iter::once(IntPoly2::zero()).chain(g_dg.coeffs().iter().cloned()).collect(),
            n,
        );
        &(&(&tg_dg - &(g * g)) - &t) + &one
    });
    push("g_D = (2 - theta)((g - 1 + t)/2)", {
        let h = &(&(g - &one) + &t);
        let image = &two(h) - &h.theta();
        let halved = image
            .to_rational()
            .mul_poly(&RatPoly2::constant(Rational::new(1.into(), 2.into())))
            .to_integer()?;
        gd - &halved
    });
    push("g_B(x, t) = d/dt(t g_A(x/t, t)) at (xt, t)", gb - &substitution_route(ga)?);
    Ok(out)
}

pub fn verify_identities(order: usize) -> Result<Vec<IdentityResult>> {
    if order < 6 {
        return Err(Error::domain(format!("identity checks need order >= 6, got {order}")));
    }
    verify_identities_with(&SeriesSet::compute(order)?)
}

/// The three sides of one convolution: the product coefficient summed in
/// its original form, the same sum in the rewritten form, and the closed
/// right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convolution {
    pub original: Rational,
    pub rewritten: Rational,
    pub closed: Rational,
}

fn rb(a: i64, b: i64) -> Rational {
    Rational::from_integer(binom(a, b))
}

fn ri(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

/// `q(k, m) = C(2k+m, k) C(k+m−1, k−1) / (k+m+1)`, the type A local factor.
fn a_local_original(k: i64, m: i64) -> Rational {
    rb(2 * k + m, k) * rb(k + m - 1, k - 1) / ri(k + m + 1)
}

/// The rewritten type A local factor; at `k = m = 0` the displayed ratio is
/// `0/0` and the factor is 1, its value in the original form.
fn a_local_rewritten(k: i64, m: i64) -> Rational {
    if k == 0 && m == 0 {
        return Rational::one();
    }
    ri(k) / (ri(2 * k + m + 1) * ri(k + m)) * rb(2 * k + m + 1, k) * rb(k + m, m)
}

/// Coefficient of `(xt²)^k (yt)^ℓ t^m` in `g_A G_A` (`kind = A`) or
/// `g_A G_B` (`kind = B`) and its closed form.
pub fn carlitz_convolution(kind: Kind, k: i64, m: i64, l: i64) -> Result<Convolution> {
    let mut original = Rational::zero();
    let mut rewritten = Rational::zero();
    for k1 in 0..=k {
        for m1 in 0..=m {
            let (k2, m2) = (k - k1, m - m1);
            let (second_original, second_rewritten) = match kind {
                Kind::A => (
                    ri(l + 1) / ri(l + k2 + m2 + 1) * rb(l + 2 * k2 + m2, k2) * rb(k2 + m2 - 1, k2 - 1),
                    if k2 == 0 && m2 == 0 {
                        Rational::one()
                    } else {
                        ri((l + 1) * k2) / (ri(2 * k2 + m2 + l + 1) * ri(k2 + m2))
                            * rb(2 * k2 + m2 + l + 1, k2)
                            * rb(k2 + m2, m2)
                    },
                ),
                Kind::B => (
                    rb(l + 2 * k2 + m2, k2) * rb(k2 + m2 - 1, k2 - 1),
                    if k2 == 0 && m2 == 0 {
                        Rational::one()
                    } else {
                        rb(2 * k2 + m2 + l, k2) * rb(k2 + m2 - 1, m2)
                    },
                ),
                Kind::D => return Err(Error::domain("no type D convolution")),
            };
            original += a_local_original(k1, m1) * second_original;
            rewritten += a_local_rewritten(k1, m1) * second_rewritten;
        }
    }
    let closed = match kind {
        Kind::A => {
            if k + m == 0 {
                return Err(Error::domain("the closed form needs k + m > 0"));
            }
            ri((l + 2) * k) / (ri(2 * k + m + l + 2) * ri(k + m)) * rb(2 * k + m + l + 2, k) * rb(k + m, m)
        }
        _ => rb(2 * k + m + l + 1, k) * rb(k + m - 1, m),
    };
    Ok(Convolution {
        original,
        rewritten,
        closed,
    })
}

/// One line per failing `(kind, k, m, ℓ)`; empty when every convolution
/// agrees in all three forms over `1 <= k <= kmax`, `0 <= m <= mmax`,
/// `0 <= ℓ <= lmax`. Also returns the number of triples checked.
pub fn carlitz_convolution_check(kmax: i64, mmax: i64, lmax: i64) -> Result<(usize, Vec<String>)> {
    let mut failures = Vec::new();
    let mut count = 0;
    for kind in [Kind::A, Kind::B] {
        for k in 1..=kmax {
            for m in 0..=mmax {
                for l in 0..=lmax {
                    count += 1;
                    let c = carlitz_convolution(kind, k, m, l)?;
                    if c.original != c.rewritten || c.rewritten != c.closed {
                        failures.push(format!(
                            "{kind:?} (k, m, l) = ({k}, {m}, {l}): original {}, rewritten {}, closed {}",
                            c.original, c.rewritten, c.closed
                        ));
                    }
                }
            }
        }
    }
    Ok((count, failures))
}

/// Both sides of
/// `(C(n−2,i−1)C(n−i−2,i−2) + C(n−1,i)C(n−i−2,i−1))/(n−i) = C(2i−2,i−1)C(n−2,2i−2)/i`.
pub fn binomial_identity_sides(n: i64, i: i64) -> (Rational, Rational) {
    let lhs = (rb(n - 2, i - 1) * rb(n - i - 2, i - 2) + rb(n - 1, i) * rb(n - i - 2, i - 1)) / ri(n - i);
    let rhs = rb(2 * i - 2, i - 1) * rb(n - 2, 2 * i - 2) / ri(i);
    (lhs, rhs)
}

/// Failing `(n, i)` pairs for `2 <= n <= nmax`, `1 <= i <= n/2`, and the
/// number of pairs checked.
pub fn binomial_identity_check(nmax: i64) -> (usize, Vec<(i64, i64)>) {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=nmax {
        for i in 1..=n / 2 {
            count += 1;
            let (l, r) = binomial_identity_sides(n, i);
            if l != r {
                failures.push((n, i));
            }
        }
    }
    (count, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxgamma::local_gamma_poly;
    use crate::exactpoly::Poly1;

    fn x_series(rows: &[&[i64]], order: usize) -> IntSeries {
        IntSeries::from_coeffs(
            rows.iter()
                .map(|r| IntPoly2::from_x_poly(&Poly1::from_i64s(r)))
                .collect(),
            order,
        )
    }

    #[test]
    fn sqrt_of_binomial() {
        let order = 6;
        let a = RatSeries::from_coeffs(vec![RatPoly2::one(), RatPoly2::zero(), rat_poly(&[((1, 0), -4)])], order);
        let s = a.sqrt().unwrap().to_integer().unwrap();
        assert_eq!(s, x_series(&[&[1], &[], &[0, -2], &[], &[0, 0, -2]], order));
        assert!(RatSeries::zero(4).sqrt().is_err());
    }

    #[test]
    fn derivations() {
        let t3 = IntSeries::monomial(IntPoly2::one(), 3, 6);
        assert_eq!(t3.theta(), IntSeries::monomial(int_poly(&[((0, 0), 3)]), 3, 6));
        let one_minus_t = x_series(&[&[1], &[-1]], 5);
        assert_eq!(one_minus_t.d_dt(), x_series(&[&[-1]], 4));
    }

    #[test]
    fn displayed_expansions() {
        assert_eq!(g_base(5).unwrap(), x_series(&[&[1], &[-1], &[0, -2], &[0, -2], &[0, -2, -2]], 5));
        assert_eq!(g_closed(Kind::A, 5).unwrap(), x_series(&[&[1], &[], &[0, 1], &[0, 1], &[0, 1, 2]], 5));
        assert_eq!(g_closed(Kind::B, 5).unwrap(), x_series(&[&[1], &[], &[0, 2], &[0, 3], &[0, 4, 6]], 5));
        assert_eq!(g_closed(Kind::D, 5).unwrap(), x_series(&[&[], &[], &[], &[0, 1], &[0, 2, 2]], 5));
        assert_eq!(g_sum(Kind::A, 5).unwrap(), g_closed(Kind::A, 5).unwrap());
    }

    #[test]
    fn sums_match_local_gamma() {
        let order = 12;
        let ga = g_sum(Kind::A, order).unwrap();
        let gb = g_sum(Kind::B, order).unwrap();
        let gd = g_sum(Kind::D, order).unwrap();
        for n in 4..order {
            let pa = IntPoly2::from_x_poly(&local_gamma_poly(CoxeterType::A(n)));
            assert_eq!(ga.coeff(n), &pa, "A{n}");
            let pb = IntPoly2::from_x_poly(&local_gamma_poly(CoxeterType::B(n)));
            assert_eq!(gb.coeff(n), &pb, "B{n}");
            let pd = IntPoly2::from_x_poly(&local_gamma_poly(CoxeterType::D(n)));
            assert_eq!(gd.coeff(n), &pd, "D{n}");
        }
    }

    #[test]
    fn gamma_sums_match_diagrams() {
        let order = 9;
        let a = gamma_sum(Kind::A, order).unwrap();
        let b = gamma_sum(Kind::B, order).unwrap();
        assert_eq!(a.coeff(3), &int_poly(&[((0, 3), 1), ((1, 1), 2), ((1, 0), 1)]));
        for n in 1..order {
            assert_eq!(a.coeff(n), gamma_triangle_types(&[CoxeterType::A(n)]).unwrap().poly(), "A{n}");
        }
        for n in 2..order {
            let types = CoxeterType::parse("B", n, None).unwrap();
            assert_eq!(b.coeff(n), gamma_triangle_types(&types).unwrap().poly(), "B{n}");
        }
    }

    #[test]
    fn identities_hold_at_moderate_order() {
        let results = verify_identities(10).unwrap();
        for r in &results {
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_identities(5).is_err());
    }

    #[test]
    fn perturbed_series_is_caught() {
        let order = 10;
        let mut set = SeriesSet::compute(order).unwrap();
        let mut coeffs = set.g_a.coeffs().to_vec();
        coeffs[4] = IntPoly2::zero();
        set.g_a = IntSeries::from_coeffs(coeffs, order);
        let results = verify_identities_with(&set).unwrap();
        let first = results.iter().find(|r| r.name.starts_with("G_A =")).unwrap();
        let (n, _) = first.first_nonzero.clone().unwrap();
        assert!(n == 4 || n == 5, "{n}");
        assert!(!results[0].passed());
    }

    #[test]
    fn convolution_examples() {
        let a = carlitz_convolution(Kind::A, 1, 0, 0).unwrap();
        assert_eq!(a.rewritten, ri(2));
        assert_eq!(a.closed, ri(2));
        assert_eq!(a.original, ri(2));
        let b = carlitz_convolution(Kind::B, 1, 0, 0).unwrap();
        assert_eq!((b.original, b.rewritten, b.closed), (ri(3), ri(3), ri(3)));
        for m in 1..4 {
            for l in 0..3 {
                let c = carlitz_convolution(Kind::A, 0, m, l).unwrap();
                assert!(c.rewritten.is_zero() && c.closed.is_zero());
            }
        }
    }

    #[test]
    fn binomial_identity_small() {
        assert_eq!(binomial_identity_sides(4, 2), (ri(1), ri(1)));
        let (l, r) = binomial_identity_sides(2, 1);
        assert_eq!(l, r);
        let (count, failures) = binomial_identity_check(12);
        assert!(failures.is_empty());
        assert_eq!(count, (2..=12).map(|n| n / 2).sum::<i64>() as usize);
    }

    #[test]
    fn named_routes() {
        assert_eq!("GD".parse::<SeriesName>().unwrap(), SeriesName::GammaD);
        assert!("gE".parse::<SeriesName>().is_err());
        assert!(named_series(SeriesName::GammaA, Route::Closed, 5).is_err());
        assert_eq!(
            named_series(SeriesName::G, Route::Sum, 8).unwrap(),
            named_series(SeriesName::G, Route::Closed, 8).unwrap()
        );
    }
}
