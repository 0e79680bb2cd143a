//! Γ-triangles of finite Coxeter types: local γ-polynomials, the sum over
//! parabolic subdiagrams, closed forms in types A, B, D, rank 2 and 3
//! formulas, and two recursively defined families.

mod diagram;
mod tables;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use diagram::{CoxeterDiagram, CoxeterType, DiagramEdge, DiagramFile};
pub use tables::{reference_tables, verify_tables, Mismatch, ReferenceTable, TableCheck, TableReport};

use crate::error::{Error, Result};
use crate::exactpoly::{binom, exact_div, IntPoly1, IntPoly2};
use crate::triangles::GammaTriangle;

/// Local γ-polynomial of an irreducible type (the `j = 0` row of its Γ-triangle).
pub fn local_gamma_poly(t: CoxeterType) -> IntPoly1 {
    let terms = |f: &dyn Fn(i64) -> BigInt, n: usize| {
        IntPoly1::from_terms((1..=n / 2).map(|k| (k, f(k as i64))))
    };
    match t {
        CoxeterType::A(n) => {
            let n64 = n as i64;
            terms(
                &|k| {
                    let num = binom(n64, k) * binom(n64 - k - 1, k - 1);
                    exact_div(&num, &BigInt::from(n64 - k + 1)).expect("type A local γ is integral")
                },
                n,
            )
        }
        CoxeterType::B(n) => {
            let n = n as i64;
            terms(&|k| binom(n, k) * binom(n - k - 1, k - 1), n as usize)
        }
        CoxeterType::D(n) => local_gamma_d(n),
        CoxeterType::I2(m) => IntPoly1::monomial(BigInt::from(m) - 2, 1),
        CoxeterType::H3 => IntPoly1::from_i64s(&[0, 8]),
        CoxeterType::H4 => IntPoly1::from_i64s(&[0, 42, 40]),
        CoxeterType::F4 => IntPoly1::from_i64s(&[0, 10, 9]),
        CoxeterType::E6 => IntPoly1::from_i64s(&[0, 7, 35, 13]),
        CoxeterType::E7 => IntPoly1::from_i64s(&[0, 16, 124, 112]),
        CoxeterType::E8 => IntPoly1::from_i64s(&[0, 44, 484, 784, 120]),
    }
}

/// `Σ_{k≥1} ((n−2)/k) C(2k−2, k−1) C(n−2, 2k−2) x^k`, for any `n >= 2`.
///
/// At `n = 3` this is `x`, the local γ of `A₃ = D₃`; at `n = 2` it vanishes
/// as it should for `A₁ × A₁`.
pub fn local_gamma_d(n: usize) -> IntPoly1 {
    let n = n as i64;
    IntPoly1::from_terms((1..=n / 2).map(|k| {
        let num = BigInt::from(n - 2) * binom(2 * k - 2, k - 1) * binom(n - 2, 2 * k - 2);
        (k as usize, exact_div(&num, &BigInt::from(k)).expect("type D local γ is integral"))
    }))
}

/// Local γ of a product of irreducible types (1 for the empty product).
pub fn local_gamma_product(types: &[CoxeterType]) -> IntPoly1 {
    types
        .iter()
        .fold(IntPoly1::one(), |acc, &t| &acc * &local_gamma_poly(t))
}

/// `Γ(x, y) = Σ_{J ⊆ I} γ^ℓ_{I−J}(x) y^{|J|}`, where `γ^ℓ` of the subdiagram
/// on `I − J` is the product over its connected components.
pub fn gamma_triangle_diagram(dgm: &CoxeterDiagram) -> Result<GammaTriangle> {
    let n = dgm.len();
    if n > 24 {
        return Err(Error::domain(format!("diagram with {n} vertices is too large")));
    }
    let full: u64 = (1u64 << n) - 1;
    let mut cache: BTreeMap<Vec<CoxeterType>, IntPoly1> = BTreeMap::new();
    let mut gamma = IntPoly2::zero();
    for keep in 0..=full {
        let mut types = dgm.classify_subset(keep)?;
        types.sort();
        let local = cache
            .entry(types)
            .or_insert_with_key(|t| local_gamma_product(t))
            .clone();
        if local.is_zero() {
            continue;
        }
        let j = n - keep.count_ones() as usize;
        gamma = &gamma + &IntPoly2::from_x_poly(&local).shift(0, j);
    }
    GammaTriangle::new(gamma, n)
}

/// Γ-triangle of a list of irreducible types via the standard diagram.
pub fn gamma_triangle_types(types: &[CoxeterType]) -> Result<GammaTriangle> {
    gamma_triangle_diagram(&CoxeterDiagram::from_types(types))
}

/// Families with a closed form for every `γ_{k,ℓ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFamily {
    A,
    B,
}

/// Closed-form coefficient of `x^k y^ℓ` in `Γ` of type `A_n` or `B_n`.
pub fn gamma_coeff_closed(kind: ClosedFamily, n: usize, k: usize, l: usize) -> Result<BigInt> {
    if l + 2 * k > n {
        return Err(Error::domain(format!("(k, ℓ) = ({k}, {l}) outside 2k + ℓ <= {n}")));
    }
    if k == 0 {
        return Ok(if l == n { BigInt::one() } else { BigInt::zero() });
    }
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let base = binom(n, k) * binom(n - k - l - 1, k - 1);
    match kind {
        ClosedFamily::A => exact_div(&(base * (l + 1)), &BigInt::from(n - k + 1)),
        ClosedFamily::B => Ok(base),
    }
}

/// Γ-triangle of `A_n` or `B_n` assembled from [`gamma_coeff_closed`].
pub fn gamma_triangle_closed(kind: ClosedFamily, n: usize) -> Result<GammaTriangle> {
    let mut terms = Vec::new();
    for k in 0..=n / 2 {
        for l in 0..=n - 2 * k {
            terms.push(((k, l), gamma_coeff_closed(kind, n, k, l)?));
        }
    }
    GammaTriangle::new(IntPoly2::from_terms(terms), n)
}

/// `Γ_{D_n} = y Γ_{B_{n−1}} + γ^ℓ_{D_n}` for `n >= 3`.
pub fn gamma_triangle_d(n: usize) -> Result<GammaTriangle> {
    if n < 3 {
        return Err(Error::domain(format!("type D formula needs n >= 3, got {n}")));
    }
    let b = gamma_triangle_closed(ClosedFamily::B, n - 1)?;
    let gamma = &b.poly().shift(0, 1) + &IntPoly2::from_x_poly(&local_gamma_d(n));
    GammaTriangle::new(gamma, n)
}

/// Uniform formulas in ranks 2 and 3 in terms of the Coxeter number `h`.
pub fn rank23_formula(h: u32, rank: usize) -> Result<GammaTriangle> {
    let h = i64::from(h);
    match rank {
        2 if h >= 2 => GammaTriangle::new(
            IntPoly2::from_terms([((0, 2), BigInt::one()), ((1, 0), BigInt::from(h - 2))]),
            2,
        ),
        3 if [2, 4, 6, 10].contains(&h) => {
            let xy = checked_div(6 * (h - 2), h + 2)?;
            let x = checked_div(3 * (h - 2) * (h - 2), 2 * (h + 2))?;
            GammaTriangle::new(
                IntPoly2::from_terms([
                    ((0, 3), BigInt::one()),
                    ((1, 1), BigInt::from(xy)),
                    ((1, 0), BigInt::from(x)),
                ]),
                3,
            )
        }
        2 | 3 => Err(Error::domain(format!("no rank {rank} type with Coxeter number {h}"))),
        _ => Err(Error::domain(format!("rank must be 2 or 3, got {rank}"))),
    }
}

fn checked_div(a: i64, b: i64) -> Result<i64> {
    if a % b != 0 {
        return Err(Error::domain(format!("{a}/{b} is not an integer")));
    }
    Ok(a / b)
}

/// The two recursively defined families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lucas,
    Pell,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lucas" => Ok(Family::Lucas),
            "pell" => Ok(Family::Pell),
            _ => Err(Error::domain(format!("unknown family {s:?}"))),
        }
    }
}

/// `u_n` with `u₀ = 0`, `u₁ = 1` and
/// Lucas: `u_{n+1} = (y² + 2x) u_n + (xy − x²) u_{n−1}`,
/// Pell: `u_{n+1} = y u_n + x u_{n−1}`.
pub fn family_recursion(family: Family, n: usize) -> IntPoly2 {
    let (a, b) = match family {
        Family::Lucas => (
            IntPoly2::from_terms([((0, 2), BigInt::one()), ((1, 0), BigInt::from(2))]),
            IntPoly2::from_terms([((1, 1), BigInt::one()), ((2, 0), BigInt::from(-1))]),
        ),
        Family::Pell => (IntPoly2::y(), IntPoly2::x()),
    };
    let (mut prev, mut cur) = (IntPoly2::zero(), IntPoly2::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&a * &cur) + &(&b * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Discriminant `y² + 4x` of `λ² − yλ − x`, the characteristic polynomial
/// of the Pell recursion.
pub fn pell_discriminant() -> IntPoly2 {
    IntPoly2::from_terms([((0, 2), BigInt::one()), ((1, 0), BigInt::from(4))])
}

/// Whether the Pell discriminant equals `Γ_{I₂(m)}`.
pub fn pell_discriminant_matches(m: u32) -> Result<bool> {
    let types = CoxeterType::parse("I2", 2, Some(m))?;
    Ok(gamma_triangle_types(&types)?.poly() == &pell_discriminant())
}

pub fn pell_discriminant_check() -> bool {
    pell_discriminant_matches(6).unwrap_or(false)
}
