//! Basis changes between f-, h- and γ-vectors, and between F-, H- and
//! Γ-triangles.
//!
//! Every rational substitution is applied in its cleared polynomial form, so
//! all arithmetic stays in the integers:
//!
//! * `h(x) = Σ f_{i-1} x^i (1-x)^{d-i}` and back `f(x) = Σ h_i x^i (1+x)^{d-i}`;
//! * `H(x,y) = Σ F_{i,j} x^{i+j} y^j (1-x)^{d-i-j}` and back
//!   `F(x,y) = Σ H_{a,b} x^{a-b} y^b (1+x)^{d-a}`;
//! * `H(x,y) = Σ γ_{i,j} x^i (1+xy)^j (1+x)^{d-2i-j}`.
//!
//! Matrices are rendered with the y-power `j` decreasing from the top row and
//! the x-power `i` increasing from left to right.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{IntPoly1, IntPoly2};

fn one_plus_x() -> IntPoly1 {
    IntPoly1::from_i64s(&[1, 1])
}

fn one_minus_x() -> IntPoly1 {
    IntPoly1::from_i64s(&[1, -1])
}

fn check_degree(p: &IntPoly1, d: usize, what: &str) -> Result<()> {
    match p.degree() {
        Some(deg) if deg > d => Err(Error::domain(format!(
            "{what} has degree {deg}, larger than d = {d}"
        ))),
        _ => Ok(()),
    }
}

/// `h(x) = Σ f_{i-1} x^i (1-x)^{d-i}`.
pub fn h_from_f(f: &IntPoly1, d: usize) -> Result<IntPoly1> {
    check_degree(f, d, "f-polynomial")?;
    let mut h = IntPoly1::zero();
    for (i, c) in f.terms() {
        h = &h + &one_minus_x().pow((d - i) as u32).shift(i).scale(c);
    }
    Ok(h)
}

/// `f(x) = Σ h_i x^i (1+x)^{d-i}`.
pub fn f_from_h(h: &IntPoly1, d: usize) -> Result<IntPoly1> {
    check_degree(h, d, "h-polynomial")?;
    let mut f = IntPoly1::zero();
    for (i, c) in h.terms() {
        f = &f + &one_plus_x().pow((d - i) as u32).shift(i).scale(c);
    }
    Ok(f)
}

/// γ-vector `(γ_0, ..., γ_{⌊d/2⌋})` of a degree-`d` symmetric polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaVector {
    pub degree: usize,
    pub entries: Vec<BigInt>,
}

impl GammaVector {
    pub fn as_poly(&self) -> IntPoly1 {
        IntPoly1::from_coeffs(self.entries.iter().cloned())
    }

    /// `Σ γ_i x^i (1+x)^{d-2i}`.
    pub fn to_h(&self) -> IntPoly1 {
        gamma_expand(&self.as_poly(), self.degree)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|c| !c.is_negative())
    }
}

fn gamma_expand(gamma: &IntPoly1, d: usize) -> IntPoly1 {
    let mut h = IntPoly1::zero();
    for (i, c) in gamma.terms() {
        h = &h + &one_plus_x().pow((d - 2 * i) as u32).shift(i).scale(c);
    }
    h
}

/// Runs the triangular extraction of `h` in the basis `x^i (1+x)^{d-2i}`,
/// returning the coefficients and the final residual.
fn gamma_extract(h: &IntPoly1, d: usize) -> (Vec<BigInt>, IntPoly1) {
    let mut residual = h.clone();
    let mut gammas = Vec::with_capacity(d / 2 + 1);
    for i in 0..=d / 2 {
        let g = residual.coeff(i);
        if !g.is_zero() {
            residual = &residual - &one_plus_x().pow((d - 2 * i) as u32).shift(i).scale(&g);
        }
        gammas.push(g);
    }
    (gammas, residual)
}

/// Writes `h = Σ γ_i x^i (1+x)^{d-2i}`; fails unless the residual vanishes.
pub fn gamma_from_h(h: &IntPoly1, d: usize) -> Result<GammaVector> {
    check_degree(h, d, "h-polynomial")?;
    let (entries, residual) = gamma_extract(h, d);
    if !residual.is_zero() {
        return Err(Error::NotGammaRepresentable {
            row: None,
            residual: residual.to_string(),
        });
    }
    Ok(GammaVector { degree: d, entries })
}

/// `H(x,y) = Σ F_{i,j} x^{i+j} y^j (1-x)^{d-i-j}`.
pub fn h_triangle_from_f(f: &IntPoly2, d: usize) -> Result<IntPoly2> {
    let mut h = IntPoly2::zero();
    for ((i, j), c) in f.terms() {
        if i + j > d {
            return Err(Error::domain(format!(
                "F-triangle term x^{i} y^{j} exceeds d = {d}"
            )));
        }
        let factor = IntPoly2::from_x_poly(&one_minus_x().pow((d - i - j) as u32));
        h = &h + &factor.shift(i + j, j).scale(c);
    }
    Ok(h)
}

/// `F(x,y) = Σ H_{a,b} x^{a-b} y^b (1+x)^{d-a}`.
pub fn f_triangle_from_h(h: &IntPoly2, d: usize) -> Result<IntPoly2> {
    let mut f = IntPoly2::zero();
    for ((a, b), c) in h.terms() {
        if b > a {
            return Err(Error::domain(format!(
                "H-triangle term x^{a} y^{b} has y-degree above x-degree"
            )));
        }
        if a > d {
            return Err(Error::domain(format!("H-triangle term x^{a} exceeds d = {d}")));
        }
        let factor = IntPoly2::from_x_poly(&one_plus_x().pow((d - a) as u32));
        f = &f + &factor.shift(a - b, b).scale(c);
    }
    Ok(f)
}

/// The coefficients `γ_{i,j}` of an H-triangle in the basis
/// `x^i (1+xy)^j (1+x)^{d-2i-j}`, together with `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaTriangle {
    degree: usize,
    coefficients: IntPoly2,
}

impl GammaTriangle {
    /// Validates that every nonzero entry satisfies `2i + j <= d`.
    pub fn new(coefficients: IntPoly2, degree: usize) -> Result<Self> {
        if let Some(((i, j), _)) = coefficients.terms().find(|&((i, j), _)| 2 * i + j > degree) {
            return Err(Error::domain(format!(
                "Γ entry ({i}, {j}) lies outside the triangle 2i + j <= {degree}"
            )));
        }
        Ok(GammaTriangle {
            degree,
            coefficients,
        })
    }

    /// Builds from rows in display order: `rows[0]` is `j = d`, the last row
    /// is `j = 0`; each row lists `γ_{0,j}, γ_{1,j}, ...`.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::domain("a Γ-triangle needs at least one row"));
        }
        let d = rows.len() - 1;
        let mut terms = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let j = d - r;
            for (i, &c) in row.iter().enumerate() {
                terms.push(((i, j), BigInt::from(c)));
            }
        }
        GammaTriangle::new(IntPoly2::from_terms(terms), d)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &IntPoly2 {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coefficients.coeff(i, j)
    }

    /// `Σ γ_{i,j} x^i (1+xy)^j (1+x)^{d-2i-j}`.
    pub fn to_h_triangle(&self) -> IntPoly2 {
        let one_plus_xy = IntPoly2::one() + IntPoly2::monomial(BigInt::from(1), 1, 1);
        let opx = IntPoly2::from_x_poly(&one_plus_x());
        let mut h = IntPoly2::zero();
        for ((i, j), c) in self.coefficients.terms() {
            let term = &one_plus_xy.pow(j as u32) * &opx.pow((self.degree - 2 * i - j) as u32);
            h = &h + &term.shift(i, 0).scale(c);
        }
        h
    }

    /// `Σ γ_{i,j} (x(1+x))^i (1+x+y)^j (1+2x)^{d-2i-j}`.
    pub fn to_f_triangle(&self) -> IntPoly2 {
        let x_one_plus_x = IntPoly2::from_x_poly(&IntPoly1::from_i64s(&[0, 1, 1]));
        let one_x_y = IntPoly2::one() + IntPoly2::x() + IntPoly2::y();
        let one_two_x = IntPoly2::from_x_poly(&IntPoly1::from_i64s(&[1, 2]));
        let mut f = IntPoly2::zero();
        for ((i, j), c) in self.coefficients.terms() {
            let term = &(&x_one_plus_x.pow(i as u32) * &one_x_y.pow(j as u32))
                * &one_two_x.pow((self.degree - 2 * i - j) as u32);
            f = &f + &term.scale(c);
        }
        f
    }

    /// Row sums `γ_i = Σ_j γ_{i,j}`: the ordinary γ-vector.
    pub fn gamma_vector(&self) -> GammaVector {
        let mut entries = vec![BigInt::zero(); self.degree / 2 + 1];
        for ((i, _), c) in self.coefficients.terms() {
            entries[i] += c;
        }
        GammaVector {
            degree: self.degree,
            entries,
        }
    }

    /// The `j = 0` row as a polynomial in `x` (the local γ-polynomial).
    pub fn bottom_row(&self) -> IntPoly1 {
        self.coefficients.y_coeff(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.first_negative().is_none()
    }

    /// Rows in display order, `j = d` first, each trimmed to `i <= (d-j)/2`.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..=self.degree)
            .rev()
            .map(|j| (0..=(self.degree - j) / 2).map(|i| self.coeff(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for GammaTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_matrix(&self.rows()))
    }
}

/// Writes `H = Σ γ_{i,j} x^i (1+xy)^j (1+x)^{d-2i-j}`, extracting rows
/// from `j = d` down to `0`.
///
/// At row `j` every higher row has been removed, so the `y^j` coefficient
/// of the residual equals `x^j Σ_i γ_{i,j} x^i (1+x)^{(d-j)-2i}`; dividing
/// by `x^j` reduces the row to a univariate γ-extraction of degree `d - j`.
pub fn gamma_triangle_from_h(h: &IntPoly2, d: usize) -> Result<GammaTriangle> {
    if let Some(dx) = h.x_degree() {
        if dx > d {
            return Err(Error::domain(format!("H-triangle has x-degree {dx} > d = {d}")));
        }
    }
    let one_plus_xy = IntPoly2::one() + IntPoly2::monomial(BigInt::from(1), 1, 1);
    let opx = IntPoly2::from_x_poly(&one_plus_x());
    let mut residual = h.clone();
    let mut terms = Vec::new();
    for j in (0..=d).rev() {
        let row = residual.y_coeff(j);
        if row.is_zero() {
            continue;
        }
        let reduced = row.div_x_pow(j).ok_or_else(|| Error::NotGammaRepresentable {
            row: Some(j),
            residual: row.to_string(),
        })?;
        let (gammas, rest) = gamma_extract(&reduced, d - j);
        if !rest.is_zero() {
            return Err(Error::NotGammaRepresentable {
                row: Some(j),
                residual: rest.shift(j).to_string(),
            });
        }
        for (i, g) in gammas.into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let basis = &one_plus_xy.pow(j as u32) * &opx.pow((d - 2 * i - j) as u32);
            residual = &residual - &basis.shift(i, 0).scale(&g);
            terms.push(((i, j), g));
        }
    }
    if !residual.is_zero() {
        return Err(Error::NotGammaRepresentable {
            row: residual.y_degree(),
            residual: residual.to_string(),
        });
    }
    GammaTriangle::new(IntPoly2::from_terms(terms), d)
}

/// F-, H- and (when it exists) Γ-triangle of one sphere with a facet.
#[derive(Clone, Debug)]
pub struct TriangleSet {
    pub degree: usize,
    pub f: IntPoly2,
    pub h: IntPoly2,
    pub gamma: Result<GammaTriangle>,
}

impl TriangleSet {
    pub fn from_f_triangle(f: IntPoly2, degree: usize) -> Result<Self> {
        let h = h_triangle_from_f(&f, degree)?;
        let gamma = gamma_triangle_from_h(&h, degree);
        Ok(TriangleSet { degree, f, h, gamma })
    }

    /// `H(x, 1)` as a γ-vector, when `h` is symmetric.
    pub fn gamma_vector(&self) -> Result<GammaVector> {
        gamma_from_h(&self.h.specialize_y(crate::exactpoly::YValue::One), self.degree)
    }
}

/// Renders an H- or F-triangle as a `(d+1)`-row matrix in display order.
pub fn triangle_rows(p: &IntPoly2, d: usize) -> Vec<Vec<BigInt>> {
    let width = p.x_degree().unwrap_or(0).max(d) + 1;
    (0..=d)
        .rev()
        .map(|j| {
            let mut row: Vec<BigInt> = (0..width).map(|i| p.coeff(i, j)).collect();
            while row.len() > 1 && row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
            row
        })
        .collect()
}

/// Right-aligned text rendering of matrix rows.
pub fn render_matrix(rows: &[Vec<BigInt>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{:>width$}", c.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
