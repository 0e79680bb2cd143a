//! Named verification suites with a pass/fail line per check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::clustermodels::{count_roots_by_support, dihedral_subdivision, type_a_subdivision};
use crate::coxgamma::{
    gamma_triangle_closed, gamma_triangle_d, gamma_triangle_types, pell_discriminant, pell_discriminant_check,
    pell_discriminant_matches, reference_tables, verify_tables, ClosedFamily, CoxeterType,
};
use crate::error::{Error, Result};
use crate::exactpoly::{IntPoly1, IntPoly2, YValue};
use crate::facecomplex::Complex;
use crate::serieslab::{binomial_identity_check, carlitz_convolution_check, verify_identities};
use crate::subdivision::{IndexSubset, SphereWithFacet, Subdivision};
use crate::triangles::{h_from_f, h_triangle_from_f, GammaTriangle, TriangleSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Turns an error into a failing check.
    pub fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {}: {}", c.name, c.detail)?;
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{}: {passed}/{} checks passed", self.suite, self.checks.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Series,
    Crosscheck,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tables" => Ok(Suite::Tables),
            "series" => Ok(Suite::Series),
            "crosscheck" => Ok(Suite::Crosscheck),
            "all" => Ok(Suite::All),
            _ => Err(Error::domain(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Tables => "tables",
            Suite::Series => "series",
            Suite::Crosscheck => "crosscheck",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub order: usize,
    pub max_rank: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: 24, max_rank: 6 }
    }
}

/// Runs a suite; checks come out in a fixed order.
pub fn run_suite(suite: Suite, opts: Options) -> Report {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Tables | Suite::All) {
        checks.extend(polygon_family());
        checks.extend(a3_example());
        checks.extend(tables());
    }
    if matches!(suite, Suite::Series | Suite::All) {
        checks.extend(series_identities(opts.order));
        checks.extend(carlitz(6, 6, 6));
        checks.extend(binomial_identity(40));
    }
    if matches!(suite, Suite::Crosscheck | Suite::All) {
        checks.extend(three_way(opts.max_rank));
        checks.extend(properties(opts.max_rank));
    }
    Report {
        suite: suite.to_string(),
        checks,
    }
}

fn p2(terms: &[((usize, usize), i64)]) -> IntPoly2 {
    IntPoly2::from_terms(terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
}

fn rows_i64(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
}

fn compare<T: PartialEq + fmt::Display>(expected: &T, got: &T) -> (bool, String) {
    if expected == got {
        (true, String::new())
    } else {
        (false, format!("expected {expected}, got {got}"))
    }
}

fn gamma_of(set: &TriangleSet) -> Result<&GammaTriangle> {
    set.gamma.as_ref().map_err(Clone::clone)
}

/// Sphere of the `n`-gon boundary with the edge `{v0, v1}` as facet.
pub fn polygon_sphere(n: usize) -> Result<SphereWithFacet> {
    SphereWithFacet::new(Complex::polygon(n)?, vec![0, 1])
}

/// Expected `(F, H, Γ)` of the `n`-gon.
pub fn polygon_expected(n: usize) -> (IntPoly2, IntPoly2, IntPoly2) {
    let n = n as i64;
    (
        p2(&[((0, 0), 1), ((1, 0), n - 2), ((2, 0), n - 3), ((0, 1), 2), ((1, 1), 2), ((0, 2), 1)]),
        p2(&[((0, 0), 1), ((1, 0), n - 4), ((1, 1), 2), ((2, 2), 1)]),
        p2(&[((0, 2), 1), ((1, 0), n - 4)]),
    )
}

fn polygon_check(label: &str, n: usize, sphere: Result<SphereWithFacet>) -> Check {
    Check::from_result(format!("polygon n = {n}, {label}"), (|| {
        let set = sphere?.triangles()?;
        let (f, h, g) = polygon_expected(n);
        let gamma = gamma_of(&set)?.poly().clone();
        let ok = set.f == f && set.h == h && gamma == g;
        let detail = if ok {
            format!("Γ = {gamma}")
        } else {
            format!("F = {}, H = {}, Γ = {gamma}", set.f, set.h)
        };
        Ok((ok, detail))
    })())
}

/// The `n`-gon for `n = 4..12` by the dihedral model and by the bare
/// polygon, and the negative entry of the triangle.
pub fn polygon_family() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 4..=12 {
        checks.push(polygon_check(
            "dihedral model",
            n,
            dihedral_subdivision(n - 2).map(|s| s.sphere()),
        ));
        checks.push(polygon_check("polygon boundary", n, polygon_sphere(n)));
    }
    checks.push(Check::from_result("polygon n = 3, Γ entry (1,0) = -1", (|| {
        let set = polygon_sphere(3)?.triangles()?;
        let g = gamma_of(&set)?;
        let c = g.coeff(1, 0);
        Ok((c == BigInt::from(-1), format!("Γ = {}", g.poly())))
    })()));
    checks
}

/// The type `A₃` model against its three displayed matrices.
pub fn a3_example() -> Vec<Check> {
    let set = type_a_subdivision(3).and_then(|s| s.sphere().triangles());
    let set = match set {
        Ok(s) => s,
        Err(e) => return vec![Check::new("A3 model", false, format!("error: {e}"))],
    };
    let f_rows = rows_i64(&[&[1], &[3, 3], &[3, 8, 5], &[1, 6, 10, 5]]);
    let h = p2(&[
        ((0, 0), 1),
        ((1, 0), 3),
        ((2, 0), 1),
        ((1, 1), 3),
        ((2, 1), 2),
        ((2, 2), 3),
        ((3, 3), 1),
    ]);
    let gamma = p2(&[((0, 3), 1), ((1, 1), 2), ((1, 0), 1)]);
    let facets: BigInt = (0..=3).map(|j| set.f.coeff(3 - j, j)).sum();
    let h_at_one = set.h.specialize_y(YValue::One);
    vec![
        Check::new(
            "A3 F-triangle",
            crate::triangles::triangle_rows(&set.f, 3) == f_rows,
            format!("F = {}", set.f),
        ),
        Check::new("A3 facet count 5 + 5 + 3 + 1", facets == BigInt::from(14), format!("{facets} facets")),
        Check::new("A3 H-triangle", set.h == h, format!("H = {}", set.h)),
        Check::new(
            "A3 H(x,1) = 1 + 6x + 6x^2 + x^3",
            h_at_one == IntPoly1::from_i64s(&[1, 6, 6, 1]),
            format!("H(x,1) = {h_at_one}"),
        ),
        Check::from_result("A3 Γ-triangle", gamma_of(&set).map(|g| compare(&gamma, g.poly()))),
    ]
}

/// Stored tables, rank 2 and rank 3 formulas.
pub fn tables() -> Vec<Check> {
    match verify_tables() {
        Ok(report) => report
            .checks
            .iter()
            .map(|c| {
                let detail = c
                    .mismatches
                    .iter()
                    .map(|m| format!("({}, {}) expected {} got {}", m.i, m.j, m.expected, m.got))
                    .collect::<Vec<_>>()
                    .join("; ");
                Check::new(format!("table {}", c.name), c.passed(), detail)
            })
            .collect(),
        Err(e) => vec![Check::new("tables", false, format!("error: {e}"))],
    }
}

/// Every series identity at the given truncation order.
pub fn series_identities(order: usize) -> Vec<Check> {
    match verify_identities(order) {
        Ok(results) => results
            .into_iter()
            .map(|r| {
                let detail = match &r.first_nonzero {
                    None => format!("zero below t^{}", r.order),
                    Some((n, c)) => format!("residual at t^{n}: {c}"),
                };
                Check::new(format!("series {}", r.name), r.passed(), detail)
            })
            .collect(),
        Err(e) => vec![Check::new("series identities", false, format!("error: {e}"))],
    }
}

pub fn carlitz(kmax: i64, mmax: i64, lmax: i64) -> Vec<Check> {
    let name = format!("convolutions 1 <= k <= {kmax}, m <= {mmax}, l <= {lmax}");
    vec![Check::from_result(
        name,
        carlitz_convolution_check(kmax, mmax, lmax).map(|(count, failures)| {
            if failures.is_empty() {
                (true, format!("{count} triples"))
            } else {
                (false, failures.join("; "))
            }
        }),
    )]
}

pub fn binomial_identity(nmax: i64) -> Vec<Check> {
    let (count, failures) = binomial_identity_check(nmax);
    vec![Check::new(
        format!("binomial identity n <= {nmax}"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("{count} pairs")
        } else {
            format!("failing (n, i): {failures:?}")
        },
    )]
}

/// `Γ_{A_n}` by face enumeration, by the local γ sum, by the closed form
/// and by the diagram sum, for `1 <= n <= max_rank`.
pub fn three_way(max_rank: usize) -> Vec<Check> {
    (1..=max_rank)
        .map(|n| {
            Check::from_result(format!("A{n} Γ: model = local sum = closed form = diagram"), (|| {
                let sub = type_a_subdivision(n)?;
                let set = sub.sphere().triangles()?;
                let model = gamma_of(&set)?.poly().clone();
                let local = sub.gamma_from_local_sum()?;
                let closed = gamma_triangle_closed(ClosedFamily::A, n)?.poly().clone();
                let diagram = gamma_triangle_types(&[CoxeterType::A(n)])?.poly().clone();
                let ok = model == local && local == closed && closed == diagram;
                let detail = if ok {
                    format!("Γ = {model}")
                } else {
                    format!("model {model}; local {local}; closed {closed}; diagram {diagram}")
                };
                Ok((ok, detail))
            })())
        })
        .collect()
}

/// The models checked by [`properties`]: type A up to `max_rank` and the
/// dihedral types `I₂(m)` for `2 <= m <= 8`.
pub fn models(max_rank: usize) -> Result<Vec<(String, Subdivision)>> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((format!("A{n}"), type_a_subdivision(n)?));
    }
    for m in 2..=8 {
        out.push((format!("I2({m})"), dihedral_subdivision(m)?));
    }
    Ok(out)
}

/// `h_{C₊} = Σ_{J ⊆ I} ℓ_{C₊(J)}`, the local h of `J = ∅` being 1.
pub fn mobius_check(sub: &Subdivision) -> Result<bool> {
    let mut acc = IntPoly1::zero();
    for j in sub.full_set().subsets() {
        let local = if j.is_empty() {
            IntPoly1::one()
        } else {
            sub.restrict_subdivision(j)?.local_h()?
        };
        acc = &acc + &local;
    }
    Ok(acc == sub.restriction_h(sub.full_set())?)
}

/// `γ_{0,j} = [j = d]`.
pub fn top_column_check(g: &GammaTriangle) -> bool {
    (0..=g.degree()).all(|j| {
        let expected = if j == g.degree() { BigInt::one() } else { BigInt::zero() };
        g.coeff(0, j) == expected
    })
}

/// Γ-triangles of the connected cluster types used by the property checks.
pub fn cluster_triangles() -> Result<Vec<(String, GammaTriangle)>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((format!("A{n}"), gamma_triangle_closed(ClosedFamily::A, n)?));
    }
    for n in 2..=8 {
        out.push((format!("B{n}"), gamma_triangle_closed(ClosedFamily::B, n)?));
    }
    for n in 4..=8 {
        out.push((format!("D{n}"), gamma_triangle_d(n)?));
    }
    for m in 4..=12 {
        out.push((format!("I2({m})"), gamma_triangle_types(&[CoxeterType::I2(m)])?));
    }
    for t in reference_tables() {
        out.push((t.name.to_string(), gamma_triangle_types(&t.types)?));
    }
    out.push(("H3".into(), gamma_triangle_types(&[CoxeterType::H3])?));
    Ok(out)
}

/// The model and cluster-type invariants that do not need random inputs.
pub fn properties(max_rank: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let models = match models(max_rank) {
        Ok(m) => m,
        Err(e) => return vec![Check::new("models", false, format!("error: {e}"))],
    };
    for (name, sub) in &models {
        let sphere = sub.sphere();
        checks.push(Check::from_result(format!("{name} F(x,x) = f and H(x,1) = h"), (|| {
            let set = sphere.triangles()?;
            let f = sphere.complex().f_polynomial();
            let h = h_from_f(&f, set.degree)?;
            let ok = set.f.specialize_y(YValue::X) == f && set.h.specialize_y(YValue::One) == h;
            Ok((ok, format!("h = {h}")))
        })()));
        checks.push(Check::from_result(format!("{name} H from F = H by restriction sum"), (|| {
            let direct = sub.h_triangle_direct()?;
            let via_f = h_triangle_from_f(&sphere.f_triangle(), sub.rank())?;
            Ok(compare(&via_f, &direct))
        })()));
        checks.push(Check::from_result(format!("{name} local h symmetric"), (|| {
            let l = sub.local_h()?;
            Ok((l.is_palindromic(sub.rank()), format!("local h = {l}")))
        })()));
        checks.push(Check::from_result(
            format!("{name} Möbius inversion"),
            mobius_check(sub).map(|ok| (ok, String::new())),
        ));
        checks.push(Check::new(format!("{name} sphere is flag"), sphere.complex().is_flag(), ""));
    }
    checks.push(Check::from_result("join A2 * A2 local γ = x^2", (|| {
        let a2 = type_a_subdivision(2)?;
        let joined = Subdivision::join(&a2, &a2)?;
        let g = joined.local_gamma()?;
        Ok(compare(&IntPoly1::from_i64s(&[0, 0, 1]), &g))
    })()));
    for n in 1..=max_rank {
        checks.push(Check::from_result(format!("A{n} γ_(1,l) counts roots by support"), (|| {
            let set = type_a_subdivision(n)?.sphere().triangles()?;
            let g = gamma_of(&set)?;
            let counts = count_roots_by_support(n);
            let ok = (0..n).all(|l| {
                let expected = counts.get(&(n - l)).copied().unwrap_or(0);
                g.coeff(1, l) == BigInt::from(expected)
            });
            Ok((ok, format!("{counts:?}")))
        })()));
    }
    checks.push(Check::new(
        "Pell discriminant = Γ of I2(6)",
        pell_discriminant_check(),
        format!("{}", pell_discriminant()),
    ));
    checks.push(Check::from_result(
        "Pell discriminant differs from Γ of I2(5)",
        pell_discriminant_matches(5).map(|m| (!m, String::new())),
    ));
    match cluster_triangles() {
        Ok(all) => {
            let negative: Vec<&str> = all
                .iter()
                .filter(|(_, g)| !g.is_nonnegative())
                .map(|(n, _)| n.as_str())
                .collect();
            checks.push(Check::new(
                format!("cluster Γ entries >= 0 ({} types)", all.len()),
                negative.is_empty(),
                negative.join(", "),
            ));
            let bad: Vec<&str> = all
                .iter()
                .filter(|(_, g)| !top_column_check(g))
                .map(|(n, _)| n.as_str())
                .collect();
            checks.push(Check::new("cluster γ_(0,j) = [j = d]", bad.is_empty(), bad.join(", ")));
        }
        Err(e) => checks.push(Check::new("cluster triangles", false, format!("error: {e}"))),
    }
    for n in 2..=8 {
        checks.push(Check::from_result(format!("B{n} closed form = diagram"), (|| {
            let types = CoxeterType::parse("B", n, None)?;
            let closed = gamma_triangle_closed(ClosedFamily::B, n)?;
            Ok(compare(closed.poly(), gamma_triangle_types(&types)?.poly()))
        })()));
    }
    for n in 4..=8 {
        checks.push(Check::from_result(format!("D{n} formula = diagram"), (|| {
            let formula = gamma_triangle_d(n)?;
            Ok(compare(formula.poly(), gamma_triangle_types(&[CoxeterType::D(n)])?.poly()))
        })()));
    }
    checks.push(Check::from_result("D3 formula = A3", (|| {
        Ok(compare(
            gamma_triangle_d(3)?.poly(),
            gamma_triangle_types(&[CoxeterType::A(3)])?.poly(),
        ))
    })()));
    checks.push(Check::from_result("parabolic restriction of A4 to {s1, s2, s4}", (|| {
        // C₊(J) for J = {s1, s2, s4} splits as the join of A2 and A1 pieces.
        let sub = type_a_subdivision(4)?;
        let piece = sub.restriction_h(IndexSubset(0b1011))?;
        let (a2, a1) = (type_a_subdivision(2)?, type_a_subdivision(1)?);
        let product = &a2.restriction_h(a2.full_set())? * &a1.restriction_h(a1.full_set())?;
        Ok(compare(&product, &piece))
    })()));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_suite_passes() {
        let report = run_suite(Suite::Tables, Options::default());
        assert!(report.all_passed(), "{report}");
        assert!(report.to_string().ends_with("checks passed"));
    }

    #[test]
    fn crosscheck_small() {
        let report = run_suite(Suite::Crosscheck, Options { order: 8, max_rank: 4 });
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn suite_names() {
        for s in ["tables", "series", "crosscheck", "all"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_check_is_reported() {
        let report = Report {
            suite: "x".into(),
            checks: vec![Check::new("a", true, ""), Check::from_result("b", Err(Error::domain("boom")))],
        };
        assert!(!report.all_passed());
        assert_eq!(report.failures().count(), 1);
        assert!(report.to_string().contains("FAIL b: error: domain error: boom"));
    }
}
