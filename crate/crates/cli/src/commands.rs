use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use gammatri::clustermodels::{dihedral_subdivision, type_a_subdivision};
use gammatri::coxgamma::{
    family_recursion, gamma_triangle_closed, gamma_triangle_d, gamma_triangle_diagram, gamma_triangle_types,
    rank23_formula, ClosedFamily, DiagramFile, Family,
};
use gammatri::facecomplex::ComplexFile;
use gammatri::serieslab::{named_series, Route, SeriesName};
use gammatri::subdivision::SubdivisionFile;
use gammatri::triangles::{gamma_from_h, triangle_rows};
use gammatri::verify::{run_suite, Options, Suite};
use gammatri::{Complex, CoxeterDiagram, CoxeterType, GammaTriangle, SphereWithFacet, Subdivision, TriangleSet};
use serde_json::{json, Value};

use crate::output::{report_human, report_json, rows_json, titled_matrix};
use crate::{FamilyArg, Method, Out, RouteArg, SuiteArg};

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{}: malformed JSON", path.display()))
}

fn load_subdivision(path: &Path, value: Value) -> Result<(Subdivision, Vec<String>)> {
    let file: SubdivisionFile =
        serde_json::from_value(value).with_context(|| format!("{}: not a subdivision file", path.display()))?;
    file.load().with_context(|| format!("{}", path.display()))
}

fn print_json(v: &Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

pub fn triangles(path: &Path, facet: &[String], out: Out) -> Result<ExitCode> {
    let value = read_json(path)?;
    let sphere = if value.get("index_set").is_some() {
        if !facet.is_empty() {
            bail!("--facet applies to bare complexes; a subdivision's sphere has its own facet");
        }
        load_subdivision(path, value)?.0.sphere()
    } else {
        let file: ComplexFile =
            serde_json::from_value(value).with_context(|| format!("{}: not a complex file", path.display()))?;
        let complex = Complex::try_from(file).with_context(|| format!("{}", path.display()))?;
        if facet.is_empty() {
            bail!("a bare complex needs --facet");
        }
        let indices = facet
            .iter()
            .map(|l| complex.vertex_index(l).ok_or_else(|| anyhow!("facet vertex {l:?} is not a vertex")))
            .collect::<Result<Vec<_>>>()?;
        SphereWithFacet::new(complex, indices)?
    };
    let set = sphere.triangles()?;
    print_triangles(&set, out);
    Ok(if set.gamma.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn print_triangles(set: &TriangleSet, out: Out) {
    let d = set.degree;
    let f_rows = triangle_rows(&set.f, d);
    let h_rows = triangle_rows(&set.h, d);
    let gamma_vector = match &set.gamma {
        Ok(g) => Ok(g.gamma_vector()),
        Err(_) => set.gamma_vector(),
    };
    match out {
        Out::Human => {
            out!("{}", titled_matrix("F-triangle", &f_rows));
            outln!();
            out!("{}", titled_matrix("H-triangle", &h_rows));
            outln!();
            match &set.gamma {
                Ok(g) => {
                    out!("{}", titled_matrix("Γ-triangle", &g.rows()));
                    outln!("Γ = {}", g.poly());
                }
                Err(e) => outln!("Γ-triangle: {e}"),
            }
            match &gamma_vector {
                Ok(v) => outln!("γ-vector: {}", list(&v.entries)),
                Err(e) => outln!("γ-vector: {e}"),
            }
        }
        Out::Json => {
            let gamma = match &set.gamma {
                Ok(g) => json!({ "rows": rows_json(&g.rows()), "poly": g.poly().to_string() }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let gv = match &gamma_vector {
                Ok(v) => json!(v.entries.iter().map(ToString::to_string).collect::<Vec<_>>()),
                Err(e) => json!({ "error": e.to_string() }),
            };
            print_json(&json!({
                "degree": d,
                "f": { "rows": rows_json(&f_rows), "poly": set.f.to_string() },
                "h": { "rows": rows_json(&h_rows), "poly": set.h.to_string() },
                "gamma": gamma,
                "gamma_vector": gv,
            }));
        }
    }
}

fn list<T: ToString>(items: &[T]) -> String {
    format!("[{}]", items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn type_names(types: &[CoxeterType]) -> Vec<String> {
    types.iter().map(ToString::to_string).collect()
}

fn print_gamma(types: &[CoxeterType], g: &GammaTriangle, method: &str, out: Out) {
    match out {
        Out::Human => {
            outln!("type: {}", type_names(types).join(" x "));
            out!("{}", titled_matrix("Γ-triangle", &g.rows()));
            outln!("Γ = {}", g.poly());
            outln!("γ-vector: {}", list(&g.gamma_vector().entries));
        }
        Out::Json => print_json(&json!({
            "types": type_names(types),
            "method": method,
            "degree": g.degree(),
            "rows": rows_json(&g.rows()),
            "gamma": g.poly().to_string(),
        })),
    }
}

/// The cluster model for `A_n` or `I₂(m)`.
fn model_for(types: &[CoxeterType], kind: &str, m: Option<u32>) -> Result<Subdivision> {
    let is_dihedral = matches!(kind.to_ascii_uppercase().as_str(), "I" | "I2");
    match types {
        _ if is_dihedral => Ok(dihedral_subdivision(m.unwrap_or(2) as usize)?),
        [CoxeterType::A(n)] => Ok(type_a_subdivision(*n)?),
        _ => bail!("the model method is available for types A and I2 only"),
    }
}

fn formula_for(types: &[CoxeterType]) -> Result<GammaTriangle> {
    Ok(match types {
        [CoxeterType::A(n)] => gamma_triangle_closed(ClosedFamily::A, *n)?,
        [CoxeterType::B(n)] => gamma_triangle_closed(ClosedFamily::B, *n)?,
        [CoxeterType::D(n)] => gamma_triangle_d(*n)?,
        [CoxeterType::I2(m)] => rank23_formula(*m, 2)?,
        [CoxeterType::H3] => rank23_formula(10, 3)?,
        // No closed form: sum over subdiagrams with stored local γ.
        _ => gamma_triangle_types(types)?,
    })
}

pub fn cluster(kind: &str, rank: usize, m: Option<u32>, method: Method, out: Out) -> Result<ExitCode> {
    let types = CoxeterType::parse(kind, rank, m)?;
    let (g, name) = match method {
        Method::Model => {
            let sub = model_for(&types, kind, m)?;
            let set = sub.sphere().triangles()?;
            (set.gamma?, "model")
        }
        Method::LocalSum => {
            let g = match model_for(&types, kind, m) {
                Ok(sub) => GammaTriangle::new(sub.gamma_from_local_sum()?, sub.rank())?,
                Err(_) => gamma_triangle_types(&types)?,
            };
            (g, "local-sum")
        }
        Method::Formula => (formula_for(&types)?, "formula"),
    };
    print_gamma(&types, &g, name, out);
    Ok(ExitCode::SUCCESS)
}

pub fn diagram(path: &Path, out: Out) -> Result<ExitCode> {
    let file: DiagramFile = serde_json::from_value(read_json(path)?)
        .with_context(|| format!("{}: not a diagram file", path.display()))?;
    let dgm = CoxeterDiagram::try_from(file).with_context(|| format!("{}", path.display()))?;
    let types = dgm.classify().with_context(|| format!("{}", path.display()))?;
    let g = gamma_triangle_diagram(&dgm)?;
    print_gamma(&types, &g, "diagram", out);
    Ok(ExitCode::SUCCESS)
}

pub fn local(path: &Path, out: Out) -> Result<ExitCode> {
    let value = read_json(path)?;
    let (sub, ran) = load_subdivision(path, value)?;
    let lh = sub.local_h()?;
    let lg = gamma_from_h(&lh, sub.rank());
    match out {
        Out::Human => {
            outln!("checked: {}", ran.join(", "));
            outln!("local h = {lh}");
            match &lg {
                Ok(g) => outln!("local γ = {}", g.as_poly()),
                Err(e) => outln!("local γ: {e}"),
            }
        }
        Out::Json => {
            let gamma = match &lg {
                Ok(g) => json!(g.as_poly().to_string()),
                Err(e) => json!({ "error": e.to_string() }),
            };
            print_json(&json!({
                "rank": sub.rank(),
                "checked": ran,
                "local_h": lh.to_string(),
                "local_gamma": gamma,
            }));
        }
    }
    Ok(if lg.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn series(name: &str, order: usize, route: RouteArg, out: Out) -> Result<ExitCode> {
    let which: SeriesName = name.parse()?;
    let r = match route {
        RouteArg::Closed => Route::Closed,
        RouteArg::Sum => Route::Sum,
    };
    let s = named_series(which, r, order)?;
    match out {
        Out::Human => {
            for (n, c) in s.coeffs().iter().enumerate() {
                outln!("t^{n}: {c}");
            }
        }
        Out::Json => print_json(&json!({
            "name": name,
            "order": order,
            "route": match route { RouteArg::Closed => "closed", RouteArg::Sum => "sum" },
            "coefficients": s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn family(name: FamilyArg, n: usize, out: Out) -> Result<ExitCode> {
    let (family, label) = match name {
        FamilyArg::Lucas => (Family::Lucas, "lucas"),
        FamilyArg::Pell => (Family::Pell, "pell"),
    };
    let u = family_recursion(family, n);
    match out {
        Out::Human => outln!("u_{n} = {u}"),
        Out::Json => print_json(&json!({ "family": label, "n": n, "u": u.to_string() })),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(suite: SuiteArg, order: usize, max_rank: usize, out: Out) -> Result<ExitCode> {
    let suite = match suite {
        SuiteArg::Tables => Suite::Tables,
        SuiteArg::Series => Suite::Series,
        SuiteArg::Crosscheck => Suite::Crosscheck,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, Options { order, max_rank });
    match out {
        Out::Human => out!("{}", report_human(&report)),
        Out::Json => print_json(&report_json(&report)),
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn export(kind: &str, rank: usize, m: Option<u32>, output: Option<&Path>) -> Result<ExitCode> {
    let types = CoxeterType::parse(kind, rank, m)?;
    let sub = model_for(&types, kind, m)?;
    let text = serde_json::to_string_pretty(&SubdivisionFile::from(&sub))?;
    match output {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?,
        None => outln!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
