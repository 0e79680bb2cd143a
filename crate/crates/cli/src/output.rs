use std::io::IsTerminal;

use gammatri::triangles::render_matrix;
use gammatri::verify::Report;
use gammatri::BigInt;
use serde_json::{json, Value};

/// Colors are used only on a terminal and only when `NO_COLOR` is unset.
pub fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

pub fn rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

pub fn titled_matrix(title: &str, rows: &[Vec<BigInt>]) -> String {
    format!("{title}\n{}\n", render_matrix(rows))
}

pub fn report_human(report: &Report) -> String {
    let color = use_color();
    let mut out = String::new();
    for c in &report.checks {
        let status = match (c.passed, color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        out.push_str(status);
        out.push(' ');
        out.push_str(&c.name);
        if !c.detail.is_empty() {
            out.push_str(": ");
            out.push_str(&c.detail);
        }
        out.push('\n');
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{}: {passed}/{} checks passed\n", report.suite, report.checks.len()));
    out
}

pub fn report_json(report: &Report) -> Value {
    json!({
        "suite": report.suite,
        "passed": report.all_passed(),
        "checks": report.checks,
    })
}
