use std::fmt::Write;

use serde_json::Value;

use super::Report;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key.path = value` lines for every leaf, in document order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push((prefix.to_string(), format!("[{}]", items.join(", "))));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        leaf => out.push((prefix.to_string(), scalar(leaf))),
    }
}

pub fn text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", r.command.join(" "));
    let _ = writeln!(s, "inputs digest: {}", r.inputs_digest);
    if let Some(m) = &r.mode {
        let _ = writeln!(s, "mode: {m}");
    }
    let mut rows = Vec::new();
    flatten("", &r.results, &mut rows);
    if !rows.is_empty() {
        let _ = writeln!(s, "\nresults");
        let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &rows {
            let _ = writeln!(s, "  {k:<w$}  {v}");
        }
    }
    if !r.verdicts.is_empty() {
        let _ = writeln!(s, "\nverdicts");
        let w = r.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
        for v in &r.verdicts {
            let tol = v.tol.map(|t| format!("tol {t:e}")).unwrap_or_default();
            let mark = if v.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  {mark}  {:<w$}  {}  {tol}", v.name, scalar(&v.value));
        }
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}
