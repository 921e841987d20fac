#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("spawn qwalk")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn golden(name: &str) -> String {
    let path = golden_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "bool",
        Value::Number(n) if n.is_f64() => "number",
        Value::Number(_) => "integer",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let path = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                walk(&path, child, out);
            }
        }
        Value::Array(items) => {
            out.push(format!("{prefix}: array"));
            let mut seen: Vec<String> = Vec::new();
            for item in items {
                let mut lines = Vec::new();
                walk(&format!("{prefix}[]"), item, &mut lines);
                for l in lines {
                    if !seen.contains(&l) {
                        seen.push(l);
                    }
                }
            }
            out.extend(seen);
        }
        leaf => out.push(format!("{prefix}: {}", kind(leaf))),
    }
}

/// Key paths and value kinds of a JSON document, one per line, keys sorted.
/// Integral floats print as integers, so numeric leaves collapse to `number`.
pub fn json_schema(text: &str) -> String {
    let v: Value = serde_json::from_str(text).expect("valid json");
    let mut out = Vec::new();
    walk("", &v, &mut out);
    let mut s = out.join("\n").replace(": integer", ": number");
    s.push('\n');
    s
}

/// Comment-block keys and the column header of a CSV output, values masked.
pub fn csv_schema(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            let masked: Vec<String> = rest
                .split_whitespace()
                .map(|tok| match tok.split_once('=') {
                    Some((k, _)) => format!("{k}="),
                    None => tok.to_string(),
                })
                .collect();
            out.push_str(&format!("# {}\n", masked.join(" ")));
        } else {
            out.push_str(line);
            out.push('\n');
            break;
        }
    }
    out
}

/// The invocation pinned by each golden file.
pub fn golden_args(command: &str) -> Vec<&'static str> {
    match command {
        "simulate" => vec!["simulate", "--rho", "1/sqrt2", "--nu", "pi/4", "--t", "3"],
        "density" => vec![
            "density", "--rho", "0.6", "--nu", "1.0", "--alpha", "0.6,0", "--beta", "0,0.8",
        ],
        "compare" => vec!["compare", "--rho", "0.6", "--nu", "1.0", "--t", "8"],
        "sweep" => vec!["sweep", "--grid", "2,3,-pi/2,pi/2,0.3,0.6"],
        other => panic!("no golden invocation for {other}"),
    }
}

pub const COMMANDS: [&str; 4] = ["simulate", "density", "compare", "sweep"];
