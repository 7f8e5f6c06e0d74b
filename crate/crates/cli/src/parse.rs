//! Value parsers for command-line arguments and the `--json` defaults file.

use std::path::Path;

use qhopf::{AbelianGroup, GroupElement};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords(pub Vec<u32>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abc(pub (u32, u32, u32));

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group(pub AbelianGroup);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights(pub Vec<GroupElement>);

fn numbers(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad integer {t:?}: {e}"))).collect()
}

/// `1,0,2`, possibly empty.
pub fn list(s: &str) -> Result<Coords, String> {
    numbers(s).map(Coords)
}

/// `(1,0)` or `1,0`.
pub fn coords(s: &str) -> Result<Coords, String> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let v = numbers(t)?;
    if v.is_empty() {
        return Err(format!("empty element {s:?}"));
    }
    Ok(Coords(v))
}

pub fn abc(s: &str) -> Result<Abc, String> {
    match numbers(s)?.as_slice() {
        &[a, b, c] => Ok(Abc((a, b, c))),
        _ => Err(format!("expected three integers a,b,c, got {s:?}")),
    }
}

/// `2x4` for `ℤ₂ × ℤ₄`, `8` for a cyclic group.
pub fn group(s: &str) -> Result<Group, String> {
    let factors: Vec<u32> = s
        .split(['x', 'X', '×'])
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad group factor {t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    AbelianGroup::new(factors).map(Group).map_err(|e| e.to_string())
}

/// `(1,0);(0,1)`.
pub fn weights(s: &str) -> Result<Weights, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Weights(Vec::new()));
    }
    s.split(';').map(|t| coords(t).map(|c| GroupElement::new(c.0))).collect::<Result<_, _>>().map(Weights)
}

fn join(v: &[Value]) -> Option<String> {
    v.iter().map(|x| x.as_u64().map(|k| k.to_string())).collect::<Option<Vec<_>>>().map(|p| p.join(","))
}

fn element(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) => join(a).map(|s| format!("({s})")),
        Value::Object(o) => o.get("exp").and_then(|e| e.as_array()).and_then(|a| join(a)).map(|s| format!("({s})")),
        _ => None,
    }
}

/// Flag text for one JSON value; `None` when the value should not produce a flag.
fn flag_value(key: &str, v: &Value) -> Result<Option<String>, String> {
    let bad = || format!("unsupported JSON value for {key:?}: {v}");
    Ok(match v {
        Value::Null | Value::Bool(false) => None,
        Value::Bool(true) => Some(String::new()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(o) => {
            if let Some(f) = o.get("factors").and_then(|f| f.as_array()) {
                Some(f.iter().map(|x| x.as_u64().map(|k| k.to_string())).collect::<Option<Vec<_>>>().ok_or_else(bad)?.join("x"))
            } else {
                Some(element(v).ok_or_else(bad)?)
            }
        }
        Value::Array(a) => {
            if let Some(s) = join(a) {
                Some(s)
            } else {
                Some(a.iter().map(element).collect::<Option<Vec<_>>>().ok_or_else(bad)?.join(";"))
            }
        }
    })
}

/// Reads a JSON object and turns its entries into `--key value` pairs.
/// Malformed input is reported with its line and column.
pub fn json_defaults(path: &Path) -> Result<Vec<(String, Option<String>)>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("malformed JSON in {} at line {}, column {}: {e}", path.display(), e.line(), e.column()))?;
    let Value::Object(map) = value else {
        return Err(format!("{}: expected a JSON object of flag values", path.display()));
    };
    let mut out = Vec::new();
    for (k, v) in &map {
        let flag = k.replace('_', "-");
        match flag_value(k, v)? {
            None => {}
            Some(s) if s.is_empty() && v.is_boolean() => out.push((flag, None)),
            Some(s) => out.push((flag, Some(s))),
        }
    }
    Ok(out)
}

/// Splices the `--json` defaults into `argv`; flags already given win.
pub fn merge_json(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--json" {
            path = Some(it.next().ok_or("--json needs a file path")?);
        } else if let Some(p) = a.strip_prefix("--json=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let given = |flag: &str| rest.iter().any(|a| a == &format!("--{flag}") || a.starts_with(&format!("--{flag}=")));
    let extra: Vec<_> = json_defaults(Path::new(&path))?.into_iter().filter(|(f, _)| !given(f)).collect();
    for (f, v) in extra {
        match v {
            None => rest.push(format!("--{f}")),
            Some(v) => rest.push(format!("--{f}={v}")),
        }
    }
    Ok(rest)
}
