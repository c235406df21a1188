//! Every command's JSON output against the published report schema.

use std::path::PathBuf;
use std::process::Command;

use regex::Regex;
use serde_json::Value;

fn schema() -> Value {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schema", "report-v1.schema.json"].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_u64() || v.is_i64(),
        other => panic!("schema uses unsupported type {other}"),
    }
}

/// Validates the keywords the schema uses: `type`, `const`, `enum`,
/// `pattern`, `required`, `properties`, `items`, `oneOf` and local `$ref`.
fn validate(root: &Value, schema: &Value, v: &Value, at: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let target = r.strip_prefix("#/").unwrap().split('/').fold(root, |node, key| &node[key]);
        return validate(root, target, v, at);
    }
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, v),
            Value::Array(ts) => ts.iter().any(|s| type_matches(s.as_str().unwrap(), v)),
            _ => unreachable!(),
        };
        if !ok {
            return Err(format!("{at}: {v} is not of type {t}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            return Err(format!("{at}: expected {c}, got {v}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{at}: {v} not in {options:?}"));
        }
    }
    if let (Some(p), Some(s)) = (schema.get("pattern").and_then(Value::as_str), v.as_str()) {
        if !Regex::new(p).unwrap().is_match(s) {
            return Err(format!("{at}: {s:?} does not match {p}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("{at}: missing {key}"));
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(x) = obj.get(key) {
                    validate(root, sub, x, &format!("{at}.{key}"))?;
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(root, items, x, &format!("{at}[{i}]"))?;
        }
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let hits = options.iter().filter(|o| validate(root, o, v, at).is_ok()).count();
        if hits != 1 {
            return Err(format!("{at}: matches {hits} of the oneOf branches"));
        }
    }
    Ok(())
}

fn report(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_irmult"))
        .arg("--json")
        .args(args)
        .env_remove("IRMULT_N_MAX")
        .output()
        .unwrap();
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn every_command_validates() {
    let schema = schema();
    let runs: Vec<Vec<String>> = vec![
        vec!["table".into(), fixture("staircase_d2_l1.irm"), "--n-max".into(), "12".into()],
        vec!["multiplicities".into(), fixture("direct_sum.irm")],
        vec!["verify".into(), fixture("two_summands.irm")],
        vec!["ulrich".into(), fixture("not_ulrich_q.irm")],
        vec!["ulrich".into(), fixture("artinian_zero_q.irm")],
        vec!["artin-rees".into(), fixture("cube_mixed.irm")],
        vec!["examples".into(), "--which".into(), "direct-sum".into()],
        vec!["fuzz".into(), "--seed".into(), "3".into(), "--count".into(), "8".into()],
        vec![
            "fuzz".into(),
            "--seed".into(),
            "1".into(),
            "--count".into(),
            "3".into(),
            "--madic".into(),
            "--failure-out".into(),
            std::env::temp_dir().join("irmult-schema-test.irm").to_string_lossy().into_owned(),
        ],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let doc = report(&args);
        assert_eq!(doc["command"], args[0]);
        validate(&schema, &schema, &doc, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn validator_rejects_lossy_integers() {
    let schema = schema();
    let mut doc = report(&["multiplicities", &fixture("direct_sum.irm")]);
    validate(&schema, &schema, &doc, "$").unwrap();
    doc["result"]["e0"] = serde_json::json!(1);
    assert!(validate(&schema, &schema, &doc, "$").is_err());
}
