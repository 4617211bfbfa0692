use std::path::PathBuf;
use std::process::Command;

use octad_core::cli::run;
use serde_json::Value;

fn sample() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data/cube-perturbed.cfg")
        .display()
        .to_string()
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(std::iter::once("octad").chain(args.iter().copied()));
    (serde_json::from_str(&out.stdout).expect("json report"), out.code)
}

fn keys(v: &Value) -> Vec<&str> {
    let mut k: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    k.sort_unstable();
    k
}

fn temp_config(name: &str, lines: usize) -> String {
    let text = std::fs::read_to_string(sample()).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).take(lines).collect();
    let path = std::env::temp_dir().join(format!("octad-cli-{}-{name}.cfg", std::process::id()));
    std::fs::write(&path, body.join("\n")).unwrap();
    path.display().to_string()
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_octad");
    for args in [vec!["tables"], vec!["--format", "tsv", "orbits"], vec!["chirality", &sample()]] {
        let a = Command::new(bin).args(&args).output().unwrap();
        let b = Command::new(bin).args(&args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn orbits_tsv_has_one_row_per_orbit() {
    let out = run(["octad", "--format", "tsv", "orbits"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "representative\tsize\talpha\tbeta\tparity\tclass");
    assert_eq!(lines.len(), 12);
    assert!(out.stderr.starts_with("warning:"));
}

#[test]
fn tables_total_and_agreement() {
    let (v, code) = json(&["tables"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["total_orbits"], 14);
    for c in r["classes"].as_array().unwrap() {
        assert_eq!(c["gamma_isomorphic"], true);
        assert_eq!(c["group"], c["group_published"]);
        assert_eq!(c["vertex_orbits"], c["vertex_orbits_published"]);
    }
}

#[test]
fn report_envelope_and_result_keys() {
    let cfg = sample();
    let seven = temp_config("seven", 7);
    let cases: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec!["orbits"], vec!["even_diagrams", "even_exceptions", "odd_diagrams", "orbit_count", "orbits"]),
        (vec!["tables"], vec!["classes", "total_orbits"]),
        (vec!["adjacency"], vec!["edges", "self_loops", "vertices"]),
        (
            vec!["diagram", "000101"],
            vec![
                "alpha", "beta", "bits", "bridge_colors", "class", "gamma", "matrix", "monodromy",
                "moves", "oval_colors", "parity",
            ],
        ),
        (vec!["verify", &cfg], vec!["classification", "coplanar_quadruples", "distinct", "m_octad", "net_rank"]),
        (vec!["complete", &seven], vec!["octad", "point"]),
        (
            vec!["hessian", &seven],
            vec!["all_points_on_net", "hessian", "hessian_text", "interpolation_agrees", "net"],
        ),
        (vec!["chirality", &cfg], vec!["per_point", "sign"]),
        (vec!["chirality", &seven], vec!["sign7"]),
        (vec!["ovals", "--depth", "8", &seven], vec!["hessian", "ovals"]),
    ];
    for (args, expected) in cases {
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(
            keys(&v),
            ["command", "exit_status", "inputs", "results", "status", "warnings"],
            "{args:?}"
        );
        assert_eq!(v["status"], "ok");
        assert_eq!(keys(&v["results"]), expected, "{args:?}");
    }
    let (v, _) = json(&["m1-check"]);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}

#[test]
fn nested_and_flat_geometry_commands_agree() {
    let cfg = sample();
    let flat = run(["octad", "chirality", &cfg]);
    let nested = run(["octad", "octad", "chirality", &cfg]);
    let strip = |s: &str| s.replace("\"octad chirality\"", "").replace("\"chirality\"", "");
    assert_eq!(strip(&flat.stdout), strip(&nested.stdout));
}

#[test]
fn sample_configuration_is_a_regular_octad() {
    let cfg = sample();
    let (v, _) = json(&["verify", &cfg]);
    assert_eq!(v["results"]["classification"], "regular-candidate");
    let (v, _) = json(&["chirality", &cfg]);
    let sign = v["results"]["sign"].as_i64().unwrap();
    assert!(sign == 1 || sign == -1);
    for s in v["results"]["per_point"].as_array().unwrap() {
        assert_eq!(s.as_i64(), Some(sign));
    }
}

#[test]
fn exit_codes() {
    let (v, code) = json(&["diagram", "0001"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["code"], "bad-diagram");
    let (v, code) = json(&["verify", "/nonexistent/octad.cfg"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    let six = temp_config("six", 6);
    let (_, code) = json(&["verify", &six]);
    assert_eq!(code, 1);
    assert_eq!(run(["octad", "bogus"]).code, 2);
    assert_eq!(run(["octad", "--format", "xml", "orbits"]).code, 2);
    let help = run(["octad", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn text_and_tsv_errors_go_to_stderr() {
    let out = run(["octad", "--format", "text", "diagram", "2"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("bad-diagram"), "{}", out.stderr);
}

/// Top-level bullets of each section of the shipped schema description.
fn documented_keys() -> std::collections::BTreeMap<String, Vec<String>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.md");
    let text = std::fs::read_to_string(path).unwrap();
    let mut out = std::collections::BTreeMap::new();
    let mut section = String::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("## ") {
            section = name.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("- `") {
            let key = rest.split('`').next().unwrap().to_string();
            out.entry(section.clone()).or_insert_with(Vec::new).push(key);
        }
    }
    out
}

#[test]
fn reports_match_the_schema_description() {
    let doc = documented_keys();
    let cfg = sample();
    let seven = temp_config("schema", 7);
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("orbits", vec!["orbits"]),
        ("tables", vec!["tables"]),
        ("adjacency", vec!["adjacency"]),
        ("diagram", vec!["diagram", "000101"]),
        ("verify", vec!["verify", &cfg]),
        ("complete", vec!["complete", &seven]),
        ("hessian", vec!["hessian", &seven]),
        ("ovals", vec!["ovals", "--depth", "8", &seven]),
    ];
    for (section, args) in cases {
        let (v, _) = json(&args);
        let mut want: Vec<&str> = doc[section].iter().map(String::as_str).collect();
        want.sort_unstable();
        assert_eq!(keys(&v["results"]), want, "{section}");
    }
    let mut envelope: Vec<&str> = doc["Envelope"].iter().map(String::as_str).collect();
    envelope.sort_unstable();
    let (v, _) = json(&["diagram", "0001"]);
    assert_eq!(keys(&v), envelope);
    let (v, _) = json(&["m1-check"]);
    for item in v["results"].as_array().unwrap() {
        let mut want: Vec<&str> = doc["m1-check"].iter().map(String::as_str).collect();
        want.sort_unstable();
        assert_eq!(keys(item), want);
    }
}
