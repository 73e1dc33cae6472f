use std::path::Path;
use std::process::{Command, Output};

fn thzchan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thzchan"))
        .args(args)
        .env_remove("THZCHAN_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn distance_sweep_matches_golden() {
    let o = thzchan(&[
        "sweep", "--axis", "distance", "--from", "1e-4", "--to", "2e-3", "--points", "5", "--lambda0", "3e-4", "--beam",
        "0.5", "--media", "water,skin", "--particles", "rbc",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("distance_sweep.csv"));
}

#[test]
fn medium_query_matches_golden() {
    let o = thzchan(&["medium", "skin", "--f", "1e11", "--f", "5e11", "--f", "1e12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("medium_skin.csv"));
}

#[test]
fn default_media_sweep_has_one_row_per_point() {
    let o = thzchan(&[
        "sweep", "--axis", "distance", "--from", "1e-4", "--to", "2e-3", "--points", "101", "--lambda0", "3e-4", "--beam",
        "0.5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "medium");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 303);
    let media: Vec<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert!(media[..101].iter().all(|m| *m == "water"));
    assert!(media[101..202].iter().all(|m| *m == "skin"));
    assert!(media[202..].iter().all(|m| *m == "epidermis"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["figure", "fig1"],
        vec!["figure", "fig3", "--format", "json"],
        vec!["figure", "fig4", "--format", "svg"],
        vec!["attribution", "fig2"],
    ] {
        let a = thzchan(&args);
        let b = thzchan(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn svg_is_well_formed() {
    for fig in ["fig1", "fig2", "fig3", "fig4"] {
        let o = thzchan(&["figure", fig, "--format", "svg"]);
        assert!(o.status.success());
        let text = stdout(&o);
        let doc = roxmltree::Document::parse(&text).expect("valid XML");
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        let lines = root.descendants().filter(|n| n.has_tag_name("polyline")).count();
        assert_eq!(lines, 3, "{fig}");
        for label in ["Water", "Skin", "Epidermis", "Total path loss (dB)"] {
            assert!(root.descendants().any(|n| n.text() == Some(label)), "{fig}: {label}");
        }
    }
}

#[test]
fn json_sweep_parses() {
    let o = thzchan(&["figure", "fig4", "--points", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
}

#[test]
fn exit_codes() {
    assert_eq!(thzchan(&["--help"]).status.code(), Some(0));
    assert_eq!(thzchan(&["--version"]).status.code(), Some(0));
    assert_eq!(thzchan(&["medium", "blood", "--f", "1e12"]).status.code(), Some(2));
    assert_eq!(thzchan(&["medium", "water", "--f", "2e12"]).status.code(), Some(2));
    assert_eq!(thzchan(&["figure", "fig3", "--precision", "2"]).status.code(), Some(2));
    let o = thzchan(&["validate", "--data", "/nonexistent/media.toml"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
    let o = thzchan(&["figure", "fig1", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn data_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("custom.toml");
    std::fs::write(
        &file,
        r#"[[medium]]
id = "saline"
display_name = "Saline"
eps_inf = 3.5
eps_1 = 75.0
eps_2 = 5.0
tau_1_s = 8e-12
tau_2_s = 2e-13
f_min_hz = 1e11
f_max_hz = 1e12
provenance = "test fixture"
"#,
    )
    .unwrap();
    let run = |envs: &[(&str, &str)], args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_thzchan"));
        c.args(args).env_remove("THZCHAN_DATA");
        for (k, v) in envs {
            c.env(k, v);
        }
        c.output().unwrap()
    };
    let path = file.to_str().unwrap();
    let o = run(&[("THZCHAN_DATA", path)], &["medium", "saline", "--f", "5e11"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // The bundled media are replaced, not extended.
    assert_eq!(run(&[("THZCHAN_DATA", path)], &["medium", "water", "--f", "5e11"]).status.code(), Some(2));
    // An explicit --data wins over the environment.
    let o = run(&[("THZCHAN_DATA", "/nonexistent.toml")], &["--data", path, "medium", "saline", "--f", "5e11"]);
    assert!(o.status.success());
    let o = run(&[("THZCHAN_DATA", "/nonexistent.toml")], &["validate"]);
    assert_eq!(o.status.code(), Some(3));
}
