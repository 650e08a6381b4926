//! Black-box tests of the `sg` binary: output formats, round-trips and exit
//! codes (0 success, 1 verification failure, 2 usage/parse errors).

use std::process::{Command, Output};

use sg_core::ratmat::{fraction_string, Rat};

fn sg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn counts_pretty_and_bounds() {
    let out = sg(&["counts", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f = 524880 (= 2^4 * 3^8 * 5^1)"), "{text}");
    assert!(text.contains("g = 486000"));
    assert!(text.contains("h = 1350000"));

    let out = sg(&["counts", "--n", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["f"], "3");
    assert_eq!(v["g"], "1");
    assert_eq!(v["h"], "1");

    let out = sg(&["counts", "--n", "99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds configured bound"));
}

#[test]
fn vertex_exact_output() {
    let out = sg(&["vertex", "--n", "2", "--address", "a[1,1]", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let fr: Vec<Rat> = v["F"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            Rat::new(
                f["num"].as_str().unwrap().parse().unwrap(),
                f["den"].as_str().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(fr.iter().sum::<Rat>(), Rat::from_integer(1.into()));

    let out = sg(&["vertex", "--n", "3", "--address", "o"]);
    let text = stdout(&out);
    assert!(text.contains("F3 ="), "{text}");
    assert!(text.contains("0.785679012346"), "theorem-1 decimal at n=3: {text}");

    let out = sg(&["vertex", "--n", "2", "--address", "x[1["]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("address parse error"));
}

#[test]
fn table_csv_round_trips_exact_fractions() {
    let out = sg(&["table", "--n", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        &csv::StringRecord::from(vec!["address", "p", "q", "F1", "F2", "F3", "F4"])
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 15);
    let table = sg_core::vertexdist::full_table(2).unwrap();
    let by_addr: std::collections::HashMap<String, [Rat; 4]> = table
        .into_iter()
        .map(|(a, d)| (a.to_string(), d))
        .collect();
    for row in rows {
        let expect = &by_addr[&row[0]];
        for j in 0..4 {
            assert_eq!(row[3 + j], fraction_string(&expect[j]), "row {} col {j}", &row[0]);
        }
        // the address still parses back to itself
        let addr = sg_core::gasket::parse_address(&row[0]).unwrap();
        let canon = addr.canonical_at(2).unwrap();
        assert_eq!(canon.to_string(), row[0].to_string());
    }
}

#[test]
fn table_row_count_formula() {
    for n in [0u32, 1, 3] {
        let out = sg(&["table", "--n", &n.to_string(), "--format", "csv"]);
        let text = stdout(&out);
        let rows = text.lines().count() - 1;
        assert_eq!(rows as u64, 3 * (3u64.pow(n) + 1) / 2);
    }
}

#[test]
fn phi_stage_and_limit() {
    let out = sg(&["phi", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("163/450"), "{text}");
    assert!(text.contains("5257/12150"));
    assert!(text.contains("2203/12150"));
    assert!(text.contains("289/12150"));

    let out = sg(&["phi", "--limit", "--compare-square"]);
    let text = stdout(&out);
    assert!(text.contains("10957/40464"));
    assert!(text.contains("6626035/13636368"));
    assert!(text.contains("2943139/13636368"));
    assert!(text.contains("124895/4545456"));
    assert!(text.contains("0.270783906682"));
    assert!(text.contains("theta = 2"));
    assert!(text.contains("square lattice"), "{text}");
    assert!(text.contains("0.294544918"), "{text}");

    let out = sg(&["phi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_json_schema() {
    let out = sg(&["graph", "--n", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["stage"], 1);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
    let first = &v["vertices"][0];
    assert!(first["id"].is_number() && first["p"].is_number() && first["q"].is_number());
}

#[test]
fn oracle_reports() {
    let out = sg(&["oracle", "--engine", "exhaustive", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["engine"], "exhaustive");
    assert_eq!(v["f"], "54");
    assert_eq!(v["g"], "30");
    assert_eq!(v["h"], "50");
    assert_eq!(v["profiles"].as_array().unwrap().len(), 6);

    let out = sg(&["oracle", "--engine", "mtt", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["f"], "524880");
    assert_eq!(v["g"], "486000");
    assert_eq!(v["h"], "1350000");

    let out = sg(&["oracle", "--engine", "wilson", "--n", "1", "--trials", "2000", "--seed", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["engine"], "wilson");
    assert_eq!(v["trials"], 2000);
    assert_eq!(v["rng"], "chacha8");
    assert!(v["f"].is_null());
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    let out = sg(&["oracle", "--engine", "exhaustive", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_closed_forms_level() {
    let out = sg(&["verify", "--level", "closed-forms"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("ok   theorem-1 closed forms"));
    assert!(text.contains("lambda misprint"));
    assert!(text.contains("all checks passed"));
}

#[test]
fn verify_sampler_level() {
    let out = sg(&[
        "verify", "--level", "sampler", "--seed", "7", "--trials", "20000",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("bit-identically"));
}

#[test]
fn stage_bound_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_sg"))
        .args(["counts", "--n", "13"])
        .env("SG_MAX_STAGE", "14")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_sg"))
        .args(["counts", "--n", "13"])
        .env("SG_MAX_STAGE", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
