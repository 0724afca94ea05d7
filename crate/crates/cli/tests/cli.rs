//! End-to-end behaviour of the `bellkit` binary.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::thread;

use bellkit_cli::output::{records_from_csv, OutputRecord, RECORD_CSV_COLUMNS};
use serde_json::Value;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn bellkit(args: &[&str]) -> Output {
    bellkit_env(args, &[])
}

fn bellkit_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bellkit"));
    cmd.args(args);
    for var in [
        "BELLKIT_CONFIG",
        "BELLKIT_FORMAT",
        "BELLKIT_TIMEOUT_MS",
        "BELLKIT_FIXTURES",
        "BELLKIT_OEIS_URL",
        "BELLKIT_CACHE_DIR",
    ] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn values(doc: &Value) -> Vec<String> {
    doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn bell2_table_at_x_one_as_csv() {
    let o = bellkit(&["table", "bell2", "--max-n", "4", "--at-x", "1", "--format", "csv"]);
    assert!(o.status.success());
    let rows = records_from_csv(&stdout(&o)).unwrap();
    let vals: Vec<_> = rows.iter().map(|r| r.value.as_str()).collect();
    assert_eq!(vals, ["1", "-2", "7", "-35"]);
    assert!(rows.iter().all(|r| r.at_x.as_deref() == Some("1")));
}

#[test]
fn stirling2_triangle() {
    let o = bellkit(&["table", "stirling2", "--max-n", "3", "--format", "json"]);
    assert!(o.status.success());
    let doc = json(&o);
    let recs: Vec<OutputRecord> = serde_json::from_value(doc["records"].clone()).unwrap();
    assert_eq!(recs.len(), 10);
    let s32 = recs.iter().find(|r| r.n == 3 && r.column == Some(2)).unwrap();
    assert_eq!(s32.value, "3");
}

#[test]
fn table_usage_errors() {
    let o = bellkit(&["table", "bell2", "--max-n", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("starts at n = 1"));
    assert_eq!(bellkit(&["table", "bell7"]).status.code(), Some(1));
    assert_eq!(bellkit(&["table", "poly_bell2"]).status.code(), Some(1));
    assert_eq!(bellkit(&["table", "bell2", "--k", "2"]).status.code(), Some(1));
    assert_eq!(
        bellkit(&["table", "bell2", "--at-x", "0.5"]).status.code(),
        Some(1)
    );
    assert_eq!(bellkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bellkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_output_is_deterministic() {
    let args = [
        "table",
        "deg_poly_bell2",
        "--k",
        "-1",
        "--max-n",
        "5",
        "--format",
        "json",
    ];
    assert_eq!(bellkit(&args).stdout, bellkit(&args).stdout);
}

#[test]
fn degenerate_table_with_lambda_specialization() {
    let sym = json(&bellkit(&[
        "table",
        "deg_bell2",
        "--max-n",
        "3",
        "--format",
        "json",
    ]));
    // bel_{2,λ}(x) = (λ − 1)x + (λ − 1)x^2
    assert_eq!(values(&sym)[1], "lambda*x^2 + lambda*x - x^2 - x");
    let at0 = json(&bellkit(&[
        "table",
        "deg_bell2",
        "--max-n",
        "3",
        "--at-lambda",
        "0",
        "--format",
        "json",
    ]));
    let cls = json(&bellkit(&["table", "bell2", "--max-n", "3", "--format", "json"]));
    assert_eq!(values(&at0), values(&cls));
}

#[test]
fn series_listings() {
    let o = bellkit(&["series", "eq15", "--order", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("egf: 0, 1, -2, 7, -35\n"), "{}", stdout(&o));

    let bell = json(&bellkit(&[
        "series", "eq4", "--at-x", "1", "--order", "3", "--format", "json",
    ]));
    assert_eq!(values(&bell), ["1", "1", "2", "5"]);
    let ogf: Vec<_> = bell["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["ogf"].as_str().unwrap())
        .collect();
    assert_eq!(ogf, ["1", "1", "1", "5/6"]);

    let deg = json(&bellkit(&["series", "eq28", "--order", "2", "--format", "json"]));
    assert_eq!(values(&deg), ["0", "1", "2*lambda - 2"]);

    assert_eq!(bellkit(&["series", "eq99"]).status.code(), Some(1));
    assert_eq!(bellkit(&["series", "eq36"]).status.code(), Some(1));
    assert!(bellkit(&["series", "eq36", "--k", "2", "--order", "3"])
        .status
        .success());
}

#[test]
fn series_ids_agree_with_each_other() {
    // eq19 at x = 1 and eq32 at x = 1 are the number series eq15 and eq28.
    for (poly, numbers) in [("eq19", "eq15"), ("eq32", "eq28")] {
        let a = json(&bellkit(&[
            "series", poly, "--at-x", "1", "--order", "6", "--format", "json",
        ]));
        let b = json(&bellkit(&["series", numbers, "--order", "6", "--format", "json"]));
        assert_eq!(values(&a), values(&b), "{poly} vs {numbers}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = bellkit(&["verify", "T6_as_printed", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let doc = json(&o);
    let c = &doc["reports"][0]["counterexample"];
    assert_eq!(c["n"], 2);
    assert_eq!(doc["reports"][0]["status"], "fail");

    let o = bellkit(&["verify", "--ids", "T9", "--k-range", "0..3", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    assert_eq!(bellkit(&["verify", "T42"]).status.code(), Some(1));
    assert_eq!(
        bellkit(&["verify", "T8", "--k-range", "3..1"]).status.code(),
        Some(1)
    );
    assert_eq!(bellkit(&["verify", "T1", "--max-n", "0"]).status.code(), Some(1));
}

#[test]
fn verify_reports_follow_requested_order() {
    let o = bellkit(&[
        "verify",
        "T4",
        "T1",
        "REDUCE_K1",
        "--max-n",
        "5",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let ids: Vec<_> = json(&o)["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["theorem"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids, ["T4", "T1", "REDUCE_K1"]);
}

#[test]
fn verify_csv_has_one_row_per_check() {
    let o = bellkit(&["verify", "T1", "T2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("theorem,status,max_n"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn bench_smoke() {
    let o = bellkit(&["bench", "revert", "--order", "8", "--reps", "1"]);
    assert!(o.status.success());
    let o = bellkit(&[
        "bench", "compose", "--order", "16", "--reps", "3", "--format", "json",
    ]);
    let doc = json(&o);
    assert_eq!(doc["outputs_agree"], true);
    for a in doc["algorithms"].as_array().unwrap() {
        let (lo, mid, hi) = (
            a["min_ns"].as_u64().unwrap(),
            a["median_ns"].as_u64().unwrap(),
            a["max_ns"].as_u64().unwrap(),
        );
        assert!(lo <= mid && mid <= hi);
    }
    assert_eq!(
        bellkit(&["bench", "revert", "--order", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(bellkit(&["bench", "sort"]).status.code(), Some(1));
}

#[test]
fn csv_follows_documented_columns() {
    let o = bellkit(&["series", "eq40", "--k", "-1", "--order", "3", "--format", "csv"]);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), RECORD_CSV_COLUMNS.join(","));
    let rows = records_from_csv(&text).unwrap();
    let doc = json(&bellkit(&[
        "series", "eq40", "--k", "-1", "--order", "3", "--format", "json",
    ]));
    let recs: Vec<OutputRecord> = serde_json::from_value(doc["records"].clone()).unwrap();
    let from_json: Vec<_> = recs.iter().map(bellkit_cli::output::CsvRow::from).collect();
    assert_eq!(rows, from_json);
}

#[test]
fn format_from_environment_and_config() {
    let o = bellkit_env(&["series", "eq13", "--order", "3"], &[("BELLKIT_FORMAT", "json")]);
    assert_eq!(json(&o)["kind"], "series");
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bellkit.toml");
    std::fs::write(&cfg, "format = \"csv\"\n").unwrap();
    let o = bellkit(&[
        "series",
        "eq13",
        "--order",
        "3",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert!(stdout(&o).starts_with("id,n,"));
    let o = bellkit_env(
        &[
            "series",
            "eq13",
            "--order",
            "3",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "text",
        ],
        &[("BELLKIT_FORMAT", "json")],
    );
    assert!(stdout(&o).starts_with("# eq13"));
}

#[test]
fn oeis_fixture_queries() {
    let fixtures = data_dir().join("oeis");
    let fx = fixtures.to_str().unwrap();
    let o = bellkit(&[
        "oeis",
        "--terms",
        "1,0,1,2,9,44",
        "--fixtures",
        fx,
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["candidates"][0]["id"], "A000166");

    // The recorded derangement data agrees with the recurrence.
    let data = doc["candidates"][0]["data"].as_str().unwrap();
    let d = bellkit_core::special::derangements(12);
    let expected: Vec<String> = d.values.iter().map(ToString::to_string).collect();
    assert!(data.starts_with(&expected.join(",")));

    // Transform is applied before lookup: shifted Bell numbers from n = 0.
    let o = bellkit(&[
        "oeis",
        "--terms",
        "0,1,1,2,5,15,52",
        "--transform",
        "shift",
        "--fixtures",
        fx,
        "--format",
        "json",
    ]);
    let doc = json(&o);
    assert_eq!(doc["query"], "1,1,2,5,15,52");
    assert_eq!(doc["transform"], "shift");
    assert_eq!(doc["candidates"][0]["id"], "A000110");
    let bell = bellkit_core::bell::bell_number_series(14);
    let mut expected = vec!["1".to_string()];
    expected.extend((1..=14).map(|n| bell.egf_term(n).to_string()));
    assert!(doc["candidates"][0]["data"]
        .as_str()
        .unwrap()
        .starts_with(&expected.join(",")));

    let o = bellkit(&[
        "oeis",
        "--terms",
        "17,4,170,1,77,1004",
        "--fixtures",
        fx,
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["candidates"].as_array().unwrap().len(), 0);

    let o = bellkit_env(&["oeis", "--terms", "1,0,1,2,9,44"], &[("BELLKIT_FIXTURES", fx)]);
    assert!(stdout(&o).contains("A000166"));

    assert_eq!(
        bellkit(&["oeis", "--terms", "1,2", "--fixtures", fx])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bellkit(&["oeis", "--terms", "5,5,5,5", "--fixtures", fx])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(bellkit(&["oeis", "--terms", "1,0,1,2"]).status.code(), Some(1));
}

/// One-shot HTTP server; returns its base URL and the request line it saw.
fn stub_server(body: Option<&'static str>) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let handle = thread::spawn(move || {
        let (mut stream, _) = listener.accept().unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut request_line = String::new();
        reader.read_line(&mut request_line).unwrap();
        loop {
            let mut line = String::new();
            if reader.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
                break;
            }
        }
        match body {
            Some(body) => {
                let _ = write!(
                    stream,
                    "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
            }
            None => {
                // Never answer; the client must give up on its own.
                let mut sink = Vec::new();
                let _ = stream.read_to_end(&mut sink);
            }
        }
        request_line
    });
    (url, handle)
}

#[test]
fn live_lookup_against_local_endpoint() {
    let body = r#"[{"number":110,"name":"Bell or exponential numbers","data":"1,1,2,5,15,52"}]"#;
    let (url, server) = stub_server(Some(body));
    let cache = tempfile::tempdir().unwrap();
    let env = [
        ("BELLKIT_OEIS_URL", url.as_str()),
        ("BELLKIT_CACHE_DIR", cache.path().to_str().unwrap()),
    ];
    let o = bellkit_env(
        &["oeis", "--terms", "1,1,2,5,15,52", "--live", "--format", "json"],
        &env,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    assert_eq!(doc["source"], "live");
    assert_eq!(doc["candidates"][0]["id"], "A000110");
    let request = server.join().unwrap();
    assert!(
        request.starts_with("GET /search?q=1%2C1%2C2%2C5%2C15%2C52&fmt=json"),
        "{request}"
    );

    // Second lookup is served from the cache without a server.
    let o = bellkit_env(
        &["oeis", "--terms", "1,1,2,5,15,52", "--live", "--format", "json"],
        &env,
    );
    assert_eq!(json(&o)["source"], "cache");
}

#[test]
fn live_timeout_has_its_own_exit_code() {
    let (url, _server) = stub_server(None);
    let o = bellkit_env(
        &["oeis", "--terms", "1,1,2,5", "--live", "--timeout-ms", "200"],
        &[("BELLKIT_OEIS_URL", url.as_str())],
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn schema_rejects_floats_and_unknown_kinds() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&schema)
        .unwrap();
    let mut doc = json(&bellkit(&["series", "eq13", "--order", "3", "--format", "json"]));
    assert!(validator.is_valid(&doc));
    doc["records"][2]["ogf"] = serde_json::json!(0.5);
    assert!(!validator.is_valid(&doc));
    doc["records"][2]["ogf"] = serde_json::json!("0.5");
    assert!(!validator.is_valid(&doc));
    doc["kind"] = serde_json::json!("plot");
    assert!(!validator.is_valid(&doc));
}
