//! The command-line front end, driven in process through `cli::run`.

use indexmap::IndexMap;
use serde_json::Value;
use vc_bounds::cli::{run, Outcome, EXIT_INPUT, EXIT_NOT_SIGNIFICANT, EXIT_OK};

fn vc(args: &str) -> Outcome {
    run(std::iter::once("vc-bounds").chain(args.split_whitespace()))
}

const INSTANCE: &str = "--N 1000 --h 10 --epsilon 0.01 --r1 0.2";

fn csv_rows(text: &str) -> Vec<IndexMap<String, String>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.expect("RFC 4180 row");
            headers
                .iter()
                .map(str::to_owned)
                .zip(r.iter().map(str::to_owned))
                .collect()
        })
        .collect()
}

#[test]
fn bound_exit_codes() {
    let ok = vc(&format!(
        "bound --theorem transductive-basic --k 4 {INSTANCE}"
    ));
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);
    assert!(ok.stdout.contains("0.4872"), "{}", ok.stdout);

    let vacuous = vc(&format!("bound --theorem vapnik {INSTANCE}"));
    assert_eq!(vacuous.code, EXIT_NOT_SIGNIFICANT);

    for bad in [
        "bound --theorem no-such-bound --N 1000 --h 10 --epsilon 0.01 --r1 0.2",
        "bound --theorem vapnik --N 1000 --h 10 --epsilon 1.5 --r1 0.2",
        "bound --theorem vapnik --N 1000 --epsilon 0.01 --r1 0.2",
        "bound --theorem transductive-improved-k1 --k 3 --N 1000 --h 10 --epsilon 0.01 --r1 0.2",
        "bound --theorem vapnik --alpha 2 --N 1000 --h 10 --epsilon 0.01 --r1 0.2",
    ] {
        let out = vc(bad);
        assert_eq!(out.code, EXIT_INPUT, "{bad}");
        assert!(out.stderr.starts_with("error"), "{bad}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = vc("--help");
    assert_eq!(out.code, EXIT_OK);
    for cmd in ["bound", "reproduce", "sweep", "verify"] {
        assert!(out.stdout.contains(cmd));
    }
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        format!("bound --theorem inductive-integrated --k 19 {INSTANCE} --format json"),
        "bound --theorem relative-chained --k auto --k-max 30 --N 1000000 --h 10 --epsilon 0.005 --r1 0.2 --format json".to_owned(),
        "reproduce --format json".to_owned(),
    ] {
        let out = vc(&args);
        let parsed: Value = serde_json::from_str(&out.stdout).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again, out.stdout, "{args}");
        if let Value::Object(map) = &parsed {
            let typed: IndexMap<String, Value> = map.clone().into_iter().collect();
            assert_eq!(typed.keys().next().map(String::as_str), Some("theorem"));
        }
    }
}

#[test]
fn auto_k_reports_the_plateau() {
    let out = vc(&format!(
        "bound --theorem transductive-improved --k auto {INSTANCE} --format json"
    ));
    let rec: IndexMap<String, Value> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(rec["k"], 16);
    assert_eq!(rec["k_plateau_printed"], "15-18");
}

#[test]
fn sweep_over_r1_is_nondecreasing() {
    let out = vc(&format!(
        "sweep --theorem transductive-improved --k 4 {INSTANCE} --vary r1 --from 0 --to 0.5 --step 0.05"
    ));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let rows = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 11);
    let values: Vec<f64> = rows.iter().map(|r| r["value"].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
}

#[test]
fn sweep_over_k_has_minimum_in_reported_range() {
    let out = vc(&format!(
        "sweep --theorem transductive-improved {INSTANCE} --vary k --from 1 --to 100 --step 1"
    ));
    let rows = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 100);
    let (k, _) = rows
        .iter()
        .map(|r| {
            (
                r["point"].parse::<u64>().unwrap(),
                r["value"].parse::<f64>().unwrap(),
            )
        })
        .fold(
            (0, f64::INFINITY),
            |acc, (k, v)| if v < acc.1 { (k, v) } else { acc },
        );
    assert!((15..=18).contains(&k), "argmin {k}");
}

#[test]
fn single_point_sweep_has_one_row() {
    let out = vc(&format!(
        "sweep --theorem transductive-basic {INSTANCE} --vary k --from 4 --to 4 --step 1"
    ));
    assert_eq!(csv_rows(&out.stdout).len(), 1);
    let out = vc(&format!(
        "sweep --theorem inductive-integrated --k 19 {INSTANCE} --vary alpha --from 0.1 --to 0.1 --points 1 --format json"
    ));
    let rows: Vec<Value> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(rows.len(), 1);
}

#[test]
fn reproduce_passes_and_fails_at_tight_tolerance() {
    let out = vc("reproduce");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("15/15 rows pass"));
    let csv = vc("reproduce --format csv");
    assert_eq!(csv_rows(&csv.stdout).len(), 15);
    let strict = vc("reproduce --tolerance 1e-9");
    assert_eq!(strict.code, EXIT_NOT_SIGNIFICANT);
}

#[test]
fn verify_is_deterministic_and_guarded() {
    let args =
        "verify --theorem transductive-basic --N 50 --k 2 --epsilon 0.1 --trials 2000 --seed 7";
    let first = vc(args);
    assert_eq!(first.code, EXIT_OK, "{}", first.stderr);
    assert_eq!(first.stdout, vc(args).stdout);
    let report: IndexMap<String, Value> = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(report["pass"], true);

    let chained = vc("verify --theorem relative-chained --N 30 --k 1 --epsilon 0.1 --trials 200");
    let report: IndexMap<String, Value> = serde_json::from_str(&chained.stdout).unwrap();
    assert!((report["target"].as_f64().unwrap() - 0.2).abs() < 1e-12);

    let huge =
        vc("verify --theorem transductive-basic --N 100000 --k 9 --epsilon 0.1 --trials 10000");
    assert_eq!(huge.code, EXIT_INPUT);
    assert!(huge.stderr.contains("--force"), "{}", huge.stderr);

    let unsupported = vc(
        "verify --theorem inductive-integrated --N 30 --epsilon 0.1 --trials 10 --class intervals",
    );
    assert_eq!(unsupported.code, EXIT_INPUT);
}
