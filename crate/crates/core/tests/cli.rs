use clap::Parser;
use primpow::cli::*;
use proptest::prelude::*;

fn config(args: &[&str]) -> RunConfig {
    RunConfig::try_parse_from(std::iter::once("primpow").chain(args.iter().copied())).unwrap()
}

fn report(args: &[&str]) -> Report {
    run(&config(args)).unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(r: &Report) {
    let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{}: {errors:?}", r.command);
}

#[test]
fn generator_tables() {
    for (k, rows) in [("2", 3), ("3", 4), ("4", 6), ("5", 12)] {
        let r = report(&["generators", "--k", k]);
        assert!(r.passed, "k = {k}");
        assert_eq!(r.tables[0].rows.len(), rows);
        assert_valid(&r);
    }
    let r = report(&["generators", "--k", "3"]);
    assert!(r.tables[0].rows.iter().any(|row| row[0] == "-1" && row[3] == "true"));
    let r = report(&["generators", "--k", "6", "--radius", "2"]);
    assert!(r.passed && !r.tables[0].rows.is_empty());
}

#[test]
fn verify_scopes() {
    for scope in ["quotients", "k6", "faithful-p4", "k-odd:5", "rep:rho4", "rep:trho4"] {
        let r = report(&["verify", "--scope", scope]);
        let failed: Vec<&Check> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(r.passed, "{scope}: {failed:?}");
        assert_valid(&r);
    }
}

#[test]
fn improve_reports() {
    let r = report(&["improve", "--rep", "rho_odd:5", "--k", "5"]);
    assert!(r.passed);
    assert_eq!(r.reps.len(), 1);
    assert_eq!(r.reps[0].n, 6);
    assert_valid(&r);
    let r = report(&["improve", "--rep", "rho4", "--k", "4"]);
    assert!(r.passed && r.reps[0].n == 4);
    let r = report(&["improve", "--rep", "rho2", "--k", "2"]);
    assert!(r.passed && r.reps.is_empty());
    assert!(r.checks[0].computed.contains("empty"));
}

#[test]
fn exit_codes() {
    let out = std::env::temp_dir().join("primpow-cli-exit-codes.json");
    let out_s = out.to_str().unwrap();
    assert_eq!(
        main_with_args(["primpow", "verify", "--scope", "quotients", "--out", out_s]),
        0
    );
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["passed"], true);
    assert_eq!(main_with_args(["primpow", "verify", "--scope", "nope"]), 2);
    assert_eq!(main_with_args(["primpow", "verify", "--scope", "k-odd:4"]), 2);
    assert_eq!(main_with_args(["primpow", "generators", "--k", "1"]), 2);
    assert_eq!(main_with_args(["primpow", "improve", "--rep", "rho9", "--k", "3"]), 2);
    assert_eq!(main_with_args(["primpow", "frobnicate"]), 2);
    // a coset limit too small for the order-27 quotient stops the check
    assert_eq!(
        main_with_args([
            "primpow",
            "verify",
            "--scope",
            "quotients",
            "--coset-limit",
            "5",
            "--out",
            out_s
        ]),
        1
    );
}

#[test]
fn markdown_renders_every_check_and_row() {
    let r = report(&["verify", "--scope", "quotients"]);
    let md = r.to_markdown();
    for c in &r.checks {
        assert!(md.contains(&c.name.replace('|', "\\|")), "{}", c.name);
    }
    for row in &r.tables[0].rows {
        assert!(md.contains(&format!("| {} |", row.join(" | "))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn runs_are_deterministic(seed in 0u64..1000) {
        let s = seed.to_string();
        let args = ["verify", "--scope", "rep:rho_odd:3", "--seed", &s];
        let x = report(&args);
        prop_assert_eq!(x.seed, seed);
        prop_assert_eq!(x.to_json(), report(&args).to_json());
    }
}
