use std::process::{Command, Output};

use mixprod::harness::{InvariantsDocument, SweepReport};
use mixprod::FieldSpec;

fn mixprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixprod")).args(args).output().expect("run mixprod")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn invariants_json_has_equal_blocks() {
    let o = mixprod(&[
        "invariants", "--n", "2", "--m", "2", "--terms", "1,2+2,1", "--method", "both", "--field", "gf2", "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: InvariantsDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.field, FieldSpec::PrimeField(2));
    assert_eq!(doc.ideal, vec![[1, 2], [2, 1]]);
    let (f, or) = (doc.formula.clone().unwrap(), doc.oracle.clone().unwrap());
    assert_eq!(f, or);
    assert_eq!((f.dim, f.depth, f.reg_ideal, f.cm), (2, 2, 3, true));

    // schema keys
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["ambient", "ideal", "field", "formula", "oracle"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["dim", "depth", "pd", "reg_ideal", "reg_quotient", "cm", "height", "case"] {
        assert!(v["formula"].get(key).is_some(), "missing formula.{key}");
    }
    assert_eq!(v["formula"]["case"], "two_products");
}

#[test]
fn betti_lists_table() {
    let o = mixprod(&["betti", "--n", "3", "--m", "0", "--terms", "2,0", "--field", "q", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: InvariantsDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.betti.unwrap(), vec![[0, 0, 1], [1, 2, 3], [2, 3, 2]]);

    let o = mixprod(&["betti", "--n", "3", "--m", "0", "--terms", "2,0"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "2", "3"]), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["2", "3", "2"]), "{text}");
}

#[test]
fn sweep_writes_report_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        let o = mixprod(&[
            "sweep", "--max-n", "3", "--max-m", "3", "--fields", "q,gf2", "--jobs", jobs, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(path).unwrap();
        let report: SweepReport = serde_json::from_str(&text).unwrap();
        // round trip through the in-memory type
        let again: SweepReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(again, report);
        report
    };
    let a = run("a.json", "1");
    let b = run("b.json", "4");
    assert!(a.mismatches.is_empty());
    assert!(a.cases_run > 0);
    assert!(a.same_content(&b));
}

#[test]
fn witness_and_dual_commands() {
    let o = mixprod(&["witness", "--n", "2", "--m", "2", "--terms", "1,2+2,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["syzygy"]["u"], "x1y1y2");
    assert_eq!(v["syzygy"]["cofactor_v"], "y2");
    assert_eq!(v["syzygy"]["verified"], true);
    assert_eq!(v["koszul"]["verified"], true);

    let o = mixprod(&["dual", "--n", "3", "--m", "0", "--terms", "2,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dual"], serde_json::json!(["x1x2", "x1x3", "x2x3"]));
    assert_eq!(v["minimal_primes"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    // usage errors name the offending flag
    let o = mixprod(&["invariants", "--n", "2", "--m", "2", "--terms", "1;2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--terms"));
    let o = mixprod(&["invariants", "--n", "2", "--m", "2", "--terms", "1,2", "--field", "gf4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--field"));
    assert_eq!(mixprod(&["frobnicate"]).status.code(), Some(2));

    // validation failures
    assert_eq!(mixprod(&["invariants", "--n", "2", "--m", "2", "--terms", "3,0"]).status.code(), Some(1));
    assert_eq!(mixprod(&["invariants", "--n", "2", "--m", "2", "--terms", "0,0"]).status.code(), Some(1));
    assert_eq!(mixprod(&["sweep", "--max-n", "30", "--max-m", "1"]).status.code(), Some(1));
}
