mod common;

use common::{silc, with_flag};
use serde_json::Value;

fn args(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("json output")
}

const H0: &str = "--type A --rank 1 h0 --v w0@1 --w e --lam 1 --window 0:4 --depth 3";

#[test]
fn dispatch_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = silc(&args("--type A --rank 1 order le --w 1@0 --v e"), dir.path());
    assert_eq!(o.code, 0);
    assert_eq!(json(&o.stdout)["result"]["result"], Value::Bool(true));
    let o = silc(&args(H0), dir.path());
    assert_eq!(json(&o.stdout)["result"]["dim"], 4);
}

#[test]
fn cache_hit_and_no_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = silc(&args(H0), dir.path());
    let b = silc(&args(H0), dir.path());
    let c = silc(&with_flag(&args(H0), "--no-cache"), dir.path());
    assert!(a.stderr.contains("\"cached\":false"));
    assert!(b.stderr.contains("\"cached\":true"));
    assert!(c.stderr.contains("\"status\":\"disabled\""));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn corrupted_entry_is_recomputed_and_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let good = silc(&args(H0), dir.path());
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "json"))
        .expect("cache entry");
    let text = std::fs::read_to_string(&entry).unwrap();
    // tamper with the payload but keep the file valid JSON
    std::fs::write(&entry, text.replace("\\\"dim\\\":4", "\\\"dim\\\":5")).unwrap();
    assert_ne!(std::fs::read_to_string(&entry).unwrap(), text);
    let again = silc(&args(H0), dir.path());
    assert!(again.stderr.contains("\"status\":\"replaced\""), "{}", again.stderr);
    assert_eq!(again.stdout, good.stdout);
    let third = silc(&args(H0), dir.path());
    assert!(third.stderr.contains("\"cached\":true"));
    assert_eq!(third.stdout, good.stdout);

    std::fs::write(&entry, "garbage").unwrap();
    let fourth = silc(&args(H0), dir.path());
    assert!(fourth.stderr.contains("\"status\":\"replaced\""));
    assert_eq!(fourth.stdout, good.stdout);
}

#[test]
fn unusable_cache_is_bypassed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    std::fs::write(&file, "x").unwrap();
    let o = silc(&args(H0), &file);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("warning"));
    assert_eq!(json(&o.stdout)["result"]["dim"], 4);
}

#[test]
fn distinct_jobs_get_distinct_keys() {
    let dir = tempfile::tempdir().unwrap();
    silc(&args(H0), dir.path());
    silc(&args(&H0.replace("--lam 1", "--lam 2")), dir.path());
    silc(&args(&H0.replace("--rank 1", "--rank 1 --format csv")), dir.path());
    let n = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"))
        .count();
    // the output format is rendered after the cache, so it shares an entry
    assert_eq!(n, 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let usage = [
        "--type A --rank 1 order le --w 1@0",
        "--type A --rank 1 order le --w 1@0 --v e@1,2",
        "order le --w 1@0 --v e",
        "--type Q --rank 1 order le --w e --v e",
        "--type A --rank 1 pieri --w e --lam -1 --window 0:2 --depth 1",
        "--type A --rank 1 pieri --w e --lam 1 --window 2:1 --depth 1",
        "--type A --rank 1 pieri --w e --lam 1 --window 0:2 --depth x",
        "--type A --rank 2 dim parabolic --j 1 --beta 1,1 --w 1",
        "qmap validate --data {\"rank\":3}",
        "frobnicate",
    ];
    for a in usage {
        let o = silc(&args(a), dir.path());
        assert_eq!(o.code, 2, "{a}: {}", o.stdout);
        assert_eq!(json(&o.stdout)["error"]["kind"], "usage", "{a}");
    }
    let o = silc(&args("--type A --rank 1 order le --w 1@0 --v e@1,2"), dir.path());
    assert_eq!(json(&o.stdout)["error"]["field"], "params.v.beta");
    let o = silc(&args("--type A --rank 1 dim richardson --v e --w 1"), dir.path());
    assert_eq!(o.code, 3);
    assert_eq!(json(&o.stdout)["error"]["kind"], "empty");
    let o = silc(&args("--type A --rank 1 pieri --w e --lam 5 --window 0:1 --depth 0"), dir.path());
    assert_eq!(o.code, 0);
    for a in ["--help", "--version", "pieri --help"] {
        assert_eq!(silc(&args(a), dir.path()).code, 0, "{a}");
    }
}

#[test]
fn cartan_file_matches_named_type() {
    let dir = tempfile::tempdir().unwrap();
    let named = silc(&args("--type G --rank 2 --no-cache char weyl --lam 0,1"), dir.path());
    let jn = json(&named.stdout);
    let file = dir.path().join("g2.json");
    std::fs::write(&file, serde_json::json!({ "cartan": jn["cartan"] }).to_string()).unwrap();
    let mut a = args("--no-cache char weyl --lam 0,1 --cartan");
    a.push(file.display().to_string());
    let from_file = silc(&a, dir.path());
    assert_eq!(from_file.code, 0);
    assert_eq!(json(&from_file.stdout)["result"], jn["result"]);
    // the golden file labels the long root first, so its first fundamental
    // weight is the adjoint one
    let o = silc(&args("--cartan g2.json --no-cache char weyl --lam 1,0"), dir.path());
    assert_eq!(json(&o.stdout)["result"]["dim"], 14);
    let o = silc(&args("--cartan g2.json --no-cache char weyl --lam 0,1"), dir.path());
    assert_eq!(json(&o.stdout)["result"]["dim"], 7);
}
