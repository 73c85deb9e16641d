use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn symcoh(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_symcoh")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let r = symcoh(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn factors(v: &Value) -> Vec<i64> {
    v["invariant_factors"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn cohom_z2_over_z2() {
    let v = json(&["cohom", "--group", "cyclic:2", "--module", "Zmod:2", "--degree", "2"]);
    let d2 = &v["degrees"][2];
    assert_eq!(factors(&d2["ordinary"]), vec![2]);
    assert_eq!(factors(&d2["symmetric"]), Vec::<i64>::new());
    assert_eq!(v["hstar_injective"], Value::Bool(true));
    let t = symcoh(&["--format", "table", "cohom", "--group", "cyclic:2", "--module", "Zmod:2"]);
    assert!(t.stdout.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["2", "Z/2", "0", "true", "0", "2"]));
}

#[test]
fn cohom_z4_over_integers() {
    let v = json(&["cohom", "--group", "cyclic:4", "--module", "Z"]);
    let d2 = &v["degrees"][2];
    assert_eq!(factors(&d2["ordinary"]), vec![4]);
    assert_eq!(d2["hstar"]["image_index"], 2);
    assert_eq!(factors(&d2["hstar"]["image"]), vec![2]);
    assert_eq!(d2["hstar"]["injective"], true);
}

#[test]
fn trivial_group_has_no_higher_cohomology() {
    let v = json(&["cohom", "--group", "trivial", "--module", "Z", "--degree", "4"]);
    for n in 1..=4 {
        for var in ["ordinary", "symmetric"] {
            let h = &v["degrees"][n][var];
            assert_eq!(h["free_rank"], 0);
            assert!(factors(h).is_empty());
        }
    }
}

#[test]
fn single_variant_omits_the_comparison() {
    let v = json(&["cohom", "--group", "sym:3", "--module", "Z@sign", "--variant", "symmetric"]);
    assert!(v["degrees"][1].get("ordinary").is_none());
    assert!(v["degrees"][1].get("hstar").is_none());
    assert!(v.get("hstar_injective").is_none());
}

#[test]
fn group_and_module_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "z3.json", r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#);
    let m = write(dir.path(), "m.json", r#"{"free_rank":0,"torsion":[3],"action":{"kind":"trivial"}}"#);
    let (g, m) = (g.to_str().unwrap(), m.to_str().unwrap());
    let from_files = json(&["cohom", "--group", g, "--module", m]);
    let from_specs = json(&["cohom", "--group", "cyclic:3", "--module", "Zmod:3"]);
    assert_eq!(from_files["degrees"], from_specs["degrees"]);
    let info = json(&["group", "--group", g]);
    assert_eq!(info["order"], 3);
    assert_eq!(info["inverses"], serde_json::json!([0, 2, 1]));
    // Specs with a nontrivial action need a group spec.
    assert_eq!(symcoh(&["cohom", "--group", g, "--module", "Zmod:3@sign"]).code, 2);
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"order":2,"table":[[0,1],[1,1]]}"#);
    let r = symcoh(&["group", "--group", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("error"), "{}", r.stderr);
    assert_eq!(symcoh(&["cohom", "--group", "cyclic:0", "--module", "Z"]).code, 2);
    assert_eq!(symcoh(&["cohom", "--group", "cyclic:2", "--module", "Q"]).code, 2);
    assert_eq!(symcoh(&["cohom", "--group", "cyclic:2"]).code, 2);
    assert_eq!(symcoh(&["oracle", "--group", "sym:3", "--module", "Zmod:6", "--degree", "2"]).code, 2);
    assert_eq!(symcoh(&["tower", "--tower", "cyclic-p:4:3"]).code, 2);
    assert_eq!(symcoh(&["ext", "build"]).code, 2);
}

#[test]
fn refused_hypotheses_exit_with_three() {
    let r = symcoh(&["les", "--preset", "z2-z4-z2", "--group", "cyclic:2"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let dir = tempfile::tempdir().unwrap();
    let ses = r#"{"group":"cyclic:2","A_prime":"Zmod:2","A":"Zmod:4","A_doubleprime":"Zmod:2",
        "i":[[2]],"j":[[1]],"section":[[0],[1]]}"#;
    let p = write(dir.path(), "ses.json", ses);
    let p = p.to_str().unwrap();
    assert_eq!(symcoh(&["les", "--ses", p, "--variant", "symmetric"]).code, 3);
    let ordinary = json(&["les", "--ses", p, "--variant", "ordinary"]);
    assert_eq!(ordinary["sequences"][0]["exact"], true);
}

#[test]
fn les_preset_is_exact() {
    for g in ["cyclic:2", "cyclic:3", "sym:3"] {
        let v = json(&["les", "--preset", "z3-z6-z2", "--group", g]);
        for s in v["sequences"].as_array().unwrap() {
            assert_eq!(s["exact"], true, "{g} {}", s["variant"]);
            assert_eq!(s["nodes"].as_array().unwrap().len(), 10);
        }
    }
}

#[test]
fn ext_build_reproduces_the_given_section() {
    let v = json(&["ext", "build", "--preset", "z-times-z2"]);
    let r = &v[0];
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["section"], serde_json::json!([[0, 0], [-1, 1], [0, 1], [1, 1]]));
    assert_eq!(r["checks"]["section_symmetric"], true);
    let t = symcoh(&["--format", "table", "ext", "build", "--preset", "z-times-z2"]);
    assert!(t.stdout.contains("s(1) = (-1, 1)"), "{}", t.stdout);
    for p in ["z-index-4", "z4-over-z2"] {
        let v = json(&["ext", "build", "--preset", p]);
        assert_eq!(v[0]["verdict"], "PASS", "{p}");
        assert_eq!(v[0]["checks"]["section_symmetric"], false, "{p}");
    }
}

#[test]
fn ext_section_search() {
    let v = json(&["ext", "section", "--preset", "z4-over-z2", "--preset", "z-index-4", "--preset", "z-times-z2"]);
    assert_eq!(v[0]["status"], "NONE");
    assert_eq!(v[1]["status"], "NONE");
    assert_eq!(v[2]["status"], "FOUND");
    assert_eq!(v[0]["section"], Value::Null);
}

#[test]
fn ext_classify_cocycle_files() {
    let dir = tempfile::tempdir().unwrap();
    let carry = write(dir.path(), "carry.json", r#"{"degree":2,"values":[[0],[0],[0],[1]]}"#);
    let zero = write(dir.path(), "zero.json", r#"{"degree":2,"values":[[0],[0],[0],[0]]}"#);
    let (carry, zero) = (carry.to_str().unwrap(), zero.to_str().unwrap());
    let base = ["ext", "classify", "--group", "cyclic:2", "--module", "Zmod:2"];
    let same = json(&[&base[..], &["--cocycle", carry, "--cocycle", carry]].concat());
    assert_eq!(same["comparisons"][0]["verdict"], "EQUIVALENT");
    assert_eq!(same["classes"][0]["class"], serde_json::json!([1]));
    assert_eq!(same["classes"][0]["in_symmetric_image"], false);
    let different = json(&[&base[..], &["--cocycle", carry, "--cocycle", zero]].concat());
    assert_eq!(different["comparisons"][0]["verdict"], "NOT-EQUIVALENT");
    assert_eq!(different["classes"][1]["in_symmetric_image"], true);

    let v = json(&["ext", "classify", "--preset", "z-times-z2", "--preset", "z-index-4"]);
    assert_eq!(v["classes"][0]["class"], serde_json::json!([2]));
    assert_eq!(v["classes"][0]["in_symmetric_image"], true);
    assert_eq!(v["classes"][1]["class"], serde_json::json!([1]));
    assert_eq!(v["classes"][1]["in_symmetric_image"], false);
    assert_eq!(v["comparisons"][0]["verdict"], "NOT-EQUIVALENT");
}

#[test]
fn ext_cocycles_need_normalizing() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"degree":2,"values":[[1],[1],[1],[1]]}"#);
    let args = ["ext", "build", "--group", "cyclic:2", "--module", "Zmod:2", "--cocycle", c.to_str().unwrap()];
    assert_eq!(symcoh(&args).code, 2);
    let v = json(&[&args[..], &["--normalize"]].concat());
    assert_eq!(v[0]["verdict"], "PASS");
    assert_eq!(v[0]["carrier"], "structured");
}

#[test]
fn ext_table_file_and_section_file() {
    let dir = tempfile::tempdir().unwrap();
    let e = write(
        dir.path(),
        "e.json",
        r#"{"kind":"table","group":"cyclic:2","module":"Zmod:2","E":"klein4","i":[0,1],"pi":[0,0,1,1]}"#,
    );
    let s = write(dir.path(), "s.json", r#"{"assignment":[0,3]}"#);
    let e = e.to_str().unwrap();
    let v = json(&["ext", "build", "--extension", e, "--section", s.to_str().unwrap()]);
    assert_eq!(v[0]["verdict"], "PASS");
    assert_eq!(v[0]["section"], serde_json::json!([0, 3]));
    assert_eq!(v[0]["checks"]["section_symmetric"], true);
    let found = json(&["ext", "section", "--extension", e]);
    assert_eq!(found[0]["status"], "FOUND");
    let wrong = write(dir.path(), "w.json", r#"{"assignment":[0,1]}"#);
    assert_eq!(symcoh(&["ext", "build", "--extension", e, "--section", wrong.to_str().unwrap()]).code, 2);
}

#[test]
fn oracle_examples() {
    let v = json(&["oracle", "--group", "cyclic:2", "--module", "Zmod:2", "--degree", "2"]);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r[1]["invariant_factors"], serde_json::json!([]));
    for (g, m, n) in [("cyclic:2", "Zmod:2", "1"), ("cyclic:3", "Zmod:3", "1"), ("klein4", "Zmod:2", "2")] {
        let v = json(&["oracle", "--group", g, "--module", m, "--degree", n]);
        for r in v["results"].as_array().unwrap() {
            assert_eq!(r["agree"], true, "{g} {m} {n}");
            assert_eq!(r["invariant_factors"], r["snf_invariant_factors"]);
        }
    }
}

#[test]
fn tower_examples() {
    let v = json(&["tower", "--tower", "cyclic-p:2:3", "--module", "Zmod:2", "--variant", "ordinary"]);
    assert_eq!(v["levels"], serde_json::json!([2, 4, 8]));
    assert_eq!(v["degrees"][1]["ordinary"]["status"], "STABILIZED");
    assert_eq!(v["degrees"][1]["ordinary"]["limit"]["invariant_factors"], serde_json::json!([2]));
    let d2 = &v["degrees"][2]["ordinary"];
    assert_eq!(d2["status"], "NOT-STABILIZED");
    assert_eq!(d2["all_images_trivial"], true);
    // The level count may come from --levels.
    let w = json(&["tower", "--tower", "cyclic-p:2", "--levels", "3", "--variant", "ordinary"]);
    assert_eq!(w["degrees"], v["degrees"]);
    let c = json(&["tower", "--group", "sym:3", "--module", "Zmod:6", "--levels", "3", "--degree", "1"]);
    assert_eq!(c["tower"], "constant:sym:3:3");
    for d in c["degrees"].as_array().unwrap() {
        assert_eq!(d["ordinary"]["status"], "STABILIZED");
        assert_eq!(d["symmetric"]["status"], "STABILIZED");
    }
}

#[test]
fn tower_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = r#"{"levels":["cyclic:2","cyclic:4"],"bonding":[[0,1,0,1]],"coeff":"Zmod:2"}"#;
    let p = write(dir.path(), "t.json", good);
    let v = json(&["tower", "--tower", p.to_str().unwrap(), "--degree", "1", "--window", "1"]);
    assert_eq!(v["degrees"][1]["ordinary"]["status"], "STABILIZED");
    let bad = r#"{"levels":["cyclic:2","cyclic:4"],"bonding":[[0,0,0,0]],"coeff":"Zmod:2"}"#;
    let p = write(dir.path(), "bad.json", bad);
    let r = symcoh(&["tower", "--tower", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.to_lowercase().contains("surjective"), "{}", r.stderr);
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["cohom", "--group", "dihedral:4", "--module", "Zmod:2^2@natural"];
    let one = symcoh(&[&["--jobs", "1"][..], &args].concat());
    let many = symcoh(&[&["--jobs", "6"][..], &args].concat());
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, many.stdout);
}
