use std::path::{Path, PathBuf};

use serde_json::Value;

use fpsc_cli::{run, Outcome};

const Z2X3: &str = r#"{"factors":[{"kind":"cyclic","order":2},{"kind":"cyclic","order":2},{"kind":"cyclic","order":2}]}"#;
const Z_Z2: &str = r#"{"factors":[{"kind":"cyclic-z"},{"kind":"cyclic","order":2}]}"#;

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("fpsc-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn put(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn fpsc(args: &[&str]) -> Outcome {
    run(std::iter::once("fpsc").chain(args.iter().copied()))
}

fn report(o: &Outcome) -> Value {
    serde_json::from_str(&o.report).unwrap_or_else(|e| panic!("{e}: {} / {}", o.report, o.stderr))
}

fn toy(dir: &Path) -> String {
    let cfg = put(dir, "z2x3.json", Z2X3);
    let out = dir.join("toy.json").to_str().unwrap().to_string();
    let o = fpsc(&["generate", "--config", &cfg, "--scale", "4", "--mode", "compact", "--lambda", "1/6", "--out", &out]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    out
}

#[test]
fn empty_factor_list_is_rejected() {
    let d = scratch("empty");
    let cfg = put(&d, "f.json", r#"{"factors":[]}"#);
    let o = fpsc(&["generate", "--config", &cfg]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("empty"), "{}", o.stderr);
    assert!(o.report.is_empty());
    let o = fpsc(&["ball", "--config", &cfg, "-R", "2"]);
    assert_eq!(o.code, 2);
}

#[test]
fn bad_arguments_exit_nonzero() {
    assert_eq!(fpsc(&["no-such-command"]).code, 2);
    assert_eq!(fpsc(&[]).code, 2);
    let d = scratch("badargs");
    let cfg = put(&d, "f.json", Z2X3);
    let o = fpsc(&["generate", "--config", &cfg, "--scale", "3"]);
    assert_eq!(o.code, 2);
    let o = fpsc(&["generate", "--config", &cfg, "--lambda", "0.125"]);
    assert_eq!(o.code, 2, "decimals are not accepted for λ");
    let o = fpsc(&["word", "--config", &cfg, "--reduce", "7:a"]);
    assert_eq!(o.code, 2);
    let o = fpsc(&["ball", "--presentation", "/nonexistent/p.json"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("cannot read"));
}

#[test]
fn generate_writes_a_certified_presentation() {
    let d = scratch("generate");
    let p = toy(&d);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(file["lambda"], "1/6");
    assert_eq!(file["certificate"]["valid"], true);
    assert_eq!(file["factors"].as_array().unwrap().len(), 3);
    // a claim the construction cannot meet is refused
    let cfg = put(&d, "z2x3.json", Z2X3);
    let o = fpsc(&["generate", "--config", &cfg, "--scale", "4", "--mode", "compact", "--lambda", "1/100", "--out", &p]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["ok"], false);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert!(file.get("lambda").is_none());
}

#[test]
fn check_sc_on_abab_fails_with_witness() {
    let d = scratch("checksc");
    let edges: Vec<String> = (0..8).map(|i| format!(r#"{{"u":{i},"v":{},"label":"{}:a"}}"#, (i + 1) % 8, i % 2)).collect();
    let g = put(
        &d,
        "g.json",
        &format!(
            r#"{{"vertices":[0,1,2,3,4,5,6,7],"edges":[{}],"factors":[{{"kind":"cyclic","order":2}},{{"kind":"cyclic","order":2}}]}}"#,
            edges.join(",")
        ),
    );
    let dot = d.join("g.dot");
    let o = fpsc(&["check-sc", "--graph", &g, "--lambda", "1/8", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    let r = report(&o);
    assert_eq!(r["result"]["longest_piece"], 7);
    assert_eq!(r["result"]["status"], "fail");
    assert!(r["result"]["piece_witness"]["label"].is_string());
    assert!(std::fs::read_to_string(dot).unwrap().contains("0:a"));
    // without factors in the file a config is needed
    let bare = put(&d, "bare.json", r#"{"vertices":[0],"edges":[{"u":0,"v":0,"label":"0:a"}]}"#);
    assert_eq!(fpsc(&["check-sc", "--graph", &bare]).code, 2);
    // a loop labelled by a Z generator collapses the attached line
    let cfg = put(&d, "f.json", Z_Z2);
    let o = fpsc(&["check-sc", "--graph", &bare, "--config", &cfg, "--lambda", "1/2"]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["result"]["embedded"], false);
}

#[test]
fn word_reduction() {
    let d = scratch("word");
    let p = toy(&d);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let relator: Vec<&str> = file["graph"]["edges"].as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    let o = fpsc(&["word", "--presentation", &p, "--reduce", &relator.join(" ")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(report(&o)["result"]["trivial"], true);
    let o = fpsc(&["word", "--presentation", &p, "--reduce", "0:a 1:a 2:a", "--theta", "1/2"]);
    let r = report(&o);
    assert_eq!(r["result"]["trivial"], false);
    assert_eq!(r["result"]["reduced"], "0:a 1:a 2:a");
    assert_eq!(fpsc(&["word", "--presentation", &p, "--reduce", "0:a", "--theta", "3/2"]).code, 2);
    // relator-free products need no certificate
    let cfg = put(&d, "f.json", Z_Z2);
    let r = report(&fpsc(&["word", "--config", &cfg, "--reduce", "0:a 1:a 1:a 0:A"]));
    assert_eq!(r["result"]["trivial"], true);
}

#[test]
fn ball_exports() {
    let d = scratch("ball");
    let cfg = put(&d, "f.json", Z2X3);
    let out = d.join("ball.json");
    let dot = d.join("ball.dot");
    let o = fpsc(&["ball", "--config", &cfg, "-R", "5", "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let r = report(&o);
    assert_eq!(r["result"]["sphere_sizes"], serde_json::json!([1, 3, 6, 12, 24, 48]));
    let export: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(export["elements"].as_array().unwrap().len(), 94);
    // a tree: one edge per non-identity element
    assert_eq!(std::fs::read_to_string(dot).unwrap().matches(" -- ").count(), 93);
}

#[test]
fn coned_distform_and_stable() {
    let d = scratch("coned");
    let cfg = put(&d, "f.json", Z_Z2);
    let r = report(&fpsc(&["coned", "--config", &cfg, "-R", "5", "--peripherals", "0"]));
    assert_eq!(r["result"]["peripherals"], serde_json::json!([0]));
    assert!(r["result"]["cones"].as_u64().unwrap() > 0);
    assert_eq!(fpsc(&["coned", "--config", &cfg, "-R", "5", "--peripherals", "4"]).code, 2);

    let csv = d.join("d.csv");
    let o = fpsc(&["distform", "--config", &cfg, "-R", "6", "-D", "0", "-M", "1", "--sample", "30", "--csv", csv.to_str().unwrap()]);
    let r = report(&o);
    for p in r["result"]["pairs"].as_array().unwrap() {
        assert_eq!(p["middle"], p["d_gamma"]);
    }
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 31);

    let r = report(&fpsc(&["stable", "--config", &cfg, "-R", "6", "--peripherals", "0", "-D", "0", "-L", "3"]));
    let few = r["result"]["member_count"].as_u64().unwrap();
    let r = report(&fpsc(&["stable", "--config", &cfg, "-R", "6", "--peripherals", "0", "-D", "0", "-L", "6"]));
    assert!(r["result"]["member_count"].as_u64().unwrap() > few);
}

#[test]
fn seeds_change_samples_not_hashes_of_outputs() {
    let d = scratch("seed");
    let cfg = put(&d, "f.json", Z_Z2);
    let a = fpsc(&["distform", "--config", &cfg, "-R", "6", "--sample", "10", "--seed", "1"]);
    let b = fpsc(&["distform", "--config", &cfg, "-R", "6", "--sample", "10", "--seed", "2"]);
    assert_ne!(report(&a)["config_hash"], report(&b)["config_hash"]);
    assert_ne!(a.report, b.report);
    let c1 = fpsc(&["distform", "--config", &cfg, "-R", "6", "--sample", "10", "--seed", "1", "--csv", d.join("x.csv").to_str().unwrap()]);
    let c2 = fpsc(&["distform", "--config", &cfg, "-R", "6", "--sample", "10", "--seed", "1", "--csv", d.join("y.csv").to_str().unwrap()]);
    assert_eq!(c1.report, c2.report);
    assert_eq!(c1.report, a.report);
}

#[test]
fn one_ended_needs_relators_and_certification() {
    let d = scratch("oneended");
    let cfg = put(&d, "f.json", Z2X3);
    let o = fpsc(&["one-ended", "--config", &cfg, "-R", "4", "--level", "2"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("ends"), "{}", o.stderr);
    let p = toy(&d);
    // certified at 1/6 only
    assert_eq!(fpsc(&["one-ended", "--presentation", &p, "-R", "10", "--level", "1"]).code, 2);
    let o = fpsc(&["one-ended", "--presentation", &p, "-R", "16", "--level", "1", "--points", "3", "--extension", "2", "--force"]);
    assert_eq!(o.code, 0, "{}", o.report);
    let r = report(&o);
    for path in r["result"]["paths"].as_array().unwrap() {
        assert_eq!(path["verified"], true);
        assert!(path["min_dist"].as_u64().unwrap() >= 1);
    }
}

#[test]
fn diagram_outputs() {
    let d = scratch("diagram");
    let p = toy(&d);
    let (out, svg, dot) = (d.join("d.json"), d.join("d.svg"), d.join("d.dot"));
    let o = fpsc(&[
        "diagram", "--presentation", &p, "--word", "0:a 1:a 0:a 0:a 1:a 0:a", "--out", out.to_str().unwrap(),
        "--svg", svg.to_str().unwrap(), "--dot", dot.to_str().unwrap(), "--curvature", "raw-edges",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = report(&o);
    assert_eq!(r["result"]["euler"], 1);
    assert_eq!(r["result"]["faces"], 0);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
    let j: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(j["boundary_word"], "0:a 1:a 0:a 0:a 1:a 0:a");
    let o = fpsc(&["diagram", "--presentation", &p, "--word", "0:a 1:a"]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["result"]["found"], false);
    assert_eq!(fpsc(&["diagram", "--presentation", &p, "--word", "0:a", "--curvature", "bogus"]).code, 2);
}

#[test]
fn report_file_matches_stdout() {
    let d = scratch("report");
    let cfg = put(&d, "f.json", Z2X3);
    let rp = d.join("r.json");
    let o = fpsc(&["ball", "--config", &cfg, "-R", "3", "--report", rp.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(rp).unwrap(), o.report);
    // the hash covers file contents, not their location
    let cfg2 = put(&d, "g.json", Z2X3);
    let o2 = fpsc(&["ball", "--config", &cfg2, "-R", "3"]);
    assert_eq!(o.report, o2.report);
    let cfg3 = put(&d, "h.json", Z_Z2);
    let o3 = fpsc(&["ball", "--config", &cfg3, "-R", "3"]);
    assert_ne!(report(&o)["config_hash"], report(&o3)["config_hash"]);
}
