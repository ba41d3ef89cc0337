use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_submod"));
    c.env_remove("SUBMOD_MAX_N");
    c
}

fn write_spec(name: &str, spec: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("submod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, spec.to_string()).unwrap();
    path
}

fn run(args: &[&str], spec: Option<&PathBuf>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(p) = spec {
        c.arg("--spec").arg(p);
    }
    c.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn k3_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 2), (0, 2)]
}

fn k3_graphic() -> Value {
    json!({"ground": ["e1", "e2", "e3"], "function": {"kind": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}})
}

fn forest_rank(vertices: usize, edges: &[(usize, usize)], mask: usize) -> i64 {
    let mut comp: Vec<usize> = (0..vertices).collect();
    let mut rank = 0;
    for (k, &(u, v)) in edges.iter().enumerate() {
        if mask >> k & 1 == 1 && comp[u] != comp[v] {
            let (from, to) = (comp[u], comp[v]);
            comp.iter_mut().filter(|c| **c == from).for_each(|c| *c = to);
            rank += 1;
        }
    }
    rank
}

fn rat(s: &str) -> (i64, i64) {
    let (p, q) = s.split_once('/').unwrap();
    (p.parse().unwrap(), q.parse().unwrap())
}

#[test]
fn triangle_cut_is_submodular() {
    let spec = write_spec(
        "tri.json",
        &json!({"ground": ["a", "b", "c"], "function": {"kind": "cut", "edges": [["a", "b", "1"], ["b", "c", "1"], ["a", "c", "1"]]}}),
    );
    let out = run(&["certify", "--property", "submodular"], Some(&spec));
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "holds");
    assert_eq!(r["verdicts"][0]["property"], "submodular");
    assert_eq!(r["verdicts"][0]["status"], "holds");
}

#[test]
fn k3_rank_is_not_strongly_submodular() {
    let spec = write_spec("k3-strong.json", &k3_graphic());
    let out = run(&["certify", "--property", "strongly_submodular"], Some(&spec));
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let w = &r["verdicts"][0]["witness"];
    assert_eq!(r["verdicts"][0]["status"], "violated");
    assert_eq!(w["set"], json!([]));
    assert_eq!(w["mobius"], "1/1");
}

#[test]
fn malformed_json_is_an_input_error() {
    let spec = std::env::temp_dir().join(format!("submod-bad-{}.json", std::process::id()));
    std::fs::write(&spec, "{\"ground\": [\"a\"], \"function\": ").unwrap();
    let out = run(&["certify"], Some(&spec));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn input_errors_exit_two() {
    let cases = [
        json!({"ground": ["a"], "function": {"kind": "nope"}}),
        json!({"ground": ["a"], "function": {"kind": "uniform", "k": 1}, "extra": true}),
        json!({"ground": ["a", "a"], "function": {"kind": "uniform", "k": 1}}),
        json!({"ground": ["a"], "function": {"kind": "modular", "atoms": {"a": "1"}}, "flags": ["decreasing"]}),
        json!({"ground": ["a"], "function": {"kind": "modular", "atoms": {"a": "x/2"}}}),
        json!({"ground": ["a", "b"], "function": {"kind": "table", "entries": [{"set": [], "value": "0"}]}}),
    ];
    for (k, spec) in cases.iter().enumerate() {
        let path = write_spec(&format!("bad{k}.json"), spec);
        assert_eq!(run(&["certify"], Some(&path)).status.code(), Some(2), "case {k}");
    }
    let ok = write_spec("k3-props.json", &k3_graphic());
    assert_eq!(run(&["certify", "--property", "pretty"], Some(&ok)).status.code(), Some(2));
    assert_eq!(run(&["compute", "choquet"], Some(&ok)).status.code(), Some(2));
    assert_eq!(run(&["compute", "nothing"], Some(&ok)).status.code(), Some(2));
    assert_eq!(run(&["certify"], None).status.code(), Some(2));
}

#[test]
fn choquet_of_k3_rank() {
    let mut spec = k3_graphic();
    spec["weights"] = json!(["2", "1", "1"]);
    let path = write_spec("k3-choquet.json", &spec);
    let out = run(&["compute", "choquet"], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    // Sorting form: weights 2 >= 1 >= 1 along e1, e2, e3.
    let w = [2, 1, 1];
    let mut expected = 0;
    for k in 0..3 {
        let next = if k + 1 < 3 { w[k + 1] } else { 0 };
        expected += (w[k] - next) * forest_rank(3, &k3_edges(), (1 << (k + 1)) - 1);
    }
    assert_eq!(report(&out)["values"]["choquet"], format!("{expected}/1"));
    assert_eq!(report(&out)["values"]["choquet"], "3/1");
}

#[test]
fn truncated_k3_coverage_is_graphic_rank() {
    let spec = json!({
        "ground": ["e1", "e2", "e3"],
        "function": {"kind": "coverage", "elements": ["0", "1", "2"],
                     "covers": {"e1": ["0", "1"], "e2": ["1", "2"], "e3": ["0", "2"]}, "offset": "-1"}
    });
    let path = write_spec("k3-cov.json", &spec);
    let out = run(&["compute", "truncate"], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    let table = report(&out)["values"]["positive_part"].as_array().unwrap().clone();
    assert_eq!(table.len(), 8);
    for (mask, entry) in table.iter().enumerate() {
        assert_eq!(entry["value"], format!("{}/1", forest_rank(3, &k3_edges(), mask)), "mask {mask}");
    }
}

#[test]
fn intersection_of_indicator_and_cardinality() {
    let spec = json!({
        "ground": ["a", "b"],
        "function": {"kind": "table", "entries": [
            {"set": [], "value": "0"}, {"set": ["a"], "value": "1"},
            {"set": ["b"], "value": "1"}, {"set": ["a", "b"], "value": "1"}]},
        "second": {"kind": "modular", "atoms": {"a": "1", "b": "1"}}
    });
    let path = write_spec("ij.json", &spec);
    let out = run(&["compute", "intersect"], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    let v = &report(&out)["values"];
    assert_eq!(v["value"], "1/1");
    let atoms: Vec<(i64, i64)> = ["a", "b"].iter().map(|l| rat(v["witness"]["atoms"][l].as_str().unwrap())).collect();
    assert!(atoms.iter().all(|&(p, q)| q == 1 && (0..=1).contains(&p)));
    assert_eq!(atoms[0].0 + atoms[1].0, 1);
}

#[test]
fn every_computation_runs_on_k3() {
    let mut spec = k3_graphic();
    spec["weights"] = json!(["2", "1", "1"]);
    spec["second"] = json!({"kind": "uniform", "k": 1});
    let path = write_spec("k3-all.json", &spec);
    for what in ["choquet", "var", "decompose", "truncate", "majorize", "distance", "mobius", "minimize", "intersect", "weighted_intersect", "greedy"] {
        let out = run(&["compute", what], Some(&path));
        assert_eq!(out.status.code(), Some(0), "{what}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["status"], "computed");
    }
    let r = report(&run(&["compute", "greedy"], Some(&path)));
    assert_eq!(r["values"]["integral"], "3/1");
    let r = report(&run(&["compute", "mobius"], Some(&path)));
    assert_eq!(r["values"]["mobius"][0]["value"], "1/1");
    assert_eq!(r["values"]["inertia"], json!({"positive": 2, "negative": 3, "zero": 3}));
}

#[test]
fn separation_of_a_sandwich() {
    let spec = json!({
        "ground": ["a", "b"],
        "function": {"kind": "uniform", "k": 1},
        "second": {"kind": "table", "entries": [
            {"set": [], "value": "0"}, {"set": ["a"], "value": "0"},
            {"set": ["b"], "value": "0"}, {"set": ["a", "b"], "value": "1"}]}
    });
    let path = write_spec("sep.json", &spec);
    let out = run(&["compute", "separate"], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    let v = &report(&out)["values"];
    let off = rat(v["offset"].as_str().unwrap());
    let a = rat(v["charge"]["atoms"]["a"].as_str().unwrap());
    let b = rat(v["charge"]["atoms"]["b"].as_str().unwrap());
    assert!(off.1 == 1 && a.1 == 1 && b.1 == 1);
    let mu = |x: bool, y: bool| off.0 + a.0 * x as i64 + b.0 * y as i64;
    let xi = |x: bool, y: bool| (x && y) as i64;
    let phi = |x: bool, y: bool| (x || y) as i64;
    for (x, y) in [(false, false), (true, false), (false, true), (true, true)] {
        assert!(xi(x, y) <= mu(x, y) && mu(x, y) <= phi(x, y));
    }
}

#[test]
fn coupling_or_hall_violation() {
    let mut spec = json!({
        "ground": ["a", "b"],
        "function": {"kind": "modular", "atoms": {}},
        "relation": {"right": ["x", "y"], "pairs": [["a", "x"], ["b", "x"]]},
        "marginals": {"left": ["1/2", "1/2"], "right": ["1/2", "1/2"]}
    });
    let out = run(&["compute", "couple"], Some(&write_spec("hall.json", &spec)));
    let v = &report(&out)["values"];
    assert_eq!(v["hall_violation"], json!(["a", "b"]));
    assert_eq!((v["left_mass"].as_str(), v["image_mass"].as_str()), (Some("1/1"), Some("1/2")));
    spec["relation"]["pairs"] = json!([["a", "x"], ["b", "x"], ["b", "y"]]);
    let out = run(&["compute", "couple"], Some(&write_spec("coupling.json", &spec)));
    assert_eq!(report(&out)["values"]["coupling"], json!([["1/2", "0/1"], ["0/1", "1/2"]]));
}

#[test]
fn canonical_form_is_idempotent() {
    let specs = [
        k3_graphic(),
        json!({"ground": ["a", "b", "c"], "function": {"kind": "cut", "edges": [["a", "b", "3/2"]], "offset": "1"}}),
        json!({"ground": ["p", "q"], "function": {"kind": "entropy", "alphabet": [2, 2], "joint": ["1/2", "0", "0", "1/2"]}}),
        json!({"ground": ["a", "b"], "function": {"kind": "ideal", "sets": [[], ["a"]]}, "weights": ["1", "4/2"]}),
        json!({"ground": ["x", "y"], "function": {"kind": "concave", "weights": ["1", "2"], "points": [["0", "0"], ["1", "1"], ["3", "3/2"]]}}),
    ];
    for (k, spec) in specs.iter().enumerate() {
        let first = run(&["canonical"], Some(&write_spec(&format!("rt{k}.json"), spec)));
        assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
        let canon: Value = serde_json::from_slice(&first.stdout).unwrap();
        assert_eq!(canon["function"]["kind"], "table");
        let second = run(&["canonical"], Some(&write_spec(&format!("rt{k}-c.json"), &canon)));
        assert_eq!(first.stdout, second.stdout, "spec {k}");
        // Same function, same digest.
        let d1 = report(&run(&["certify"], Some(&write_spec(&format!("rt{k}.json"), spec))))["input_digest"].clone();
        let d2 = report(&run(&["certify"], Some(&write_spec(&format!("rt{k}-c.json"), &canon))))["input_digest"].clone();
        assert_eq!(d1, d2);
    }
    let canon: Value = serde_json::from_slice(&run(&["canonical"], Some(&write_spec("rt-k3.json", &k3_graphic()))).stdout).unwrap();
    assert_eq!(canon["flags"], json!(["submodular", "increasing", "normalized"]));
}

#[test]
fn reports_are_byte_stable() {
    let path = write_spec("stable.json", &k3_graphic());
    let args = ["certify", "--property", "submodular,strongly_submodular,convex", "--seed", "7"];
    assert_eq!(run(&args, Some(&path)).stdout, run(&args, Some(&path)).stdout);
    let a = run(&["selftest", "--budget", "3", "--seed", "11"], None);
    let b = run(&["selftest", "--budget", "3", "--seed", "11"], None);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall_time_ms"));
    let timed = report(&run(&["selftest", "--budget", "3", "--timing"], None));
    assert!(timed["wall_time_ms"].is_u64());
}

#[test]
fn selftest_passes_by_default() {
    let out = run(&["selftest"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["verdicts"].as_array().unwrap().len(), submod::selftest::family_names().len());
}

#[test]
fn injected_faults_surface_with_witnesses() {
    let out = run(&["selftest", "--inject-fault"], None);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    for v in r["verdicts"].as_array().unwrap() {
        assert_eq!(v["status"], "fail", "{}", v["property"]);
        assert!(v["witness"].as_object().unwrap().len() > 1, "{}", v["property"]);
    }
}

#[test]
fn budget_three_selftest_is_fast() {
    let start = Instant::now();
    let out = run(&["selftest", "--budget", "3"], None);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn raised_limit_marks_reports_uncertified() {
    let path = write_spec("k3-limit.json", &k3_graphic());
    let plain = report(&run(&["certify"], Some(&path)));
    assert!(plain.get("uncertified").is_none());
    let raised = bin().env("SUBMOD_MAX_N", "22").args(["certify", "--spec"]).arg(&path).output().unwrap();
    assert_eq!(report(&raised)["uncertified"], true);
    let lowered = bin().env("SUBMOD_MAX_N", "2").args(["certify", "--spec"]).arg(&path).output().unwrap();
    assert_eq!(lowered.status.code(), Some(2));
    let beyond = bin().env("SUBMOD_MAX_N", "40").args(["certify", "--spec"]).arg(&path).output().unwrap();
    assert_eq!(beyond.status.code(), Some(2));
}

#[test]
fn text_output_and_out_file() {
    let path = write_spec("k3-text.json", &k3_graphic());
    let out = run(&["certify", "--text", "--property", "increasing"], Some(&path));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("certify holds\n"));
    assert!(text.contains("increasing: holds"));
    let target = path.with_extension("report.json");
    let out = run(&["compute", "mobius", "--out", target.to_str().unwrap()], Some(&path));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["command"], "compute mobius");
}
