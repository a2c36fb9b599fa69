use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output};

use hikita_core::partitions::{a_group_trivial, orbit_partitions, surjectivity_necessary};
use hikita_core::rootdata::{Family, LieType};
use serde_json::Value;

fn hikita(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hikita")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = hikita(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn dual_of_331_in_b() {
    let v = json_of(&["dual", "--type", "B", "--partition", "3,3,1"]);
    assert_eq!(v["verdicts"]["dual_type"], "C");
    assert_eq!(v["verdicts"]["dual_partition"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["schema_version"], "hikita-report/1");
    assert_eq!(v["seed"], 0);
}

#[test]
fn counterflat_is_not_flat_and_exits_zero() {
    let v = json_of(&["flatness", "--levi", "C3:gl2|sp1", "--special-dim", "13"]);
    assert_eq!(v["verdicts"]["verdict"], "not-flat");
    assert_eq!(v["verdicts"]["generic_dim"], 12);
}

#[test]
fn sl4_example_verifies() {
    let v = json_of(&["hikita-verify", "--ambient", "A4", "--m", "gl1,gl3", "--l", "torus"]);
    assert_eq!(v["verdicts"]["verdict"], "equal");
    assert_eq!(v["verdicts"]["fixed_points"], 4);
}

#[test]
fn orbitcartan_alias_and_schema() {
    let v = json_of(&["orbitcartan", "--levi", "C3:gl2|sp1", "--special-dim", "13"]);
    let r = &v["verdicts"];
    for key in ["levi", "generic_dim", "special_dim", "verdict", "witnesses", "hilbert", "socle"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["witnesses"][0]["monomial"], "x1*x2*x3");
    assert_eq!(r["witnesses"][0]["in_gr"], true);
}

#[test]
fn malformed_input_exits_two_with_location() {
    let out = hikita(&["dual", "--type", "B", "--partition", "3,3,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 4"));

    let out = hikita(&["flatness", "--levi", "C3:gl2|xx1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
}

#[test]
fn unknown_flags_are_errors() {
    let out = hikita(&["dual", "--type", "B", "--partition", "3,3,1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surjectivity_of_433_in_c_holds() {
    let v = json_of(&["surjectivity", "--type", "C", "--partition", "4,3,3"]);
    assert_eq!(v["verdicts"]["surjectivity_necessary"], true);
    assert_eq!(v["verdicts"]["a_group_trivial"], true);
}

/// Re-running the echoed input reproduces the verdicts.
#[test]
fn reports_round_trip() {
    let cases: [&[&str]; 5] = [
        &["dual", "--type", "C", "--partition", "4,2,2"],
        &["orbit-cartan", "--levi", "B4:gl2|so2"],
        &["hikita-verify", "--ambient", "C3", "--m", "gl3", "--l", "gl2|sp1"],
        &["census", "--ambient", "D4", "--m", "gl2,gl2", "--l", "gl1|so3"],
        &["betti", "--k", "2"],
    ];
    for args in cases {
        let first = json_of(args);
        let input: Vec<String> =
            first["input"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
        let refs: Vec<&str> = input.iter().map(String::as_str).collect();
        let out = hikita(&refs);
        assert_eq!(out.status.code(), Some(0));
        let second: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(first["verdicts"], second["verdicts"], "{args:?}");
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Number(n) => {
            out.insert(prefix.to_string(), n.to_string());
        }
        Value::Array(items) if items.iter().all(Value::is_number) => {
            let s: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.insert(prefix.to_string(), format!("[{}]", s.join(", ")));
        }
        _ => {}
    }
}

#[test]
fn table_and_json_agree_on_numbers() {
    let args = ["orbit-cartan", "--levi", "C3:gl2|sp1", "--special-dim", "13"];
    let v = json_of(&args);
    let mut numbers = BTreeMap::new();
    flatten("", &v["verdicts"], &mut numbers);
    let table = String::from_utf8(hikita(&args).stdout).unwrap();
    let lines: BTreeMap<&str, &str> = table.lines().filter_map(|l| l.split_once(": ")).collect();
    assert!(!numbers.is_empty());
    for (k, x) in &numbers {
        assert_eq!(lines.get(k.as_str()), Some(&x.as_str()), "{k}");
    }
}

#[test]
fn batch_of_the_three_examples() {
    let f = write_file(
        "# the three worked examples\n\
         orbit-cartan --levi C3:gl3 --base 1,1,1\n\
         flatness --levi C3:gl2|sp1 --special-dim 13\n\
         hikita orbit-cartan --levi B4:gl2|so2 --base 1,1,0,0\n",
    );
    let v = json_of(&["batch", f.path().to_str().unwrap(), "--jobs", "3"]);
    let reports = v["verdicts"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(v["verdicts"]["summary"]["failed"], 0);
    let r: Vec<&Value> = reports.iter().map(|x| &x["report"]["verdicts"]).collect();
    assert_eq!(r[0]["hilbert"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(r[0]["socle"], 1);
    assert_eq!(r[1]["verdict"], "not-flat");
    assert_eq!(r[2]["generic_dim"], 24);
    assert_eq!(r[2]["socle"], 2);
    assert_eq!(reports.iter().map(|x| x["line"].as_u64().unwrap()).collect::<Vec<_>>(), vec![2, 3, 4]);
}

#[test]
fn empty_batch_is_an_empty_report() {
    let f = write_file("");
    let out = hikita(&["batch", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["reports"], serde_json::json!([]));
    assert_eq!(v["verdicts"]["summary"]["total"], 0);
}

#[test]
fn batch_isolates_bad_lines() {
    let f = write_file("dual --type B --partition 3,3,1\ndual --type B --partition 3,3,0\nbetti --k 1\n");
    let v = json_of(&["batch", f.path().to_str().unwrap()]);
    let s = &v["verdicts"]["summary"];
    assert_eq!(s["ok"], 2);
    assert_eq!(s["failed"], 1);
    assert_eq!(s["failures"][0]["line"], 2);
    assert_eq!(v["verdicts"]["reports"][1]["status"], "usage-error");
}

#[test]
fn batch_surjectivity_table_for_c6() {
    let t = LieType::new(Family::C, 6).unwrap();
    let parts = orbit_partitions(t);
    let text: String = parts
        .iter()
        .map(|p| {
            let s: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            format!("surjectivity --type C --partition {}\n", s.join(","))
        })
        .collect();
    let f = write_file(&text);
    let v = json_of(&["batch", f.path().to_str().unwrap(), "--jobs", "4"]);
    let reports = v["verdicts"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), parts.len());
    for (p, r) in parts.iter().zip(reports) {
        let r = &r["report"]["verdicts"];
        assert_eq!(r["surjectivity_necessary"], surjectivity_necessary(p, t), "{p}");
        assert_eq!(r["a_group_trivial"], a_group_trivial(p, t), "{p}");
    }
}

#[test]
fn generators_from_file() {
    let f = write_file("e1: x1 - x2 ; 1\ne2: x2 - x3\ne3: x3 - x4 ; 1\nshift: 1 ; x1 + h\n");
    let v = json_of(&[
        "hikita-verify",
        "--ambient",
        "A4",
        "--m",
        "torus",
        "--l",
        "gl1,gl3",
        "--generators",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(v["verdicts"]["verdict"], "equal");
    assert_eq!(v["verdicts"]["per_generator"].as_array().unwrap().len(), 4);
}

#[test]
fn non_invariant_generator_is_rejected() {
    let f = write_file("bad: x1 ; 1\n");
    let out = hikita(&[
        "hikita-verify",
        "--ambient",
        "A3",
        "--m",
        "gl3",
        "--l",
        "torus",
        "--generators",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
