use std::path::PathBuf;
use std::process::{Command, Output};

use nichols_core::grp::GroupSpec;
use nichols_core::ydmod::{BraidedVectorSpace, BraidingExport};
use serde_json::Value;

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = nichols(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn group_info_of_heisenberg() {
    let v = json(&["group-info", "--group", "heisenberg:n=1,m=3"]);
    assert_eq!(v["order"], 27);
    assert_eq!(v["class_count"], 11);
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["commutator_order"], 3);
    assert_eq!(v["nilpotency"]["class"], 2);
}

#[test]
fn classes_lists_sizes() {
    let v = json(&["classes", "--group", "heisenberg:n=1,m=3"]);
    let sizes: Vec<u64> = v.as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 3);
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 8);
}

#[test]
fn typec_witness_on_unitriangular() {
    let v = json(&["typec", "--group", "unitriangular4:m=3", "--class-rep", "(1,1,1,0,0,0)"]);
    assert_eq!(v["outcome"]["outcome"], "type_c");
    assert_eq!(v["outcome"]["witness"]["h_order"], 27);
    assert_eq!(v["verdict"]["dim"], "infinite");
}

#[test]
fn a2_at_cube_root_totals_27() {
    let v = json(&["nichols-dim", "--diagonal", "[[w,w],[w,w]]", "--max-degree", "9"]);
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    assert_eq!(dims.iter().sum::<u64>(), 27);
    assert_eq!(dims[9], 0);
    assert_eq!(v["certified_total"], 27);
}

#[test]
fn verdict_for_ufo8_pattern() {
    // ζ of order 12, q = -ζ² = ζ^8
    let v = json(&["diagonal-verdict", "--diagonal", "[[2/3,1/12],[0/12,2/3]]"]);
    assert_eq!(v["verdict"]["dim"]["finite"], Value::Null);
    assert!(v["verdict"]["dim"].get("finite").is_some());
}

#[test]
fn algorithm38_on_heisenberg_is_empty() {
    for p in ["3", "5"] {
        let spec = format!("heisenberg:n=1,m={p}");
        let v = json(&["algorithm38", "--group", &spec]);
        assert_eq!(v["abelian_pairs"].as_array().unwrap().len(), 0);
        assert_eq!(v["families"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn output_is_byte_identical() {
    let args = ["algorithm38", "--group", "cyclic:m=5", "--format", "json"];
    let a = nichols(&args);
    let b = nichols(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = ["audit21", "--group", "unitriangular4:m=3"];
    assert_eq!(nichols(&text).stdout, nichols(&text).stdout);
}

#[test]
fn json_keys_are_sorted() {
    let v = nichols(&["group-info", "--group", "cyclic:m=3", "--format", "json"]);
    let s = String::from_utf8(v.stdout).unwrap();
    let keys: Vec<&str> = s
        .lines()
        .filter(|l| l.starts_with("  \"") && l.contains("\":"))
        .filter_map(|l| l.trim().strip_prefix('"')?.split('"').next())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn braiding_export_round_trips() {
    let path = tmp("quotient_braiding.json");
    let p = path.to_str().unwrap();
    let module = [
        "--group",
        "heisenberg_quotient:n=1,m=6,N=2",
        "--class-rep",
        "(1,0,0)",
        "--q",
        "1/3",
    ];
    let mut args = vec!["braiding-export"];
    args.extend(module);
    args.extend(["--out", p]);
    assert!(nichols(&args).status.success());
    let doc: BraidingExport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let c = BraidedVectorSpace::import(&doc).unwrap();
    assert_eq!(c.export(), doc);
    assert!(c.satisfies_braid_equation());

    let v = json(&["nichols-dim", "--braiding-file", p, "--max-degree", "9"]);
    assert_eq!(v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).sum::<u64>(), 27);
    assert_eq!(v["certified_total"], 27);
}

#[test]
fn group_file_input() {
    let g = "heisenberg:n=1,m=3".parse::<GroupSpec>().unwrap().build().unwrap();
    let path = tmp("heis3.json");
    std::fs::write(&path, serde_json::to_string(&g.to_document()).unwrap()).unwrap();
    let v = json(&["group-info", "--group-file", path.to_str().unwrap()]);
    assert_eq!(v["order"], 27);
    assert_eq!(v["class_count"], 11);
}

#[test]
fn yz_on_quotient_class() {
    let v = json(&[
        "yz",
        "--group",
        "heisenberg_quotient:n=1,m=6,N=2",
        "--class-rep",
        "(1,0,0)",
        "--q",
        "1/3",
        "--h",
        "(0,1,0)",
    ]);
    assert_eq!(v["case"], "rank_two_special");
    assert_eq!(v["orbit"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(nichols(&["bogus"]).status.code(), Some(1));
    assert_eq!(nichols(&["group-info"]).status.code(), Some(1));
    assert_eq!(nichols(&["group-info", "--group", "nope:m=3"]).status.code(), Some(1));
    // the audit needs odd order
    assert_eq!(nichols(&["audit21", "--group", "dihedral4"]).status.code(), Some(1));
    assert_eq!(nichols(&["audit21", "--group", "heisenberg:n=1,m=3"]).status.code(), Some(0));
    assert_eq!(nichols(&["--help"]).status.code(), Some(0));
}
