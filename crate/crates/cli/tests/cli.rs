use std::{io::Write, process::Command};

use serde_json::{json, Value};

fn cacti(args: &[&str]) -> (i32, String, String) {
  let out = Command::new(env!("CARGO_BIN_EXE_cacti")).args(args).env("CACTI_THREADS", "1").output().expect("binary runs");
  (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json_of(args: &[&str]) -> Value {
  let (code, out, err) = cacti(args);
  assert_eq!(code, 0, "{err}");
  serde_json::from_str(&out).unwrap()
}

fn temp_json(v: &Value) -> tempfile::NamedTempFile {
  let mut f = tempfile::NamedTempFile::new().unwrap();
  write!(f, "{v}").unwrap();
  f
}

#[test]
fn verify_d2_passes() {
  let (code, out, _) = cacti(&["verify", "--suite", "d2", "--lobes", "2", "--max-degree", "3"]);
  assert_eq!(code, 0);
  assert!(out.contains("PASS"));
}

#[test]
fn boundary_of_o_prime_is_empty() {
  let (code, out, _) = cacti(&["boundary", "--tree", "root(w<1;1;0>())", "--json"]);
  assert_eq!(code, 0);
  assert_eq!(out.trim(), r#"{"terms":[]}"#);
}

#[test]
fn act_by_o_prime_equals_hh_delta() {
  let f = temp_json(&json!({"algebra":"dual","arity":2,"coeffs":[["1","2"],["0","1"],["3","0"],["1","-1/2"]]}));
  let path = f.path().to_str().unwrap();
  let acted = json_of(&["act", "--tree", "root(w<1;1;0>())", "--cochains", path, "--json"]);
  let delta = json_of(&["hh-delta", "--cochains", path, "--json"]);
  assert_eq!(acted, delta);
  assert_eq!(acted["arity"], 1);
}

#[test]
fn correlate_reads_the_action() {
  // t0 acts as the identity, so the correlator is η(a_0, f(a_1))
  let f = temp_json(&json!({"cochains":{"algebra":"z2","arity":1,"coeffs":[["1","2"],["3","4"]]},"inputs":[0,1]}));
  let v = json_of(&["correlate", "--tree", "root(w<1;0;0>())", "--inputs", f.path().to_str().unwrap(), "--json"]);
  // f(e_1) = 3 e_0 + 4 e_1 and η pairs e_0 with itself
  assert_eq!(v, json!("3"));
}

#[test]
fn homology_and_enumerate() {
  assert_eq!(json_of(&["homology", "--lobes", "2", "--json"])["betti"], json!([1, 3, 3, 1]));
  assert_eq!(json_of(&["enumerate", "--lobes", "2", "--spineless", "--json"]).as_array().unwrap().len(), 4);
  assert_eq!(json_of(&["hh", "--algebra", "dual", "--degree", "2", "--json"])["dim"], 1);
}

#[test]
fn compose_with_the_unit() {
  let c = json_of(&["compose", "--left", "root(w<1;0;0>())", "--slot", "1", "--right", "root(w<1;1;0>())", "--json"]);
  assert_eq!(c["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn graph_round_trip_through_the_cactus() {
  let g = json_of(&["graph", "cactus", "--tree", "root(w<1;0;0>(b(w<2;0;0>())))", "--json"]);
  let mut f = tempfile::NamedTempFile::new().unwrap();
  write!(f, "{}", g.as_str().unwrap()).unwrap();
  let path = f.path().to_str().unwrap();
  assert_eq!(json_of(&["graph", "genus", path, "--json"]), json!(0));
  assert_eq!(json_of(&["graph", "dual", path, "--json"]), json!("root(w<1;0;0>(b(w<2;0;0>())))"));
  assert_eq!(json_of(&["graph", "cycles", path, "--json"]).as_array().unwrap().len(), 3);
}

#[test]
fn verify_json_is_deterministic() {
  let args = ["verify", "--suite", "hochschild", "--algebra", "dual", "--max-arity", "2", "--trials", "3", "--seed", "9", "--json"];
  let mut a = json_of(&args);
  let mut b = json_of(&args);
  for v in [&mut a, &mut b] {
    v["reports"][0]["wall_ms"] = json!(0);
  }
  assert_eq!(a, b);
  assert_eq!(a["ok"], true);
}

#[test]
fn usage_errors_exit_nonzero() {
  let (code, _, err) = cacti(&["verify", "--suite", "nope"]);
  assert_ne!(code, 0);
  assert!(err.contains("unknown suite"));
  let (code, _, err) = cacti(&["boundary", "--tree", "root(w<1;0;0>"]);
  assert_ne!(code, 0);
  assert!(!err.is_empty());
  let (code, _, _) = cacti(&["verify"]);
  assert_ne!(code, 0);
}
