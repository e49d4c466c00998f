use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tangal::csep::FrobeniusMonoid;
use tangal::gset::GSet;
use tangal::rep::Representation;
use tangal::{Algebra, Field, FiniteGroup, HopfAlgebra, Poly};

fn tangal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangal")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, v: impl serde::Serialize) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn algcheck_reports_findings_as_data() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = Field::new(2, 1).unwrap();
    let mu6 = write(dir.path(), "mu6.json", HopfAlgebra::mu(6, &f2).unwrap().to_json());
    let r = report(&tangal(&["algcheck", s(&mu6)]));
    assert_eq!(r["separable"], false);
    assert_eq!(r["pi0_dim"], 3);
    assert_eq!(r["kind"], "hopf");
    let k3 = write(dir.path(), "k3.json", Algebra::diagonal(&Field::new(5, 1).unwrap(), 3).to_json());
    let r = report(&tangal(&["algcheck", s(&k3)]));
    assert_eq!(r["separable"], true);
    assert_eq!(r["pi0_dim"], 3);
    assert_eq!(r["points"], 3);
}

#[test]
fn malformed_input_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"field\": {\"p\": 2, \"n\": 1}, \"dim\": 2, \"mult\": [[[1, 0").unwrap();
    let out = tangal(&["algcheck", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1 column"), "{err}");
    // valid JSON that is not an algebra
    std::fs::write(&p, "{\"field\": {\"p\": 4, \"n\": 1}, \"dim\": 1, \"mult\": [[[1]]], \"unit\": [1]}").unwrap();
    assert_eq!(tangal(&["algcheck", s(&p)]).status.code(), Some(2));
    assert_eq!(tangal(&["algcheck", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn roundtrip_examples() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = FiniteGroup::symmetric(3);
    let h = s3.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
    let x = write(dir.path(), "x.json", GSet::cosets(&s3, &h).unwrap().to_json());
    let g = write(dir.path(), "g.json", s3.to_json());
    let r = report(&tangal(&["roundtrip", s(&x), "--group", s(&g)]));
    assert_eq!(r["roundtrip"], "iso");
    assert_eq!(r["size"], 3);
    assert_eq!(r["comonoid_endomorphisms"], r["equivariant_endomorphisms"]);
    let z2 = FiniteGroup::cyclic(2);
    let e = write(dir.path(), "e.json", GSet::empty(&z2).to_json());
    assert_eq!(tangal(&["roundtrip", s(&e)]).status.code(), Some(2));
    // wrong group
    assert_eq!(tangal(&["roundtrip", s(&x), "--group", "Z2"]).status.code(), Some(2));
    let f2 = Field::new(2, 1).unwrap();
    let f4 = Algebra::quotient_poly(&Poly::new(&f2, vec![1, 1, 1])).unwrap();
    let m = FrobeniusMonoid::from_separable_algebra(Representation::trivial(&z2, &f2, 2), &f4).unwrap();
    let mp = write(dir.path(), "m.json", m.to_json());
    let r = report(&tangal(&["roundtrip", s(&mp)]));
    assert_eq!(r["needs_extension"], 2);
}

#[test]
fn gamma_examples() {
    let r = report(&tangal(&["gamma", "Z2", "--field", "5"]));
    assert_eq!(r["matched"], true);
    assert_eq!(r["order"], 2);
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "s3.json", FiniteGroup::symmetric(3).to_json());
    let r = report(&tangal(&["gamma", s(&g)]));
    assert_eq!(r["matched"], true);
    assert_eq!(r["order"], 6);
    let g = write(dir.path(), "z12.json", FiniteGroup::cyclic(12).to_json());
    assert_eq!(tangal(&["gamma", s(&g)]).status.code(), Some(3));
}

#[test]
fn suite_filter_and_determinism() {
    let a = tangal(&["suite", "--filter", "pierce"]);
    let b = tangal(&["suite", "--filter", "pierce"]);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    let crit = r["criteria"].as_array().unwrap();
    assert!(!crit.is_empty());
    assert!(crit.iter().all(|c| c["module"] == "pierce" && c["passed"] == true));
    assert!(r["coverage"].as_array().unwrap().len() >= 40);
    let t = report(&tangal(&["suite", "--filter", "10", "--timings"]));
    assert!(t["criteria"][0]["millis"].is_u64());
}

#[test]
fn out_flag_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = tangal(&["gamma", "1", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["order"], 1);
    let o = tangal(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}
