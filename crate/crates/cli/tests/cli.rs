use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use suslin_core::clifford::{dictionary_element, spin_certify, CliffordElem};
use suslin_core::json::{MatrixJson, WitnessFile};
use suslin_core::matrix::RingMat;
use suslin_core::orbits::{random_elementary_witness, Decomposition, EpinFactor};
use suslin_core::ring::RingCtx;
use suslin_core::suslin::{psi, UnitVector};

const Q: RingCtx = RingCtx::Rational;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suslin-cli")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, v: &impl serde::Serialize) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn matrix_of(v: &Value) -> RingMat {
    serde_json::from_value::<MatrixJson>(v.clone()).unwrap().to_matrix().unwrap()
}

#[test]
fn suslin_examples() {
    let out = cli(&["suslin", "--n", "3", "--show", "psi", "--vec", "unit"]);
    assert!(out.status.success());
    assert_eq!(matrix_of(&json(&out)["value"]), psi(Q, 4));

    let out = cli(&["suslin", "--n", "2", "--show", "alpha", "--generic"]);
    let m = matrix_of(&json(&out)["value"]);
    let c = RingCtx::Poly(2);
    let expected = RingMat::from_rows(c, vec![vec![c.x(0), c.x(1)], vec![-c.y(1), c.y(0)]]).unwrap();
    assert_eq!(m, expected);

    let out = cli(&["suslin", "--n", "1", "--show", "J"]);
    assert_eq!(matrix_of(&json(&out)["value"]), RingMat::identity(Q, 1));
}

#[test]
fn suslin_explicit_vectors() {
    let out = cli(&["suslin", "--n", "2", "--show", "alphabar", "--a", "1,2", "--b", "3,1/2"]);
    assert!(out.status.success());
    let m = matrix_of(&json(&out)["value"]);
    assert_eq!(m, RingMat::from_rationals(Q, &[
        vec![suslin_core::ring::rational(3, 1), suslin_core::ring::rational(-2, 1)],
        vec![suslin_core::ring::rational(1, 2), suslin_core::ring::rational(1, 1)],
    ]));
    // psi needs a unit vector
    let out = cli(&["suslin", "--n", "2", "--show", "psi", "--a", "1,2", "--b", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_symbolic_range_passes() {
    let out = cli(&["verify", "--n", "2..3", "--mode", "symbolic"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn verify_sampled_n7_det() {
    let out = cli(&["verify", "--n", "7", "--mode", "sampled", "--seeds", "3", "--identity", "det"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"][0]["identity"], "det");
    assert_eq!(v["results"][0]["mode"], "sampled");
    assert_eq!(v["results"][0]["status"], "pass");
}

#[test]
fn verify_pfaffian_over_quadric() {
    let out = cli(&["verify", "--n", "3", "--identity", "pfaffian-one", "--ring", "quadric"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["status"], "pass");
}

#[test]
fn verify_is_deterministic_and_writes_out() {
    let dir = TempDir::new().unwrap();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    for p in [&p1, &p2] {
        let out = cli(&["verify", "--n", "3", "--mode", "sampled", "--seeds", "4", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["verify", "--n", "9", "--mode", "symbolic"][..],
        &["verify", "--n", "3", "--seeds", "0", "--mode", "sampled"],
        &["verify", "--n", "3", "--identity", "no-such-identity"],
        &["verify", "--n", "4..2"],
        &["verify", "--n", "x"],
        &["suslin", "--n", "0", "--show", "J"],
        &["suslin", "--n", "2", "--show", "nonsense"],
    ] {
        assert_eq!(cli(args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_suslin-cli"))
        .args(["verify", "--n", "2"])
        .env("SUSLIN_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spin_check_files() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", &MatrixJson::from(CliffordElem::identity(Q, 3).matrix()));
    let out = cli(&["spin-check", "--in", &id]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certified"], true);
    assert!(matrix_of(&v["so_matrix"]).is_identity());

    let h = random_elementary_witness(Q, 4, 6, 7).to_matrix();
    let g = dictionary_element(&h).unwrap();
    let path = write(&dir, "dict.json", &serde_json::json!({ "g": MatrixJson::from(g.matrix()) }));
    assert_eq!(cli(&["spin-check", "--in", &path]).status.code(), Some(0));

    let mut twist = RingMat::identity(Q, 4);
    twist.set(0, 0, Q.int(-1));
    let bad = dictionary_element(&h.try_matmul(&twist).unwrap()).unwrap();
    let path = write(&dir, "twist.json", &MatrixJson::from(bad.matrix()));
    let out = cli(&["spin-check", "--in", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["certified"], false);

    let path = dir.path().join("junk.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(cli(&["spin-check", "--in", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cli(&["spin-check", "--in", "/nonexistent/file.json"]).status.code(), Some(2));
}

fn factorization_file(lambda_bump: bool) -> WitnessFile {
    let target = UnitVector::standard(Q, 3);
    let mut lambda = RingMat::identity(Q, 3);
    lambda.set(0, 1, Q.int(2));
    let d = Decomposition {
        lambda: lambda.clone(),
        epin: vec![EpinFactor::dictionary(random_elementary_witness(Q, 4, 3, 1)).unwrap()],
        stabilizer: CliffordElem::identity(Q, 3),
    };
    let phi = spin_certify(&d.compose().unwrap()).unwrap();
    let mut claimed = d;
    if lambda_bump {
        lambda.set(1, 2, Q.int(1));
        claimed.lambda = lambda;
    }
    WitnessFile::factorization(&phi, &claimed, &target, true)
}

#[test]
fn orbit_witness_files() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", &factorization_file(false));
    let out = cli(&["orbit-witness", "verify", &good]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["accepted"], true);

    let bad = write(&dir, "bad.json", &factorization_file(true));
    let out = cli(&["orbit-witness", "verify", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "ProductMismatch");

    let p = psi(Q, 4);
    let cong = WitnessFile::congruence(
        suslin_core::orbits::Flavor::WE,
        &p,
        &p,
        1,
        &suslin_core::orbits::CongruenceMap::Elementary(random_elementary_witness(Q, 10, 0, 0)),
        true,
    );
    let path = write(&dir, "cong.json", &cong);
    assert_eq!(cli(&["orbit-witness", "verify", &path]).status.code(), Some(0));

    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{"flavor": "W_E", "expected": true}"#).unwrap();
    assert_eq!(cli(&["orbit-witness", "verify", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn text_format() {
    let out = cli(&["suslin", "--n", "3", "--show", "psi", "--vec", "unit", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("psi_3"));
}
