use std::process::{Command, Output};

fn dynfactor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynfactor"))
        .args(args)
        .env_remove("DYNFACTOR_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = dynfactor(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn factor_command() {
    let v = json(&["factor", "--poly", "x^4+4"]);
    assert_eq!(v["degrees"], serde_json::json!([2, 2]));
    let v = json(&["factor", "--poly", "x^2-16/9"]);
    assert_eq!(v["unit"], "1/9");
    assert_eq!(v["factors"][0]["poly"], "3*x - 4");
    assert_eq!(v["factors"][1]["poly"], "3*x + 4");
    assert_eq!(dynfactor(&["factor", "--poly", "0"]).status.code(), Some(1));
    assert_eq!(dynfactor(&["factor", "--poly", "x^"]).status.code(), Some(2));
}

#[test]
fn stability_command() {
    let counts = |v: &serde_json::Value| -> Vec<u64> {
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["distinct_factor_count"].as_u64().unwrap())
            .collect()
    };
    let v = json(&["stability", "--d", "5", "--c", "-32", "--alpha", "0", "--nmax", "2"]);
    assert_eq!(counts(&v), [2, 2]);
    let v = json(&["stability", "--d", "2", "--c", "-16/9", "--alpha", "0", "--nmax", "4"]);
    assert_eq!(counts(&v)[2..], [4, 4]);
    let v = json(&["stability", "--d", "2", "--c", "1", "--alpha", "0", "--nmax", "3"]);
    assert_eq!(counts(&v), [1, 1, 1]);
    assert_eq!(v["predicted"], 1);

    let v = json(&["stability", "--d", "3", "--c", "1", "--nmax", "4", "--degree-cap", "30"]);
    assert_eq!(v["truncated"], true);
    assert_eq!(counts(&v).len(), 3);

    let v = json(&["stability", "--d", "25", "--c", "3", "--alpha", "1", "--nmax", "1", "--c1", "0.75", "--c2", "3"]);
    assert_eq!(v["hypotheses"]["cond_heights_positive"], true);
}

#[test]
fn orbit_density_command() {
    let v = json(&["orbit-density", "--p", "3", "--c", "1", "--b", "0", "--xmax", "10000"]);
    let other = &v["rows"][1];
    assert_eq!(other["class"], "not_one_mod_p");
    assert_eq!(other["fraction"]["exact"], "1");
    assert_eq!(v["predicted_density"]["exact"], "1/2");

    let out = dynfactor(&["orbit-density", "--p", "2", "--c", "-1", "--b", "0", "--xmax", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("periodic"));

    let csv = stdout(&dynfactor(&["orbit-density", "--p", "5", "--c", "2", "--xmax", "10000", "--format", "csv"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "class,q_count,member_count,fraction,decimal");
    assert_eq!(lines[1], "one_mod_p,306,3,1/102,0.009804");
    assert!(lines[2].starts_with("not_one_mod_p,923,923,1,"));
}

#[test]
fn density_output_independent_of_threads() {
    let args = ["orbit-density", "--p", "5", "--c", "2", "--xmax", "30000", "--format", "json"];
    let one = stdout(&dynfactor(&args));
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "4"]);
    assert_eq!(one, stdout(&dynfactor(&with_threads)));
}

#[test]
fn degree_density_command() {
    let v = json(&["degree-density", "--c1", "0", "--c2", "1", "--xmax", "100"]);
    assert_eq!(v["density"]["exact"], "1");
    let v = json(&["degree-density", "--min-prime", "5", "--xmax", "1000000"]);
    let dens: f64 = v["density"]["decimal"].as_str().unwrap().parse().unwrap();
    assert!((dens - 4.0 / 15.0).abs() < 0.005);
    assert_eq!(v["mertens_c_M"]["exact"], "4/15");
    let out = dynfactor(&["degree-density", "--c1", "0.75", "--c2", "5", "--xmax", "100000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dynfactor(&["degree-density", "--c1", "1.5", "--c2", "5", "--xmax", "10"]).status.code(), Some(2));
}

#[test]
fn binomial_and_hypotheses_commands() {
    let out = stdout(&dynfactor(&["binomial", "--d", "4", "--a", "-4"]));
    assert!(out.contains("reducible") && out.contains("\u{2212}4\u{211a}\u{2074} clause"), "{out}");
    assert_eq!(dynfactor(&["binomial", "--d", "4", "--a", "0"]).status.code(), Some(1));

    let v = json(&["hypotheses", "--d", "25", "--c", "3", "--alpha", "1", "--c1", "0.75", "--c2", "3"]);
    for k in ["cond_phi_ratio", "cond_prime_floor", "cond_not_fixed", "cond_heights_positive"] {
        assert_eq!(v[k], true, "{k}");
    }
    assert_eq!(v["predicted_factor_count"], 1);
    let v = json(&["hypotheses", "--d", "4", "--c", "3", "--alpha", "0", "--c1", "0.5", "--c2", "2"]);
    assert_eq!(v["cond_prime_floor"], false);
}

#[test]
fn usage_errors_and_flags() {
    assert_eq!(dynfactor(&["factor", "--poly", "x", "--bogus"]).status.code(), Some(2));
    assert_eq!(dynfactor(&["factor", "--poly", "x^2-1", "--threads", "3"]).status.code(), Some(2));
    assert_eq!(dynfactor(&["stability", "--d", "1", "--c", "1", "--nmax", "2"]).status.code(), Some(2));

    let a = dynfactor(&["factor", "--poly", "x^12-1", "--format", "csv", "--seed", "9"]);
    let b = Command::new(env!("CARGO_BIN_EXE_dynfactor"))
        .args(["factor", "--poly", "x^12-1", "--format", "csv"])
        .env("DYNFACTOR_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("dynfactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = dynfactor(&["binomial", "--d", "6", "--a", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["irreducible"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
