use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmwitness"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nmw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data_rows(out: &str) -> Vec<Vec<String>> {
    out.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn dephasing_output_is_deterministic() {
    let args = [
        "dephasing",
        "--lambda",
        "1",
        "--gamma0",
        "2",
        "--t-max",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.contains("# model: dephasing lambda=1 gamma0=2"));
    assert!(text.contains("# seed:"));
    assert!(text
        .lines()
        .any(|l| l == "t,rate_1,min_choi_eig,rs_lhs,sum_lhs,sum_rhs,verdict"));
}

#[test]
fn markovian_dephasing_has_no_detections() {
    let out = run(&[
        "dephasing",
        "--gamma0",
        "0.4",
        "--t-max",
        "3",
        "--dt",
        "0.05",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[6] == "MARKOVIAN_CONSISTENT"));
}

#[test]
fn pole_clipping_notice() {
    let out = run(&["dephasing", "--gamma0", "2", "--t-max", "5", "--dt", "0.1"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("pole"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# notice:"));
    let last: f64 = data_rows(&text).last().unwrap()[0].parse().unwrap();
    assert!(last < 2.42);
}

#[test]
fn zero_rate_custom_model() {
    let out = run(&[
        "spinbath",
        "--rate-deph",
        "0",
        "--t-max",
        "1",
        "--dt",
        "0.1",
    ]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    let r0 = &rows[0][5];
    for r in &rows {
        assert_eq!(&r[4], "0");
        assert_eq!(&r[5], r0);
    }
}

#[test]
fn unital_footer_and_columns() {
    let path = tmp("unital.csv");
    let out = run(&[
        "unital",
        "--t-max",
        "3",
        "--dt",
        "0.01",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .lines()
        .any(|l| l == "t,rate_1,rate_2,rate_3,R,dRdt,S_l"));
    let n: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# N = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(n > 0.0);

    let markov = run(&[
        "unital",
        "--rate-deph",
        "0.3",
        "--t-max",
        "2",
        "--dt",
        "0.01",
    ]);
    let text = String::from_utf8(markov.stdout).unwrap();
    assert!(text.contains("# N = 0\n"));

    let parallel = run(&[
        "unital", "--r", "1,0,0", "--t-dir", "2,0,0", "--t-max", "1", "--dt", "0.01",
    ]);
    let rows = data_rows(&String::from_utf8(parallel.stdout).unwrap());
    assert!(rows.iter().all(|r| r[4] == "0"));
}

#[test]
fn tabulated_rate_indirection() {
    let path = tmp("deph.csv");
    std::fs::write(&path, "t,rate\n0,0.5\n10,0.5\n").unwrap();
    let spec = format!("@{}", path.display());
    let out = run(&[
        "spinbath",
        "--rate-deph",
        &spec,
        "--t-max",
        "0.5",
        "--dt",
        "0.1",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert!(rows.iter().all(|r| r[1] == "0.5"));
}

#[test]
fn detect_file_reports_witness() {
    let path = tmp("c.csv");
    std::fs::write(
        &path,
        "# diag(1.4,-0.2,-0.2)\n1.4,0,0,0,0,0\n0,0,-0.2,0,0,0\n0,0,0,0,-0.2,0\n",
    )
    .unwrap();
    let out = run(&["detect-file", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = data_rows(&text).pop().unwrap();
    assert_eq!(row[0], "-0.2");
    assert_eq!(row[1], "2");
    assert_eq!(row[3], "0.056");
    assert_eq!(row[4], "-0.48");
    assert_eq!(row.last().unwrap(), "NON_MARKOVIAN_DETECTED");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dephasing", "--lambda=-1"]).status.code(), Some(2));
    assert_eq!(
        run(&["spinbath", "--rate-deph", "sin("]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["unital", "--rate-abs", "0.2"]).status.code(), Some(2));
    assert_eq!(run(&["dephasing", "--t-max", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let bad = tmp("bad.csv");
    std::fs::write(&bad, "0,0,1,0\n0,0,0,0\n").unwrap();
    assert_eq!(
        run(&["detect-file", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // Unbounded rate expression: the Choi trace check fails numerically.
    let out = run(&[
        "spinbath",
        "--rate-dis",
        "exp(exp(t*t))",
        "--t-min",
        "3",
        "--t-max",
        "3.1",
        "--epsilon",
        "0.1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
