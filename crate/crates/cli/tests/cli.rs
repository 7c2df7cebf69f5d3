use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ddyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddyn")).args(args).output().expect("binary runs")
}

fn run_to_file(args: &[&str], path: &Path) -> String {
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["-o", p]);
    let out = ddyn(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    fs::read_to_string(path).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn lorenz_orbit_file() {
    let dir = tempfile::tempdir().unwrap();
    let text = run_to_file(
        &["lorenz", "--sigma", "10", "--r", "28", "--b", "2.6667", "--x0", "0", "--y0", "1", "--z0", "0", "--dt", "0.01", "--steps", "10000"],
        &dir.path().join("orbit.csv"),
    );
    let r = rows(&text);
    assert_eq!(r[0], ["t", "x", "y", "z"]);
    assert_eq!(r.len() - 1, 10_001);
    assert_eq!(r[1], ["0", "0", "1", "0"]);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn henon_fixed_points_digits() {
    let out = ddyn(&["henon", "fixed-points", "--a", "1.4", "--b", "0.3", "--precision", "15"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let r = rows(&text);
    assert_eq!(r[0], ["x", "y", "lambda1", "lambda2", "p1", "p2", "stability"]);
    assert_eq!(r[1][0], "0.631354477089505");
    assert_eq!(r[1][1], "0.189406343126851");
    let num = |s: &str| s.parse::<f64>().unwrap();
    assert!((num(&r[1][2]) - 0.15594632).abs() < 5e-9);
    assert!((num(&r[1][3]) + 1.92373886).abs() < 5e-9);
    assert_eq!(r[1][6], "saddle");
}

#[test]
fn cantor_level_zero() {
    let dir = tempfile::tempdir().unwrap();
    let text = run_to_file(&["cantor", "--a", "5", "--depth", "0"], &dir.path().join("lvl.csv"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    assert_eq!(r[0], ["level", "lo", "hi"]);
    assert_eq!(&r[1][..2], ["0", "0"]);
    let num = |s: &str| s.parse::<f64>().unwrap();
    assert!((num(&r[1][2]) - 0.2763932).abs() < 5e-8);
    assert!((num(&r[2][1]) - 0.7236068).abs() < 5e-8);
    assert_eq!(r[2][2], "1");
}

#[test]
fn numbers_round_trip_at_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let text = run_to_file(&["henon", "--n", "200"], &dir.path().join("cloud.csv"));
    let mut x = 0.63135448f64;
    let mut y = 0.18940634f64;
    for (i, row) in rows(&text).iter().skip(1).enumerate() {
        assert_eq!(row[0], i.to_string());
        assert_eq!(row[1].parse::<f64>().unwrap().to_bits(), x.to_bits());
        assert_eq!(row[2].parse::<f64>().unwrap().to_bits(), y.to_bits());
        (x, y) = (y + 1.0 - 1.4 * x * x, 0.3 * x);
    }
}

#[test]
fn headers_of_each_subcommand() {
    let cases: [(&[&str], &str); 9] = [
        (&["poincare", "--steps", "2000"], "index,t,x,y,z"),
        (&["henon", "regimes", "--n", "3"], "a,label,a0,a1"),
        (&["logistic", "diagram", "--n", "3", "--keep", "4"], "a,x"),
        (&["logistic", "cascade", "--k-max", "2"], "k,period,a_onset"),
        (&["logistic", "orbits", "--a", "3.5", "--period", "4"], "cycle,period,x,multiplier,stability"),
        (&["cantor", "check", "--a", "5"], "a,holds,min_derivative"),
        (&["lorenz", "analyze"], "quantity,value"),
        (&["henon", "--n", "2"], "i,x,y"),
        (&["cantor", "--depth", "2"], "level,lo,hi"),
    ];
    for (args, header) in cases {
        let out = ddyn(args);
        assert!(out.status.success(), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(text.lines().next(), Some(header), "{args:?}");
    }
}

#[test]
fn diagram_is_long_format() {
    let out = ddyn(&["logistic", "diagram", "--a-min", "3.2", "--a-max", "3.5", "--n", "2", "--keep", "8", "--transient", "5000"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = rows(&text);
    assert_eq!(r.len(), 1 + 2 * 8);
    assert!(r[1..9].iter().all(|row| row[0] == "3.2"));
    assert!(r[9..].iter().all(|row| row[0] == "3.5"));
}

#[test]
fn precision_reduces_digits() {
    let out = ddyn(&["cantor", "--a", "5", "--depth", "0", "--precision", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.276393\n"));
    assert!(!ddyn(&["cantor", "--precision", "5"]).status.success());
    assert!(!ddyn(&["cantor", "--precision", "18"]).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(ddyn(&["--help"]).status.code(), Some(0));
    assert_eq!(ddyn(&["nonsense"]).status.code(), Some(2));
    assert_eq!(ddyn(&["lorenz", "--steps", "abc"]).status.code(), Some(2));
    // out-of-domain parameter values are usage errors
    let bad = ddyn(&["cantor", "--a", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error: usage:"));
    assert_eq!(ddyn(&["logistic", "orbits", "--a", "3.5", "--period", "13"]).status.code(), Some(2));
    // runtime failures carry a one-line machine-readable reason
    let esc = ddyn(&["henon", "--a", "3", "--n", "50"]);
    assert_eq!(esc.status.code(), Some(1));
    let err = String::from_utf8(esc.stderr).unwrap();
    assert!(err.starts_with("error: escape:") && err.trim_end().lines().count() == 1, "{err}");
    let sing = ddyn(&["lorenz", "analyze", "--sigma", "4", "--b", "3"]);
    assert_eq!(sing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&sing.stderr).starts_with("error: singular-parameter:"));
    let unwritable = ddyn(&["cantor", "-o", "/nonexistent-dir/x.csv"]);
    assert_eq!(unwritable.status.code(), Some(1));
}

#[test]
fn help_lists_every_flag() {
    let cases: [(&[&str], &[&str]); 11] = [
        (&["lorenz"], &["--sigma", "--r", "--b", "--x0", "--y0", "--z0", "--dt", "--steps", "--output", "--precision"]),
        (&["lorenz", "analyze"], &["--sigma", "--r", "--b", "--output", "--precision"]),
        (&["poincare"], &["--normal", "--offset", "--direction", "--dt", "--steps", "--output"]),
        (&["henon"], &["--a", "--b", "--x0", "--y0", "--transient", "--n", "--output"]),
        (&["henon", "fixed-points"], &["--a", "--b", "--output"]),
        (&["henon", "regimes"], &["--b", "--a-min", "--a-max", "--n", "--transient", "--probe"]),
        (&["logistic", "diagram"], &["--a-min", "--a-max", "--n", "--transient", "--keep", "--x0"]),
        (&["logistic", "cascade"], &["--a-min", "--a-max", "--k-max"]),
        (&["logistic", "orbits"], &["--a", "--period"]),
        (&["cantor"], &["--a", "--depth", "--output"]),
        (&["cantor", "check"], &["--a", "--output"]),
    ];
    for (cmd, flags) in cases {
        let mut args = cmd.to_vec();
        args.push("--help");
        let out = ddyn(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        for flag in flags {
            let line = text.lines().find(|l| l.trim_start().starts_with(&format!("{flag} ")) || l.contains(&format!(", {flag} ")));
            let line = line.unwrap_or_else(|| panic!("{cmd:?} help misses {flag}"));
            // every flag carries a description or at least a default
            assert!(line.split('>').nth(1).is_some_and(|rest| !rest.trim().is_empty()), "{cmd:?} {flag}: {line}");
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["logistic", "diagram", "--n", "64", "--keep", "50"];
    let first = run_to_file(&args, &a);
    let second = run_to_file(&args, &b);
    assert_eq!(first, second);
}
