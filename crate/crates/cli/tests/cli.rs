use std::process::{Command, Output};

fn condreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condreal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
}

fn parse_q(s: &str) -> (i64, i64) {
    match s.split_once('/') {
        Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

#[test]
fn eval_add_within_eps() {
    let o = condreal(&["eval", "(add 1/2 1/3)", "--eps", "1/100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "t="), "99");
    assert_eq!(field(&out, "bound="), "1/100");
    let (p, q) = parse_q(field(&out, "approx="));
    // |p/q − 5/6| < 1/100  ⇔  100·|6p − 5q| < 6q
    assert!(100 * (6 * p - 5 * q).abs() < 6 * q, "{p}/{q}");
}

#[test]
fn eval_rational_literal_is_exact() {
    let o = condreal(&["eval", "7/3", "--eps", "1"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "approx="), "7/3");
}

#[test]
fn eval_prints_found_parameters() {
    let o = condreal(&["eval", "(recip 1/10)", "--eps", "1/50"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(field(&out, "search (recip 1/10): s="), "20");
    let (p, q) = parse_q(field(&out, "approx="));
    assert!(50 * (p - 10 * q).abs() < q);
}

#[test]
fn recip_of_zero_exhausts_the_budget() {
    let o = condreal(&["eval", "(recip 0)", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no s < 1000"));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    assert_eq!(condreal(&["eval", "(add 1"]).status.code(), Some(2));
    assert_eq!(condreal(&["eval", "(frob 1)"]).status.code(), Some(2));
    assert_eq!(condreal(&["eval", "1", "--eps", "0"]).status.code(), Some(2));
    assert_eq!(condreal(&["bogus"]).status.code(), Some(2));
    assert_eq!(condreal(&["suite", "nope"]).status.code(), Some(2));
}

#[test]
fn gadgets_suite_passes() {
    let o = condreal(&["suite", "gadgets"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("overall=pass"));
}

#[test]
fn compose_suite_prints_decompositions() {
    let o = condreal(&["suite", "compose", "--t-max", "100", "--seed", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("s=") && l.contains("L(s)=") && l.contains("R(s)=")));
}

#[test]
fn suites_are_deterministic() {
    let a = stdout(&condreal(&["suite", "glue", "--seed", "9", "--t-max", "50"]));
    let b = stdout(&condreal(&["suite", "glue", "--seed", "9", "--t-max", "50"]));
    assert_eq!(a, b);
}

#[test]
fn listings() {
    let fns = stdout(&condreal(&["fns", "list"]));
    for f in ["add", "mul", "neg", "recip"] {
        assert!(fns.lines().any(|l| l.starts_with(f)), "{f}");
    }
    let gadgets = stdout(&condreal(&["gadgets", "list"]));
    assert!(gadgets.contains("delta_1") && gadgets.contains("gamma_b_c"));
    let spaces = stdout(&condreal(&["spaces", "list"]));
    assert!(spaces.contains("M_N") && spaces.contains("D_n"));
}

#[test]
fn gadget_eval() {
    assert_eq!(stdout(&condreal(&["gadgets", "eval", "gamma_1_1", "3", "2"])).trim(), "1");
    assert_eq!(stdout(&condreal(&["gadgets", "eval", "gamma_1_2", "5", "2", "3"])).trim(), "0");
    assert_eq!(stdout(&condreal(&["gadgets", "eval", "J", "1", "2"])).trim(), "7");
    assert_eq!(condreal(&["gadgets", "eval", "nope"]).status.code(), Some(2));
    assert_eq!(condreal(&["gadgets", "eval", "J", "1"]).status.code(), Some(2));
}
