use std::process::{Command, Output};

fn colsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colsym"))
        .args(args)
        .env_remove("COLSYM_ENUM_LIMIT")
        .output()
        .expect("run colsym")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce() {
    let o = colsym(&["reduce", "-m", "1", "-n", "2", "(x[1,1]+x[1,2])^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2*x[1,1]*x[1,2]\n");

    let o = colsym(&["reduce", "-m", "2", "-n", "2", "x[1,1]*x[2,1]"]);
    assert_eq!(stdout(&o), "0\n");

    let o = colsym(&["reduce", "-m", "2", "-n", "2", "x[1,1]**x[2,1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));

    let o = colsym(&["reduce", "-m", "1", "-n", "2", "x[2,1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn symmetrize() {
    let o = colsym(&["symmetrize", "-m", "1", "-n", "2", "x[1,1]"]);
    assert_eq!(stdout(&o), "1/2*x[1,1] + 1/2*x[1,2]\n");

    let o = colsym(&[
        "symmetrize",
        "-m",
        "1",
        "-n",
        "3",
        "x[1,1] + x[1,2] + x[1,3]",
    ]);
    assert_eq!(stdout(&o), "x[1,1] + x[1,2] + x[1,3]\n");

    let o = colsym(&["symmetrize", "-m", "1", "-n", "9", "x[1,1]"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enum_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_colsym"))
        .args(["symmetrize", "-m", "1", "-n", "3", "x[1,1]"])
        .env("COLSYM_ENUM_LIMIT", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn to_rowsums() {
    let o = colsym(&["to-rowsums", "-m", "1", "-n", "2", "x[1,1]*x[1,2]"]);
    assert_eq!(stdout(&o), "1/2*y1^2\n");

    let o = colsym(&["to-rowsums", "-m", "2", "-n", "2", "x[1,1]*x[2,2]"]);
    assert_eq!(o.status.code(), Some(4));

    let o = colsym(&[
        "to-rowsums",
        "-m",
        "2",
        "-n",
        "2",
        "--symmetrize",
        "x[1,1]*x[2,2]",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2*y1*y2\n");
}

#[test]
fn expand() {
    let o = colsym(&["expand", "-m", "1", "-n", "2", "1/2*y1^2"]);
    assert_eq!(stdout(&o), "x[1,1]*x[1,2]\n");

    let o = colsym(&["expand", "-m", "1", "-n", "2", "y1^3"]);
    assert_eq!(o.status.code(), Some(4));

    let o = colsym(&["expand", "-m", "1", "-n", "3", "y1"]);
    assert_eq!(stdout(&o), "x[1,1] + x[1,2] + x[1,3]\n");
}

#[test]
fn primitive() {
    let o = colsym(&[
        "primitive",
        "-m",
        "1",
        "-n",
        "2",
        "--form",
        "x1",
        "--at",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2*y1^2\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("ok"));

    let o = colsym(&["primitive", "-m", "1", "-n", "2", "--form", "1"]);
    assert_eq!(stdout(&o), "y1\n");

    let o = colsym(&[
        "primitive",
        "-m",
        "2",
        "-n",
        "2",
        "--form",
        "x2",
        "--form",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(5));

    let o = colsym(&["primitive", "-m", "2", "-n", "2", "--form", "x2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = colsym(&[
        "primitive",
        "-m",
        "2",
        "-n",
        "3",
        "--form",
        "x2",
        "--form",
        "x1",
        "--at",
        "-1/2,3",
    ]);
    assert_eq!(stdout(&o), "3*y1 - 1/2*y2 + y1*y2\n");
}

#[test]
fn structured_output_is_only_the_record() {
    let o = colsym(&[
        "expand",
        "-m",
        "1",
        "-n",
        "2",
        "--output",
        "structured",
        "y1^2",
    ]);
    assert_eq!(
        stdout(&o),
        "[{\"coeff\":\"2\",\"vars\":[[\"x\",1,1,1],[\"x\",1,2,1]]}]\n"
    );
    let terms: Vec<colsym::expr_io::StructuredTerm> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(terms.len(), 1);
}

#[test]
fn selftest_default_passes() {
    let o = colsym(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(colsym(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        colsym(&["reduce", "-m", "0", "x[1,1]"]).status.code(),
        Some(2)
    );
}
