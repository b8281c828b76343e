use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sig(name: &str) -> String {
    format!("{}/signatures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigsyntax")).args(args).output().expect("spawn sigsyntax")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("sigsyntax-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

#[test]
fn check_prints_one_line_per_law() {
    let o = run(&["check", &sig("empty.sig"), "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let laws: Vec<String> = stdout(&o).lines().map(|l| l.split(' ').next().unwrap().to_string()).collect();
    assert_eq!(laws, sigsyntax::law_suite::LAW_IDS);
}

#[test]
fn check_reports_the_eta_inner_failure() {
    let o = run(&["check", &sig("lambda.sig"), "--samples", "200"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 9);
    for line in out.lines() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 3);
        let failures: usize = fields[2].parse().unwrap();
        assert_eq!(failures > 0, fields[0] == "linear.eta-inner", "{line}");
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed"));
}

#[test]
fn check_sexpr_format() {
    let o = run(&["check", &sig("lambda-xsubst-3.sig"), "--samples", "20", "--format", "sexpr"]);
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("(law ") && l.ends_with(')')), "{out}");
    assert!(out.contains("(law sigma.naturality (samples 1200) (failures 0))"), "{out}");
}

#[test]
fn duplicate_operation_exits_two() {
    let dir = Scratch::new("dup");
    let p = dir.file("dup.sig", "signature dup\napp : T * T\napp : T'\n");
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`app`"));
    assert_eq!(run(&["check", "/nonexistent/x.sig"]).status.code(), Some(2));
}

#[test]
fn enum_edge_cases() {
    let o = run(&["enum", &sig("empty.sig"), "-n", "2"]);
    assert_eq!(stdout(&o), "(var 0)\n(var 1)\ncount: 2\n");
    let o = run(&["enum", &sig("lambda.sig"), "-n", "0", "-d", "0"]);
    assert_eq!(stdout(&o), "count: 0\n");
    let o = run(&["enum", &sig("lambda.sig"), "-n", "0", "-d", "2"]);
    assert_eq!(stdout(&o), "(op abs (scope (bnd 0)))\ncount: 1\n");
}

#[test]
fn caps_exit_three() {
    assert_eq!(run(&["enum", &sig("lambda.sig"), "-n", "2", "-d", "6", "--cap", "10"]).status.code(), Some(3));
    assert_eq!(run(&["enum", &sig("lambda.sig"), "-d", "9"]).status.code(), Some(3));
    assert_eq!(run(&["enum", &sig("lambda.sig"), "-d", "9", "--depth-cap", "9", "--cap", "5"]).status.code(), Some(3));
}

#[test]
fn eval_representations() {
    let dir = Scratch::new("eval");
    let t = dir.file("t.term", "(op app (tuple (op abs (scope (bnd 0))) (var 1)))\n");
    let o = run(&["eval", &sig("lambda.sig"), &t, "--rep", "self"]);
    assert_eq!(stdout(&o), "(op app (tuple (op abs (scope (bnd 0))) (var 1)))\n");
    let o = run(&["eval", &sig("lambda.sig"), &t, "--rep", "lambda-ref"]);
    assert_eq!(stdout(&o), "((\\ x2) x1)\n");
    assert_eq!(run(&["eval", &sig("lambda.sig"), &t, "--rep", "church"]).status.code(), Some(4));
    let bad = dir.file("bad.term", "(op app (var 0))");
    assert_eq!(run(&["eval", &sig("lambda.sig"), &bad]).status.code(), Some(2));
    let unparsable = dir.file("junk.term", "(op app");
    assert_eq!(run(&["eval", &sig("lambda.sig"), &unparsable]).status.code(), Some(2));
}

#[test]
fn eval_flattens_joins() {
    let dir = Scratch::new("join");
    let t = dir.file("j.term", "(op join (outer (op app (tuple (nested (var 1)) (op abs (scope (nested (var 0))))))))");
    let flat = dir.file("f.term", "(op app (tuple (var 1) (op abs (scope (var 0)))))");
    let a = run(&["eval", &sig("lambda-join.sig"), &t, "--rep", "lambda-join-ref"]);
    let b = run(&["eval", &sig("lambda-join.sig"), &flat, "--rep", "lambda-join-ref"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(!stdout(&a).contains("join"));
}

#[test]
fn translate_and_merge() {
    let dir = Scratch::new("merge");
    let t = dir.file("t.term", "(op abs (scope (op app (tuple (bnd 0) (var 0)))))");
    let o = run(&["translate", &sig("lambda.sig"), &sig("lambda-join.sig"), &t]);
    assert_eq!(stdout(&o), "(op abs (scope (op app (tuple (bnd 0) (var 0)))))\n");
    assert_eq!(run(&["translate", &sig("lambda-join.sig"), &sig("lambda.sig"), &t]).status.code(), Some(2));

    let o = run(&["merge", &sig("lambda.sig"), &sig("lambda-join.sig"), &sig("lambda-xsubst-3.sig")]);
    assert_eq!(o.status.code(), Some(0));
    let merged = sigsyntax::arity_core::Signature::parse(&stdout(&o)).unwrap();
    assert_eq!(merged.len(), 7);
    for op in ["app", "abs", "join", "sigma0", "sigma3"] {
        assert!(merged.contains(op), "{op}");
    }
    let o = run(&["merge", &sig("lambda.sig"), &sig("lambda.sig"), &sig("lambda-join.sig")]);
    let again = sigsyntax::arity_core::Signature::parse(&stdout(&o)).unwrap();
    assert_eq!(again, sigsyntax::examples::join_signature());
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", &sig("lambda-xsubst-3.sig"), "-n", "2", "--samples", "20", "--seed", "3"]);
    let b = run(&["gen", &sig("lambda-xsubst-3.sig"), "-n", "2", "--samples", "20", "--seed", "3"]);
    let c = run(&["gen", &sig("lambda-xsubst-3.sig"), "-n", "2", "--samples", "20", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);
}
