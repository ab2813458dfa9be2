//! End-to-end tests of the binary: exit-code contract (0 pass, 1 verdict
//! false, 2 input error), determinism of rendered output, and the gen →
//! check round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

struct Workdir(PathBuf);

impl Workdir {
    fn new(name: &str) -> Workdir {
        let dir = std::env::temp_dir().join(format!("catkit-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Workdir(dir)
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, content: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, content).unwrap();
        p
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn gen_then_check_category_passes() {
    let w = Workdir::new("gen-check");
    let cat = w.path("poset12.json");
    assert_eq!(code(&run(&["gen", "poset", "--divisors", "12", "-o", &cat])), 0);
    let out = run(&["check", "category", &cat]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: true"), "{}", stdout(&out));
}

#[test]
fn gen_then_check_smcc_passes() {
    let w = Workdir::new("gen-smcc");
    for (args, name) in [
        (["gen", "heyting", "--bool", "2"], "bool4.json"),
        (["gen", "group", "--n", "3"], "z3.json"),
    ] {
        let path = w.path(name);
        let gen = bin().args(args).args(["-o", &path]).output().unwrap();
        assert_eq!(code(&gen), 0);
        let out = run(&["check", "smcc", &path]);
        assert_eq!(code(&out), 0, "{name}: {}", stdout(&out));
    }
}

#[test]
fn corrupted_category_exits_one_with_witness() {
    let w = Workdir::new("corrupt");
    let cat = w.path("z2.json");
    // ℤ/2 as a one-object category, then redirect comp(1,1) to the
    // undefined element: S3 fires at (1,1).
    let z2 = r#"{"size":3,"existing":[0,1],"dom":[0,0,2],"cod":[0,0,2],"comp":[[0,1,2],[1,2,2],[2,2,2]]}"#;
    std::fs::write(&cat, z2).unwrap();
    let out = run(&["check", "category", &cat]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("S3"), "{}", stdout(&out));
    assert!(stdout(&out).contains("[1, 1]"), "{}", stdout(&out));
    let out = run(&["check", "category", &cat, "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], serde_json::json!(false));
}

#[test]
fn missing_file_and_unknown_flag_exit_two() {
    let out = run(&["check", "category", "/nonexistent/nope.json"]);
    assert_eq!(code(&out), 2);
    let out = run(&["check", "category", "--frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn max_size_env_var_guards_loading() {
    let w = Workdir::new("guard");
    let cat = w.path("poset12.json");
    assert_eq!(code(&run(&["gen", "poset", "--divisors", "12", "-o", &cat])), 0);
    let out = bin()
        .args(["check", "category", &cat])
        .env("CATKIT_MAX_SIZE", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Explicit flag wins over the environment.
    let out = bin()
        .args(["check", "category", &cat, "--max-size", "600"])
        .env("CATKIT_MAX_SIZE", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn analyze_ladder_output() {
    let w = Workdir::new("analyze");
    let triv = w.write(
        "trivial.json",
        r#"{"size":2,"existing":[0],"dom":[0,1],"cod":[0,1],"comp":[[0,1],[1,1]]}"#,
    );
    let out = run(&["analyze", &triv, "--ladder"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("is_topos: true"), "{}", stdout(&out));

    // In a thin category only identities are equalizers, so the divisor
    // poset fails the monos-are-equalizers table; FinSet passes it.
    let cat = w.path("poset12.json");
    run(&["gen", "poset", "--divisors", "12", "-o", &cat]);
    let out = run(&["analyze", &cat, "--ladder", "--monos-equalizers"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("is_topos: false"), "{text}");
    assert!(text.contains("not_equalizer"), "{text}");

    let finset = w.path("finset2.json");
    run(&["gen", "finset", "--max", "2", "-o", &finset]);
    let out = run(&["analyze", &finset, "--monos-equalizers"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("monos_are_equalizers: true"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn imll_compile_and_eval() {
    let w = Workdir::new("imll");
    let proof = w.write("dneg.proof", "(lr (ll 0 (ax a) (ax bot)))");
    let out = run(&["imll", "compile", &proof]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("a |- ((a -o bot) -o bot)"), "{text}");
    assert!(text.contains("term: (curry"), "{text}");

    let model = w.path("z3.json");
    run(&["gen", "group", "--n", "3", "-o", &model]);
    let env = w.write("env.json", r#"{"atoms": {"a": 1, "bot": 0}, "bottom": "bot"}"#);
    let out = run(&["imll", "eval", &proof, "--model", &model, "--env", &env]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    // In ℤ/n the double negation is the identity, so the value is [[a]].
    let out = run(&[
        "imll", "eval", &proof, "--model", &model, "--env", &env, "--expect", "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(&[
        "imll", "eval", &proof, "--model", &model, "--env", &env, "--expect", "2",
    ]);
    assert_eq!(code(&out), 1);

    let bad = w.write("bad.proof", "(lr (ax a)");
    let out = run(&["imll", "compile", &bad]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_is_deterministic() {
    let w = Workdir::new("render");
    let witness = w.write(
        "pb.json",
        r#"{"pullback": {"p0": 3, "p1": 4, "f": 5, "g": 6}}"#,
    );
    let first = run(&["render", "pullback", &witness]);
    assert_eq!(code(&first), 0);
    assert!(stdout(&first).contains("p0=3"));
    let second = run(&["render", "pullback", &witness]);
    assert_eq!(first.stdout, second.stdout);

    let product = w.write(
        "prod.json",
        r#"{"product": {"object": 2, "proj1": 7, "proj2": 8, "polarity": "product"}}"#,
    );
    let out = run(&["render", "product", &product]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("p1=7"));
    // Wrong kind for the witness on hand is an input error.
    let out = run(&["render", "product", &witness]);
    assert_eq!(code(&out), 2);
}
