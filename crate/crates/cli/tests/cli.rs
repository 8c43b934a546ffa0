use std::io::Write;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cellgame"));
    cmd.args(args).env_remove("CELLGAME_MAX_STRATEGIES").env_remove("CELLGAME_MAX_ATOMS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, &[])
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn decide_verdicts_and_exit_codes() {
    let r = run(&["decide", "0||1 -> 5||6"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "VALID\n"));
    let r = run(&["decide", "0||1 & 0||2 -> 0||3"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "INVALID\ncountermodel: GN:3\nassignment: D={3}\n");
    let r = run(&["--format", "lines", "decide", "0||1 -> 0||2"]);
    assert_eq!(r.stdout, "INVALID\ncountermodel=G2\nassignment=D={2}\n");
    let r = run(&["decide", "0||"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error: "), "{}", r.stderr);
}

#[test]
fn atom_cap_exits_3() {
    let r = run(&["--max-atoms", "1", "decide", "0||1 -> 0||2"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.starts_with("error: "));
    let r = run_with(&["decide", "0||1 -> 0||2"], &[("CELLGAME_MAX_ATOMS", "1")]);
    assert_eq!(r.code, 3);
}

#[test]
fn unknown_flags_are_rejected() {
    let r = run(&["decide", "--bogus", "0||1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error: "));
}

#[test]
fn proof_checking() {
    let ok = temp_file("1. 0||1 -> 5||6 ; HOM 0 1 5\n");
    let r = run(&["check-proof", ok.path().to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "0||1 -> 5||6\n"));
    let chain = temp_file(
        "1. 0||0 -> 0||5 ; REFL 0 5\n\
         2. (0||0 -> 0||5) -> (!(0||5) -> !(0||0)) ; TAUT\n\
         3. !(0||5) -> !(0||0) ; MP 1 2\n",
    );
    let r = run(&["check-proof", chain.path().to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.trim()), (0, "!(0||5) -> !(0||0)"));
    let bad = temp_file("1. 0||1 -> 2||4 ; HOM 0 1 2\n");
    let r = run(&["check-proof", bad.path().to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("line 1") && r.stdout.contains("2||3"), "{}", r.stdout);
    let malformed = temp_file("one. 0||1 ; TAUT\n");
    assert_eq!(run(&["check-proof", malformed.path().to_str().unwrap()]).code, 2);
    assert_eq!(run(&["check-proof", "/nonexistent/proof.txt"]).code, 2);
}

#[test]
fn game_actions() {
    let r = run(&["game", "GN:3", "interchange", "--a", "0", "--b", "3"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "false\n"));
    let r = run(&["game", "GN:3", "interchange", "--a", "-2", "--b", "0"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "true\n"));
    let r = run(&["game", "G2", "windows", "--length", "1"]);
    assert_eq!(r.stdout.lines().count(), 3);
    let r = run(&["game", "G2", "ne"]);
    assert_eq!(r.stdout, "has_equilibrium: true\nrealizable: 3\n");
    let r = run(&["game", "G1", "constrain", "--at", "0=0", "--at", "1=2"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "NONE\n"));
    let r = run(&["game", "G1", "constrain", "--at", "0=0", "--at", "2=2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("profile v1;"));
    let r = run(&["game", "PROD(G1,", "ne"]);
    assert_eq!(r.code, 2);
    let r = run(&["game", "GN:4", "ne"]);
    assert_eq!(r.code, 3);
    let r = run(&["--max-strategies", "100", "game", "GN:3", "ne"]);
    assert_eq!(r.code, 3);
}

#[test]
fn table_games() {
    let g0 = temp_file("cellgame-table v1\nstrategies: a,b\ndefault: 0\n");
    let spec = format!("FILE:{}", g0.path().display());
    let r = run(&["game", &spec, "interchange", "--a", "0", "--b", "1"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "true\n"));
    let r = run(&["game", &spec, "interchange", "--a", "4", "--b", "4"]);
    assert_eq!(r.code, 1);
    let broken = temp_file("cellgame-table v1\nstrategies: a,b\ndefault: zero\n");
    let r = run(&["game", &format!("FILE:{}", broken.path().display()), "ne"]);
    assert_eq!(r.code, 2);
}

#[test]
fn synth_reports() {
    let r = run(&["synth", "0||1 & 0||2 -> 0||3"]);
    assert_eq!(r.code, 1);
    for line in ["countermodel: GN:3", "atom 0||1: T", "atom 0||2: T", "atom 0||3: F", "confirmed: true"] {
        assert!(r.stdout.lines().any(|l| l == line), "{line} missing from {}", r.stdout);
    }
    let r = run(&["synth", "0||1 -> 0||2"]);
    assert!(r.stdout.contains("countermodel: G2") && r.stdout.contains("confirmed: true"));
    let r = run(&["synth", "0||0 -> 0||9"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "VALID\n"));
    let r = run(&["synth", "0||1 & 0||2 -> 0||7"]);
    assert!(r.stdout.contains("GN:7 symbolic (engine cap)"), "{}", r.stdout);
}

#[test]
fn witnesses_follow_the_seed() {
    let one = run(&["--seed", "3", "witness", "GN:5", "--a", "0", "--b", "9"]);
    let two = run(&["--seed", "3", "witness", "GN:5", "--a", "0", "--b", "9"]);
    let other = run(&["--seed", "4", "witness", "GN:5", "--a", "0", "--b", "9"]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, two.stdout);
    assert_ne!(one.stdout, other.stdout);
    assert!(one.stdout.lines().any(|l| l.starts_with("e: profile v1;")));
    let r = run(&["witness", "GN:5", "--a", "0", "--b", "5"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("NONE"));
    let r = run(&["witness", "G1", "--a", "0", "--b", "4"]);
    assert_eq!(r.code, 0);
    let r = run(&["witness", "GINF", "--a", "0", "--b", "4"]);
    assert_eq!(r.code, 2);
}
