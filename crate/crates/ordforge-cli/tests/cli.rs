//! End-to-end tests that drive the compiled binary.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn binary")
}

fn run_in(system: &str, args: &[&str]) -> Output {
    bin()
        .env("ORDFORGE_SYSTEM", system)
        .args(args)
        .output()
        .expect("spawn binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn cmp_reports_the_fixed_point_identity() {
    let out = run(&["cmp", "phi(0,phi(1,0))", "phi(1,0)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "EQ");
    let lt = run(&["cmp", "w", "phi(1,0)"]);
    assert_eq!(stdout(&lt).trim(), "LT");
    let gt = run(&["cmp", "phi(1,0)", "w"]);
    assert_eq!(stdout(&gt).trim(), "GT");
}

#[test]
fn gamma_zero_prints_one() {
    let out = run(&["gamma", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
    let g1 = run(&["gamma", "1"]);
    assert_eq!(stdout(&g1).trim(), "phi(1,0)");
}

#[test]
fn term_outputs_reparse_idempotently() {
    let cases: &[&[&str]] = &[
        &["parse", "phi(1,0)+w^2*3"],
        &["norm", "w+1+w"],
        &["add", "w", "1"],
        &["mul", "w+1", "w"],
        &["wpow", "w*2"],
        &["phi", "1", "w"],
        &["fs", "phi(1,0)", "3"],
        &["gamma", "3"],
        &["delta", "2"],
        &["tdelta", "2", "1"],
    ];
    for args in cases {
        let out = run(args);
        assert!(out.status.success(), "{args:?} failed");
        let text = stdout(&out);
        let text = text.trim();
        // Coefficient-valued outputs reparse through the coefficient
        // grammar, which the g0 parser does not accept; route by command.
        let reparsed = match args[0] {
            "delta" | "tdelta" => {
                ordforge::render_coeff(&ordforge::parse_coeff(text).expect("reparse"))
            }
            _ => ordforge::render(&ordforge::parse_term(text).expect("reparse")),
        };
        assert_eq!(reparsed, text, "{args:?} output not canonical");
    }
}

#[test]
fn extended_system_outputs_reparse() {
    for (sys, term) in [
        ("kk", "k^phi(1,0)*3+k*w+5"),
        ("lambda", "l^(l^2*2+l*3+w)*4+l+1"),
    ] {
        let out = run_in(sys, &["parse", term]);
        assert!(out.status.success());
        let text = stdout(&out);
        let text = text.trim();
        let again = run_in(sys, &["parse", text]);
        assert_eq!(stdout(&again).trim(), text, "{sys} output not canonical");
    }
    // `fv(...)` is an accepted spelling of the coefficient constructor.
    let a = stdout(&run_in("kk", &["parse", "k^fv(1,0)*fv(2)"]));
    let b = stdout(&run_in("kk", &["parse", "k^phi(1,0)*phi(2)"]));
    assert_eq!(a, b);
}

#[test]
fn decode_then_code_is_the_identity_on_small_codes() {
    for sys in ["g0", "kk", "lambda"] {
        for n in 0..40u64 {
            let term = stdout(&run_in(sys, &["decode", &n.to_string()]));
            let out = run_in(sys, &["code", term.trim()]);
            assert!(out.status.success(), "{sys} code {n}");
            assert_eq!(stdout(&out).trim(), n.to_string(), "{sys} code {n}");
        }
    }
}

#[test]
fn codes_flag_matches_the_code_subcommand() {
    let via_flag = stdout(&run(&["--codes", "parse", "w^w+1"]));
    let via_code = stdout(&run(&["code", "w^w+1"]));
    assert_eq!(via_flag.trim(), via_code.trim());
}

#[test]
fn sequence_of_a_successor_is_a_domain_error() {
    let out = run(&["fs", "w+1", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a limit"), "unexpected stderr: {err}");
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown_flag = run(&["gamma", "1", "--nope"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
    let bad_env = run_in("zzz", &["gamma", "1"]);
    assert_eq!(bad_env.status.code(), Some(2));
    let phi_arity = run(&["phi", "1"]);
    assert_eq!(phi_arity.status.code(), Some(2));
}

#[test]
fn extended_multiplication_needs_a_principal_left_factor() {
    let out = run_in("kk", &["mul", "k+1", "k"]);
    assert_eq!(out.status.code(), Some(1));
    let ok = run_in("kk", &["mul", "k^2", "k+1"]);
    assert!(ok.status.success());
}

#[test]
fn canonical_sequence_members_sit_below_their_parent() {
    let parent = ordforge::parse_term("w^w").unwrap();
    let desc = stdout(&run(&["canon", "w^w"]));
    assert!(desc.starts_with("indexed {"), "got {desc:?}");
    let mut prev: Option<ordforge::OrdTerm> = None;
    for g in 0..4 {
        let out = run(&["canon", "w^w", "--sample", &g.to_string()]);
        assert!(out.status.success());
        let m = ordforge::parse_term(stdout(&out).trim()).unwrap();
        assert!(m < parent);
        if let Some(p) = prev {
            assert!(p < m, "members must increase");
        }
        prev = Some(m);
    }
    assert_eq!(stdout(&run(&["canon", "w+1"])).trim(), "finite {phi(0,1)}");
    assert_eq!(stdout(&run(&["canon", "0"])).trim(), "empty");

    let kp = ordforge::parse_ext(ordforge::ExtSystem::Kappa, "k*w").unwrap();
    let desc = stdout(&run_in("kk", &["canon", "k*w"]));
    assert!(desc.starts_with("indexed base={0} step=coeff-limit"), "got {desc:?}");
    for g in ["0", "1", "5"] {
        let out = run_in("kk", &["canon", "k*w", "--sample", g]);
        assert!(out.status.success());
        let m = ordforge::parse_ext(ordforge::ExtSystem::Kappa, stdout(&out).trim()).unwrap();
        assert!(m < kp);
    }
    // The bound is enforced: w is not below the final coefficient w.
    let over = run_in("kk", &["canon", "k*w", "--sample", "w"]);
    assert_eq!(over.status.code(), Some(1));
}

#[test]
fn descent_is_seeded_deterministic_and_terminating() {
    let a = stdout(&run(&["descent", "--start", "phi(1,0)", "--trials", "20", "--seed", "7"]));
    let b = stdout(&run(&["descent", "--start", "phi(1,0)", "--trials", "20", "--seed", "7"]));
    assert_eq!(a, b);
    let lengths: Vec<u64> = a.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(lengths.len(), 20);
    assert!(lengths.iter().all(|&n| n >= 1));

    let lam = stdout(&run_in(
        "lambda",
        &["descent", "--start", "l^(l^2)", "--trials", "5", "--seed", "1"],
    ));
    assert_eq!(lam.lines().count(), 5);
    assert!(lam.lines().all(|l| l.parse::<u64>().unwrap() >= 1));
}

#[test]
fn theory_axioms_reparse_and_membership_answers() {
    let out = run(&["theory", "z1i", "--axioms", "5"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 5);
    let mut first_code = String::new();
    for (k, line) in lines.iter().enumerate() {
        let (code, text) = line.split_once(' ').expect("code then formula");
        let f = ordforge::parse_formula(text).expect("axiom reparses");
        assert_eq!(ordforge::render_formula(&f), text);
        assert_eq!(ordforge::encode(&f).to_string(), code);
        if k == 0 {
            first_code = code.to_string();
        }
    }
    let code_lines = stdout(&run(&["theory", "z1i", "--axioms", "5", "--codes"]));
    let bare: Vec<&str> = code_lines.lines().collect();
    assert_eq!(bare[0], first_code);
    let code = first_code;
    let yes = run(&["theory", "z1i", "--is-axiom", &code]);
    assert_eq!(stdout(&yes).trim(), "yes");
    let no = run(&["theory", "z1i", "--is-axiom", "0"]);
    assert_eq!(stdout(&no).trim(), "no");

    let name = run(&["theory", "tarski_g0^2(z1i)"]);
    assert_eq!(stdout(&name).trim(), "tarski_g0^2(z1i)");
    let unknown = run(&["theory", "nope(z1i)"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn generated_reflection_proofs_check_and_tampering_is_caught() {
    // --theory defaults to z1i, the base system.
    let out = run(&["gen-reflection", "--formula", "(= (v 1) (v 1))"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let explicit = run(&[
        "gen-reflection",
        "--formula",
        "(= (v 1) (v 1))",
        "--theory",
        "z1i",
    ]);
    assert_eq!(stdout(&explicit), text);

    let dir = std::env::temp_dir();
    let path = dir.join(format!("ordforge-refl-{}.proof", std::process::id()));
    std::fs::write(&path, &text).unwrap();
    let check = run(&["prove-check", path.to_str().unwrap(), "--theory", "tarski(z1i)"]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
    assert_eq!(stdout(&check).trim(), "ok");

    let tampered = text.replacen("(= (v 1) (v 1))", "(= (v 1) (v 2))", 1);
    let tpath = dir.join(format!("ordforge-tamper-{}.proof", std::process::id()));
    std::fs::write(&tpath, tampered).unwrap();
    let bad = run(&["prove-check", tpath.to_str().unwrap(), "--theory", "tarski(z1i)"]);
    assert_eq!(bad.status.code(), Some(1));

    std::fs::remove_file(&path).ok();
    std::fs::remove_file(&tpath).ok();
}

#[test]
fn dump_numbering_mentions_every_symbol_family() {
    let out = run(&["dump-numbering"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.trim().is_empty());
}
