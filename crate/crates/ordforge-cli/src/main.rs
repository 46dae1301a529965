//! Command-line interface over the ordforge notation systems: term
//! operations, canonical sequences, axiom-system inspection, proof
//! checking, and a seeded random-descent harness.
//!
//! The active notation system is selected by the `ORDFORGE_SYSTEM`
//! environment variable: `g0` (default) for the binary-Veblen system,
//! `kk` for the base-`k` system, `lambda` for the base-`l` system.
//! Domain failures (unparsable terms, sequence of a non-limit, unknown
//! system names, failed proofs) exit with status 1; malformed
//! invocations exit with status 2.

use std::cmp::Ordering;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ordforge::{
    build_reflection, canonical_family, check, delta, encode, encode_nat, ext_decode_nat,
    ext_encode_nat, ext_left_mul, family_sample, fund_seq, fv_encode_nat, fv_veblen, gamma,
    kappa_omega_pow, omega_pow, parse_coeff, parse_ext, parse_formula, parse_proof, parse_term,
    render, render_coeff, render_exp, render_ext, render_formula, render_proof, tilde_delta,
    veblen, CanonicalFamily, CoeffTerm, ExtExp, ExtSystem, ExtTerm, FamilyScheme, LambdaPiece,
    OrdTerm, TermClass, TheorySpec,
};

fn tower_str(system: ExtSystem, prefix: &[LambdaPiece]) -> String {
    if prefix.is_empty() {
        "0".to_string()
    } else {
        render_exp(system, &ExtExp::Tower(prefix.to_vec()))
    }
}

/// One-line symbolic description of a term's canonical family: the family is
/// carried as a base plus a stepping scheme, so it is printed that way rather
/// than by materializing members.
fn describe_family(system: ExtSystem, fam: &CanonicalFamily) -> String {
    match fam {
        CanonicalFamily::Empty => "empty".to_string(),
        CanonicalFamily::Finite(xs) => {
            let members: Vec<String> = xs.iter().map(render_ext).collect();
            format!("finite {{{}}}", members.join(", "))
        }
        CanonicalFamily::Indexed { base, scheme, bound } => {
            let step = match scheme {
                FamilyScheme::CoeffLimit { exp } => {
                    format!("coeff-limit(exp={})", render_exp(system, exp))
                }
                FamilyScheme::ExpLimit { lambda_tail: None } => "exp-limit".to_string(),
                FamilyScheme::ExpLimit { lambda_tail: Some((prefix, g)) } => {
                    format!("exp-limit(prefix={}, height={g})", tower_str(system, prefix))
                }
                FamilyScheme::ExpSuccessor { exp } => {
                    format!("exp-successor(exp={})", render_exp(system, exp))
                }
                FamilyScheme::LambdaTower { k, prefix } => {
                    format!("tower(k={k}, prefix={})", tower_str(system, prefix))
                }
            };
            let b = match bound {
                Some(c) => render_coeff(c),
                None => "none".to_string(),
            };
            format!("indexed base={{{}}} step={step} bound={{{b}}}", render_ext(base))
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ordforge",
    version,
    about = "Ordinal notation systems, axiom enumerations, and a proof kernel"
)]
struct Cli {
    /// Print numeric codes instead of rendered terms where applicable.
    #[arg(long, global = true)]
    codes: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a term in the active system and print its canonical rendering.
    Parse { term: String },
    /// Normalize a term (parse and re-render canonically).
    Norm { term: String },
    /// Compare two terms; prints LT, EQ, or GT.
    Cmp { a: String, b: String },
    /// Add two terms of the active system.
    Add { a: String, b: String },
    /// Multiply two terms (the left factor must be a single summand in the
    /// extended systems).
    Mul { a: String, b: String },
    /// Omega power: w^a under g0; the (k·w)^a form under kk, where a is a
    /// coefficient term.
    Wpow { a: String },
    /// Veblen function: exactly two term arguments under g0; one or more
    /// coefficient arguments otherwise.
    Phi { args: Vec<String> },
    /// The index-th member of a limit term's canonical sequence. Under g0
    /// the index is a numeral; in the extended systems it is a coefficient
    /// term.
    Fs { term: String, index: String },
    /// The n-th stage of the gamma tower (gamma 0 = 1).
    Gamma { n: u64 },
    /// The n-th stage of the delta tower of coefficient terms.
    Delta { n: u64 },
    /// The n-th stage of the k-indexed delta-tilde tower.
    Tdelta { n: u64, k: u32 },
    /// Describe a term's canonical sequence, or sample one member of it.
    Canon {
        term: String,
        /// Print the member at this index instead of the family
        /// description. Under g0 the index is a numeral; in the extended
        /// systems it is a coefficient term.
        #[arg(long, value_name = "G")]
        sample: Option<String>,
    },
    /// Numeric code of a term under the active system's bijection.
    Code { term: String },
    /// Term for a numeric code under the active system's bijection.
    Decode { n: u64 },
    /// Inspect an axiom system: print its canonical name, enumerate axioms,
    /// or test axiom membership by code.
    Theory {
        /// System name, e.g. z1i, tarski(z1i), tarski_g0^2(z1i),
        /// tarski_kk(z1i), tarski_lambda(z1i), tarski_g0^w(z1i).
        name: String,
        /// Print the first N enumerated axioms as "<code> <formula>" lines
        /// (code only under --codes).
        #[arg(long, value_name = "N")]
        axioms: Option<u64>,
        /// Test whether a decimal code is an axiom of the system.
        #[arg(long, value_name = "CODE")]
        is_axiom: Option<String>,
    },
    /// Print the symbol-numbering table of the formula codec.
    DumpNumbering,
    /// Check a proof file against an axiom system; exits 0 iff it verifies.
    ProveCheck {
        file: PathBuf,
        #[arg(long)]
        theory: String,
    },
    /// Emit a proof that provability of a formula in the named system
    /// implies the formula; the proof checks in tarski(SYSTEM).
    GenReflection {
        /// Formula in s-expression syntax, e.g. "(= (v 1) (v 1))".
        #[arg(long)]
        formula: String,
        /// System whose provability is reflected.
        #[arg(long, default_value = "z1i")]
        theory: String,
    },
    /// Run seeded strictly-decreasing random walks from a start term;
    /// prints one walk length per trial.
    Descent {
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Active notation system, selected by `ORDFORGE_SYSTEM`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum System {
    G0,
    Kappa,
    Lambda,
}

impl System {
    fn ext(self) -> Option<ExtSystem> {
        match self {
            System::G0 => None,
            System::Kappa => Some(ExtSystem::Kappa),
            System::Lambda => Some(ExtSystem::Lambda),
        }
    }
}

fn active_system() -> System {
    match std::env::var("ORDFORGE_SYSTEM") {
        Err(_) => System::G0,
        Ok(v) => match v.as_str() {
            "g0" => System::G0,
            "kk" => System::Kappa,
            "lambda" => System::Lambda,
            other => usage_error(&format!(
                "ORDFORGE_SYSTEM must be one of g0, kk, lambda (got {other:?})"
            )),
        },
    }
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

/// A term of whichever system is active.
enum AnyTerm {
    Ord(OrdTerm),
    Ext(ExtTerm),
}

fn parse_any(sys: System, src: &str) -> Result<AnyTerm, String> {
    match sys.ext() {
        None => parse_term(src).map(AnyTerm::Ord).map_err(|e| e.to_string()),
        Some(es) => parse_ext(es, src)
            .map(AnyTerm::Ext)
            .map_err(|e| e.to_string()),
    }
}

fn show_ord(t: &OrdTerm, codes: bool) -> String {
    if codes {
        encode_nat(t).to_string()
    } else {
        render(t)
    }
}

fn show_ext(t: &ExtTerm, codes: bool) -> String {
    if codes {
        ext_encode_nat(t).to_string()
    } else {
        render_ext(t)
    }
}

fn show_coeff(t: &CoeffTerm, codes: bool) -> String {
    if codes {
        fv_encode_nat(t).to_string()
    } else {
        render_coeff(t)
    }
}

fn show_any(t: &AnyTerm, codes: bool) -> String {
    match t {
        AnyTerm::Ord(t) => show_ord(t, codes),
        AnyTerm::Ext(t) => show_ext(t, codes),
    }
}

fn main() {
    // Die quietly when a downstream pipe closes (`ordforge ... | head`),
    // like the usual line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => std::process::exit(status),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let sys = active_system();
    let codes = cli.codes;
    match cli.cmd {
        Cmd::Parse { term } | Cmd::Norm { term } => {
            let t = parse_any(sys, &term)?;
            println!("{}", show_any(&t, codes));
        }
        Cmd::Cmp { a, b } => {
            let x = parse_any(sys, &a)?;
            let y = parse_any(sys, &b)?;
            let ord = match (&x, &y) {
                (AnyTerm::Ord(x), AnyTerm::Ord(y)) => x.cmp(y),
                (AnyTerm::Ext(x), AnyTerm::Ext(y)) => x.cmp(y),
                _ => unreachable!("one parser per run"),
            };
            println!(
                "{}",
                match ord {
                    Ordering::Less => "LT",
                    Ordering::Equal => "EQ",
                    Ordering::Greater => "GT",
                }
            );
        }
        Cmd::Add { a, b } => {
            let x = parse_any(sys, &a)?;
            let y = parse_any(sys, &b)?;
            let sum = match (&x, &y) {
                (AnyTerm::Ord(x), AnyTerm::Ord(y)) => AnyTerm::Ord(x.add(y)),
                (AnyTerm::Ext(x), AnyTerm::Ext(y)) => AnyTerm::Ext(x.add(y)),
                _ => unreachable!("one parser per run"),
            };
            println!("{}", show_any(&sum, codes));
        }
        Cmd::Mul { a, b } => {
            let x = parse_any(sys, &a)?;
            let y = parse_any(sys, &b)?;
            let product = match (&x, &y) {
                (AnyTerm::Ord(x), AnyTerm::Ord(y)) => AnyTerm::Ord(x.mul(y)),
                (AnyTerm::Ext(x), AnyTerm::Ext(y)) => {
                    if x.summands().len() != 1 {
                        return Err(
                            "extended multiplication needs a single-summand left factor".into()
                        );
                    }
                    AnyTerm::Ext(ext_left_mul(x, y))
                }
                _ => unreachable!("one parser per run"),
            };
            println!("{}", show_any(&product, codes));
        }
        Cmd::Wpow { a } => match sys {
            System::G0 => {
                let t = parse_term(&a).map_err(|e| e.to_string())?;
                println!("{}", show_ord(&omega_pow(&t), codes));
            }
            System::Kappa => {
                let c = parse_coeff(&a).map_err(|e| e.to_string())?;
                println!("{}", show_ext(&kappa_omega_pow(&c), codes));
            }
            System::Lambda => {
                return Err("wpow is not defined for the lambda system".into());
            }
        },
        Cmd::Phi { args } => {
            if args.is_empty() {
                usage_error("phi needs at least one argument");
            }
            match sys {
                System::G0 => {
                    if args.len() != 2 {
                        usage_error("phi takes exactly two arguments under g0");
                    }
                    let a = parse_term(&args[0]).map_err(|e| e.to_string())?;
                    let b = parse_term(&args[1]).map_err(|e| e.to_string())?;
                    println!("{}", show_ord(&veblen(&a, &b), codes));
                }
                _ => {
                    let parsed: Result<Vec<CoeffTerm>, String> = args
                        .iter()
                        .map(|s| parse_coeff(s).map_err(|e| e.to_string()))
                        .collect();
                    println!("{}", show_coeff(&fv_veblen(&parsed?), codes));
                }
            }
        }
        Cmd::Fs { term, index } => match sys.ext() {
            None => {
                let t = parse_term(&term).map_err(|e| e.to_string())?;
                let n: u64 = index
                    .parse()
                    .map_err(|_| format!("index must be a numeral under g0 (got {index:?})"))?;
                let s = fund_seq(&t, n).map_err(|e| e.to_string())?;
                println!("{}", show_ord(&s, codes));
            }
            Some(es) => {
                let t = parse_ext(es, &term).map_err(|e| e.to_string())?;
                let g = parse_coeff(&index).map_err(|e| e.to_string())?;
                let fam = canonical_family(&t);
                let s = family_sample(es, &fam, &g)
                    .ok_or("index is outside the term's canonical family")?;
                println!("{}", show_ext(&s, codes));
            }
        },
        Cmd::Gamma { n } => {
            println!("{}", show_ord(&gamma(n), codes));
        }
        Cmd::Delta { n } => {
            println!("{}", show_coeff(&delta(n), codes));
        }
        Cmd::Tdelta { n, k } => {
            println!("{}", show_coeff(&tilde_delta(n, k), codes));
        }
        Cmd::Canon { term, sample } => match sys.ext() {
            None => {
                let t = parse_term(&term).map_err(|e| e.to_string())?;
                match sample {
                    Some(g) => {
                        let n: u64 = g.parse().map_err(|_| {
                            format!("index must be a numeral under g0 (got {g:?})")
                        })?;
                        let m = match t.classify() {
                            TermClass::Zero => {
                                return Err("zero has an empty canonical sequence".into())
                            }
                            TermClass::Successor if n == 0 => {
                                t.pred().map_err(|e| e.to_string())?
                            }
                            TermClass::Successor => {
                                return Err("index is outside the term's canonical family".into())
                            }
                            TermClass::Limit => fund_seq(&t, n).map_err(|e| e.to_string())?,
                        };
                        println!("{}", show_ord(&m, codes));
                    }
                    None => match t.classify() {
                        TermClass::Zero => println!("empty"),
                        TermClass::Successor => {
                            let p = t.pred().map_err(|e| e.to_string())?;
                            println!("finite {{{}}}", show_ord(&p, codes));
                        }
                        TermClass::Limit => {
                            let members: Vec<String> = (0..3)
                                .map(|n| fund_seq(&t, n).map(|m| show_ord(&m, codes)))
                                .collect::<Result<_, _>>()
                                .map_err(|e| e.to_string())?;
                            println!("indexed {{{}, ...}}", members.join(", "));
                        }
                    },
                }
            }
            Some(es) => {
                let t = parse_ext(es, &term).map_err(|e| e.to_string())?;
                let fam = canonical_family(&t);
                match sample {
                    Some(g) => {
                        let gc = parse_coeff(&g).map_err(|e| e.to_string())?;
                        let m = family_sample(es, &fam, &gc)
                            .ok_or("index is outside the term's canonical family")?;
                        println!("{}", show_ext(&m, codes));
                    }
                    None => println!("{}", describe_family(es, &fam)),
                }
            }
        },
        Cmd::Code { term } => {
            let code = match parse_any(sys, &term)? {
                AnyTerm::Ord(t) => encode_nat(&t),
                AnyTerm::Ext(t) => ext_encode_nat(&t),
            };
            println!("{code}");
        }
        Cmd::Decode { n } => {
            let t = match sys.ext() {
                None => AnyTerm::Ord(ordforge::decode_nat(n)),
                Some(es) => AnyTerm::Ext(ext_decode_nat(es, n)),
            };
            println!("{}", show_any(&t, codes));
        }
        Cmd::Theory {
            name,
            axioms,
            is_axiom,
        } => {
            let t = TheorySpec::by_name(&name)
                .ok_or_else(|| format!("unknown axiom system: {name}"))?;
            let mut acted = false;
            if let Some(n) = axioms {
                acted = true;
                for i in 0..n {
                    let f = t.axiom(i);
                    let code = encode(&f);
                    if codes {
                        println!("{code}");
                    } else {
                        println!("{code} {}", render_formula(&f));
                    }
                }
            }
            if let Some(code_str) = is_axiom {
                acted = true;
                let code: BigUint = code_str
                    .parse()
                    .map_err(|_| format!("not a decimal code: {code_str:?}"))?;
                println!("{}", if t.is_axiom_code(&code) { "yes" } else { "no" });
            }
            if !acted {
                println!("{}", t.name());
            }
        }
        Cmd::DumpNumbering => {
            print!("{}", ordforge::numbering_table());
        }
        Cmd::ProveCheck { file, theory } => {
            let t = TheorySpec::by_name(&theory)
                .ok_or_else(|| format!("unknown axiom system: {theory}"))?;
            let src = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let p = parse_proof(&src).map_err(|e| e.to_string())?;
            let verdict = check(&p, &t);
            println!("{verdict}");
            return Ok(if verdict.ok { 0 } else { 1 });
        }
        Cmd::GenReflection { formula, theory } => {
            let t = TheorySpec::by_name(&theory)
                .ok_or_else(|| format!("unknown axiom system: {theory}"))?;
            let f = parse_formula(&formula).map_err(|e| e.to_string())?;
            let p = build_reflection(&t, &f)?;
            print!("{}", render_proof(&p));
        }
        Cmd::Descent {
            start,
            trials,
            seed,
        } => match sys.ext() {
            None => {
                let t0 = parse_term(&start).map_err(|e| e.to_string())?;
                for i in 0..trials {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                    println!("{}", walk_ord(&t0, &mut rng)?);
                }
            }
            Some(es) => {
                let t0 = parse_ext(es, &start).map_err(|e| e.to_string())?;
                for i in 0..trials {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                    println!("{}", walk_ext(es, &t0, &mut rng)?);
                }
            }
        },
    }
    Ok(0)
}

/// Hard cap on walk length; reaching it means the step rule failed to
/// make progress and is reported as an error rather than looping.
const MAX_WALK: u64 = 1_000_000;

/// One strictly-decreasing random walk from `t0` down to zero under the
/// g0 system. At each step the candidate moves are: a canonical-sequence
/// member at a small random index (limits), the predecessor (successors),
/// and a random structurally smaller term; one candidate is chosen
/// uniformly.
fn walk_ord(t0: &OrdTerm, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut t = t0.clone();
    let mut len = 0u64;
    while t.classify() != TermClass::Zero {
        if len >= MAX_WALK {
            return Err("descent walk exceeded the step cap".into());
        }
        let mut cands: Vec<OrdTerm> = Vec::new();
        match t.classify() {
            TermClass::Limit => {
                let r = rng.gen_range(0..8u64);
                cands.push(fund_seq(&t, r).map_err(|e| e.to_string())?);
            }
            TermClass::Successor => {
                cands.push(t.pred().map_err(|e| e.to_string())?);
            }
            TermClass::Zero => unreachable!("loop guard"),
        }
        let pool: Vec<OrdTerm> = ordforge::subterm_pool(&t)
            .into_iter()
            .filter(|s| s < &t)
            .collect();
        if !pool.is_empty() {
            cands.push(pool[rng.gen_range(0..pool.len())].clone());
        }
        let next = cands[rng.gen_range(0..cands.len())].clone();
        if next >= t {
            return Err("descent step failed to decrease".into());
        }
        t = next;
        len += 1;
    }
    Ok(len)
}

/// One strictly-decreasing random walk in an extended system. Candidate
/// moves mirror the g0 walk: a canonical-family member at a small random
/// index, and a random proper prefix sum of the summands (the empty
/// prefix is zero); one candidate is chosen uniformly.
fn walk_ext(es: ExtSystem, t0: &ExtTerm, rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut t = t0.clone();
    let mut len = 0u64;
    while !t.summands().is_empty() {
        if len >= MAX_WALK {
            return Err("descent walk exceeded the step cap".into());
        }
        let mut cands: Vec<ExtTerm> = Vec::new();
        match canonical_family(&t) {
            CanonicalFamily::Empty => {
                return Err("nonzero term with an empty canonical family".into());
            }
            CanonicalFamily::Finite(xs) => cands.push(xs[rng.gen_range(0..xs.len())].clone()),
            fam @ CanonicalFamily::Indexed { .. } => {
                let g = CoeffTerm::from_nat(rng.gen_range(0..8u64));
                let member = match family_sample(es, &fam, &g) {
                    Some(x) => x,
                    None => family_sample(es, &fam, &CoeffTerm::zero())
                        .ok_or("canonical family rejected index zero")?,
                };
                cands.push(member);
            }
        }
        let keep = rng.gen_range(0..t.summands().len());
        let parts: Vec<_> = t.summands()[..keep]
            .iter()
            .map(|s| (s.exp.clone(), s.coeff.clone()))
            .collect();
        cands.push(ordforge::ext_normalize(es, &parts));
        let next = cands[rng.gen_range(0..cands.len())].clone();
        if next >= t {
            return Err("descent step failed to decrease".into());
        }
        t = next;
        len += 1;
    }
    Ok(len)
}
