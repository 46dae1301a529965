//! Explicit proof trees over the enumerated systems, a checker that
//! validates every node against the system's decision procedures, and
//! mechanical constructors: combinators for the Hilbert calculus, an
//! assumption-discharge transform, a truth-introduction map lifting a
//! proof into the next truth layer, and a reflection builder deriving
//! "whatever the proof predicate accepts is true" instances.

use std::fmt;

use num_bigint::BigUint;

use crate::formula::{
    bicond_t_formula, encode, free_num_vars, free_set_vars, max_num_var,
    parse_formula_sexpr_inner, pair2, render_formula, unpair2, well_formed, FnSym, Formula,
    NumTerm, RelSym, SexprLexer,
};
use crate::logic::{self, build};
use crate::parse::ParseError;
use crate::theory::{
    ax_truth_axiom, cov_induction_axiom, ded_transfer_axiom, fg_axiom, prf_inversion_axiom,
    stability_axiom, TheorySpec,
};

/// Licensing rule of a proof node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    /// Instance of a pinned logical axiom schema.
    LogicalAxiom { schema: u32 },
    /// Non-logical axiom; the index is the axiom's own code under the
    /// filtered-identity axiom enumeration.
    NonLogicalAxiom { index: BigUint },
    /// Detachment or generalization step through an inference-triple code:
    /// premises are the children, in triple order.
    Infer { ded: BigUint },
    /// Gated step of an ordered layer: the single child proves the gate
    /// and the conclusion is the indexed family member at `instance`.
    Gated { family: u32, instance: BigUint },
    /// Open assumption; never accepted by the checker. Assumptions exist
    /// only transiently inside builders and are removed by `discharge`.
    Assume,
}

/// One node of an explicit proof tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofNode {
    pub conclusion: Formula,
    pub rule: Rule,
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    /// Total number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofNode::size).sum::<usize>()
    }
}

/// Outcome of checking a proof: either everything is licensed, or the
/// path (child indices from the root) and reason of the first offender.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub ok: bool,
    pub failure: Option<(Vec<usize>, String)>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict {
            ok: true,
            failure: None,
        }
    }

    fn fail(path: Vec<usize>, reason: impl Into<String>) -> Verdict {
        Verdict {
            ok: false,
            failure: Some((path, reason.into())),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok"),
            Some((path, reason)) => {
                let p: Vec<String> = path.iter().map(usize::to_string).collect();
                write!(
                    f,
                    "failed at [{}]: {}",
                    if p.is_empty() {
                        "root".to_string()
                    } else {
                        p.join(".")
                    },
                    reason
                )
            }
        }
    }
}

/// Check every node of `p` against theory `t`.
pub fn check(p: &ProofNode, t: &TheorySpec) -> Verdict {
    let mut path = Vec::new();
    match check_node(p, t, &mut path) {
        Ok(()) => Verdict::pass(),
        Err((path, reason)) => Verdict::fail(path, reason),
    }
}

fn check_node(
    p: &ProofNode,
    t: &TheorySpec,
    path: &mut Vec<usize>,
) -> Result<(), (Vec<usize>, String)> {
    let here = |reason: String| (path.clone(), reason);
    if !well_formed(&p.conclusion) {
        return Err(here("malformed conclusion".into()));
    }
    if !t.language_ok(&p.conclusion) {
        return Err(here("conclusion outside the system's language".into()));
    }
    match &p.rule {
        Rule::LogicalAxiom { schema } => {
            if !p.children.is_empty() {
                return Err(here("logical axiom with premises".into()));
            }
            if !logic::schema_matches(*schema, &p.conclusion) {
                return Err(here(format!(
                    "not an instance of schema {} ({})",
                    schema,
                    logic::schema_name(*schema)
                )));
            }
        }
        Rule::NonLogicalAxiom { index } => {
            if !p.children.is_empty() {
                return Err(here("axiom with premises".into()));
            }
            if !t.is_axiom(&p.conclusion) {
                return Err(here("not an axiom of the system".into()));
            }
            if *index != encode(&p.conclusion) {
                return Err(here("axiom index does not code the conclusion".into()));
            }
        }
        Rule::Infer { ded } => {
            if !t.is_rule_triple(ded) {
                return Err(here("not an inference triple of the system".into()));
            }
            let (x, yz) = unpair2(ded);
            let (y, z) = unpair2(&yz);
            if encode(&p.conclusion) != z {
                return Err(here("conclusion differs from the triple's target".into()));
            }
            if x == y {
                if p.children.len() != 1 {
                    return Err(here(format!(
                        "single-premise triple with {} premises",
                        p.children.len()
                    )));
                }
                if encode(&p.children[0].conclusion) != x {
                    return Err(here("premise does not match the triple".into()));
                }
            } else {
                if p.children.len() != 2 {
                    return Err(here(format!(
                        "detachment with {} premises",
                        p.children.len()
                    )));
                }
                if encode(&p.children[0].conclusion) != x {
                    return Err(here("first premise does not match the triple".into()));
                }
                if encode(&p.children[1].conclusion) != y {
                    return Err(here("second premise does not match the triple".into()));
                }
            }
        }
        Rule::Gated { family, instance } => {
            if p.children.len() != 1 {
                return Err(here(format!(
                    "gated step with {} premises",
                    p.children.len()
                )));
            }
            let gate = &p.children[0].conclusion;
            let Formula::Rel(RelSym::Acc { level }, args) = gate else {
                return Err(here("gate premise is not an acceptability assertion".into()));
            };
            let [NumTerm::Const(a)] = args.as_slice() else {
                return Err(here("gate premise is not at a constant".into()));
            };
            let Some(layer) = t.layer_at(*level) else {
                return Err(here("no layer at the gate's level".into()));
            };
            if layer.gated_family_count() == 0 {
                return Err(here("the gate's layer has no gated families".into()));
            }
            if layer.gated_conclusion(a, *family, instance).as_ref() != Some(&p.conclusion) {
                return Err(here("gate mismatch: conclusion not licensed at this gate".into()));
            }
        }
        Rule::Assume => {
            return Err(here("undischarged assumption".into()));
        }
    }
    for (i, c) in p.children.iter().enumerate() {
        path.push(i);
        check_node(c, t, path)?;
        path.pop();
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Node constructors.
// ---------------------------------------------------------------------------

/// An open assumption of `f`.
pub fn assume(f: Formula) -> ProofNode {
    ProofNode {
        conclusion: f,
        rule: Rule::Assume,
        children: Vec::new(),
    }
}

/// A logical-axiom leaf concluding `conclusion` under schema `schema`.
pub fn logical(schema: u32, conclusion: Formula) -> ProofNode {
    ProofNode {
        conclusion,
        rule: Rule::LogicalAxiom { schema },
        children: Vec::new(),
    }
}

/// A non-logical-axiom leaf; the index is the conclusion's own code.
pub fn axiom(f: Formula) -> ProofNode {
    let index = encode(&f);
    ProofNode {
        conclusion: f,
        rule: Rule::NonLogicalAxiom { index },
        children: Vec::new(),
    }
}

/// Detachment: from proofs of `A → C` and `A`, a proof of `C`.
///
/// Panics when the first proof does not conclude an implication whose
/// antecedent is the second proof's conclusion.
pub fn mp(implication: ProofNode, antecedent: ProofNode) -> ProofNode {
    let Formula::Implies(a, c) = &implication.conclusion else {
        panic!("detachment on a non-implication");
    };
    assert_eq!(
        a.as_ref(),
        &antecedent.conclusion,
        "detachment premise mismatch"
    );
    let conclusion = c.as_ref().clone();
    let x = encode(&antecedent.conclusion);
    let y = encode(&implication.conclusion);
    let z = encode(&conclusion);
    ProofNode {
        conclusion,
        rule: Rule::Infer {
            ded: pair2(&x, &pair2(&y, &z)),
        },
        children: vec![antecedent, implication],
    }
}

/// Number-sort generalization: from a proof of `A`, a proof of `∀v A`.
pub fn gen(v: u32, sub: ProofNode) -> ProofNode {
    let conclusion = Formula::forall(v, sub.conclusion.clone());
    let x = encode(&sub.conclusion);
    let z = encode(&conclusion);
    ProofNode {
        conclusion,
        rule: Rule::Infer {
            ded: pair2(&x, &pair2(&x, &z)),
        },
        children: vec![sub],
    }
}

/// Set-sort generalization: from a proof of `A`, a proof of `∀X A`.
pub fn gen_set(v: u32, sub: ProofNode) -> ProofNode {
    let conclusion = Formula::ForallSet(v, Box::new(sub.conclusion.clone()));
    let x = encode(&sub.conclusion);
    let z = encode(&conclusion);
    ProofNode {
        conclusion,
        rule: Rule::Infer {
            ded: pair2(&x, &pair2(&x, &z)),
        },
        children: vec![sub],
    }
}

/// Gated step: from a proof of the gate `Acc(ā)` of `layer`, the family
/// member at `instance`. `None` when the layer does not license it.
pub fn gated(
    gate_proof: ProofNode,
    family: u32,
    instance: BigUint,
    layer: &TheorySpec,
) -> Option<ProofNode> {
    let Formula::Rel(RelSym::Acc { .. }, args) = &gate_proof.conclusion else {
        return None;
    };
    let [NumTerm::Const(a)] = args.as_slice() else {
        return None;
    };
    let conclusion = layer.gated_conclusion(a, family, &instance)?;
    Some(ProofNode {
        conclusion,
        rule: Rule::Gated { family, instance },
        children: vec![gate_proof],
    })
}

// ---------------------------------------------------------------------------
// Derived combinators.
// ---------------------------------------------------------------------------

/// A proof of `A → A`.
pub fn identity(a: &Formula) -> ProofNode {
    let aa = Formula::implies(a.clone(), a.clone());
    let s_inst = logical(1, build::s(a, &aa, a));
    let k1 = logical(0, build::k(a, &aa));
    let k2 = logical(0, build::k(a, a));
    mp(mp(s_inst, k1), k2)
}

/// From a proof of `a = b`, a proof of `b = a`.
pub fn sym(eq_proof: ProofNode) -> ProofNode {
    let Formula::Eq(a, b) = &eq_proof.conclusion else {
        panic!("symmetry on a non-equality");
    };
    let refl = Formula::Eq(a.clone(), a.clone());
    let flipped = Formula::Eq(b.clone(), a.clone());
    let subst = logical(23, build::eq_subst(a, b, &refl, &flipped));
    mp(mp(subst, eq_proof), logical(22, refl))
}

/// From proofs of `a = b` and of an atom `φ`, a proof of the atom `to`
/// obtained from `φ` by replacing occurrences of `a` with `b`.
pub fn rewrite(eq_proof: ProofNode, from_proof: ProofNode, to: Formula) -> ProofNode {
    let Formula::Eq(a, b) = &eq_proof.conclusion else {
        panic!("rewrite with a non-equality");
    };
    let subst = logical(23, build::eq_subst(a, b, &from_proof.conclusion, &to));
    mp(mp(subst, eq_proof), from_proof)
}

/// From proofs of `A` and `B`, a proof of `A ∧ B`.
pub fn and_intro(pa: ProofNode, pb: ProofNode) -> ProofNode {
    let a = pa.conclusion.clone();
    let b = pb.conclusion.clone();
    let inst = logical(
        2,
        Formula::implies(
            a.clone(),
            Formula::implies(b.clone(), Formula::and(a, b)),
        ),
    );
    mp(mp(inst, pa), pb)
}

/// From a proof of `A ∧ B`, a proof of `A`.
pub fn and_elim_l(p: ProofNode) -> ProofNode {
    let Formula::And(a, _) = &p.conclusion else {
        panic!("left projection on a non-conjunction");
    };
    let inst = logical(3, Formula::implies(p.conclusion.clone(), a.as_ref().clone()));
    mp(inst, p)
}

/// From a proof of `A ∧ B`, a proof of `B`.
pub fn and_elim_r(p: ProofNode) -> ProofNode {
    let Formula::And(_, b) = &p.conclusion else {
        panic!("right projection on a non-conjunction");
    };
    let inst = logical(4, Formula::implies(p.conclusion.clone(), b.as_ref().clone()));
    mp(inst, p)
}

/// From a proof of `∀v A`, a proof of `A[v := t]`.
pub fn all_elim(p: ProofNode, t: &NumTerm) -> ProofNode {
    let Formula::ForallNum(v, a) = &p.conclusion else {
        panic!("instantiation on a non-universal");
    };
    let inst = logical(14, build::all_elim(*v, a, t));
    mp(inst, p)
}

/// From a proof of `A ↔ B`, a proof of `A → B`.
pub fn iff_forward(p: ProofNode) -> ProofNode {
    let Formula::Iff(a, b) = &p.conclusion else {
        panic!("direction split on a non-biconditional");
    };
    let imp = Formula::implies(a.as_ref().clone(), b.as_ref().clone());
    let inst = logical(12, Formula::implies(p.conclusion.clone(), imp));
    mp(inst, p)
}

/// From a proof of `A ↔ B`, a proof of `B → A`.
pub fn iff_backward(p: ProofNode) -> ProofNode {
    let Formula::Iff(a, b) = &p.conclusion else {
        panic!("direction split on a non-biconditional");
    };
    let imp = Formula::implies(b.as_ref().clone(), a.as_ref().clone());
    let inst = logical(13, Formula::implies(p.conclusion.clone(), imp));
    mp(inst, p)
}

/// The `idx`-th conjunct of a right-nested conjunction of `total` parts.
pub fn conj_at(p: ProofNode, idx: usize, total: usize) -> ProofNode {
    assert!(idx < total);
    let mut cur = p;
    for _ in 0..idx {
        cur = and_elim_r(cur);
    }
    if idx + 1 < total {
        cur = and_elim_l(cur);
    }
    cur
}

/// Whether the tree contains an open assumption of `a`.
pub fn uses_assumption(p: &ProofNode, a: &Formula) -> bool {
    (p.rule == Rule::Assume && p.conclusion == *a)
        || p.children.iter().any(|c| uses_assumption(c, a))
}

/// Deduction transform: rewrite a proof of `C` that may use the open
/// assumption `a` into a proof of `a → C` that does not. Generalization
/// steps inside the dependent part must not bind a variable free in `a`.
pub fn discharge(a: &Formula, p: ProofNode) -> Result<ProofNode, String> {
    if !uses_assumption(&p, a) {
        let k = logical(0, build::k(&p.conclusion, a));
        return Ok(mp(k, p));
    }
    if p.rule == Rule::Assume && p.conclusion == *a {
        return Ok(identity(a));
    }
    match &p.rule {
        Rule::Infer { .. } if p.children.len() == 2 => {
            let mut it = p.children.into_iter();
            let ant = it.next().unwrap();
            let imp = it.next().unwrap();
            let x = ant.conclusion.clone();
            let c = p.conclusion;
            let da = discharge(a, ant)?;
            let di = discharge(a, imp)?;
            let s_inst = logical(1, build::s(a, &x, &c));
            Ok(mp(mp(s_inst, di), da))
        }
        Rule::Infer { .. } if p.children.len() == 1 => match &p.conclusion {
            Formula::ForallNum(v, _) => {
                let v = *v;
                if free_num_vars(a).contains(&v) {
                    return Err(format!(
                        "cannot discharge across generalization over v{v}: the variable is free in the assumption"
                    ));
                }
                let sub = p.children.into_iter().next().unwrap();
                let b = sub.conclusion.clone();
                let d = discharge(a, sub)?;
                let shift = logical(15, build::all_shift(v, a, &b));
                Ok(mp(shift, gen(v, d)))
            }
            Formula::ForallSet(v, _) => {
                let v = *v;
                if free_set_vars(a).contains(&v) {
                    return Err(format!(
                        "cannot discharge across generalization over X{v}: the variable is free in the assumption"
                    ));
                }
                let sub = p.children.into_iter().next().unwrap();
                let b = sub.conclusion.clone();
                let d = discharge(a, sub)?;
                let shift = logical(
                    19,
                    Formula::implies(
                        Formula::ForallSet(
                            v,
                            Box::new(Formula::implies(a.clone(), b.clone())),
                        ),
                        Formula::implies(
                            a.clone(),
                            Formula::ForallSet(v, Box::new(b.clone())),
                        ),
                    ),
                );
                Ok(mp(shift, gen_set(v, d)))
            }
            _ => Err("cannot discharge through a gated inference".into()),
        },
        Rule::Gated { .. } => Err("cannot discharge through a gated step".into()),
        _ => Err("cannot discharge this node".into()),
    }
}

// ---------------------------------------------------------------------------
// Truth introduction.
// ---------------------------------------------------------------------------

fn truth(level: u32, x: NumTerm) -> Formula {
    Formula::Rel(RelSym::Truth { level }, vec![x])
}

fn cnum(n: &BigUint) -> NumTerm {
    NumTerm::Const(n.clone())
}

fn p1(t: NumTerm) -> NumTerm {
    NumTerm::App(FnSym::Proj1, vec![t])
}

fn p2(t: NumTerm) -> NumTerm {
    NumTerm::App(FnSym::Proj2, vec![t])
}

/// Proof that every conclusion in the tree is a sentence.
fn all_closed(p: &ProofNode) -> bool {
    free_num_vars(&p.conclusion).is_empty()
        && free_set_vars(&p.conclusion).is_empty()
        && p.children.iter().all(all_closed)
}

/// Image of a leaf with axiom-or-logical code `n`: a proof of `T(n̄)`.
fn leaf_image(level: u32, n: &BigUint) -> ProofNode {
    let axt = axiom(ax_truth_axiom(level));
    let at_n = all_elim(axt, &cnum(n));
    let ax_term = NumTerm::App(FnSym::AxOf { level }, vec![cnum(n)]);
    let fact = axiom(Formula::Eq(ax_term, cnum(n)));
    rewrite(fact, at_n, truth(level, cnum(n)))
}

/// Image of a detachment/gated step with triple code `m = ⟨x,⟨y,z⟩⟩`,
/// given truth proofs for codes `x` and `y`: a proof of `T(z̄)`.
fn transfer_image(
    level: u32,
    m: &BigUint,
    img_x: ProofNode,
    img_y: ProofNode,
) -> ProofNode {
    let (x, w) = unpair2(m);
    let (y, z) = unpair2(&w);
    let ded_m = NumTerm::App(FnSym::DedOf { level }, vec![cnum(m)]);
    let fact = |lhs: NumTerm, v: &BigUint| axiom(Formula::Eq(lhs, cnum(v)));
    let f_ded = fact(ded_m.clone(), m);
    let f_p1 = fact(p1(cnum(m)), &x);
    let f_p2 = fact(p2(cnum(m)), &w);
    let f_w1 = fact(p1(cnum(&w)), &y);
    let f_w2 = fact(p2(cnum(&w)), &z);

    // First conjunct: T(x̄) → T(π₁ m̄) → T(π₁ ded(m̄)).
    let c1 = rewrite(sym(f_p1), img_x, truth(level, p1(cnum(m))));
    let c1 = rewrite(sym(f_ded.clone()), c1, truth(level, p1(ded_m.clone())));
    // Second conjunct: T(ȳ) → T(π₁ w̄) → T(π₁ π₂ m̄) → T(π₁ π₂ ded(m̄)).
    let c2 = rewrite(sym(f_w1), img_y, truth(level, p1(cnum(&w))));
    let c2 = rewrite(sym(f_p2.clone()), c2, truth(level, p1(p2(cnum(m)))));
    let c2 = rewrite(sym(f_ded.clone()), c2, truth(level, p1(p2(ded_m.clone()))));

    let dtr = axiom(ded_transfer_axiom(level));
    let inst = all_elim(dtr, &cnum(m));
    let out = mp(inst, and_intro(c1, c2));
    // Forward: T(π₂ π₂ ded(m̄)) → T(π₂ π₂ m̄) → T(π₂ w̄) → T(z̄).
    let out = rewrite(f_ded, out, truth(level, p2(p2(cnum(m)))));
    let out = rewrite(f_p2, out, truth(level, p2(cnum(&w))));
    rewrite(f_w2, out, truth(level, cnum(&z)))
}

/// Image of a vacuous number generalization `B ⟹ ∀v B` (with `B`
/// closed), given a truth proof for `B`'s code: a proof of `T(z̄)` for
/// `z` the code of `∀v B`.
fn gen_image(level: u32, n: &BigUint, v: u32, z: &BigUint, img: ProofNode) -> ProofNode {
    let i = BigUint::from(v);
    let sf = |k: NumTerm| NumTerm::App(FnSym::SubstF { level }, vec![cnum(n), cnum(&i), k]);
    let stab = axiom(stability_axiom(level, n, &i));
    let stab_2 = all_elim(stab, &NumTerm::Var(2));
    let open_t = rewrite(sym(stab_2), img, truth(level, sf(NumTerm::Var(2))));
    let all2 = gen(2, open_t);
    let fg = axiom(fg_axiom(level));
    let inst = all_elim(all_elim(fg, &cnum(n)), &cnum(&i));
    let t_cg = mp(iff_forward(inst), all2);
    let cg_term = NumTerm::App(FnSym::CloseG { level }, vec![cnum(n), cnum(&i)]);
    let f_cg = axiom(Formula::Eq(cg_term, cnum(z)));
    rewrite(f_cg, t_cg, truth(level, cnum(z)))
}

/// Map a checked proof in `s` whose every conclusion is a sentence to a
/// proof of `T(⌜conclusion⌝)` in the next truth layer `tarski(s)`.
pub fn build_truth_intro(sp: &ProofNode, s: &TheorySpec) -> Result<ProofNode, String> {
    let verdict = check(sp, s);
    if !verdict.ok {
        return Err(format!("source proof does not check: {verdict}"));
    }
    if !all_closed(sp) {
        return Err("source proof has a non-sentence conclusion".into());
    }
    let level = s.level() + 1;
    Ok(truth_image(level, sp))
}

fn truth_image(level: u32, p: &ProofNode) -> ProofNode {
    match &p.rule {
        Rule::LogicalAxiom { .. } | Rule::NonLogicalAxiom { .. } => {
            leaf_image(level, &encode(&p.conclusion))
        }
        Rule::Infer { ded } => {
            let (x, yz) = unpair2(ded);
            let (y, _) = unpair2(&yz);
            if x == y {
                if matches!(&p.conclusion, Formula::ForallNum(..)) {
                    // Vacuous number generalization through the
                    // substitution/closure axiom pair.
                    let Formula::ForallNum(v, _) = &p.conclusion else {
                        unreachable!()
                    };
                    let img = truth_image(level, &p.children[0]);
                    gen_image(level, &x, *v, &encode(&p.conclusion), img)
                } else {
                    // Gate-shaped triple: both premise slots carry the
                    // gate's code.
                    let img = truth_image(level, &p.children[0]);
                    transfer_image(level, ded, img.clone(), img)
                }
            } else {
                let img_x = truth_image(level, &p.children[0]);
                let img_y = truth_image(level, &p.children[1]);
                transfer_image(level, ded, img_x, img_y)
            }
        }
        Rule::Gated { .. } => {
            let g = encode(&p.children[0].conclusion);
            let c = encode(&p.conclusion);
            let m = pair2(&g, &pair2(&g, &c));
            let img = truth_image(level, &p.children[0]);
            transfer_image(level, &m, img.clone(), img)
        }
        Rule::Assume => unreachable!("checked proofs have no assumptions"),
    }
}

// ---------------------------------------------------------------------------
// Reflection.
// ---------------------------------------------------------------------------

/// Build a checked `tarski(s)`-proof of the reflection instance for `a`:
/// "for every n, if the proof predicate accepts some derivation of
/// a's n-instance code, then a holds at n". `a` must be in `s`'s
/// language with no free set variables and at most one free number
/// variable (the hole).
pub fn build_reflection(s: &TheorySpec, a: &Formula) -> Result<ProofNode, String> {
    if s.language_level().is_none() {
        return Err("reflection requires a bounded system".into());
    }
    if !s.language_ok(a) {
        return Err("formula outside the system's language".into());
    }
    if !free_set_vars(a).is_empty() {
        return Err("formula has a free set variable".into());
    }
    let frees = free_num_vars(a);
    if frees.len() > 1 {
        return Err("formula has more than one free number variable".into());
    }
    let level = s.level() + 1;
    let hole = frees.first().copied().unwrap_or(0);
    let n_a = encode(a);
    let i_big = BigUint::from(hole);
    let d = (max_num_var(a).map_or(0, |m| m + 1)).max(hole + 1).max(2);

    let psi_all = prf_soundness(level)?;

    // ∀1(prf(v_d, v1) = 1 → T(v1)), then instantiated at the quoted
    // n-instance of a.
    let one = NumTerm::nat(1);
    let prf = |dt: NumTerm, xt: NumTerm| NumTerm::App(FnSym::Prf { level }, vec![dt, xt]);
    let sf_term = NumTerm::App(
        FnSym::SubstF { level },
        vec![cnum(&n_a), cnum(&i_big), NumTerm::Var(hole)],
    );
    let psi_d = all_elim(psi_all, &NumTerm::Var(d));
    let inst = all_elim(psi_d, &sf_term);
    let prov_atom = Formula::Eq(prf(NumTerm::Var(d), sf_term.clone()), one);
    let t_quoted = mp(inst, assume(prov_atom.clone()));

    // Align the quoted term with the biconditional's quotation chain.
    let bicond = bicond_t_formula(level, a).expect("no free set variables");
    let t_chain = if frees.is_empty() {
        let stab = axiom(stability_axiom(level, &n_a, &i_big));
        let st_i = all_elim(stab, &NumTerm::Var(hole));
        rewrite(st_i, t_quoted, truth(level, cnum(&n_a)))
    } else {
        t_quoted
    };
    let holds = mp(iff_backward(axiom(bicond)), t_chain);

    let dis = discharge(&prov_atom, holds)?;
    let shift = logical(17, build::ex_shift(d, &prov_atom, a));
    let body = mp(shift, gen(d, dis));
    Ok(gen(hole, body))
}

/// A proof of `∀d ∀x (prf(d, x) = 1 → T(x))` in the layer at `level`,
/// by course-of-values induction on `d` through the proof-predicate
/// inversion axiom.
fn prf_soundness(level: u32) -> Result<ProofNode, String> {
    let one = NumTerm::nat(1);
    let prf = |dt: NumTerm, xt: NumTerm| NumTerm::App(FnSym::Prf { level }, vec![dt, xt]);
    let v = NumTerm::Var;
    // Ψ(d) with d = v0, x = v1.
    let psi_body = Formula::forall(
        1,
        Formula::implies(
            Formula::Eq(prf(v(0), v(1)), one.clone()),
            truth(level, v(1)),
        ),
    );
    let cov = axiom(cov_induction_axiom(&psi_body, 0));
    let Formula::Implies(prem_shape, _) = &cov.conclusion else {
        unreachable!("course-of-values instances are implications");
    };
    let Formula::ForallNum(_, below_then) = prem_shape.as_ref() else {
        unreachable!()
    };
    let Formula::Implies(below, _) = below_then.as_ref() else {
        unreachable!()
    };
    let below = below.as_ref().clone();

    let p_atom = Formula::Eq(prf(v(0), v(1)), one.clone());
    let p = assume(p_atom.clone());

    let inv = axiom(prf_inversion_axiom(level));
    let inv2 = all_elim(all_elim(inv, &v(0)), &v(1));
    let lor = mp(inv2, p);
    let Formula::Or(leaf_f, node_f) = &lor.conclusion else {
        unreachable!("inversion yields a disjunction");
    };
    let (leaf_f, node_f) = (leaf_f.as_ref().clone(), node_f.as_ref().clone());

    // Leaf branch: ∃2(v0 = ⟨0,v2⟩ ∧ v1 = ax(v2)) → T(v1).
    let Formula::ExistsNum(_, leaf_body) = &leaf_f else {
        unreachable!()
    };
    let leaf_body = leaf_body.as_ref().clone();
    let lf = assume(leaf_body.clone());
    let eq_ax = and_elim_r(lf);
    let axt = axiom(ax_truth_axiom(level));
    let t_ax = all_elim(axt, &v(2));
    let t_leaf = rewrite(sym(eq_ax), t_ax, truth(level, v(1)));
    let d_leaf = discharge(&leaf_body, t_leaf)?;
    let il = mp(
        logical(17, build::ex_shift(2, &leaf_body, &truth(level, v(1)))),
        gen(2, d_leaf),
    );

    // Node branch: ∃2∃3∃4(six-part conjunction) → T(v1).
    let Formula::ExistsNum(_, r) = &node_f else {
        unreachable!()
    };
    let Formula::ExistsNum(_, r) = r.as_ref() else {
        unreachable!()
    };
    let Formula::ExistsNum(_, node_body) = r.as_ref() else {
        unreachable!()
    };
    let node_body = node_body.as_ref().clone();
    let nd = assume(node_body.clone());
    let c_lt1 = conj_at(nd.clone(), 1, 6);
    let c_lt2 = conj_at(nd.clone(), 2, 6);
    let c_prf1 = conj_at(nd.clone(), 3, 6);
    let c_prf2 = conj_at(nd.clone(), 4, 6);
    let c_eq = conj_at(nd, 5, 6);
    let ded_2 = NumTerm::App(FnSym::DedOf { level }, vec![v(2)]);

    let sub_proof = |wit: NumTerm, lt: ProofNode, at: NumTerm, pr: ProofNode| {
        let h_at = all_elim(assume(below.clone()), &wit);
        let psi_w = mp(h_at, lt);
        let inst = all_elim(psi_w, &at);
        mp(inst, pr)
    };
    let t1 = sub_proof(v(3), c_lt1, p1(ded_2.clone()), c_prf1);
    let t2 = sub_proof(v(4), c_lt2, p1(p2(ded_2.clone())), c_prf2);
    let dtr = axiom(ded_transfer_axiom(level));
    let tz = mp(all_elim(dtr, &v(2)), and_intro(t1, t2));
    let t_node = rewrite(sym(c_eq), tz, truth(level, v(1)));
    let d_node = discharge(&node_body, t_node)?;
    let ex4 = Formula::exists(4, node_body.clone());
    let i4 = mp(
        logical(17, build::ex_shift(4, &node_body, &truth(level, v(1)))),
        gen(4, d_node),
    );
    let ex34 = Formula::exists(3, ex4.clone());
    let i3 = mp(
        logical(17, build::ex_shift(3, &ex4, &truth(level, v(1)))),
        gen(3, i4),
    );
    let in_ = mp(
        logical(17, build::ex_shift(2, &ex34, &truth(level, v(1)))),
        gen(2, i3),
    );

    // Join the branches and close the induction.
    let oe = logical(
        7,
        Formula::implies(
            Formula::implies(leaf_f.clone(), truth(level, v(1))),
            Formula::implies(
                Formula::implies(node_f.clone(), truth(level, v(1))),
                Formula::implies(
                    Formula::or(leaf_f.clone(), node_f.clone()),
                    truth(level, v(1)),
                ),
            ),
        ),
    );
    let t_x = mp(mp(mp(oe, il), in_), lor);
    let dis_p = discharge(&p_atom, t_x)?;
    let g1 = gen(1, dis_p);
    let dis_h = discharge(&below, g1)?;
    let prem = gen(0, dis_h);
    Ok(mp(cov, prem))
}

// ---------------------------------------------------------------------------
// Proof files.
// ---------------------------------------------------------------------------

/// Render a proof tree as structured text.
pub fn render_proof(p: &ProofNode) -> String {
    let mut out = String::new();
    render_node(p, 0, &mut out);
    out.push('\n');
    out
}

fn render_node(p: &ProofNode, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    out.push_str(&pad);
    match &p.rule {
        Rule::LogicalAxiom { schema } => out.push_str(&format!("(logax {schema}")),
        Rule::NonLogicalAxiom { index } => out.push_str(&format!("(ax {index}")),
        Rule::Infer { ded } => out.push_str(&format!("(infer {ded}")),
        Rule::Gated { family, instance } => {
            out.push_str(&format!("(gated {family} {instance}"))
        }
        Rule::Assume => out.push_str("(assume"),
    }
    out.push_str(&format!(" (concl {})", render_formula(&p.conclusion)));
    for c in &p.children {
        out.push('\n');
        render_node(c, indent + 1, out);
    }
    out.push(')');
}

/// Parse the structured text form of a proof tree.
pub fn parse_proof(src: &str) -> Result<ProofNode, ParseError> {
    let mut lx = SexprLexer { src, pos: 0 };
    let node = parse_node(&mut lx)?;
    lx.skip_ws();
    if lx.pos == src.len() {
        Ok(node)
    } else {
        Err(lx.error("trailing input"))
    }
}

fn parse_biguint(lx: &mut SexprLexer) -> Result<BigUint, ParseError> {
    let a = lx.atom()?;
    a.parse()
        .map_err(|_| lx.error(format!("expected a number, got '{a}'")))
}

fn parse_node(lx: &mut SexprLexer) -> Result<ProofNode, ParseError> {
    lx.expect('(')?;
    let head = lx.atom()?;
    let rule = match head {
        "logax" => {
            let schema = parse_biguint(lx)?;
            let schema = u32::try_from(&schema)
                .map_err(|_| lx.error("schema id out of range"))?;
            Rule::LogicalAxiom { schema }
        }
        "ax" => Rule::NonLogicalAxiom {
            index: parse_biguint(lx)?,
        },
        "infer" => Rule::Infer {
            ded: parse_biguint(lx)?,
        },
        "gated" => {
            let family = parse_biguint(lx)?;
            let family = u32::try_from(&family)
                .map_err(|_| lx.error("family id out of range"))?;
            let instance = parse_biguint(lx)?;
            Rule::Gated { family, instance }
        }
        "assume" => Rule::Assume,
        other => return Err(lx.error(format!("unknown rule tag '{other}'"))),
    };
    lx.expect('(')?;
    let tag = lx.atom()?;
    if tag != "concl" {
        return Err(lx.error("expected (concl ...)"));
    }
    let conclusion = parse_formula_sexpr_inner(lx)?;
    lx.expect(')')?;
    let mut children = Vec::new();
    while lx.peek() == Some('(') {
        children.push(parse_node(lx)?);
    }
    lx.expect(')')?;
    Ok(ProofNode {
        conclusion,
        rule,
        children,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, OrderKind};
    use num_traits::Zero;

    fn eq00() -> Formula {
        parse_formula("(= (const 0) (const 0))").unwrap()
    }

    #[test]
    fn detachment_checks_and_tampering_fails() {
        let z = TheorySpec::z1i();
        let a = z.axiom(0);
        let k = logical(0, build::k(&a, &a));
        let pr = mp(k, axiom(a.clone()));
        assert_eq!(pr.conclusion, Formula::implies(a.clone(), a.clone()));
        assert!(check(&pr, &z).ok);

        let mut bad = pr.clone();
        bad.conclusion = a;
        let v = check(&bad, &z);
        assert!(!v.ok);
        assert_eq!(v.failure.unwrap().0, Vec::<usize>::new());
    }

    #[test]
    fn identity_and_discharge() {
        let z = TheorySpec::z1i();
        let id = identity(&eq00());
        assert!(check(&id, &z).ok);

        // Discharge an actually-used assumption: from A and A → (0=0),
        // conclude 0=0; discharging A yields (A → 0=0) again.
        let a = z.axiom(3);
        let imp = assume(Formula::implies(a.clone(), eq00()));
        let through = mp(imp, axiom(a.clone()));
        let d = discharge(&Formula::implies(a.clone(), eq00()), through).unwrap();
        assert_eq!(
            d.conclusion,
            Formula::implies(Formula::implies(a, eq00()), eq00())
        );
        assert!(check(&d, &z).ok);
    }

    #[test]
    fn gate_mismatch_is_reported() {
        let s = TheorySpec::tarski_ordered(TheorySpec::z1i(), OrderKind::Gamma0);
        let gate = s.gate_formula(&BigUint::zero()).unwrap();
        // The least notation is vacuously accessible: its gated families
        // are licensed by a progress instance. Here just check the shape
        // machinery: a Gated node whose conclusion was swapped out fails.
        let gate_proof = assume(gate);
        let node = gated(gate_proof, 0, BigUint::zero(), &s).unwrap();
        let mut bad = node.clone();
        bad.conclusion = eq00();
        let v = check(&bad, &s);
        assert!(!v.ok);
        assert!(v.failure.unwrap().1.contains("gate mismatch"));
    }

    #[test]
    fn truth_intro_on_axiom_and_detachment() {
        let z = TheorySpec::z1i();
        let t = TheorySpec::tarski(z.clone());
        let a = z.axiom(0);
        let leaf = axiom(a.clone());
        let img = build_truth_intro(&leaf, &z).unwrap();
        assert!(check(&img, &t).ok, "{}", check(&img, &t));
        assert_eq!(
            img.conclusion,
            truth(1, NumTerm::Const(encode(&a)))
        );

        let k = logical(0, build::k(&a, &a));
        let pr = mp(k, leaf);
        let img2 = build_truth_intro(&pr, &z).unwrap();
        assert!(check(&img2, &t).ok, "{}", check(&img2, &t));
        assert_eq!(
            img2.conclusion,
            truth(1, NumTerm::Const(encode(&pr.conclusion)))
        );
    }

    #[test]
    fn truth_intro_on_generalization() {
        let z = TheorySpec::z1i();
        let t = TheorySpec::tarski(z.clone());
        let id = identity(&eq00());
        let g = gen(3, id);
        let img = build_truth_intro(&g, &z).unwrap();
        assert!(check(&img, &t).ok, "{}", check(&img, &t));
        assert_eq!(
            img.conclusion,
            truth(1, NumTerm::Const(encode(&g.conclusion)))
        );
    }

    #[test]
    fn reflection_instance_checks() {
        let z = TheorySpec::z1i();
        let t = TheorySpec::tarski(z.clone());
        let a = parse_formula("(= (v 1) (v 1))").unwrap();
        let pr = build_reflection(&z, &a).unwrap();
        let v = check(&pr, &t);
        assert!(v.ok, "{v}");
        // ∀1[∃d(prf(d, sf(⌜a⌝, 1, v1)) = 1) → v1 = v1]
        let Formula::ForallNum(1, _) = &pr.conclusion else {
            panic!("unexpected reflection shape: {:?}", pr.conclusion);
        };

        let with_set = Formula::InSet(NumTerm::Var(0), 0);
        assert!(build_reflection(&z, &with_set).is_err());
    }

    #[test]
    fn proof_files_round_trip() {
        let z = TheorySpec::z1i();
        let a = z.axiom(0);
        let pr = mp(logical(0, build::k(&a, &a)), axiom(a));
        let text = render_proof(&pr);
        let back = parse_proof(&text).unwrap();
        assert_eq!(back, pr);
        assert!(check(&back, &z).ok);
    }
}
