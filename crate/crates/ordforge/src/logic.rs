//! The pinned logical calculus: a Hilbert-style two-sorted intuitionistic
//! predicate calculus. This module owns the axiom schemas, their instance
//! recognizers, and the substitution utilities the recognizers need. The
//! proof kernel checks `LogicalAxiom` nodes against these schemas, and the
//! theory layer uses them to decide full (logical + non-logical) axiomhood.

use crate::formula::{
    free_num_vars, free_set_vars, num_term_vars, subst_num_var, Formula, NumTerm,
};

/// Number of logical axiom schemas.
pub const SCHEMA_COUNT: u32 = 24;

/// Short identifier for each schema, used in proof files and messages.
pub fn schema_name(id: u32) -> &'static str {
    match id {
        0 => "imp-k",
        1 => "imp-s",
        2 => "and-intro",
        3 => "and-elim-l",
        4 => "and-elim-r",
        5 => "or-intro-l",
        6 => "or-intro-r",
        7 => "or-elim",
        8 => "false-elim",
        9 => "not-intro",
        10 => "not-elim",
        11 => "iff-intro",
        12 => "iff-elim-l",
        13 => "iff-elim-r",
        14 => "all-elim",
        15 => "all-shift",
        16 => "ex-intro",
        17 => "ex-shift",
        18 => "allset-elim",
        19 => "allset-shift",
        20 => "exset-intro",
        21 => "exset-shift",
        22 => "eq-refl",
        23 => "eq-subst",
        _ => "unknown",
    }
}

pub fn schema_id(name: &str) -> Option<u32> {
    (0..SCHEMA_COUNT).find(|&id| schema_name(id) == name)
}

/// Rename free occurrences of set variable `x` to `y`.
pub fn subst_set_var(f: &Formula, x: u32, y: u32) -> Formula {
    match f {
        Formula::InSet(t, v) => Formula::InSet(t.clone(), if *v == x { y } else { *v }),
        Formula::Eq(..) | Formula::Rel(..) | Formula::False => f.clone(),
        Formula::Not(a) => Formula::not(subst_set_var(a, x, y)),
        Formula::And(a, b) => Formula::and(subst_set_var(a, x, y), subst_set_var(b, x, y)),
        Formula::Or(a, b) => Formula::or(subst_set_var(a, x, y), subst_set_var(b, x, y)),
        Formula::Implies(a, b) => {
            Formula::implies(subst_set_var(a, x, y), subst_set_var(b, x, y))
        }
        Formula::Iff(a, b) => Formula::iff(subst_set_var(a, x, y), subst_set_var(b, x, y)),
        Formula::ForallNum(v, a) => Formula::forall(*v, subst_set_var(a, x, y)),
        Formula::ExistsNum(v, a) => Formula::exists(*v, subst_set_var(a, x, y)),
        Formula::ForallSet(v, a) => {
            if *v == x {
                f.clone()
            } else {
                Formula::ForallSet(*v, Box::new(subst_set_var(a, x, y)))
            }
        }
        Formula::ExistsSet(v, a) => {
            if *v == x {
                f.clone()
            } else {
                Formula::ExistsSet(*v, Box::new(subst_set_var(a, x, y)))
            }
        }
    }
}

/// Find the term `t` such that `inst = pattern[var := t]`, if one exists,
/// enforcing capture-freedom: at each substituted occurrence, no variable
/// of `t` may be bound by a quantifier enclosing that occurrence.
pub fn match_num_instance(pattern: &Formula, var: u32, inst: &Formula) -> Option<NumTerm> {
    fn terms(
        p: &NumTerm,
        i: &NumTerm,
        var: u32,
        bound: &Vec<u32>,
        shadowed: bool,
        found: &mut Option<NumTerm>,
    ) -> bool {
        match (p, i) {
            (NumTerm::Var(v), _) if *v == var && !shadowed => {
                // A substituted occurrence: the instance term must agree with
                // any previously found one and avoid capture.
                if num_term_vars(i).iter().any(|w| bound.contains(w)) {
                    return false;
                }
                match found {
                    None => {
                        *found = Some(i.clone());
                        true
                    }
                    Some(t) => t == i,
                }
            }
            (NumTerm::Const(a), NumTerm::Const(b)) => a == b,
            (NumTerm::Var(a), NumTerm::Var(b)) => a == b,
            (NumTerm::Succ(a), NumTerm::Succ(b)) => terms(a, b, var, bound, shadowed, found),
            (NumTerm::Add(a1, a2), NumTerm::Add(b1, b2))
            | (NumTerm::Mul(a1, a2), NumTerm::Mul(b1, b2)) => {
                terms(a1, b1, var, bound, shadowed, found)
                    && terms(a2, b2, var, bound, shadowed, found)
            }
            (NumTerm::App(s1, a1), NumTerm::App(s2, a2)) => {
                s1 == s2
                    && a1.len() == a2.len()
                    && a1
                        .iter()
                        .zip(a2)
                        .all(|(x, y)| terms(x, y, var, bound, shadowed, found))
            }
            _ => false,
        }
    }
    fn walk(
        p: &Formula,
        i: &Formula,
        var: u32,
        bound: &mut Vec<u32>,
        shadowed: bool,
        found: &mut Option<NumTerm>,
    ) -> bool {
        match (p, i) {
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
                terms(a1, b1, var, bound, shadowed, found)
                    && terms(a2, b2, var, bound, shadowed, found)
            }
            (Formula::InSet(a, x), Formula::InSet(b, y)) => {
                x == y && terms(a, b, var, bound, shadowed, found)
            }
            (Formula::Rel(s1, a1), Formula::Rel(s2, a2)) => {
                s1 == s2
                    && a1.len() == a2.len()
                    && a1
                        .iter()
                        .zip(a2)
                        .all(|(x, y)| terms(x, y, var, bound, shadowed, found))
            }
            (Formula::False, Formula::False) => true,
            (Formula::Not(a), Formula::Not(b)) => walk(a, b, var, bound, shadowed, found),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Implies(a1, a2), Formula::Implies(b1, b2))
            | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => {
                walk(a1, b1, var, bound, shadowed, found)
                    && walk(a2, b2, var, bound, shadowed, found)
            }
            (Formula::ForallNum(v1, a), Formula::ForallNum(v2, b))
            | (Formula::ExistsNum(v1, a), Formula::ExistsNum(v2, b)) => {
                if v1 != v2 {
                    return false;
                }
                let sh = shadowed || *v1 == var;
                bound.push(*v1);
                let ok = walk(a, b, var, bound, sh, found);
                bound.pop();
                ok
            }
            (Formula::ForallSet(v1, a), Formula::ForallSet(v2, b))
            | (Formula::ExistsSet(v1, a), Formula::ExistsSet(v2, b)) => {
                v1 == v2 && walk(a, b, var, bound, shadowed, found)
            }
            _ => false,
        }
    }
    let mut found = None;
    if walk(pattern, inst, var, &mut Vec::new(), false, &mut found) {
        Some(found.unwrap_or(NumTerm::Var(var)))
    } else {
        None
    }
}

/// Whether `inst = pattern[X_var := X_y]` for some set variable `y`,
/// capture-free. Returns the renaming target when matched.
pub fn match_set_instance(pattern: &Formula, var: u32, inst: &Formula) -> Option<u32> {
    fn walk(
        p: &Formula,
        i: &Formula,
        var: u32,
        bound: &mut Vec<u32>,
        shadowed: bool,
        found: &mut Option<u32>,
    ) -> bool {
        match (p, i) {
            (Formula::InSet(a, x), Formula::InSet(b, y)) => {
                if a != b {
                    return false;
                }
                if *x == var && !shadowed {
                    if bound.contains(y) {
                        return false;
                    }
                    match found {
                        None => {
                            *found = Some(*y);
                            true
                        }
                        Some(t) => t == y,
                    }
                } else {
                    x == y
                }
            }
            (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => a1 == b1 && a2 == b2,
            (Formula::Rel(s1, a1), Formula::Rel(s2, a2)) => s1 == s2 && a1 == a2,
            (Formula::False, Formula::False) => true,
            (Formula::Not(a), Formula::Not(b)) => walk(a, b, var, bound, shadowed, found),
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Implies(a1, a2), Formula::Implies(b1, b2))
            | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => {
                walk(a1, b1, var, bound, shadowed, found)
                    && walk(a2, b2, var, bound, shadowed, found)
            }
            (Formula::ForallNum(v1, a), Formula::ForallNum(v2, b))
            | (Formula::ExistsNum(v1, a), Formula::ExistsNum(v2, b)) => {
                v1 == v2 && walk(a, b, var, bound, shadowed, found)
            }
            (Formula::ForallSet(v1, a), Formula::ForallSet(v2, b))
            | (Formula::ExistsSet(v1, a), Formula::ExistsSet(v2, b)) => {
                if v1 != v2 {
                    return false;
                }
                let sh = shadowed || *v1 == var;
                bound.push(*v1);
                let ok = walk(a, b, var, bound, sh, found);
                bound.pop();
                ok
            }
            _ => false,
        }
    }
    let mut found = None;
    if walk(pattern, inst, var, &mut Vec::new(), false, &mut found) {
        Some(found.unwrap_or(var))
    } else {
        None
    }
}

/// Whether atomic `q` is obtained from atomic `p` by replacing some
/// occurrences of term `a` by term `b`.
fn atom_rewrites(p: &Formula, q: &Formula, a: &NumTerm, b: &NumTerm) -> bool {
    fn term(p: &NumTerm, q: &NumTerm, a: &NumTerm, b: &NumTerm) -> bool {
        if p == q {
            return true;
        }
        if p == a && q == b {
            return true;
        }
        match (p, q) {
            (NumTerm::Succ(x), NumTerm::Succ(y)) => term(x, y, a, b),
            (NumTerm::Add(x1, x2), NumTerm::Add(y1, y2))
            | (NumTerm::Mul(x1, x2), NumTerm::Mul(y1, y2)) => {
                term(x1, y1, a, b) && term(x2, y2, a, b)
            }
            (NumTerm::App(s1, xs), NumTerm::App(s2, ys)) => {
                s1 == s2
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| term(x, y, a, b))
            }
            _ => false,
        }
    }
    match (p, q) {
        (Formula::Eq(p1, p2), Formula::Eq(q1, q2)) => {
            term(p1, q1, a, b) && term(p2, q2, a, b)
        }
        (Formula::InSet(p1, x), Formula::InSet(q1, y)) => x == y && term(p1, q1, a, b),
        (Formula::Rel(s1, ps), Formula::Rel(s2, qs)) => {
            s1 == s2
                && ps.len() == qs.len()
                && ps.iter().zip(qs).all(|(x, y)| term(x, y, a, b))
        }
        _ => false,
    }
}

fn is_atomic(f: &Formula) -> bool {
    matches!(f, Formula::Eq(..) | Formula::InSet(..) | Formula::Rel(..))
}

/// Whether `f` is an instance of logical axiom schema `id`.
pub fn schema_matches(id: u32, f: &Formula) -> bool {
    use Formula::*;
    match id {
        // A → (B → A)
        0 => matches!(f, Implies(a, bc)
            if matches!(bc.as_ref(), Implies(_, a2) if a2 == a)),
        // (A→(B→C)) → ((A→B)→(A→C))
        1 => {
            let Implies(l, r) = f else { return false };
            let Implies(a, bc) = l.as_ref() else { return false };
            let Implies(b, c) = bc.as_ref() else { return false };
            let Implies(ab, ac) = r.as_ref() else { return false };
            let Implies(a2, b2) = ab.as_ref() else { return false };
            let Implies(a3, c3) = ac.as_ref() else { return false };
            a == a2 && a == a3 && b == b2 && c == c3
        }
        // A → (B → A∧B)
        2 => {
            let Implies(a, r) = f else { return false };
            let Implies(b, ab) = r.as_ref() else { return false };
            let And(a2, b2) = ab.as_ref() else { return false };
            a == a2 && b == b2
        }
        // A∧B → A
        3 => matches!(f, Implies(ab, a)
            if matches!(ab.as_ref(), And(a2, _) if a2 == a)),
        // A∧B → B
        4 => matches!(f, Implies(ab, b)
            if matches!(ab.as_ref(), And(_, b2) if b2 == b)),
        // A → A∨B
        5 => matches!(f, Implies(a, ab)
            if matches!(ab.as_ref(), Or(a2, _) if a2 == a)),
        // B → A∨B
        6 => matches!(f, Implies(b, ab)
            if matches!(ab.as_ref(), Or(_, b2) if b2 == b)),
        // (A→C) → ((B→C) → (A∨B → C))
        7 => {
            let Implies(ac, r) = f else { return false };
            let Implies(a, c) = ac.as_ref() else { return false };
            let Implies(bc, abc) = r.as_ref() else { return false };
            let Implies(b, c2) = bc.as_ref() else { return false };
            let Implies(ab, c3) = abc.as_ref() else { return false };
            let Or(a2, b2) = ab.as_ref() else { return false };
            a == a2 && b == b2 && c == c2 && c == c3
        }
        // ⊥ → A
        8 => matches!(f, Implies(l, _) if matches!(l.as_ref(), False)),
        // (A→⊥) → ¬A
        9 => {
            let Implies(l, r) = f else { return false };
            let Implies(a, bot) = l.as_ref() else { return false };
            matches!(bot.as_ref(), False)
                && matches!(r.as_ref(), Not(a2) if a2 == a)
        }
        // ¬A → (A→⊥)
        10 => {
            let Implies(l, r) = f else { return false };
            let Not(a) = l.as_ref() else { return false };
            let Implies(a2, bot) = r.as_ref() else { return false };
            a == a2 && matches!(bot.as_ref(), False)
        }
        // (A→B) → ((B→A) → (A↔B))
        11 => {
            let Implies(ab, r) = f else { return false };
            let Implies(a, b) = ab.as_ref() else { return false };
            let Implies(ba, iff) = r.as_ref() else { return false };
            let Implies(b2, a2) = ba.as_ref() else { return false };
            let Iff(a3, b3) = iff.as_ref() else { return false };
            a == a2 && a == a3 && b == b2 && b == b3
        }
        // (A↔B) → (A→B)
        12 => {
            let Implies(l, r) = f else { return false };
            let Iff(a, b) = l.as_ref() else { return false };
            matches!(r.as_ref(), Implies(a2, b2) if a2 == a && b2 == b)
        }
        // (A↔B) → (B→A)
        13 => {
            let Implies(l, r) = f else { return false };
            let Iff(a, b) = l.as_ref() else { return false };
            matches!(r.as_ref(), Implies(b2, a2) if a2 == a && b2 == b)
        }
        // ∀vA → A[v:=t]
        14 => {
            let Implies(l, r) = f else { return false };
            let ForallNum(v, a) = l.as_ref() else { return false };
            match_num_instance(a, *v, r).is_some()
        }
        // ∀v(A→B) → (A → ∀vB), v not free in A
        15 => {
            let Implies(l, r) = f else { return false };
            let ForallNum(v, ab) = l.as_ref() else { return false };
            let Implies(a, b) = ab.as_ref() else { return false };
            let Implies(a2, vb) = r.as_ref() else { return false };
            let ForallNum(v2, b2) = vb.as_ref() else { return false };
            v == v2 && a == a2 && b == b2 && !free_num_vars(a).contains(v)
        }
        // A[v:=t] → ∃vA
        16 => {
            let Implies(l, r) = f else { return false };
            let ExistsNum(v, a) = r.as_ref() else { return false };
            match_num_instance(a, *v, l).is_some()
        }
        // ∀v(A→B) → (∃vA → B), v not free in B
        17 => {
            let Implies(l, r) = f else { return false };
            let ForallNum(v, ab) = l.as_ref() else { return false };
            let Implies(a, b) = ab.as_ref() else { return false };
            let Implies(va, b2) = r.as_ref() else { return false };
            let ExistsNum(v2, a2) = va.as_ref() else { return false };
            v == v2 && a == a2 && b == b2 && !free_num_vars(b).contains(v)
        }
        // ∀XA → A[X:=Y]
        18 => {
            let Implies(l, r) = f else { return false };
            let ForallSet(v, a) = l.as_ref() else { return false };
            match_set_instance(a, *v, r).is_some()
        }
        // ∀X(A→B) → (A → ∀XB), X not free in A
        19 => {
            let Implies(l, r) = f else { return false };
            let ForallSet(v, ab) = l.as_ref() else { return false };
            let Implies(a, b) = ab.as_ref() else { return false };
            let Implies(a2, vb) = r.as_ref() else { return false };
            let ForallSet(v2, b2) = vb.as_ref() else { return false };
            v == v2 && a == a2 && b == b2 && !free_set_vars(a).contains(v)
        }
        // A[X:=Y] → ∃XA
        20 => {
            let Implies(l, r) = f else { return false };
            let ExistsSet(v, a) = r.as_ref() else { return false };
            match_set_instance(a, *v, l).is_some()
        }
        // ∀X(A→B) → (∃XA → B), X not free in B
        21 => {
            let Implies(l, r) = f else { return false };
            let ForallSet(v, ab) = l.as_ref() else { return false };
            let Implies(a, b) = ab.as_ref() else { return false };
            let Implies(va, b2) = r.as_ref() else { return false };
            let ExistsSet(v2, a2) = va.as_ref() else { return false };
            v == v2 && a == a2 && b == b2 && !free_set_vars(b).contains(v)
        }
        // t = t
        22 => matches!(f, Eq(a, b) if a == b),
        // a=b → (φ → φ'), φ atomic, φ' = φ with some a-occurrences → b
        23 => {
            let Implies(eq, r) = f else { return false };
            let Eq(a, b) = eq.as_ref() else { return false };
            let Implies(p, q) = r.as_ref() else { return false };
            is_atomic(p) && is_atomic(q) && atom_rewrites(p, q, a, b)
        }
        _ => false,
    }
}

/// The first schema `f` instantiates, if any.
pub fn is_logical_axiom(f: &Formula) -> Option<u32> {
    (0..SCHEMA_COUNT).find(|&id| schema_matches(id, f))
}

/// Convenience constructors used by proof builders.
pub mod build {
    use super::*;

    /// A → (B → A)
    pub fn k(a: &Formula, b: &Formula) -> Formula {
        Formula::implies(a.clone(), Formula::implies(b.clone(), a.clone()))
    }

    /// (A→(B→C)) → ((A→B)→(A→C))
    pub fn s(a: &Formula, b: &Formula, c: &Formula) -> Formula {
        Formula::implies(
            Formula::implies(a.clone(), Formula::implies(b.clone(), c.clone())),
            Formula::implies(
                Formula::implies(a.clone(), b.clone()),
                Formula::implies(a.clone(), c.clone()),
            ),
        )
    }

    /// ∀vA → A[v:=t]
    pub fn all_elim(v: u32, a: &Formula, t: &NumTerm) -> Formula {
        Formula::implies(Formula::forall(v, a.clone()), subst_num_var(a, v, t))
    }

    /// A[v:=t] → ∃vA
    pub fn ex_intro(v: u32, a: &Formula, t: &NumTerm) -> Formula {
        Formula::implies(subst_num_var(a, v, t), Formula::exists(v, a.clone()))
    }

    /// ∀v(A→B) → (A → ∀vB)
    pub fn all_shift(v: u32, a: &Formula, b: &Formula) -> Formula {
        Formula::implies(
            Formula::forall(v, Formula::implies(a.clone(), b.clone())),
            Formula::implies(a.clone(), Formula::forall(v, b.clone())),
        )
    }

    /// ∀v(A→B) → (∃vA → B)
    pub fn ex_shift(v: u32, a: &Formula, b: &Formula) -> Formula {
        Formula::implies(
            Formula::forall(v, Formula::implies(a.clone(), b.clone())),
            Formula::implies(Formula::exists(v, a.clone()), b.clone()),
        )
    }

    /// a=b → (φ → φ')
    pub fn eq_subst(a: &NumTerm, b: &NumTerm, from: &Formula, to: &Formula) -> Formula {
        Formula::implies(
            Formula::Eq(a.clone(), b.clone()),
            Formula::implies(from.clone(), to.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::RelSym;
    use num_bigint::BigUint;

    fn zero() -> NumTerm {
        NumTerm::nat(0)
    }

    fn eq00() -> Formula {
        Formula::Eq(zero(), zero())
    }

    fn lt01() -> Formula {
        Formula::Rel(RelSym::Lt, vec![zero(), NumTerm::nat(1)])
    }

    #[test]
    fn propositional_schemas() {
        assert!(schema_matches(0, &build::k(&eq00(), &lt01())));
        assert!(!schema_matches(
            0,
            &Formula::implies(eq00(), Formula::implies(lt01(), lt01()))
        ));
        assert!(schema_matches(1, &build::s(&eq00(), &lt01(), &Formula::False)));
        let andi = Formula::implies(
            eq00(),
            Formula::implies(lt01(), Formula::and(eq00(), lt01())),
        );
        assert!(schema_matches(2, &andi));
        assert!(schema_matches(
            3,
            &Formula::implies(Formula::and(eq00(), lt01()), eq00())
        ));
        assert!(schema_matches(
            8,
            &Formula::implies(Formula::False, lt01())
        ));
        assert!(schema_matches(
            9,
            &Formula::implies(
                Formula::implies(eq00(), Formula::False),
                Formula::not(eq00())
            )
        ));
    }

    #[test]
    fn quantifier_schemas() {
        let a = Formula::Eq(NumTerm::Var(0), zero());
        // ∀0 A → A[0:=5]
        let inst = build::all_elim(0, &a, &NumTerm::nat(5));
        assert!(schema_matches(14, &inst));
        // Substituting a different term on the right fails.
        let bad = Formula::implies(
            Formula::forall(0, a.clone()),
            Formula::Eq(NumTerm::nat(5), NumTerm::nat(1)),
        );
        assert!(!schema_matches(14, &bad));
        // Capture is rejected: ∀0∃1(v0=v1) → ∃1(v1=v1) substitutes v1 for v0
        // under a binder for v1.
        let nested = Formula::exists(1, Formula::Eq(NumTerm::Var(0), NumTerm::Var(1)));
        let captured = Formula::implies(
            Formula::forall(0, nested.clone()),
            Formula::exists(1, Formula::Eq(NumTerm::Var(1), NumTerm::Var(1))),
        );
        assert!(!schema_matches(14, &captured));
        // Identity instantiation (t = the variable itself) is accepted.
        let idem = Formula::implies(Formula::forall(0, a.clone()), a.clone());
        assert!(schema_matches(14, &idem));
        // Shift needs the side condition.
        let good_shift = build::all_shift(0, &eq00(), &a);
        assert!(schema_matches(15, &good_shift));
        let bad_shift = build::all_shift(0, &a, &a);
        assert!(!schema_matches(15, &bad_shift));
        // Existence.
        assert!(schema_matches(16, &build::ex_intro(0, &a, &zero())));
        assert!(schema_matches(17, &build::ex_shift(0, &a, &eq00())));
        let bad_ex = build::ex_shift(0, &a, &a);
        assert!(!schema_matches(17, &bad_ex));
    }

    #[test]
    fn set_quantifier_schemas() {
        let a = Formula::InSet(NumTerm::Var(0), 0);
        let all = Formula::ForallSet(0, Box::new(a.clone()));
        let renamed = Formula::InSet(NumTerm::Var(0), 3);
        assert!(schema_matches(
            18,
            &Formula::implies(all.clone(), renamed.clone())
        ));
        // Capture rejected: renaming into a bound set variable.
        let shadow = Formula::ExistsSet(2, Box::new(Formula::InSet(NumTerm::Var(0), 0)));
        let cap = Formula::implies(
            Formula::ForallSet(0, Box::new(shadow)),
            Formula::ExistsSet(2, Box::new(Formula::InSet(NumTerm::Var(0), 2))),
        );
        assert!(!schema_matches(18, &cap));
        assert!(schema_matches(
            20,
            &Formula::implies(renamed, Formula::ExistsSet(0, Box::new(a)))
        ));
    }

    #[test]
    fn equality_schemas() {
        let t = NumTerm::Add(Box::new(NumTerm::Var(0)), Box::new(NumTerm::nat(1)));
        assert!(schema_matches(22, &Formula::Eq(t.clone(), t.clone())));
        assert!(!schema_matches(22, &eq00().clone()) == false);
        // Rewriting one occurrence inside an atom.
        let a = NumTerm::nat(2);
        let b = NumTerm::Add(Box::new(NumTerm::nat(1)), Box::new(NumTerm::nat(1)));
        let from = Formula::Rel(RelSym::Lt, vec![a.clone(), a.clone()]);
        let to = Formula::Rel(RelSym::Lt, vec![a.clone(), b.clone()]);
        assert!(schema_matches(23, &build::eq_subst(&a, &b, &from, &to)));
        // Rewriting to an unrelated term fails.
        let bad_to = Formula::Rel(RelSym::Lt, vec![a.clone(), NumTerm::nat(7)]);
        assert!(!schema_matches(23, &build::eq_subst(&a, &b, &from, &bad_to)));
        // Non-atomic targets fail.
        let non_atomic = Formula::implies(
            Formula::Eq(a.clone(), b.clone()),
            Formula::implies(Formula::and(from.clone(), from.clone()), to.clone()),
        );
        assert!(!schema_matches(23, &non_atomic));
    }

    #[test]
    fn classifier_finds_unique_ids() {
        let f = build::k(&eq00(), &eq00());
        assert_eq!(is_logical_axiom(&f), Some(0));
        let refl = Formula::Eq(NumTerm::Var(3), NumTerm::Var(3));
        assert_eq!(is_logical_axiom(&refl), Some(22));
        assert_eq!(is_logical_axiom(&Formula::False), None);
        let _ = BigUint::from(0u32);
    }
}
